#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "nncalc/besov.hpp"
#include "test_util.hpp"

using namespace nncalc;
using testutil::Rng;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exhaustive best n-sparse approximation in l^p, for cross-checking
double brute_force_sparse_error(const DenseVector& x, double p, std::size_t n) {
    std::size_t d = x.size();
    if (n >= d) return 0.0;
    double best = 1e300;
    for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n) continue;
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            if (!(mask & (1ULL << i))) acc += std::pow(std::fabs(x[i]), p);
        best = std::min(best, acc);
    }
    return std::pow(best, 1.0 / p);
}

} // namespace

TEST_CASE("sawtooth closed form and recursion agree") {
    CHECK(sawtooth(1, 0.5) == 1.0);
    CHECK(sawtooth(2, 0.375) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sawtooth_recursive(2, 0.375) == doctest::Approx(0.5).epsilon(1e-15));

    for (int m = 1; m <= 6; ++m)
        for (int k = 0; k <= (1 << (m - 1)); ++k)
            CHECK(sawtooth(m, std::ldexp(static_cast<double>(k), -(m - 1))) == 0.0);

    Rng rng(12);
    for (int m = 1; m <= 20; ++m) {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            double x = rng.uniform();
            worst = std::max(worst, std::fabs(sawtooth(m, x) - sawtooth_recursive(m, x)));
        }
        CHECK(worst <= 1e-12);
    }
    CHECK_THROWS_AS(sawtooth(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(sawtooth(1, 1.5), std::invalid_argument);
}

TEST_CASE("square interpolant identities") {
    for (int m = 0; m <= 6; ++m)
        for (int k = 0; k <= (1 << m); ++k) {
            double x = std::ldexp(static_cast<double>(k), -m);
            CHECK(square_interpolant(m, x) == doctest::Approx(x * x).epsilon(1e-15));
        }

    for (double x : {0.0, 0.2, 0.7, 0.999}) CHECK(square_interpolant(0, x) == doctest::Approx(x));

    CHECK(square_interpolant(2, 0.3) - square_interpolant(3, 0.3) ==
          doctest::Approx(sawtooth(3, 0.3) / 64.0).epsilon(1e-14));

    // telescoping against the rescaled tents
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        double x = rng.uniform();
        int m = 1 + static_cast<int>(rng.below(10));
        double acc = x;
        for (int k = 1; k <= m; ++k) acc -= std::ldexp(sawtooth(k, x), -2 * k);
        CHECK(std::fabs(square_interpolant(m, x) - acc) <= 1e-12);
    }
}

TEST_CASE("spline point values and support") {
    CHECK(bspline(1, 1.0) == doctest::Approx(1.0));
    CHECK(bspline(0, 0.5) == 1.0);
    CHECK(bspline(0, 0.0) == 0.0);
    CHECK(bspline(0, 1.0) == 1.0);

    for (int r = 0; r <= 6; ++r) {
        CHECK(bspline(r, -0.25) == 0.0);
        CHECK(std::fabs(bspline(r, r + 1.0 + 0.25)) <= 1e-12);
        // unit mass, 5-point Gauss per knot interval
        static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                     0.9061798459386640};
        static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                     0.4786286704993665, 0.2369268850561891};
        double mass = 0.0;
        for (int piece = 0; piece <= r; ++piece)
            for (int g = 0; g < 5; ++g) mass += 0.5 * gw[g] * bspline(r, piece + 0.5 + 0.5 * gx[g]);
        CHECK(std::fabs(mass - 1.0) <= 1e-8);
    }
}

TEST_CASE("spline convolution identity") {
    ErrorCertificate c0 = bspline_convolution_check(0);
    CHECK(c0.passed());
    for (int r = 1; r <= 5; ++r) CHECK(bspline_convolution_check(r).passed());

    // both sides vanish away from the support
    CHECK(bspline(3, -1.0) == 0.0);
    CHECK(bspline(3, 4.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partition of unity") {
    ErrorCertificate hats = partition_of_unity_check(1, 1, 0, 200);
    CHECK(hats.passed());
    ErrorCertificate c = partition_of_unity_check(3, 2, 2, 500);
    CHECK(c.passed());
    for (int r = 1; r <= 4; ++r)
        for (int d = 1; d <= 2; ++d) CHECK(partition_of_unity_check(r, d, 3, 100).passed());

    // shifts outside the support window contribute nothing
    CHECK(bspline_tensor(2, 1, 0, {5}, {0.5}) == 0.0);
    CHECK(bspline_tensor(2, 1, 0, {-3}, {0.5}) == 0.0);
}

TEST_CASE("bump function") {
    for (int r : {1, 2, 3}) {
        CHECK(bump(r, 2, 0.1, {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(bump(r, 2, 0.1, {1.5, 0.5}) == 0.0);
        CHECK(bump(r, 2, 0.1, {-0.2, 0.5}) == 0.0);
        CHECK(bump(r, 1, 0.25, {0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // transition shell: || indicator - bump ||_p^p is at most the shell volume
    const double delta = 0.2;
    const int grid = 120;
    double mass = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            DenseVector x{(i + 0.5) / grid, (j + 0.5) / grid};
            double diff = std::fabs(1.0 - bump(2, 2, delta, x));
            mass += diff * diff / (grid * grid);
        }
    double shell = 1.0 - std::pow(1.0 - 2.0 * delta, 2.0);
    CHECK(mass <= shell + 1e-3);

    CHECK_THROWS_AS(bump(1, 1, 0.6, {0.5}), std::invalid_argument);
}

TEST_CASE("bump network realizes the bump") {
    Rng rng(9);
    for (int r : {1, 2, 3}) {
        for (int d : {1, 2}) {
            NeuralNetwork net = build_bump(r, d, 0.15);
            CHECK(validate(net).layers == 3);
            for (int trial = 0; trial < 200; ++trial) {
                DenseVector x(static_cast<std::size_t>(d));
                for (double& t : x) t = rng.uniform(-0.3, 1.3);
                CHECK(std::fabs(realize(net, x)[0] - bump(r, d, 0.15, x)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("modulus of smoothness") {
    auto constant = [](double) { return 2.75; };
    CHECK(modulus_of_smoothness(constant, 0.0, 1.0, 1, 2.0, 0.2) == 0.0);
    CHECK(modulus_of_smoothness(constant, 0.0, 1.0, 3, 1.0, 0.2) == 0.0);

    auto linear = [](double x) { return x; };
    CHECK(modulus_of_smoothness(linear, 0.0, 1.0, 2, 2.0, 0.2) <= 1e-13);
    CHECK(std::fabs(modulus_of_smoothness(linear, 0.0, 1.0, 1, 1.0, 0.1) - 0.09) <= 1e-4);

    auto wave = [](double x) { return std::sin(8.0 * x); };
    double prev = 0.0;
    for (double t : {0.01, 0.05, 0.1, 0.3}) {
        double w = modulus_of_smoothness(wave, 0.0, 1.0, 1, 2.0, t);
        CHECK(w >= prev - 1e-12);
        prev = w;
    }
    auto shifted = [](double x) { return std::sin(8.0 * x) + 5.0; };
    CHECK(std::fabs(modulus_of_smoothness(shifted, 0.0, 1.0, 1, 2.0, 0.1) -
                    modulus_of_smoothness(wave, 0.0, 1.0, 1, 2.0, 0.1)) <= 1e-12);
}

TEST_CASE("discrete smoothness sum") {
    auto constant = [](double) { return 1.0; };
    CHECK(besov_seminorm_discrete(constant, 0.5, 2.0, 2.0, 6).value == 0.0);

    auto linear = [](double x) { return x; };
    BesovEstimate est = besov_seminorm_discrete(linear, 0.5, 2.0, 2.0, 12);
    CHECK(est.value > 0.0);
    CHECK(std::isfinite(est.value));
    // summands behave like 2^(-k/2): omega_1(t) ~ t sqrt(1-t)
    CHECK(est.last_term <= std::pow(2.0, -12.0 / 2.0) * 1.5);
    CHECK(est.last_term >= std::pow(2.0, -12.0 / 2.0) * 0.5);

    BesovEstimate shorter = besov_seminorm_discrete(linear, 0.5, 2.0, 2.0, 6);
    CHECK(shorter.value <= est.value + 1e-15);

    BesovEstimate sup = besov_seminorm_discrete(linear, 0.5, 2.0, kInf, 8);
    CHECK(sup.value > 0.0);
}

TEST_CASE("approximation quasi-norm closed forms") {
    for (double alpha : {0.5, 1.0, 2.0})
        for (double q : {0.5, 1.0, 2.0})
            CHECK(approximation_quasinorm({1.0, 0.0, 0.0}, {alpha, q}).value == doctest::Approx(1.0).epsilon(1e-15));

    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        for (double q : {0.5, 1.0, 2.0, 4.0}) {
            for (double p : {1.0, 2.0, 4.0}) {
                double expected = std::pow(std::pow(2.0, q / p) + std::pow(2.0, alpha * q - 1.0), 1.0 / q);
                double got = approximation_quasinorm({std::pow(2.0, 1.0 / p), 1.0}, {alpha, q}).value;
                CHECK(std::fabs(got - expected) <= 1e-12 * expected);
            }
        }
    }

    CHECK(approximation_quasinorm({0.0, 0.0, 0.0, 0.0}, {1.0, 2.0}).value == 0.0);

    // absolute homogeneity in the error list
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> errs(5);
        for (double& e : errs) e = rng.uniform(0.0, 2.0);
        double lam = rng.uniform(0.1, 3.0);
        std::vector<double> scaled = errs;
        for (double& e : scaled) e *= lam;
        QuasiNormParams params{rng.uniform(0.2, 2.0), rng.uniform(0.5, 3.0)};
        double a = approximation_quasinorm(errs, params).value;
        double b = approximation_quasinorm(scaled, params).value;
        CHECK(std::fabs(b - lam * a) <= 1e-12 * std::max(1.0, b));
    }

    CHECK(approximation_quasinorm({2.0, 1.0, 0.5}, {1.0, kInf}).value == doctest::Approx(2.0));
    CHECK_THROWS_AS(approximation_quasinorm({-1.0}, {1.0, 1.0}), std::invalid_argument);

    CHECK(approximation_quasinorm({1.0, 0.5}, {1.0, 1.0}, TailMode::Unknown).tail == TailMode::Unknown);
}

TEST_CASE("sparse approximation error") {
    SparseApproxInstance inst{{3.0, 1.0, 2.0}, 2.0};
    CHECK(sparse_best_approx_error(inst, 1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(sparse_best_approx_error(inst, 3) == 0.0);
    CHECK(sparse_best_approx_error(inst, 5) == 0.0);
    CHECK(sparse_best_approx_error(inst, 0) ==
          doctest::Approx(std::sqrt(9.0 + 1.0 + 4.0)).epsilon(1e-15));

    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 2 + rng.below(7); // up to 8
        DenseVector x(d);
        for (double& v : x) v = rng.uniform(-3.0, 3.0);
        double p = rng.uniform(0.5, 3.0);
        for (std::size_t n = 0; n <= d; ++n) {
            double fast = sparse_best_approx_error({x, p}, n);
            double slow = brute_force_sparse_error(x, p, n);
            CHECK(std::fabs(fast - slow) <= 1e-10 * std::max(1.0, slow));
        }
    }
}

TEST_CASE("triangle inequality violation in the quasi-norm") {
    TriangleReport rep = triangle_violation_demo(1.0, 1.0, 2.0);
    CHECK(rep.norm_of_sum == doctest::Approx(4.0).epsilon(1e-14)); // 2 + 2
    CHECK(rep.violated);
    CHECK(rep.gap == doctest::Approx(2.0).epsilon(1e-14));

    // below the threshold rate with p past the crossing point: no violation
    TriangleReport tame = triangle_violation_demo(3.0, 1.0, 0.5);
    CHECK(tame.alpha < tame.beta_q);
    CHECK(!tame.violated);

    // sup-norm variant: violation exactly when max(alpha, 1/p) > 1
    TriangleReport supviol = triangle_violation_demo(2.0, kInf, 1.5);
    CHECK(supviol.violated);
    TriangleReport suptame = triangle_violation_demo(2.0, kInf, 0.9);
    CHECK(!suptame.violated);
}

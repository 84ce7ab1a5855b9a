#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nncalc/galerkin.hpp"
#include "nncalc/spectral.hpp"
#include "test_util.hpp"

using namespace nncalc;
using testutil::Rng;

namespace {

double forcing(double x) { return M_PI * M_PI * std::sin(M_PI * x); }

} // namespace

TEST_CASE("stiffness assembly") {
    GalerkinProblem p1 = assemble_poisson_1d(1, forcing);
    CHECK(p1.stiffness(0, 0) == 4.0); // h = 1/2

    GalerkinProblem p3 = assemble_poisson_1d(3, forcing);
    CHECK(p3.stiffness(0, 0) == 8.0); // h = 1/4
    CHECK(p3.stiffness(0, 1) == -4.0);
    CHECK(p3.stiffness(1, 0) == -4.0);
    CHECK(p3.stiffness(2, 2) == 8.0);

    for (std::size_t d : {2, 5, 16, 64}) {
        GalerkinProblem p = assemble_poisson_1d(d, forcing);
        CHECK(is_symmetric(p.stiffness));
        std::vector<double> eig = symmetric_eigenvalues(p.stiffness);
        CHECK(eig.front() > 0.0);
        CHECK(eig.front() == doctest::Approx(p.lambda_min).epsilon(1e-10));
        CHECK(eig.back() == doctest::Approx(p.lambda_max).epsilon(1e-10));
    }
}

TEST_CASE("rayleigh quotients stay inside the spectral interval") {
    GalerkinProblem p = assemble_poisson_1d(9, forcing);
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        DenseVector x = testutil::random_vector(rng, 9);
        double q = dot(x, matvec(p.stiffness, x)) / dot(x, x);
        CHECK(q >= p.lambda_min - 1e-9);
        CHECK(q <= p.lambda_max + 1e-9);
    }
}

TEST_CASE("contraction parameters") {
    SUBCASE("identity") {
        SpdContraction c = spd_contraction_params(DenseMatrix::identity(3));
        CHECK(c.alpha == doctest::Approx(1.0));
        CHECK(c.delta == doctest::Approx(0.0));
    }
    SUBCASE("diagonal") {
        DenseMatrix b(2, 2);
        b(0, 0) = 1.0;
        b(1, 1) = 3.0;
        SpdContraction c = spd_contraction_params(b);
        CHECK(c.alpha == doctest::Approx(0.5));
        CHECK(c.delta == doctest::Approx(0.5));
    }
    SUBCASE("assembled stiffness matches the spectral norm identity") {
        GalerkinProblem p = assemble_poisson_1d(3, forcing);
        SpdContraction c = spd_contraction_params(p.stiffness);
        DenseMatrix gap = subtract(DenseMatrix::identity(3), scale(p.stiffness, c.alpha));
        CHECK(std::fabs(spectral_norm(gap) - c.delta) <= 1e-10);
    }
    SUBCASE("one-sided choice") {
        DenseMatrix b(2, 2);
        b(0, 0) = 1.0;
        b(1, 1) = 3.0;
        SpdContraction c = spd_contraction_params(b, 0.25);
        CHECK(c.alpha == 0.25);
        CHECK(c.delta == doctest::Approx(0.75));
        CHECK_THROWS_AS(spd_contraction_params(b, 0.5), std::invalid_argument);
    }
    SUBCASE("rejects indefinite input") {
        DenseMatrix b(2, 2);
        b(0, 0) = 1.0;
        b(1, 1) = -1.0;
        CHECK_THROWS_AS(spd_contraction_params(b), std::invalid_argument);
    }
}

TEST_CASE("truncated series oracle") {
    DenseMatrix b = scale(DenseMatrix::identity(3), 2.0);
    DenseMatrix approx = neumann_inverse_oracle(b, 0.25, 10);
    DenseMatrix truth = scale(DenseMatrix::identity(3), 0.5);
    double bound = 0.25 * std::pow(0.5, 11) / 0.5;
    CHECK(spectral_norm(subtract(approx, truth)) <= bound);

    CHECK(neumann_inverse_oracle(b, 0.25, 0).data == scale(DenseMatrix::identity(3), 0.25).data);

    // error bound holds and the error decays geometrically in the term count
    GalerkinProblem p = assemble_poisson_1d(4, forcing);
    SpdContraction c = spd_contraction_params(p.stiffness);
    DenseMatrix inv = invert_spd(p.stiffness);
    double prev = 1e300;
    for (int terms : {0, 2, 4, 8, 16, 32}) {
        DenseMatrix est = neumann_inverse_oracle(p.stiffness, c.alpha, terms);
        double err = spectral_norm(subtract(est, inv));
        double series_tail = c.alpha * std::pow(c.delta, terms + 1) / (1.0 - c.delta);
        CHECK(err <= series_tail + 1e-12);
        CHECK(err <= prev + 1e-12);
        prev = err;
    }

    CHECK_THROWS_AS(neumann_inverse_oracle(b, 2.0, 3), std::invalid_argument);
}

TEST_CASE("direct solve hits the residual contract") {
    for (std::size_t d : {1, 7, 31}) {
        GalerkinProblem p = assemble_poisson_1d(d, forcing);
        GalerkinSolution sol = galerkin_solve(p, 1e-2, SolveMethod::Direct);
        CHECK(sol.residual <= 1e-10 * norm2(p.load));
        CHECK(sol.error_vs_direct == 0.0);
    }
}

TEST_CASE("nodal values match the analytic solution") {
    GalerkinProblem p = assemble_poisson_1d(31, forcing);
    GalerkinSolution sol = galerkin_solve(p, 1e-2, SolveMethod::Direct);
    double worst = 0.0;
    for (std::size_t i = 0; i < 31; ++i) {
        double x = p.mesh_width * static_cast<double>(i + 1);
        worst = std::max(worst, std::fabs(sol.mu[i] - std::sin(M_PI * x)));
    }
    CHECK(worst <= 1e-3); // quadrature-limited
}

TEST_CASE("series method converges to the direct solve") {
    GalerkinProblem p = assemble_poisson_1d(7, forcing);
    double prev = 1e300;
    for (double eps : {1e-1, 1e-3, 1e-6}) {
        GalerkinSolution sol = galerkin_solve(p, eps, SolveMethod::Neumann);
        CHECK(sol.error_vs_direct <= eps * norm2(p.load) * (1.0 + 1e-9));
        CHECK(sol.error_vs_direct <= prev + 1e-15);
        prev = sol.error_vs_direct;
    }
}

TEST_CASE("network method solves the discrete system") {
    GalerkinProblem p = assemble_poisson_1d(3, forcing);
    double eps = 0.1;
    GalerkinSolution sol = galerkin_solve(p, eps, SolveMethod::NeuralNet);
    CHECK(sol.error_vs_direct <= eps * norm2(p.load) * (1.0 + 1e-9));
    CHECK(sol.network_weights > 0);
    CHECK(sol.network_layers > 0);

    GalerkinSolution direct = galerkin_solve(p, eps, SolveMethod::Direct);
    CHECK(norm2(direct.mu) > 0.0);
}

TEST_CASE("zero load gives the zero solution for every method") {
    GalerkinProblem p = assemble_poisson_1d(5, [](double) { return 0.0; });
    for (SolveMethod m : {SolveMethod::Direct, SolveMethod::Neumann, SolveMethod::NeuralNet}) {
        GalerkinSolution sol = galerkin_solve(p, 0.1, m);
        CHECK(norm2(sol.mu) <= 1e-12);
    }
}

TEST_CASE("network method dimension cap") {
    GalerkinProblem p = assemble_poisson_1d(20, forcing);
    CHECK_THROWS_AS(galerkin_solve(p, 0.1, SolveMethod::NeuralNet), std::invalid_argument);
    SolveOptions opts;
    opts.max_network_dim = 1; // force the guard even for small problems
    GalerkinProblem small = assemble_poisson_1d(2, forcing);
    CHECK_THROWS_AS(galerkin_solve(small, 0.1, SolveMethod::NeuralNet, opts), std::invalid_argument);
}

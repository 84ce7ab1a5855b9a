#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nncalc/approx.hpp"
#include "nncalc/calculus.hpp"
#include "nncalc/json_io.hpp"
#include "nncalc/network.hpp"
#include "nncalc/spectral.hpp"

using namespace nncalc;

namespace {

// Independent reference for the square approximant: x minus the rescaled
// tent-map corrections, each tent evaluated by literal composition.
double square_reference(int stages, double x) {
    double v = x;
    double tent = x;
    for (int k = 1; k <= stages; ++k) {
        tent = std::min(2.0 * tent, 2.0 - 2.0 * tent);
        v -= std::ldexp(tent, -2 * k);
    }
    return v;
}

std::uint64_t mix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unif(std::uint64_t& s, double a, double b) {
    return a + (b - a) * (static_cast<double>(mix(s) >> 11) * 0x1.0p-53);
}

} // namespace

TEST_CASE("norm0 counts exact nonzeros") {
    DenseMatrix z(3, 4);
    CHECK(norm0(z) == 0);
    CHECK(norm0(DenseMatrix::identity(5)) == 5);

    DenseMatrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = -0.0; // negative zero is zero
    a(1, 0) = 2.0;
    a(1, 1) = 3.0;
    CHECK(norm0(a) == 3);

    CHECK(norm0(DenseVector{0.0, -0.0, 1e-300}) == 1);
}

TEST_CASE("validate reports exact sizes") {
    SUBCASE("square builder at depth 2") {
        SizeReport rep = validate(build_square(2));
        CHECK(rep.layers == 2);
        CHECK(rep.weights == 10);
        CHECK(rep.per_layer_weights == std::vector<std::int64_t>{6, 4});
        CHECK(rep.dim_in == 1);
        CHECK(rep.dim_out == 1);
    }
    SUBCASE("single identity layer") {
        NeuralNetwork net = from_weights_strict({{DenseMatrix::identity(3), DenseVector(3, 0.0)}});
        SizeReport rep = validate(net);
        CHECK(rep.layers == 1);
        CHECK(rep.neurons == 0);
        CHECK(rep.weights == 3);
        CHECK(rep.connectivity == 3);
    }
    SUBCASE("zero entries excluded") {
        DenseMatrix a(2, 2);
        a(0, 0) = 1.0;
        NeuralNetwork net = from_weights_strict({{a, DenseVector{0.0, 1.0}}});
        CHECK(validate(net).per_layer_weights.front() == 2);
    }
    SUBCASE("broken chain rejected") {
        NeuralNetwork net;
        net.layers.push_back(Layer{DenseMatrix(2, 2), DenseVector(2, 0.0),
                                   {ActivationTag::relu(), ActivationTag::relu()}});
        net.layers.push_back(Layer{DenseMatrix(1, 3), DenseVector(1, 0.0), {ActivationTag::identity()}});
        CHECK_THROWS_AS(validate(net), std::invalid_argument);
    }
    SUBCASE("non-identity output rejected") {
        NeuralNetwork net;
        net.layers.push_back(Layer{DenseMatrix::identity(2), DenseVector(2, 0.0),
                                   {ActivationTag::relu(), ActivationTag::relu()}});
        CHECK_THROWS_AS(validate(net), std::invalid_argument);
    }
}

TEST_CASE("realize") {
    SUBCASE("identity network is exact on negative inputs") {
        NeuralNetwork id = identity_network(2, 3);
        DenseVector out = realize(id, {-1.5, 2.0});
        CHECK(out[0] == -1.5);
        CHECK(out[1] == 2.0);
    }
    SUBCASE("square network matches the reference recursion") {
        NeuralNetwork net = build_square(3);
        CHECK(realize(net, {0.5})[0] == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(square_reference(2, 0.5) == 0.25);
        for (int i = 0; i <= 1000; ++i) {
            double x = i / 1000.0;
            CHECK(std::fabs(realize(net, {x})[0] - square_reference(2, x)) <= 1e-12);
        }
    }
    SUBCASE("all-negative preactivations yield the output bias path") {
        DenseMatrix a(2, 1);
        a(0, 0) = 1.0;
        a(1, 0) = 1.0;
        DenseVector b{-5.0, -5.0};
        DenseMatrix c(1, 2);
        c(0, 0) = 3.0;
        c(0, 1) = 4.0;
        NeuralNetwork net = from_weights_strict({{a, b}, {c, DenseVector{7.0}}});
        CHECK(realize(net, {0.25})[0] == 7.0); // both hidden units clamp to zero
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(realize(identity_network(2, 1), DenseVector{1.0}), std::invalid_argument);
    }
    SUBCASE("realize is reproducible bit for bit") {
        NeuralNetwork net = build_square(6);
        DenseVector a = realize(net, {0.3141592653589793});
        DenseVector b = realize(net, {0.3141592653589793});
        CHECK(a == b);
    }
}

TEST_CASE("from_weights_strict round trip") {
    std::uint64_t s = 42;
    NeuralNetwork net = build_square(4);
    NeuralNetwork rebuilt = from_weights_strict(weights_of(net), 1);
    for (int i = 0; i < 100; ++i) {
        double x = unif(s, 0.0, 1.0);
        CHECK(realize(net, {x})[0] == realize(rebuilt, {x})[0]);
    }
    CHECK(is_strict_relu(rebuilt));

    NeuralNetwork one = from_weights_strict({{DenseMatrix::identity(2), DenseVector(2, 0.0)}}, 3);
    CHECK(realize(one, {-2.0, 5.0}) == DenseVector{-2.0, 5.0});

    DenseMatrix bad(2, 3);
    CHECK_THROWS_AS(from_weights_strict({{DenseMatrix::identity(2), DenseVector(2, 0.0)}, {bad, DenseVector(2, 0.0)}}),
                    std::invalid_argument);
}

TEST_CASE("activation tags") {
    CHECK(ActivationTag::relu_power(1) == ActivationTag::relu());
    CHECK(!(ActivationTag::relu_power(2) == ActivationTag::relu()));
    CHECK(ActivationTag::relu_power(2).apply(3.0) == 9.0);
    CHECK(ActivationTag::relu_power(2).apply(-3.0) == 0.0);
    CHECK_THROWS_AS(ActivationTag::relu_power(0), std::invalid_argument);
}

TEST_CASE("spectral norm") {
    DenseMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -5.0;
    CHECK(spectral_norm(d) == doctest::Approx(5.0).epsilon(1e-12));

    CHECK(spectral_norm(DenseMatrix(3, 3)) == 0.0);

    DenseMatrix shifted(2, 2);
    shifted(0, 0) = -0.5;
    shifted(0, 1) = 1.0;
    shifted(1, 0) = 1.0;
    shifted(1, 1) = -0.5;
    CHECK(spectral_norm(shifted) == doctest::Approx(1.5).epsilon(1e-12));

    std::uint64_t s = 7;
    for (int trial = 0; trial < 25; ++trial) {
        DenseMatrix a(3, 4);
        for (double& x : a.data) x = unif(s, -2.0, 2.0);
        double na = spectral_norm(a);
        CHECK(std::fabs(spectral_norm(transpose(a)) - na) <= 1e-10 * std::max(1.0, na));
        double c = unif(s, -3.0, 3.0);
        CHECK(std::fabs(spectral_norm(scale(a, c)) - std::fabs(c) * na) <= 1e-10 * std::max(1.0, na));
    }
}

TEST_CASE("nonzero-count contraction under products") {
    std::uint64_t s = 99;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 2 + mix(s) % 4;
        DenseMatrix a(d, d);
        for (double& x : a.data)
            if (mix(s) % 3 == 0) x = unif(s, -2.0, 2.0);

        DenseMatrix row(1, d);
        for (double& x : row.data)
            if (mix(s) % 2 == 0) x = unif(s, -2.0, 2.0);
        CHECK(norm0(matmul(row, a)) <= norm0(a));

        // B with at most one nonzero per row.
        DenseMatrix b(d, d);
        for (std::size_t i = 0; i < d; ++i)
            if (mix(s) % 4 != 0) b(i, mix(s) % d) = unif(s, -2.0, 2.0);
        CHECK(norm0(matmul(a, b)) <= norm0(a));
    }
}

TEST_CASE("network json round trip") {
    NeuralNetwork net = build_scalar_mult(1e-2, 2.0);
    std::string text = network_to_json(net);
    NeuralNetwork back = network_from_json(text);
    CHECK(network_to_json(back) == text); // shortest round-trip decimals are stable

    std::uint64_t s = 5;
    for (int i = 0; i < 50; ++i) {
        double x = unif(s, -2.0, 2.0), y = unif(s, -2.0, 2.0);
        CHECK(realize(net, {x, y})[0] == realize(back, {x, y})[0]);
    }

    // relu_pow:1 reads back as plain relu
    NeuralNetwork mixed;
    DenseMatrix a(1, 1);
    a(0, 0) = 2.0;
    mixed.layers.push_back(Layer{a, DenseVector{0.5}, {ActivationTag::relu_power(2)}});
    mixed.layers.push_back(Layer{DenseMatrix::identity(1), DenseVector{0.0}, {ActivationTag::identity()}});
    NeuralNetwork parsed = network_from_json(network_to_json(mixed));
    CHECK(parsed.layers[0].acts[0] == ActivationTag::relu_power(2));
}

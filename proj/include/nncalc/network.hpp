#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nncalc/dense.hpp"

namespace nncalc {

// Componentwise activation of a single neuron. ReLUPower(1) and ReLU are the
// same activation and compare equal.
struct ActivationTag {
    enum class Kind { Identity, ReLU, ReLUPower };
    Kind kind = Kind::Identity;
    int power = 1; // meaningful for ReLUPower only, >= 1

    static ActivationTag identity() { return {Kind::Identity, 1}; }
    static ActivationTag relu() { return {Kind::ReLU, 1}; }
    static ActivationTag relu_power(int r);

    bool is_identity() const { return kind == Kind::Identity; }
    double apply(double x) const;
    friend bool operator==(const ActivationTag& a, const ActivationTag& b);
};

struct Layer {
    DenseMatrix weights;             // n_l x n_{l-1}
    DenseVector bias;                // n_l
    std::vector<ActivationTag> acts; // n_l

    std::size_t fan_out() const { return weights.rows; }
    std::size_t fan_in() const { return weights.cols; }
};

// A network is the symbolic list of affine/activation pairs; its realization
// is a separate operation. The last layer of a well-formed network acts as
// the identity on every output neuron.
struct NeuralNetwork {
    std::vector<Layer> layers;

    std::size_t depth() const { return layers.size(); }
    std::size_t dim_in() const { return layers.empty() ? 0 : layers.front().fan_in(); }
    std::size_t dim_out() const { return layers.empty() ? 0 : layers.back().fan_out(); }
};

struct SizeReport {
    std::int64_t layers = 0;       // L
    std::int64_t neurons = 0;      // N: hidden widths only
    std::int64_t weights = 0;      // M: nonzero matrix entries plus nonzero biases
    std::int64_t connectivity = 0; // C: nonzero matrix entries
    std::vector<std::int64_t> per_layer_weights;
    std::int64_t dim_in = 0;
    std::int64_t dim_out = 0;
};

// Checks the dimension chain and the identity-output convention, then counts
// every size metric with exact integer arithmetic.
SizeReport validate(const NeuralNetwork& net);

// alpha_L . T_L . ... . alpha_1 . T_1 applied to x.
DenseVector realize(const NeuralNetwork& net, const DenseVector& x);

using WeightPair = std::pair<DenseMatrix, DenseVector>;

// The unique strict network with the given weights: every hidden activation
// is ReLU^r, the output activation is the identity.
NeuralNetwork from_weights_strict(const std::vector<WeightPair>& weights, int r = 1);

std::vector<WeightPair> weights_of(const NeuralNetwork& net);

// True when every hidden tag is exactly ReLU and the final layer is identity.
bool is_strict_relu(const NeuralNetwork& net);

} // namespace nncalc

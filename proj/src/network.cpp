#include "nncalc/network.hpp"

#include <cmath>

namespace nncalc {

ActivationTag ActivationTag::relu_power(int r) {
    if (r < 1) throw std::invalid_argument("relu_power: exponent must be >= 1");
    if (r == 1) return relu();
    return {Kind::ReLUPower, r};
}

double ActivationTag::apply(double x) const {
    switch (kind) {
        case Kind::Identity: return x;
        case Kind::ReLU: return x > 0.0 ? x : 0.0;
        case Kind::ReLUPower: {
            if (x <= 0.0) return 0.0;
            double y = x;
            for (int i = 1; i < power; ++i) y *= x;
            return y;
        }
    }
    return x;
}

bool operator==(const ActivationTag& a, const ActivationTag& b) {
    auto canon = [](const ActivationTag& t) {
        if (t.kind == ActivationTag::Kind::ReLUPower && t.power == 1)
            return std::pair<int, int>{1, 1};
        if (t.kind == ActivationTag::Kind::ReLU) return std::pair<int, int>{1, 1};
        if (t.kind == ActivationTag::Kind::Identity) return std::pair<int, int>{0, 0};
        return std::pair<int, int>{1, t.power};
    };
    return canon(a) == canon(b);
}

SizeReport validate(const NeuralNetwork& net) {
    if (net.layers.empty()) throw std::invalid_argument("validate: network has no layers");
    SizeReport rep;
    rep.layers = static_cast<std::int64_t>(net.layers.size());
    rep.dim_in = static_cast<std::int64_t>(net.layers.front().fan_in());
    rep.dim_out = static_cast<std::int64_t>(net.layers.back().fan_out());

    std::size_t prev = net.layers.front().fan_in();
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        if (layer.weights.cols != prev)
            throw std::invalid_argument("validate: dimension chain broken at layer " + std::to_string(l + 1));
        if (layer.bias.size() != layer.weights.rows || layer.acts.size() != layer.weights.rows)
            throw std::invalid_argument("validate: row count, bias length and activation count differ at layer " +
                                        std::to_string(l + 1));
        prev = layer.weights.rows;

        std::int64_t ml = norm0(layer.weights) + norm0(layer.bias);
        rep.per_layer_weights.push_back(ml);
        rep.weights += ml;
        rep.connectivity += norm0(layer.weights);
        if (l + 1 < net.layers.size()) rep.neurons += static_cast<std::int64_t>(layer.weights.rows);
    }

    for (const ActivationTag& t : net.layers.back().acts)
        if (!t.is_identity())
            throw std::invalid_argument("validate: final layer must act as the identity");
    return rep;
}

DenseVector realize(const NeuralNetwork& net, const DenseVector& x) {
    if (net.layers.empty()) throw std::invalid_argument("realize: network has no layers");
    if (x.size() != net.dim_in()) throw std::invalid_argument("realize: input dimension mismatch");
    DenseVector v = x;
    for (const Layer& layer : net.layers) {
        DenseVector y(layer.fan_out());
        for (std::size_t i = 0; i < layer.fan_out(); ++i) {
            double s = layer.bias[i];
            for (std::size_t j = 0; j < layer.fan_in(); ++j) s += layer.weights(i, j) * v[j];
            y[i] = layer.acts[i].apply(s);
        }
        v = std::move(y);
    }
    return v;
}

NeuralNetwork from_weights_strict(const std::vector<WeightPair>& weights, int r) {
    if (weights.empty()) throw std::invalid_argument("from_weights_strict: empty weight list");
    NeuralNetwork net;
    std::size_t prev = weights.front().first.cols;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const auto& [a, b] = weights[l];
        if (a.cols != prev)
            throw std::invalid_argument("from_weights_strict: dimension chain broken at layer " +
                                        std::to_string(l + 1));
        if (a.rows != b.size())
            throw std::invalid_argument("from_weights_strict: bias length mismatch at layer " + std::to_string(l + 1));
        prev = a.rows;
        bool last = (l + 1 == weights.size());
        Layer layer{a, b, std::vector<ActivationTag>(a.rows, last ? ActivationTag::identity()
                                                                  : ActivationTag::relu_power(r))};
        net.layers.push_back(std::move(layer));
    }
    return net;
}

std::vector<WeightPair> weights_of(const NeuralNetwork& net) {
    std::vector<WeightPair> w;
    w.reserve(net.layers.size());
    for (const Layer& l : net.layers) w.emplace_back(l.weights, l.bias);
    return w;
}

bool is_strict_relu(const NeuralNetwork& net) {
    if (net.layers.empty()) return false;
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l)
        for (const ActivationTag& t : net.layers[l].acts)
            if (!(t == ActivationTag::relu())) return false;
    for (const ActivationTag& t : net.layers.back().acts)
        if (!t.is_identity()) return false;
    return true;
}

} // namespace nncalc

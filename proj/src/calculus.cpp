#include "nncalc/calculus.hpp"

#include <optional>

namespace nncalc {

namespace {

// The hidden activation family of a network: the exponent r shared by all
// non-identity tags, or nullopt when every hidden tag is the identity.
std::optional<int> hidden_family(const NeuralNetwork& net) {
    std::optional<int> fam;
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l) {
        for (const ActivationTag& t : net.layers[l].acts) {
            if (t.is_identity()) continue;
            int r = (t == ActivationTag::relu()) ? 1 : t.power;
            if (fam && *fam != r) throw std::invalid_argument("network mixes activation families");
            fam = r;
        }
    }
    return fam;
}

void require_same_family(const NeuralNetwork& a, const NeuralNetwork& b) {
    auto fa = hidden_family(a), fb = hidden_family(b);
    if (fa && fb && *fa != *fb)
        throw std::invalid_argument("operands use different activation families");
}

void require_strict_relu(const NeuralNetwork& net, const char* op) {
    if (!is_strict_relu(net))
        throw std::invalid_argument(std::string(op) + ": operand is not a strict ReLU network");
}

Layer fuse(const Layer& next, const Layer& last) {
    // T_next o T_last: one affine map, activations taken from `next`.
    Layer out;
    out.weights = matmul(next.weights, last.weights);
    out.bias = matvec(next.weights, last.bias);
    for (std::size_t i = 0; i < out.bias.size(); ++i) out.bias[i] += next.bias[i];
    out.acts = next.acts;
    return out;
}

} // namespace

NeuralNetwork concatenate(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    validate(phi1);
    validate(phi2);
    if (phi1.dim_in() != phi2.dim_out())
        throw std::invalid_argument("concatenate: dim_in(phi1) != dim_out(phi2)");
    require_same_family(phi1, phi2);

    NeuralNetwork out;
    out.layers.assign(phi2.layers.begin(), phi2.layers.end() - 1);
    out.layers.push_back(fuse(phi1.layers.front(), phi2.layers.back()));
    out.layers.insert(out.layers.end(), phi1.layers.begin() + 1, phi1.layers.end());
    return out;
}

NeuralNetwork identity_network(std::size_t n, std::size_t depth) {
    if (n == 0 || depth == 0) throw std::invalid_argument("identity_network: n and depth must be positive");
    if (depth == 1) return from_weights_strict({{DenseMatrix::identity(n), DenseVector(n, 0.0)}});

    std::vector<WeightPair> w;
    DenseMatrix split(2 * n, n); // [I; -I]
    for (std::size_t i = 0; i < n; ++i) {
        split(i, i) = 1.0;
        split(n + i, i) = -1.0;
    }
    w.emplace_back(split, DenseVector(2 * n, 0.0));
    for (std::size_t l = 0; l + 2 < depth; ++l)
        w.emplace_back(DenseMatrix::identity(2 * n), DenseVector(2 * n, 0.0));
    DenseMatrix join(n, 2 * n); // [I  -I]
    for (std::size_t i = 0; i < n; ++i) {
        join(i, i) = 1.0;
        join(i, n + i) = -1.0;
    }
    w.emplace_back(join, DenseVector(n, 0.0));
    return from_weights_strict(w);
}

NeuralNetwork sparse_concatenate(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    require_strict_relu(phi1, "sparse_concatenate");
    require_strict_relu(phi2, "sparse_concatenate");
    if (phi1.dim_in() != phi2.dim_out())
        throw std::invalid_argument("sparse_concatenate: dim_in(phi1) != dim_out(phi2)");
    std::size_t n = phi1.dim_in();
    return concatenate(phi1, concatenate(identity_network(n, 2), phi2));
}

NeuralNetwork parallelize(const std::vector<NeuralNetwork>& nets) {
    if (nets.empty()) throw std::invalid_argument("parallelize: empty operand list");
    std::size_t n_in = nets.front().dim_in();
    std::size_t depth = 0;
    for (const NeuralNetwork& net : nets) {
        require_strict_relu(net, "parallelize");
        if (net.dim_in() != n_in) throw std::invalid_argument("parallelize: input dimensions differ");
        depth = std::max(depth, net.depth());
    }

    std::vector<NeuralNetwork> padded;
    padded.reserve(nets.size());
    for (const NeuralNetwork& net : nets) {
        if (net.depth() == depth)
            padded.push_back(net);
        else
            padded.push_back(sparse_concatenate(identity_network(net.dim_out(), depth - net.depth()), net));
    }

    NeuralNetwork out;
    for (std::size_t l = 0; l < depth; ++l) {
        std::size_t rows = 0, cols = 0;
        for (const NeuralNetwork& net : padded) {
            rows += net.layers[l].fan_out();
            cols += net.layers[l].fan_in();
        }
        bool shared_input = (l == 0);
        Layer layer;
        layer.weights = DenseMatrix(rows, shared_input ? n_in : cols);
        layer.bias.assign(rows, 0.0);

        std::size_t r0 = 0, c0 = 0;
        for (const NeuralNetwork& net : padded) {
            const Layer& src = net.layers[l];
            for (std::size_t i = 0; i < src.fan_out(); ++i) {
                for (std::size_t j = 0; j < src.fan_in(); ++j)
                    layer.weights(r0 + i, (shared_input ? 0 : c0) + j) = src.weights(i, j);
                layer.bias[r0 + i] = src.bias[i];
                layer.acts.push_back(src.acts[i]);
            }
            r0 += src.fan_out();
            c0 += src.fan_in();
        }
        out.layers.push_back(std::move(layer));
    }
    return out;
}

NeuralNetwork scale_network(const NeuralNetwork& net, double a) {
    validate(net);
    NeuralNetwork out = net;
    Layer& last = out.layers.back();
    for (double& x : last.weights.data) x *= a;
    for (double& x : last.bias) x *= a;
    return out;
}

NeuralNetwork add_networks(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    SizeReport r1 = validate(phi1);
    SizeReport r2 = validate(phi2);
    if (phi1.dim_in() != phi2.dim_in() || phi1.dim_out() != phi2.dim_out())
        throw std::invalid_argument("add_networks: operand dimensions differ");
    require_same_family(phi1, phi2);

    auto fold_constant = [](const NeuralNetwork& constant, const NeuralNetwork& other) {
        DenseVector c = realize(constant, DenseVector(constant.dim_in(), 0.0));
        NeuralNetwork out = other;
        for (std::size_t i = 0; i < c.size(); ++i) out.layers.back().bias[i] += c[i];
        return out;
    };
    if (r1.weights < r1.layers) return fold_constant(phi1, phi2);
    if (r2.weights < r2.layers) return fold_constant(phi2, phi1);

    std::size_t depth = std::max(phi1.depth(), phi2.depth());
    auto pad = [&](const NeuralNetwork& net) {
        NeuralNetwork p = net;
        std::size_t n = net.dim_out();
        while (p.depth() < depth) {
            Layer id{DenseMatrix::identity(n), DenseVector(n, 0.0),
                     std::vector<ActivationTag>(n, ActivationTag::identity())};
            p.layers.push_back(std::move(id));
        }
        return p;
    };
    NeuralNetwork a = pad(phi1), b = pad(phi2);

    if (depth == 1) {
        // Two affine maps over the same input collapse to one.
        NeuralNetwork out = a;
        Layer& l = out.layers.front();
        for (std::size_t i = 0; i < l.weights.data.size(); ++i)
            l.weights.data[i] += b.layers.front().weights.data[i];
        for (std::size_t i = 0; i < l.bias.size(); ++i) l.bias[i] += b.layers.front().bias[i];
        return out;
    }

    NeuralNetwork out;
    for (std::size_t l = 0; l < depth; ++l) {
        const Layer& la = a.layers[l];
        const Layer& lb = b.layers[l];
        bool first = (l == 0), last = (l + 1 == depth);
        std::size_t cols_a = la.fan_in(), cols_b = lb.fan_in();

        Layer layer;
        if (last) {
            // [A  B], biases added: the two branches merge into a sum.
            layer.weights = DenseMatrix(la.fan_out(), cols_a + cols_b);
            layer.bias.assign(la.fan_out(), 0.0);
            for (std::size_t i = 0; i < la.fan_out(); ++i) {
                for (std::size_t j = 0; j < cols_a; ++j) layer.weights(i, j) = la.weights(i, j);
                for (std::size_t j = 0; j < cols_b; ++j) layer.weights(i, cols_a + j) = lb.weights(i, j);
                layer.bias[i] = la.bias[i] + lb.bias[i];
                layer.acts.push_back(ActivationTag::identity());
            }
        } else {
            std::size_t rows = la.fan_out() + lb.fan_out();
            layer.weights = DenseMatrix(rows, first ? cols_a : cols_a + cols_b);
            layer.bias.assign(rows, 0.0);
            for (std::size_t i = 0; i < la.fan_out(); ++i) {
                for (std::size_t j = 0; j < cols_a; ++j) layer.weights(i, j) = la.weights(i, j);
                layer.bias[i] = la.bias[i];
                layer.acts.push_back(la.acts[i]);
            }
            for (std::size_t i = 0; i < lb.fan_out(); ++i) {
                for (std::size_t j = 0; j < cols_b; ++j)
                    layer.weights(la.fan_out() + i, (first ? 0 : cols_a) + j) = lb.weights(i, j);
                layer.bias[la.fan_out() + i] = lb.bias[i];
                layer.acts.push_back(lb.acts[i]);
            }
        }
        out.layers.push_back(std::move(layer));
    }
    return out;
}

} // namespace nncalc

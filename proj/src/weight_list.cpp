#include "nncalc/detail/weight_list.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nncalc::detail {

std::int64_t WLayer::connectivity() const {
    std::int64_t n = static_cast<std::int64_t>(entries.size());
    for (const BlockRepeat& br : repeats) n += br.count * static_cast<std::int64_t>(br.pattern.size());
    return n;
}

std::int64_t WLayer::weight_count() const {
    std::int64_t n = connectivity() + static_cast<std::int64_t>(bias.size());
    for (const BlockRepeat& br : repeats) n += br.count * static_cast<std::int64_t>(br.bias_pattern.size());
    return n;
}

void canonicalize(WLayer& layer) {
    auto key = [](const WEntry& e) { return std::pair<std::int64_t, std::int64_t>{e.r, e.c}; };
    std::sort(layer.entries.begin(), layer.entries.end(),
              [&](const WEntry& a, const WEntry& b) { return key(a) < key(b); });
    std::vector<WEntry> merged;
    merged.reserve(layer.entries.size());
    for (const WEntry& e : layer.entries) {
        if (!merged.empty() && key(merged.back()) == key(e))
            merged.back().v += e.v;
        else
            merged.push_back(e);
    }
    std::erase_if(merged, [](const WEntry& e) { return e.v == 0.0; });
    layer.entries = std::move(merged);

    std::sort(layer.bias.begin(), layer.bias.end());
    std::vector<std::pair<std::int64_t, double>> b;
    for (const auto& [r, v] : layer.bias) {
        if (!b.empty() && b.back().first == r)
            b.back().second += v;
        else
            b.emplace_back(r, v);
    }
    std::erase_if(b, [](const auto& p) { return p.second == 0.0; });
    layer.bias = std::move(b);
}

WLayer affine_layer(std::int64_t rows, std::int64_t cols, std::vector<WEntry> entries,
                    std::vector<std::pair<std::int64_t, double>> bias) {
    WLayer layer;
    layer.rows = rows;
    layer.cols = cols;
    layer.entries = std::move(entries);
    layer.bias = std::move(bias);
    canonicalize(layer);
    return layer;
}

WeightList single_layer(WLayer layer) {
    WeightList wl;
    wl.layers.push_back(std::move(layer));
    return wl;
}

WeightList identity_chain(std::int64_t n, std::int64_t depth) {
    if (n <= 0 || depth <= 0) throw std::invalid_argument("identity_chain: n and depth must be positive");
    WeightList wl;
    if (depth == 1) {
        std::vector<WEntry> eye;
        for (std::int64_t i = 0; i < n; ++i) eye.push_back({i, i, 1.0});
        wl.layers.push_back(affine_layer(n, n, std::move(eye)));
        return wl;
    }
    std::vector<WEntry> split;
    for (std::int64_t i = 0; i < n; ++i) {
        split.push_back({i, i, 1.0});
        split.push_back({n + i, i, -1.0});
    }
    wl.layers.push_back(affine_layer(2 * n, n, std::move(split)));
    for (std::int64_t l = 0; l + 2 < depth; ++l) {
        std::vector<WEntry> eye;
        for (std::int64_t i = 0; i < 2 * n; ++i) eye.push_back({i, i, 1.0});
        wl.layers.push_back(affine_layer(2 * n, 2 * n, std::move(eye)));
    }
    std::vector<WEntry> join;
    for (std::int64_t i = 0; i < n; ++i) {
        join.push_back({i, i, 1.0});
        join.push_back({i, n + i, -1.0});
    }
    wl.layers.push_back(affine_layer(n, 2 * n, std::move(join)));
    return wl;
}

std::vector<double> apply_layer(const WLayer& layer, const std::vector<double>& x) {
    if (static_cast<std::int64_t>(x.size()) != layer.cols)
        throw std::invalid_argument("apply_layer: input dimension mismatch");
    std::vector<double> y(static_cast<std::size_t>(layer.rows), 0.0);
    for (const auto& [r, v] : layer.bias) y[static_cast<std::size_t>(r)] = v;
    for (const BlockRepeat& br : layer.repeats) {
        for (std::int64_t b = 0; b < br.count; ++b) {
            std::int64_t r0 = br.row0 + b * br.row_stride;
            std::int64_t c0 = br.col0 + b * br.col_stride;
            for (const auto& [row, val] : br.bias_pattern) y[static_cast<std::size_t>(r0 + row)] = val;
            for (const WEntry& e : br.pattern)
                y[static_cast<std::size_t>(r0 + e.r)] += e.v * x[static_cast<std::size_t>(c0 + e.c)];
        }
    }
    for (const WEntry& e : layer.entries) y[static_cast<std::size_t>(e.r)] += e.v * x[static_cast<std::size_t>(e.c)];
    return y;
}

std::vector<double> wl_realize(const WeightList& wl, const std::vector<double>& x) {
    if (wl.layers.empty()) throw std::invalid_argument("wl_realize: empty weight list");
    std::vector<double> v = x;
    for (std::size_t l = 0; l < wl.layers.size(); ++l) {
        v = apply_layer(wl.layers[l], v);
        if (l + 1 < wl.layers.size())
            for (double& t : v) t = t > 0.0 ? t : 0.0;
    }
    return v;
}

WeightList bullet(const WeightList& upper, const WeightList& lower) {
    if (upper.layers.empty() || lower.layers.empty()) throw std::invalid_argument("bullet: empty operand");
    if (upper.dim_in() != lower.dim_out()) throw std::invalid_argument("bullet: seam dimensions differ");
    const WLayer& up = upper.layers.front();
    const WLayer& low = lower.layers.back();
    if (!up.plain() || !low.plain()) throw std::logic_error("bullet: seam layers must be plain triplet layers");

    // Index the lower seam layer by row for the product.
    std::vector<std::pair<std::size_t, std::size_t>> row_span(static_cast<std::size_t>(low.rows), {0, 0});
    for (std::size_t p = 0; p < low.entries.size();) {
        std::size_t q = p;
        while (q < low.entries.size() && low.entries[q].r == low.entries[p].r) ++q;
        row_span[static_cast<std::size_t>(low.entries[p].r)] = {p, q};
        p = q;
    }
    std::vector<double> low_bias(static_cast<std::size_t>(low.rows), 0.0);
    for (const auto& [r, v] : low.bias) low_bias[static_cast<std::size_t>(r)] = v;

    WLayer fused;
    fused.rows = up.rows;
    fused.cols = low.cols;
    std::vector<double> fused_bias(static_cast<std::size_t>(up.rows), 0.0);
    for (const auto& [r, v] : up.bias) fused_bias[static_cast<std::size_t>(r)] = v;
    for (const WEntry& e : up.entries) {
        auto [p, q] = row_span[static_cast<std::size_t>(e.c)];
        for (std::size_t t = p; t < q; ++t)
            fused.entries.push_back({e.r, low.entries[t].c, e.v * low.entries[t].v});
        fused_bias[static_cast<std::size_t>(e.r)] += e.v * low_bias[static_cast<std::size_t>(e.c)];
    }
    for (std::int64_t r = 0; r < fused.rows; ++r)
        if (fused_bias[static_cast<std::size_t>(r)] != 0.0)
            fused.bias.emplace_back(r, fused_bias[static_cast<std::size_t>(r)]);
    canonicalize(fused);

    WeightList out;
    out.layers.assign(lower.layers.begin(), lower.layers.end() - 1);
    out.layers.push_back(std::move(fused));
    out.layers.insert(out.layers.end(), upper.layers.begin() + 1, upper.layers.end());
    return out;
}

WeightList sparse_concat(const WeightList& upper, const WeightList& lower) {
    if (upper.layers.empty() || lower.layers.empty()) throw std::invalid_argument("sparse_concat: empty operand");
    if (upper.dim_in() != lower.dim_out()) throw std::invalid_argument("sparse_concat: seam dimensions differ");
    const WLayer& up = upper.layers.front();
    const WLayer& low = lower.layers.back();
    if (!up.plain() || !low.plain()) throw std::logic_error("sparse_concat: seam layers must be plain triplet layers");
    std::int64_t q = low.rows;

    WLayer doubled; // [X; -X] with bias [b; -b]
    doubled.rows = 2 * q;
    doubled.cols = low.cols;
    for (const WEntry& e : low.entries) {
        doubled.entries.push_back(e);
        doubled.entries.push_back({q + e.r, e.c, -e.v});
    }
    for (const auto& [r, v] : low.bias) {
        doubled.bias.emplace_back(r, v);
        doubled.bias.emplace_back(q + r, -v);
    }
    canonicalize(doubled);

    WLayer mirrored; // [A  -A]
    mirrored.rows = up.rows;
    mirrored.cols = 2 * q;
    for (const WEntry& e : up.entries) {
        mirrored.entries.push_back(e);
        mirrored.entries.push_back({e.r, q + e.c, -e.v});
    }
    mirrored.bias = up.bias;
    canonicalize(mirrored);

    WeightList out;
    out.layers.assign(lower.layers.begin(), lower.layers.end() - 1);
    out.layers.push_back(std::move(doubled));
    out.layers.push_back(std::move(mirrored));
    out.layers.insert(out.layers.end(), upper.layers.begin() + 1, upper.layers.end());
    return out;
}

WeightList stack_shared(const std::vector<WeightList>& parts) {
    if (parts.empty()) throw std::invalid_argument("stack_shared: empty operand list");
    std::int64_t depth = parts.front().depth();
    std::int64_t n_in = parts.front().dim_in();
    for (const WeightList& p : parts)
        if (p.depth() != depth || p.dim_in() != n_in)
            throw std::invalid_argument("stack_shared: operands must share depth and input dimension");

    WeightList out;
    for (std::int64_t l = 0; l < depth; ++l) {
        bool shared = (l == 0);
        WLayer layer;
        layer.cols = shared ? n_in : 0;
        for (const WeightList& p : parts) {
            const WLayer& src = p.layers[static_cast<std::size_t>(l)];
            std::int64_t r0 = layer.rows;
            std::int64_t c0 = shared ? 0 : layer.cols;
            for (const WEntry& e : src.entries) layer.entries.push_back({r0 + e.r, c0 + e.c, e.v});
            for (const auto& [r, v] : src.bias) layer.bias.emplace_back(r0 + r, v);
            for (BlockRepeat br : src.repeats) {
                br.row0 += r0;
                br.col0 += c0;
                layer.repeats.push_back(std::move(br));
            }
            layer.rows += src.rows;
            if (!shared) layer.cols += src.cols;
        }
        canonicalize(layer);
        out.layers.push_back(std::move(layer));
    }
    return out;
}

SizeReport wl_size_report(const WeightList& wl) {
    SizeReport rep;
    rep.layers = wl.depth();
    rep.dim_in = wl.dim_in();
    rep.dim_out = wl.dim_out();
    for (std::size_t l = 0; l < wl.layers.size(); ++l) {
        const WLayer& layer = wl.layers[l];
        rep.per_layer_weights.push_back(layer.weight_count());
        rep.weights += layer.weight_count();
        rep.connectivity += layer.connectivity();
        if (l + 1 < wl.layers.size()) rep.neurons += layer.rows;
    }
    return rep;
}

NeuralNetwork to_network(const WeightList& wl, std::size_t max_dense_entries) {
    std::size_t total = 0;
    for (const WLayer& layer : wl.layers)
        total += static_cast<std::size_t>(layer.rows) * static_cast<std::size_t>(layer.cols);
    if (total > max_dense_entries)
        throw std::length_error("to_network: dense materialization would need " + std::to_string(total) +
                                " entries; raise the limit or evaluate through the plan");

    std::vector<WeightPair> w;
    for (const WLayer& layer : wl.layers) {
        DenseMatrix a(static_cast<std::size_t>(layer.rows), static_cast<std::size_t>(layer.cols));
        DenseVector b(static_cast<std::size_t>(layer.rows), 0.0);
        for (const auto& [r, v] : layer.bias) b[static_cast<std::size_t>(r)] = v;
        for (const BlockRepeat& br : layer.repeats) {
            for (std::int64_t blk = 0; blk < br.count; ++blk) {
                std::int64_t r0 = br.row0 + blk * br.row_stride;
                std::int64_t c0 = br.col0 + blk * br.col_stride;
                for (const auto& [row, val] : br.bias_pattern) b[static_cast<std::size_t>(r0 + row)] = val;
                for (const WEntry& e : br.pattern)
                    a(static_cast<std::size_t>(r0 + e.r), static_cast<std::size_t>(c0 + e.c)) = e.v;
            }
        }
        for (const WEntry& e : layer.entries)
            a(static_cast<std::size_t>(e.r), static_cast<std::size_t>(e.c)) = e.v;
        w.emplace_back(std::move(a), std::move(b));
    }
    return from_weights_strict(w, 1);
}

} // namespace nncalc::detail

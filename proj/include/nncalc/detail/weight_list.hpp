#pragma once

#include <cstdint>
#include <vector>

#include "nncalc/network.hpp"

namespace nncalc::detail {

// Layered weight storage for the strict-ReLU builders. Matrices are kept as
// sorted coordinate triplets plus optional repeated block patterns, so the
// block-structured approximation networks can be assembled, counted and
// evaluated without materializing their mostly-zero dense matrices.
// Materializing through to_network yields the identical network.

struct WEntry {
    std::int64_t r = 0, c = 0;
    double v = 0.0;
};

// One pattern stamped `count` times: block b contributes entries
// (row0 + b*row_stride + e.r, col0 + b*col_stride + e.c, e.v) and bias
// (row0 + b*row_stride + p.first, p.second).
struct BlockRepeat {
    std::int64_t row0 = 0, col0 = 0;
    std::int64_t row_stride = 0, col_stride = 0;
    std::int64_t count = 0;
    std::vector<WEntry> pattern;
    std::vector<std::pair<std::int64_t, double>> bias_pattern;
};

struct WLayer {
    std::int64_t rows = 0, cols = 0;
    std::vector<WEntry> entries;                         // canonical: sorted, unique, nonzero
    std::vector<BlockRepeat> repeats;                    // row-disjoint from entries
    std::vector<std::pair<std::int64_t, double>> bias;   // sparse, sorted, nonzero

    std::int64_t connectivity() const;
    std::int64_t weight_count() const;
    bool plain() const { return repeats.empty(); }
};

struct WeightList {
    std::vector<WLayer> layers;

    std::int64_t depth() const { return static_cast<std::int64_t>(layers.size()); }
    std::int64_t dim_in() const { return layers.empty() ? 0 : layers.front().cols; }
    std::int64_t dim_out() const { return layers.empty() ? 0 : layers.back().rows; }
};

// Sorts, merges duplicate coordinates and drops exact zeros.
void canonicalize(WLayer& layer);

WLayer affine_layer(std::int64_t rows, std::int64_t cols, std::vector<WEntry> entries,
                    std::vector<std::pair<std::int64_t, double>> bias = {});

WeightList single_layer(WLayer layer);

// Strict ReLU identity block of the requested depth on R^n.
WeightList identity_chain(std::int64_t n, std::int64_t depth);

std::vector<double> apply_layer(const WLayer& layer, const std::vector<double>& x);

// Strict-ReLU realization: ReLU on every hidden layer, identity output.
std::vector<double> wl_realize(const WeightList& wl, const std::vector<double>& x);

// Seam-fusing composition (upper after lower). The seam layers must be plain.
WeightList bullet(const WeightList& upper, const WeightList& lower);

// Composition through a two-layer identity block; depths add.
WeightList sparse_concat(const WeightList& upper, const WeightList& lower);

// Equal-depth stack over a shared input.
WeightList stack_shared(const std::vector<WeightList>& parts);

SizeReport wl_size_report(const WeightList& wl);

// Dense materialization; throws std::length_error beyond max_dense_entries.
NeuralNetwork to_network(const WeightList& wl, std::size_t max_dense_entries = (std::size_t{1} << 27));

} // namespace nncalc::detail

#pragma once

#include "nncalc/network.hpp"

namespace nncalc {

// Composition that fuses the seam: the result applies phi2 first, and its
// layer count is depth(phi1) + depth(phi2) - 1. Requires matching activation
// families at the seam.
NeuralNetwork concatenate(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

// Strict ReLU network realizing the identity on R^n with exactly L layers.
NeuralNetwork identity_network(std::size_t n, std::size_t depth);

// Composition routed through a two-layer identity block. Preserves
// strictness; depth adds, and the seam weights stay factored.
// Both operands must be strict ReLU networks.
NeuralNetwork sparse_concatenate(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

// Shared-input parallelization of strict ReLU networks with equal input
// dimension: x -> (R(phi_1)(x), ..., R(phi_k)(x)). Shorter operands are
// depth-padded on the output side through identity blocks.
NeuralNetwork parallelize(const std::vector<NeuralNetwork>& nets);

// Multiplies the realization by a: scales the output affine map. a == 0 is
// allowed and zeroes the last layer, dropping its weight count.
NeuralNetwork scale_network(const NeuralNetwork& net, double a);

// Realization sum of two networks with equal input and output dimensions.
// When an operand has fewer weights than layers its realization is constant
// and the constant is folded into the other operand's output bias.
NeuralNetwork add_networks(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

} // namespace nncalc

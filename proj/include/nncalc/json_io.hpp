#pragma once

#include <string>

#include "nncalc/network.hpp"

namespace nncalc {

// Wire format, version 1:
//   {"version":1,"layers":[{"A":[[...]],"b":[...],"acts":["relu"|"id"|{"relu_pow":r},...]}]}
// Numbers are written as shortest round-trip decimals.
std::string network_to_json(const NeuralNetwork& net);
NeuralNetwork network_from_json(const std::string& text);

void save_network(const NeuralNetwork& net, const std::string& path);
NeuralNetwork load_network(const std::string& path);

} // namespace nncalc

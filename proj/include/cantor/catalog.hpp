#pragma once

#include <string>
#include <vector>

#include "cantor/endomorphism.hpp"

namespace cantor::catalog {

// named presentations: full2, full3, golden, two_cycle, single_loop, cycles23
DirectedGraph graph(std::string const& name);
std::vector<std::string> graph_names();

// named maps: shift_full2, identity_full2, equal_full2, xor_full2,
// bbvariant_full2, constant_full2, shift2_full2, shift_full3, shift_golden,
// shift_cycles23, shift_two_cycle
CantorMap map(std::string const& name);
std::vector<std::string> map_names();

}  // namespace cantor::catalog

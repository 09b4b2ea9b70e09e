#pragma once

#include <cstdint>
#include <vector>

#include "prtrp/instance.hpp"

namespace prtrp::testing {

// Source 1 with leaves 2 and 3. d(0,1)=1, d(0,2)=2, d(0,3)=3, d(1,2)=1,
// d(1,3)=2, d(2,3)=1, symmetric.
Instance star_instance();

// Power chain 1 -> 2 -> 3 over the same road network as star_instance().
Instance chain_instance();

// A single fault vertex at distance `d` from the depot.
Instance single_vertex_instance(Time d = 4);

// Random instance with asymmetric travel and a random tree, optionally with
// repair durations. Used where generate_random's symmetric metric is too tame.
Instance random_asymmetric_instance(int n, std::uint64_t seed, int max_travel = 30,
                                    int max_repair = 0);

// Random permutation of 1..n.
std::vector<Vertex> random_order(int n, std::uint64_t seed);

}  // namespace prtrp::testing

#pragma once

#include "prtrp/instance.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp {

inline constexpr int kBruteForceLimit = 10;
inline constexpr int kHeldKarpLimit = 20;

// Every permutation, evaluated with evaluate_route. Lexicographically first
// among the optima. Throws EngineLimitError for n > 10.
Route brute_force(const Instance& instance, const PrecedenceIndex& index);

// Plain forward subset DP over (visited set, last vertex) without pruning.
// Shares nothing with the bidirectional engine; the dark-vertex count is
// recomputed here from the parent array. Throws EngineLimitError for n > 20.
Route held_karp_forward(const Instance& instance, const PrecedenceIndex& index);

}  // namespace prtrp

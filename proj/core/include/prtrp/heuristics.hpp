#pragma once

#include <span>

#include "prtrp/instance.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp {

// Nearest unvisited vertex first; ties go to the smaller label.
Route greedy_distance(const Instance& instance, const PrecedenceIndex& index);

// Smallest d(i, j) / |S_j| first, compared exactly by cross-multiplication.
Route greedy_priority_distance(const Instance& instance, const PrecedenceIndex& index);

// Extends a duplicate-free prefix with the nearest-vertex rule.
Route greedy_complete(const Instance& instance, const PrecedenceIndex& index,
                      std::span<const Vertex> prefix);

}  // namespace prtrp

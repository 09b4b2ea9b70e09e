#include "prtrp/power_eval.hpp"

#include <algorithm>
#include <string>

namespace prtrp {

PrecedenceIndex::PrecedenceIndex(const Instance& instance)
    : n_(instance.n), source_(instance.source) {
  if (n_ > kMaxVertices) {
    throw EngineLimitError("instance has " + std::to_string(n_) + " fault vertices; at most " +
                           std::to_string(kMaxVertices) + " are supported");
  }
  require_valid(instance);
  parent_.assign(n_ + 1, kDepot);
  for (const auto& e : instance.power_edges) parent_[e.child] = e.parent;

  ancestors_.assign(n_ + 1, 0);
  successors_.assign(n_ + 1, 0);
  for (Vertex j = 1; j <= n_; ++j) {
    for (Vertex a = j; a != kDepot; a = parent_[a]) {
      ancestors_[j] |= bit_of(a);
      successors_[a] |= bit_of(j);
    }
  }
}

int PrecedenceIndex::disrupted_count(VertexSet repaired) const {
  repaired &= all();
  int dark = 0;
  for (Vertex j = 1; j <= n_; ++j) {
    if ((ancestors_[j] & ~repaired) != 0) ++dark;
  }
  return dark;
}

void check_permutation(int n, std::span<const Vertex> order) {
  if (order.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("route must visit all " + std::to_string(n) +
                                " fault vertices, got " + std::to_string(order.size()));
  }
  std::vector<bool> seen(n + 1, false);
  for (Vertex v : order) {
    if (v < 1 || v > n) throw std::invalid_argument("route visits unknown vertex " + std::to_string(v));
    if (seen[v]) throw std::invalid_argument("route visits vertex " + std::to_string(v) + " twice");
    seen[v] = true;
  }
}

Cost leg_weighted_objective(const Instance& instance, const PrecedenceIndex& index,
                            std::span<const Vertex> order) {
  Cost total = 0;
  VertexSet repaired = 0;
  Vertex at = kDepot;
  for (Vertex v : order) {
    total += static_cast<Cost>(index.disrupted_count(repaired)) * instance.d(at, v);
    repaired |= bit_of(v);
    at = v;
  }
  return total;
}

Route evaluate_route(const Instance& instance, const PrecedenceIndex& index,
                     std::span<const Vertex> order) {
  const int n = instance.n;
  check_permutation(n, order);

  Route route;
  route.order.assign(order.begin(), order.end());
  route.arrival.assign(n + 1, 0);
  route.disruption.assign(n + 1, 0);

  std::vector<Cost> completion(n + 1, 0);
  Cost clock = 0;
  Vertex at = kDepot;
  for (Vertex v : order) {
    clock += instance.d(at, v);
    route.arrival[v] = clock;
    clock += instance.repair_duration[v];
    completion[v] = clock;
    at = v;
  }
  for (Vertex i = 1; i <= n; ++i) {
    Cost restored = 0;
    for (Vertex a = i; a != kDepot; a = index.parent(a)) restored = std::max(restored, completion[a]);
    route.disruption[i] = restored;
    route.objective += restored;
  }

  if (!instance.has_repair_durations()) {
    const Cost by_legs = leg_weighted_objective(instance, index, order);
    if (by_legs != route.objective) {
      throw std::logic_error("route objective mismatch: " + to_string(route.objective) +
                             " by restoration times vs " + to_string(by_legs) + " by legs");
    }
  }
  return route;
}

}  // namespace prtrp

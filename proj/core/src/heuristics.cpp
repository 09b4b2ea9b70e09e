#include "prtrp/heuristics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace prtrp {
namespace {

// Appends to `order` until all n vertices are present. `prefer(at, a, b)`
// returns true when a should be visited before b from `at`.
template <typename Prefer>
void extend_greedily(int n, std::vector<Vertex>& order, Prefer prefer) {
  std::vector<bool> visited(n + 1, false);
  for (Vertex v : order) {
    if (v < 1 || v > n || visited[v]) {
      throw std::invalid_argument("prefix is not a duplicate-free sequence over 1..n");
    }
    visited[v] = true;
  }
  Vertex at = order.empty() ? kDepot : order.back();
  while (order.size() < static_cast<std::size_t>(n)) {
    Vertex best = kDepot;
    for (Vertex j = 1; j <= n; ++j) {
      if (visited[j]) continue;
      if (best == kDepot || prefer(at, j, best)) best = j;
    }
    visited[best] = true;
    order.push_back(best);
    at = best;
  }
}

}  // namespace

Route greedy_complete(const Instance& instance, const PrecedenceIndex& index,
                      std::span<const Vertex> prefix) {
  std::vector<Vertex> order(prefix.begin(), prefix.end());
  extend_greedily(instance.n, order, [&](Vertex at, Vertex a, Vertex b) {
    return instance.d(at, a) < instance.d(at, b);
  });
  return evaluate_route(instance, index, order);
}

Route greedy_distance(const Instance& instance, const PrecedenceIndex& index) {
  return greedy_complete(instance, index, {});
}

Route greedy_priority_distance(const Instance& instance, const PrecedenceIndex& index) {
  std::vector<Vertex> order;
  extend_greedily(instance.n, order, [&](Vertex at, Vertex a, Vertex b) {
    // d(at,a)/|S_a| < d(at,b)/|S_b|
    return static_cast<Cost>(instance.d(at, a)) * index.successor_count(b) <
           static_cast<Cost>(instance.d(at, b)) * index.successor_count(a);
  });
  return evaluate_route(instance, index, order);
}

}  // namespace prtrp

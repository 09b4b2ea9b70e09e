#include "reference.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace prtrp::testing {

std::set<Vertex> energized(const Instance& instance, const std::set<Vertex>& repaired) {
  std::multimap<Vertex, Vertex> children;
  for (const auto& e : instance.power_edges) children.emplace(e.parent, e.child);
  std::set<Vertex> lit;
  if (!repaired.count(instance.source)) return lit;
  std::vector<Vertex> frontier{instance.source};
  while (!frontier.empty()) {
    const Vertex v = frontier.back();
    frontier.pop_back();
    lit.insert(v);
    auto [lo, hi] = children.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      if (repaired.count(it->second)) frontier.push_back(it->second);
    }
  }
  return lit;
}

int dark_count(const Instance& instance, const std::set<Vertex>& repaired) {
  return instance.n - static_cast<int>(energized(instance, repaired).size());
}

Cost simulate_objective(const Instance& instance, const std::vector<Vertex>& order) {
  std::set<Vertex> repaired;
  std::set<Vertex> lit;
  Cost clock = 0;
  Cost total = 0;
  Vertex at = kDepot;
  for (Vertex v : order) {
    clock += instance.travel[at][v];
    clock += instance.repair_duration[v];
    repaired.insert(v);
    const auto now_lit = energized(instance, repaired);
    for (Vertex u : now_lit) {
      if (!lit.count(u)) total += clock;
    }
    lit = now_lit;
    at = v;
  }
  return total;
}

void for_each_order(int n, const std::function<void(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  do {
    visit(order);
  } while (std::next_permutation(order.begin(), order.end()));
}

Cost brute_force_objective(const Instance& instance) {
  Cost best = std::numeric_limits<Cost>::max();
  for_each_order(instance.n, [&](const std::vector<Vertex>& order) {
    best = std::min(best, simulate_objective(instance, order));
  });
  return best;
}

BackwardTable::BackwardTable(const Instance& instance)
    : n_(instance.n), full_((1u << instance.n) - 1) {
  table_.assign(static_cast<std::size_t>(n_ + 1) << n_, 0);
  auto dark_of_repaired_mask = [&](std::uint32_t repaired_mask) {
    std::set<Vertex> repaired;
    for (Vertex v = 1; v <= n_; ++v) {
      if (repaired_mask & (1u << (v - 1))) repaired.insert(v);
    }
    return dark_count(instance, repaired);
  };
  std::vector<int> dark(std::size_t{1} << n_);
  for (std::uint32_t s = 0; s <= full_; ++s) dark[s] = dark_of_repaired_mask(s);
  // Increasing number of unvisited vertices.
  std::vector<std::uint32_t> sets(std::size_t{1} << n_);
  std::iota(sets.begin(), sets.end(), 0u);
  std::stable_sort(sets.begin(), sets.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  for (std::uint32_t unvisited : sets) {
    for (Vertex k = 0; k <= n_; ++k) {
      if (k > 0 && (unvisited & (1u << (k - 1)))) continue;
      if (k == 0 && unvisited != full_) continue;
      Cost best = unvisited == 0 ? 0 : std::numeric_limits<Cost>::max();
      for (Vertex j = 1; j <= n_; ++j) {
        if (!(unvisited & (1u << (j - 1)))) continue;
        const Cost cand = static_cast<Cost>(dark[full_ & ~unvisited]) * instance.travel[k][j] +
                          value(j, unvisited & ~(1u << (j - 1)));
        best = std::min(best, cand);
      }
      table_[(static_cast<std::size_t>(k) << n_) | unvisited] = best;
    }
  }
}

Cost BackwardTable::value(Vertex at, std::uint32_t unvisited) const {
  return table_[(static_cast<std::size_t>(at) << n_) | unvisited];
}

Cost repairman_latency_from_1(const TravelMatrix& travel) {
  const int n = static_cast<int>(travel.size()) - 1;
  std::vector<Vertex> rest;
  for (Vertex v = 2; v <= n; ++v) rest.push_back(v);
  Cost best = std::numeric_limits<Cost>::max();
  do {
    Cost clock = 0;
    Cost total = 0;
    Vertex at = 1;
    for (Vertex v : rest) {
      clock += travel[at][v];
      total += clock;
      at = v;
    }
    best = std::min(best, total);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace prtrp::testing

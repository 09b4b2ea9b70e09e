#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace prtrp::testing {

Instance star_instance() {
  Instance inst;
  inst.name = "star";
  inst.n = 3;
  inst.source = 1;
  inst.power_edges = {{1, 2}, {1, 3}};
  inst.travel = {{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}};
  inst.repair_duration = {0, 0, 0, 0};
  return inst;
}

Instance chain_instance() {
  Instance inst = star_instance();
  inst.name = "chain";
  inst.power_edges = {{1, 2}, {2, 3}};
  return inst;
}

Instance single_vertex_instance(Time d) {
  Instance inst;
  inst.name = "single";
  inst.n = 1;
  inst.source = 1;
  inst.travel = {{0, d}, {d + 1, 0}};
  inst.repair_duration = {0, 0};
  return inst;
}

Instance random_asymmetric_instance(int n, std::uint64_t seed, int max_travel, int max_repair) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Instance inst;
  inst.name = "asym_n" + std::to_string(n) + "_s" + std::to_string(seed);
  inst.n = n;
  inst.source = draw(1, n);
  inst.travel.assign(n + 1, std::vector<Time>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i != j) inst.travel[i][j] = draw(0, max_travel);
    }
  }
  std::vector<Vertex> order;
  for (Vertex v = 1; v <= n; ++v) {
    if (v != inst.source) order.push_back(v);
  }
  std::shuffle(order.begin(), order.end(), rng);
  order.insert(order.begin(), inst.source);
  for (std::size_t k = 1; k < order.size(); ++k) {
    inst.power_edges.push_back({order[draw(0, static_cast<int>(k) - 1)], order[k]});
  }
  inst.repair_duration.assign(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) inst.repair_duration[v] = max_repair > 0 ? draw(0, max_repair) : 0;
  return inst;
}

std::vector<Vertex> random_order(int n, std::uint64_t seed) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace prtrp::testing

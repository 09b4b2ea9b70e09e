#include "prtrp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace prtrp {

Route brute_force(const Instance& instance, const PrecedenceIndex& index) {
  if (instance.n > kBruteForceLimit) {
    throw EngineLimitError("brute force is limited to n <= " + std::to_string(kBruteForceLimit));
  }
  std::vector<Vertex> order(instance.n);
  std::iota(order.begin(), order.end(), 1);
  Route best = evaluate_route(instance, index, order);
  while (std::next_permutation(order.begin(), order.end())) {
    Route r = evaluate_route(instance, index, order);
    if (r.objective < best.objective) best = std::move(r);
  }
  return best;
}

Route held_karp_forward(const Instance& instance, const PrecedenceIndex& index) {
  const int n = instance.n;
  if (n > kHeldKarpLimit) {
    throw EngineLimitError("held-karp is limited to n <= " + std::to_string(kHeldKarpLimit));
  }
  if (instance.has_repair_durations()) {
    throw std::invalid_argument("held-karp expects repair durations absorbed into travel times");
  }
  // Own precedence data: vertex j is lit once every vertex on its source path
  // is in the repaired set.
  std::vector<Vertex> parent(n + 1, kDepot);
  for (const auto& e : instance.power_edges) parent[e.child] = e.parent;
  std::vector<std::uint32_t> path_mask(n + 1, 0);
  for (Vertex j = 1; j <= n; ++j) {
    for (Vertex a = j; a != kDepot; a = parent[a]) path_mask[j] |= 1u << (a - 1);
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> dark(std::size_t{1} << n, 0);
  for (std::uint32_t s = 0; s <= full; ++s) {
    for (Vertex j = 1; j <= n; ++j) {
      if ((path_mask[j] & s) != path_mask[j]) ++dark[s];
    }
  }

  constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::max();
  const std::size_t states = (std::size_t{1} << n) * static_cast<std::size_t>(n);
  std::vector<std::int64_t> value(states, kUnset);
  std::vector<std::int8_t> prev(states, -1);
  auto at = [n](std::uint32_t s, int last) { return static_cast<std::size_t>(s) * n + last; };

  for (int i = 0; i < n; ++i) {
    std::int64_t v = 0;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(n), instance.d(kDepot, i + 1), &v)) {
      throw std::overflow_error("held-karp value overflow");
    }
    value[at(1u << i, i)] = v;
  }
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (int last = 0; last < n; ++last) {
      const std::int64_t base = value[at(s, last)];
      if (base == kUnset) continue;
      const std::int64_t weight = dark[s];
      for (int next = 0; next < n; ++next) {
        if (s & (1u << next)) continue;
        std::int64_t step = 0;
        std::int64_t total = 0;
        if (__builtin_mul_overflow(weight, instance.d(last + 1, next + 1), &step) ||
            __builtin_add_overflow(base, step, &total)) {
          throw std::overflow_error("held-karp value overflow");
        }
        const std::size_t slot = at(s | (1u << next), next);
        if (total < value[slot]) {
          value[slot] = total;
          prev[slot] = static_cast<std::int8_t>(last);
        }
      }
    }
  }

  int last = 0;
  for (int i = 1; i < n; ++i) {
    if (value[at(full, i)] < value[at(full, last)]) last = i;
  }
  std::vector<Vertex> order;
  std::uint32_t s = full;
  for (int cur = last; cur >= 0;) {
    order.push_back(cur + 1);
    const int before = prev[at(s, cur)];
    s &= ~(1u << cur);
    cur = before;
  }
  std::reverse(order.begin(), order.end());
  Route route = evaluate_route(instance, index, order);
  if (route.objective != value[at(full, last)]) {
    throw std::logic_error("held-karp table disagrees with route evaluation");
  }
  return route;
}

}  // namespace prtrp

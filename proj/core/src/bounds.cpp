#include "prtrp/bounds.hpp"

#include <algorithm>
#include <string>

namespace prtrp {

BoundsTable::BoundsTable(const Instance& instance, const PrecedenceIndex& index)
    : n_(instance.n) {
  sorted_arcs_.reserve(static_cast<std::size_t>(n_ + 1) * n_);
  for (Vertex i = 0; i <= n_; ++i) {
    for (Vertex j = 0; j <= n_; ++j) {
      if (i != j) sorted_arcs_.push_back(instance.d(i, j));
    }
  }
  std::sort(sorted_arcs_.begin(), sorted_arcs_.end());

  successor_count_.assign(n_ + 1, 0);
  for (Vertex v = 1; v <= n_; ++v) successor_count_[v] = index.successor_count(v);

  // There are (n+1)n >= n+1 arcs, so s_1..s_{n+1} always exist.
  prefix_.assign(n_ + 2, 0);
  for (int p = 1; p <= n_ + 1; ++p) prefix_[p] = prefix_[p - 1] + arc(p);
  weighted_prefix_.assign(n_ + 1, 0);
  for (int p = 1; p <= n_; ++p) {
    weighted_prefix_[p] = weighted_prefix_[p - 1] + static_cast<Cost>(n_ - p + 1) * arc(p);
  }

  outgoing_tail_.assign(n_ + 1, 0);
  return_head_.assign(n_ + 1, 0);
  for (int k = 0; k <= n_; ++k) {
    for (int p = 2; p <= n_ - k; ++p) outgoing_tail_[k] += static_cast<Cost>(n_ - k + 1 - p) * arc(p);
    for (int p = 1; p <= n_ - k + 1; ++p) return_head_[k] += static_cast<Cost>(n_ + 1 - p) * arc(p);
  }
  beta_.assign(n_ + 1, n_);
}

Cost BoundsTable::position_lower_bound(Vertex i, int k) const {
  if (i < 1 || i > n_) throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
  const int reach = successor_count_[i];
  if (k < 1 || k > n_ || k <= n_ - reach) {
    throw BoundNotApplicable("bound not applicable for vertex " + std::to_string(i) +
                             " at position " + std::to_string(k));
  }
  // Positions 1..n-|S_i| and k+1..n can each restore one more vertex; in
  // between, all of S_i stays dark until i is repaired at position k.
  const int head = n_ - reach;
  return weighted_prefix_[head] + (weighted_prefix_[n_] - weighted_prefix_[k]) +
         static_cast<Cost>(reach) * (prefix_[k] - prefix_[head]);
}

std::vector<int> BoundsTable::compute_beta(Cost upper) const {
  std::vector<int> beta(n_ + 1, n_);
  beta[0] = 0;
  for (Vertex i = 1; i <= n_; ++i) {
    // L_i^k is non-decreasing in k, so the first k that exceeds `upper` cuts
    // off every later position as well.
    for (int k = first_applicable_position(i); k <= n_; ++k) {
      if (position_lower_bound(i, k) > upper) {
        beta[i] = k - 1;
        break;
      }
    }
    beta[i] = std::max(beta[i], 1);
  }
  return beta;
}

Cost BoundsTable::outgoing_lower_bound(Cost uF, int k, int dark_after) const {
  if (k < 0 || k > n_) throw std::out_of_range("path length out of range");
  if (k == n_) return uF;
  return uF + static_cast<Cost>(dark_after) * arc(1) + outgoing_tail_[k];
}

Cost BoundsTable::return_lower_bound(Cost vB, int k) const {
  if (k < 0 || k > n_) throw std::out_of_range("path length out of range");
  return return_head_[k] + vB;
}

void BoundsTable::cap_beta(Vertex v, int position) {
  beta_[v] = std::clamp(std::min(beta_[v], position), 1, n_);
}

}  // namespace prtrp

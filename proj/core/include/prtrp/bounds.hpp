#pragma once

#include <stdexcept>
#include <vector>

#include "prtrp/instance.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp {

class BoundNotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Pruning bounds built from the sorted arc lengths s_1 <= s_2 <= ... of the
// whole road network (depot arcs included, diagonal excluded).
//
// All the bounds pair a non-increasing count of dark vertices per leg with
// the shortest arcs in ascending order, which is the smallest value any
// assignment of legs can reach.
class BoundsTable {
 public:
  BoundsTable(const Instance& instance, const PrecedenceIndex& index);

  int n() const { return n_; }
  const std::vector<Time>& sorted_arcs() const { return sorted_arcs_; }
  // s_p with 1-based p.
  Time arc(int p) const { return sorted_arcs_[p - 1]; }
  int successor_count(Vertex v) const { return successor_count_[v]; }

  // Smallest position for which position_lower_bound applies to vertex i.
  int first_applicable_position(Vertex i) const { return n_ - successor_count_[i] + 1; }

  // L_i^k: lower bound on any route that visits i at position k. Requires
  // k > n - |S_i|; throws BoundNotApplicable otherwise.
  Cost position_lower_bound(Vertex i, int k) const;

  // beta_i: the last position at which i can appear in a route no worse than
  // `upper`. Indexed by vertex; entry 0 unused.
  std::vector<int> compute_beta(Cost upper) const;

  // Outgoing path with k fault vertices, value uF, and w_P still dark.
  Cost outgoing_lower_bound(Cost uF, int k, int dark_after) const;

  // Return path with k fault vertices and value vB.
  Cost return_lower_bound(Cost vB, int k) const;

  const std::vector<int>& beta() const { return beta_; }
  void update_beta(Cost upper) { beta_ = compute_beta(upper); }
  void cap_beta(Vertex v, int position);

 private:
  int n_;
  std::vector<Time> sorted_arcs_;
  std::vector<int> successor_count_;
  std::vector<Cost> prefix_;           // prefix_[p] = s_1 + ... + s_p
  std::vector<Cost> weighted_prefix_;  // sum_{q<=p} (n-q+1) s_q, p <= n
  std::vector<Cost> outgoing_tail_;    // indexed by k: sum_{p=2}^{n-k} (n-k+1-p) s_p
  std::vector<Cost> return_head_;      // indexed by k: sum_{p=1}^{n-k+1} (n+1-p) s_p
  std::vector<int> beta_;
};

}  // namespace prtrp

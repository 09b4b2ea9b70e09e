#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "prtrp/instance.hpp"

namespace prtrp {

// Bit (v - 1) stands for fault vertex v. The depot never appears in a set.
using VertexSet = std::uint64_t;

inline constexpr int kMaxVertices = 63;

constexpr VertexSet bit_of(Vertex v) { return VertexSet{1} << (v - 1); }
constexpr VertexSet all_vertices(int n) {
  return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}
constexpr int set_size(VertexSet s) { return std::popcount(s); }

class EngineLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Successor and ancestor sets of the power tree. successors(i) holds i and
// every vertex downstream of it; ancestors(j) holds j and every vertex on the
// path from the source to j.
class PrecedenceIndex {
 public:
  explicit PrecedenceIndex(const Instance& instance);

  int n() const { return n_; }
  Vertex source() const { return source_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  VertexSet successors(Vertex v) const { return successors_[v]; }
  VertexSet ancestors(Vertex v) const { return ancestors_[v]; }
  int successor_count(Vertex v) const { return set_size(successors_[v]); }
  VertexSet all() const { return all_vertices(n_); }

  // W: number of fault vertices still dark once exactly `repaired` is fixed.
  int disrupted_count(VertexSet repaired) const;

 private:
  int n_;
  Vertex source_;
  std::vector<Vertex> parent_;
  std::vector<VertexSet> successors_;
  std::vector<VertexSet> ancestors_;
};

inline PrecedenceIndex build_index(const Instance& instance) { return PrecedenceIndex(instance); }

struct Route {
  std::vector<Vertex> order;  // fault vertices; the depot is implicit at both ends
  Cost objective = 0;
  std::vector<Cost> arrival;     // t_i, indexed by vertex (entry 0 unused)
  std::vector<Cost> disruption;  // r_i, indexed by vertex (entry 0 unused)
};

// Throws std::invalid_argument if order is not a permutation of 1..n.
void check_permutation(int n, std::span<const Vertex> order);

// Arrival times follow the road network from the depot; a vertex is restored
// once it and every ancestor is repaired (arrival plus repair duration). For
// zero-duration instances the result is cross-checked against the leg-weighted
// form sum_p W(before p) * d and a mismatch throws std::logic_error.
Route evaluate_route(const Instance& instance, const PrecedenceIndex& index,
                     std::span<const Vertex> order);

// sum_p W(repaired before step p) * d(j_{p-1}, j_p).
Cost leg_weighted_objective(const Instance& instance, const PrecedenceIndex& index,
                            std::span<const Vertex> order);

}  // namespace prtrp

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prtrp/cost.hpp"

namespace prtrp {

// Vertex 0 is the depot; fault vertices are 1..n.
using Vertex = int;
inline constexpr Vertex kDepot = 0;

using TravelMatrix = std::vector<std::vector<Time>>;

struct PowerEdge {
  Vertex parent = 0;
  Vertex child = 0;
  friend bool operator==(const PowerEdge&, const PowerEdge&) = default;
};

// A restoration instance: a complete directed road network over the depot and
// the n fault vertices, plus the radial power tree over the fault vertices.
//
// Instances are plain values. Nothing is checked at construction; call
// validate() before handing one to the solvers.
struct Instance {
  std::string name;
  int n = 0;
  Vertex source = 1;
  std::vector<PowerEdge> power_edges;
  TravelMatrix travel;                // (n+1) x (n+1), row/col 0 = depot
  std::vector<Time> repair_duration;  // size n+1, entry 0 unused (always 0)
  // Labels the vertices carried in the instance this one was cut from.
  // Empty unless produced by extract_subtree.
  std::vector<Vertex> original_labels;

  Time d(Vertex from, Vertex to) const { return travel[from][to]; }
  bool has_repair_durations() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> validate(const Instance& instance);

// Throws InstanceError listing every violation.
void require_valid(const Instance& instance);

// Folds repair durations into incoming travel times: d'[j][i] = d[j][i] + p_i
// for every fault vertex i and j != i. Throws InstanceError on overflow.
Instance absorb_repair_durations(const Instance& instance);

// Keeps new_source and its power-tree descendants, relabelled 1..m in the
// order of their original labels.
Instance extract_subtree(const Instance& instance, Vertex new_source);

// Random Euclidean road network with a uniform random recursive power tree.
Instance generate_random(int n, std::uint64_t seed, int coord_range = 100);

// Power tree is a star rooted at vertex 1; travel is taken as given.
Instance generate_star_reduction(const TravelMatrix& travel, std::string name = "star");

// JSON I/O. Key order and layout are fixed so equal instances serialize to
// identical bytes.
std::string to_json_text(const Instance& instance);
Instance from_json_text(const std::string& text);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace prtrp

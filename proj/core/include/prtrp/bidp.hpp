#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prtrp/bounds.hpp"
#include "prtrp/instance.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp {

enum class SolveMode { exact, heuristic };

struct SolverConfig {
  SolveMode mode = SolveMode::exact;
  // A label built at level l survives when LB * 100 <= (theta + l * delta) * U,
  // with theta and delta in percent. Exact mode requires 100 and 0.
  int theta_pct = 100;
  int delta_pct = 0;
  // Caps the source's maximum position at its later position in the two
  // greedy routes.
  bool heuristic_source_beta = false;
  // Number of best outgoing labels completed greedily after every level.
  int ub_refresh_width = 32;
  // Forward extension filter: false uses l <= beta_i, true uses l+1 <= beta_i.
  bool strict_forward_beta = false;

  // Switches for soundness checks. All on in normal use.
  bool use_dominance = true;
  bool use_path_bounds = true;
  bool use_beta = true;

  std::size_t label_cap = 200'000'000;
  int threads = 1;
  std::optional<std::chrono::duration<double>> time_limit;
};

// Throws std::invalid_argument for inconsistent settings.
void validate_config(const SolverConfig& config);

class LabelCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LevelStats {
  int level = 0;
  std::size_t forward_created = 0;
  std::size_t forward_kept = 0;
  std::size_t forward_dominated = 0;
  std::size_t forward_pruned_bound = 0;
  std::size_t forward_pruned_beta = 0;
  std::size_t backward_created = 0;
  std::size_t backward_kept = 0;
  std::size_t backward_dominated = 0;
  std::size_t backward_pruned_bound = 0;
  std::size_t backward_pruned_beta = 0;
  Cost upper_bound = 0;  // U after this level's refresh
};

struct SolveStats {
  std::vector<LevelStats> levels;
  std::vector<Cost> upper_bound_trajectory;
  std::vector<int> beta;  // as used for the final level, indexed by vertex
  std::size_t labels_total = 0;
  std::size_t join_matches = 0;
  bool timed_out = false;
  bool label_cap_hit = false;
  double wall_seconds = 0.0;
};

struct SolveReport {
  Route route;
  Cost objective = 0;
  bool proven_optimal = false;
  SolveStats stats;
};

// u^F of the outgoing path depot -> order[0] -> ... -> order.back().
Cost forward_value(const Instance& instance, const PrecedenceIndex& index,
                   std::span<const Vertex> outgoing);

// v^B of the return path order[0] -> ... -> order.back() -> depot, with every
// vertex outside the path already repaired.
Cost backward_value(const Instance& instance, const PrecedenceIndex& index,
                    std::span<const Vertex> return_path);

// Later of the source's 1-based positions in the GiD and GiPD routes.
int heuristic_source_beta(const Instance& instance, const PrecedenceIndex& index);

// Bidirectional labelling search. Repair durations must already be absorbed.
SolveReport solve(const Instance& instance, const SolverConfig& config = {});

}  // namespace prtrp

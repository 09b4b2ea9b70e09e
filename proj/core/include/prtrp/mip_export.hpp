#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prtrp/instance.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp {

enum class VarKind { binary, continuous };
enum class RowSense { equal, greater_equal };
enum class RowFamily { degree, arrival, linkage };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::continuous;
  std::optional<double> fixed;  // t_0 = 0
};

struct MipTerm {
  int var = 0;
  Cost coef = 0;
};

struct MipRow {
  std::string name;
  RowFamily family = RowFamily::degree;
  std::vector<MipTerm> terms;
  RowSense sense = RowSense::equal;
  Cost rhs = 0;
};

// Arc-based formulation: x_i_j for every ordered pair of distinct vertices,
// arrival times t_i chained by big-M rows, and r_j >= t_i for every i on the
// source path of j. Objective: minimise sum r_j.
struct MipModel {
  std::string name;
  int n = 0;
  Cost big_m = 0;
  std::vector<MipVariable> variables;
  std::vector<MipRow> rows;
  std::vector<int> objective;  // variables with coefficient 1

  std::optional<int> find(const std::string& var_name) const;
  std::size_t count(RowFamily family) const;
  std::size_t binary_count() const;
};

// big_m defaults to the sum of all arc lengths.
MipModel build_model(const Instance& instance, const PrecedenceIndex& index,
                     std::optional<Cost> big_m = std::nullopt);

// CPLEX LP text format with a fixed variable and row order.
std::string write_lp_text(const MipModel& model);

// Variable name -> value. Missing variables read as 0.
using Assignment = std::map<std::string, double>;

struct MipVerdict {
  bool feasible = false;
  double objective = 0.0;
  bool single_tour = false;
  std::optional<std::vector<Vertex>> decoded_order;
  std::vector<std::string> violations;
};

inline constexpr double kMipTolerance = 1e-6;

MipVerdict check_assignment(const MipModel& model, const Instance& instance,
                            const PrecedenceIndex& index, const Assignment& values);

// x from the visiting order, t = arrival times, r = restoration times.
Assignment canonical_assignment(const Instance& instance, const PrecedenceIndex& index,
                                const std::vector<Vertex>& order);

}  // namespace prtrp

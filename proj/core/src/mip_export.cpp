#include "prtrp/mip_export.hpp"

#include <cmath>
#include <sstream>

namespace prtrp {
namespace {

std::string x_name(Vertex i, Vertex j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
std::string t_name(Vertex i) { return "t_" + std::to_string(i); }
std::string r_name(Vertex i) { return "r_" + std::to_string(i); }

void write_terms(std::ostream& os, const MipModel& model, const std::vector<MipTerm>& terms) {
  bool first = true;
  for (const auto& term : terms) {
    const bool negative = term.coef < 0;
    const Cost magnitude = negative ? -term.coef : term.coef;
    if (first) {
      os << (negative ? "- " : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    if (magnitude != 1) os << to_string(magnitude) << ' ';
    os << model.variables[term.var].name;
    first = false;
  }
}

}  // namespace

std::optional<int> MipModel::find(const std::string& var_name) const {
  for (std::size_t k = 0; k < variables.size(); ++k) {
    if (variables[k].name == var_name) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::size_t MipModel::count(RowFamily family) const {
  std::size_t c = 0;
  for (const auto& row : rows) c += row.family == family ? 1 : 0;
  return c;
}

std::size_t MipModel::binary_count() const {
  std::size_t c = 0;
  for (const auto& v : variables) c += v.kind == VarKind::binary ? 1 : 0;
  return c;
}

MipModel build_model(const Instance& instance, const PrecedenceIndex& index,
                     std::optional<Cost> big_m) {
  if (instance.has_repair_durations()) {
    throw std::invalid_argument("MIP export expects repair durations absorbed into travel times");
  }
  const int n = instance.n;
  MipModel model;
  model.name = instance.name;
  model.n = n;
  if (big_m) {
    model.big_m = *big_m;
  } else {
    for (Vertex k = 0; k <= n; ++k) {
      for (Vertex l = 0; l <= n; ++l) model.big_m += instance.d(k, l);
    }
  }

  // Variable layout: x in row-major pair order, then t_0..t_n, then r_1..r_n.
  std::vector<std::vector<int>> x(n + 1, std::vector<int>(n + 1, -1));
  for (Vertex i = 0; i <= n; ++i) {
    for (Vertex j = 0; j <= n; ++j) {
      if (i == j) continue;
      x[i][j] = static_cast<int>(model.variables.size());
      model.variables.push_back({x_name(i, j), VarKind::binary, std::nullopt});
    }
  }
  std::vector<int> t(n + 1);
  for (Vertex i = 0; i <= n; ++i) {
    t[i] = static_cast<int>(model.variables.size());
    model.variables.push_back(
        {t_name(i), VarKind::continuous, i == kDepot ? std::optional<double>(0.0) : std::nullopt});
  }
  std::vector<int> r(n + 1, -1);
  for (Vertex j = 1; j <= n; ++j) {
    r[j] = static_cast<int>(model.variables.size());
    model.variables.push_back({r_name(j), VarKind::continuous, std::nullopt});
    model.objective.push_back(r[j]);
  }

  for (Vertex i = 0; i <= n; ++i) {
    MipRow out{"out_" + std::to_string(i), RowFamily::degree, {}, RowSense::equal, 1};
    MipRow in{"in_" + std::to_string(i), RowFamily::degree, {}, RowSense::equal, 1};
    for (Vertex j = 0; j <= n; ++j) {
      if (j == i) continue;
      out.terms.push_back({x[i][j], 1});
      in.terms.push_back({x[j][i], 1});
    }
    model.rows.push_back(std::move(out));
    model.rows.push_back(std::move(in));
  }
  // t_j >= t_i + d_ij - M (1 - x_ij)  <=>  t_j - t_i - M x_ij >= d_ij - M
  for (Vertex j = 1; j <= n; ++j) {
    for (Vertex i = 0; i <= n; ++i) {
      if (i == j) continue;
      model.rows.push_back({"arr_" + std::to_string(i) + "_" + std::to_string(j),
                            RowFamily::arrival,
                            {{t[j], 1}, {t[i], -1}, {x[i][j], -model.big_m}},
                            RowSense::greater_equal,
                            instance.d(i, j) - model.big_m});
    }
  }
  for (Vertex j = 1; j <= n; ++j) {
    for (Vertex i = 1; i <= n; ++i) {
      if ((index.ancestors(j) & bit_of(i)) == 0) continue;
      model.rows.push_back({"link_" + std::to_string(j) + "_" + std::to_string(i),
                            RowFamily::linkage,
                            {{r[j], 1}, {t[i], -1}},
                            RowSense::greater_equal,
                            0});
    }
  }
  return model;
}

std::string write_lp_text(const MipModel& model) {
  std::ostringstream os;
  os << "\\ Problem: " << model.name << '\n';
  os << "\\ big-M = " << to_string(model.big_m) << '\n';
  os << "Minimize\n obj: ";
  std::vector<MipTerm> objective;
  for (int v : model.objective) objective.push_back({v, 1});
  write_terms(os, model, objective);
  os << "\nSubject To\n";
  for (const auto& row : model.rows) {
    os << ' ' << row.name << ": ";
    write_terms(os, model, row.terms);
    os << (row.sense == RowSense::equal ? " = " : " >= ") << to_string(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.fixed) os << ' ' << v.name << " = " << *v.fixed << '\n';
  }
  os << "Binaries\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::binary) os << ' ' << v.name << '\n';
  }
  os << "End\n";
  return os.str();
}

Assignment canonical_assignment(const Instance& instance, const PrecedenceIndex& index,
                                const std::vector<Vertex>& order) {
  const Route route = evaluate_route(instance, index, order);
  Assignment values;
  Vertex at = kDepot;
  for (Vertex v : order) {
    values[x_name(at, v)] = 1.0;
    at = v;
  }
  values[x_name(at, kDepot)] = 1.0;
  values[t_name(kDepot)] = 0.0;
  for (Vertex v = 1; v <= instance.n; ++v) {
    values[t_name(v)] = static_cast<double>(route.arrival[v]);
    values[r_name(v)] = static_cast<double>(route.disruption[v]);
  }
  return values;
}

MipVerdict check_assignment(const MipModel& model, const Instance& instance,
                            const PrecedenceIndex& index, const Assignment& values) {
  MipVerdict verdict;
  const int n = model.n;
  if (n != instance.n) throw std::invalid_argument("model and instance sizes differ");

  std::vector<double> val(model.variables.size(), 0.0);
  for (const auto& [name, v] : values) {
    auto idx = model.find(name);
    if (!idx) {
      verdict.violations.push_back("unknown variable " + name);
      continue;
    }
    val[*idx] = v;
  }

  for (std::size_t k = 0; k < model.variables.size(); ++k) {
    const auto& var = model.variables[k];
    if (var.kind == VarKind::binary) {
      if (std::abs(val[k]) > kMipTolerance && std::abs(val[k] - 1.0) > kMipTolerance) {
        verdict.violations.push_back(var.name + " is not binary");
      }
    } else if (val[k] < -kMipTolerance) {
      verdict.violations.push_back(var.name + " is negative");
    }
    if (var.fixed && std::abs(val[k] - *var.fixed) > kMipTolerance) {
      verdict.violations.push_back(var.name + " must equal " + std::to_string(*var.fixed));
    }
  }

  bool degree_ok = true;
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (const auto& term : row.terms) lhs += static_cast<double>(term.coef) * val[term.var];
    const double rhs = static_cast<double>(row.rhs);
    // Big-M rows carry large coefficients; scale the tolerance with them.
    const double tol = kMipTolerance * std::max(1.0, std::abs(static_cast<double>(model.big_m)));
    const double row_tol = row.family == RowFamily::arrival ? tol : kMipTolerance;
    const bool ok = row.sense == RowSense::equal ? std::abs(lhs - rhs) <= row_tol
                                                 : lhs >= rhs - row_tol;
    if (!ok) {
      verdict.violations.push_back("row " + row.name + " violated");
      if (row.family == RowFamily::degree) degree_ok = false;
    }
  }

  for (int v : model.objective) verdict.objective += val[v];

  // Decode the tour when x is integral and degree feasible.
  if (degree_ok) {
    std::vector<Vertex> next(n + 1, -1);
    for (Vertex i = 0; i <= n; ++i) {
      for (Vertex j = 0; j <= n; ++j) {
        if (i == j) continue;
        auto idx = model.find(x_name(i, j));
        if (idx && val[*idx] > 0.5) next[i] = j;
      }
    }
    std::vector<Vertex> order;
    Vertex at = next[kDepot];
    while (at > kDepot && order.size() <= static_cast<std::size_t>(n)) {
      order.push_back(at);
      at = next[at];
    }
    if (at == kDepot && order.size() == static_cast<std::size_t>(n)) {
      verdict.single_tour = true;
      verdict.decoded_order = order;
      const Route route = evaluate_route(instance, index, order);
      if (verdict.objective < static_cast<double>(route.objective) - kMipTolerance) {
        verdict.violations.push_back("objective below the decoded route's disruption time");
      }
    } else {
      verdict.violations.push_back("degree-feasible but not a single tour");
    }
  }
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

}  // namespace prtrp

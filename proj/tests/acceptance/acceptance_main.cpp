// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lp_lint.hpp"
#include "prtrp/bidp.hpp"
#include "prtrp/bounds.hpp"
#include "prtrp/mip_export.hpp"
#include "prtrp/oracle.hpp"
#include "reference.hpp"

using namespace prtrp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Sweep instances: n cycles through 4..9; one in three has asymmetric travel,
// one in five carries repair durations.
struct Case {
  Instance original;
  Instance absorbed;
};

std::vector<Case> small_cases() {
  std::vector<Case> cases;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int n = 4 + static_cast<int>(s % 6);
    Instance inst;
    if (s % 5 == 0) {
      inst = testing::random_asymmetric_instance(n, 5000 + s, 40, 8);
    } else if (s % 3 == 0) {
      inst = testing::random_asymmetric_instance(n, 5000 + s);
    } else {
      inst = generate_random(n, 5000 + s);
    }
    Instance absorbed = absorb_repair_durations(inst);
    cases.push_back({std::move(inst), std::move(absorbed)});
  }
  return cases;
}

std::vector<Instance> medium_cases() {
  std::vector<Instance> out;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int n = 10 + static_cast<int>(s % 6);
    out.push_back(s % 4 == 0 ? testing::random_asymmetric_instance(n, 7000 + s)
                             : generate_random(n, 7000 + s));
  }
  return out;
}

std::string mismatch(const std::string& name, Cost a, Cost b) {
  return name + ": " + to_string(a) + " vs " + to_string(b);
}

Outcome oracle_equivalence(const std::vector<Case>& cases, std::vector<Route>& optima) {
  const auto t0 = Clock::now();
  Outcome o;
  int agree = 0;
  for (const Case& c : cases) {
    const PrecedenceIndex index(c.original);
    const Route best = brute_force(c.original, index);
    const SolveReport rep = solve(c.absorbed);
    optima.push_back(rep.route);
    if (rep.objective == best.objective && rep.proven_optimal) {
      ++agree;
    } else if (o.pass) {
      o.pass = false;
      o.detail = mismatch(c.original.name, rep.objective, best.objective) + "; ";
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300.0) o.pass = false;
  std::ostringstream os;
  os << agree << "/" << cases.size() << " instances agree with brute force, " << secs << " s";
  o.detail += os.str();
  return o;
}

Outcome oracle_triangulation(const std::vector<Case>& cases, const std::vector<Instance>& medium) {
  const auto t0 = Clock::now();
  Outcome o;
  int small_agree = 0;
  int medium_agree = 0;
  for (const Case& c : cases) {
    const Cost hk = held_karp_forward(c.absorbed, PrecedenceIndex(c.absorbed)).objective;
    const Cost bf = brute_force(c.original, PrecedenceIndex(c.original)).objective;
    if (hk == bf) {
      ++small_agree;
    } else if (o.pass) {
      o.pass = false;
      o.detail = mismatch(c.original.name, hk, bf) + "; ";
    }
  }
  for (const Instance& inst : medium) {
    const Cost hk = held_karp_forward(inst, PrecedenceIndex(inst)).objective;
    const Cost dp = solve(inst).objective;
    if (hk == dp) {
      ++medium_agree;
    } else if (o.pass) {
      o.pass = false;
      o.detail = mismatch(inst.name, hk, dp) + "; ";
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 600.0) o.pass = false;
  std::ostringstream os;
  os << "held-karp = brute force on " << small_agree << "/" << cases.size()
     << ", = bidp on " << medium_agree << "/" << medium.size() << " (n 10-15), " << secs << " s";
  o.detail += os.str();
  return o;
}

Outcome heuristic_consistency(const std::vector<Case>& cases, const std::vector<Instance>& medium) {
  Outcome o;
  SolverConfig cfg;
  cfg.mode = SolveMode::heuristic;
  int agree = 0;
  int total = 0;
  auto check = [&](const Instance& inst) {
    ++total;
    const Cost exact = solve(inst).objective;
    const Cost heur = solve(inst, cfg).objective;
    if (exact == heur) {
      ++agree;
    } else if (o.pass) {
      o.pass = false;
      o.detail = mismatch(inst.name, heur, exact) + "; ";
    }
  };
  for (const Case& c : cases) check(c.absorbed);
  for (const Instance& inst : medium) check(inst);
  o.detail += std::to_string(agree) + "/" + std::to_string(total) +
              " heuristic-mode (theta 1, delta 0) objectives equal exact mode";
  return o;
}

std::vector<Instance> bound_cases() {
  std::vector<Instance> out;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 5 + static_cast<int>(s % 4);
    out.push_back(s % 2 ? generate_random(n, 9000 + s) : testing::random_asymmetric_instance(n, 9000 + s));
  }
  return out;
}

// Enumerates every order once with the reference simulator and records the
// best completion of every prefix and suffix of length <= 3, and the best
// objective with vertex i at position k.
Outcome pruning_soundness(const std::vector<Instance>& instances) {
  Outcome o;
  long checks = 0;
  long violations = 0;
  for (const Instance& inst : instances) {
    const int n = inst.n;
    const PrecedenceIndex index(inst);
    const BoundsTable table(inst, index);
    std::map<std::vector<Vertex>, Cost> best_prefix;
    std::map<std::vector<Vertex>, Cost> best_suffix;
    std::vector<std::vector<Cost>> best_at(n + 1, std::vector<Cost>(n + 1, kInfiniteCost));
    auto keep_min = [](std::map<std::vector<Vertex>, Cost>& m, std::vector<Vertex> key, Cost z) {
      auto [it, fresh] = m.try_emplace(std::move(key), z);
      if (!fresh) it->second = std::min(it->second, z);
    };
    testing::for_each_order(n, [&](const std::vector<Vertex>& order) {
      const Cost z = testing::simulate_objective(inst, order);
      for (int k = 1; k <= 3 && k <= n; ++k) {
        keep_min(best_prefix, {order.begin(), order.begin() + k}, z);
        keep_min(best_suffix, {order.end() - k, order.end()}, z);
      }
      for (int k = 1; k <= n; ++k) best_at[order[k - 1]][k] = std::min(best_at[order[k - 1]][k], z);
    });
    for (const auto& [prefix, best] : best_prefix) {
      std::set<Vertex> seen(prefix.begin(), prefix.end());
      const Cost lb = table.outgoing_lower_bound(forward_value(inst, index, prefix),
                                                 static_cast<int>(prefix.size()),
                                                 testing::dark_count(inst, seen));
      ++checks;
      if (lb > best) ++violations;
    }
    for (const auto& [suffix, best] : best_suffix) {
      const Cost lb = table.return_lower_bound(backward_value(inst, index, suffix),
                                               static_cast<int>(suffix.size()));
      ++checks;
      if (lb > best) ++violations;
    }
    for (Vertex i = 1; i <= n; ++i) {
      for (int k = table.first_applicable_position(i); k <= n; ++k) {
        ++checks;
        if (table.position_lower_bound(i, k) > best_at[i][k]) ++violations;
      }
    }
  }
  o.pass = violations == 0;
  o.detail = std::to_string(violations) + " violations in " + std::to_string(checks) +
             " outgoing, return and position bound checks over " + std::to_string(instances.size()) +
             " instances";
  return o;
}

Outcome monotonicity(const std::vector<Instance>& instances) {
  long checks = 0;
  long violations = 0;
  for (const Instance& inst : instances) {
    const PrecedenceIndex index(inst);
    const BoundsTable table(inst, index);
    for (Vertex i = 1; i <= inst.n; ++i) {
      for (int k = table.first_applicable_position(i); k < inst.n; ++k) {
        ++checks;
        if (table.position_lower_bound(i, k + 1) < table.position_lower_bound(i, k)) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " decreases in " + std::to_string(checks) +
                               " consecutive position bounds"};
}

Outcome dominance_soundness(const std::vector<Case>& cases) {
  Outcome o;
  SolverConfig off;
  off.use_dominance = false;
  int checked = 0;
  for (const Case& c : cases) {
    if (c.absorbed.n > 8) continue;
    ++checked;
    const Cost with = solve(c.absorbed).objective;
    const Cost without = solve(c.absorbed, off).objective;
    if (with != without && o.pass) {
      o.pass = false;
      o.detail = mismatch(c.absorbed.name, with, without) + "; ";
    }
  }
  o.detail += "objective unchanged without dominance on " + std::to_string(checked) + " instances (n <= 8)";
  return o;
}

struct RouteSample {
  Instance inst;
  std::vector<Vertex> order;
};

std::vector<RouteSample> route_samples() {
  std::vector<RouteSample> out;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 3 + static_cast<int>(s % 13);
    const Instance inst = s % 2 ? generate_random(n, 11000 + s) : testing::random_asymmetric_instance(n, 11000 + s);
    for (std::uint64_t r = 0; r < 50; ++r) out.push_back({inst, testing::random_order(n, s * 1000 + r)});
  }
  return out;
}

// c_p: vertices dark right before the crew reaches the p-th vertex.
std::vector<Cost> dark_before_each(const Instance& inst, const std::vector<Vertex>& order) {
  std::vector<Cost> c;
  std::set<Vertex> repaired;
  for (Vertex v : order) {
    c.push_back(testing::dark_count(inst, repaired));
    repaired.insert(v);
  }
  return c;
}

std::vector<Time> leg_lengths(const Instance& inst, const std::vector<Vertex>& order) {
  std::vector<Time> d;
  Vertex at = kDepot;
  for (Vertex v : order) {
    d.push_back(inst.d(at, v));
    at = v;
  }
  return d;
}

Outcome dual_formula(const std::vector<RouteSample>& samples) {
  int violations = 0;
  for (const auto& [inst, order] : samples) {
    const PrecedenceIndex index(inst);
    const Route route = evaluate_route(inst, index, order);
    Cost sum_r = 0;
    for (Vertex v = 1; v <= inst.n; ++v) sum_r += route.disruption[v];
    const auto c = dark_before_each(inst, order);
    const auto d = leg_lengths(inst, order);
    Cost weighted = 0;
    for (std::size_t p = 0; p < c.size(); ++p) weighted += c[p] * d[p];
    if (sum_r != weighted || sum_r != testing::simulate_objective(inst, order) ||
        sum_r != leg_weighted_objective(inst, index, order)) {
      ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " mismatches between sum of r_i and leg-weighted sum on " +
                               std::to_string(samples.size()) + " routes"};
}

Outcome rearrangement(const std::vector<RouteSample>& samples) {
  int violations = 0;
  for (const auto& [inst, order] : samples) {
    const auto c = dark_before_each(inst, order);
    auto d = leg_lengths(inst, order);
    Cost total = 0;
    for (std::size_t p = 0; p < c.size(); ++p) total += c[p] * d[p];
    std::sort(d.begin(), d.end());
    Cost bound = 0;
    for (std::size_t p = 0; p < c.size(); ++p) bound += c[p] * d[p];
    if (!std::is_sorted(c.rbegin(), c.rend()) || total < bound) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " routes below the sorted-leg bound out of " +
                               std::to_string(samples.size())};
}

Outcome heuristic_speedup() {
  SolverConfig heur;
  heur.mode = SolveMode::heuristic;
  heur.theta_pct = 80;
  heur.delta_pct = 1;
  double exact_time = 0.0;
  double heur_time = 0.0;
  double gap_sum = 0.0;
  double gap_max = 0.0;
  const int count = 20;
  for (int s = 0; s < count; ++s) {
    const Instance inst = generate_random(13 + s % 4, 13000 + s);
    auto best_of_3 = [&](const SolverConfig& cfg, Cost& z) {
      double best = 1e300;
      for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        z = solve(inst, cfg).objective;
        best = std::min(best, seconds_since(t0));
      }
      return best;
    };
    Cost exact_z = 0;
    Cost heur_z = 0;
    exact_time += best_of_3(SolverConfig{}, exact_z);
    heur_time += best_of_3(heur, heur_z);
    const double gap = 100.0 * static_cast<double>(heur_z - exact_z) / static_cast<double>(exact_z);
    gap_sum += gap;
    gap_max = std::max(gap_max, gap);
  }
  const double mean_exact = exact_time / count;
  const double mean_heur = heur_time / count;
  const double mean_gap = gap_sum / count;
  std::ostringstream os;
  os.precision(4);
  os << "mean time exact " << mean_exact << " s, heuristic " << mean_heur << " s (reduction "
     << 100.0 * (1.0 - mean_heur / mean_exact) << "%, reference figure 68%), mean gap " << mean_gap
     << "%, max gap " << gap_max << "%";
  return {mean_heur <= mean_exact && mean_gap <= 1.0, os.str()};
}

Outcome mip_consistency(const std::vector<Case>& cases, const std::vector<Route>& optima) {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "prtrp_acceptance_lp";
  fs::create_directories(dir);
  int encoded = 0;
  int linted = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const Instance& inst = cases[k].absorbed;
    const PrecedenceIndex index(inst);
    const MipModel model = build_model(inst, index);
    const MipVerdict verdict =
        check_assignment(model, inst, index, canonical_assignment(inst, index, optima[k].order));
    if (verdict.feasible && verdict.objective == static_cast<double>(optima[k].objective)) {
      ++encoded;
    } else if (o.pass) {
      o.pass = false;
      o.detail = inst.name + " canonical assignment rejected; ";
    }
    const fs::path file = dir / (inst.name + ".lp");
    std::ofstream(file) << write_lp_text(model);
    std::ifstream in(file);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto lint = testing::lint_lp(text);
    if (lint.ok() && lint.binaries.size() == model.binary_count() &&
        lint.rows == static_cast<int>(model.rows.size())) {
      ++linted;
    } else if (o.pass) {
      o.pass = false;
      o.detail = file.string() + " fails the LP linter; ";
    }
  }
  fs::remove_all(dir);
  o.detail += std::to_string(encoded) + "/" + std::to_string(cases.size()) + " optimal routes encode feasibly, " +
              std::to_string(linted) + "/" + std::to_string(cases.size()) + " LP files lint clean";
  return o;
}

Outcome determinism(const std::vector<Case>& cases) {
  Outcome o;
  SolverConfig many;
  many.threads = 8;
  int same = 0;
  for (const Case& c : cases) {
    const SolveReport a = solve(c.absorbed);
    const SolveReport b = solve(c.absorbed, many);
    if (a.route.order == b.route.order && a.objective == b.objective) {
      ++same;
    } else if (o.pass) {
      o.pass = false;
      o.detail = c.absorbed.name + " differs between 1 and 8 threads; ";
    }
  }
  o.detail += std::to_string(same) + "/" + std::to_string(cases.size()) + " identical routes with 1 and 8 threads";
  return o;
}

}  // namespace

int main() {
  const auto cases = small_cases();
  const auto medium = medium_cases();
  std::vector<Route> optima;
  report(1, "oracle equivalence", oracle_equivalence(cases, optima));
  report(2, "oracle triangulation", oracle_triangulation(cases, medium));
  report(3, "heuristic mode at theta 1, delta 0", heuristic_consistency(cases, medium));
  const auto bounded = bound_cases();
  report(4, "pruning soundness", pruning_soundness(bounded));
  report(5, "position bound monotonicity", monotonicity(bounded));
  report(6, "dominance soundness", dominance_soundness(cases));
  const auto samples = route_samples();
  report(7, "dual objective formula", dual_formula(samples));
  report(8, "rearrangement bound", rearrangement(samples));
  report(9, "heuristic speedup direction", heuristic_speedup());
  report(10, "MIP encoding consistency", mip_consistency(cases, optima));
  report(11, "thread-count determinism", determinism(cases));
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

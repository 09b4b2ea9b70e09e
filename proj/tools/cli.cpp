#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prtrp/bidp.hpp"
#include "prtrp/bounds.hpp"
#include "prtrp/heuristics.hpp"
#include "prtrp/instance.hpp"
#include "prtrp/mip_export.hpp"
#include "prtrp/oracle.hpp"
#include "prtrp/power_eval.hpp"

namespace prtrp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CliExit {
  int code;
  std::string message;
};

ordered_json cost_json(Cost value) {
  if (fits_int64(value)) return static_cast<std::int64_t>(value);
  return to_string(value);
}

ordered_json vertex_values_json(const std::vector<Cost>& by_vertex) {
  ordered_json arr = ordered_json::array();
  for (std::size_t v = 1; v < by_vertex.size(); ++v) arr.push_back(cost_json(by_vertex[v]));
  return arr;
}

int parse_percent(const std::string& text, const char* what) {
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw CliExit{kExitFailure, std::string("bad ") + what + " value '" + text + "'"};
  }
  const double scaled = value * 100.0;
  if (std::abs(scaled - std::round(scaled)) > 1e-6) {
    throw CliExit{kExitFailure, std::string(what) + " must be a whole number of percent"};
  }
  return static_cast<int>(std::llround(scaled));
}

std::string percent_text(int pct) {
  std::ostringstream os;
  os << pct / 100 << '.' << std::setw(2) << std::setfill('0') << pct % 100;
  return os.str();
}

std::vector<Vertex> parse_order(const std::string& text) {
  std::vector<Vertex> order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CliExit{kExitFailure, "bad vertex '" + item + "' in order"};
    }
  }
  return order;
}

int default_threads() {
  if (const char* env = std::getenv("PRTRP_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      // fall through to 1
    }
  }
  return 1;
}

// Reads and validates an instance. Any failure maps to exit code 2.
Instance load_instance(const std::string& path) {
  Instance inst;
  try {
    inst = read_instance(path);
  } catch (const InstanceError& e) {
    throw CliExit{kExitInvalidInstance, e.what()};
  }
  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string message = "invalid instance " + path + ":";
    for (const auto& v : violations) message += "\n  " + v;
    throw CliExit{kExitInvalidInstance, message};
  }
  if (inst.n > kMaxVertices) {
    throw CliExit{kExitEngineLimit, "instance has " + std::to_string(inst.n) +
                                        " fault vertices; engine limit is " +
                                        std::to_string(kMaxVertices)};
  }
  return inst;
}

Instance absorbed(const Instance& inst) {
  try {
    return absorb_repair_durations(inst);
  } catch (const InstanceError& e) {
    throw CliExit{kExitInvalidInstance, e.what()};
  }
}

// ---------------------------------------------------------------------------
// Methods

enum class MethodKind { bidp, gid, gipd, brute, hk };

struct Method {
  std::string label;
  MethodKind kind = MethodKind::bidp;
  SolverConfig config;
};

struct BidpOptions {
  std::string theta = "1.00";
  std::string delta = "0";
  bool heuristic = false;
  bool heuristic_source_beta = false;
  bool strict_forward_beta = false;
  int ub_refresh = 32;
  std::size_t labels_cap = SolverConfig{}.label_cap;
  double time_limit = 0.0;
};

Method make_method(const std::string& name, const BidpOptions& opts) {
  Method m;
  m.label = name;
  if (name == "gid") {
    m.kind = MethodKind::gid;
  } else if (name == "gipd") {
    m.kind = MethodKind::gipd;
  } else if (name == "brute") {
    m.kind = MethodKind::brute;
  } else if (name == "hk") {
    m.kind = MethodKind::hk;
  } else if (name == "bidp") {
    m.kind = MethodKind::bidp;
    auto& c = m.config;
    c.theta_pct = parse_percent(opts.theta, "theta");
    c.delta_pct = parse_percent(opts.delta, "delta");
    c.heuristic_source_beta = opts.heuristic_source_beta;
    c.strict_forward_beta = opts.strict_forward_beta;
    c.ub_refresh_width = opts.ub_refresh;
    c.label_cap = opts.labels_cap;
    if (opts.time_limit > 0) c.time_limit = std::chrono::duration<double>(opts.time_limit);
    const bool relaxed = c.theta_pct != 100 || c.delta_pct != 0 || c.heuristic_source_beta;
    c.mode = opts.heuristic || relaxed ? SolveMode::heuristic : SolveMode::exact;
    try {
      validate_config(c);
    } catch (const std::invalid_argument& e) {
      throw CliExit{kExitFailure, e.what()};
    }
    if (c.mode == SolveMode::heuristic) {
      m.label = "bidp(theta=" + percent_text(c.theta_pct) + ",delta=" + percent_text(c.delta_pct) +
                (c.heuristic_source_beta ? ",hsb" : "") + ")";
    }
  } else {
    throw CliExit{kExitFailure, "unknown method '" + name + "'"};
  }
  return m;
}

// "bidp:theta=0.80:delta=0.01:hsb" style specs used by bench.
Method parse_method_spec(const std::string& spec, const BidpOptions& base) {
  std::stringstream ss(spec);
  std::string name;
  std::getline(ss, name, ':');
  BidpOptions opts = base;
  std::string part;
  while (std::getline(ss, part, ':')) {
    if (part == "hsb") {
      opts.heuristic_source_beta = true;
    } else if (part == "heuristic") {
      opts.heuristic = true;
    } else if (part.rfind("theta=", 0) == 0) {
      opts.theta = part.substr(6);
    } else if (part.rfind("delta=", 0) == 0) {
      opts.delta = part.substr(6);
    } else {
      throw CliExit{kExitFailure, "unknown method option '" + part + "' in " + spec};
    }
  }
  return make_method(name, opts);
}

struct RunResult {
  Route route;
  bool proven_optimal = false;
  double seconds = 0.0;
  std::optional<SolveStats> stats;
};

RunResult run_method(const Method& method, const Instance& inst, int threads) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  try {
    const PrecedenceIndex index(inst);
    switch (method.kind) {
      case MethodKind::gid:
        result.route = greedy_distance(inst, index);
        break;
      case MethodKind::gipd:
        result.route = greedy_priority_distance(inst, index);
        break;
      case MethodKind::brute:
        result.route = brute_force(inst, index);
        result.proven_optimal = true;
        break;
      case MethodKind::hk:
        result.route = held_karp_forward(inst, index);
        result.proven_optimal = true;
        break;
      case MethodKind::bidp: {
        SolverConfig config = method.config;
        config.threads = threads;
        SolveReport report = solve(inst, config);
        result.route = std::move(report.route);
        result.proven_optimal = report.proven_optimal;
        result.stats = std::move(report.stats);
        break;
      }
    }
    // Every reported objective is recomputed independently of the method.
    const Route check = evaluate_route(inst, index, result.route.order);
    if (check.objective != result.route.objective) {
      throw CliExit{kExitInternal, "internal error: " + method.label + " reported objective " +
                                       to_string(result.route.objective) + " but route evaluates to " +
                                       to_string(check.objective)};
    }
  } catch (const EngineLimitError& e) {
    throw CliExit{kExitEngineLimit, e.what()};
  } catch (const LabelCapExceeded& e) {
    throw CliExit{kExitEngineLimit, e.what()};
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ordered_json stats_json(const SolveStats& stats, bool timing) {
  ordered_json levels = ordered_json::array();
  for (const auto& l : stats.levels) {
    levels.push_back({{"level", l.level},
                      {"forward_created", l.forward_created},
                      {"forward_kept", l.forward_kept},
                      {"forward_dominated", l.forward_dominated},
                      {"forward_pruned_bound", l.forward_pruned_bound},
                      {"forward_pruned_beta", l.forward_pruned_beta},
                      {"backward_created", l.backward_created},
                      {"backward_kept", l.backward_kept},
                      {"backward_dominated", l.backward_dominated},
                      {"backward_pruned_bound", l.backward_pruned_bound},
                      {"backward_pruned_beta", l.backward_pruned_beta},
                      {"upper_bound", cost_json(l.upper_bound)}});
  }
  ordered_json trajectory = ordered_json::array();
  for (Cost u : stats.upper_bound_trajectory) trajectory.push_back(cost_json(u));
  ordered_json beta = ordered_json::array();
  for (std::size_t v = 1; v < stats.beta.size(); ++v) beta.push_back(stats.beta[v]);
  ordered_json j;
  j["labels_total"] = stats.labels_total;
  j["join_matches"] = stats.join_matches;
  j["timed_out"] = stats.timed_out;
  j["label_cap_hit"] = stats.label_cap_hit;
  j["beta"] = beta;
  j["upper_bound_trajectory"] = trajectory;
  j["levels"] = levels;
  if (timing) j["wall_seconds"] = stats.wall_seconds;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_solve(const std::string& path, const std::string& method_name, const BidpOptions& opts,
              int threads, bool no_timing, std::ostream& out) {
  const Instance original = load_instance(path);
  const Instance inst = absorbed(original);
  const Method method = make_method(method_name, opts);
  const RunResult result = run_method(method, inst, threads);

  ordered_json record;
  record["instance"] = inst.name;
  record["n"] = inst.n;
  record["method"] = method.label;
  record["objective"] = cost_json(result.route.objective);
  record["order"] = result.route.order;
  record["r"] = vertex_values_json(result.route.disruption);
  record["proven_optimal"] = result.proven_optimal;
  record["wall_time_s"] = no_timing ? 0.0 : result.seconds;
  if (method.kind == MethodKind::bidp) {
    const auto& c = method.config;
    record["config"] = {{"mode", c.mode == SolveMode::exact ? "exact" : "heuristic"},
                        {"theta", percent_text(c.theta_pct)},
                        {"delta", percent_text(c.delta_pct)},
                        {"heuristic_source_beta", c.heuristic_source_beta},
                        {"strict_forward_beta", c.strict_forward_beta},
                        {"ub_refresh", c.ub_refresh_width},
                        {"labels_cap", c.label_cap}};
    record["stats"] = stats_json(*result.stats, !no_timing);
  } else {
    record["config"] = ordered_json::object();
    record["stats"] = ordered_json::object();
  }
  out << record.dump(2) << '\n';
  return kExitOk;
}

std::string format_gap(double pct) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << pct;
  return os.str();
}

struct BenchOptions {
  std::string dir;
  int gen_n = 0;
  int gen_count = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_family = "random";
  std::string methods = "gid,gipd,bidp";
  bool sweep = false;
  std::string summary_path;
  bool no_timing = false;
};

Instance generate_family(const std::string& family, int n, std::uint64_t seed, int coord_range) {
  if (family == "random") return generate_random(n, seed, coord_range);
  if (family == "star") {
    Instance base = generate_random(n, seed, coord_range);
    Instance star = generate_star_reduction(base.travel);
    star.name = "star_n" + std::to_string(n) + "_s" + std::to_string(seed);
    return star;
  }
  throw CliExit{kExitFailure, "unknown family '" + family + "'"};
}

int cmd_bench(const BenchOptions& opts, const BidpOptions& bidp_opts, int threads,
              std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::optional<Instance>>> instances;
  std::vector<std::string> load_errors;
  if (!opts.dir.empty()) {
    std::vector<fs::path> files;
    if (!fs::is_directory(opts.dir)) throw CliExit{kExitFailure, "not a directory: " + opts.dir};
    for (const auto& entry : fs::directory_iterator(opts.dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        instances.emplace_back(f.stem().string(), load_instance(f.string()));
        load_errors.emplace_back();
      } catch (const CliExit& e) {
        instances.emplace_back(f.stem().string(), std::nullopt);
        load_errors.push_back(e.message);
      }
    }
  }
  for (int k = 0; k < opts.gen_count; ++k) {
    Instance inst = generate_family(opts.gen_family, opts.gen_n, opts.gen_seed + k, 100);
    instances.emplace_back(inst.name, std::move(inst));
    load_errors.emplace_back();
  }

  std::vector<Method> methods;
  {
    std::stringstream ss(opts.methods);
    std::string spec;
    while (std::getline(ss, spec, ',')) {
      if (!spec.empty()) methods.push_back(parse_method_spec(spec, bidp_opts));
    }
    if (opts.sweep) {
      for (const char* spec : {"bidp:theta=0.80:delta=0.01", "bidp:theta=0.90:delta=0.01",
                               "bidp:theta=1.00:delta=0:heuristic"}) {
        methods.push_back(parse_method_spec(spec, bidp_opts));
      }
    }
  }

  struct Row {
    std::string instance;
    int n = 0;
    std::string method;
    std::optional<Cost> z;
    double t = 0.0;
    bool proven = false;
    std::string status = "ok";
  };
  std::vector<Row> rows;
  std::vector<std::optional<Cost>> best_of_instance;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto& [name, maybe] = instances[k];
    std::optional<Cost> best;
    const std::size_t first_row = rows.size();
    for (const auto& m : methods) {
      Row row;
      row.instance = name;
      row.method = m.label;
      if (!maybe) {
        row.status = "error: " + load_errors[k];
      } else {
        row.n = maybe->n;
        try {
          const Instance inst = absorbed(*maybe);
          const RunResult r = run_method(m, inst, threads);
          row.z = r.route.objective;
          row.t = opts.no_timing ? 0.0 : r.seconds;
          row.proven = r.proven_optimal;
          if (!best || *row.z < *best) best = row.z;
        } catch (const CliExit& e) {
          row.status = "error: " + e.message;
        } catch (const std::exception& e) {
          row.status = std::string("error: ") + e.what();
        }
      }
      std::replace(row.status.begin(), row.status.end(), ',', ';');
      std::replace(row.status.begin(), row.status.end(), '\n', ' ');
      rows.push_back(std::move(row));
    }
    for (std::size_t r = first_row; r < rows.size(); ++r) best_of_instance.push_back(best);
  }

  out << "instance,n,method,z,t,proven_optimal,gap_pct,status\n";
  std::map<std::string, std::vector<double>> gaps;
  std::map<std::string, std::vector<double>> times;
  std::vector<std::string> method_order;
  for (const auto& m : methods) method_order.push_back(m.label);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    out << row.instance << ',' << row.n << ',' << row.method << ',';
    std::string gap_text;
    if (row.z) {
      out << to_string(*row.z);
      const Cost best = *best_of_instance[r];
      const double gap = best == 0 ? 0.0
                                   : 100.0 * static_cast<double>(*row.z - best) /
                                         static_cast<double>(best);
      gap_text = format_gap(gap);
      gaps[row.method].push_back(gap);
      times[row.method].push_back(row.t);
    }
    out << ',' << std::setprecision(6) << row.t << ',' << (row.proven ? "true" : "false") << ','
        << gap_text << ',' << row.status << '\n';
  }

  // Deviation summary per method over the whole run set.
  std::ostringstream summary;
  summary << "method,runs,avg_deviation_pct,min_deviation_pct,max_deviation_pct,mean_t\n";
  for (const auto& label : method_order) {
    const auto& g = gaps[label];
    if (g.empty()) continue;
    double sum = 0.0;
    for (double x : g) sum += x;
    double t_sum = 0.0;
    for (double x : times[label]) t_sum += x;
    summary << label << ',' << g.size() << ',' << format_gap(sum / g.size()) << ','
            << format_gap(*std::min_element(g.begin(), g.end())) << ','
            << format_gap(*std::max_element(g.begin(), g.end())) << ',' << std::setprecision(6)
            << t_sum / g.size() << '\n';
  }
  if (!opts.summary_path.empty()) {
    std::ofstream f(opts.summary_path);
    if (!f) throw CliExit{kExitFailure, "cannot write " + opts.summary_path};
    f << summary.str();
  } else if (!rows.empty()) {
    err << summary.str();
  }
  return kExitOk;
}

int cmd_generate(int n, std::optional<std::uint64_t> seed, const std::string& family, int coord_range,
                 const std::string& subtree, std::optional<int> root, const std::string& out_dir,
                 std::ostream& out) {
  Instance inst;
  if (!subtree.empty()) {
    if (!root) throw CliExit{kExitFailure, "--subtree requires --root"};
    const Instance base = load_instance(subtree);
    try {
      inst = extract_subtree(base, *root);
    } catch (const InstanceError& e) {
      throw CliExit{kExitInvalidInstance, e.what()};
    }
  } else {
    if (!seed) throw CliExit{kExitFailure, "--seed is required"};
    if (n < 1) throw CliExit{kExitFailure, "--n must be at least 1"};
    inst = generate_family(family, n, *seed, coord_range);
  }
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / (inst.name + ".json");
  write_instance(inst, path);
  out << path.string() << '\n';
  return kExitOk;
}

int cmd_bounds(const std::string& path, const std::string& upper_text, std::ostream& out,
               std::ostream& err) {
  const Instance inst = absorbed(load_instance(path));
  const PrecedenceIndex index(inst);
  BoundsTable table(inst, index);
  Cost upper = 0;
  if (upper_text.empty()) {
    upper = std::min(greedy_distance(inst, index).objective,
                     greedy_priority_distance(inst, index).objective);
  } else {
    try {
      upper = std::stoll(upper_text);
    } catch (const std::exception&) {
      throw CliExit{kExitFailure, "bad --upper value"};
    }
  }
  err << "upper bound: " << to_string(upper) << '\n';
  const auto beta = table.compute_beta(upper);
  out << "vertex,successors,beta";
  for (int k = 1; k <= inst.n; ++k) out << ",L_" << k;
  out << '\n';
  for (Vertex i = 1; i <= inst.n; ++i) {
    out << i << ',' << table.successor_count(i) << ',' << beta[i];
    for (int k = 1; k <= inst.n; ++k) {
      out << ',';
      if (k >= table.first_applicable_position(i)) out << to_string(table.position_lower_bound(i, k));
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_export_mip(const std::string& path, const std::string& output, const std::string& big_m,
                   const std::string& solution_order, const std::string& solution_out,
                   std::ostream& out) {
  const Instance inst = absorbed(load_instance(path));
  const PrecedenceIndex index(inst);
  std::optional<Cost> m;
  if (!big_m.empty()) m = static_cast<Cost>(std::stoll(big_m));
  const MipModel model = build_model(inst, index, m);
  const std::string text = write_lp_text(model);
  if (output.empty() || output == "-") {
    out << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw CliExit{kExitFailure, "cannot write " + output};
    f << text;
  }
  if (!solution_order.empty()) {
    if (solution_out.empty()) throw CliExit{kExitFailure, "--solution-order needs --solution-out"};
    std::vector<Vertex> order = parse_order(solution_order);
    Assignment values;
    try {
      values = canonical_assignment(inst, index, order);
    } catch (const std::invalid_argument& e) {
      throw CliExit{kExitFailure, e.what()};
    }
    const fs::path sol_path(solution_out);
    const fs::path sol_dir = sol_path.has_parent_path() ? sol_path.parent_path() : fs::path(".");
    ordered_json doc;
    doc["instance"] = fs::relative(fs::absolute(path), fs::absolute(sol_dir)).generic_string();
    if (m) doc["big_m"] = static_cast<std::int64_t>(*m);
    doc["values"] = ordered_json::object();
    for (const auto& [name, v] : values) doc["values"][name] = v;
    std::ofstream f(solution_out);
    if (!f) throw CliExit{kExitFailure, "cannot write " + solution_out};
    f << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_check_mip(const std::string& path, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw CliExit{kExitFailure, "cannot open " + path};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw CliExit{kExitFailure, std::string("malformed solution JSON: ") + e.what()};
  }
  if (!doc.contains("instance") || !doc.contains("values")) {
    throw CliExit{kExitFailure, "solution file needs \"instance\" and \"values\""};
  }
  fs::path instance_path = doc["instance"].get<std::string>();
  if (instance_path.is_relative()) instance_path = fs::path(path).parent_path() / instance_path;
  const Instance inst = absorbed(load_instance(instance_path.string()));
  const PrecedenceIndex index(inst);
  std::optional<Cost> m;
  if (doc.contains("big_m")) m = static_cast<Cost>(doc["big_m"].get<std::int64_t>());
  const MipModel model = build_model(inst, index, m);
  Assignment values;
  for (const auto& [name, v] : doc["values"].items()) values[name] = v.get<double>();
  const MipVerdict verdict = check_assignment(model, inst, index, values);

  ordered_json j;
  j["feasible"] = verdict.feasible;
  j["objective"] = verdict.objective;
  j["single_tour"] = verdict.single_tour;
  j["order"] = verdict.decoded_order ? ordered_json(*verdict.decoded_order) : ordered_json(nullptr);
  j["violations"] = verdict.violations;
  out << j.dump(2) << '\n';
  return verdict.feasible ? kExitOk : kExitFailure;
}

int cmd_evaluate(const std::string& path, const std::string& order_text, std::ostream& out) {
  const Instance inst = load_instance(path);
  const PrecedenceIndex index(inst);
  const std::vector<Vertex> order = parse_order(order_text);
  Route route;
  try {
    route = evaluate_route(inst, index, order);
  } catch (const std::invalid_argument& e) {
    throw CliExit{kExitFailure, e.what()};
  }
  ordered_json j;
  j["instance"] = inst.name;
  j["objective"] = cost_json(route.objective);
  j["order"] = route.order;
  j["t"] = vertex_values_json(route.arrival);
  j["r"] = vertex_values_json(route.disruption);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-crew power restoration routing: exact and heuristic solvers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int threads = default_threads();
  bool no_timing = false;
  BidpOptions bidp;
  auto add_bidp_options = [&bidp](CLI::App* sub) {
    sub->add_option("--theta", bidp.theta, "Initial bound multiplier in (0,1]");
    sub->add_option("--delta", bidp.delta, "Per-level bound relaxation");
    sub->add_flag("--heuristic", bidp.heuristic, "Heuristic mode even with theta=1, delta=0");
    sub->add_flag("--heuristic-source-beta", bidp.heuristic_source_beta,
                  "Cap the source position by the greedy routes");
    sub->add_flag("--strict-forward-beta", bidp.strict_forward_beta,
                  "Filter forward extensions by the new vertex's position");
    sub->add_option("--ub-refresh", bidp.ub_refresh, "Labels completed greedily per level");
    sub->add_option("--labels-cap", bidp.labels_cap, "Abort beyond this many labels");
    sub->add_option("--time-limit", bidp.time_limit, "Seconds; 0 for none");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a JSON record");
  std::string solve_path;
  std::string method = "bidp";
  solve_cmd->add_option("instance", solve_path, "Instance JSON file")->required();
  solve_cmd->add_option("--method", method, "bidp | gid | gipd | brute | hk");
  solve_cmd->add_option("--threads", threads, "Worker threads (env PRTRP_THREADS)");
  solve_cmd->add_flag("--no-timing", no_timing, "Zero out timings for golden comparisons");
  add_bidp_options(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Run methods over an instance set, CSV output");
  BenchOptions bench;
  bench_cmd->add_option("--dir", bench.dir, "Directory of instance JSON files");
  bench_cmd->add_option("--gen-n", bench.gen_n, "Generated instance size");
  bench_cmd->add_option("--gen-count", bench.gen_count, "Number of generated instances");
  bench_cmd->add_option("--gen-seed", bench.gen_seed, "First generator seed");
  bench_cmd->add_option("--gen-family", bench.gen_family, "random | star");
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma list, e.g. gid,gipd,bidp,bidp:theta=0.80:delta=0.01:hsb");
  bench_cmd->add_flag("--sweep", bench.sweep, "Append the theta/delta heuristic sweep");
  bench_cmd->add_option("--summary", bench.summary_path, "Write deviation summary CSV here");
  bench_cmd->add_option("--threads", threads, "Worker threads (env PRTRP_THREADS)");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Zero out timings");
  add_bidp_options(bench_cmd);

  auto* gen_cmd = app.add_subcommand("generate", "Write a generated or subtree instance");
  int gen_n = 0;
  std::optional<std::uint64_t> gen_seed;
  std::string family = "random";
  int coord_range = 100;
  std::string subtree;
  std::optional<int> root;
  std::string out_dir = ".";
  gen_cmd->add_option("--n", gen_n, "Number of fault vertices");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--family", family, "random | star");
  gen_cmd->add_option("--coord-range", coord_range, "Coordinates drawn from [0, range]");
  gen_cmd->add_option("--subtree", subtree, "Cut a subtree out of this instance");
  gen_cmd->add_option("--root", root, "Subtree root vertex");
  gen_cmd->add_option("-o,--out-dir", out_dir, "Output directory");

  auto* bounds_cmd = app.add_subcommand("bounds", "Dump beta and position bounds as CSV");
  std::string bounds_path;
  std::string upper_text;
  bounds_cmd->add_option("instance", bounds_path, "Instance JSON file")->required();
  bounds_cmd->add_option("--upper", upper_text, "Upper bound (default: best greedy route)");

  auto* export_cmd = app.add_subcommand("export-mip", "Write the MIP model in LP format");
  std::string export_path;
  std::string lp_out;
  std::string big_m;
  std::string solution_order;
  std::string solution_out;
  export_cmd->add_option("instance", export_path, "Instance JSON file")->required();
  export_cmd->add_option("-o,--output", lp_out, "LP file (default stdout)");
  export_cmd->add_option("--big-m", big_m, "Override the big-M constant");
  export_cmd->add_option("--solution-order", solution_order,
                         "Also write the canonical assignment of this order, e.g. 1,2,3");
  export_cmd->add_option("--solution-out", solution_out, "Where to write that assignment");

  auto* check_cmd = app.add_subcommand("check-mip", "Verify a MIP assignment");
  std::string check_path;
  check_cmd->add_option("solution", check_path, "Solution JSON file")->required();

  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a visiting order");
  std::string eval_path;
  std::string order_text;
  eval_cmd->add_option("instance", eval_path, "Instance JSON file")->required();
  eval_cmd->add_option("--order", order_text, "Comma separated order")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (threads < 1) throw CliExit{kExitFailure, "--threads must be at least 1"};
    if (*solve_cmd) return cmd_solve(solve_path, method, bidp, threads, no_timing, out);
    if (*bench_cmd) return cmd_bench(bench, bidp, threads, out, err);
    if (*gen_cmd) {
      return cmd_generate(gen_n, gen_seed, family, coord_range, subtree, root, out_dir, out);
    }
    if (*bounds_cmd) return cmd_bounds(bounds_path, upper_text, out, err);
    if (*export_cmd) {
      return cmd_export_mip(export_path, lp_out, big_m, solution_order, solution_out, out);
    }
    if (*check_cmd) return cmd_check_mip(check_path, out);
    if (*eval_cmd) return cmd_evaluate(eval_path, order_text, out);
  } catch (const CliExit& e) {
    err << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace prtrp::cli

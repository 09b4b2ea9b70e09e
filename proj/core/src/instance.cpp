#include "prtrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rng.hpp"

namespace prtrp {
namespace {

// Returns an empty string when the power edges form a tree rooted at source
// spanning 1..n, otherwise the first problem found.
std::string tree_problem(const Instance& inst) {
  const int n = inst.n;
  std::vector<int> parent_count(n + 1, 0);
  std::vector<std::vector<Vertex>> children(n + 1);
  for (const auto& e : inst.power_edges) {
    if (e.parent < 1 || e.parent > n || e.child < 1 || e.child > n) {
      return "edge (" + std::to_string(e.parent) + ", " + std::to_string(e.child) +
             ") references a vertex outside 1..n";
    }
    if (e.parent == e.child) return "self loop at vertex " + std::to_string(e.child);
    ++parent_count[e.child];
    children[e.parent].push_back(e.child);
  }
  if (parent_count[inst.source] != 0) return "source has a parent";
  for (Vertex v = 1; v <= n; ++v) {
    if (v != inst.source && parent_count[v] != 1) {
      return "vertex " + std::to_string(v) + " has " + std::to_string(parent_count[v]) +
             " parents";
    }
  }
  std::vector<bool> seen(n + 1, false);
  std::vector<Vertex> stack{inst.source};
  seen[inst.source] = true;
  int reached = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex c : children[v]) {
      if (seen[c]) return "cycle through vertex " + std::to_string(c);
      seen[c] = true;
      stack.push_back(c);
    }
  }
  if (reached != n) return "vertices unreachable from the source";
  return {};
}

std::vector<std::vector<Vertex>> children_of(const Instance& inst) {
  std::vector<std::vector<Vertex>> children(inst.n + 1);
  for (const auto& e : inst.power_edges) children[e.parent].push_back(e.child);
  return children;
}

}  // namespace

bool Instance::has_repair_durations() const {
  return std::any_of(repair_duration.begin(), repair_duration.end(),
                     [](Time p) { return p != 0; });
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> violations;
  if (inst.n < 1) {
    violations.push_back("n must be at least 1");
    return violations;
  }
  const int n = inst.n;
  if (inst.source < 1 || inst.source > n) {
    violations.push_back("source must be a fault vertex in 1..n");
  }
  bool shape_ok = inst.travel.size() == static_cast<std::size_t>(n + 1);
  for (const auto& row : inst.travel) shape_ok = shape_ok && row.size() == inst.travel.size();
  if (!shape_ok) {
    violations.push_back("travel matrix must be (n+1)x(n+1)");
  } else {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Time d = inst.travel[i][j];
        if (d < 0) {
          violations.push_back("negative travel time at travel[" + std::to_string(i) + "][" +
                               std::to_string(j) + "]");
        } else if (i == j && d != 0) {
          violations.push_back("travel[" + std::to_string(i) + "][" + std::to_string(i) +
                               "] must be 0");
        }
      }
    }
  }
  if (inst.repair_duration.size() != static_cast<std::size_t>(n + 1)) {
    violations.push_back("repair durations must cover every fault vertex");
  } else {
    if (inst.repair_duration[0] != 0) violations.push_back("depot repair duration must be 0");
    for (Vertex v = 1; v <= n; ++v) {
      if (inst.repair_duration[v] < 0) {
        violations.push_back("negative repair duration at vertex " + std::to_string(v));
      }
    }
  }
  if (inst.source >= 1 && inst.source <= n) {
    if (auto problem = tree_problem(inst); !problem.empty()) {
      violations.push_back("power graph not a tree: " + problem);
    }
  }
  if (!inst.original_labels.empty() &&
      inst.original_labels.size() != static_cast<std::size_t>(n)) {
    violations.push_back("original_labels must have n entries");
  }
  return violations;
}

void require_valid(const Instance& inst) {
  const auto violations = validate(inst);
  if (violations.empty()) return;
  std::string message = "invalid instance '" + inst.name + "':";
  for (const auto& v : violations) message += "\n  " + v;
  throw InstanceError(message);
}

Instance absorb_repair_durations(const Instance& inst) {
  require_valid(inst);
  Instance out = inst;
  for (Vertex i = 1; i <= inst.n; ++i) {
    const Time p = inst.repair_duration[i];
    if (p == 0) continue;
    for (Vertex j = 0; j <= inst.n; ++j) {
      if (j == i) continue;
      Time sum = 0;
      if (__builtin_add_overflow(inst.travel[j][i], p, &sum)) {
        throw InstanceError("travel time overflow absorbing repair duration of vertex " +
                            std::to_string(i));
      }
      out.travel[j][i] = sum;
    }
    out.repair_duration[i] = 0;
  }
  return out;
}

Instance extract_subtree(const Instance& inst, Vertex new_source) {
  require_valid(inst);
  if (new_source < 1 || new_source > inst.n) {
    throw InstanceError("unknown vertex " + std::to_string(new_source));
  }
  const auto children = children_of(inst);
  std::vector<Vertex> kept;
  std::vector<Vertex> stack{new_source};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    kept.push_back(v);
    for (Vertex c : children[v]) stack.push_back(c);
  }
  std::sort(kept.begin(), kept.end());

  std::vector<Vertex> relabel(inst.n + 1, -1);
  relabel[kDepot] = kDepot;
  for (std::size_t k = 0; k < kept.size(); ++k) relabel[kept[k]] = static_cast<Vertex>(k + 1);

  const int m = static_cast<int>(kept.size());
  std::vector<Vertex> old_of(m + 1, kDepot);
  for (int k = 0; k < m; ++k) old_of[k + 1] = kept[k];

  Instance out;
  out.name = inst.name + "_" + std::to_string(inst.original_labels.empty()
                                                  ? new_source
                                                  : inst.original_labels[new_source - 1]);
  out.n = m;
  out.source = relabel[new_source];
  for (const auto& e : inst.power_edges) {
    if (relabel[e.parent] > 0 && relabel[e.child] > 0) {
      out.power_edges.push_back({relabel[e.parent], relabel[e.child]});
    }
  }
  std::sort(out.power_edges.begin(), out.power_edges.end(),
            [](const PowerEdge& a, const PowerEdge& b) {
              return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
            });
  out.travel.assign(m + 1, std::vector<Time>(m + 1, 0));
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) out.travel[a][b] = inst.travel[old_of[a]][old_of[b]];
  }
  out.repair_duration.assign(m + 1, 0);
  for (int a = 1; a <= m; ++a) out.repair_duration[a] = inst.repair_duration[old_of[a]];
  out.original_labels.resize(m);
  for (int a = 1; a <= m; ++a) {
    out.original_labels[a - 1] =
        inst.original_labels.empty() ? old_of[a] : inst.original_labels[old_of[a] - 1];
  }
  return out;
}

Instance generate_random(int n, std::uint64_t seed, int coord_range) {
  if (n < 1) throw InstanceError("n must be at least 1");
  if (coord_range < 0) throw InstanceError("coordinate range must be non-negative");
  detail::SeededRng rng(seed);

  std::vector<std::pair<std::int64_t, std::int64_t>> xy(n + 1);
  for (auto& p : xy) {
    p.first = rng.between(0, coord_range);
    p.second = rng.between(0, coord_range);
  }

  Instance out;
  out.name = "rand_n" + std::to_string(n) + "_s" + std::to_string(seed);
  out.n = n;
  out.travel.assign(n + 1, std::vector<Time>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double dx = static_cast<double>(xy[i].first - xy[j].first);
      const double dy = static_cast<double>(xy[i].second - xy[j].second);
      out.travel[i][j] = static_cast<Time>(std::llround(std::hypot(dx, dy)));
    }
  }

  // Uniform recursive tree: visit vertices in random order starting at the
  // source and attach each to a uniformly chosen earlier one.
  out.source = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
  std::vector<Vertex> order;
  for (Vertex v = 1; v <= n; ++v) {
    if (v != out.source) order.push_back(v);
  }
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[rng.below(k)]);
  }
  order.insert(order.begin(), out.source);
  for (std::size_t k = 1; k < order.size(); ++k) {
    out.power_edges.push_back({order[rng.below(k)], order[k]});
  }
  std::sort(out.power_edges.begin(), out.power_edges.end(),
            [](const PowerEdge& a, const PowerEdge& b) {
              return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
            });
  out.repair_duration.assign(n + 1, 0);
  return out;
}

Instance generate_star_reduction(const TravelMatrix& travel, std::string name) {
  if (travel.size() < 2) throw InstanceError("star reduction needs at least one fault vertex");
  Instance out;
  out.name = std::move(name);
  out.n = static_cast<int>(travel.size()) - 1;
  out.source = 1;
  for (Vertex v = 2; v <= out.n; ++v) out.power_edges.push_back({1, v});
  out.travel = travel;
  out.repair_duration.assign(out.n + 1, 0);
  return out;
}

std::string to_json_text(const Instance& inst) {
  std::ostringstream os;
  auto list = [&os](const auto& values, std::size_t from) {
    os << '[';
    for (std::size_t k = from; k < values.size(); ++k) {
      if (k > from) os << ", ";
      os << values[k];
    }
    os << ']';
  };
  os << "{\n";
  os << "  \"name\": " << nlohmann::json(inst.name).dump() << ",\n";
  os << "  \"n\": " << inst.n << ",\n";
  os << "  \"source\": " << inst.source << ",\n";
  os << "  \"power_edges\": [";
  for (std::size_t k = 0; k < inst.power_edges.size(); ++k) {
    if (k > 0) os << ", ";
    os << '[' << inst.power_edges[k].parent << ", " << inst.power_edges[k].child << ']';
  }
  os << "],\n";
  os << "  \"travel\": [\n";
  for (std::size_t r = 0; r < inst.travel.size(); ++r) {
    os << "    ";
    list(inst.travel[r], 0);
    os << (r + 1 < inst.travel.size() ? ",\n" : "\n");
  }
  os << "  ],\n";
  os << "  \"repair_durations\": ";
  list(inst.repair_duration, 1);
  if (!inst.original_labels.empty()) {
    os << ",\n  \"original_labels\": ";
    list(inst.original_labels, 0);
  }
  os << "\n}\n";
  return os.str();
}

Instance from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("malformed instance JSON: ") + e.what());
  }
  try {
    Instance inst;
    inst.name = doc.at("name").get<std::string>();
    inst.n = doc.at("n").get<int>();
    inst.source = doc.at("source").get<int>();
    for (const auto& e : doc.at("power_edges")) {
      if (!e.is_array() || e.size() != 2) throw InstanceError("power edge must be [parent, child]");
      inst.power_edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    inst.travel = doc.at("travel").get<TravelMatrix>();
    const auto durations = doc.at("repair_durations").get<std::vector<Time>>();
    inst.repair_duration.push_back(0);
    inst.repair_duration.insert(inst.repair_duration.end(), durations.begin(), durations.end());
    if (doc.contains("original_labels")) {
      inst.original_labels = doc["original_labels"].get<std::vector<Vertex>>();
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("bad instance field: ") + e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write instance file " + path.string());
  out << to_json_text(inst);
}

}  // namespace prtrp

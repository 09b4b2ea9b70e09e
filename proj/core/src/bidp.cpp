#include "prtrp/bidp.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <bit>
#include <unordered_map>

#include "prtrp/heuristics.hpp"

namespace prtrp {
namespace {

using Clock = std::chrono::steady_clock;

enum class Direction { forward, backward };

// A partial path. Forward labels end at `endpoint`; backward labels start
// there. `parent` is the parent's rank in the previous level.
struct Label {
  VertexSet visited = 0;
  Cost value = 0;
  std::uint32_t parent = 0;
  Vertex endpoint = kDepot;
};

// Enough of a label to rebuild its path once the level has been released.
struct Link {
  std::uint32_t parent = 0;
  Vertex vertex = kDepot;
};

struct ExtensionStats {
  std::size_t created = 0;
  std::size_t pruned_bound = 0;
  std::size_t pruned_beta = 0;
};

struct ExtensionInput {
  const Instance& instance;
  const PrecedenceIndex& index;
  const BoundsTable& bounds;
  const SolverConfig& config;
  const std::vector<int>& beta;
  Cost upper;
  int level;  // vertices on the parent paths
};

bool within_effective_bound(const ExtensionInput& in, Cost lower) {
  if (!in.config.use_path_bounds) return true;
  const Cost percent = in.config.theta_pct + static_cast<Cost>(in.level) * in.config.delta_pct;
  return lower * 100 <= percent * in.upper;
}

// Min-merge store keyed by configuration (visited set, endpoint). Open
// addressing over indices into `labels`; grows at half load.
class LabelStore {
 public:
  explicit LabelStore(bool dominance) : dominance_(dominance) { slots_.assign(1024, kEmpty); }

  std::vector<Label>& labels() { return labels_; }
  std::size_t dominated() const { return dominated_; }

  // Ties go to the smaller parent rank, which is the lexicographically
  // smaller path in both directions, so merge order never matters.
  void offer(const Label& cand) {
    if (!dominance_) {
      labels_.push_back(cand);
      return;
    }
    if (2 * (labels_.size() + 1) > slots_.size()) grow();
    std::uint32_t& slot = find(cand.visited, cand.endpoint);
    if (slot == kEmpty) {
      slot = static_cast<std::uint32_t>(labels_.size());
      labels_.push_back(cand);
      return;
    }
    ++dominated_;
    Label& held = labels_[slot];
    if (cand.value < held.value || (cand.value == held.value && cand.parent < held.parent)) {
      held = cand;
    }
  }

  void absorb(LabelStore& other) {
    dominated_ += other.dominated_;
    for (const Label& l : other.labels_) offer(l);
    other.labels_ = {};
    other.slots_ = {};
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  static std::size_t hash(VertexSet visited, Vertex endpoint) {
    std::uint64_t h = visited * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(endpoint);
    h ^= h >> 29;
    h *= 0xbf58476d1ce4e5b9ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

  std::uint32_t& find(VertexSet visited, Vertex endpoint) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t k = hash(visited, endpoint) & mask;; k = (k + 1) & mask) {
      std::uint32_t& slot = slots_[k];
      if (slot == kEmpty) return slot;
      const Label& l = labels_[slot];
      if (l.visited == visited && l.endpoint == endpoint) return slot;
    }
  }

  void grow() {
    slots_.assign(slots_.size() * 2, kEmpty);
    for (std::uint32_t r = 0; r < labels_.size(); ++r) {
      find(labels_[r].visited, labels_[r].endpoint) = r;
    }
  }

  bool dominance_;
  std::vector<Label> labels_;
  std::vector<std::uint32_t> slots_;
  std::size_t dominated_ = 0;
};

// Extends parents [begin, end) by one vertex and offers the candidates that
// pass the position and path-bound filters to `out`.
void extend_range(const ExtensionInput& in, Direction dir, const std::vector<Label>& parents,
                  std::size_t begin, std::size_t end, LabelStore& out, ExtensionStats& stats) {
  const int n = in.instance.n;
  const VertexSet all = in.index.all();
  const int position = dir == Direction::forward
                           ? (in.config.strict_forward_beta ? in.level + 1 : in.level)
                           : n - in.level;
  // Vertices the position filter lets through at this level.
  VertexSet allowed = all;
  if (in.config.use_beta) {
    for (Vertex i = 1; i <= n; ++i) {
      if (position > in.beta[i]) allowed &= ~bit_of(i);
    }
  }
  for (std::size_t p = begin; p < end; ++p) {
    const Label& parent = parents[p];
    // Dark count during the new leg: forward, only the path so far is
    // repaired; backward, everything off the path is.
    const int dark = dir == Direction::forward ? in.index.disrupted_count(parent.visited)
                                               : in.index.disrupted_count(all & ~parent.visited);
    const VertexSet open = all & ~parent.visited;
    stats.pruned_beta += static_cast<std::size_t>(set_size(open & ~allowed));
    for (VertexSet rest = open & allowed; rest != 0; rest &= rest - 1) {
      const Vertex i = std::countr_zero(rest) + 1;
      ++stats.created;
      Label child;
      child.visited = parent.visited | bit_of(i);
      child.parent = static_cast<std::uint32_t>(p);
      child.endpoint = i;
      Cost lower;
      if (dir == Direction::forward) {
        child.value = parent.value + static_cast<Cost>(dark) * in.instance.d(parent.endpoint, i);
        lower = in.config.use_path_bounds
                    ? in.bounds.outgoing_lower_bound(child.value, in.level + 1,
                                                     in.index.disrupted_count(child.visited))
                    : 0;
      } else {
        child.value = parent.value + static_cast<Cost>(dark) * in.instance.d(i, parent.endpoint);
        lower = in.config.use_path_bounds ? in.bounds.return_lower_bound(child.value, in.level + 1)
                                          : 0;
      }
      if (!within_effective_bound(in, lower)) {
        ++stats.pruned_bound;
        continue;
      }
      out.offer(child);
    }
  }
}

struct LevelResult {
  std::vector<Label> labels;  // sorted so that index == lexicographic rank
  ExtensionStats stats;
  std::size_t dominated = 0;
};

LevelResult build_level(const ExtensionInput& in, Direction dir, const std::vector<Label>& parents,
                        int threads) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, parents.size() / 64 + 1));
  std::vector<LabelStore> stores(workers, LabelStore(in.config.use_dominance));
  std::vector<ExtensionStats> bucket_stats(workers);
  const std::size_t chunk = (parents.size() + workers - 1) / workers;
  if (workers == 1) {
    extend_range(in, dir, parents, 0, parents.size(), stores[0], bucket_stats[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(parents.size(), w * chunk);
      const std::size_t end = std::min(parents.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        extend_range(in, dir, parents, begin, end, stores[w], bucket_stats[w]);
      });
    }
    for (auto& t : pool) t.join();
    for (std::size_t w = 1; w < workers; ++w) stores[0].absorb(stores[w]);
  }

  LevelResult result;
  for (const auto& s : bucket_stats) {
    result.stats.created += s.created;
    result.stats.pruned_bound += s.pruned_bound;
    result.stats.pruned_beta += s.pruned_beta;
  }
  result.dominated = stores[0].dominated();
  result.labels = std::move(stores[0].labels());

  // Forward paths read parent-path then endpoint; backward paths read
  // endpoint then parent-path.
  auto key = [dir](const Label& l) {
    return dir == Direction::forward
               ? (std::uint64_t{l.parent} << 8) | static_cast<std::uint64_t>(l.endpoint)
               : (static_cast<std::uint64_t>(l.endpoint) << 32) | l.parent;
  };
  std::sort(result.labels.begin(), result.labels.end(),
            [&key](const Label& a, const Label& b) { return key(a) < key(b); });
  return result;
}

std::vector<Vertex> rebuild(const std::vector<std::vector<Link>>& arena, int level,
                            std::uint32_t rank) {
  std::vector<Vertex> path;
  for (int l = level; l >= 1; --l) {
    const Link& link = arena[l][rank];
    path.push_back(link.vertex);
    rank = link.parent;
  }
  return path;
}

// Strictly better objective, or equal objective with a lexicographically
// smaller order.
bool better_route(const Route& a, const Route& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.order < b.order;
}

void record_links(std::vector<std::vector<Link>>& arena, const std::vector<Label>& labels) {
  auto& links = arena.emplace_back();
  links.reserve(labels.size());
  for (const Label& l : labels) links.push_back({l.parent, l.endpoint});
}

}  // namespace

void validate_config(const SolverConfig& config) {
  if (config.theta_pct < 1 || config.theta_pct > 100) {
    throw std::invalid_argument("theta must be in (0, 1]");
  }
  if (config.delta_pct < 0) throw std::invalid_argument("delta must be non-negative");
  if (config.mode == SolveMode::exact &&
      (config.theta_pct != 100 || config.delta_pct != 0 || config.heuristic_source_beta)) {
    throw std::invalid_argument(
        "exact mode requires theta = 1, delta = 0 and no heuristic source position");
  }
  if (config.ub_refresh_width < 0) throw std::invalid_argument("ub refresh width must be >= 0");
  if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Cost forward_value(const Instance& instance, const PrecedenceIndex& index,
                   std::span<const Vertex> outgoing) {
  Cost value = 0;
  VertexSet repaired = 0;
  Vertex at = kDepot;
  for (Vertex v : outgoing) {
    value += static_cast<Cost>(index.disrupted_count(repaired)) * instance.d(at, v);
    repaired |= bit_of(v);
    at = v;
  }
  return value;
}

Cost backward_value(const Instance& instance, const PrecedenceIndex& index,
                    std::span<const Vertex> return_path) {
  if (return_path.empty()) return 0;
  VertexSet on_path = 0;
  for (Vertex v : return_path) on_path |= bit_of(v);
  VertexSet repaired = index.all() & ~on_path;
  Cost value = 0;
  for (std::size_t a = 0; a < return_path.size(); ++a) {
    repaired |= bit_of(return_path[a]);
    const Vertex next = a + 1 < return_path.size() ? return_path[a + 1] : kDepot;
    value += static_cast<Cost>(index.disrupted_count(repaired)) * instance.d(return_path[a], next);
  }
  return value;
}

int heuristic_source_beta(const Instance& instance, const PrecedenceIndex& index) {
  auto position = [&index](const Route& r) {
    auto it = std::find(r.order.begin(), r.order.end(), index.source());
    return static_cast<int>(it - r.order.begin()) + 1;
  };
  return std::max(position(greedy_distance(instance, index)),
                  position(greedy_priority_distance(instance, index)));
}

SolveReport solve(const Instance& instance, const SolverConfig& config) {
  const auto started = Clock::now();
  validate_config(config);
  const PrecedenceIndex index(instance);
  if (instance.has_repair_durations()) {
    throw std::invalid_argument("solve expects repair durations absorbed into travel times");
  }
  const int n = instance.n;
  BoundsTable bounds(instance, index);

  SolveReport report;
  auto& stats = report.stats;

  Route incumbent = greedy_distance(instance, index);
  if (Route gipd = greedy_priority_distance(instance, index); better_route(gipd, incumbent)) {
    incumbent = std::move(gipd);
  }
  stats.upper_bound_trajectory.push_back(incumbent.objective);

  const int source_cap = config.heuristic_source_beta ? heuristic_source_beta(instance, index) : n;
  auto refresh_beta = [&] {
    bounds.update_beta(incumbent.objective);
    if (config.heuristic_source_beta) bounds.cap_beta(index.source(), source_cap);
  };
  refresh_beta();

  const int forward_target = (n + 1) / 2;
  const int backward_target = n - forward_target + 1;

  std::vector<Label> forward{Label{}};
  std::vector<Label> backward{Label{}};
  std::vector<std::vector<Link>> forward_arena;
  std::vector<std::vector<Link>> backward_arena;
  record_links(forward_arena, forward);
  record_links(backward_arena, backward);
  stats.labels_total = 2;

  bool finished = true;
  const int levels = std::max(forward_target, backward_target);
  for (int l = 0; l < levels; ++l) {
    if (config.time_limit && Clock::now() - started > *config.time_limit) {
      stats.timed_out = true;
      finished = false;
      break;
    }
    LevelStats level_stats;
    level_stats.level = l + 1;
    // Bound checks within a level use the U and beta in force at its start.
    const std::vector<int> beta = bounds.beta();
    const ExtensionInput in{instance, index, bounds, config, beta, incumbent.objective, l};

    if (l < backward_target) {
      LevelResult next = build_level(in, Direction::backward, backward, config.threads);
      level_stats.backward_created = next.stats.created;
      level_stats.backward_pruned_bound = next.stats.pruned_bound;
      level_stats.backward_pruned_beta = next.stats.pruned_beta;
      level_stats.backward_dominated = next.dominated;
      level_stats.backward_kept = next.labels.size();
      backward = std::move(next.labels);
      record_links(backward_arena, backward);
      stats.labels_total += backward.size();
    }
    if (l < forward_target) {
      LevelResult next = build_level(in, Direction::forward, forward, config.threads);
      level_stats.forward_created = next.stats.created;
      level_stats.forward_pruned_bound = next.stats.pruned_bound;
      level_stats.forward_pruned_beta = next.stats.pruned_beta;
      level_stats.forward_dominated = next.dominated;
      level_stats.forward_kept = next.labels.size();
      forward = std::move(next.labels);
      record_links(forward_arena, forward);
      stats.labels_total += forward.size();

      // Upper bound refresh from the cheapest new outgoing paths.
      std::vector<std::uint32_t> ranks(forward.size());
      std::iota(ranks.begin(), ranks.end(), 0u);
      const std::size_t width =
          std::min<std::size_t>(ranks.size(), static_cast<std::size_t>(config.ub_refresh_width));
      std::partial_sort(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(width),
                        ranks.end(), [&forward](std::uint32_t a, std::uint32_t b) {
                          return forward[a].value != forward[b].value
                                     ? forward[a].value < forward[b].value
                                     : a < b;
                        });
      bool improved = false;
      for (std::size_t k = 0; k < width; ++k) {
        auto prefix = rebuild(forward_arena, l + 1, ranks[k]);
        std::reverse(prefix.begin(), prefix.end());
        Route completed = greedy_complete(instance, index, prefix);
        if (better_route(completed, incumbent)) {
          improved = improved || completed.objective < incumbent.objective;
          incumbent = std::move(completed);
        }
      }
      if (improved) refresh_beta();
    }
    level_stats.upper_bound = incumbent.objective;
    stats.upper_bound_trajectory.push_back(incumbent.objective);
    stats.levels.push_back(level_stats);

    if (stats.labels_total > config.label_cap) {
      stats.label_cap_hit = true;
      if (config.mode == SolveMode::exact) {
        throw LabelCapExceeded("label cap of " + std::to_string(config.label_cap) +
                               " exceeded at level " + std::to_string(l + 1));
      }
      finished = false;
      break;
    }
  }
  stats.beta = bounds.beta();

  if (finished) {
    // Join: a forward path ending at j meets a backward path starting at j
    // that covers exactly the remaining vertices.
    std::vector<std::unordered_map<VertexSet, std::vector<std::uint32_t>>> by_start(n + 1);
    for (std::uint32_t r = 0; r < backward.size(); ++r) {
      by_start[backward[r].endpoint][backward[r].visited].push_back(r);
    }
    const VertexSet all = index.all();
    Cost best = kInfiniteCost;
    std::uint32_t best_forward = 0;
    std::uint32_t best_backward = 0;
    for (std::uint32_t f = 0; f < forward.size(); ++f) {
      const Label& out = forward[f];
      const VertexSet need = (all & ~out.visited) | bit_of(out.endpoint);
      auto it = by_start[out.endpoint].find(need);
      if (it == by_start[out.endpoint].end()) continue;
      for (std::uint32_t b : it->second) {
        ++stats.join_matches;
        const Cost total = out.value + backward[b].value;
        // Ranks increase with lexicographic order, so the first strict
        // improvement seen is the smallest order for that objective.
        if (total < best) {
          best = total;
          best_forward = f;
          best_backward = b;
        }
      }
    }
    if (best != kInfiniteCost) {
      auto order = rebuild(forward_arena, forward_target, best_forward);
      std::reverse(order.begin(), order.end());
      const auto tail = rebuild(backward_arena, backward_target, best_backward);
      order.insert(order.end(), tail.begin() + 1, tail.end());
      Route joined = evaluate_route(instance, index, order);
      if (joined.objective != best) {
        throw std::logic_error("joined route evaluates to " + to_string(joined.objective) +
                               " but labels sum to " + to_string(best));
      }
      if (better_route(joined, incumbent)) incumbent = std::move(joined);
    }
  }

  report.objective = incumbent.objective;
  report.route = std::move(incumbent);
  report.proven_optimal = finished && config.mode == SolveMode::exact;
  stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

}  // namespace prtrp

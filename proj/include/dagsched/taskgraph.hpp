#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/rng.hpp"

namespace dagsched {

// Tasks are dense indices 0..n-1.
using TaskId = std::uint32_t;

// All durations are exact integers; no tolerances anywhere in the core.
using TimeUnit = std::int64_t;

struct Edge {
  TaskId pred = 0;
  TaskId succ = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Checks that (weights, edges) form a weighted DAG: weights >= 1, edge
// endpoints in range, no self-edges, no cycle. Throws BadWeightError,
// DanglingEdgeError or CycleError; the cycle message names a task on the
// cycle.
inline void validate_dag(const std::vector<TimeUnit>& weights,
                         const std::vector<Edge>& edges) {
  const std::size_t n = weights.size();
  for (std::size_t t = 0; t < n; ++t) {
    if (weights[t] < 1) {
      throw BadWeightError("task " + std::to_string(t) + " has weight " +
                           std::to_string(weights[t]) + " (must be >= 1)");
    }
  }
  for (const Edge& e : edges) {
    if (e.pred >= n || e.succ >= n) {
      throw DanglingEdgeError("edge " + std::to_string(e.pred) + "->" +
                              std::to_string(e.succ) +
                              " references a task outside 0.." +
                              std::to_string(n == 0 ? 0 : n - 1));
    }
    if (e.pred == e.succ) {
      throw CycleError("self-edge on task " + std::to_string(e.pred));
    }
  }

  // Kahn's algorithm; anything left unprocessed sits on or behind a cycle.
  std::vector<int> in_degree(n, 0);
  std::vector<std::vector<TaskId>> succs(n);
  for (const Edge& e : edges) {
    ++in_degree[e.succ];
    succs[e.pred].push_back(e.succ);
  }
  std::vector<TaskId> frontier;
  for (std::size_t t = 0; t < n; ++t) {
    if (in_degree[t] == 0) frontier.push_back(static_cast<TaskId>(t));
  }
  std::size_t processed = 0;
  while (!frontier.empty()) {
    TaskId t = frontier.back();
    frontier.pop_back();
    ++processed;
    for (TaskId s : succs[t]) {
      if (--in_degree[s] == 0) frontier.push_back(s);
    }
  }
  if (processed < n) {
    // Walk backwards through unprocessed predecessors until one repeats;
    // the repeated task is on the cycle itself.
    std::vector<std::vector<TaskId>> preds(n);
    for (const Edge& e : edges) {
      if (in_degree[e.succ] > 0) preds[e.succ].push_back(e.pred);
    }
    TaskId cur = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_degree[t] > 0) {
        cur = static_cast<TaskId>(t);
        break;
      }
    }
    std::vector<char> seen(n, 0);
    while (!seen[cur]) {
      seen[cur] = 1;
      for (TaskId p : preds[cur]) {
        if (in_degree[p] > 0) {
          cur = p;
          break;
        }
      }
    }
    throw CycleError("task " + std::to_string(cur) + " lies on a cycle");
  }
}

// Weighted directed acyclic task graph. Edges carry precedence only; the
// model has no communication cost and homogeneous processors, so a task's
// duration is its weight wherever it runs. Immutable after construction;
// the constructor validates and caches heights, the critical path length
// and the total work.
class TaskGraph {
 public:
  TaskGraph() = default;

  TaskGraph(std::vector<TimeUnit> weights, std::vector<Edge> edges)
      : weights_(std::move(weights)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    validate_dag(weights_, edges_);

    const std::size_t n = weights_.size();
    succs_.resize(n);
    preds_.resize(n);
    for (const Edge& e : edges_) {
      succs_[e.pred].push_back(e.succ);
      preds_[e.succ].push_back(e.pred);
    }

    // Heights and earliest finish along the heaviest predecessor chain, in
    // one topological sweep.
    heights_.assign(n, 0);
    std::vector<TimeUnit> chain_finish(n, 0);
    std::vector<int> in_degree(n, 0);
    for (const Edge& e : edges_) ++in_degree[e.succ];
    std::vector<TaskId> order;
    order.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
      if (in_degree[t] == 0) order.push_back(static_cast<TaskId>(t));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      TaskId t = order[i];
      TimeUnit start = 0;
      for (TaskId p : preds_[t]) {
        heights_[t] = std::max(heights_[t], heights_[p] + 1);
        start = std::max(start, chain_finish[p]);
      }
      chain_finish[t] = start + weights_[t];
      t_cp_ = std::max(t_cp_, chain_finish[t]);
      for (TaskId s : succs_[t]) {
        if (--in_degree[s] == 0) order.push_back(s);
      }
    }
    total_work_ = std::accumulate(weights_.begin(), weights_.end(),
                                  TimeUnit{0});
  }

  std::size_t num_tasks() const { return weights_.size(); }
  TimeUnit weight(TaskId t) const { return weights_[t]; }
  const std::vector<TimeUnit>& weights() const { return weights_; }

  // Sorted lexicographically, duplicates removed.
  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<TaskId>& successors(TaskId t) const { return succs_[t]; }
  const std::vector<TaskId>& predecessors(TaskId t) const { return preds_[t]; }

  // Precedence level: 0 for sources, else 1 + max over predecessors.
  int height(TaskId t) const { return heights_[t]; }
  const std::vector<int>& heights() const { return heights_; }

  // -1 for the empty graph.
  int max_height() const {
    int m = -1;
    for (int h : heights_) m = std::max(m, h);
    return m;
  }

  // Heaviest source-to-sink path; a lower bound on any makespan.
  TimeUnit critical_path_length() const { return t_cp_; }

  TimeUnit total_work() const { return total_work_; }

  bool operator==(const TaskGraph& other) const {
    return weights_ == other.weights_ && edges_ == other.edges_;
  }

 private:
  std::vector<TimeUnit> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<TaskId>> succs_;
  std::vector<std::vector<TaskId>> preds_;
  std::vector<int> heights_;
  TimeUnit t_cp_ = 0;
  TimeUnit total_work_ = 0;
};

struct GeneratorParams {
  std::size_t n = 8;
  int min_succ = 3;
  int max_succ = 6;
  TimeUnit min_w = 1;
  TimeUnit max_w = 25;
  std::uint64_t seed = 0;
};

inline void validate(const GeneratorParams& p) {
  if (p.n < 1) throw InvalidParamsError("task count must be >= 1");
  if (p.min_succ < 1 || p.min_succ > p.max_succ) {
    throw InvalidParamsError("successor range must satisfy 1 <= min <= max");
  }
  if (p.min_w < 1 || p.min_w > p.max_w) {
    throw InvalidParamsError("weight range must satisfy 1 <= min <= max");
  }
}

// Random task graph. Weights are drawn first, uniformly in [min_w, max_w],
// one per task in index order. Then for each task i in index order a
// successor count s is drawn uniformly in [min_succ, max_succ], clipped to
// the number of higher-indexed tasks, and s distinct successors are drawn
// uniformly among tasks with larger index (a partial Fisher-Yates over the
// candidate suffix). Edges only ever point to larger indices, so the result
// is acyclic by construction. Fully determined by the params, seed included.
inline TaskGraph generate_random(const GeneratorParams& params) {
  validate(params);
  SplitMix64 rng(params.seed);
  const std::size_t n = params.n;

  std::vector<TimeUnit> weights(n);
  for (std::size_t t = 0; t < n; ++t) {
    weights[t] = rng.range(params.min_w, params.max_w);
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t avail = n - 1 - i;
    std::size_t s = static_cast<std::size_t>(
        rng.range(params.min_succ, params.max_succ));
    s = std::min(s, avail);

    std::vector<TaskId> candidates(avail);
    std::iota(candidates.begin(), candidates.end(),
              static_cast<TaskId>(i + 1));
    for (std::size_t k = 0; k < s; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng.below(avail - k));
      std::swap(candidates[k], candidates[j]);
      edges.push_back({static_cast<TaskId>(i), candidates[k]});
    }
  }
  return TaskGraph(std::move(weights), std::move(edges));
}

}  // namespace dagsched

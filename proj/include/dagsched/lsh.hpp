#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/rng.hpp"
#include "dagsched/schedule.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

enum class PriorityPolicy {
  // Own weight plus the heaviest downstream path. Subsumes the critical
  // path; the default and the strongest of the three.
  BottomLevel,
  // Negated precedence level, so sources dispatch first.
  Height,
  // Own weight only.
  Weight,
};

inline const char* to_string(PriorityPolicy policy) {
  switch (policy) {
    case PriorityPolicy::BottomLevel: return "bottom_level";
    case PriorityPolicy::Height: return "height";
    case PriorityPolicy::Weight: return "weight";
  }
  return "?";
}

inline PriorityPolicy parse_policy(const std::string& name) {
  if (name == "bottom_level") return PriorityPolicy::BottomLevel;
  if (name == "height") return PriorityPolicy::Height;
  if (name == "weight") return PriorityPolicy::Weight;
  throw InvalidParamsError("unknown priority policy '" + name +
                           "' (expected bottom_level, height or weight)");
}

// Static per-task priorities; higher dispatches first.
inline std::vector<TimeUnit> compute_priorities(const TaskGraph& graph,
                                                PriorityPolicy policy) {
  const std::size_t n = graph.num_tasks();
  std::vector<TimeUnit> prio(n, 0);
  switch (policy) {
    case PriorityPolicy::BottomLevel: {
      // Reverse topological sweep; edges point to higher heights, so a
      // height-descending pass sees successors before predecessors.
      std::vector<TaskId> order(n);
      for (std::size_t t = 0; t < n; ++t) order[t] = static_cast<TaskId>(t);
      std::sort(order.begin(), order.end(), [&](TaskId a, TaskId b) {
        return graph.height(a) > graph.height(b);
      });
      for (TaskId t : order) {
        TimeUnit best = 0;
        for (TaskId s : graph.successors(t)) best = std::max(best, prio[s]);
        prio[t] = graph.weight(t) + best;
      }
      break;
    }
    case PriorityPolicy::Height:
      for (std::size_t t = 0; t < n; ++t) prio[t] = -TimeUnit(graph.height(
          static_cast<TaskId>(t)));
      break;
    case PriorityPolicy::Weight:
      for (std::size_t t = 0; t < n; ++t) prio[t] = graph.weight(
          static_cast<TaskId>(t));
      break;
  }
  return prio;
}

// List scheduling: whenever a processor is free, dispatch the ready task of
// highest priority; ties are broken uniformly at random from the seed. The
// loop walks the finish events in time order, offering every processor that
// is free at the event time the current ready pool, in ascending processor
// index. A processor with nothing ready idles until the next event. The
// result is deterministic for a fixed (graph, p, policy, seed).
inline Schedule lsh_schedule(const TaskGraph& graph, std::uint32_t p,
                             PriorityPolicy policy, std::uint64_t seed) {
  if (p < 1) throw InvalidProcessorCountError("processor count must be >= 1");
  const std::size_t n = graph.num_tasks();
  const std::vector<TimeUnit> prio = compute_priorities(graph, policy);
  SplitMix64 rng(seed);

  Schedule sched;
  sched.p = p;
  sched.placements.resize(n);

  std::vector<TimeUnit> proc_free(p, 0);
  std::vector<std::size_t> preds_left(n, 0);
  std::vector<TimeUnit> ready_at(n, 0);
  std::vector<char> scheduled(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    preds_left[t] = graph.predecessors(static_cast<TaskId>(t)).size();
  }

  // Min-heap of event times; readiness only changes at finish events.
  std::priority_queue<TimeUnit, std::vector<TimeUnit>, std::greater<>> events;
  events.push(0);

  std::size_t remaining = n;
  std::vector<TaskId> candidates;
  while (remaining > 0) {
    if (events.empty()) {
      throw Error("internal: event queue drained with tasks unscheduled");
    }
    const TimeUnit now = events.top();
    events.pop();

    for (std::size_t q = 0; q < p && remaining > 0; ++q) {
      if (proc_free[q] > now) continue;

      candidates.clear();
      TimeUnit best = 0;
      for (std::size_t t = 0; t < n; ++t) {
        if (scheduled[t] || preds_left[t] != 0 || ready_at[t] > now) continue;
        TaskId id = static_cast<TaskId>(t);
        if (candidates.empty() || prio[id] > best) {
          candidates.clear();
          candidates.push_back(id);
          best = prio[id];
        } else if (prio[id] == best) {
          candidates.push_back(id);
        }
      }
      if (candidates.empty()) break;  // everyone else idles too

      TaskId chosen = candidates.size() == 1
                          ? candidates[0]
                          : candidates[rng.below(candidates.size())];
      const TimeUnit finish = now + graph.weight(chosen);
      sched.placements[chosen] = {chosen, static_cast<std::uint32_t>(q), now,
                                  finish};
      scheduled[chosen] = 1;
      proc_free[q] = finish;
      events.push(finish);
      --remaining;
      for (TaskId s : graph.successors(chosen)) {
        ready_at[s] = std::max(ready_at[s], finish);
        --preds_left[s];
      }
    }
  }

  sched.makespan = compute_makespan(sched.placements);
  return sched;
}

}  // namespace dagsched

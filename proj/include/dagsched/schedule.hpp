#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

// One executed task: half-open interval [start, finish) on one processor.
struct Placement {
  TaskId task = 0;
  std::uint32_t processor = 0;
  TimeUnit start = 0;
  TimeUnit finish = 0;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

struct Schedule {
  std::uint32_t p = 1;
  std::vector<Placement> placements;
  TimeUnit makespan = 0;
};

// Ordered task lists, one per processor.
using ProcessorQueues = std::vector<std::vector<TaskId>>;

inline TimeUnit compute_makespan(const std::vector<Placement>& placements) {
  TimeUnit m = 0;
  for (const Placement& pl : placements) m = std::max(m, pl.finish);
  return m;
}

inline TimeUnit makespan(const Schedule& s) { return s.makespan; }

// Executes the queues non-preemptively. Each processor runs its queue
// strictly in order; a task starts at the later of its processor becoming
// free and its last predecessor finishing, and a processor idles while its
// front task is not ready. Throws NotAPartitionError if the queues do not
// contain every task exactly once, and DeadlockError if no processor can
// make progress (impossible when every queue is height-ordered).
inline Schedule simulate_queues(const TaskGraph& graph,
                                const ProcessorQueues& queues) {
  const std::size_t n = graph.num_tasks();
  const std::size_t p = queues.size();

  std::vector<int> count(n, 0);
  for (const auto& q : queues) {
    for (TaskId t : q) {
      if (t >= n) {
        throw NotAPartitionError("queue references unknown task " +
                                 std::to_string(t));
      }
      ++count[t];
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (count[t] != 1) {
      throw NotAPartitionError("task " + std::to_string(t) + " appears " +
                               std::to_string(count[t]) + " times");
    }
  }

  Schedule sched;
  sched.p = static_cast<std::uint32_t>(std::max<std::size_t>(p, 1));
  sched.placements.resize(n);

  std::vector<std::size_t> next_ix(p, 0);
  std::vector<TimeUnit> proc_free(p, 0);
  std::vector<TimeUnit> finish(n, 0);
  std::vector<char> placed(n, 0);
  std::size_t remaining = n;

  while (remaining > 0) {
    bool progressed = false;
    for (std::size_t q = 0; q < p; ++q) {
      while (next_ix[q] < queues[q].size()) {
        TaskId t = queues[q][next_ix[q]];
        TimeUnit ready = 0;
        bool is_ready = true;
        for (TaskId pr : graph.predecessors(t)) {
          if (!placed[pr]) {
            is_ready = false;
            break;
          }
          ready = std::max(ready, finish[pr]);
        }
        if (!is_ready) break;

        TimeUnit start = std::max(proc_free[q], ready);
        finish[t] = start + graph.weight(t);
        sched.placements[t] = {t, static_cast<std::uint32_t>(q), start,
                               finish[t]};
        placed[t] = 1;
        proc_free[q] = finish[t];
        ++next_ix[q];
        --remaining;
        progressed = true;
      }
    }
    if (remaining > 0 && !progressed) {
      for (std::size_t q = 0; q < p; ++q) {
        if (next_ix[q] < queues[q].size()) {
          throw DeadlockError(
              "no queue can progress; front task " +
              std::to_string(queues[q][next_ix[q]]) + " on processor " +
              std::to_string(q) + " waits on a task queued behind it");
        }
      }
    }
  }

  sched.makespan = compute_makespan(sched.placements);
  return sched;
}

// Full schedule check against its graph:
//   (a) every task placed exactly once,
//   (b) no two placements on one processor overlap in time,
//   (c) finish(pred) <= start(succ) for every edge,
//   (d) finish = start + weight and start >= 0 for every placement.
// Intervals are half-open, so back-to-back execution is legal.
inline void validate_schedule(const TaskGraph& graph, const Schedule& sched) {
  const std::size_t n = graph.num_tasks();

  std::vector<int> count(n, 0);
  for (const Placement& pl : sched.placements) {
    if (pl.task >= n) {
      throw MissingTaskError("placement references unknown task " +
                             std::to_string(pl.task));
    }
    if (++count[pl.task] > 1) {
      throw DuplicateTaskError("task " + std::to_string(pl.task) +
                               " placed more than once");
    }
    if (pl.processor >= sched.p) {
      throw Error("placement of task " + std::to_string(pl.task) +
                  " names processor " + std::to_string(pl.processor) +
                  " but the schedule has p=" + std::to_string(sched.p));
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (count[t] == 0) {
      throw MissingTaskError("task " + std::to_string(t) + " is not placed");
    }
  }

  std::vector<TimeUnit> start(n, 0), finish(n, 0);
  for (const Placement& pl : sched.placements) {
    if (pl.start < 0 || pl.finish != pl.start + graph.weight(pl.task)) {
      throw BadDurationError(
          "task " + std::to_string(pl.task) + " runs [" +
          std::to_string(pl.start) + "," + std::to_string(pl.finish) +
          ") but has weight " + std::to_string(graph.weight(pl.task)));
    }
    start[pl.task] = pl.start;
    finish[pl.task] = pl.finish;
  }

  std::vector<std::vector<Placement>> by_proc(sched.p);
  for (const Placement& pl : sched.placements) {
    by_proc[pl.processor].push_back(pl);
  }
  for (auto& lane : by_proc) {
    std::sort(lane.begin(), lane.end(),
              [](const Placement& a, const Placement& b) {
                return a.start < b.start;
              });
    for (std::size_t i = 1; i < lane.size(); ++i) {
      if (lane[i - 1].finish > lane[i].start) {
        throw ProcessorOverlapError(
            "tasks " + std::to_string(lane[i - 1].task) + " and " +
            std::to_string(lane[i].task) + " overlap on processor " +
            std::to_string(lane[i].processor));
      }
    }
  }

  for (const Edge& e : graph.edges()) {
    if (finish[e.pred] > start[e.succ]) {
      throw PrecedenceViolationError(
          "task " + std::to_string(e.succ) + " starts at " +
          std::to_string(start[e.succ]) + " before its predecessor " +
          std::to_string(e.pred) + " finishes at " +
          std::to_string(finish[e.pred]));
    }
  }
}

}  // namespace dagsched

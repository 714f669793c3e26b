#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/schedule.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

namespace detail {

// Canonical order for breaking ties between equal-makespan schedules:
// compare (processor, start) per task, in task id order. Placements are
// already task-indexed when produced by simulate_queues.
inline bool placement_list_less(const Schedule& a, const Schedule& b) {
  for (std::size_t t = 0; t < a.placements.size(); ++t) {
    const Placement& x = a.placements[t];
    const Placement& y = b.placements[t];
    if (x.processor != y.processor) return x.processor < y.processor;
    if (x.start != y.start) return x.start < y.start;
  }
  return false;
}

inline void keep_better(Schedule& best, bool& have_best, Schedule&& cand) {
  if (!have_best || cand.makespan < best.makespan ||
      (cand.makespan == best.makespan && placement_list_less(cand, best))) {
    best = std::move(cand);
    have_best = true;
  }
}

}  // namespace detail

// Exhaustive minimum-makespan schedule for small instances: every
// assignment of tasks to processors, and for each assignment every
// height-ordered queue order (all permutations within runs of equal height,
// per queue). Equivalent to enumerating all valid chromosomes up to
// queue-order equivalence. Ties go to the lexicographically smallest
// placement list. Deterministic; throws TooLargeError beyond n > limit_n or
// p > 3. See brute_force_exhaustive for the audit of the height-ordered
// restriction.
inline Schedule brute_force_optimal(const TaskGraph& graph, std::uint32_t p,
                                    std::size_t limit_n = 9) {
  const std::size_t n = graph.num_tasks();
  if (p < 1) throw InvalidProcessorCountError("processor count must be >= 1");
  if (n > limit_n || p > 3) {
    throw TooLargeError("instance exceeds brute-force limits (n=" +
                        std::to_string(n) + " > " + std::to_string(limit_n) +
                        " or p=" + std::to_string(p) + " > 3)");
  }
  if (n == 0) {
    Schedule empty;
    empty.p = p;
    return empty;
  }

  std::vector<std::uint32_t> assign(n, 0);
  ProcessorQueues queues(p);
  Schedule best;
  bool have_best = false;

  // Equal-height runs within each queue, enumerated via next_permutation
  // from the sorted start so each run cycles back to sorted when done.
  struct Run {
    std::size_t queue, lo, hi;
  };
  std::vector<Run> runs;

  auto try_orders = [&](auto&& self, std::size_t run_ix) -> void {
    if (run_ix == runs.size()) {
      detail::keep_better(best, have_best, simulate_queues(graph, queues));
      return;
    }
    const Run& r = runs[run_ix];
    auto first = queues[r.queue].begin() + r.lo;
    auto last = queues[r.queue].begin() + r.hi;
    do {
      self(self, run_ix + 1);
    } while (std::next_permutation(first, last));
  };

  auto try_assignment = [&]() {
    for (auto& q : queues) q.clear();
    for (std::size_t t = 0; t < n; ++t) {
      queues[assign[t]].push_back(static_cast<TaskId>(t));
    }
    runs.clear();
    for (std::size_t q = 0; q < p; ++q) {
      std::sort(queues[q].begin(), queues[q].end(),
                [&](TaskId a, TaskId b) {
                  return graph.height(a) != graph.height(b)
                             ? graph.height(a) < graph.height(b)
                             : a < b;
                });
      std::size_t i = 0;
      while (i < queues[q].size()) {
        std::size_t j = i + 1;
        while (j < queues[q].size() &&
               graph.height(queues[q][j]) == graph.height(queues[q][i])) {
          ++j;
        }
        if (j - i > 1) runs.push_back({q, i, j});
        i = j;
      }
    }
    try_orders(try_orders, 0);
  };

  // Odometer over p^n assignments.
  for (;;) {
    try_assignment();
    std::size_t t = 0;
    while (t < n && ++assign[t] == p) {
      assign[t] = 0;
      ++t;
    }
    if (t == n) break;
  }
  return best;
}

// Audit mode: enumerates every assignment combined with every global task
// permutation (so per-queue orders are arbitrary interleavings, not just
// height-ordered ones), discarding orders that deadlock. Exists to check
// that restricting brute_force_optimal to height-ordered queues loses no
// optimum; far slower, hence the tighter cap.
inline Schedule brute_force_exhaustive(const TaskGraph& graph, std::uint32_t p,
                                       std::size_t limit_n = 6) {
  const std::size_t n = graph.num_tasks();
  if (p < 1) throw InvalidProcessorCountError("processor count must be >= 1");
  if (n > limit_n || p > 3) {
    throw TooLargeError("instance exceeds exhaustive-audit limits");
  }
  if (n == 0) {
    Schedule empty;
    empty.p = p;
    return empty;
  }

  std::vector<TaskId> perm(n);
  std::iota(perm.begin(), perm.end(), TaskId{0});
  std::vector<std::uint32_t> assign(n, 0);
  ProcessorQueues queues(p);
  Schedule best;
  bool have_best = false;

  do {
    for (;;) {
      for (auto& q : queues) q.clear();
      for (TaskId t : perm) queues[assign[t]].push_back(t);
      try {
        detail::keep_better(best, have_best, simulate_queues(graph, queues));
      } catch (const DeadlockError&) {
        // Order inverts a dependency on some queue; not a schedule.
      }
      std::size_t t = 0;
      while (t < n && ++assign[t] == p) {
        assign[t] = 0;
        ++t;
      }
      if (t == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return best;
}

}  // namespace dagsched

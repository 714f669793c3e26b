#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/lsh.hpp"
#include "dagsched/rng.hpp"
#include "dagsched/schedule.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

// One individual: a task queue per processor, each queue ordered by
// nondecreasing height. The queues partition the task set. Height ordering
// is what keeps the genetic operators closed over valid encodings and makes
// every individual decodable without deadlock.
struct Chromosome {
  ProcessorQueues queues;
};

inline bool chromosome_valid(const TaskGraph& graph, const Chromosome& c) {
  const std::size_t n = graph.num_tasks();
  std::vector<int> count(n, 0);
  for (const auto& q : c.queues) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] >= n) return false;
      ++count[q[i]];
      if (i > 0 && graph.height(q[i - 1]) > graph.height(q[i])) return false;
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (count[t] != 1) return false;
  }
  return true;
}

struct GaParams {
  int population_size = 20;
  int max_generations = 500;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  int elitism_count = 1;
  std::uint64_t seed = 0;
  // Replaces one random individual in the initial population with the
  // bottom-level list schedule. Off by default so GA-vs-LSH comparisons
  // stay independent.
  bool seed_with_lsh = false;
  // Stop early after this many generations without improvement; 0 disables.
  int stall_window = 0;
};

inline void validate(const GaParams& p) {
  if (p.population_size < 2) {
    throw InvalidParamsError("population size must be >= 2");
  }
  if (p.max_generations < 0) {
    throw InvalidParamsError("generation count must be >= 0");
  }
  if (p.crossover_rate < 0.0 || p.crossover_rate > 1.0 ||
      p.mutation_rate < 0.0 || p.mutation_rate > 1.0) {
    throw InvalidParamsError("rates must lie in [0,1]");
  }
  if (p.elitism_count < 0 || p.elitism_count >= p.population_size) {
    throw InvalidParamsError("elitism count must lie in [0, population)");
  }
  if (p.stall_window < 0) {
    throw InvalidParamsError("stall window must be >= 0");
  }
}

struct GaResult {
  Schedule best_schedule;
  TimeUnit best_makespan = 0;
  // Population-best makespan per generation, entry 0 being the initial
  // population. Nonincreasing whenever elitism_count >= 1.
  std::vector<TimeUnit> history;
};

// Uniformly random processor per task, then each queue ordered by height
// with uniformly random order among equal heights.
inline Chromosome random_chromosome(const TaskGraph& graph, std::uint32_t p,
                                    SplitMix64& rng) {
  const std::size_t n = graph.num_tasks();
  Chromosome c;
  c.queues.resize(p);
  for (std::size_t t = 0; t < n; ++t) {
    c.queues[rng.below(p)].push_back(static_cast<TaskId>(t));
  }
  for (auto& q : c.queues) {
    std::sort(q.begin(), q.end(), [&](TaskId a, TaskId b) {
      return graph.height(a) != graph.height(b)
                 ? graph.height(a) < graph.height(b)
                 : a < b;
    });
    // Shuffle each run of equal heights.
    std::size_t i = 0;
    while (i < q.size()) {
      std::size_t j = i + 1;
      while (j < q.size() && graph.height(q[j]) == graph.height(q[i])) ++j;
      for (std::size_t k = j - i; k > 1; --k) {
        std::swap(q[i + k - 1], q[i + rng.below(k)]);
      }
      i = j;
    }
  }
  return c;
}

inline Schedule decode(const TaskGraph& graph, const Chromosome& c) {
  return simulate_queues(graph, c.queues);
}

// Selection weights from makespans: worst gets 1, lower finish times get
// proportionally more. Positive everywhere, so every individual stays
// selectable.
inline std::vector<TimeUnit> fitness_weights(
    const std::vector<TimeUnit>& makespans) {
  if (makespans.empty()) throw EmptyInputError("no makespans");
  const TimeUnit worst = *std::max_element(makespans.begin(), makespans.end());
  std::vector<TimeUnit> w(makespans.size());
  for (std::size_t i = 0; i < makespans.size(); ++i) {
    w[i] = worst - makespans[i] + 1;
  }
  return w;
}

// Height-boundary crossover. A cut height c is drawn uniformly from
// {1..max_height}; on every queue the tasks of height < c form the prefix
// and the rest the suffix, and the children recombine one parent's prefixes
// with the other's suffixes. The set of tasks below the cut is fixed by the
// graph, not the parent, so both children inherit a partition; prefixes and
// suffixes are height-ordered on either side of the cut, so ordering holds
// too. With max_height == 0 there is no usable cut and the parents are
// returned unchanged.
inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& a,
                                                   const Chromosome& b,
                                                   const TaskGraph& graph,
                                                   SplitMix64& rng) {
  const int max_h = graph.max_height();
  if (max_h < 1) return {a, b};
  const int cut = 1 + static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(max_h)));

  const std::size_t p = a.queues.size();
  Chromosome child_a, child_b;
  child_a.queues.resize(p);
  child_b.queues.resize(p);
  auto split_at_cut = [&](const std::vector<TaskId>& q) {
    std::size_t i = 0;
    while (i < q.size() && graph.height(q[i]) < cut) ++i;
    return i;
  };
  for (std::size_t q = 0; q < p; ++q) {
    const std::size_t ca = split_at_cut(a.queues[q]);
    const std::size_t cb = split_at_cut(b.queues[q]);
    child_a.queues[q].assign(a.queues[q].begin(), a.queues[q].begin() + ca);
    child_a.queues[q].insert(child_a.queues[q].end(),
                             b.queues[q].begin() + cb, b.queues[q].end());
    child_b.queues[q].assign(b.queues[q].begin(), b.queues[q].begin() + cb);
    child_b.queues[q].insert(child_b.queues[q].end(),
                             a.queues[q].begin() + ca, a.queues[q].end());
  }
  return {child_a, child_b};
}

// Swap mutation between two tasks of equal height: a height with at least
// two tasks is drawn uniformly, then two distinct tasks of that height, and
// their positions are exchanged (possibly across queues). Equal heights
// keep both queue orderings intact. If every height has a single task the
// chromosome is returned unchanged.
inline Chromosome mutate(const Chromosome& c, const TaskGraph& graph,
                         SplitMix64& rng) {
  const std::size_t n = graph.num_tasks();
  std::vector<std::vector<TaskId>> by_height;
  for (std::size_t t = 0; t < n; ++t) {
    const int h = graph.height(static_cast<TaskId>(t));
    if (by_height.size() <= static_cast<std::size_t>(h)) {
      by_height.resize(h + 1);
    }
    by_height[h].push_back(static_cast<TaskId>(t));
  }
  std::vector<int> eligible;
  for (std::size_t h = 0; h < by_height.size(); ++h) {
    if (by_height[h].size() >= 2) eligible.push_back(static_cast<int>(h));
  }
  if (eligible.empty()) return c;

  const int h = eligible[rng.below(eligible.size())];
  const auto& peers = by_height[h];
  const std::size_t i = rng.below(peers.size());
  std::size_t j = rng.below(peers.size() - 1);
  if (j >= i) ++j;
  const TaskId first = peers[i];
  const TaskId second = peers[j];

  Chromosome out = c;
  for (auto& q : out.queues) {
    for (TaskId& t : q) {
      if (t == first) {
        t = second;
      } else if (t == second) {
        t = first;
      }
    }
  }
  return out;
}

// Builds a height-ordered chromosome out of an existing schedule: tasks go
// to the processor that ran them, ordered by height with start time and id
// as tie-breaks.
inline Chromosome chromosome_from_schedule(const TaskGraph& graph,
                                           const Schedule& sched) {
  Chromosome c;
  c.queues.resize(sched.p);
  for (const Placement& pl : sched.placements) {
    c.queues[pl.processor].push_back(pl.task);
  }
  for (auto& q : c.queues) {
    std::sort(q.begin(), q.end(), [&](TaskId a, TaskId b) {
      if (graph.height(a) != graph.height(b)) {
        return graph.height(a) < graph.height(b);
      }
      if (sched.placements[a].start != sched.placements[b].start) {
        return sched.placements[a].start < sched.placements[b].start;
      }
      return a < b;
    });
  }
  return c;
}

// Generational loop: fitness-proportional selection of population_size
// individuals, crossover over consecutive pairs at crossover_rate, swap
// mutation at mutation_rate, and the elitism_count best of the previous
// generation carried over unchanged (appended after the offspring). Runs
// exactly max_generations generations unless stall_window cuts it short.
// Deterministic for a fixed (graph, p, params).
inline GaResult ga_schedule(const TaskGraph& graph, std::uint32_t p,
                            const GaParams& params) {
  validate(params);
  if (p < 1) throw InvalidProcessorCountError("processor count must be >= 1");

  const std::size_t pop_size = static_cast<std::size_t>(params.population_size);
  SplitMix64 rng(params.seed);

  std::vector<Chromosome> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    pop.push_back(random_chromosome(graph, p, rng));
  }
  if (params.seed_with_lsh) {
    pop[0] = chromosome_from_schedule(
        graph, lsh_schedule(graph, p, PriorityPolicy::BottomLevel,
                            derive_seed({params.seed, 0x15f})));
  }

  GaResult result;
  std::vector<TimeUnit> makespans(pop_size);
  bool have_best = false;
  int since_improvement = 0;

  auto evaluate = [&]() {
    TimeUnit gen_best = 0;
    std::size_t gen_best_ix = 0;
    for (std::size_t i = 0; i < pop_size; ++i) {
      makespans[i] = decode(graph, pop[i]).makespan;
      if (i == 0 || makespans[i] < gen_best) {
        gen_best = makespans[i];
        gen_best_ix = i;
      }
    }
    result.history.push_back(gen_best);
    if (!have_best || gen_best < result.best_makespan) {
      result.best_makespan = gen_best;
      result.best_schedule = decode(graph, pop[gen_best_ix]);
      have_best = true;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
  };

  evaluate();

  std::vector<std::size_t> order(pop_size);
  for (int gen = 0; gen < params.max_generations; ++gen) {
    if (params.stall_window > 0 && since_improvement >= params.stall_window) {
      break;
    }

    // Roulette selection of pop_size parents.
    const std::vector<TimeUnit> weights = fitness_weights(makespans);
    const TimeUnit total =
        std::accumulate(weights.begin(), weights.end(), TimeUnit{0});
    std::vector<Chromosome> selected;
    selected.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
      TimeUnit pick = static_cast<TimeUnit>(
          rng.below(static_cast<std::uint64_t>(total)));
      std::size_t ix = 0;
      while (pick >= weights[ix]) {
        pick -= weights[ix];
        ++ix;
      }
      selected.push_back(pop[ix]);
    }

    for (std::size_t i = 0; i + 1 < pop_size; i += 2) {
      if (rng.chance(params.crossover_rate)) {
        auto [ca, cb] = crossover(selected[i], selected[i + 1], graph, rng);
        selected[i] = std::move(ca);
        selected[i + 1] = std::move(cb);
      }
    }
    for (std::size_t i = 0; i < pop_size; ++i) {
      if (rng.chance(params.mutation_rate)) {
        selected[i] = mutate(selected[i], graph, rng);
      }
    }

    // Elites replace the tail of the offspring, lowest makespan first
    // (index order on ties).
    const std::size_t elites = static_cast<std::size_t>(params.elitism_count);
    if (elites > 0) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return makespans[a] < makespans[b];
                       });
      for (std::size_t e = 0; e < elites; ++e) {
        selected[pop_size - elites + e] = pop[order[e]];
      }
    }

    pop = std::move(selected);
    evaluate();
  }

  return result;
}

}  // namespace dagsched

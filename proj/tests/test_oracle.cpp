#include <catch2/catch_amalgamated.hpp>

#include "dagsched/ga.hpp"
#include "dagsched/lsh.hpp"
#include "dagsched/oracle.hpp"
#include "dagsched/taskgraph.hpp"

using namespace dagsched;

namespace {

TaskGraph diamond() {
  return TaskGraph({2, 3, 5, 1}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("chains cannot parallelize") {
  const TaskGraph chain({2, 3, 4}, {{0, 1}, {1, 2}});
  CHECK(brute_force_optimal(chain, 2).makespan == 9);
}

TEST_CASE("independent tasks pack onto two processors") {
  const TaskGraph indep({5, 3, 2}, {});
  CHECK(brute_force_optimal(indep, 2).makespan == 5);
}

TEST_CASE("diamond optimum equals its critical path") {
  const TaskGraph g = diamond();
  const Schedule s = brute_force_optimal(g, 2);
  CHECK(s.makespan == 8);
  CHECK(s.makespan == g.critical_path_length());
  CHECK_NOTHROW(validate_schedule(g, s));
}

TEST_CASE("instance caps are enforced") {
  const TaskGraph big = generate_random({.n = 20, .seed = 1});
  CHECK_THROWS_AS(brute_force_optimal(big, 2), TooLargeError);
  const TaskGraph small = generate_random({.n = 4, .seed = 1});
  CHECK_THROWS_AS(brute_force_optimal(small, 4), TooLargeError);
  CHECK_THROWS_AS(brute_force_optimal(small, 0), InvalidProcessorCountError);
  CHECK_NOTHROW(brute_force_optimal(small, 3));
}

TEST_CASE("oracle is deterministic") {
  const TaskGraph g = generate_random({.n = 7, .seed = 3});
  const Schedule a = brute_force_optimal(g, 2);
  const Schedule b = brute_force_optimal(g, 2);
  CHECK(a.placements == b.placements);
}

TEST_CASE("oracle dominates the heuristics and respects the lower bounds") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const TaskGraph g = generate_random({.n = 2 + seed % 7, .seed = seed});
    const std::uint32_t p = 2;
    const Schedule opt = brute_force_optimal(g, p);
    CHECK_NOTHROW(validate_schedule(g, opt));

    const TimeUnit bound = std::max<TimeUnit>(
        g.critical_path_length(), (g.total_work() + p - 1) / p);
    CHECK(opt.makespan >= bound);

    for (auto policy : {PriorityPolicy::BottomLevel, PriorityPolicy::Height,
                        PriorityPolicy::Weight}) {
      CHECK(opt.makespan <= lsh_schedule(g, p, policy, seed).makespan);
    }
    GaParams ga;
    ga.max_generations = 60;
    ga.seed = seed;
    CHECK(opt.makespan <= ga_schedule(g, p, ga).best_makespan);
  }
}

TEST_CASE("height-ordered enumeration matches the exhaustive audit") {
  // The oracle only walks height-ordered queue orders; the audit walks
  // every (assignment, queue order) pair. Their optima must agree.
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 2 + seed % 5;  // up to 6 tasks
    const TaskGraph g =
        generate_random({.n = n, .min_succ = 1, .max_succ = 3, .seed = seed});
    const std::uint32_t p = 2 + seed % 2;
    CHECK(brute_force_optimal(g, p).makespan ==
          brute_force_exhaustive(g, p).makespan);
  }
}

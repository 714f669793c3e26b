// Command-line front end: graph generation, scheduling, Gantt rendering,
// benchmarking and reports. Exit codes: 0 ok, 1 data error, 2 usage error,
// 3 brute-force limits exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dagsched/dagsched.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dagsched::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dagsched::Error("cannot write " + path);
  out << data;
}

struct GaFlags {
  int pop = 20;
  int gens = 500;
  double cx_rate = 0.8;
  double mut_rate = 0.1;
  int elitism = 1;
  int stall = 0;
  bool seed_with_lsh = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pop", pop, "GA population size")
        ->check(CLI::Range(2, 1000000));
    cmd->add_option("--gens", gens, "GA generation count")
        ->check(CLI::Range(0, 100000000));
    cmd->add_option("--cx-rate", cx_rate, "GA crossover probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mut-rate", mut_rate, "GA mutation probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--elitism", elitism, "individuals carried unchanged")
        ->check(CLI::Range(0, 1000000));
    cmd->add_option("--stall", stall,
                    "stop after this many generations without improvement "
                    "(0 = run all generations)")
        ->check(CLI::Range(0, 100000000));
    cmd->add_flag("--seed-with-lsh", seed_with_lsh,
                  "put the bottom-level list schedule into the initial "
                  "population");
  }

  dagsched::GaParams params(std::uint64_t seed) const {
    dagsched::GaParams ga;
    ga.population_size = pop;
    ga.max_generations = gens;
    ga.crossover_rate = cx_rate;
    ga.mutation_rate = mut_rate;
    ga.elitism_count = elitism;
    ga.stall_window = stall;
    ga.seed_with_lsh = seed_with_lsh;
    ga.seed = seed;
    return ga;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dagsched: multiprocessor DAG scheduling toolkit"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen_cmd = app.add_subcommand("generate", "generate a random task graph");
  std::size_t gen_tasks = 0;
  std::uint64_t gen_seed = 0;
  dagsched::GeneratorParams gen_ranges;
  std::string gen_out;
  gen_cmd->add_option("--tasks", gen_tasks, "number of tasks")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--min-succ", gen_ranges.min_succ, "min successors")
      ->check(CLI::Range(1, 1000000));
  gen_cmd->add_option("--max-succ", gen_ranges.max_succ, "max successors")
      ->check(CLI::Range(1, 1000000));
  gen_cmd->add_option("--min-w", gen_ranges.min_w, "min task weight")
      ->check(CLI::Range(1, 1000000000));
  gen_cmd->add_option("--max-w", gen_ranges.max_w, "max task weight")
      ->check(CLI::Range(1, 1000000000));
  gen_cmd->add_option("-o,--output", gen_out, "graph file (stdout if omitted)");

  // --- schedule ---
  auto* sch_cmd = app.add_subcommand("schedule", "schedule a task graph");
  std::string sch_graph, sch_alg, sch_out;
  std::string sch_policy = "bottom_level";
  std::uint32_t sch_procs = 0;
  std::uint64_t sch_seed = 0;
  GaFlags sch_ga;
  sch_cmd->add_option("graph", sch_graph, "graph file")->required();
  sch_cmd->add_option("--alg", sch_alg, "lsh | ga | bruteforce")
      ->required()
      ->check(CLI::IsMember({"lsh", "ga", "bruteforce"}));
  sch_cmd->add_option("--procs", sch_procs, "processor count")
      ->required()
      ->check(CLI::Range(1u, 1000000u));
  sch_cmd->add_option("--policy", sch_policy, "LSH priority policy")
      ->check(CLI::IsMember({"bottom_level", "height", "weight"}));
  sch_cmd->add_option("--seed", sch_seed, "tie-break / GA seed");
  sch_ga.attach(sch_cmd);
  sch_cmd->add_option("-o,--output", sch_out, "schedule file");

  // --- gantt ---
  auto* gantt_cmd = app.add_subcommand("gantt", "render a schedule");
  std::string gt_graph, gt_sched, gt_out;
  gantt_cmd->add_option("graph", gt_graph, "graph file")->required();
  gantt_cmd->add_option("schedule", gt_sched, "schedule file")->required();
  gantt_cmd->add_option("-o,--output", gt_out,
                        "SVG output file (ASCII to stdout if omitted)");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "run the GA vs LSH benchmark");
  dagsched::BenchConfig bench_config;
  GaFlags bench_ga;
  std::string bench_policy = "bottom_level";
  std::string bench_out;
  bool bench_timings = false;
  bench_cmd->add_option("--task-counts", bench_config.task_counts,
                        "comma-separated task counts")
      ->delimiter(',');
  bench_cmd->add_option("--proc-counts", bench_config.processor_counts,
                        "comma-separated processor counts")
      ->delimiter(',');
  bench_cmd->add_option("--seeds-per-cell", bench_config.seeds_per_cell,
                        "paired seeds per (n, p) cell")
      ->check(CLI::Range(1, 1000000));
  bench_cmd->add_option("--seed", bench_config.base_seed, "base seed");
  bench_cmd->add_option("--min-succ", bench_config.generator.min_succ)
      ->check(CLI::Range(1, 1000000));
  bench_cmd->add_option("--max-succ", bench_config.generator.max_succ)
      ->check(CLI::Range(1, 1000000));
  bench_cmd->add_option("--min-w", bench_config.generator.min_w)
      ->check(CLI::Range(1, 1000000000));
  bench_cmd->add_option("--max-w", bench_config.generator.max_w)
      ->check(CLI::Range(1, 1000000000));
  bench_cmd->add_option("--policy", bench_policy, "LSH priority policy")
      ->check(CLI::IsMember({"bottom_level", "height", "weight"}));
  bench_ga.attach(bench_cmd);
  bench_cmd->add_flag("--with-oracle", bench_config.with_oracle,
                      "add ORACLE rows on instances within brute-force caps");
  bench_cmd->add_flag("--timings", bench_timings,
                      "record measured wall times (off keeps output "
                      "byte-identical across reruns)");
  bench_cmd->add_option("--jobs", bench_config.jobs, "worker threads")
      ->check(CLI::Range(1, 4096));
  bench_cmd->add_option("-o,--output", bench_out,
                        "results CSV (stdout if omitted)");

  // --- report ---
  auto* rep_cmd = app.add_subcommand("report", "summarize a results CSV");
  std::string rep_csv, rep_svg, rep_summary_csv;
  rep_cmd->add_option("results", rep_csv, "results CSV file")->required();
  rep_cmd->add_option("-o,--output", rep_svg, "trend chart SVG file");
  rep_cmd->add_option("--summary-csv", rep_summary_csv,
                      "write the per-cell summary as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 2;
  }

  try {
    if (gen_cmd->parsed()) {
      dagsched::GeneratorParams params = gen_ranges;
      params.n = gen_tasks;
      params.seed = gen_seed;
      try {
        dagsched::validate(params);
      } catch (const dagsched::InvalidParamsError& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      write_output(gen_out, dagsched::serialize(dagsched::generate_random(params)));
      return 0;
    }

    if (sch_cmd->parsed()) {
      const dagsched::TaskGraph graph =
          dagsched::parse_task_graph(read_file(sch_graph));
      dagsched::Schedule sched;
      if (sch_alg == "lsh") {
        sched = dagsched::lsh_schedule(
            graph, sch_procs, dagsched::parse_policy(sch_policy), sch_seed);
      } else if (sch_alg == "ga") {
        sched = dagsched::ga_schedule(graph, sch_procs,
                                      sch_ga.params(sch_seed))
                    .best_schedule;
      } else {
        sched = dagsched::brute_force_optimal(graph, sch_procs);
      }
      if (!sch_out.empty()) write_output(sch_out, dagsched::serialize(sched));
      std::cout << sch_alg << "," << graph.num_tasks() << "," << sch_procs
                << "," << sched.makespan << ","
                << graph.critical_path_length() << "\n";
      return 0;
    }

    if (gantt_cmd->parsed()) {
      const dagsched::TaskGraph graph =
          dagsched::parse_task_graph(read_file(gt_graph));
      const dagsched::Schedule sched =
          dagsched::parse_schedule(read_file(gt_sched));
      dagsched::validate_schedule(graph, sched);
      if (gt_out.empty()) {
        std::cout << dagsched::render_gantt_ascii(sched);
      } else {
        write_output(gt_out, dagsched::render_gantt_svg(sched));
      }
      return 0;
    }

    if (bench_cmd->parsed()) {
      bench_config.lsh_policy = dagsched::parse_policy(bench_policy);
      bench_config.ga = bench_ga.params(0);
      try {
        dagsched::validate(bench_config);
      } catch (const dagsched::InvalidParamsError& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      const std::vector<dagsched::BenchRow> rows =
          dagsched::run_suite(bench_config);
      std::ostringstream csv;
      dagsched::write_csv(rows, csv, bench_timings);
      write_output(bench_out, csv.str());
      return 0;
    }

    if (rep_cmd->parsed()) {
      std::istringstream is(read_file(rep_csv));
      const std::vector<dagsched::BenchRow> rows = dagsched::read_csv(is);
      if (rows.empty()) {
        std::cerr << "no rows in " << rep_csv << "\n";
        return 1;
      }
      const auto summaries = dagsched::aggregate(rows);
      std::cout << dagsched::format_summary_table(summaries);
      std::cout << dagsched::format_height_table(dagsched::height_report(rows));
      if (!rep_summary_csv.empty()) {
        write_output(rep_summary_csv, dagsched::summary_csv(summaries));
      }
      if (!rep_svg.empty()) {
        write_output(rep_svg, dagsched::trend_chart_svg(summaries));
      }
      return 0;
    }
  } catch (const dagsched::TooLargeError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const dagsched::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}

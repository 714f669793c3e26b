#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dagsched/errors.hpp"
#include "dagsched/ga.hpp"
#include "dagsched/io.hpp"
#include "dagsched/lsh.hpp"
#include "dagsched/oracle.hpp"
#include "dagsched/rng.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

struct BenchConfig {
  std::vector<std::size_t> task_counts = {8,  17, 23, 28, 33, 39, 44, 49,
                                          54, 59, 69, 79, 89, 99, 100, 110};
  std::vector<std::uint32_t> processor_counts = {2, 3, 4};
  int seeds_per_cell = 1;
  std::uint64_t base_seed = 42;
  // Weight and successor ranges; n and seed are overwritten per cell.
  GeneratorParams generator;
  // GA settings; the seed is overwritten per cell.
  GaParams ga;
  PriorityPolicy lsh_policy = PriorityPolicy::BottomLevel;
  // Adds ORACLE rows on instances within the brute-force caps.
  bool with_oracle = false;
  std::size_t oracle_limit = 8;
  // Worker threads for independent cells; results are merged in cell order
  // so the output does not depend on this.
  int jobs = 1;
};

inline void validate(const BenchConfig& config) {
  if (config.task_counts.empty() || config.processor_counts.empty()) {
    throw InvalidParamsError("task and processor count lists must be nonempty");
  }
  if (config.seeds_per_cell < 1) {
    throw InvalidParamsError("seeds per cell must be >= 1");
  }
  for (std::size_t n : config.task_counts) {
    if (n < 1) throw InvalidParamsError("task counts must be >= 1");
  }
  for (std::uint32_t p : config.processor_counts) {
    if (p < 1) throw InvalidParamsError("processor counts must be >= 1");
  }
  if (config.jobs < 1) throw InvalidParamsError("jobs must be >= 1");
  GeneratorParams g = config.generator;
  g.n = 1;
  validate(g);
  validate(config.ga);
}

struct BenchRow {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::string graph_digest;
  int graph_height = 0;
  std::string algorithm;  // GA | LSH | ORACLE
  TimeUnit finish_time = 0;
  TimeUnit t_cp = 0;
  TimeUnit total_work = 0;
  std::int64_t wall_time_ms = 0;
  std::string params_digest;
};

// Digest of everything that shapes the results, echoed into every row so a
// CSV is self-describing.
inline std::string params_digest(const BenchConfig& config) {
  std::ostringstream os;
  os << "succ=" << config.generator.min_succ << ".." << config.generator.max_succ
     << ";w=" << config.generator.min_w << ".." << config.generator.max_w
     << ";pop=" << config.ga.population_size
     << ";gens=" << config.ga.max_generations;
  char buf[64];
  std::snprintf(buf, sizeof(buf), ";cx=%.17g;mut=%.17g",
                config.ga.crossover_rate, config.ga.mutation_rate);
  os << buf << ";elite=" << config.ga.elitism_count
     << ";stall=" << config.ga.stall_window
     << ";lsh_seeded=" << (config.ga.seed_with_lsh ? 1 : 0)
     << ";policy=" << to_string(config.lsh_policy)
     << ";base=" << config.base_seed;
  return to_hex(fnv1a64(os.str()));
}

// Runs LSH and GA (and optionally the oracle) on one generated graph per
// (n, p, seed) cell. Both algorithms see the identical graph; the graph
// seed is base_seed + seed_index and the per-algorithm tie-break seeds are
// derived from it, so rows are a pure function of the config. Rows come
// back sorted by (n, p, seed, algorithm).
inline std::vector<BenchRow> run_suite(const BenchConfig& config) {
  validate(config);
  const std::string digest = params_digest(config);

  struct Cell {
    std::size_t n;
    std::uint32_t p;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t n : config.task_counts) {
    for (std::uint32_t p : config.processor_counts) {
      for (int k = 0; k < config.seeds_per_cell; ++k) {
        cells.push_back({n, p, config.base_seed + static_cast<std::uint64_t>(k)});
      }
    }
  }

  auto run_cell = [&](const Cell& cell) {
    std::vector<BenchRow> rows;
    GeneratorParams gp = config.generator;
    gp.n = cell.n;
    gp.seed = cell.seed;
    const TaskGraph graph = generate_random(gp);

    BenchRow base;
    base.n = cell.n;
    base.p = cell.p;
    base.seed = cell.seed;
    base.graph_digest = graph_digest(graph);
    base.graph_height = graph.max_height();
    base.t_cp = graph.critical_path_length();
    base.total_work = graph.total_work();
    base.params_digest = digest;

    using clock = std::chrono::steady_clock;

    {
      GaParams ga = config.ga;
      ga.seed = derive_seed({cell.seed, cell.n, cell.p, 2});
      const auto t0 = clock::now();
      const GaResult res = ga_schedule(graph, cell.p, ga);
      const auto t1 = clock::now();
      if (ga.elitism_count >= 1) {
        for (std::size_t i = 1; i < res.history.size(); ++i) {
          if (res.history[i] > res.history[i - 1]) {
            throw Error("internal: GA history increased despite elitism");
          }
        }
      }
      BenchRow row = base;
      row.algorithm = "GA";
      row.finish_time = res.best_makespan;
      row.wall_time_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
      rows.push_back(row);
    }
    {
      const auto t0 = clock::now();
      const Schedule sched = lsh_schedule(
          graph, cell.p, config.lsh_policy,
          derive_seed({cell.seed, cell.n, cell.p, 1}));
      const auto t1 = clock::now();
      BenchRow row = base;
      row.algorithm = "LSH";
      row.finish_time = sched.makespan;
      row.wall_time_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
      rows.push_back(row);
    }
    if (config.with_oracle && cell.n <= config.oracle_limit && cell.p <= 3) {
      const auto t0 = clock::now();
      const Schedule sched =
          brute_force_optimal(graph, cell.p, config.oracle_limit);
      const auto t1 = clock::now();
      BenchRow row = base;
      row.algorithm = "ORACLE";
      row.finish_time = sched.makespan;
      row.wall_time_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
      rows.push_back(row);
    }

    for (const BenchRow& row : rows) {
      const TimeUnit bound = std::max<TimeUnit>(
          row.t_cp, (row.total_work + cell.p - 1) / cell.p);
      if (row.finish_time < bound) {
        throw Error("internal: " + row.algorithm + " finish time " +
                    std::to_string(row.finish_time) +
                    " beats the lower bound " + std::to_string(bound));
      }
    }
    return rows;
  };

  std::vector<std::vector<BenchRow>> per_cell(cells.size());
  const int jobs = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      per_cell[i] = run_cell(cells[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (int j = 0; j < jobs; ++j) {
      workers.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          per_cell[i] = run_cell(cells[i]);
        }
      }));
    }
    for (auto& w : workers) w.get();
  }

  std::vector<BenchRow> rows;
  for (auto& cell_rows : per_cell) {
    rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
  }
  std::sort(rows.begin(), rows.end(),
            [](const BenchRow& a, const BenchRow& b) {
              if (a.n != b.n) return a.n < b.n;
              if (a.p != b.p) return a.p < b.p;
              if (a.seed != b.seed) return a.seed < b.seed;
              return a.algorithm < b.algorithm;
            });
  return rows;
}

inline const char* kCsvHeader =
    "n,p,seed,graph_digest,graph_height,algorithm,finish_time,t_cp,"
    "total_work,wall_time_ms,params_digest";

// Measured wall times vary run to run, so they are zeroed by default to
// keep result files byte-identical for identical configs; pass
// with_timings=true to record them.
inline void write_csv(const std::vector<BenchRow>& rows, std::ostream& os,
                      bool with_timings = false) {
  os << kCsvHeader << "\n";
  for (const BenchRow& r : rows) {
    os << r.n << ',' << r.p << ',' << r.seed << ',' << r.graph_digest << ','
       << r.graph_height << ',' << r.algorithm << ',' << r.finish_time << ','
       << r.t_cp << ',' << r.total_work << ','
       << (with_timings ? r.wall_time_ms : 0) << ',' << r.params_digest
       << "\n";
  }
}

inline std::vector<BenchRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw ParseError("results CSV: missing or unexpected header");
  }
  std::vector<BenchRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 11) {
      throw ParseError("results CSV line " + std::to_string(lineno) +
                       ": expected 11 fields, got " +
                       std::to_string(fields.size()));
    }
    try {
      BenchRow r;
      r.n = std::stoull(fields[0]);
      r.p = static_cast<std::uint32_t>(std::stoul(fields[1]));
      r.seed = std::stoull(fields[2]);
      r.graph_digest = fields[3];
      r.graph_height = std::stoi(fields[4]);
      r.algorithm = fields[5];
      r.finish_time = std::stoll(fields[6]);
      r.t_cp = std::stoll(fields[7]);
      r.total_work = std::stoll(fields[8]);
      r.wall_time_ms = std::stoll(fields[9]);
      r.params_digest = fields[10];
      if (r.algorithm != "GA" && r.algorithm != "LSH" &&
          r.algorithm != "ORACLE") {
        throw ParseError("results CSV line " + std::to_string(lineno) +
                         ": unknown algorithm '" + r.algorithm + "'");
      }
      rows.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("results CSV line " + std::to_string(lineno) +
                       ": malformed numeric field");
    }
  }
  return rows;
}

// Per-(n, p, algorithm) aggregate. The mean is kept as an exact rational
// (sum, count) and rendered to two decimals on demand.
struct SummaryRow {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::string algorithm;
  std::size_t count = 0;
  TimeUnit sum = 0;
  TimeUnit min = 0;
  TimeUnit max = 0;
};

inline std::string mean_2dp(TimeUnit sum, std::size_t count) {
  // round(100*sum/count), half away from zero; sums here are nonnegative.
  const TimeUnit scaled = (200 * sum + static_cast<TimeUnit>(count)) /
                          (2 * static_cast<TimeUnit>(count));
  return std::to_string(scaled / 100) + "." +
         (scaled % 100 < 10 ? "0" : "") + std::to_string(scaled % 100);
}

inline std::string mean_2dp(const SummaryRow& s) {
  return mean_2dp(s.sum, s.count);
}

// Groups rows in first-appearance order; permutation-invariant within a
// group.
inline std::vector<SummaryRow> aggregate(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw EmptyInputError("no rows to aggregate");
  std::vector<SummaryRow> out;
  for (const BenchRow& r : rows) {
    SummaryRow* s = nullptr;
    for (SummaryRow& cand : out) {
      if (cand.n == r.n && cand.p == r.p && cand.algorithm == r.algorithm) {
        s = &cand;
        break;
      }
    }
    if (s == nullptr) {
      out.push_back({r.n, r.p, r.algorithm, 0, 0, r.finish_time, r.finish_time});
      s = &out.back();
    }
    ++s->count;
    s->sum += r.finish_time;
    s->min = std::min(s->min, r.finish_time);
    s->max = std::max(s->max, r.finish_time);
  }
  return out;
}

struct HeightRow {
  int height = 0;
  std::optional<TimeUnit> ga_min;
  std::optional<TimeUnit> lsh_min;
};

// Best observed finish time per graph height, one row per height seen,
// ascending. A missing algorithm at some height stays absent, never zero.
inline std::vector<HeightRow> height_report(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw EmptyInputError("no rows for the height report");
  std::vector<HeightRow> out;
  for (const BenchRow& r : rows) {
    if (r.algorithm != "GA" && r.algorithm != "LSH") continue;
    HeightRow* h = nullptr;
    for (HeightRow& cand : out) {
      if (cand.height == r.graph_height) {
        h = &cand;
        break;
      }
    }
    if (h == nullptr) {
      out.push_back({r.graph_height, std::nullopt, std::nullopt});
      h = &out.back();
    }
    auto& slot = r.algorithm == "GA" ? h->ga_min : h->lsh_min;
    slot = slot ? std::min(*slot, r.finish_time) : r.finish_time;
  }
  std::sort(out.begin(), out.end(),
            [](const HeightRow& a, const HeightRow& b) {
              return a.height < b.height;
            });
  return out;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) {
  return s + std::string(s.size() >= w ? 0 : w - s.size(), ' ');
}

}  // namespace detail

// Plain-text tables in the classic "No. of tasks | GA finish time | LSH
// finish time" layout, one block per processor count.
inline std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::vector<std::uint32_t> procs;
  for (const SummaryRow& s : rows) {
    if (std::find(procs.begin(), procs.end(), s.p) == procs.end()) {
      procs.push_back(s.p);
    }
  }
  std::sort(procs.begin(), procs.end());

  const bool with_oracle =
      std::any_of(rows.begin(), rows.end(),
                  [](const SummaryRow& s) { return s.algorithm == "ORACLE"; });

  std::string out;
  for (std::uint32_t p : procs) {
    std::vector<std::size_t> ns;
    for (const SummaryRow& s : rows) {
      if (s.p == p && std::find(ns.begin(), ns.end(), s.n) == ns.end()) {
        ns.push_back(s.n);
      }
    }
    std::sort(ns.begin(), ns.end());

    out += "Processors: " + std::to_string(p) + "\n";
    out += detail::pad("No. of tasks", 14) + "| " +
           detail::pad("GA finish time", 16) + "| ";
    out += with_oracle ? detail::pad("LSH finish time", 16) + "| ORACLE finish time"
                       : "LSH finish time";
    out += "\n";
    for (std::size_t n : ns) {
      auto cell = [&](const char* alg) -> std::string {
        for (const SummaryRow& s : rows) {
          if (s.p == p && s.n == n && s.algorithm == alg) return mean_2dp(s);
        }
        return "-";
      };
      out += detail::pad(std::to_string(n), 14) + "| " +
             detail::pad(cell("GA"), 16) + "| ";
      out += with_oracle ? detail::pad(cell("LSH"), 16) + "| " + cell("ORACLE")
                         : cell("LSH");
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

inline std::string format_height_table(const std::vector<HeightRow>& rows) {
  std::string out;
  out += detail::pad("Height", 8) + "| " +
         detail::pad("Best minimum time GA", 22) + "| LSH minimum time\n";
  for (const HeightRow& h : rows) {
    out += detail::pad(std::to_string(h.height), 8) + "| " +
           detail::pad(h.ga_min ? std::to_string(*h.ga_min) : "-", 22) + "| " +
           (h.lsh_min ? std::to_string(*h.lsh_min) : "-") + "\n";
  }
  return out;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "n,p,algorithm,count,mean,min,max\n";
  for (const SummaryRow& s : rows) {
    out += std::to_string(s.n) + "," + std::to_string(s.p) + "," +
           s.algorithm + "," + std::to_string(s.count) + "," + mean_2dp(s) +
           "," + std::to_string(s.min) + "," + std::to_string(s.max) + "\n";
  }
  return out;
}

// Line chart of mean finish time against task count, one polyline per
// (algorithm, processor count). Pure function of the summaries.
inline std::string trend_chart_svg(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw EmptyInputError("no summary rows to chart");

  std::vector<std::size_t> ns;
  TimeUnit max_mean_scaled = 1;
  for (const SummaryRow& s : rows) {
    if (std::find(ns.begin(), ns.end(), s.n) == ns.end()) ns.push_back(s.n);
    max_mean_scaled = std::max<TimeUnit>(
        max_mean_scaled, (200 * s.sum + static_cast<TimeUnit>(s.count)) /
                             (2 * static_cast<TimeUnit>(s.count)));
  }
  std::sort(ns.begin(), ns.end());
  const double max_n = static_cast<double>(ns.back());
  const double min_n = static_cast<double>(ns.front());
  const double max_y = static_cast<double>(max_mean_scaled) / 100.0;

  const int left = 56, top = 20, plot_w = 640, plot_h = 360, bottom = 46;
  const int w = left + plot_w + 170, h = top + plot_h + bottom;
  auto x_of = [&](std::size_t n) {
    if (max_n == min_n) return double(left + plot_w / 2);
    return left + (static_cast<double>(n) - min_n) / (max_n - min_n) * plot_w;
  };
  auto y_of = [&](double v) { return top + plot_h - v / max_y * plot_h; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return std::string(buf);
  };

  struct Series {
    std::string algorithm;
    std::uint32_t p;
  };
  std::vector<Series> series;
  for (const SummaryRow& s : rows) {
    if (std::none_of(series.begin(), series.end(), [&](const Series& sr) {
          return sr.algorithm == s.algorithm && sr.p == s.p;
        })) {
      series.push_back({s.algorithm, s.p});
    }
  }
  std::sort(series.begin(), series.end(), [](const Series& a, const Series& b) {
    return a.algorithm != b.algorithm ? a.algorithm < b.algorithm : a.p < b.p;
  });
  static const char* series_colors[] = {"#e15759", "#f28e2b", "#b07aa1",
                                        "#4e79a7", "#59a14f", "#76b7b2",
                                        "#9c755f", "#bab0ac", "#edc948"};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" fill=\"white\"/>\n";
  svg += "  <line x1=\"" + std::to_string(left) + "\" y1=\"" +
         std::to_string(top) + "\" x2=\"" + std::to_string(left) + "\" y2=\"" +
         std::to_string(top + plot_h) + "\" stroke=\"#333\"/>\n";
  svg += "  <line x1=\"" + std::to_string(left) + "\" y1=\"" +
         std::to_string(top + plot_h) + "\" x2=\"" +
         std::to_string(left + plot_w) + "\" y2=\"" +
         std::to_string(top + plot_h) + "\" stroke=\"#333\"/>\n";

  for (std::size_t n : ns) {
    svg += "  <text x=\"" + fmt(x_of(n)) + "\" y=\"" +
           std::to_string(top + plot_h + 16) + "\" text-anchor=\"middle\">" +
           std::to_string(n) + "</text>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = max_y * tick / 4.0;
    svg += "  <text x=\"" + std::to_string(left - 6) + "\" y=\"" +
           fmt(y_of(v) + 4) + "\" text-anchor=\"end\">" + fmt(v) +
           "</text>\n";
    svg += "  <line x1=\"" + std::to_string(left) + "\" y1=\"" + fmt(y_of(v)) +
           "\" x2=\"" + std::to_string(left + plot_w) + "\" y2=\"" +
           fmt(y_of(v)) + "\" stroke=\"#eee\"/>\n";
  }
  svg += "  <text x=\"" + std::to_string(left + plot_w / 2) + "\" y=\"" +
         std::to_string(h - 8) +
         "\" text-anchor=\"middle\">number of tasks</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& sr = series[i];
    std::string points;
    for (std::size_t n : ns) {
      for (const SummaryRow& s : rows) {
        if (s.algorithm == sr.algorithm && s.p == sr.p && s.n == n) {
          const double mean = static_cast<double>(s.sum) /
                              static_cast<double>(s.count);
          points += fmt(x_of(n)) + "," + fmt(y_of(mean)) + " ";
        }
      }
    }
    const char* color = series_colors[i % 9];
    svg += "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const int ly = top + 10 + static_cast<int>(i) * 18;
    svg += "  <line x1=\"" + std::to_string(left + plot_w + 14) + "\" y1=\"" +
           std::to_string(ly) + "\" x2=\"" + std::to_string(left + plot_w + 38) +
           "\" y2=\"" + std::to_string(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "  <text x=\"" + std::to_string(left + plot_w + 44) + "\" y=\"" +
           std::to_string(ly + 4) + "\">" + sr.algorithm + " p=" +
           std::to_string(sr.p) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dagsched

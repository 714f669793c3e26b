#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dagsched/schedule.hpp"

namespace dagsched {

namespace detail {

inline std::size_t digits(std::uint64_t v) {
  std::size_t d = 1;
  while (v >= 10) {
    v /= 10;
    ++d;
  }
  return d;
}

}  // namespace detail

// Text Gantt chart: one lane per processor, one [id===] block per placement
// spanning its [start, finish) extent, dots for idle time. Columns per time
// unit are scaled up just enough for every block to fit its label.
inline std::string render_gantt_ascii(const Schedule& sched) {
  std::size_t scale = 1;
  for (const Placement& pl : sched.placements) {
    const std::size_t need = detail::digits(pl.task) + 2;
    const std::size_t dur = static_cast<std::size_t>(pl.finish - pl.start);
    if (dur > 0) scale = std::max(scale, (need + dur - 1) / dur);
  }

  const std::size_t width = static_cast<std::size_t>(sched.makespan) * scale;
  std::vector<std::string> lanes(sched.p, std::string(width, '.'));
  for (const Placement& pl : sched.placements) {
    const std::size_t lo = static_cast<std::size_t>(pl.start) * scale;
    const std::size_t hi = static_cast<std::size_t>(pl.finish) * scale;
    std::string block = "[" + std::to_string(pl.task);
    block.resize(hi - lo - 1, '=');
    block += ']';
    lanes[pl.processor].replace(lo, hi - lo, block);
  }

  std::string out;
  const std::size_t label_w = detail::digits(sched.p == 0 ? 0 : sched.p - 1);
  for (std::uint32_t q = 0; q < sched.p; ++q) {
    std::string label = std::to_string(q);
    out += "P" + std::string(label_w - label.size(), ' ') + label + " |" +
           lanes[q] + "|\n";
  }
  out += "makespan=" + std::to_string(sched.makespan);
  if (scale > 1) out += " (" + std::to_string(scale) + " cols per time unit)";
  out += "\n";
  return out;
}

// SVG Gantt chart. Layout and colors depend only on the schedule, so the
// bytes are stable across runs.
inline std::string render_gantt_svg(const Schedule& sched) {
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                  "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
                                  "#9c755f", "#bab0ac"};
  const int left = 46, top = 18, lane_h = 30, bar_h = 22, bottom = 34;
  const TimeUnit span = std::max<TimeUnit>(sched.makespan, 1);
  const int px =
      std::clamp<int>(static_cast<int>(900 / span), 4, 40);  // per time unit
  const int w = left + static_cast<int>(span) * px + 20;
  const int h = top + lane_h * static_cast<int>(sched.p) + bottom;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) +
         "\" font-family=\"monospace\" font-size=\"11\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" fill=\"white\"/>\n";

  for (std::uint32_t q = 0; q < sched.p; ++q) {
    const int y = top + static_cast<int>(q) * lane_h;
    svg += "  <text x=\"6\" y=\"" + std::to_string(y + bar_h - 6) +
           "\">P" + std::to_string(q) + "</text>\n";
    svg += "  <line x1=\"" + std::to_string(left) + "\" y1=\"" +
           std::to_string(y + bar_h) + "\" x2=\"" +
           std::to_string(left + static_cast<int>(span) * px) + "\" y2=\"" +
           std::to_string(y + bar_h) + "\" stroke=\"#ddd\"/>\n";
  }

  std::vector<Placement> sorted = sched.placements;
  std::sort(sorted.begin(), sorted.end(),
            [](const Placement& a, const Placement& b) {
              if (a.processor != b.processor) return a.processor < b.processor;
              if (a.start != b.start) return a.start < b.start;
              return a.task < b.task;
            });
  for (const Placement& pl : sorted) {
    const int x = left + static_cast<int>(pl.start) * px;
    const int y = top + static_cast<int>(pl.processor) * lane_h;
    const int bw = static_cast<int>(pl.finish - pl.start) * px;
    svg += "  <rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" width=\"" + std::to_string(bw) + "\" height=\"" +
           std::to_string(bar_h) + "\" fill=\"" + palette[pl.task % 10] +
           "\" stroke=\"#333\"/>\n";
    svg += "  <text x=\"" + std::to_string(x + 3) + "\" y=\"" +
           std::to_string(y + 15) + "\">" + std::to_string(pl.task) +
           "</text>\n";
  }

  // Time axis with ticks stepping 1, 5, 10, 50, 100, ...
  const int axis_y = top + lane_h * static_cast<int>(sched.p) + 4;
  TimeUnit step = 1;
  while (span / step > 20) step *= (step == 1 || step % 10 == 0) ? 5 : 2;
  for (TimeUnit t = 0; t <= span; t += step) {
    const int x = left + static_cast<int>(t) * px;
    svg += "  <line x1=\"" + std::to_string(x) + "\" y1=\"" +
           std::to_string(axis_y) + "\" x2=\"" + std::to_string(x) +
           "\" y2=\"" + std::to_string(axis_y + 4) + "\" stroke=\"#333\"/>\n";
    svg += "  <text x=\"" + std::to_string(x) + "\" y=\"" +
           std::to_string(axis_y + 16) + "\" text-anchor=\"middle\">" +
           std::to_string(t) + "</text>\n";
  }
  svg += "  <text x=\"" + std::to_string(left) + "\" y=\"" +
         std::to_string(axis_y + 28) + "\">makespan=" +
         std::to_string(sched.makespan) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace dagsched

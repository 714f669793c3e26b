#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dagsched/errors.hpp"
#include "dagsched/schedule.hpp"
#include "dagsched/taskgraph.hpp"

namespace dagsched {

// Graph file format: {"tasks": [{"id", "weight"}...], "edges": [[pred,
// succ]...]}, tasks sorted by id and edges lexicographically. Heights are
// derived on load and never serialized.
inline std::string serialize(const TaskGraph& graph) {
  nlohmann::ordered_json doc;
  doc["tasks"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < graph.num_tasks(); ++t) {
    doc["tasks"].push_back({{"id", t}, {"weight", graph.weight(
                                            static_cast<TaskId>(t))}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : graph.edges()) {
    doc["edges"].push_back({e.pred, e.succ});
  }
  return doc.dump(2) + "\n";
}

inline TaskGraph parse_task_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tasks") || !doc["tasks"].is_array() ||
      !doc.contains("edges") || !doc["edges"].is_array()) {
    throw ParseError("graph document must be {\"tasks\": [...], \"edges\": [...]}");
  }

  const auto& tasks = doc["tasks"];
  std::vector<TimeUnit> weights(tasks.size(), 0);
  std::vector<char> seen(tasks.size(), 0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& rec = tasks[i];
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("weight") ||
        !rec["id"].is_number_unsigned() || !rec["weight"].is_number_integer()) {
      throw ParseError("task record " + std::to_string(i) +
                       " must be {\"id\": <uint>, \"weight\": <int>}");
    }
    const std::size_t id = rec["id"].get<std::size_t>();
    if (id >= tasks.size() || seen[id]) {
      throw ParseError("task ids must be unique and dense 0.." +
                       std::to_string(tasks.size() - 1) + "; got " +
                       std::to_string(id));
    }
    seen[id] = 1;
    weights[id] = rec["weight"].get<TimeUnit>();
  }

  std::vector<Edge> edges;
  edges.reserve(doc["edges"].size());
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& rec = doc["edges"][i];
    if (!rec.is_array() || rec.size() != 2 || !rec[0].is_number_unsigned() ||
        !rec[1].is_number_unsigned()) {
      throw ParseError("edge record " + std::to_string(i) +
                       " must be a [pred, succ] pair");
    }
    edges.push_back({rec[0].get<TaskId>(), rec[1].get<TaskId>()});
  }
  return TaskGraph(std::move(weights), std::move(edges));
}

// Schedule file format: {"p": <uint>, "placements": [{"task", "processor",
// "start", "finish"}...]} sorted by (processor, start, task).
inline std::string serialize(const Schedule& sched) {
  std::vector<Placement> sorted = sched.placements;
  std::sort(sorted.begin(), sorted.end(),
            [](const Placement& a, const Placement& b) {
              if (a.processor != b.processor) return a.processor < b.processor;
              if (a.start != b.start) return a.start < b.start;
              return a.task < b.task;
            });
  nlohmann::ordered_json doc;
  doc["p"] = sched.p;
  doc["placements"] = nlohmann::ordered_json::array();
  for (const Placement& pl : sorted) {
    doc["placements"].push_back({{"task", pl.task},
                                 {"processor", pl.processor},
                                 {"start", pl.start},
                                 {"finish", pl.finish}});
  }
  return doc.dump(2) + "\n";
}

inline Schedule parse_schedule(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("schedule document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("p") ||
      !doc["p"].is_number_unsigned() || !doc.contains("placements") ||
      !doc["placements"].is_array()) {
    throw ParseError(
        "schedule document must be {\"p\": <uint>, \"placements\": [...]}");
  }
  Schedule sched;
  sched.p = doc["p"].get<std::uint32_t>();
  for (std::size_t i = 0; i < doc["placements"].size(); ++i) {
    const auto& rec = doc["placements"][i];
    if (!rec.is_object() || !rec.contains("task") || !rec.contains("processor") ||
        !rec.contains("start") || !rec.contains("finish") ||
        !rec["task"].is_number_unsigned() ||
        !rec["processor"].is_number_unsigned() ||
        !rec["start"].is_number_integer() ||
        !rec["finish"].is_number_integer()) {
      throw ParseError("placement record " + std::to_string(i) +
                       " must carry task, processor, start, finish");
    }
    Placement pl{rec["task"].get<TaskId>(), rec["processor"].get<std::uint32_t>(),
                 rec["start"].get<TimeUnit>(), rec["finish"].get<TimeUnit>()};
    if (pl.processor >= sched.p) {
      throw ParseError("placement record " + std::to_string(i) +
                       " names processor " + std::to_string(pl.processor) +
                       " but p=" + std::to_string(sched.p));
    }
    sched.placements.push_back(pl);
  }
  // Canonical in-memory order is by task id when the ids are dense.
  std::sort(sched.placements.begin(), sched.placements.end(),
            [](const Placement& a, const Placement& b) {
              return a.task < b.task;
            });
  sched.makespan = compute_makespan(sched.placements);
  return sched;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// Content digest over the canonical serialized form.
inline std::string graph_digest(const TaskGraph& graph) {
  return to_hex(fnv1a64(serialize(graph)));
}

}  // namespace dagsched

#pragma once

// Text formats: group strings ("Z:6", "Z:9x9", "Z2^4"), set literals, JSON set
// files, and the JSON / CSV reports. JSON objects keep insertion order so equal
// inputs serialize to identical bytes.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "packlab/constructions.hpp"
#include "packlab/correlation.hpp"
#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"
#include "packlab/group.hpp"
#include "packlab/packing.hpp"

namespace packlab::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "packing-lab/1";

namespace detail {

inline std::int64_t parse_int(std::string_view text, const char* what) {
  std::string s(text);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("cannot parse ") + what + " '" + s + "'");
  }
  if (used != s.size()) throw InputError(std::string("trailing characters in ") + what + " '" + s + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "Z:6", "Z:9x9" (cyclic products) or "Z2^4" (dyadic cube) without
/// allocating the group.
inline GroupSpec parse_group_spec(std::string_view text) {
  if (text.rfind("Z2^", 0) == 0) {
    const auto dim = detail::parse_int(text.substr(3), "dyadic dimension");
    if (dim < 1 || dim > 62) throw InputError("dyadic dimension out of range");
    return GroupSpec{std::vector<std::int64_t>(static_cast<std::size_t>(dim), 2), MetricKind::kDyadic};
  }
  if (text.rfind("Z:", 0) != 0) throw InputError("group must look like Z:6, Z:9x9 or Z2^4, got '" + std::string(text) + "'");
  GroupSpec spec;
  for (const auto part : detail::split(text.substr(2), 'x')) {
    spec.moduli.push_back(detail::parse_int(part, "cyclic order"));
  }
  return spec;
}

inline Group parse_group(std::string_view text, std::size_t size_guard = kDefaultSizeGuard) {
  return Group(parse_group_spec(text), size_guard);
}

/// Elements separated by ';' (or by ',' in one-dimensional groups); coordinates
/// within an element separated by ','. Example: "0,1" in Z:6, "0,0;0,1" in Z:9x9.
inline DenseSet parse_set_literal(const Group& group, std::string_view text) {
  DenseSet out(group);
  text = detail::trim(text);
  if (text.empty()) return out;
  const bool one_dim = group.dim() == 1 && text.find(';') == std::string_view::npos;
  for (const auto item : detail::split(text, one_dim ? ',' : ';')) {
    Elem g;
    for (const auto c : detail::split(detail::trim(item), ',')) {
      g.coords.push_back(detail::parse_int(detail::trim(c), "coordinate"));
    }
    out.insert(group.index_of(g));
  }
  return out;
}

inline Json group_to_json(const Group& group) {
  Json j;
  j["moduli"] = group.spec().moduli;
  j["metric"] = group.metric() == MetricKind::kDyadic ? "dyadic" : "cyclic";
  return j;
}

inline Group group_from_json(const Json& j, std::size_t size_guard = kDefaultSizeGuard) {
  if (!j.is_object() || !j.contains("moduli")) throw InputError("group object needs \"moduli\"");
  GroupSpec spec;
  try {
    spec.moduli = j.at("moduli").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception&) {
    throw InputError("\"moduli\" must be a list of integers");
  }
  const std::string metric = j.value("metric", std::string("cyclic"));
  if (metric == "dyadic") {
    spec.metric = MetricKind::kDyadic;
  } else if (metric != "cyclic") {
    throw InputError("unknown metric '" + metric + "'");
  }
  return Group(std::move(spec), size_guard);
}

inline Json elem_to_json(const Group& group, std::size_t index) { return group.elem_at(index).coords; }

inline Json elems_to_json(const Group& group, const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (const auto i : indices) out.push_back(elem_to_json(group, i));
  return out;
}

/// Maximal runs [start, length] of consecutive canonical indices.
inline std::vector<std::pair<std::size_t, std::size_t>> runs_of(const DenseSet& s) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  s.for_each([&](std::size_t i) {
    if (!runs.empty() && runs.back().first + runs.back().second == i) {
      ++runs.back().second;
    } else {
      runs.emplace_back(i, 1);
    }
  });
  return runs;
}

/// Set file body; switches to run-length form when that is at least 4x smaller.
inline Json set_to_json(const DenseSet& s) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = group_to_json(s.group());
  const auto runs = runs_of(s);
  if (8 * runs.size() <= s.size() * s.group().dim()) {
    Json r = Json::array();
    for (const auto& [start, len] : runs) r.push_back({start, len});
    j["runs"] = std::move(r);
  } else {
    j["elements"] = elems_to_json(s.group(), s.indices());
  }
  return j;
}

inline DenseSet set_from_json(const Json& j, std::size_t size_guard = kDefaultSizeGuard) {
  if (!j.is_object() || !j.contains("group")) throw InputError("set file needs a \"group\" object");
  const Group group = group_from_json(j.at("group"), size_guard);
  DenseSet out(group);
  try {
    if (j.contains("elements")) {
      for (const auto& e : j.at("elements")) {
        Elem g;
        if (e.is_number_integer()) {
          g.coords.push_back(e.get<std::int64_t>());
        } else {
          g.coords = e.get<std::vector<std::int64_t>>();
        }
        out.insert(group.index_of(g));
      }
    }
    if (j.contains("runs")) {
      for (const auto& r : j.at("runs")) {
        const auto pair = r.get<std::vector<std::int64_t>>();
        if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0 ||
            static_cast<std::size_t>(pair[0] + pair[1]) > group.order()) {
          throw InputError("run must be [start, length] inside the group");
        }
        for (std::int64_t k = 0; k < pair[1]; ++k) out.insert(static_cast<std::size_t>(pair[0] + k));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed set file: ") + e.what());
  }
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << body;
}

inline DenseSet read_set_file(const std::string& path, std::size_t size_guard = kDefaultSizeGuard) {
  return set_from_json(read_json_file(path), size_guard);
}

inline void write_set_file(const std::string& path, const DenseSet& s) {
  write_text_file(path, set_to_json(s).dump(2) + "\n");
}

/// "3" in one dimension, "1:2" for coordinates (1, 2).
inline std::string format_elem(const Group& group, std::size_t index) {
  std::string out;
  for (std::size_t i = 0; i < group.dim(); ++i) {
    if (i) out += ':';
    out += std::to_string(group.coord(index, i));
  }
  return out;
}

inline std::string corr_csv(const CorrTable& table) {
  std::ostringstream out;
  out << "index,g_coords,value\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    out << i << ',' << format_elem(table.group, i) << ',' << table.values[i] << '\n';
  }
  return out.str();
}

inline Json corr_summary(const CorrTable& table) {
  Json j;
  j["schema"] = kSchema;
  j["min"] = table.min();
  j["max"] = table.max();
  j["argmin"] = elem_to_json(table.group, table.argmin());
  j["argmax"] = elem_to_json(table.group, table.argmax());
  j["sum"] = table.sum();
  return j;
}

inline Json packing_report_to_json(const PackingReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["set"] = set_to_json(r.set);
  j["set"].erase("schema");
  j["t"] = r.threshold;
  j["value"] = r.value;
  j["sharp"] = r.sharp;
  j["witness"] = elems_to_json(r.set.group(), r.witness);
  j["method"] = r.method == PackingMethod::kExact ? "exact" : "heuristic";
  j["bounds"] = {{"counting", r.bounds.counting}, {"neighborhood", r.bounds.neighborhood}};
  return j;
}

inline std::string spectrum_csv(const SpectrumResult& s) {
  std::ostringstream out;
  out << "sharp_value,count,example_subset\n";
  for (const auto& [sharp, entry] : s.histogram) {
    out << sharp << ',' << entry.count << ',';
    for (std::size_t i = 0; i < entry.example.size(); ++i) {
      if (i) out << ' ';
      out << format_elem(s.group, entry.example[i]);
    }
    out << '\n';
  }
  return out.str();
}

inline Json spectrum_annotation(const SpectrumResult& s) {
  Json j;
  j["group"] = s.group.to_string();
  j["t"] = s.threshold;
  j["reduced"] = s.reduced;
  Json values = Json::array();
  for (const auto& [sharp, entry] : s.histogram) values.push_back(sharp);
  j["achieved"] = values;
  j["quotient_by_two_torsion"] = s.quotient_by_two_torsion;
  j["three_torsion_is_whole"] = s.three_torsion_is_whole;
  j["four_absent"] = !s.achieved(4);
  j["three_absent"] = !s.achieved(3);
  j["four_counterexample"] = s.four_counterexample();
  j["three_counterexample"] = s.three_counterexample();
  return j;
}

inline Json clauses_to_json(const std::vector<Clause>& clauses) {
  Json out = Json::array();
  for (const auto& c : clauses) out.push_back({{"clause", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

inline Json schedule_to_json(const ScaleSchedule& s) {
  Json j;
  j["dim"] = s.dim;
  j["levels"] = s.levels;
  j["m"] = s.m;
  j["ratio"] = kScaleRatio;
  j["eps"] = s.eps;
  j["terminal"] = to_string(s.terminal);
  return j;
}

inline Json generator_to_json(const Group& group, const GeneratorResult& g) {
  Json j;
  j["depth"] = g.depth();
  j["steps"] = elems_to_json(group, g.steps);
  Json u = Json::array(), v = Json::array();
  for (const auto& r : g.outer_radius) u.push_back(r.grid);
  for (const auto& r : g.inner_radius) v.push_back(r.grid);
  j["outer_radius"] = u;
  j["inner_radius"] = v;
  j["family_size"] = g.family.size();
  j["family"] = elems_to_json(group, g.family);
  j["certificate"] = {{"pairs_checked", g.pairs_checked}, {"ok", true}};
  return j;
}

inline Json sigma_to_json(const SigmaPair& p) {
  Json j;
  j["schema"] = kSchema;
  j["schedule"] = schedule_to_json(p.levels.schedule);
  Json levels = Json::array();
  for (std::size_t n = 0; n < p.levels.levels(); ++n) {
    levels.push_back({{"n", n},
                      {"size", p.levels.sets[n].size()},
                      {"h", n == 0 ? Json(nullptr) : elem_to_json(p.a.group(), p.levels.h[n])},
                      {"dense", p.levels.dense_terminal && n + 1 == p.levels.levels()}});
  }
  j["levels"] = levels;
  const auto n = static_cast<double>(p.a.universe());
  j["sizes"] = {{"A", p.a.size()}, {"B", p.b.size()}, {"C", p.c.size()}};
  j["densities"] = {{"A", static_cast<double>(p.a.size()) / n},
                    {"B", static_cast<double>(p.b.size()) / n},
                    {"C", static_cast<double>(p.c.size()) / n}};
  Json annuli = Json::array();
  for (const auto& a : p.annuli) {
    annuli.push_back({{"set", a.set}, {"k", a.k}, {"lo", a.lo.grid}, {"hi", a.hi.grid}, {"violations", a.violations}});
  }
  j["annuli"] = annuli;
  j["sums_distinct"] = {{"A", p.a_sums_distinct}, {"B", p.b_sums_distinct}};
  std::vector<Clause> all = p.levels.schedule.clauses;
  all.insert(all.end(), p.clauses.begin(), p.clauses.end());
  j["certificates"] = clauses_to_json(all);
  return j;
}

inline Json union_to_json(const UnionReport& r) {
  const Group group = r.schedule.group();
  Json j;
  j["schema"] = kSchema;
  j["schedule"] = schedule_to_json(r.schedule);
  j["mode"] = to_string(r.schedule.terminal);
  j["sizes"] = {{"A", r.size_a}, {"B", r.size_b}, {"C", r.size_c}};
  j["densities"] = {{"A", r.density_a}, {"B", r.density_b}, {"C", r.density_c}};
  j["witnesses"] = {{"A", generator_to_json(group, r.witness_a)}, {"B", generator_to_json(group, r.witness_b)}};
  j["coverage"] = {{"delta", r.coverage_delta.grid}, {"ok", r.coverage_ok}, {"exact", r.coverage_exact}};
  j["theta"] = r.theta;
  if (r.coverage_exact) {
    j["packing_index_C"] = r.index_c;
    j["almost_packing_index_C"] = r.almost_index_c;
  }
  j["walks"] = {{"count", r.walks}, {"max_leaf_remainder", r.max_walk_remainder.grid}};
  j["certificates"] = clauses_to_json(r.clauses);
  return j;
}

}  // namespace packlab::io

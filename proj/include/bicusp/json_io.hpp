/**
 * @file json_io.hpp
 * @brief Canonical JSON for search configs, reports and cusp audits.
 *
 * Canonical means sorted keys (nlohmann's default std::map objects), no
 * whitespace or newlines, and shortest round-trip float formatting, so equal
 * reports serialize to equal bytes.
 */
#pragma once

#include <json.hpp>
#include <limits>
#include <stdexcept>
#include <string>

#include "bicusp/cuspgeom.hpp"
#include "bicusp/search.hpp"
#include "bicusp/version.hpp"

namespace bicusp {

using Json = nlohmann::json;

inline Json box_to_json(const ParamBox& box) {
  Json arr = Json::array();
  for (const auto& x : box.coords) arr.push_back(Json::array({x.lo(), x.hi()}));
  return arr;
}

inline ParamBox box_from_json(const Json& j) {
  if (!j.is_array() || j.size() != kNumCoords) throw std::invalid_argument("box must be an array of 6 [lo, hi] pairs");
  ParamBox box;
  for (int i = 0; i < kNumCoords; ++i) {
    const Json& pair = j.at(i);
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("box coordinate must be [lo, hi]");
    box.coords[i] = RealInterval(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return box;
}

/// Effective search config. worker_count is left out: it never changes the
/// result, and keeping it out keeps reports byte-identical across worker counts.
inline Json config_to_json(const SearchConfig& c) {
  Json j = {{"area_bound", c.area_bound},
            {"max_d", c.max_d},
            {"max_exp", c.max_exp},
            {"max_depth", c.max_depth},
            {"min_box_width", c.min_box_width},
            {"word_budget_per_box", c.word_budget_per_box},
            {"max_boxes", c.max_boxes},
            {"parent_word_first", c.parent_word_first},
            {"enforce_normalization", c.enforce_normalization},
            {"lattice_reduction", c.lattice_reduction}};
  if (c.root) j["root_box"] = box_to_json(*c.root);
  return j;
}

/// Overlays keys present in `j` onto `base`; unknown keys are rejected.
inline SearchConfig config_from_json(const Json& j, SearchConfig base = {}) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "area_bound") base.area_bound = value.get<double>();
    else if (key == "max_d") base.max_d = value.get<int>();
    else if (key == "max_exp") base.max_exp = value.get<int>();
    else if (key == "max_depth") base.max_depth = value.get<int>();
    else if (key == "min_box_width") base.min_box_width = value.get<double>();
    else if (key == "word_budget_per_box") base.word_budget_per_box = value.get<int>();
    else if (key == "max_boxes") base.max_boxes = value.get<std::size_t>();
    else if (key == "parent_word_first") base.parent_word_first = value.get<bool>();
    else if (key == "enforce_normalization") base.enforce_normalization = value.get<bool>();
    else if (key == "lattice_reduction") base.lattice_reduction = value.get<bool>();
    else if (key == "worker_count") base.worker_count = value.get<int>();
    else if (key == "root_box") base.root = box_from_json(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return base;
}

inline Json report_to_json(const SearchReport& r) {
  Json leaves = Json::array();
  for (const auto& leaf : r.leaves) {
    Json l = {{"path", leaf.box.path}, {"box", box_to_json(leaf.box)}, {"status", to_string(leaf.status)}};
    if (leaf.word) l["word"] = leaf.word->to_string();
    if (leaf.status == BoxStatus::Candidate) l["volume_bound"] = leaf.volume_bound();
    leaves.push_back(std::move(l));
  }
  Json bound;
  switch (r.global_volume_bound.kind) {
    case GlobalBound::Kind::Finite: bound = r.global_volume_bound.value; break;
    case GlobalBound::Kind::Unbounded: bound = "unbounded"; break;
    case GlobalBound::Kind::NegativeInfinity: bound = "-inf"; break;
  }
  Json stats = {{"boxes_tested", r.stats.boxes_tested},
                {"words_evaluated", r.stats.words_evaluated},
                {"word_list_size", r.stats.word_list_size},
                {"max_depth_reached", r.stats.max_depth_reached},
                {"incomplete", r.stats.incomplete},
                {"leaves", r.leaves.size()},
                {"eliminated_infeasible", r.count(BoxStatus::EliminatedInfeasible)},
                {"eliminated_killer", r.count(BoxStatus::EliminatedKiller)},
                {"candidate", r.count(BoxStatus::Candidate)},
                {"undecided", r.count(BoxStatus::Undecided)}};
  return {{"tool", kToolName},
          {"version", kVersion},
          {"config", config_to_json(r.config)},
          {"leaves", std::move(leaves)},
          {"global_volume_bound", std::move(bound)},
          {"stats", std::move(stats)}};
}

inline SearchReport report_from_json(const Json& j) {
  SearchReport r;
  r.config = config_from_json(j.at("config"));
  for (const auto& l : j.at("leaves")) {
    BoxVerdict v;
    v.box = box_from_json(l.at("box"));
    v.box.path = l.at("path").get<std::string>();
    v.status = box_status_from_string(l.at("status").get<std::string>());
    if (l.contains("word")) v.word = Word::parse(l.at("word").get<std::string>());
    r.leaves.push_back(std::move(v));
  }
  const Json& g = j.at("global_volume_bound");
  if (g.is_number()) r.global_volume_bound = {GlobalBound::Kind::Finite, g.get<double>()};
  else if (g == "unbounded") r.global_volume_bound = {GlobalBound::Kind::Unbounded, std::numeric_limits<double>::infinity()};
  else r.global_volume_bound = {};
  const Json& s = j.at("stats");
  r.stats.boxes_tested = s.value("boxes_tested", std::size_t{0});
  r.stats.words_evaluated = s.value("words_evaluated", std::size_t{0});
  r.stats.word_list_size = s.value("word_list_size", std::size_t{0});
  r.stats.max_depth_reached = s.value("max_depth_reached", 0);
  r.stats.incomplete = s.value("incomplete", false);
  return r;
}

inline Json audit_to_json(const CuspAudit& a) {
  Json slopes = Json::array();
  for (const auto& s : a.slopes) slopes.push_back({{"p", s.slope.p}, {"q", s.slope.q}, {"length", s.length}});
  return {{"a", Json::array({a.shape.a.real(), a.shape.a.imag()})},
          {"b", Json::array({a.shape.b.real(), a.shape.b.imag()})},
          {"area", a.area},
          {"volume", a.volume},
          {"slope_length_bound", a.slope_length_bound},
          {"short_slopes", std::move(slopes)},
          {"delta_bound", a.delta_bound},
          {"delta_max", a.delta_max},
          {"max_exceptional_count", a.max_exceptional}};
}

/// Single-line canonical form.
inline std::string canonical(const Json& j) { return j.dump(); }

}  // namespace bicusp

#pragma once

// End-to-end conversion: parse, classify, merge fragmented rivers, simplify,
// filter by tier and area, fit the mosaic, and report reduction statistics.
// Also defines the model document (newline-delimited JSON) with a strict
// reader whose output re-serializes byte-identically.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "neurohex/error.hpp"
#include "neurohex/hex.hpp"
#include "neurohex/osm/feature.hpp"
#include "neurohex/osm/geo.hpp"
#include "neurohex/osm/mosaic.hpp"
#include "neurohex/osm/parse.hpp"
#include "neurohex/osm/simplify.hpp"
#include "neurohex/shape_json.hpp"

namespace neurohex::osm {

using ordered_json = nlohmann::ordered_json;

struct ClassifiedFeature {
  RawFeature feature;
  FeatureClass cls = FeatureClass::other;
};

namespace detail {

inline bool points_close(GeoPoint a, GeoPoint b, double tol) {
  const double dx = a.lon - b.lon;
  const double dy = a.lat - b.lat;
  return dx * dx + dy * dy <= tol * tol;
}

inline void append_run(std::vector<GeoPoint>& dst,
                       const std::vector<GeoPoint>& src) {
  size_t start = 0;
  if (!dst.empty() && !src.empty() &&
      points_close(dst.back(), src.front(), 1e-12)) {
    start = 1;
  }
  dst.insert(dst.end(), src.begin() + start, src.end());
}

}  // namespace detail

// Joins river polylines that share a name and nearly touch end to end.
// OSM maps long rivers as chains of short ways; the identity tier wants
// them as one feature. The merged feature keeps the smallest source id.
inline void merge_rivers(std::vector<ClassifiedFeature>& items,
                         double endpoint_tolerance) {
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < items.size(); ++i) {
    const ClassifiedFeature& it = items[i];
    if (it.cls != FeatureClass::river ||
        it.feature.kind != FeatureKind::polyline) {
      continue;
    }
    const auto name = it.feature.tags.find("name");
    if (name == it.feature.tags.end() || name->second.empty()) {
      continue;
    }
    groups[name->second].push_back(i);
  }
  std::vector<bool> dead(items.size(), false);
  for (auto& [name, idxs] : groups) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t ai = 0; ai < idxs.size() && !progress; ++ai) {
        if (dead[idxs[ai]]) continue;
        for (size_t bi = ai + 1; bi < idxs.size() && !progress; ++bi) {
          if (dead[idxs[bi]]) continue;
          std::vector<GeoPoint>& a = items[idxs[ai]].feature.coords;
          std::vector<GeoPoint> b = items[idxs[bi]].feature.coords;
          bool merged = true;
          if (detail::points_close(a.back(), b.front(), endpoint_tolerance)) {
            detail::append_run(a, b);
          } else if (detail::points_close(a.back(), b.back(),
                                          endpoint_tolerance)) {
            std::reverse(b.begin(), b.end());
            detail::append_run(a, b);
          } else if (detail::points_close(a.front(), b.back(),
                                          endpoint_tolerance)) {
            detail::append_run(b, a);
            a = std::move(b);
          } else if (detail::points_close(a.front(), b.front(),
                                          endpoint_tolerance)) {
            std::reverse(b.begin(), b.end());
            detail::append_run(b, a);
            a = std::move(b);
          } else {
            merged = false;
          }
          if (merged) {
            items[idxs[ai]].feature.id = std::min(items[idxs[ai]].feature.id,
                                                  items[idxs[bi]].feature.id);
            dead[idxs[bi]] = true;
            progress = true;
          }
        }
      }
    }
  }
  std::vector<ClassifiedFeature> compact;
  compact.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    if (!dead[i]) {
      compact.push_back(std::move(items[i]));
    }
  }
  items = std::move(compact);
}

namespace detail {

// Douglas-Peucker with the policy's vertex cap: the tolerance doubles
// until the feature fits.
inline std::vector<GeoPoint> capped_dp_open(const std::vector<GeoPoint>& pts,
                                            double tol, int max_vertices) {
  std::vector<GeoPoint> dp = douglas_peucker(pts, tol);
  for (int round = 0;
       static_cast<int>(dp.size()) > max_vertices && round < 24; ++round) {
    tol *= 2.0;
    dp = douglas_peucker(pts, tol);
  }
  return dp;
}

inline std::vector<GeoPoint> capped_dp_ring(const std::vector<GeoPoint>& ring,
                                            double tol, int max_vertices) {
  std::vector<GeoPoint> dp = douglas_peucker_ring(ring, tol);
  for (int round = 0;
       static_cast<int>(dp.size()) > max_vertices && round < 24; ++round) {
    tol *= 2.0;
    dp = douglas_peucker_ring(ring, tol);
  }
  return dp;
}

}  // namespace detail

// Simplifies one feature in place: vertex pruning, the vertex cap, then
// corner smoothing. Smoothing is kept only while the feature stays at or
// below its raw vertex count, so the simplification stage never grows a
// feature.
inline void simplify_feature(RawFeature& f, const ResolutionPolicy& policy) {
  if (f.kind == FeatureKind::node) {
    return;
  }
  const size_t raw_count = f.coords.size();
  if (f.kind == FeatureKind::polyline) {
    std::vector<GeoPoint> dp = detail::capped_dp_open(
        f.coords, policy.dp_tolerance_deg, policy.max_vertices);
    std::vector<GeoPoint> smooth =
        chaikin_open(dp, policy.chaikin_iterations);
    f.coords = smooth.size() <= raw_count ? std::move(smooth) : std::move(dp);
    return;
  }
  // polygon: work on the open ring, re-close at the end
  std::vector<GeoPoint> ring(f.coords.begin(), f.coords.end() - 1);
  std::vector<GeoPoint> dp = detail::capped_dp_ring(
      ring, policy.dp_tolerance_deg, policy.max_vertices);
  std::vector<GeoPoint> smooth = chaikin_ring(dp, policy.chaikin_iterations);
  std::vector<GeoPoint>& chosen =
      smooth.size() + 1 <= raw_count ? smooth : dp;
  chosen.push_back(chosen.front());
  f.coords = std::move(chosen);
}

// Retention decision for a simplified feature. Identity features always
// survive. The area rule removes small polygons at every other tier; the
// tier cutoff removes weak-tier features outright, except contextual
// polygons that cleared the area rule (large parks survive metro).
inline bool keep_feature(const ClassifiedFeature& cf,
                         const ResolutionPolicy& policy) {
  const Tier tier = tier_of(cf.cls);
  if (tier == Tier::discard) {
    return false;
  }
  if (tier == Tier::identity) {
    return true;
  }
  if (cf.feature.kind == FeatureKind::polygon) {
    std::vector<GeoPoint> ring(cf.feature.coords.begin(),
                               cf.feature.coords.end() - 1);
    if (ring.size() < 3 ||
        std::abs(ring_area(ring)) < policy.area_threshold_deg2) {
      return false;
    }
    return true;
  }
  return tier <= policy.tier_cutoff;
}

// The whole converted model: grid registration, the policy that produced
// it, run statistics, and the mosaic objects.
struct ModelDocument {
  GeoPoint grid_origin;
  double cell_size_m = 50.0;
  int quantization_bits = kDefaultQuantization.bits;
  ResolutionPolicy policy;
  ReductionStats stats;
  std::vector<MosaicObject> objects;

  GridFrame frame() const { return GridFrame{grid_origin, cell_size_m}; }
};

// Runs the full conversion over an extract. Deterministic: identical
// inputs produce an identical document.
inline ModelDocument run_pipeline(std::string_view xml, const BoundingBox& box,
                                  const ResolutionPolicy& policy,
                                  Quantization qz = kDefaultQuantization,
                                  std::optional<GeoPoint> origin = {}) {
  validate_policy(policy);
  ModelDocument doc;
  doc.policy = policy;
  doc.cell_size_m = policy.cell_size_m;
  doc.grid_origin = origin ? *origin : box.center();
  doc.quantization_bits = static_cast<int>(qz.bits);
  const GridFrame frame{doc.grid_origin, policy.cell_size_m};

  ParseResult parsed = parse_osm(xml, box);
  doc.stats.parse_warning_count = parsed.warnings;
  doc.stats.raw_geometry_count =
      static_cast<int64_t>(parsed.features.size());
  for (const RawFeature& f : parsed.features) {
    doc.stats.raw_vertex_count += static_cast<int64_t>(f.coords.size());
  }

  std::vector<ClassifiedFeature> items;
  items.reserve(parsed.features.size());
  for (RawFeature& f : parsed.features) {
    const FeatureClass cls = classify(f.tags);
    if (tier_of(cls) == Tier::discard) {
      continue;
    }
    items.push_back(ClassifiedFeature{std::move(f), cls});
  }

  merge_rivers(items, 2.0 * policy.dp_tolerance_deg);

  for (ClassifiedFeature& cf : items) {
    simplify_feature(cf.feature, policy);
  }
  doc.stats.post_simplification_feature_count =
      static_cast<int64_t>(items.size());
  for (const ClassifiedFeature& cf : items) {
    doc.stats.post_simplification_vertex_count +=
        static_cast<int64_t>(cf.feature.coords.size());
  }

  std::vector<ClassifiedFeature> kept;
  kept.reserve(items.size());
  for (ClassifiedFeature& cf : items) {
    if (keep_feature(cf, policy)) {
      kept.push_back(std::move(cf));
    }
  }

  for (const ClassifiedFeature& cf : kept) {
    doc.objects.push_back(fit_feature(cf.feature, cf.cls, frame, policy, qz));
  }
  std::stable_sort(doc.objects.begin(), doc.objects.end(),
                   [](const MosaicObject& a, const MosaicObject& b) {
                     return a.source_id < b.source_id;
                   });

  doc.stats.kept_object_count = static_cast<int64_t>(doc.objects.size());
  for (const MosaicObject& o : doc.objects) {
    doc.stats.primitive_count += static_cast<int64_t>(o.primitives.size());
    doc.stats.flagged_object_count += o.accuracy_flag ? 1 : 0;
    switch (o.tier) {
      case Tier::identity: ++doc.stats.identity_count; break;
      case Tier::structural: ++doc.stats.structural_count; break;
      case Tier::contextual: ++doc.stats.contextual_count; break;
      case Tier::discard: break;
    }
  }
  return doc;
}

// -------------------------------------------------------------------------
// Model document serialization (newline-delimited JSON).

namespace detail {

using neurohex::detail::int_field;
using neurohex::detail::require_keys;

inline FeatureClass class_from_name(const std::string& s) {
  static const std::pair<const char*, FeatureClass> kTable[] = {
      {"river", FeatureClass::river},       {"highway", FeatureClass::highway},
      {"arterial", FeatureClass::arterial}, {"building", FeatureClass::building},
      {"park", FeatureClass::park},         {"water", FeatureClass::water},
      {"path", FeatureClass::path},         {"landmark", FeatureClass::landmark},
      {"other", FeatureClass::other},
  };
  for (const auto& [name, cls] : kTable) {
    if (s == name) {
      return cls;
    }
  }
  fail(ErrorKind::schema, "unknown feature class: " + s);
}

inline Tier tier_from_name(const std::string& s) {
  if (s == "identity") return Tier::identity;
  if (s == "structural") return Tier::structural;
  if (s == "contextual") return Tier::contextual;
  if (s == "discard") return Tier::discard;
  fail(ErrorKind::schema, "unknown tier: " + s);
}

inline ScalePreset scale_from_name(const std::string& s) {
  if (s == "metro") return ScalePreset::metro;
  if (s == "zoom") return ScalePreset::zoom;
  fail(ErrorKind::schema, "unknown scale preset: " + s);
}

inline double double_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(ErrorKind::schema, std::string("field ") + key + " must be a number");
  }
  return j[key].get<double>();
}

inline std::string string_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    fail(ErrorKind::schema, std::string("field ") + key + " must be a string");
  }
  return j[key].get<std::string>();
}

inline bool bool_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_boolean()) {
    fail(ErrorKind::schema, std::string("field ") + key + " must be a boolean");
  }
  return j[key].get<bool>();
}

}  // namespace detail

inline ordered_json policy_to_json(const ResolutionPolicy& p) {
  ordered_json j;
  j["scale"] = scale_name(p.scale);
  j["dp_tolerance_deg"] = p.dp_tolerance_deg;
  j["chaikin_iterations"] = p.chaikin_iterations;
  j["area_threshold_deg2"] = p.area_threshold_deg2;
  j["max_vertices"] = p.max_vertices;
  j["tier_cutoff"] = tier_name(p.tier_cutoff);
  j["max_primitives"] = p.max_primitives;
  j["park_max_primitives"] = p.park_max_primitives;
  j["mosaic_error_threshold"] = p.mosaic_error_threshold;
  j["cell_size_m"] = p.cell_size_m;
  return j;
}

inline ResolutionPolicy policy_from_json(const ordered_json& j) {
  detail::require_keys(
      j, {"scale", "dp_tolerance_deg", "chaikin_iterations",
          "area_threshold_deg2", "max_vertices", "tier_cutoff",
          "max_primitives", "park_max_primitives", "mosaic_error_threshold",
          "cell_size_m"});
  ResolutionPolicy p;
  p.scale = detail::scale_from_name(detail::string_field(j, "scale"));
  p.dp_tolerance_deg = detail::double_field(j, "dp_tolerance_deg");
  p.chaikin_iterations =
      static_cast<int>(detail::int_field(j, "chaikin_iterations"));
  p.area_threshold_deg2 = detail::double_field(j, "area_threshold_deg2");
  p.max_vertices = static_cast<int>(detail::int_field(j, "max_vertices"));
  p.tier_cutoff = detail::tier_from_name(detail::string_field(j, "tier_cutoff"));
  p.max_primitives = static_cast<int>(detail::int_field(j, "max_primitives"));
  p.park_max_primitives =
      static_cast<int>(detail::int_field(j, "park_max_primitives"));
  p.mosaic_error_threshold =
      detail::double_field(j, "mosaic_error_threshold");
  p.cell_size_m = detail::double_field(j, "cell_size_m");
  validate_policy(p);
  return p;
}

inline ordered_json stats_to_json(const ReductionStats& s) {
  ordered_json j;
  j["raw_geometry_count"] = s.raw_geometry_count;
  j["raw_vertex_count"] = s.raw_vertex_count;
  j["post_simplification_feature_count"] = s.post_simplification_feature_count;
  j["post_simplification_vertex_count"] = s.post_simplification_vertex_count;
  j["kept_object_count"] = s.kept_object_count;
  j["primitive_count"] = s.primitive_count;
  ordered_json tiers;
  tiers["identity"] = s.identity_count;
  tiers["structural"] = s.structural_count;
  tiers["contextual"] = s.contextual_count;
  j["per_tier"] = tiers;
  j["flagged_object_count"] = s.flagged_object_count;
  j["parse_warning_count"] = s.parse_warning_count;
  j["vertex_reduction"] = s.vertex_reduction();
  j["feature_reduction"] = s.feature_reduction();
  return j;
}

inline ReductionStats stats_from_json(const ordered_json& j) {
  detail::require_keys(
      j, {"raw_geometry_count", "raw_vertex_count",
          "post_simplification_feature_count",
          "post_simplification_vertex_count", "kept_object_count",
          "primitive_count", "per_tier", "flagged_object_count",
          "parse_warning_count", "vertex_reduction", "feature_reduction"});
  ReductionStats s;
  s.raw_geometry_count = detail::int_field(j, "raw_geometry_count");
  s.raw_vertex_count = detail::int_field(j, "raw_vertex_count");
  s.post_simplification_feature_count =
      detail::int_field(j, "post_simplification_feature_count");
  s.post_simplification_vertex_count =
      detail::int_field(j, "post_simplification_vertex_count");
  s.kept_object_count = detail::int_field(j, "kept_object_count");
  s.primitive_count = detail::int_field(j, "primitive_count");
  const ordered_json& tiers = j["per_tier"];
  detail::require_keys(tiers, {"identity", "structural", "contextual"});
  s.identity_count = detail::int_field(tiers, "identity");
  s.structural_count = detail::int_field(tiers, "structural");
  s.contextual_count = detail::int_field(tiers, "contextual");
  s.flagged_object_count = detail::int_field(j, "flagged_object_count");
  s.parse_warning_count = detail::int_field(j, "parse_warning_count");
  // vertex_reduction and feature_reduction are derived; values are
  // validated as numbers and recomputed from the counts on rewrite.
  detail::double_field(j, "vertex_reduction");
  detail::double_field(j, "feature_reduction");
  return s;
}

inline std::string write_stats(const ReductionStats& s) {
  return stats_to_json(s).dump(2) + "\n";
}

inline ordered_json object_to_json(const MosaicObject& o) {
  ordered_json j;
  j["type"] = "object";
  j["source_id"] = o.source_id;
  j["class"] = class_name(o.cls);
  j["tier"] = tier_name(o.tier);
  j["accuracy_flag"] = o.accuracy_flag;
  ordered_json prims = ordered_json::array();
  for (const Shape& s : o.primitives) {
    prims.push_back(shape_to_json(s));
  }
  j["primitives"] = prims;
  return j;
}

inline MosaicObject object_from_json(const ordered_json& j, Quantization qz) {
  detail::require_keys(j, {"type", "source_id", "class", "tier",
                           "accuracy_flag", "primitives"});
  MosaicObject o;
  o.source_id = detail::int_field(j, "source_id");
  o.cls = detail::class_from_name(detail::string_field(j, "class"));
  o.tier = detail::tier_from_name(detail::string_field(j, "tier"));
  o.accuracy_flag = detail::bool_field(j, "accuracy_flag");
  if (!j["primitives"].is_array()) {
    fail(ErrorKind::schema, "primitives must be an array");
  }
  for (const ordered_json& p : j["primitives"]) {
    o.primitives.push_back(shape_from_json(p, qz));
  }
  return o;
}

inline std::string write_model(const ModelDocument& doc) {
  ordered_json header;
  header["type"] = "header";
  header["format"] = "neurohex-model";
  header["version"] = 1;
  header["grid_origin"] = ordered_json::array(
      {doc.grid_origin.lon, doc.grid_origin.lat});
  header["cell_size_m"] = doc.cell_size_m;
  header["quantization_bits"] = doc.quantization_bits;
  header["policy"] = policy_to_json(doc.policy);
  header["stats"] = stats_to_json(doc.stats);
  std::string out = header.dump() + "\n";
  for (const MosaicObject& o : doc.objects) {
    out += object_to_json(o).dump();
    out += "\n";
  }
  return out;
}

inline ModelDocument read_model(std::string_view text) {
  ModelDocument doc;
  size_t pos = 0;
  bool have_header = false;
  Quantization qz = kDefaultQuantization;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) {
      continue;
    }
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      fail(ErrorKind::schema, "model line is not valid JSON");
    }
    const std::string type = detail::string_field(j, "type");
    if (type == "header") {
      if (have_header) {
        fail(ErrorKind::schema, "duplicate model header");
      }
      detail::require_keys(j, {"type", "format", "version", "grid_origin",
                               "cell_size_m", "quantization_bits", "policy",
                               "stats"});
      if (detail::string_field(j, "format") != "neurohex-model") {
        fail(ErrorKind::schema, "not a neurohex model document");
      }
      if (detail::int_field(j, "version") != 1) {
        fail(ErrorKind::schema, "unsupported model version");
      }
      const ordered_json& origin = j["grid_origin"];
      if (!origin.is_array() || origin.size() != 2 ||
          !origin[0].is_number() || !origin[1].is_number()) {
        fail(ErrorKind::schema, "grid_origin must be [lon, lat]");
      }
      doc.grid_origin =
          GeoPoint{origin[0].get<double>(), origin[1].get<double>()};
      doc.cell_size_m = detail::double_field(j, "cell_size_m");
      const int64_t bits = detail::int_field(j, "quantization_bits");
      if (bits < 1 || bits > 20) {
        fail(ErrorKind::schema, "quantization_bits out of range");
      }
      doc.quantization_bits = static_cast<int>(bits);
      qz = Quantization{static_cast<int>(bits)};
      doc.policy = policy_from_json(j["policy"]);
      doc.stats = stats_from_json(j["stats"]);
      have_header = true;
    } else if (type == "object") {
      if (!have_header) {
        fail(ErrorKind::schema, "object record before header");
      }
      doc.objects.push_back(object_from_json(j, qz));
    } else {
      fail(ErrorKind::schema, "unknown record type: " + type);
    }
  }
  if (!have_header) {
    fail(ErrorKind::schema, "model document has no header");
  }
  return doc;
}

}  // namespace neurohex::osm

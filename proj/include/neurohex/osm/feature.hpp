#pragma once

// Feature model for the OSM conversion pipeline: raw geometry as parsed
// from an extract, the class and tier taxonomy that drives retention, and
// the resolution policies that package every tunable threshold.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neurohex/error.hpp"

namespace neurohex::osm {

struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;
};

inline bool operator==(GeoPoint a, GeoPoint b) {
  return a.lon == b.lon && a.lat == b.lat;
}

struct BoundingBox {
  double west = 0.0;
  double south = 0.0;
  double east = 0.0;
  double north = 0.0;

  bool contains(GeoPoint p) const {
    return p.lon >= west && p.lon <= east && p.lat >= south && p.lat <= north;
  }

  GeoPoint center() const {
    return GeoPoint{(west + east) / 2.0, (south + north) / 2.0};
  }
};

inline void validate_box(const BoundingBox& b) {
  if (!(b.west < b.east) || !(b.south < b.north)) {
    fail(ErrorKind::schema,
         "bounding box must have west < east and south < north");
  }
}

enum class FeatureKind { node, polyline, polygon };

using TagMap = std::map<std::string, std::string>;

// One geometry as it comes out of the extract. Polygon coordinate rings
// are closed: the first point is repeated as the last.
struct RawFeature {
  int64_t id = 0;
  FeatureKind kind = FeatureKind::node;
  std::vector<GeoPoint> coords;
  TagMap tags;
};

enum class FeatureClass {
  river,
  highway,
  arterial,
  building,
  park,
  water,
  path,
  landmark,
  other,
};

// Retention tiers, strongest first. A policy keeps everything at or above
// its cutoff tier; discard-tier features never reach the mosaic stage.
enum class Tier { identity = 0, structural = 1, contextual = 2, discard = 3 };

inline const char* class_name(FeatureClass c) {
  switch (c) {
    case FeatureClass::river: return "river";
    case FeatureClass::highway: return "highway";
    case FeatureClass::arterial: return "arterial";
    case FeatureClass::building: return "building";
    case FeatureClass::park: return "park";
    case FeatureClass::water: return "water";
    case FeatureClass::path: return "path";
    case FeatureClass::landmark: return "landmark";
    case FeatureClass::other: return "other";
  }
  return "other";
}

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::identity: return "identity";
    case Tier::structural: return "structural";
    case Tier::contextual: return "contextual";
    case Tier::discard: return "discard";
  }
  return "discard";
}

inline Tier tier_of(FeatureClass c) {
  switch (c) {
    case FeatureClass::river: return Tier::identity;
    case FeatureClass::highway: return Tier::structural;
    case FeatureClass::arterial: return Tier::structural;
    case FeatureClass::building: return Tier::contextual;
    case FeatureClass::park: return Tier::contextual;
    case FeatureClass::water: return Tier::contextual;
    case FeatureClass::path: return Tier::contextual;
    case FeatureClass::landmark: return Tier::contextual;
    case FeatureClass::other: return Tier::discard;
  }
  return Tier::discard;
}

namespace detail {

inline bool tag_is(const TagMap& tags, const char* key, const char* value) {
  const auto it = tags.find(key);
  return it != tags.end() && it->second == value;
}

inline bool tag_in(const TagMap& tags, const char* key,
                   std::initializer_list<const char*> values) {
  const auto it = tags.find(key);
  if (it == tags.end()) {
    return false;
  }
  for (const char* v : values) {
    if (it->second == v) {
      return true;
    }
  }
  return false;
}

inline bool has_tag(const TagMap& tags, const char* key) {
  return tags.find(key) != tags.end();
}

}  // namespace detail

// Maps raw tags to a feature class. Rules are checked in a fixed order so
// a feature carrying several matching tags classifies deterministically;
// the strongest interpretation wins.
inline FeatureClass classify(const TagMap& tags) {
  using detail::has_tag;
  using detail::tag_in;
  using detail::tag_is;
  if (tag_in(tags, "waterway", {"river", "stream", "canal"})) {
    return FeatureClass::river;
  }
  if (tag_in(tags, "highway",
             {"motorway", "trunk", "primary", "motorway_link", "trunk_link",
              "primary_link"})) {
    return FeatureClass::highway;
  }
  if (tag_in(tags, "highway",
             {"secondary", "tertiary", "secondary_link", "tertiary_link"})) {
    return FeatureClass::arterial;
  }
  if (tag_is(tags, "natural", "water") || has_tag(tags, "water") ||
      tag_is(tags, "waterway", "riverbank") ||
      tag_is(tags, "landuse", "reservoir") ||
      tag_is(tags, "landuse", "basin")) {
    return FeatureClass::water;
  }
  if (has_tag(tags, "building")) {
    return FeatureClass::building;
  }
  if (tag_in(tags, "leisure",
             {"park", "garden", "playground", "pitch", "golf_course",
              "nature_reserve"}) ||
      tag_in(tags, "landuse",
             {"grass", "forest", "meadow", "recreation_ground",
              "village_green", "cemetery"}) ||
      tag_is(tags, "natural", "wood")) {
    return FeatureClass::park;
  }
  if (has_tag(tags, "highway")) {
    return FeatureClass::path;
  }
  if (has_tag(tags, "tourism") || has_tag(tags, "historic") ||
      has_tag(tags, "amenity")) {
    return FeatureClass::landmark;
  }
  return FeatureClass::other;
}

enum class ScalePreset { metro, zoom };

inline const char* scale_name(ScalePreset s) {
  return s == ScalePreset::metro ? "metro" : "zoom";
}

// Every knob the pipeline consults, bundled so a run is reproducible from
// the policy alone. The two factory presets are the supported scales;
// callers may tweak individual fields after construction.
struct ResolutionPolicy {
  ScalePreset scale = ScalePreset::metro;
  // Douglas-Peucker tolerance, in degrees (the coordinate unit of raw
  // features). Doubled repeatedly when a feature exceeds max_vertices.
  double dp_tolerance_deg = 2e-4;
  int chaikin_iterations = 1;
  // Polygons whose shoelace area (square degrees) falls below this are
  // dropped, except at identity tier.
  double area_threshold_deg2 = 2.5e-6;
  int max_vertices = 32;
  // Weakest tier retained unconditionally; contextual polygons above the
  // area threshold are kept even when the cutoff is stricter.
  Tier tier_cutoff = Tier::structural;
  int max_primitives = 8;
  int park_max_primitives = 20;
  // Mosaic refinement stops once the sampled symmetric-difference error
  // against the source polygon drops below this fraction of its area.
  double mosaic_error_threshold = 0.10;
  double cell_size_m = 50.0;

  static ResolutionPolicy metro() { return ResolutionPolicy{}; }

  static ResolutionPolicy zoom() {
    ResolutionPolicy p;
    p.scale = ScalePreset::zoom;
    p.dp_tolerance_deg = 2e-5;
    p.chaikin_iterations = 1;
    p.area_threshold_deg2 = 5e-9;
    p.max_vertices = 64;
    p.tier_cutoff = Tier::contextual;
    p.max_primitives = 8;
    p.park_max_primitives = 20;
    p.mosaic_error_threshold = 0.10;
    p.cell_size_m = 5.0;
    return p;
  }
};

// Validates cross-field consistency; call after mutating a preset.
inline void validate_policy(const ResolutionPolicy& p) {
  if (p.dp_tolerance_deg <= 0.0 || p.area_threshold_deg2 < 0.0 ||
      p.chaikin_iterations < 0 || p.max_vertices < 4 ||
      p.max_primitives < 1 || p.park_max_primitives < p.max_primitives ||
      p.mosaic_error_threshold <= 0.0 || p.cell_size_m <= 0.0) {
    fail(ErrorKind::schema, "resolution policy field out of range");
  }
}

// Counters reported after a pipeline run. Vertex counts include polygon
// closure duplicates exactly as stored in RawFeature.
struct ReductionStats {
  int64_t raw_geometry_count = 0;
  int64_t raw_vertex_count = 0;
  int64_t post_simplification_feature_count = 0;
  int64_t post_simplification_vertex_count = 0;
  int64_t kept_object_count = 0;
  int64_t primitive_count = 0;
  int64_t identity_count = 0;
  int64_t structural_count = 0;
  int64_t contextual_count = 0;
  int64_t parse_warning_count = 0;
  int64_t flagged_object_count = 0;

  // Fraction of raw vertices eliminated by the whole pipeline.
  double vertex_reduction() const {
    if (raw_vertex_count <= 0) {
      return 0.0;
    }
    double r = 1.0 - static_cast<double>(primitive_count) /
                         static_cast<double>(raw_vertex_count);
    if (r < 0.0) r = 0.0;
    if (r > 1.0) r = 1.0;
    return r;
  }

  // Fraction of raw geometries that did not survive to the model.
  double feature_reduction() const {
    if (raw_geometry_count <= 0) {
      return 0.0;
    }
    double r = 1.0 - static_cast<double>(kept_object_count) /
                         static_cast<double>(raw_geometry_count);
    if (r < 0.0) r = 0.0;
    if (r > 1.0) r = 1.0;
    return r;
  }
};

}  // namespace neurohex::osm

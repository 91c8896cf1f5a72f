#pragma once

// OSM extract parsing: resolves node references into coordinate lists,
// turns closed area-tagged ways and multipolygon outer rings into polygons,
// clips everything to a caller-supplied bounding box, and drops malformed
// elements behind a warning counter instead of failing the whole extract.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neurohex/error.hpp"
#include "neurohex/osm/feature.hpp"
#include "neurohex/osm/xml.hpp"

namespace neurohex::osm {

struct ParseResult {
  std::vector<RawFeature> features;
  int64_t warnings = 0;
};

namespace detail {

inline const std::string* find_attr(const XmlEvent& ev, const char* name) {
  for (const XmlAttribute& a : ev.attrs) {
    if (a.name == name) {
      return &a.value;
    }
  }
  return nullptr;
}

inline bool parse_int64(const std::string& s, int64_t& out) {
  if (s.empty()) {
    return false;
  }
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) {
    return false;
  }
  out = v;
  return true;
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) {
    return false;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    return false;
  }
  out = v;
  return true;
}

// Keys that describe provenance rather than the feature itself; a node
// carrying only these is geometry, not a point of interest.
inline bool is_meta_key(const std::string& k) {
  return k == "created_by" || k == "source" || k == "note" || k == "fixme";
}

inline bool has_meaningful_tags(const TagMap& tags) {
  for (const auto& [k, v] : tags) {
    if (!is_meta_key(k)) {
      return true;
    }
  }
  return false;
}

// A closed way is an area when its tags say so; bare closed highways stay
// polylines (roundabouts trace a loop without enclosing one).
inline bool way_is_area(const TagMap& tags) {
  const auto area = tags.find("area");
  if (area != tags.end()) {
    return area->second == "yes";
  }
  static const char* kAreaKeys[] = {"building",  "landuse", "leisure",
                                    "natural",   "amenity", "water",
                                    "building:part"};
  for (const char* key : kAreaKeys) {
    if (tags.find(key) != tags.end()) {
      return true;
    }
  }
  const auto ww = tags.find("waterway");
  return ww != tags.end() && ww->second == "riverbank";
}

// Liang-Barsky segment clip. Returns false when the segment misses the
// box entirely; otherwise writes the clipped endpoints.
inline bool clip_segment(GeoPoint p0, GeoPoint p1, const BoundingBox& box,
                         GeoPoint& a, GeoPoint& b) {
  const double dx = p1.lon - p0.lon;
  const double dy = p1.lat - p0.lat;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {p0.lon - box.west, box.east - p0.lon,
                       p0.lat - box.south, box.north - p0.lat};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) {
        return false;
      }
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      if (t > t1) return false;
      if (t > t0) t0 = t;
    } else {
      if (t < t0) return false;
      if (t < t1) t1 = t;
    }
  }
  a = GeoPoint{p0.lon + t0 * dx, p0.lat + t0 * dy};
  b = GeoPoint{p0.lon + t1 * dx, p0.lat + t1 * dy};
  return true;
}

inline bool near(GeoPoint a, GeoPoint b) {
  return std::abs(a.lon - b.lon) < 1e-12 && std::abs(a.lat - b.lat) < 1e-12;
}

// Clips an open polyline, splitting it into the maximal runs that remain
// inside the box.
inline std::vector<std::vector<GeoPoint>> clip_polyline(
    const std::vector<GeoPoint>& pts, const BoundingBox& box) {
  std::vector<std::vector<GeoPoint>> runs;
  std::vector<GeoPoint> run;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    GeoPoint a, b;
    if (!clip_segment(pts[i], pts[i + 1], box, a, b)) {
      if (run.size() >= 2) {
        runs.push_back(std::move(run));
      }
      run.clear();
      continue;
    }
    if (run.empty()) {
      run.push_back(a);
    } else if (!near(run.back(), a)) {
      if (run.size() >= 2) {
        runs.push_back(run);
      }
      run.clear();
      run.push_back(a);
    }
    if (!near(run.back(), b)) {
      run.push_back(b);
    }
  }
  if (run.size() >= 2) {
    runs.push_back(std::move(run));
  }
  return runs;
}

// Sutherland-Hodgman clip of an open ring against one half-plane.
// keep(p) is true for points inside; cross(p, q) intersects edge pq with
// the boundary line.
template <typename Keep, typename Cross>
inline std::vector<GeoPoint> clip_ring_edge(const std::vector<GeoPoint>& ring,
                                            Keep keep, Cross cross) {
  std::vector<GeoPoint> out;
  out.reserve(ring.size() + 4);
  for (size_t i = 0; i < ring.size(); ++i) {
    const GeoPoint cur = ring[i];
    const GeoPoint prev = ring[(i + ring.size() - 1) % ring.size()];
    const bool cur_in = keep(cur);
    const bool prev_in = keep(prev);
    if (cur_in) {
      if (!prev_in) {
        out.push_back(cross(prev, cur));
      }
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(cross(prev, cur));
    }
  }
  return out;
}

// Clips an open ring to the box. Returns an open ring; empty when the
// polygon lies outside or degenerates.
inline std::vector<GeoPoint> clip_ring(std::vector<GeoPoint> ring,
                                       const BoundingBox& box) {
  const auto lon_at = [](GeoPoint p, GeoPoint q, double lon) {
    const double t = (lon - p.lon) / (q.lon - p.lon);
    return GeoPoint{lon, p.lat + t * (q.lat - p.lat)};
  };
  const auto lat_at = [](GeoPoint p, GeoPoint q, double lat) {
    const double t = (lat - p.lat) / (q.lat - p.lat);
    return GeoPoint{p.lon + t * (q.lon - p.lon), lat};
  };
  ring = clip_ring_edge(
      ring, [&](GeoPoint p) { return p.lon >= box.west; },
      [&](GeoPoint p, GeoPoint q) { return lon_at(p, q, box.west); });
  if (ring.empty()) return ring;
  ring = clip_ring_edge(
      ring, [&](GeoPoint p) { return p.lon <= box.east; },
      [&](GeoPoint p, GeoPoint q) { return lon_at(p, q, box.east); });
  if (ring.empty()) return ring;
  ring = clip_ring_edge(
      ring, [&](GeoPoint p) { return p.lat >= box.south; },
      [&](GeoPoint p, GeoPoint q) { return lat_at(p, q, box.south); });
  if (ring.empty()) return ring;
  ring = clip_ring_edge(
      ring, [&](GeoPoint p) { return p.lat <= box.north; },
      [&](GeoPoint p, GeoPoint q) { return lat_at(p, q, box.north); });
  // Remove consecutive duplicates the clips can introduce.
  std::vector<GeoPoint> dedup;
  for (GeoPoint p : ring) {
    if (dedup.empty() || !near(dedup.back(), p)) {
      dedup.push_back(p);
    }
  }
  while (dedup.size() > 1 && near(dedup.front(), dedup.back())) {
    dedup.pop_back();
  }
  if (dedup.size() < 3) {
    dedup.clear();
  }
  return dedup;
}

struct PendingWay {
  int64_t id = 0;
  std::vector<int64_t> refs;
  TagMap tags;
};

struct PendingRelation {
  int64_t id = 0;
  std::vector<int64_t> outer_way_refs;
  TagMap tags;
  int64_t member_warnings = 0;
};

}  // namespace detail

// Parses an OSM XML extract and returns the features that intersect the
// box. Throws XmlSyntaxError (as ErrorKind::xml_syntax) on malformed XML
// and ErrorKind::empty_extract when nothing survives clipping.
inline ParseResult parse_osm(std::string_view xml, const BoundingBox& box) {
  validate_box(box);

  std::unordered_map<int64_t, GeoPoint> nodes;
  std::vector<std::pair<int64_t, TagMap>> tagged_nodes;
  std::vector<detail::PendingWay> ways;
  std::vector<detail::PendingRelation> relations;
  int64_t warnings = 0;

  XmlParser parser(xml);
  XmlEvent ev;

  // Current container being filled while walking children.
  enum class Scope { none, node, way, relation };
  Scope scope = Scope::none;
  int64_t cur_node_id = 0;
  TagMap cur_tags;
  detail::PendingWay cur_way;
  detail::PendingRelation cur_rel;
  bool cur_valid = false;

  const auto finish_scope = [&](Scope s) {
    if (!cur_valid) {
      return;
    }
    switch (s) {
      case Scope::node:
        if (detail::has_meaningful_tags(cur_tags)) {
          tagged_nodes.emplace_back(cur_node_id, cur_tags);
        }
        break;
      case Scope::way:
        cur_way.tags = cur_tags;
        ways.push_back(cur_way);
        break;
      case Scope::relation:
        cur_rel.tags = cur_tags;
        relations.push_back(cur_rel);
        break;
      case Scope::none:
        break;
    }
  };

  while (parser.next(ev)) {
    if (ev.kind == XmlEvent::Kind::close) {
      if ((scope == Scope::node && ev.name == "node") ||
          (scope == Scope::way && ev.name == "way") ||
          (scope == Scope::relation && ev.name == "relation")) {
        finish_scope(scope);
        scope = Scope::none;
      }
      continue;
    }
    const std::string& name = ev.name;
    if (name == "node") {
      const std::string* id_s = detail::find_attr(ev, "id");
      const std::string* lat_s = detail::find_attr(ev, "lat");
      const std::string* lon_s = detail::find_attr(ev, "lon");
      int64_t id = 0;
      GeoPoint p;
      const bool ok = id_s && lat_s && lon_s && detail::parse_int64(*id_s, id) &&
                      detail::parse_double(*lat_s, p.lat) &&
                      detail::parse_double(*lon_s, p.lon);
      if (!ok) {
        ++warnings;
        if (!ev.self_closing) {
          scope = Scope::node;
          cur_valid = false;
          cur_tags.clear();
        }
        continue;
      }
      nodes[id] = p;
      if (ev.self_closing) {
        continue;
      }
      scope = Scope::node;
      cur_node_id = id;
      cur_tags.clear();
      cur_valid = true;
    } else if (name == "way") {
      const std::string* id_s = detail::find_attr(ev, "id");
      int64_t id = 0;
      if (!id_s || !detail::parse_int64(*id_s, id)) {
        ++warnings;
        cur_valid = false;
      } else {
        cur_valid = true;
      }
      if (ev.self_closing) {
        continue;
      }
      scope = Scope::way;
      cur_way = detail::PendingWay{};
      cur_way.id = id;
      cur_tags.clear();
    } else if (name == "relation") {
      const std::string* id_s = detail::find_attr(ev, "id");
      int64_t id = 0;
      if (!id_s || !detail::parse_int64(*id_s, id)) {
        ++warnings;
        cur_valid = false;
      } else {
        cur_valid = true;
      }
      if (ev.self_closing) {
        continue;
      }
      scope = Scope::relation;
      cur_rel = detail::PendingRelation{};
      cur_rel.id = id;
      cur_tags.clear();
    } else if (name == "nd" && scope == Scope::way) {
      const std::string* ref_s = detail::find_attr(ev, "ref");
      int64_t ref = 0;
      if (ref_s && detail::parse_int64(*ref_s, ref)) {
        cur_way.refs.push_back(ref);
      } else {
        ++warnings;
      }
    } else if (name == "tag" &&
               (scope == Scope::node || scope == Scope::way ||
                scope == Scope::relation)) {
      const std::string* k = detail::find_attr(ev, "k");
      const std::string* v = detail::find_attr(ev, "v");
      if (k && v) {
        cur_tags[*k] = *v;
      }
    } else if (name == "member" && scope == Scope::relation) {
      const std::string* type = detail::find_attr(ev, "type");
      const std::string* ref_s = detail::find_attr(ev, "ref");
      const std::string* role = detail::find_attr(ev, "role");
      int64_t ref = 0;
      if (!type || !ref_s || !detail::parse_int64(*ref_s, ref)) {
        ++cur_rel.member_warnings;
        continue;
      }
      if (*type == "way") {
        const std::string r = role ? *role : "";
        if (r == "outer" || r.empty()) {
          cur_rel.outer_way_refs.push_back(ref);
        }
        // Inner rings (holes) are outside the supported subset; they are
        // ignored silently because the outer ring already bounds the area.
      } else if (*type == "relation") {
        // Nested relations are resolved one level deep only.
        ++cur_rel.member_warnings;
      }
    }
    // bounds, osm, and anything else: structural, no data.
  }

  // Resolution phase: ways first, then relations, then tagged nodes, so
  // output order is deterministic for a given document.
  ParseResult result;
  std::unordered_map<int64_t, const detail::PendingWay*> way_index;
  way_index.reserve(ways.size());
  for (const detail::PendingWay& w : ways) {
    way_index[w.id] = &w;
  }

  const auto resolve_refs = [&](const std::vector<int64_t>& refs,
                                std::vector<GeoPoint>& out) {
    out.clear();
    for (int64_t ref : refs) {
      const auto it = nodes.find(ref);
      if (it == nodes.end()) {
        return false;
      }
      out.push_back(it->second);
    }
    return true;
  };

  const auto emit_polyline = [&](int64_t id, const std::vector<GeoPoint>& pts,
                                 const TagMap& tags) {
    for (auto& run : detail::clip_polyline(pts, box)) {
      RawFeature f;
      f.id = id;
      f.kind = FeatureKind::polyline;
      f.coords = std::move(run);
      f.tags = tags;
      result.features.push_back(std::move(f));
    }
  };

  const auto emit_polygon = [&](int64_t id, std::vector<GeoPoint> ring,
                                const TagMap& tags) {
    // ring arrives open (no closure duplicate).
    ring = detail::clip_ring(std::move(ring), box);
    if (ring.empty()) {
      return;
    }
    ring.push_back(ring.front());
    RawFeature f;
    f.id = id;
    f.kind = FeatureKind::polygon;
    f.coords = std::move(ring);
    f.tags = tags;
    result.features.push_back(std::move(f));
  };

  std::vector<GeoPoint> pts;
  for (const detail::PendingWay& w : ways) {
    if (w.refs.size() < 2) {
      ++warnings;
      continue;
    }
    if (!resolve_refs(w.refs, pts)) {
      ++warnings;
      continue;
    }
    const bool closed = w.refs.size() >= 4 && w.refs.front() == w.refs.back();
    if (closed && detail::way_is_area(w.tags)) {
      pts.pop_back();
      emit_polygon(w.id, pts, w.tags);
    } else {
      emit_polyline(w.id, pts, w.tags);
    }
  }

  for (const detail::PendingRelation& rel : relations) {
    warnings += rel.member_warnings;
    const auto type = rel.tags.find("type");
    if (type == rel.tags.end() || type->second != "multipolygon") {
      continue;
    }
    // Stitch outer member ways into closed rings by matching endpoint
    // node ids.
    std::vector<std::vector<int64_t>> segs;
    for (int64_t ref : rel.outer_way_refs) {
      const auto it = way_index.find(ref);
      if (it == way_index.end() || it->second->refs.size() < 2) {
        ++warnings;
        continue;
      }
      segs.push_back(it->second->refs);
    }
    std::vector<bool> used(segs.size(), false);
    for (size_t start = 0; start < segs.size(); ++start) {
      if (used[start]) {
        continue;
      }
      used[start] = true;
      std::vector<int64_t> chain = segs[start];
      bool progress = true;
      while (!(chain.size() >= 4 && chain.front() == chain.back()) &&
             progress) {
        progress = false;
        for (size_t j = 0; j < segs.size(); ++j) {
          if (used[j]) {
            continue;
          }
          std::vector<int64_t> piece = segs[j];
          if (piece.front() == chain.back()) {
            chain.insert(chain.end(), piece.begin() + 1, piece.end());
          } else if (piece.back() == chain.back()) {
            chain.insert(chain.end(), piece.rbegin() + 1, piece.rend());
          } else {
            continue;
          }
          used[j] = true;
          progress = true;
          break;
        }
      }
      if (!(chain.size() >= 4 && chain.front() == chain.back())) {
        ++warnings;
        continue;
      }
      if (!resolve_refs(chain, pts)) {
        ++warnings;
        continue;
      }
      pts.pop_back();
      emit_polygon(rel.id, pts, rel.tags);
    }
  }

  for (const auto& [id, tags] : tagged_nodes) {
    const auto it = nodes.find(id);
    if (it == nodes.end() || !box.contains(it->second)) {
      continue;
    }
    RawFeature f;
    f.id = id;
    f.kind = FeatureKind::node;
    f.coords.push_back(it->second);
    f.tags = tags;
    result.features.push_back(std::move(f));
  }

  result.warnings = warnings;
  if (result.features.empty()) {
    fail(ErrorKind::empty_extract, "no features intersect the bounding box");
  }
  return result;
}

}  // namespace neurohex::osm

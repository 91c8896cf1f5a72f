#pragma once

// Geometry simplification on raw lon/lat coordinates: Douglas-Peucker
// vertex pruning with the classic soundness guarantee (every removed
// vertex stays within tolerance of the output polyline) and Chaikin
// quarter-point corner cutting. Both treat coordinates as plain 2D; the
// tolerance is expressed in the same unit (degrees).

#include <cmath>
#include <vector>

#include "neurohex/error.hpp"
#include "neurohex/osm/feature.hpp"

namespace neurohex::osm {

// Euclidean distance from p to segment ab.
inline double point_segment_distance(GeoPoint p, GeoPoint a, GeoPoint b) {
  const double abx = b.lon - a.lon;
  const double aby = b.lat - a.lat;
  const double apx = p.lon - a.lon;
  const double apy = p.lat - a.lat;
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0.0) {
    t = (apx * abx + apy * aby) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
  }
  const double dx = apx - t * abx;
  const double dy = apy - t * aby;
  return std::sqrt(dx * dx + dy * dy);
}

// Douglas-Peucker on an open polyline. Endpoints always survive; the
// recursion is run on an explicit stack so pathological inputs cannot
// overflow the call stack.
inline std::vector<GeoPoint> douglas_peucker(const std::vector<GeoPoint>& line,
                                             double tolerance) {
  if (tolerance < 0.0) {
    fail(ErrorKind::schema, "simplification tolerance must be non-negative");
  }
  const size_t n = line.size();
  if (n <= 2) {
    return line;
  }
  std::vector<bool> keep(n, false);
  keep.front() = true;
  keep.back() = true;
  std::vector<std::pair<size_t, size_t>> stack;
  stack.emplace_back(0, n - 1);
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) {
      continue;
    }
    double worst = -1.0;
    size_t worst_i = lo;
    for (size_t i = lo + 1; i < hi; ++i) {
      const double d = point_segment_distance(line[i], line[lo], line[hi]);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > tolerance) {
      keep[worst_i] = true;
      stack.emplace_back(lo, worst_i);
      stack.emplace_back(worst_i, hi);
    }
  }
  std::vector<GeoPoint> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      out.push_back(line[i]);
    }
  }
  return out;
}

// Douglas-Peucker for a closed ring given WITHOUT the closure duplicate.
// The ring is split at its first vertex and the vertex farthest from it,
// both halves are simplified independently, and the anchors always stay.
inline std::vector<GeoPoint> douglas_peucker_ring(
    const std::vector<GeoPoint>& ring, double tolerance) {
  const size_t n = ring.size();
  if (n <= 3) {
    return ring;
  }
  size_t far_i = 1;
  double far_d = -1.0;
  for (size_t i = 1; i < n; ++i) {
    const double dx = ring[i].lon - ring[0].lon;
    const double dy = ring[i].lat - ring[0].lat;
    const double d = dx * dx + dy * dy;
    if (d > far_d) {
      far_d = d;
      far_i = i;
    }
  }
  std::vector<GeoPoint> half1(ring.begin(), ring.begin() + far_i + 1);
  std::vector<GeoPoint> half2(ring.begin() + far_i, ring.end());
  half2.push_back(ring.front());
  const std::vector<GeoPoint> s1 = douglas_peucker(half1, tolerance);
  const std::vector<GeoPoint> s2 = douglas_peucker(half2, tolerance);
  std::vector<GeoPoint> out(s1.begin(), s1.end());
  out.insert(out.end(), s2.begin() + 1, s2.end() - 1);
  return out;
}

// One Chaikin pass over an open polyline: endpoints are preserved and
// every interior vertex is replaced by its quarter and three-quarter
// points, so n vertices become 2n-2.
inline std::vector<GeoPoint> chaikin_open_once(
    const std::vector<GeoPoint>& line) {
  const size_t n = line.size();
  if (n <= 2) {
    return line;
  }
  std::vector<GeoPoint> out;
  out.reserve(2 * n - 2);
  out.push_back(line.front());
  for (size_t i = 1; i + 1 < n; ++i) {
    const GeoPoint prev = line[i - 1];
    const GeoPoint cur = line[i];
    const GeoPoint next = line[i + 1];
    out.push_back(GeoPoint{0.25 * prev.lon + 0.75 * cur.lon,
                           0.25 * prev.lat + 0.75 * cur.lat});
    out.push_back(GeoPoint{0.75 * cur.lon + 0.25 * next.lon,
                           0.75 * cur.lat + 0.25 * next.lat});
  }
  out.push_back(line.back());
  return out;
}

inline std::vector<GeoPoint> chaikin_open(std::vector<GeoPoint> line,
                                          int iterations) {
  for (int i = 0; i < iterations; ++i) {
    line = chaikin_open_once(line);
  }
  return line;
}

// One Chaikin pass over a closed ring (no closure duplicate): every edge
// contributes its quarter points, so n vertices become 2n.
inline std::vector<GeoPoint> chaikin_ring_once(
    const std::vector<GeoPoint>& ring) {
  const size_t n = ring.size();
  if (n < 3) {
    return ring;
  }
  std::vector<GeoPoint> out;
  out.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) {
    const GeoPoint a = ring[i];
    const GeoPoint b = ring[(i + 1) % n];
    out.push_back(
        GeoPoint{0.75 * a.lon + 0.25 * b.lon, 0.75 * a.lat + 0.25 * b.lat});
    out.push_back(
        GeoPoint{0.25 * a.lon + 0.75 * b.lon, 0.25 * a.lat + 0.75 * b.lat});
  }
  return out;
}

inline std::vector<GeoPoint> chaikin_ring(std::vector<GeoPoint> ring,
                                          int iterations) {
  for (int i = 0; i < iterations; ++i) {
    ring = chaikin_ring_once(ring);
  }
  return ring;
}

// Signed shoelace area of a closed ring given without the closure
// duplicate, in square degrees. Positive for counterclockwise winding in
// the lon/lat plane.
inline double ring_area(const std::vector<GeoPoint>& ring) {
  const size_t n = ring.size();
  if (n < 3) {
    return 0.0;
  }
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const GeoPoint a = ring[i];
    const GeoPoint b = ring[(i + 1) % n];
    acc += a.lon * b.lat - b.lon * a.lat;
  }
  return acc / 2.0;
}

}  // namespace neurohex::osm

#pragma once

// Fits simplified geographic features to the primitive palette. All fitting
// decisions happen in plane coordinates (the continuous embedding of the
// grid); lattice shapes are emitted at the end, and every emitted primitive
// carries a plane twin of its denoted region so the symmetric-difference
// error can be sampled against the source polygon.
//
// Polylines become greedy maximal runs: a run keeps extending while it fits
// a straight segment (ray pair) or a circular arc (gauge donut intersected
// with a wedge) within one cell pitch of deviation.
//
// Polygons start from either an area-matched disc (when the isoperimetric
// quotient says the outline is round) or the minimum-area oriented bounding
// rectangle, then add rectangle, triangle, or disc patches over the largest
// uncovered region until the sampled error clears the policy threshold or
// the primitive budget runs out. Budget exhaustion sets the accuracy flag
// instead of failing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "neurohex/error.hpp"
#include "neurohex/hex.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/osm/feature.hpp"
#include "neurohex/osm/geo.hpp"
#include "neurohex/shapes.hpp"

namespace neurohex::osm {

using oracle::PlanePoint;

struct MosaicObject {
  int64_t source_id = 0;
  FeatureClass cls = FeatureClass::other;
  Tier tier = Tier::discard;
  bool accuracy_flag = false;
  std::vector<Shape> primitives;
};

namespace detail {

// Maximum deviation, in plane units, between a run of polyline vertices
// and the segment or arc standing in for it. One cell pitch: the model is
// allowed to be wrong by the width of a single cell.
inline constexpr double kFitTolerance = oracle::kCellPitch;

// Circular arcs larger than this radius are indistinguishable from
// segments at fit tolerance over city-block runs and produce unwieldy
// magnitudes, so the fitter refuses them and splits instead.
inline constexpr double kMaxArcRadius = 300.0;

struct FittedPrim {
  Shape shape;
  std::function<bool(PlanePoint)> covers;
};

inline QuantizedAngle dir_angle(HexCoord from, HexCoord to, Quantization qz) {
  return normalize_angle(polar_angle(translate(to, from)), qz);
}

// Hexagon area with gauge radius m is (9*sqrt(3)/2) m^2; matching a disc
// of Euclidean radius rho gives m = rho * sqrt(pi / (9*sqrt(3)/2)).
inline constexpr double kDiscAreaMatch = 0.6349363593424098;

inline int64_t disc_magnitude(double rho) {
  const int64_t m = std::llround(rho * kDiscAreaMatch);
  return m < 1 ? 1 : m;
}

inline FittedPrim disc_prim(PlanePoint center, double rho) {
  const HexCoord c = oracle::plane_to_hex(center);
  const int64_t m = disc_magnitude(rho);
  const PlanePoint snapped = oracle::hex_to_plane(c);
  return FittedPrim{
      Shape{make_disc(c, m)},
      [snapped, m](PlanePoint p) {
        return oracle::gauge(p - snapped) <= static_cast<double>(m);
      }};
}

// Two opposing wedges covering the convex quad c0..c3 (clockwise). Falls
// back to nullopt when grid snapping degenerates or breaks convexity.
inline std::optional<FittedPrim> quad_prim(const PlanePoint (&corners)[4],
                                           Quantization qz) {
  HexCoord h[4] = {oracle::plane_to_hex(corners[0]),
                   oracle::plane_to_hex(corners[1]),
                   oracle::plane_to_hex(corners[2]),
                   oracle::plane_to_hex(corners[3])};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (h[i] == h[j]) {
        return std::nullopt;
      }
    }
  }
  std::vector<PlanePoint> snapped;
  for (const HexCoord& c : h) {
    snapped.push_back(oracle::hex_to_plane(c));
  }
  // Clockwise convexity in the y-up plane: every consecutive cross must be
  // negative. Snapping can fold a thin quad; refuse those.
  for (int i = 0; i < 4; ++i) {
    const PlanePoint e0 = snapped[(i + 1) % 4] - snapped[i];
    const PlanePoint e1 = snapped[(i + 2) % 4] - snapped[(i + 1) % 4];
    if (oracle::cross(e0, e1) >= 0.0) {
      return std::nullopt;
    }
  }
  const int64_t m0 = std::max({distance(h[0], h[1]), distance(h[0], h[2]),
                               distance(h[0], h[3])});
  const int64_t m2 = std::max({distance(h[2], h[3]), distance(h[2], h[0]),
                               distance(h[2], h[1])});
  const FoundationalShape w0 =
      make_wedge(h[0], m0, dir_angle(h[0], h[1], qz), dir_angle(h[0], h[3], qz), qz);
  const FoundationalShape w2 =
      make_wedge(h[2], m2, dir_angle(h[2], h[3], qz), dir_angle(h[2], h[1], qz), qz);
  return FittedPrim{
      Shape{make_simple(w0, w2)},
      [snapped](PlanePoint p) {
        return oracle::cart_winding_number(p, snapped) != 0;
      }};
}

// Two wedges covering the triangle t0 t1 t2 (any winding; reordered to
// clockwise internally).
inline std::optional<FittedPrim> triangle_prim(PlanePoint t0, PlanePoint t1,
                                               PlanePoint t2,
                                               Quantization qz) {
  if (oracle::cross(t1 - t0, t2 - t0) > 0.0) {
    std::swap(t1, t2);
  }
  const HexCoord a = oracle::plane_to_hex(t0);
  const HexCoord b = oracle::plane_to_hex(t1);
  const HexCoord c = oracle::plane_to_hex(t2);
  if (a == b || b == c || a == c) {
    return std::nullopt;
  }
  const std::vector<PlanePoint> snapped = {oracle::hex_to_plane(a),
                                           oracle::hex_to_plane(b),
                                           oracle::hex_to_plane(c)};
  if (oracle::cross(snapped[1] - snapped[0], snapped[2] - snapped[0]) >= 0.0) {
    return std::nullopt;
  }
  const int64_t ma = std::max(distance(a, b), distance(a, c));
  const int64_t mb = std::max(distance(b, c), distance(b, a));
  const FoundationalShape wa =
      make_wedge(a, ma, dir_angle(a, b, qz), dir_angle(a, c, qz), qz);
  const FoundationalShape wb =
      make_wedge(b, mb, dir_angle(b, c, qz), dir_angle(b, a, qz), qz);
  return FittedPrim{
      Shape{make_simple(wa, wb)},
      [snapped](PlanePoint p) {
        return oracle::cart_winding_number(p, snapped) != 0;
      }};
}

// ---------------------------------------------------------------------
// Polyline fitting.

inline bool straight_fits(const std::vector<PlanePoint>& pts, size_t lo,
                          size_t hi) {
  for (size_t i = lo + 1; i < hi; ++i) {
    if (oracle::segment_distance(pts[i], pts[lo], pts[hi]) > kFitTolerance) {
      return false;
    }
  }
  return true;
}

struct ArcFit {
  PlanePoint center;
  double radius = 0.0;
  bool clockwise = false;
};

inline std::optional<PlanePoint> circle_center(PlanePoint a, PlanePoint b,
                                               PlanePoint c) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) +
                          c.x * (a.y - b.y));
  if (std::abs(d) < 1e-9) {
    return std::nullopt;
  }
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  return PlanePoint{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                    (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

inline std::optional<ArcFit> arc_fits(const std::vector<PlanePoint>& pts,
                                      size_t lo, size_t hi) {
  if (hi < lo + 2) {
    return std::nullopt;
  }
  const auto center = circle_center(pts[lo], pts[(lo + hi) / 2], pts[hi]);
  if (!center) {
    return std::nullopt;
  }
  const double radius = oracle::norm(pts[lo] - *center);
  if (radius < 1.0 || radius > kMaxArcRadius) {
    return std::nullopt;
  }
  double sweep = 0.0;
  for (size_t i = lo; i <= hi; ++i) {
    const PlanePoint v = pts[i] - *center;
    if (std::abs(oracle::norm(v) - radius) > kFitTolerance) {
      return std::nullopt;
    }
    if (i > lo) {
      const PlanePoint u = pts[i - 1] - *center;
      const double step =
          std::atan2(oracle::cross(u, v), oracle::dot(u, v));
      if (sweep != 0.0 && step * sweep < 0.0) {
        // direction reversal: an S-curve, not one arc
        return std::nullopt;
      }
      sweep += step;
    }
  }
  if (std::abs(sweep) < 1e-9 || std::abs(sweep) > 1.6 * 3.14159265358979323846) {
    return std::nullopt;
  }
  return ArcFit{*center, radius, sweep < 0.0};
}

inline Shape segment_shape(PlanePoint a, PlanePoint b, Quantization qz) {
  const HexCoord ha = oracle::plane_to_hex(a);
  const HexCoord hb = oracle::plane_to_hex(b);
  if (ha == hb) {
    return Shape{make_point(ha)};
  }
  const int64_t d = distance(ha, hb);
  const FoundationalShape r0 = make_ray(ha, d, dir_angle(ha, hb, qz), qz);
  const FoundationalShape r1 = make_ray(hb, d, dir_angle(hb, ha, qz), qz);
  return Shape{make_simple(r0, r1)};
}

inline Shape arc_shape(const std::vector<PlanePoint>& pts, size_t lo,
                       size_t hi, const ArcFit& fit, Quantization qz) {
  const HexCoord center = oracle::plane_to_hex(fit.center);
  const PlanePoint cp = oracle::hex_to_plane(center);
  double gmin = 1e18;
  double gmax = 0.0;
  for (size_t i = lo; i <= hi; ++i) {
    const double g = oracle::gauge(pts[i] - cp);
    gmin = std::min(gmin, g);
    gmax = std::max(gmax, g);
  }
  int64_t outer = std::llround(gmax + 1.0);
  int64_t inner = std::llround(gmin - 1.0);
  if (outer < 1) outer = 1;
  if (inner < 0) inner = 0;
  if (inner >= outer) inner = outer - 1;
  const PlanePoint v_first = pts[lo] - cp;
  const PlanePoint v_last = pts[hi] - cp;
  if (oracle::norm(v_first) < 1e-9 || oracle::norm(v_last) < 1e-9) {
    return segment_shape(pts[lo], pts[hi], qz);
  }
  const double p_first = oracle::hex_angle_param(v_first, qz);
  const double p_last = oracle::hex_angle_param(v_last, qz);
  // Clockwise traversal walks the quantized parameter upward, so the arc
  // interval runs from the entry angle to the exit angle in that order.
  const double p_start = fit.clockwise ? p_first : p_last;
  const double p_end = fit.clockwise ? p_last : p_first;
  const int64_t turn = qz.full_turn();
  const auto wrap = [turn](int64_t v) { return ((v % turn) + turn) % turn; };
  // One extra quantum each side absorbs center snapping.
  const int64_t qa_start = wrap(static_cast<int64_t>(std::floor(p_start)) - 1);
  const int64_t qa_end = wrap(static_cast<int64_t>(std::floor(p_end)) + 1);
  const FoundationalShape disc_outer = make_disc(center, outer);
  const FoundationalShape disc_inner = make_disc(center, inner);
  const FoundationalShape wedge =
      make_wedge(center, outer, quantized_angle(qa_start, qz),
                 quantized_angle(qa_end, qz), qz);
  return Shape{ComplexShape::ao(
      ComplexShape::so(ComplexShape::leaf(disc_outer),
                       ComplexShape::leaf(disc_inner)),
      ComplexShape::leaf(wedge))};
}

inline void fit_polyline(const std::vector<PlanePoint>& pts, int budget,
                         Quantization qz, std::vector<Shape>& out,
                         bool& flag) {
  const size_t n = pts.size();
  if (n == 0) {
    return;
  }
  if (n == 1) {
    out.push_back(Shape{make_point(oracle::plane_to_hex(pts[0]))});
    return;
  }
  size_t i = 0;
  while (i + 1 < n) {
    if (static_cast<int>(out.size()) >= budget) {
      flag = true;
      return;
    }
    size_t j = i + 1;
    while (j + 1 < n &&
           (straight_fits(pts, i, j + 1) || arc_fits(pts, i, j + 1))) {
      ++j;
    }
    if (straight_fits(pts, i, j)) {
      out.push_back(segment_shape(pts[i], pts[j], qz));
    } else if (const auto fit = arc_fits(pts, i, j)) {
      out.push_back(arc_shape(pts, i, j, *fit, qz));
    } else {
      out.push_back(segment_shape(pts[i], pts[j], qz));
    }
    i = j;
  }
}

// ---------------------------------------------------------------------
// Polygon fitting.

inline double polygon_area(const std::vector<PlanePoint>& ring) {
  double acc = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    acc += oracle::cross(ring[i], ring[(i + 1) % n]);
  }
  return acc / 2.0;
}

inline double polygon_perimeter(const std::vector<PlanePoint>& ring) {
  double acc = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    acc += oracle::norm(ring[(i + 1) % n] - ring[i]);
  }
  return acc;
}

inline PlanePoint polygon_centroid(const std::vector<PlanePoint>& ring) {
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const PlanePoint p = ring[i];
    const PlanePoint q = ring[(i + 1) % n];
    const double w = oracle::cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a) < 1e-12) {
    PlanePoint mean{0, 0};
    for (PlanePoint p : ring) {
      mean = mean + p;
    }
    return (1.0 / static_cast<double>(n)) * mean;
  }
  return PlanePoint{cx / (3.0 * a), cy / (3.0 * a)};
}

// Andrew monotone chain; returns hull in counterclockwise order.
inline std::vector<PlanePoint> convex_hull(std::vector<PlanePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](PlanePoint a, PlanePoint b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](PlanePoint a, PlanePoint b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) {
    return pts;
  }
  std::vector<PlanePoint> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && oracle::cross(hull[k - 1] - hull[k - 2],
                                   pts[i] - hull[k - 2]) <= 0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && oracle::cross(hull[k - 1] - hull[k - 2],
                                       pts[i] - hull[k - 2]) <= 0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Minimum-area oriented bounding rectangle of a hull, corners in clockwise
// order (y-up).
inline bool min_area_rect(const std::vector<PlanePoint>& hull,
                          PlanePoint (&corners)[4]) {
  const size_t n = hull.size();
  if (n < 3) {
    return false;
  }
  double best = 1e30;
  for (size_t i = 0; i < n; ++i) {
    const PlanePoint e = hull[(i + 1) % n] - hull[i];
    const double len = oracle::norm(e);
    if (len < 1e-12) {
      continue;
    }
    const PlanePoint u{e.x / len, e.y / len};
    const PlanePoint v{-u.y, u.x};
    double umin = 1e30, umax = -1e30, vmin = 1e30, vmax = -1e30;
    for (PlanePoint p : hull) {
      const double pu = oracle::dot(p, u);
      const double pv = oracle::dot(p, v);
      umin = std::min(umin, pu);
      umax = std::max(umax, pu);
      vmin = std::min(vmin, pv);
      vmax = std::max(vmax, pv);
    }
    const double area = (umax - umin) * (vmax - vmin);
    if (area < best) {
      best = area;
      const auto at = [&](double cu, double cv) {
        return PlanePoint{cu * u.x + cv * v.x, cu * u.y + cv * v.y};
      };
      // Order (umin,vmin) -> (umin,vmax) -> (umax,vmax) -> (umax,vmin) is
      // clockwise when v is the left normal of u.
      corners[0] = at(umin, vmin);
      corners[1] = at(umin, vmax);
      corners[2] = at(umax, vmax);
      corners[3] = at(umax, vmin);
    }
  }
  if (best >= 1e30) {
    return false;
  }
  // Normalize to clockwise regardless of basis handedness.
  const double sh = polygon_area(std::vector<PlanePoint>(corners, corners + 4));
  if (sh > 0) {
    std::swap(corners[1], corners[3]);
  }
  return true;
}

struct SampleGrid {
  std::vector<PlanePoint> points;
  std::vector<char> in_source;
  std::vector<char> in_mosaic;
  double cell_area = 0.0;
};

inline SampleGrid make_sample_grid(const std::vector<PlanePoint>& ring) {
  constexpr int kSide = 40;
  double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
  for (PlanePoint p : ring) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  SampleGrid grid;
  const double sx = (maxx - minx) / kSide;
  const double sy = (maxy - miny) / kSide;
  grid.cell_area = sx * sy;
  grid.points.reserve(kSide * kSide);
  for (int iy = 0; iy < kSide; ++iy) {
    for (int ix = 0; ix < kSide; ++ix) {
      grid.points.push_back(PlanePoint{minx + (ix + 0.5) * sx,
                                       miny + (iy + 0.5) * sy});
    }
  }
  grid.in_source.resize(grid.points.size());
  grid.in_mosaic.assign(grid.points.size(), 0);
  for (size_t s = 0; s < grid.points.size(); ++s) {
    grid.in_source[s] =
        oracle::cart_winding_number(grid.points[s], ring) != 0 ? 1 : 0;
  }
  return grid;
}

inline double grid_error(const SampleGrid& grid) {
  int64_t mism = 0;
  int64_t src = 0;
  for (size_t s = 0; s < grid.points.size(); ++s) {
    src += grid.in_source[s];
    mism += grid.in_source[s] != grid.in_mosaic[s] ? 1 : 0;
  }
  if (src == 0) {
    return 0.0;
  }
  return static_cast<double>(mism) / static_cast<double>(src);
}

inline void apply_cover(SampleGrid& grid,
                        const std::function<bool(PlanePoint)>& covers) {
  for (size_t s = 0; s < grid.points.size(); ++s) {
    if (!grid.in_mosaic[s] && covers(grid.points[s])) {
      grid.in_mosaic[s] = 1;
    }
  }
}

inline double error_with(const SampleGrid& grid,
                         const std::function<bool(PlanePoint)>& covers) {
  int64_t mism = 0;
  int64_t src = 0;
  for (size_t s = 0; s < grid.points.size(); ++s) {
    src += grid.in_source[s];
    const bool in_mos = grid.in_mosaic[s] || covers(grid.points[s]);
    mism += (grid.in_source[s] != 0) != in_mos ? 1 : 0;
  }
  if (src == 0) {
    return 0.0;
  }
  return static_cast<double>(mism) / static_cast<double>(src);
}

// Largest-area triangle over hull vertices, subsampled so the cubic scan
// stays small.
inline bool best_triangle(const std::vector<PlanePoint>& hull, PlanePoint& t0,
                          PlanePoint& t1, PlanePoint& t2) {
  std::vector<PlanePoint> pts;
  const size_t stride = hull.size() > 24 ? (hull.size() + 23) / 24 : 1;
  for (size_t i = 0; i < hull.size(); i += stride) {
    pts.push_back(hull[i]);
  }
  if (pts.size() < 3) {
    return false;
  }
  double best = 0.0;
  for (size_t a = 0; a < pts.size(); ++a) {
    for (size_t b = a + 1; b < pts.size(); ++b) {
      for (size_t c = b + 1; c < pts.size(); ++c) {
        const double area =
            std::abs(oracle::cross(pts[b] - pts[a], pts[c] - pts[a])) / 2.0;
        if (area > best) {
          best = area;
          t0 = pts[a];
          t1 = pts[b];
          t2 = pts[c];
        }
      }
    }
  }
  return best > 1e-9;
}

inline void fit_polygon(const std::vector<PlanePoint>& ring, int budget,
                        double error_threshold, Quantization qz,
                        std::vector<Shape>& out, bool& flag) {
  if (ring.size() < 3) {
    if (!ring.empty()) {
      out.push_back(Shape{make_point(oracle::plane_to_hex(ring[0]))});
    }
    return;
  }
  const double area = std::abs(polygon_area(ring));
  const double perim = polygon_perimeter(ring);
  const PlanePoint centroid = polygon_centroid(ring);
  if (area < 1e-9 || perim < 1e-9) {
    out.push_back(Shape{make_point(oracle::plane_to_hex(centroid))});
    return;
  }
  const double pi = 3.14159265358979323846;
  std::vector<FittedPrim> prims;

  const double roundness = 4.0 * pi * area / (perim * perim);
  if (roundness > 0.9) {
    prims.push_back(disc_prim(centroid, std::sqrt(area / pi)));
  } else {
    const std::vector<PlanePoint> hull = convex_hull(ring);
    PlanePoint corners[4];
    if (min_area_rect(hull, corners)) {
      if (auto quad = quad_prim(corners, qz)) {
        prims.push_back(std::move(*quad));
      }
    }
    if (prims.empty()) {
      prims.push_back(disc_prim(centroid, std::sqrt(area / pi)));
    }
  }

  SampleGrid grid = make_sample_grid(ring);
  for (const FittedPrim& p : prims) {
    apply_cover(grid, p.covers);
  }
  double err = grid_error(grid);

  while (err > error_threshold &&
         static_cast<int>(prims.size()) < budget) {
    std::vector<PlanePoint> uncovered;
    for (size_t s = 0; s < grid.points.size(); ++s) {
      if (grid.in_source[s] && !grid.in_mosaic[s]) {
        uncovered.push_back(grid.points[s]);
      }
    }
    if (uncovered.empty()) {
      break;
    }
    std::vector<FittedPrim> candidates;
    const std::vector<PlanePoint> uhull = convex_hull(uncovered);
    PlanePoint corners[4];
    if (min_area_rect(uhull, corners)) {
      if (auto quad = quad_prim(corners, qz)) {
        candidates.push_back(std::move(*quad));
      }
    }
    PlanePoint t0, t1, t2;
    if (best_triangle(uhull, t0, t1, t2)) {
      if (auto tri = triangle_prim(t0, t1, t2, qz)) {
        candidates.push_back(std::move(*tri));
      }
    }
    {
      PlanePoint mean{0, 0};
      for (PlanePoint p : uncovered) {
        mean = mean + p;
      }
      mean = (1.0 / static_cast<double>(uncovered.size())) * mean;
      const double unc_area =
          static_cast<double>(uncovered.size()) * grid.cell_area;
      candidates.push_back(disc_prim(mean, std::sqrt(std::max(unc_area, 1.0) / pi)));
    }
    int best_i = -1;
    double best_err = err;
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
      const double e = error_with(grid, candidates[ci].covers);
      if (e < best_err - 1e-12) {
        best_err = e;
        best_i = static_cast<int>(ci);
      }
    }
    if (best_i < 0) {
      break;
    }
    apply_cover(grid, candidates[best_i].covers);
    prims.push_back(std::move(candidates[best_i]));
    err = best_err;
  }

  flag = flag || err > error_threshold;
  for (FittedPrim& p : prims) {
    out.push_back(std::move(p.shape));
  }
}

}  // namespace detail

// Budget applying to one object of the given class.
inline int primitive_budget(FeatureClass cls, const ResolutionPolicy& policy) {
  return cls == FeatureClass::park ? policy.park_max_primitives
                                   : policy.max_primitives;
}

// Converts one simplified feature into a mosaic object. Never fails on
// fitting trouble: a poor fit sets accuracy_flag and keeps the best
// primitives found within budget.
inline MosaicObject fit_feature(const RawFeature& feature, FeatureClass cls,
                                const GridFrame& frame,
                                const ResolutionPolicy& policy,
                                Quantization qz = kDefaultQuantization) {
  MosaicObject obj;
  obj.source_id = feature.id;
  obj.cls = cls;
  obj.tier = tier_of(cls);

  std::vector<PlanePoint> pts;
  pts.reserve(feature.coords.size());
  for (GeoPoint g : feature.coords) {
    pts.push_back(geo_to_plane(g, frame));
  }

  const int budget = primitive_budget(cls, policy);
  switch (feature.kind) {
    case FeatureKind::node:
      if (!pts.empty()) {
        obj.primitives.push_back(
            Shape{make_point(oracle::plane_to_hex(pts[0]))});
      }
      break;
    case FeatureKind::polyline:
      detail::fit_polyline(pts, budget, qz, obj.primitives,
                           obj.accuracy_flag);
      break;
    case FeatureKind::polygon: {
      if (!pts.empty()) {
        pts.pop_back();  // drop closure duplicate
      }
      detail::fit_polygon(pts, budget, policy.mosaic_error_threshold, qz,
                          obj.primitives, obj.accuracy_flag);
      break;
    }
  }
  return obj;
}

}  // namespace neurohex::osm

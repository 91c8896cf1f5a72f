#pragma once

// Plane-side reference regions for membership agreement tests. Each region
// states, in exact real geometry, which area a lattice shape denotes: discs
// are hexagonal gauge balls, arcs are perimeter-parameter intervals widened
// to the quantum they admit, polygons are plane polygons. Membership is
// evaluated with the Cartesian toolkit (atan2, winding numbers, segment
// distances) so it shares no code path with the ring-encoding predicates.
// Regions also expose their boundary as polylines so tests can exclude the
// quantization band (cells within one cell diameter of a boundary).

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "neurohex/hex.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/shapes.hpp"

namespace shapetest {

using neurohex::HexCoord;
using neurohex::Quantization;
using neurohex::kWedgeCorners;
using neurohex::oracle::PlanePoint;
using neurohex::oracle::hex_to_plane;
using neurohex::oracle::kSqrt3;

using neurohex::oracle::gauge;
using neurohex::oracle::perimeter_point;
using neurohex::oracle::segment_distance;

struct Region {
  std::function<bool(PlanePoint)> inside;
  std::vector<std::vector<PlanePoint>> boundaries;

  double boundary_distance(PlanePoint p) const {
    double best = 1e18;
    for (const auto& line : boundaries)
      for (size_t i = 0; i + 1 < line.size(); ++i)
        best = std::min(best, segment_distance(p, line[i], line[i + 1]));
    return best;
  }
};

inline std::vector<PlanePoint> gauge_hexagon(PlanePoint center, double m) {
  std::vector<PlanePoint> line;
  for (int w = 0; w <= 6; ++w)
    line.push_back(center + m * hex_to_plane(kWedgeCorners[w % 6]));
  return line;
}

inline Region disc_region(HexCoord anchor, int64_t m) {
  const PlanePoint c = hex_to_plane(anchor);
  const double fm = static_cast<double>(m);
  Region r;
  r.inside = [c, fm](PlanePoint p) { return gauge(p - c) <= fm; };
  r.boundaries = {gauge_hexagon(c, fm)};
  return r;
}

// The quantized arc [start, end] admits exact parameters in the half-open
// interval [start, end + 1): flooring the parameter is what the lattice
// membership test computes.
inline Region wedge_region(HexCoord anchor, int64_t m, int64_t start,
                           int64_t end, Quantization qz) {
  const PlanePoint c = hex_to_plane(anchor);
  const double fm = static_cast<double>(m);
  const double turn = static_cast<double>(qz.full_turn());
  const double width =
      std::fmod(static_cast<double>(end - start) + turn, turn) + 1.0;
  const double fstart = static_cast<double>(start);
  Region r;
  r.inside = [c, fm, fstart, width, turn, qz](PlanePoint p) {
    const PlanePoint v = p - c;
    if (gauge(v) > fm) return false;
    if (neurohex::oracle::norm(v) < 1e-12) return true;  // the anchor cell
    const double param = neurohex::oracle::hex_angle_param(v, qz);
    double off = std::fmod(param - fstart + turn, turn);
    return off < width;
  };
  // two radial edges and the rim arc between them
  const double close = fstart + width;
  std::vector<PlanePoint> rim;
  rim.push_back(c + fm * perimeter_point(fstart, qz));
  const double quantum = static_cast<double>(qz.q());
  for (double corner = std::ceil(fstart / quantum) * quantum; corner < close;
       corner += quantum)
    if (corner > fstart)
      rim.push_back(c + fm * perimeter_point(corner, qz));
  rim.push_back(c + fm * perimeter_point(close, qz));
  r.boundaries = {{c, rim.front()}, {c, rim.back()}, rim};
  return r;
}

inline Region polygon_region(const std::vector<HexCoord>& verts) {
  std::vector<PlanePoint> ring;
  ring.reserve(verts.size() + 1);
  for (HexCoord v : verts) ring.push_back(hex_to_plane(v));
  std::vector<PlanePoint> poly = ring;
  ring.push_back(ring.front());
  Region r;
  r.inside = [poly](PlanePoint p) {
    return neurohex::oracle::cart_winding_number(p, poly) != 0;
  };
  r.boundaries = {ring};
  return r;
}

inline Region intersect_regions(Region a, Region b) {
  Region r;
  r.inside = [ia = a.inside, ib = b.inside](PlanePoint p) {
    return ia(p) && ib(p);
  };
  r.boundaries = a.boundaries;
  for (auto& line : b.boundaries) r.boundaries.push_back(std::move(line));
  return r;
}

inline Region subtract_regions(Region a, Region b) {
  Region r;
  r.inside = [ia = a.inside, ib = b.inside](PlanePoint p) {
    return ia(p) && !ib(p);
  };
  r.boundaries = a.boundaries;
  for (auto& line : b.boundaries) r.boundaries.push_back(std::move(line));
  return r;
}

inline Region unite_regions(Region a, Region b) {
  Region r;
  r.inside = [ia = a.inside, ib = b.inside](PlanePoint p) {
    return ia(p) || ib(p);
  };
  r.boundaries = a.boundaries;
  for (auto& line : b.boundaries) r.boundaries.push_back(std::move(line));
  return r;
}

inline Region foundational_region(const neurohex::FoundationalShape& f,
                                  Quantization qz) {
  switch (neurohex::foundation_kind(f)) {
    case neurohex::FoundationKind::disc:
      return disc_region(f.anchor, *f.magnitude);
    case neurohex::FoundationKind::wedge:
      return wedge_region(f.anchor, *f.magnitude, f.angle_start->value,
                          f.angle_end->value, qz);
    default:
      throw std::logic_error("no plane region for points and rays");
  }
}

}  // namespace shapetest

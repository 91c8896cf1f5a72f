#pragma once

// Links geographic coordinates to the hex grid. A GridFrame pins a lon/lat
// origin and a physical cell pitch; projection is local equirectangular
// about the origin (sufficient at city extent), with adjacent cell centers
// exactly cell_size_m meters apart.

#include <cmath>

#include "neurohex/error.hpp"
#include "neurohex/hex.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/osm/feature.hpp"

namespace neurohex::osm {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

// Beyond this lon/lat span the equirectangular approximation degrades and
// plane coordinates overflow useful cell counts, so conversions refuse.
inline constexpr double kMaxGridSpanDeg = 2.0;

struct GridFrame {
  GeoPoint origin;
  double cell_size_m = 50.0;

  static GridFrame centered(const BoundingBox& box, double cell_size_m) {
    if (cell_size_m <= 0.0) {
      fail(ErrorKind::invalid_scale, "cell size must be positive");
    }
    return GridFrame{box.center(), cell_size_m};
  }
};

// Meters east/north of the frame origin.
inline oracle::PlanePoint geo_to_meters(GeoPoint p, const GridFrame& frame) {
  const double east = (p.lon - frame.origin.lon) * kDegToRad * kEarthRadiusM *
                      std::cos(frame.origin.lat * kDegToRad);
  const double north = (p.lat - frame.origin.lat) * kDegToRad * kEarthRadiusM;
  return oracle::PlanePoint{east, north};
}

inline GeoPoint meters_to_geo(oracle::PlanePoint m, const GridFrame& frame) {
  const double lat = frame.origin.lat + m.y / (kDegToRad * kEarthRadiusM);
  const double lon =
      frame.origin.lon + m.x / (kDegToRad * kEarthRadiusM *
                                std::cos(frame.origin.lat * kDegToRad));
  return GeoPoint{lon, lat};
}

// Plane units are scaled so the hex neighbor pitch equals cell_size_m:
// one plane unit is cell_size_m / sqrt(3) meters.
inline oracle::PlanePoint geo_to_plane(GeoPoint p, const GridFrame& frame) {
  if (std::abs(p.lon - frame.origin.lon) > kMaxGridSpanDeg ||
      std::abs(p.lat - frame.origin.lat) > kMaxGridSpanDeg) {
    fail(ErrorKind::out_of_grid_range,
         "coordinate too far from the grid origin");
  }
  const oracle::PlanePoint m = geo_to_meters(p, frame);
  const double scale = oracle::kCellPitch / frame.cell_size_m;
  return oracle::PlanePoint{m.x * scale, m.y * scale};
}

inline GeoPoint plane_to_geo(oracle::PlanePoint pt, const GridFrame& frame) {
  const double scale = frame.cell_size_m / oracle::kCellPitch;
  return meters_to_geo(oracle::PlanePoint{pt.x * scale, pt.y * scale}, frame);
}

inline HexCoord geo_to_hex(GeoPoint p, const GridFrame& frame) {
  return oracle::plane_to_hex(geo_to_plane(p, frame));
}

inline GeoPoint hex_to_geo(HexCoord h, const GridFrame& frame) {
  return plane_to_geo(oracle::hex_to_plane(h), frame);
}

}  // namespace neurohex::osm

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "neurohex/error.hpp"
#include "neurohex/hex.hpp"

// Cartesian reference geometry plus instrumented cost measurement. The
// Cartesian side exists as an independent second route for every lattice
// operation, so tests can compare results and costs; it never calls into
// the ring-encoding path.

namespace neurohex::oracle {

inline constexpr double kSqrt3 = 1.7320508075688772;

struct PlanePoint {
  double x = 0;
  double y = 0;
};

inline PlanePoint operator+(PlanePoint a, PlanePoint b) {
  return {a.x + b.x, a.y + b.y};
}
inline PlanePoint operator-(PlanePoint a, PlanePoint b) {
  return {a.x - b.x, a.y - b.y};
}
inline PlanePoint operator*(double f, PlanePoint p) {
  return {f * p.x, f * p.y};
}

inline double cross(PlanePoint a, PlanePoint b) { return a.x * b.y - a.y * b.x; }
inline double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
inline double norm(PlanePoint a) { return std::sqrt(dot(a, a)); }

// Flat-top embedding. One plane unit is a cell circumradius; +y is treated
// as north. Adjacent cell centers sit sqrt(3) apart.
inline PlanePoint hex_to_plane(HexCoord p) {
  return {1.5 * static_cast<double>(p.q()),
          kSqrt3 * (static_cast<double>(p.r()) + static_cast<double>(p.q()) / 2.0)};
}

inline constexpr double kCellPitch = kSqrt3;

// Nearest cell by cube rounding: round all three fractional components,
// then recompute the one with the largest rounding error so the sum is
// zero again. Equal errors repair q first, then r.
inline HexCoord plane_to_hex(PlanePoint v) {
  const double qf = v.x / 1.5;
  const double rf = v.y / kSqrt3 - qf / 2.0;
  const double sf = -qf - rf;
  int64_t q = std::llround(qf);
  int64_t r = std::llround(rf);
  int64_t s = std::llround(sf);
  const double dq = std::abs(static_cast<double>(q) - qf);
  const double dr = std::abs(static_cast<double>(r) - rf);
  const double ds = std::abs(static_cast<double>(s) - sf);
  if (dq >= dr && dq >= ds)
    q = -r - s;
  else if (dr >= ds)
    r = -q - s;
  else
    s = -q - r;
  return HexCoord(q, r, s);
}

inline double cart_distance(PlanePoint a, PlanePoint b) { return norm(a - b); }

// Sign of the turn a->b->p: +1 left (counterclockwise), 0 collinear,
// -1 right. A unit right turn is negative.
inline int cart_orientation(PlanePoint p, PlanePoint a, PlanePoint b) {
  const double d = cross(b - a, p - a);
  if (d > 0) return 1;
  if (d < 0) return -1;
  return 0;
}

// Clockwise rotation (compass sense with +y north) by `radians`.
inline PlanePoint cart_rotate(PlanePoint p, double radians) {
  const double c = std::cos(radians), s = std::sin(radians);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

inline double angle_radians(QuantizedAngle a, Quantization qz) {
  return static_cast<double>(a.value) * (3.14159265358979323846 / 3.0) /
         static_cast<double>(qz.q());
}

// Sector swept counterclockwise (math sense) from theta1 to theta2, sweep
// at most pi, radius Euclidean. Cross-product recipe; no trig on the query.
inline bool cart_in_sector(PlanePoint p, PlanePoint center, double radius,
                           double theta1, double theta2) {
  const PlanePoint v = p - center;
  const PlanePoint a{std::cos(theta1), std::sin(theta1)};
  const PlanePoint b{std::cos(theta2), std::sin(theta2)};
  if (dot(v, v) > radius * radius) return false;
  return cross(a, v) >= 0 && cross(v, b) >= 0;
}

// Pineda edge function: positive when p lies right of v0->v1 (the interior
// side for clockwise winding with +y north).
inline double edge_function(PlanePoint p, PlanePoint v0, PlanePoint v1) {
  return (p.x - v0.x) * (v1.y - v0.y) - (p.y - v0.y) * (v1.x - v0.x);
}

inline bool cart_in_triangle(PlanePoint p, PlanePoint a, PlanePoint b,
                             PlanePoint c) {
  const double area2 = edge_function(c, a, b);
  if (area2 == 0)
    fail(ErrorKind::degenerate_geometry, "triangle has zero area");
  const double sign = area2 > 0 ? 1.0 : -1.0;
  return sign * edge_function(p, a, b) >= 0 &&
         sign * edge_function(p, b, c) >= 0 &&
         sign * edge_function(p, c, a) >= 0;
}

// Winding number with half-open vertical spans, so ray-edge double counting
// cannot happen. Nonzero means inside.
inline int cart_winding_number(PlanePoint p,
                               const std::vector<PlanePoint>& poly) {
  int w = 0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const PlanePoint& v0 = poly[i];
    const PlanePoint& v1 = poly[(i + 1) % n];
    if (v0.y <= p.y && p.y < v1.y && edge_function(p, v0, v1) > 0) ++w;
    else if (v1.y <= p.y && p.y < v0.y && edge_function(p, v0, v1) < 0) --w;
  }
  return w;
}

inline bool cart_in_polygon(PlanePoint p, const std::vector<PlanePoint>& poly) {
  if (poly.size() < 3)
    fail(ErrorKind::degenerate_geometry, "polygon needs >= 3 vertices");
  return cart_winding_number(p, poly) != 0;
}

// Continuous lattice angle of a plane vector, in quantized units [0, 6Q):
// the perimeter position where the ray from the origin crosses the unit
// ring hexagon, one wedge spanning Q. Every cell's exact value is
// (wedge * ring + spot) * Q / ring, which makes this the reference for the
// quantization error of normalize_angle.
inline double hex_angle_param(PlanePoint v, Quantization qz) {
  if (v.x == 0 && v.y == 0)
    fail(ErrorKind::undefined_at_origin, "zero vector has no angle");
  const double pi = 3.14159265358979323846;
  // clockwise angle from corner(0), which sits at math angle pi/6
  double acw = std::fmod(pi / 6.0 - std::atan2(v.y, v.x), 2.0 * pi);
  if (acw < 0) acw += 2.0 * pi;
  int w = static_cast<int>(acw / (pi / 3.0));
  if (w > 5) w = 5;
  const double beta = acw - w * (pi / 3.0);
  const double tb = std::tan(beta);
  const double t = 2.0 * tb / (kSqrt3 + tb);
  return (static_cast<double>(w) + t) * static_cast<double>(qz.q());
}

// Hex hop metric extended to the plane: the unit ball is the hexagon
// through the six neighbor centers. Agrees with distance() at cell centers.
inline double gauge(PlanePoint v) {
  const double qf = v.x / 1.5;
  const double rf = v.y / kSqrt3 - qf / 2.0;
  const double sf = -qf - rf;
  return std::max({std::abs(qf), std::abs(rf), std::abs(sf)});
}

// Point where the ray at angle parameter `param` (quanta) crosses the unit
// ring hexagon. Inverse of hex_angle_param; scale by a magnitude to walk
// the rim of a gauge ball.
inline PlanePoint perimeter_point(double param, Quantization qz) {
  const double turn = static_cast<double>(qz.full_turn());
  double t = std::fmod(param, turn);
  if (t < 0) t += turn;
  int w = static_cast<int>(t / static_cast<double>(qz.q()));
  if (w > 5) w = 5;
  const double frac = t / static_cast<double>(qz.q()) - w;
  const PlanePoint c0 = hex_to_plane(kWedgeCorners[w]);
  const PlanePoint c1 = hex_to_plane(kWedgeCorners[(w + 1) % 6]);
  return (1.0 - frac) * c0 + frac * c1;
}

inline double segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
  const PlanePoint ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 == 0 ? 0.0 : dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

// -------------------------------------------------------------------------
// Instrumented measurement.
//
// Counting contract (applies to both columns): every word-level add or
// subtract on data operands counts as one add; every multiply as one mul;
// every divide as one div; sqrt and trigonometric calls as one trig each.
// Shifts, masks, comparisons, absolute values, and table selection
// (permutation, sign routing, wedge multiplexing) are free on both sides.
// max_bits tracks the widest integer magnitude that flows through a wrapped
// operation, operands and results included.

struct OpCounter {
  uint64_t adds = 0;
  uint64_t muls = 0;
  uint64_t divs = 0;
  uint64_t trig = 0;
  int max_bits = 0;

  void note_bits(int64_t v) {
    const uint64_t m = v < 0 ? 0ull - static_cast<uint64_t>(v)
                             : static_cast<uint64_t>(v);
    const int b = std::bit_width(m);
    if (b > max_bits) max_bits = b;
  }

  int64_t add(int64_t a, int64_t b) {
    ++adds;
    note_bits(a);
    note_bits(b);
    const int64_t r = a + b;
    note_bits(r);
    return r;
  }
  int64_t sub(int64_t a, int64_t b) { return add(a, -b); }
  int64_t mul(int64_t a, int64_t b) {
    ++muls;
    note_bits(a);
    note_bits(b);
    const int64_t r = a * b;
    note_bits(r);
    return r;
  }
  int64_t div(int64_t a, int64_t b) {
    ++divs;
    note_bits(a);
    note_bits(b);
    const int64_t r = a / b;
    note_bits(r);
    return r;
  }
  int64_t shr(int64_t a, int bits) {  // free: pure rewiring
    note_bits(a);
    const int64_t r = a >> bits;
    note_bits(r);
    return r;
  }

  double fadd(double a, double b) { ++adds; return a + b; }
  double fsub(double a, double b) { ++adds; return a - b; }
  double fmul(double a, double b) { ++muls; return a * b; }
  double fdiv(double a, double b) { ++divs; return a / b; }
  double call_trig(double (*f)(double), double x) { ++trig; return f(x); }
  double call_atan2(double y, double x) { ++trig; return std::atan2(y, x); }

  void merge_max(const OpCounter& o) {
    adds = std::max(adds, o.adds);
    muls = std::max(muls, o.muls);
    divs = std::max(divs, o.divs);
    trig = std::max(trig, o.trig);
    max_bits = std::max(max_bits, o.max_bits);
  }
};

// ---- counted lattice kernels (equivalence with the production functions
// is pinned by tests) ----

inline int64_t counted_distance(HexCoord a, HexCoord b, OpCounter& c) {
  int64_t dq = c.sub(a.q(), b.q());
  int64_t dr = c.sub(a.r(), b.r());
  int64_t ds = c.sub(a.s(), b.s());
  if (dq < 0) dq = -dq;  // sign strip: free
  if (dr < 0) dr = -dr;
  if (ds < 0) ds = -ds;
  int64_t m = dq;
  if (dr > m) m = dr;
  if (ds > m) m = ds;
  return m;
}

inline int64_t counted_radial(HexCoord p, OpCounter& c) {
  c.note_bits(p.q());
  c.note_bits(p.r());
  c.note_bits(p.s());
  return radial_distance(p);  // abs and max only
}

// Normalization of a ring position into the global resolution: one divide,
// then bit concatenation of the disjoint wedge and local fields.
inline int64_t counted_normalize(RingPosition rp, Quantization qz,
                                 OpCounter& c) {
  const int64_t local = c.div(rp.spot << qz.bits, rp.ring);
  return (static_cast<int64_t>(rp.wedge) << qz.bits) | local;
}

inline int64_t counted_polar(HexCoord p, OpCounter& c) {
  const RingPosition rp = encode_ring(p);  // compare/select only
  c.note_bits(p.q());
  c.note_bits(p.r());
  c.note_bits(p.s());
  return c.add(c.mul(rp.wedge, rp.ring), rp.spot);
}

inline void counted_sign_decode(RingPosition rp, OpCounter& c) {
  // permutation plus sign routing; the only arithmetic is the complement
  const int64_t comp = c.sub(rp.ring, rp.spot);
  (void)decode_ring(rp);
  c.note_bits(comp);
}

inline HexCoord counted_translate(HexCoord p, HexCoord delta, OpCounter& c) {
  return HexCoord(c.sub(p.q(), delta.q()), c.sub(p.r(), delta.r()),
                  c.sub(p.s(), delta.s()));
}

// Wedge advance as pure table selection, so the counted kernel carries no
// hidden index arithmetic.
inline int wedge_advance(int wedge, int rot_wedge, int carry) {
  static constexpr int8_t table[6][6][2] = {
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
      {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 1}},
      {{2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 1}, {1, 2}},
      {{3, 4}, {4, 5}, {5, 0}, {0, 1}, {1, 2}, {2, 3}},
      {{4, 5}, {5, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 4}},
      {{5, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}},
  };
  return table[wedge][rot_wedge][carry];
}

inline HexCoord counted_rotate(HexCoord p, QuantizedAngle rot, Quantization qz,
                               OpCounter& c) {
  if (p == kOrigin) return p;
  const RingPosition rp = encode_ring(p);  // compare/select only
  c.note_bits(p.q());
  c.note_bits(p.r());
  c.note_bits(rot.value);
  const int64_t rot_wedge = rot.value >> qz.bits;      // field extract: free
  const int64_t rot_local = rot.value & (qz.q() - 1);  // field extract: free
  const int64_t rot_spot = c.shr(c.mul(rot_local, rp.ring), qz.bits);
  int64_t spot = c.add(rp.spot, rot_spot);
  int carry = 0;
  if (spot >= rp.ring) {
    spot = c.sub(spot, rp.ring);
    carry = 1;
  }
  const int wedge =
      wedge_advance(rp.wedge, static_cast<int>(rot_wedge), carry);
  // sign decoding: permutation plus one complement
  const int64_t comp = c.sub(rp.ring, spot);
  (void)comp;
  return decode_ring(RingPosition{rp.ring, wedge, spot});
}

inline HexCoord counted_refine(HexCoord p, int64_t k, OpCounter& c) {
  return HexCoord(c.mul(p.q(), k), c.mul(p.r(), k), c.mul(p.s(), k));
}

inline HexCoord counted_coarsen(HexCoord p, int64_t k, OpCounter& c) {
  const int shift = detail::scale_shift(k);
  int64_t div[3] = {c.shr(p.q(), shift), c.shr(p.r(), shift),
                    c.shr(p.s(), shift)};
  int64_t rem[3] = {p.q() & (k - 1), p.r() & (k - 1), p.s() & (k - 1)};
  int64_t n = -(c.add(c.add(div[0], div[1]), div[2]));
  for (; n > 0; --n) {
    int best = 0;
    if (rem[1] > rem[best]) best = 1;
    if (rem[2] > rem[best]) best = 2;
    div[best] = c.add(div[best], 1);
    rem[best] = -1;
  }
  return HexCoord(div[0], div[1], div[2]);
}

// Hex angular membership machinery, counted. The orientation predicate is
// one modular comparison of a normalized angle against a boundary angle.
inline int64_t counted_angle_of(HexCoord p, HexCoord anchor, Quantization qz,
                                OpCounter& c) {
  const HexCoord v = counted_translate(p, anchor, c);
  if (v == kOrigin)
    fail(ErrorKind::degenerate_at_anchor, "query coincides with anchor");
  return counted_normalize(encode_ring(v), qz, c);
}

inline int64_t counted_offset(int64_t angle, int64_t boundary, Quantization qz,
                              OpCounter& c) {
  int64_t d = c.sub(angle, boundary);
  if (d < 0) d = c.add(d, qz.full_turn());
  return d;
}

inline bool counted_hex_in_sector(HexCoord p, HexCoord anchor,
                                  int64_t magnitude, int64_t start,
                                  int64_t end, Quantization qz, OpCounter& c) {
  if (counted_distance(p, anchor, c) > magnitude) return false;
  if (p == anchor) return true;
  const int64_t a = counted_angle_of(p, anchor, qz, c);
  return counted_offset(a, start, qz, c) <= counted_offset(end, start, qz, c);
}

inline bool counted_hex_in_triangle(HexCoord p, HexCoord v0, HexCoord v1,
                                    HexCoord v2, Quantization qz,
                                    OpCounter& c) {
  // a triangle is the meet of two wedges anchored at two of its vertices
  auto corner = [&](HexCoord at, HexCoord toward_start, HexCoord toward_end,
                    int64_t mag) {
    const int64_t start = counted_angle_of(toward_start, at, qz, c);
    const int64_t end = counted_angle_of(toward_end, at, qz, c);
    return counted_hex_in_sector(p, at, mag, start, end, qz, c);
  };
  const int64_t m0 =
      std::max(counted_distance(v0, v1, c), counted_distance(v0, v2, c));
  const int64_t m1 =
      std::max(counted_distance(v1, v0, c), counted_distance(v1, v2, c));
  return corner(v0, v1, v2, m0) && corner(v1, v2, v0, m1);
}

inline bool counted_hex_in_polygon(HexCoord p,
                                   const std::vector<HexCoord>& verts,
                                   Quantization qz, OpCounter& c) {
  const size_t n = verts.size();
  for (size_t i = 0; i < n; ++i) {
    const HexCoord a = verts[i];
    const HexCoord b = verts[(i + 1) % n];
    const int64_t edge = counted_angle_of(b, a, qz, c);
    if (p == a) continue;
    const int64_t query = counted_angle_of(p, a, qz, c);
    if (counted_offset(query, edge, qz, c) > qz.half_turn()) return false;
  }
  return true;
}

// ---- counted Cartesian kernels. Integer plane coordinates expose the bit
// growth of the classical formulas; trig-bearing kernels run on doubles and
// only contribute op counts. ----

inline int64_t counted_cart_distance_sq(int64_t x0, int64_t y0, int64_t x1,
                                        int64_t y1, OpCounter& c) {
  const int64_t dx = c.sub(x0, x1);
  const int64_t dy = c.sub(y0, y1);
  const int64_t sum = c.add(c.mul(dx, dx), c.mul(dy, dy));
  ++c.trig;  // the final square root
  return sum;
}

inline int counted_cart_orientation(int64_t px, int64_t py, int64_t ax,
                                    int64_t ay, int64_t bx, int64_t by,
                                    OpCounter& c) {
  const int64_t ux = c.sub(bx, ax), uy = c.sub(by, ay);
  const int64_t vx = c.sub(px, ax), vy = c.sub(py, ay);
  const int64_t d = c.sub(c.mul(ux, vy), c.mul(uy, vx));
  return d > 0 ? 1 : d < 0 ? -1 : 0;
}

inline void counted_cart_rotate(double x, double y, double radians,
                                OpCounter& c) {
  const double co = c.call_trig(std::cos, radians);
  const double si = c.call_trig(std::sin, radians);
  (void)c.fadd(c.fmul(x, co), c.fmul(y, si));
  (void)c.fsub(c.fmul(y, co), c.fmul(x, si));
}

inline void counted_cart_polar(double x, double y, OpCounter& c) {
  (void)c.call_atan2(y, x);
}

inline void counted_cart_normalize(int64_t phi1, int64_t phi2, int bits,
                                   OpCounter& c) {
  (void)c.div(phi1 << bits, phi2);
}

inline bool counted_cart_in_sector(double px, double py, double cx, double cy,
                                   double radius, double t1, double t2,
                                   OpCounter& c) {
  const double vx = c.fsub(px, cx), vy = c.fsub(py, cy);
  const double ax = c.call_trig(std::cos, t1), ay = c.call_trig(std::sin, t1);
  const double bx = c.call_trig(std::cos, t2), by = c.call_trig(std::sin, t2);
  const double d2 = c.fadd(c.fmul(vx, vx), c.fmul(vy, vy));
  if (d2 > c.fmul(radius, radius)) return false;
  const double ca = c.fsub(c.fmul(ax, vy), c.fmul(ay, vx));
  const double cb = c.fsub(c.fmul(vx, by), c.fmul(vy, bx));
  return ca >= 0 && cb >= 0;
}

inline double counted_edge_function(double px, double py, double x0, double y0,
                                    double x1, double y1, OpCounter& c) {
  return c.fsub(c.fmul(c.fsub(px, x0), c.fsub(y1, y0)),
                c.fmul(c.fsub(py, y0), c.fsub(x1, x0)));
}

inline bool counted_cart_in_triangle(double px, double py,
                                     const double (&vx)[3],
                                     const double (&vy)[3], OpCounter& c) {
  return counted_edge_function(px, py, vx[0], vy[0], vx[1], vy[1], c) >= 0 &&
         counted_edge_function(px, py, vx[1], vy[1], vx[2], vy[2], c) >= 0 &&
         counted_edge_function(px, py, vx[2], vy[2], vx[0], vy[0], c) >= 0;
}

inline bool counted_cart_in_polygon(double px, double py,
                                    const std::vector<PlanePoint>& poly,
                                    OpCounter& c) {
  int w = 0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const PlanePoint& v0 = poly[i];
    const PlanePoint& v1 = poly[(i + 1) % n];
    const double e = counted_edge_function(px, py, v0.x, v0.y, v1.x, v1.y, c);
    if (v0.y <= py && py < v1.y && e > 0) ++w;
    else if (v1.y <= py && py < v0.y && e < 0) --w;
  }
  return w != 0;
}

// -------------------------------------------------------------------------

enum class OpKind {
  distance,
  radial_distance,
  normalization,
  polar_angle,
  sign_decoding,
  orientation_predicate,
  translation,
  rotation,
  in_sector,
  in_triangle,
  in_polygon,
};

inline const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::distance: return "distance";
    case OpKind::radial_distance: return "radial_distance";
    case OpKind::normalization: return "normalization";
    case OpKind::polar_angle: return "polar_angle";
    case OpKind::sign_decoding: return "sign_decoding";
    case OpKind::orientation_predicate: return "orientation_predicate";
    case OpKind::translation: return "translation";
    case OpKind::rotation: return "rotation";
    case OpKind::in_sector: return "in_sector";
    case OpKind::in_triangle: return "in_triangle";
    case OpKind::in_polygon: return "in_polygon";
  }
  return "unknown";
}

inline constexpr std::array<OpKind, 11> kAllOpKinds = {
    OpKind::distance,       OpKind::radial_distance,
    OpKind::normalization,  OpKind::polar_angle,
    OpKind::sign_decoding,  OpKind::orientation_predicate,
    OpKind::translation,    OpKind::rotation,
    OpKind::in_sector,      OpKind::in_triangle,
    OpKind::in_polygon,
};

enum class Side { neurohex, cartesian };

inline const char* side_name(Side s) {
  return s == Side::neurohex ? "neurohex" : "cartesian";
}

// Per-call worst case over a fixed battery of 16-bit-bounded inputs. Each
// call runs on a fresh counter; the returned counter holds the fieldwise
// maxima, so "adds" reads as the worst adds in any single call.
inline OpCounter measure(OpKind kind, Side side,
                         Quantization qz = kDefaultQuantization) {
  const int64_t big = 65535;  // 16-bit magnitude bound
  const std::vector<HexCoord> points = {
      HexCoord(big, -32768, -32767), HexCoord(-big, 32768, 32767),
      HexCoord(1, 0, -1),            HexCoord(-20000, 19999, 1),
      HexCoord(12345, -45, -12300),  HexCoord(0, big, -big)};
  const std::vector<int64_t> angles = {0, 1, 63, 64, 127, 200, 383};

  OpCounter out;
  auto tally = [&out](OpCounter& c) {
    out.merge_max(c);
    c = OpCounter{};
  };

  OpCounter c;
  switch (side) {
    case Side::neurohex:
      switch (kind) {
        case OpKind::distance:
          for (const auto& a : points)
            for (const auto& b : points) {
              counted_distance(a, b, c);
              tally(c);
            }
          break;
        case OpKind::radial_distance:
          for (const auto& a : points) {
            counted_radial(a, c);
            tally(c);
          }
          break;
        case OpKind::normalization:
          for (const auto& a : points) {
            counted_normalize(encode_ring(a), qz, c);
            tally(c);
          }
          break;
        case OpKind::polar_angle:
          for (const auto& a : points) {
            counted_polar(a, c);
            tally(c);
          }
          break;
        case OpKind::sign_decoding:
          for (const auto& a : points) {
            counted_sign_decode(encode_ring(a), c);
            tally(c);
          }
          break;
        case OpKind::orientation_predicate:
          for (const auto& a : points)
            for (int64_t v : angles) {
              counted_offset(counted_angle_of(a, kOrigin, qz, c), v, qz, c);
              tally(c);
            }
          break;
        case OpKind::translation:
          for (const auto& a : points)
            for (const auto& b : points) {
              counted_translate(a, b, c);
              tally(c);
            }
          break;
        case OpKind::rotation:
          for (const auto& a : points)
            for (int64_t v : angles) {
              counted_rotate(a, QuantizedAngle{v}, qz, c);
              tally(c);
            }
          break;
        case OpKind::in_sector:
          for (const auto& a : points) {
            counted_hex_in_sector(a, HexCoord(1, -1, 0), big, 10, 200, qz, c);
            tally(c);
          }
          break;
        case OpKind::in_triangle:
          for (const auto& a : points) {
            counted_hex_in_triangle(a, HexCoord(big, -big, 0),
                                    HexCoord(-big, 0, big),
                                    HexCoord(0, big, -big), qz, c);
            tally(c);
          }
          break;
        case OpKind::in_polygon:
          for (const auto& a : points) {
            std::vector<HexCoord> hexagon;
            for (int w = 0; w < 6; ++w)
              hexagon.push_back(scale_coord(kWedgeCorners[w], 30000));
            counted_hex_in_polygon(a, hexagon, qz, c);
            tally(c);
          }
          break;
      }
      break;
    case Side::cartesian:
      switch (kind) {
        case OpKind::distance:
          for (const auto& a : points)
            for (const auto& b : points) {
              counted_cart_distance_sq(a.q(), a.r(), -b.q(), -b.r(), c);
              tally(c);
            }
          break;
        case OpKind::radial_distance:
          for (const auto& a : points) {
            counted_cart_distance_sq(a.q(), a.r(), 0, 0, c);
            tally(c);
          }
          break;
        case OpKind::normalization:
          for (const auto& a : points) {
            if (a == kOrigin) continue;
            counted_cart_normalize(std::abs(a.q()),
                                   std::max<int64_t>(std::abs(a.r()), 1),
                                   qz.bits, c);
            tally(c);
          }
          break;
        case OpKind::polar_angle:
          for (const auto& a : points) {
            counted_cart_polar(static_cast<double>(a.q()),
                               static_cast<double>(a.r()), c);
            tally(c);
          }
          break;
        case OpKind::sign_decoding:
          break;  // no Cartesian counterpart: the row reads zero
        case OpKind::orientation_predicate:
          for (const auto& a : points) {
            counted_cart_orientation(a.q(), a.r(), 0, 0, 1, -1, c);
            tally(c);
          }
          break;
        case OpKind::translation:
          for (const auto& a : points)
            for (const auto& b : points) {
              c.sub(a.q(), b.q());
              c.sub(a.r(), b.r());
              tally(c);
            }
          break;
        case OpKind::rotation:
          for (const auto& a : points)
            for (int64_t v : angles) {
              counted_cart_rotate(static_cast<double>(a.q()),
                                  static_cast<double>(a.r()),
                                  angle_radians(QuantizedAngle{v}, qz), c);
              tally(c);
            }
          break;
        case OpKind::in_sector:
          for (const auto& a : points) {
            counted_cart_in_sector(static_cast<double>(a.q()),
                                   static_cast<double>(a.r()), 1.5, -0.5,
                                   60000.0, 0.3, 2.4, c);
            tally(c);
          }
          break;
        case OpKind::in_triangle: {
          const double vx[3] = {60000.0, -60000.0, 0.0};
          const double vy[3] = {-60000.0, 0.0, 60000.0};
          for (const auto& a : points) {
            counted_cart_in_triangle(static_cast<double>(a.q()),
                                     static_cast<double>(a.r()), vx, vy, c);
            tally(c);
          }
          break;
        }
        case OpKind::in_polygon: {
          std::vector<PlanePoint> hexagon;
          for (int w = 0; w < 6; ++w)
            hexagon.push_back(hex_to_plane(scale_coord(kWedgeCorners[w], 30000)));
          for (const auto& a : points) {
            counted_cart_in_polygon(static_cast<double>(a.q()),
                                    static_cast<double>(a.r()), hexagon, c);
            tally(c);
          }
          break;
        }
      }
      break;
  }
  return out;
}

inline std::string bench_csv(Quantization qz = kDefaultQuantization) {
  std::string out = "operation,side,adds,muls,divs,trig,max_bits\n";
  for (OpKind kind : kAllOpKinds) {
    for (Side side : {Side::neurohex, Side::cartesian}) {
      const OpCounter c = measure(kind, side, qz);
      out += std::string(op_kind_name(kind)) + "," + side_name(side) + "," +
             std::to_string(c.adds) + "," + std::to_string(c.muls) + "," +
             std::to_string(c.divs) + "," + std::to_string(c.trig) + "," +
             std::to_string(c.max_bits) + "\n";
    }
  }
  return out;
}

}  // namespace neurohex::oracle

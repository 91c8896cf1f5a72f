#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "neurohex/error.hpp"

namespace neurohex {

// Coordinate reference card
// =========================
// Cells are flat-top hexagons addressed by cubic coordinates (q, r, s) with
// q + r + s == 0 always. Ring RI holds the 6*RI cells whose largest absolute
// component is RI. Each ring splits into six wedges, numbered 0..5 clockwise.
// Wedge w starts at the corner cell RI * corner(w) and runs RI steps toward
// the next corner (exclusive):
//
//   corner(0) = (+1,  0, -1)     reference direction, start of wedge 0
//   corner(1) = (+1, -1,  0)
//   corner(2) = ( 0, -1, +1)
//   corner(3) = (-1,  0, +1)
//   corner(4) = (-1, +1,  0)
//   corner(5) = ( 0, +1, -1)
//
// Walking wedge w uses step direction corner(w + 2 mod 6).
//
// Angles grow clockwise from corner(0). The ring-local angle at ring RI is
// phi = wedge * RI + spot, phi in [0, 6*RI). The quantized form fixes a
// per-wedge resolution Q = 2^bits: value = wedge * Q + local, local in
// [0, Q), so value in [0, 6Q). The three bits above the local field only
// admit wedge codes 0..5; values carrying codes 6 or 7 are rejected.

struct Quantization {
  int bits = 6;  // Q = 64 by default

  constexpr int64_t q() const { return int64_t{1} << bits; }
  constexpr int64_t full_turn() const { return 6 * q(); }
  constexpr int64_t half_turn() const { return 3 * q(); }
};

inline constexpr Quantization kDefaultQuantization{};

class HexCoord {
 public:
  constexpr HexCoord() : q_(0), r_(0), s_(0) {}

  constexpr HexCoord(int64_t q, int64_t r, int64_t s) : q_(q), r_(r), s_(s) {
    if (q + r + s != 0)
      throw Error(ErrorKind::zero_sum_violation,
                  "components must sum to zero");
  }

  static constexpr HexCoord axial(int64_t q, int64_t r) {
    return HexCoord(q, r, -q - r);
  }

  constexpr int64_t q() const { return q_; }
  constexpr int64_t r() const { return r_; }
  constexpr int64_t s() const { return s_; }

  friend constexpr bool operator==(HexCoord a, HexCoord b) {
    return a.q_ == b.q_ && a.r_ == b.r_;
  }
  friend constexpr bool operator!=(HexCoord a, HexCoord b) { return !(a == b); }
  friend constexpr auto operator<=>(HexCoord a, HexCoord b) {
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    return a.r_ <=> b.r_;
  }

  friend constexpr HexCoord operator+(HexCoord a, HexCoord b) {
    return HexCoord(a.q_ + b.q_, a.r_ + b.r_, a.s_ + b.s_);
  }
  friend constexpr HexCoord operator-(HexCoord a, HexCoord b) {
    return HexCoord(a.q_ - b.q_, a.r_ - b.r_, a.s_ - b.s_);
  }
  constexpr HexCoord operator-() const { return HexCoord(-q_, -r_, -s_); }

 private:
  int64_t q_, r_, s_;
};

inline constexpr HexCoord kOrigin{};

inline constexpr std::array<HexCoord, 6> kWedgeCorners = {
    HexCoord(1, 0, -1),  HexCoord(1, -1, 0), HexCoord(0, -1, 1),
    HexCoord(-1, 0, 1),  HexCoord(-1, 1, 0), HexCoord(0, 1, -1)};

inline constexpr HexCoord scale_coord(HexCoord p, int64_t f) {
  return HexCoord(p.q() * f, p.r() * f, p.s() * f);
}

inline constexpr int64_t distance(HexCoord a, HexCoord b) {
  const int64_t dq = a.q() - b.q() < 0 ? b.q() - a.q() : a.q() - b.q();
  const int64_t dr = a.r() - b.r() < 0 ? b.r() - a.r() : a.r() - b.r();
  const int64_t ds = a.s() - b.s() < 0 ? b.s() - a.s() : a.s() - b.s();
  int64_t m = dq;
  if (dr > m) m = dr;
  if (ds > m) m = ds;
  return m;
}

inline constexpr int64_t radial_distance(HexCoord p) {
  return distance(p, kOrigin);
}

// Re-expresses p relative to a frame whose origin sits at delta.
inline constexpr HexCoord translate(HexCoord p, HexCoord delta) {
  return p - delta;
}

struct RingPosition {
  int64_t ring = 0;
  int wedge = 0;      // 0..5
  int64_t spot = 0;   // 0 <= spot < ring (0 when ring == 0)
};

struct RingLocalAngle {
  int64_t phi = 0;   // wedge * ring + spot, in [0, 6 * ring)
  int64_t ring = 1;  // resolution the angle is expressed at, >= 1
};

struct QuantizedAngle {
  int64_t value = 0;  // wedge * Q + local, in [0, 6Q)

  constexpr int64_t wedge(Quantization qz) const { return value >> qz.bits; }
  constexpr int64_t local(Quantization qz) const {
    return value & (qz.q() - 1);
  }
};

inline constexpr bool operator==(QuantizedAngle a, QuantizedAngle b) {
  return a.value == b.value;
}
inline constexpr bool operator!=(QuantizedAngle a, QuantizedAngle b) {
  return a.value != b.value;
}

inline QuantizedAngle quantized_angle(int64_t value, Quantization qz) {
  if (value < 0 || value >= qz.full_turn())
    fail(ErrorKind::invalid_angle,
         "angle value " + std::to_string(value) + " outside [0, " +
             std::to_string(qz.full_turn()) + ")");
  return QuantizedAngle{value};
}

inline QuantizedAngle add_angles(QuantizedAngle a, QuantizedAngle b,
                                 Quantization qz) {
  int64_t v = a.value + b.value;
  if (v >= qz.full_turn()) v -= qz.full_turn();
  return QuantizedAngle{v};
}

// Clockwise span from `from` to `to`.
inline constexpr int64_t angle_offset(QuantizedAngle from, QuantizedAngle to,
                                      Quantization qz) {
  int64_t d = to.value - from.value;
  if (d < 0) d += qz.full_turn();
  return d;
}

// Wedge decomposition of a ring cell. With a = ring, b = spot, c = ring - spot
// the six wedges read
//   w0: ( a, -b, -c)   w1: ( c, -a,  b)   w2: (-b, -c,  a)
//   w3: (-a,  b,  c)   w4: (-c,  a, -b)   w5: ( b,  c, -a)
// Derived once from the ring walk (ring_cells) and pinned against it by tests.
struct SignPattern {
  std::array<int8_t, 3> source;  // which of (a, b, c) feeds q, r, s
  std::array<int8_t, 3> sign;
};

inline constexpr std::array<SignPattern, 6> kWedgePatterns = {{
    {{0, 1, 2}, {+1, -1, -1}},
    {{2, 0, 1}, {+1, -1, +1}},
    {{1, 2, 0}, {-1, -1, +1}},
    {{0, 1, 2}, {-1, +1, +1}},
    {{2, 0, 1}, {-1, +1, -1}},
    {{1, 2, 0}, {+1, +1, -1}},
}};

inline void validate_ring_position(const RingPosition& rp) {
  if (rp.ring < 0)
    fail(ErrorKind::invalid_ring_position, "negative ring index");
  if (rp.ring == 0) {
    if (rp.wedge != 0 || rp.spot != 0)
      fail(ErrorKind::invalid_ring_position,
           "origin is canonically (ring 0, wedge 0, spot 0)");
    return;
  }
  if (rp.wedge < 0 || rp.wedge > 5)
    fail(ErrorKind::invalid_ring_position, "wedge outside 0..5");
  if (rp.spot < 0 || rp.spot >= rp.ring)
    fail(ErrorKind::invalid_ring_position, "spot outside [0, ring)");
}

inline HexCoord decode_ring(const RingPosition& rp) {
  validate_ring_position(rp);
  if (rp.ring == 0) return kOrigin;
  const int64_t abc[3] = {rp.ring, rp.spot, rp.ring - rp.spot};
  const SignPattern& pat = kWedgePatterns[rp.wedge];
  return HexCoord(pat.sign[0] * abc[pat.source[0]],
                  pat.sign[1] * abc[pat.source[1]],
                  pat.sign[2] * abc[pat.source[2]]);
}

inline RingPosition encode_ring(HexCoord p) {
  const int64_t ri = radial_distance(p);
  if (ri == 0) return RingPosition{0, 0, 0};
  const int64_t comp[3] = {p.q(), p.r(), p.s()};
  for (int w = 0; w < 6; ++w) {
    const SignPattern& pat = kWedgePatterns[w];
    int64_t abc[3];
    for (int i = 0; i < 3; ++i) abc[pat.source[i]] = pat.sign[i] * comp[i];
    if (abc[0] == ri && abc[1] >= 0 && abc[1] < ri && abc[2] == ri - abc[1])
      return RingPosition{ri, w, abc[1]};
  }
  fail(ErrorKind::invalid_ring_position, "unencodable cell");  // unreachable
}

// Cells of ring ri in encoding order: wedge 0 corner first, then clockwise.
inline std::vector<HexCoord> ring_cells(int64_t ri) {
  if (ri < 0) fail(ErrorKind::invalid_ring_position, "negative ring index");
  std::vector<HexCoord> out;
  if (ri == 0) {
    out.push_back(kOrigin);
    return out;
  }
  out.reserve(static_cast<size_t>(6 * ri));
  HexCoord cur = scale_coord(kWedgeCorners[0], ri);
  for (int w = 0; w < 6; ++w) {
    const HexCoord step = kWedgeCorners[(w + 2) % 6];
    for (int64_t i = 0; i < ri; ++i) {
      out.push_back(cur);
      cur = cur + step;
    }
  }
  return out;
}

inline RingLocalAngle polar_angle(HexCoord p) {
  if (p == kOrigin)
    fail(ErrorKind::undefined_at_origin, "origin has no polar angle");
  const RingPosition rp = encode_ring(p);
  return RingLocalAngle{rp.wedge * rp.ring + rp.spot, rp.ring};
}

inline QuantizedAngle normalize_angle(RingLocalAngle a, Quantization qz) {
  if (a.ring < 1) fail(ErrorKind::invalid_angle, "ring resolution < 1");
  if (a.phi < 0 || a.phi >= 6 * a.ring)
    fail(ErrorKind::invalid_angle, "ring-local angle outside [0, 6*ring)");
  const int64_t wedge = a.phi / a.ring;
  const int64_t spot = a.phi % a.ring;
  return QuantizedAngle{wedge * qz.q() + ((spot << qz.bits) / a.ring)};
}

inline RingLocalAngle denormalize_angle(QuantizedAngle a, int64_t ring,
                                        Quantization qz) {
  if (ring < 1) fail(ErrorKind::invalid_angle, "ring resolution < 1");
  const int64_t wedge = a.value >> qz.bits;
  const int64_t local = a.value & (qz.q() - 1);
  return RingLocalAngle{wedge * ring + ((local * ring) >> qz.bits), ring};
}

inline HexCoord from_polar(int64_t magnitude, QuantizedAngle a,
                           Quantization qz) {
  if (magnitude < 0) fail(ErrorKind::invalid_ring_position, "negative magnitude");
  if (magnitude == 0) return kOrigin;
  const int64_t wedge = a.value >> qz.bits;
  const int64_t local = a.value & (qz.q() - 1);
  return decode_ring(RingPosition{magnitude, static_cast<int>(wedge),
                                  (local * magnitude) >> qz.bits});
}

// Clockwise rotation about the origin. Wedge+carry form of the four-step
// polar procedure: the rotation offset is brought to ring resolution with
// the procedure's single multiplication, added to the ring-local spot with
// one conditional wrap, and the carry advances the wedge index. Exact
// (a lattice isometry) whenever rot is a multiple of Q.
inline HexCoord rotate_point(HexCoord p, QuantizedAngle rot, Quantization qz) {
  if (p == kOrigin) return p;
  const RingPosition rp = encode_ring(p);
  const int64_t rot_wedge = rot.value >> qz.bits;
  const int64_t rot_local = rot.value & (qz.q() - 1);
  const int64_t rot_spot = (rot_local * rp.ring) >> qz.bits;
  int64_t spot = rp.spot + rot_spot;
  int64_t carry = 0;
  if (spot >= rp.ring) {
    spot -= rp.ring;
    carry = 1;
  }
  int64_t wedge = rp.wedge + rot_wedge + carry;
  if (wedge >= 6) wedge -= 6;
  return decode_ring(RingPosition{rp.ring, static_cast<int>(wedge), spot});
}

namespace detail {
inline int scale_shift(int64_t k) {
  if (k < 2 || (k & (k - 1)) != 0)
    fail(ErrorKind::invalid_scale,
         "scale factor must be a power of two >= 2, got " + std::to_string(k));
  return std::countr_zero(static_cast<uint64_t>(k));
}
}  // namespace detail

// Power-of-two coarsening. Components floor-divide by k; the remainders sum
// to n*k with n in {0,1,2} and the n quotients holding the largest
// remainders are incremented (ties resolve toward q, then r) so the result
// sums to zero again.
inline HexCoord coarsen(HexCoord p, int64_t k) {
  const int shift = detail::scale_shift(k);
  int64_t div[3] = {p.q() >> shift, p.r() >> shift, p.s() >> shift};
  int64_t rem[3] = {p.q() & (k - 1), p.r() & (k - 1), p.s() & (k - 1)};
  int64_t n = -(div[0] + div[1] + div[2]);
  for (; n > 0; --n) {
    int best = 0;
    if (rem[1] > rem[best]) best = 1;
    if (rem[2] > rem[best]) best = 2;
    ++div[best];
    rem[best] = -1;
  }
  return HexCoord(div[0], div[1], div[2]);
}

inline HexCoord refine(HexCoord p, int64_t k) {
  detail::scale_shift(k);  // same domain rule as coarsen
  return scale_coord(p, k);
}

// Textual literal "q,r,s" used by fixtures and command output.
inline std::string format_coord(HexCoord p) {
  return std::to_string(p.q()) + "," + std::to_string(p.r()) + "," +
         std::to_string(p.s());
}

inline HexCoord parse_coord(std::string_view text) {
  int64_t v[3];
  const char* cur = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 3; ++i) {
    auto [ptr, ec] = std::from_chars(cur, end, v[i]);
    if (ec != std::errc{})
      fail(ErrorKind::schema, "bad coordinate literal: " + std::string(text));
    cur = ptr;
    if (i < 2) {
      if (cur == end || *cur != ',')
        fail(ErrorKind::schema,
             "bad coordinate literal: " + std::string(text));
      ++cur;
    }
  }
  if (cur != end)
    fail(ErrorKind::schema, "bad coordinate literal: " + std::string(text));
  if (v[0] + v[1] + v[2] != 0)
    fail(ErrorKind::zero_sum_violation,
         "coordinate literal does not sum to zero: " + std::string(text));
  return HexCoord(v[0], v[1], v[2]);
}

}  // namespace neurohex

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "neurohex/hex.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/shape_json.hpp"
#include "neurohex/shapes.hpp"
#include "shape_oracle.hpp"

using namespace neurohex;
using oracle::PlanePoint;
using oracle::hex_to_plane;

namespace {

std::mt19937_64 rng(902213377);

int64_t rand_int(int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

HexCoord random_cell(int64_t radius) {
  while (true) {
    const int64_t q = rand_int(-radius, radius);
    const int64_t r = rand_int(-radius, radius);
    if (std::abs(q + r) <= radius) return HexCoord(q, r, -q - r);
  }
}

std::vector<HexCoord> sorted(std::vector<HexCoord> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// window scan independent of rasterize
template <typename ShapeT>
std::vector<HexCoord> brute_raster(const ShapeT& s, HexCoord center,
                                   int64_t radius, Quantization qz) {
  std::vector<HexCoord> out;
  for (int64_t q = -radius; q <= radius; ++q)
    for (int64_t r = std::max(-radius, -q - radius);
         r <= std::min(radius, -q + radius); ++r) {
      const HexCoord p = center + HexCoord(q, r, -q - r);
      if (contains(s, p, qz)) out.push_back(p);
    }
  return out;
}

// agreement sweep: every window cell farther than one cell diameter from
// the region boundary must classify identically on both sides
template <typename ShapeT>
void check_region_agreement(const ShapeT& s, const shapetest::Region& region,
                            HexCoord center, int64_t radius, Quantization qz,
                            size_t* compared = nullptr) {
  for (int64_t q = -radius; q <= radius; ++q)
    for (int64_t r = std::max(-radius, -q - radius);
         r <= std::min(radius, -q + radius); ++r) {
      const HexCoord p = center + HexCoord(q, r, -q - r);
      const PlanePoint v = hex_to_plane(p);
      if (region.boundary_distance(v) <= 2.0) continue;
      INFO("cell " << format_coord(p));
      REQUIRE(contains(s, p, qz) == region.inside(v));
      if (compared) ++*compared;
    }
}

}  // namespace

TEST_CASE("foundational kinds follow the null mask") {
  const Quantization qz;
  CHECK(foundation_kind(make_point(kOrigin)) == FoundationKind::point);
  CHECK(foundation_kind(make_ray(kOrigin, 5, QuantizedAngle{0}, qz)) ==
        FoundationKind::ray);
  CHECK(foundation_kind(make_wedge(kOrigin, 5, QuantizedAngle{0},
                                   QuantizedAngle{64}, qz)) ==
        FoundationKind::wedge);
  CHECK(foundation_kind(make_disc(kOrigin, 5)) == FoundationKind::disc);

  CHECK_THROWS_AS(make_disc(kOrigin, -1), Error);
  CHECK_THROWS_AS(make_ray(kOrigin, -2, QuantizedAngle{0}, qz), Error);
  // unbounded shapes are rejected
  FoundationalShape f{kOrigin, std::nullopt, QuantizedAngle{0}, std::nullopt};
  CHECK_THROWS_AS(validate_foundational(f, qz), Error);
  // out-of-range angles are rejected
  FoundationalShape g{kOrigin, 3, QuantizedAngle{384}, std::nullopt};
  CHECK_THROWS_AS(validate_foundational(g, qz), Error);
}

TEST_CASE("orientation predicate splits the circle at the boundary") {
  const Quantization qz;
  const QuantizedAngle boundary{0};
  // one step clockwise past the boundary direction
  CHECK(orientation_predicate(HexCoord(4, -1, -3), kOrigin, boundary, qz) ==
        Ordering::after);
  // exactly along the boundary at ring Q: normalization is the identity
  CHECK(orientation_predicate(HexCoord(64, 0, -64), kOrigin, boundary, qz) ==
        Ordering::on);
  // counterclockwise side
  CHECK(orientation_predicate(HexCoord(1, 1, -2), kOrigin, boundary, qz) ==
        Ordering::before);
  CHECK_THROWS_AS(orientation_predicate(kOrigin, kOrigin, boundary, qz),
                  Error);
}

TEST_CASE("orientation predicate agrees with the determinant oracle") {
  const Quantization qz;
  for (int64_t bval : {0, 17, 64, 100, 300}) {
    const QuantizedAngle boundary{bval};
    const PlanePoint dir = shapetest::perimeter_point(
        static_cast<double>(bval), qz);
    for (int64_t ri = 1; ri <= 32; ++ri) {
      for (const HexCoord& p : ring_cells(ri)) {
        const double exact =
            oracle::hex_angle_param(hex_to_plane(p), qz);
        const double turn = static_cast<double>(qz.full_turn());
        double off = std::fmod(exact - static_cast<double>(bval) + turn, turn);
        // skip within a quantum of the boundary or its antipode, where the
        // two formulations may legitimately split
        if (off < 1.0 || off > turn - 1.0 ||
            std::abs(off - turn / 2) < 1.0)
          continue;
        const Ordering got = orientation_predicate(p, kOrigin, boundary, qz);
        const int det = oracle::cart_orientation(hex_to_plane(p), {0, 0}, dir);
        REQUIRE(got == (det < 0 ? Ordering::after : Ordering::before));
      }
    }
  }
}

TEST_CASE("angle_in_arc matches brute force at Q = 8") {
  const Quantization qz{3};  // 48 angles
  const int64_t turn = qz.full_turn();
  for (int64_t start = 0; start < turn; ++start)
    for (int64_t end = 0; end < turn; ++end)
      for (int64_t a = 0; a < turn; ++a) {
        // walk clockwise from start to end and look for a
        bool want = false;
        for (int64_t x = start;; x = (x + 1) % turn) {
          if (x == a) {
            want = true;
            break;
          }
          if (x == end) break;
        }
        REQUIRE(angle_in_arc(QuantizedAngle{a}, QuantizedAngle{start},
                             QuantizedAngle{end}, qz) == want);
      }
}

TEST_CASE("angle_in_arc endpoint conventions") {
  const Quantization qz;
  CHECK(angle_in_arc(QuantizedAngle{5}, QuantizedAngle{5}, QuantizedAngle{5},
                     qz));
  CHECK_FALSE(angle_in_arc(QuantizedAngle{6}, QuantizedAngle{5},
                           QuantizedAngle{5}, qz));
  // wrap-around arc
  CHECK(angle_in_arc(QuantizedAngle{0}, QuantizedAngle{383}, QuantizedAngle{1},
                     qz));
  CHECK_FALSE(angle_in_arc(QuantizedAngle{2}, QuantizedAngle{383},
                           QuantizedAngle{1}, qz));
}

TEST_CASE("wedge covering wedge zero rasterizes to the frozen cell set") {
  const Quantization qz;
  const FoundationalShape w =
      make_wedge(kOrigin, 4, QuantizedAngle{0}, QuantizedAngle{64}, qz);
  std::vector<HexCoord> want = {
      HexCoord(0, 0, 0),
      HexCoord(1, 0, -1),  HexCoord(1, -1, 0),
      HexCoord(2, 0, -2),  HexCoord(2, -1, -1), HexCoord(2, -2, 0),
      HexCoord(3, 0, -3),  HexCoord(3, -1, -2), HexCoord(3, -2, -1),
      HexCoord(3, -3, 0),
      HexCoord(4, 0, -4),  HexCoord(4, -1, -3), HexCoord(4, -2, -2),
      HexCoord(4, -3, -1), HexCoord(4, -4, 0)};
  CHECK(rasterize(w, 5, qz) == sorted(want));
}

TEST_CASE("disc rasters are centered hexagonal numbers") {
  CHECK(rasterize(make_disc(kOrigin, 2), 3).size() == 19u);
  CHECK(rasterize(make_disc(HexCoord(7, -3, -4), 4), 5).size() == 61u);
  CHECK(rasterize(make_point(HexCoord(2, -2, 0)), 4) ==
        std::vector<HexCoord>{HexCoord(2, -2, 0)});
}

TEST_CASE("ray along a corner direction is a collinear cell chain") {
  const Quantization qz;
  const HexCoord anchor(3, -1, -2);
  const FoundationalShape ray =
      make_ray(anchor, 5, QuantizedAngle{2 * 64}, qz);  // corner(2) direction
  std::vector<HexCoord> want;
  for (int64_t i = 0; i <= 5; ++i)
    want.push_back(anchor + scale_coord(kWedgeCorners[2], i));
  CHECK(rasterize(ray, 6, qz) == sorted(want));
}

TEST_CASE("rays pick exactly one cell per ring") {
  const Quantization qz;
  std::uniform_int_distribution<int64_t> ad(0, qz.full_turn() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const QuantizedAngle angle{ad(rng)};
    const FoundationalShape ray = make_ray(kOrigin, 20, angle, qz);
    const auto cells = rasterize(ray, 21, qz);
    REQUIRE(cells.size() == 21u);
    std::set<int64_t> rings;
    for (HexCoord p : cells) rings.insert(radial_distance(p));
    REQUIRE(rings.size() == 21u);  // rings 0..20, one cell each
  }
}

TEST_CASE("facing rays meet in a digital segment") {
  const Quantization qz;
  const HexCoord a(-10, 4, 6);
  const HexCoord b(22, -12, -10);
  const int64_t d = distance(a, b);
  REQUIRE(d == 32);  // divides Q: truncation is exact both ways
  const QuantizedAngle fwd = normalize_angle(polar_angle(translate(b, a)), qz);
  const QuantizedAngle back = normalize_angle(polar_angle(translate(a, b)), qz);
  const SimpleShape segment =
      make_simple(make_ray(a, d, fwd, qz), make_ray(b, d, back, qz));
  const auto cells = brute_raster(segment, a, d + 1, qz);
  REQUIRE(std::find(cells.begin(), cells.end(), a) != cells.end());
  REQUIRE(std::find(cells.begin(), cells.end(), b) != cells.end());
  for (HexCoord p : cells) {
    REQUIRE(distance(p, a) <= d);
    REQUIRE(distance(p, b) <= d);
  }
}

TEST_CASE("donut membership follows the subtractive definition") {
  const ComplexShape donut = ComplexShape::so(
      ComplexShape::leaf(make_disc(kOrigin, 6)),
      ComplexShape::leaf(make_disc(kOrigin, 3)));
  CHECK_FALSE(contains(donut, HexCoord(3, 0, -3)));
  CHECK(contains(donut, HexCoord(4, 0, -4)));
  CHECK_FALSE(contains(donut, HexCoord(7, 0, -7)));
  CHECK_FALSE(contains(donut, kOrigin));
}

TEST_CASE("boolean identities hold at the membership level") {
  const Quantization qz;
  for (int trial = 0; trial < 30; ++trial) {
    const FoundationalShape a = make_disc(random_cell(6), rand_int(2, 7));
    const FoundationalShape b =
        make_wedge(random_cell(6), rand_int(3, 8),
                   QuantizedAngle{rand_int(0, 383)},
                   QuantizedAngle{rand_int(0, 383)}, qz);
    const ComplexShape la = ComplexShape::leaf(a);
    const ComplexShape lb = ComplexShape::leaf(b);
    const ComplexShape so_aa = ComplexShape::so(la, la);
    const ComplexShape ao_aa = ComplexShape::ao(la, la);
    const ComplexShape ao_ab = ComplexShape::ao(la, lb);
    const ComplexShape ao_ba = ComplexShape::ao(lb, la);
    const ComplexShape so_ab = ComplexShape::so(la, lb);
    for (int i = 0; i < 400; ++i) {
      const HexCoord p = random_cell(16);
      const bool in_a = contains(a, p, qz);
      const bool in_ao = contains(ao_ab, p, qz);
      const bool in_so = contains(so_ab, p, qz);
      REQUIRE_FALSE(contains(so_aa, p, qz));
      REQUIRE(contains(ao_aa, p, qz) == in_a);
      REQUIRE(in_ao == contains(ao_ba, p, qz));
      REQUIRE_FALSE((in_ao && in_so));  // disjoint
      REQUIRE((in_ao || in_so) == in_a);  // partition of A
    }
  }
}

TEST_CASE("polygon construction validates winding and degeneracy") {
  // clockwise triangle (negative axial cross)
  const std::vector<HexCoord> cw = {HexCoord(0, 0, 0), HexCoord(6, -2, -4),
                                    HexCoord(2, -6, 4)};
  CHECK(HexPolygon(cw).convex());
  std::vector<HexCoord> ccw(cw.rbegin(), cw.rend());
  CHECK_THROWS_AS(HexPolygon(ccw), Error);
  CHECK_THROWS_AS(HexPolygon({HexCoord(0, 0, 0), HexCoord(6, -2, -4)}), Error);
  CHECK_THROWS_AS(HexPolygon({HexCoord(0, 0, 0), HexCoord(0, 0, 0),
                              HexCoord(2, -6, 4)}),
                  Error);
  // collinear: zero area
  CHECK_THROWS_AS(HexPolygon({HexCoord(0, 0, 0), HexCoord(2, -2, 0),
                              HexCoord(4, -4, 0)}),
                  Error);
  // chevron: clockwise but not convex
  const std::vector<HexCoord> chevron = {
      HexCoord::axial(2, 3), HexCoord::axial(0, 8), HexCoord::axial(6, 2),
      HexCoord::axial(0, 0)};
  const HexPolygon hp(chevron);
  CHECK_FALSE(hp.convex());
}

TEST_CASE("convex polygon membership costs exactly one predicate per edge") {
  const Quantization qz;
  for (size_t n = 3; n <= 12; ++n) {
    // n points in clockwise ring order form a convex lattice polygon
    const auto ring = ring_cells(20);
    std::vector<HexCoord> vs;
    for (size_t i = 0; i < n; ++i)
      vs.push_back(ring[i * ring.size() / n]);
    const HexPolygon poly(vs);
    REQUIRE(poly.convex());

    for (int trial = 0; trial < 20; ++trial) {
      const HexCoord p = random_cell(5);  // deep interior
      if (std::find(vs.begin(), vs.end(), p) != vs.end()) continue;
      reset_predicate_count();
      REQUIRE(contains(poly, p, qz));
      REQUIRE(predicate_count() == n);
    }
    // far outside: at most n (short circuit allowed)
    reset_predicate_count();
    REQUIRE_FALSE(contains(poly, HexCoord(50, -25, -25), qz));
    REQUIRE(predicate_count() <= n);
  }
}

TEST_CASE("random shapes agree with their plane regions") {
  const Quantization qz;
  size_t shapes_checked = 0, cells_compared = 0;

  for (int trial = 0; trial < 40; ++trial) {
    // disc
    {
      const HexCoord a = random_cell(20);
      const int64_t m = rand_int(2, 20);
      const FoundationalShape s = make_disc(a, m);
      size_t n = 0;
      check_region_agreement(s, shapetest::disc_region(a, m), a, m + 3, qz,
                             &n);
      cells_compared += n;
      ++shapes_checked;
    }
    // wedge
    {
      const HexCoord a = random_cell(20);
      const int64_t m = rand_int(3, 24);
      const int64_t start = rand_int(0, 383);
      const int64_t width = rand_int(1, 192);
      const int64_t end = (start + width) % 384;
      const FoundationalShape s = make_wedge(a, m, QuantizedAngle{start},
                                             QuantizedAngle{end}, qz);
      size_t n = 0;
      check_region_agreement(
          s, shapetest::wedge_region(a, m, start, end, qz), a, m + 3, qz, &n);
      cells_compared += n;
      ++shapes_checked;
    }
    // simple: disc meets wedge
    {
      const HexCoord a = random_cell(12);
      const HexCoord b = a + random_cell(4);
      const int64_t md = rand_int(4, 14), mw = rand_int(4, 20);
      const int64_t start = rand_int(0, 383);
      const int64_t end = (start + rand_int(32, 192)) % 384;
      const FoundationalShape disc = make_disc(a, md);
      const FoundationalShape wedge =
          make_wedge(b, mw, QuantizedAngle{start}, QuantizedAngle{end}, qz);
      const SimpleShape s = make_simple(disc, wedge);
      const auto region = shapetest::intersect_regions(
          shapetest::disc_region(a, md),
          shapetest::wedge_region(b, mw, start, end, qz));
      size_t n = 0;
      check_region_agreement(s, region, a, md + 3, qz, &n);
      cells_compared += n;
      ++shapes_checked;
    }
    // donut
    {
      const HexCoord a = random_cell(16);
      const int64_t outer = rand_int(6, 18);
      const int64_t inner = rand_int(2, outer - 3);
      const ComplexShape s =
          ComplexShape::so(ComplexShape::leaf(make_disc(a, outer)),
                           ComplexShape::leaf(make_disc(a, inner)));
      const auto region = shapetest::subtract_regions(
          shapetest::disc_region(a, outer), shapetest::disc_region(a, inner));
      size_t n = 0;
      check_region_agreement(s, region, a, outer + 3, qz, &n);
      cells_compared += n;
      ++shapes_checked;
    }
    // teardrop: union of two offset discs
    {
      const HexCoord a = random_cell(14);
      const HexCoord b = a + random_cell(6);
      const int64_t ma = rand_int(4, 12), mb = rand_int(2, 8);
      const ComplexShape s =
          ComplexShape::unite(ComplexShape::leaf(make_disc(a, ma)),
                              ComplexShape::leaf(make_disc(b, mb)));
      const auto region = shapetest::unite_regions(
          shapetest::disc_region(a, ma), shapetest::disc_region(b, mb));
      size_t n = 0;
      check_region_agreement(s, region, a, ma + mb + 9, qz, &n);
      cells_compared += n;
      ++shapes_checked;
    }
    // convex polygon: clockwise samples of a large ring, shrunk
    {
      const size_t nverts = static_cast<size_t>(rand_int(3, 8));
      const auto ring = ring_cells(rand_int(5, 10));
      const HexCoord off = random_cell(10);
      std::vector<HexCoord> vs;
      size_t base = static_cast<size_t>(rand_int(0, 40));
      for (size_t i = 0; i < nverts; ++i)
        vs.push_back(off + ring[(base + i * ring.size() / nverts) %
                                ring.size()]);
      HexPolygon poly(vs);  // ring order is clockwise
      size_t n = 0;
      check_region_agreement(poly, shapetest::polygon_region(vs), off, 14, qz,
                             &n);
      cells_compared += n;
      ++shapes_checked;
    }
  }
  REQUIRE(shapes_checked >= 200u);
  REQUIRE(cells_compared > 50000u);
}

TEST_CASE("non-convex chevron matches its plane polygon") {
  const Quantization qz;
  for (int trial = 0; trial < 10; ++trial) {
    const HexCoord off = random_cell(10);
    // a dart, star-shaped from its reflex vertex, which leads the list so
    // the fan decomposition is exact
    std::vector<HexCoord> vs = {
        off + HexCoord::axial(2, 3), off + HexCoord::axial(0, 8),
        off + HexCoord::axial(6, 2), off + HexCoord::axial(0, 0)};
    const HexPolygon poly(vs);
    REQUIRE_FALSE(poly.convex());
    check_region_agreement(poly, shapetest::polygon_region(vs), off, 14, qz);
  }
}

TEST_CASE("square built from two opposing wedges matches the winding oracle") {
  const Quantization qz;
  // clockwise rectangle corners: bottom-left, top-left, top-right,
  // bottom-right in the plane embedding
  const HexCoord c0 = HexCoord::axial(-6, -5);
  const HexCoord c1 = HexCoord::axial(-6, 11);
  const HexCoord c2 = HexCoord::axial(6, 5);
  const HexCoord c3 = HexCoord::axial(6, -11);
  const auto dir = [&](HexCoord from, HexCoord to) {
    return normalize_angle(polar_angle(translate(to, from)), qz);
  };
  const int64_t m0 = std::max({distance(c0, c1), distance(c0, c2),
                               distance(c0, c3)});
  const int64_t m2 = std::max({distance(c2, c0), distance(c2, c1),
                               distance(c2, c3)});
  const SimpleShape square = make_simple(
      make_wedge(c0, m0, dir(c0, c1), dir(c0, c3), qz),
      make_wedge(c2, m2, dir(c2, c3), dir(c2, c1), qz));
  check_region_agreement(square, shapetest::polygon_region({c0, c1, c2, c3}),
                         kOrigin, 18, qz);
}

TEST_CASE("translation commutes with rasterization") {
  const Quantization qz;
  for (int trial = 0; trial < 20; ++trial) {
    const FoundationalShape s =
        make_wedge(random_cell(8), rand_int(3, 10),
                   QuantizedAngle{rand_int(0, 383)},
                   QuantizedAngle{rand_int(0, 383)}, qz);
    const HexCoord delta = random_cell(12);
    const FoundationalShape t = translate_shape(s, delta);
    REQUIRE(t.anchor == translate(s.anchor, delta));
    auto moved = rasterize(s, *s.magnitude + 1, qz);
    for (HexCoord& p : moved) p = translate(p, delta);
    REQUIRE(rasterize(t, *t.magnitude + 1, qz) == sorted(moved));
    // membership form of the same statement
    for (int i = 0; i < 50; ++i) {
      const HexCoord p = random_cell(14);
      REQUIRE(contains(s, p, qz) == contains(t, translate(p, delta), qz));
    }
  }
}

TEST_CASE("sixty-degree shape rotation commutes with rasterization") {
  const Quantization qz;
  for (int trial = 0; trial < 20; ++trial) {
    const FoundationalShape s =
        make_wedge(random_cell(8), rand_int(3, 10),
                   QuantizedAngle{rand_int(0, 383)},
                   QuantizedAngle{rand_int(0, 383)}, qz);
    const HexCoord pivot = random_cell(6);
    const QuantizedAngle rot{rand_int(0, 5) * qz.q()};
    const FoundationalShape t = rotate_shape(s, pivot, rot, qz);
    auto turned = rasterize(s, *s.magnitude + 1, qz);
    for (HexCoord& p : turned)
      p = rotate_point(translate(p, pivot), rot, qz) + pivot;
    REQUIRE(rasterize(t, *t.magnitude + 1, qz) == sorted(turned));
  }
  // rot = 0 and six quarter... six full wedge steps return the original
  const FoundationalShape s =
      make_wedge(HexCoord(3, -1, -2), 5, QuantizedAngle{10},
                 QuantizedAngle{100}, qz);
  CHECK(shape_to_json(rotate_shape(s, kOrigin, QuantizedAngle{0}, qz)) ==
        shape_to_json(s));
  FoundationalShape six = s;
  for (int i = 0; i < 6; ++i)
    six = rotate_shape(six, HexCoord(1, -1, 0), QuantizedAngle{qz.q()}, qz);
  CHECK(shape_to_json(six) == shape_to_json(s));
}

TEST_CASE("scaling shifts anchors and magnitudes") {
  const Quantization qz;
  const FoundationalShape d = make_disc(HexCoord(4, -2, -2), 4);
  const FoundationalShape down = scale_shape(d, 2, ScaleDirection::down);
  CHECK(down.anchor == HexCoord(2, -1, -1));
  CHECK(*down.magnitude == 2);
  const FoundationalShape up = scale_shape(down, 2, ScaleDirection::up);
  CHECK(shape_to_json(up) == shape_to_json(d));  // even anchor: exact round trip
  CHECK_THROWS_AS(scale_shape(d, 3, ScaleDirection::up), Error);

  // every refined original cell lands inside the up-scaled raster
  for (int trial = 0; trial < 10; ++trial) {
    const FoundationalShape s =
        make_wedge(random_cell(6), rand_int(2, 8),
                   QuantizedAngle{rand_int(0, 383)},
                   QuantizedAngle{rand_int(0, 383)}, qz);
    const FoundationalShape big = scale_shape(s, 4, ScaleDirection::up);
    for (HexCoord p : rasterize(s, *s.magnitude + 1, qz))
      REQUIRE(contains(big, refine(p, 4), qz));
  }
}

TEST_CASE("shape JSON round-trips bit-exactly") {
  const Quantization qz;
  std::vector<Shape> shapes;
  shapes.emplace_back(make_point(HexCoord(3, -5, 2)));
  shapes.emplace_back(make_ray(HexCoord(-2, 2, 0), 9, QuantizedAngle{130}, qz));
  shapes.emplace_back(make_wedge(HexCoord(0, 4, -4), 12, QuantizedAngle{350},
                                 QuantizedAngle{20}, qz));
  shapes.emplace_back(make_disc(kOrigin, 7));
  shapes.emplace_back(make_simple(make_disc(HexCoord(1, 0, -1), 5),
                                  make_wedge(kOrigin, 8, QuantizedAngle{0},
                                             QuantizedAngle{96}, qz)));
  shapes.emplace_back(ComplexShape::unite(
      ComplexShape::so(ComplexShape::leaf(make_disc(kOrigin, 6)),
                       ComplexShape::leaf(make_disc(kOrigin, 3))),
      ComplexShape::leaf(make_simple(
          make_disc(HexCoord(8, -4, -4), 4),
          make_wedge(HexCoord(8, -4, -4), 4, QuantizedAngle{64},
                     QuantizedAngle{192}, qz)))));
  shapes.emplace_back(HexPolygon({HexCoord(0, 0, 0), HexCoord(6, -2, -4),
                                  HexCoord(2, -6, 4)}));

  for (const Shape& s : shapes) {
    const std::string doc = shape_document(s, qz);
    const auto [parsed, pqz] = parse_shape_document(doc);
    CHECK(pqz.bits == qz.bits);
    CHECK(shape_document(parsed, pqz) == doc);
    // membership survives the round trip
    for (int i = 0; i < 100; ++i) {
      const HexCoord p = random_cell(10);
      REQUIRE(contains(s, p, qz) == contains(parsed, p, pqz));
    }
  }
}

TEST_CASE("shape JSON rejects malformed documents") {
  const Quantization qz;
  const auto doc = [&](const char* shape_part) {
    return std::string("{\"format\":\"neurohex-shape\",\"quantization_bits\":6,"
                       "\"shape\":") +
           shape_part + "}";
  };
  CHECK_THROWS_AS(parse_shape_document("not json"), Error);
  CHECK_THROWS_AS(parse_shape_document("{\"format\":\"other\"}"), Error);
  CHECK_THROWS_AS(parse_shape_document(doc("{\"kind\":\"blob\"}")), Error);
  // unknown key
  CHECK_THROWS_AS(parse_shape_document(doc(
                      "{\"kind\":\"disc\",\"anchor\":[0,0,0],\"magnitude\":3,"
                      "\"extra\":1}")),
                  Error);
  // missing key
  CHECK_THROWS_AS(parse_shape_document(doc(
                      "{\"kind\":\"disc\",\"anchor\":[0,0,0]}")),
                  Error);
  // broken coordinate sum
  CHECK_THROWS_AS(parse_shape_document(doc(
                      "{\"kind\":\"disc\",\"anchor\":[1,0,0],\"magnitude\":3}")),
                  Error);
  // angle out of range for the declared quantization
  CHECK_THROWS_AS(parse_shape_document(doc(
                      "{\"kind\":\"ray\",\"anchor\":[0,0,0],\"magnitude\":3,"
                      "\"angle\":384}")),
                  Error);
  // counterclockwise polygon
  CHECK_THROWS_AS(parse_shape_document(doc(
                      "{\"kind\":\"polygon\",\"vertices\":[[0,0,0],[2,-6,4],"
                      "[6,-2,-4]]}")),
                  Error);
  (void)qz;
}

TEST_CASE("complex shape transforms rebuild the whole tree") {
  const Quantization qz;
  const ComplexShape donut = ComplexShape::so(
      ComplexShape::leaf(make_disc(HexCoord(2, -2, 0), 6)),
      ComplexShape::leaf(make_disc(HexCoord(2, -2, 0), 3)));
  const HexCoord delta(5, -3, -2);
  const ComplexShape moved = translate_shape(donut, delta);
  for (int i = 0; i < 200; ++i) {
    const HexCoord p = random_cell(12);
    REQUIRE(contains(donut, p, qz) == contains(moved, translate(p, delta), qz));
  }
  const ComplexShape spun =
      rotate_shape(donut, kOrigin, QuantizedAngle{2 * qz.q()}, qz);
  auto turned = rasterize(donut, 7, qz);
  for (HexCoord& p : turned)
    p = rotate_point(p, QuantizedAngle{2 * qz.q()}, qz);
  REQUIRE(rasterize(spun, 7, qz) == sorted(turned));
  const ComplexShape small = scale_shape(donut, 2, ScaleDirection::down);
  CHECK(contains(small, HexCoord(3, -2, -1), qz) ==
        contains(donut, HexCoord(6, -4, -2), qz));
}

TEST_CASE("polygon transforms preserve membership relations") {
  const Quantization qz;
  const std::vector<HexCoord> vs = {HexCoord::axial(2, 6),
                                    HexCoord::axial(10, 4),
                                    HexCoord::axial(8, -2),
                                    HexCoord::axial(0, 0)};
  const HexPolygon poly(vs);
  const HexCoord delta(3, -1, -2);
  const HexPolygon moved = translate_shape(poly, delta);
  for (int i = 0; i < 200; ++i) {
    const HexCoord p = random_cell(14);
    REQUIRE(contains(poly, p, qz) == contains(moved, translate(p, delta), qz));
  }
  const HexPolygon spun = rotate_shape(poly, kOrigin, QuantizedAngle{64}, qz);
  auto turned = rasterize(poly, 20, qz);
  for (HexCoord& p : turned) p = rotate_point(p, QuantizedAngle{64}, qz);
  // rotating the raster of a polygon equals the raster of the rotated
  // polygon only at exact sixty-degree steps, which this is
  std::vector<HexCoord> got = rasterize(spun, 20, qz);
  REQUIRE(got == sorted(turned));
  const HexPolygon big = scale_shape(poly, 2, ScaleDirection::up);
  for (HexCoord p : rasterize(poly, 20, qz))
    REQUIRE(contains(big, refine(p, 2), qz));
}

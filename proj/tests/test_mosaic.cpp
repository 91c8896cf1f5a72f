#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "neurohex/osm/mosaic.hpp"

using namespace neurohex;
using namespace neurohex::osm;
using oracle::PlanePoint;

namespace {

constexpr Quantization kQ{};

const GridFrame kFrame{GeoPoint{0.0, 0.0}, 50.0};

// Builds geo coordinates that land on exact plane targets so tests control
// the fitted geometry directly.
GeoPoint at_plane(double x, double y) {
  return plane_to_geo(PlanePoint{x, y}, kFrame);
}

RawFeature polyline_feature(int64_t id, const std::vector<PlanePoint>& pts) {
  RawFeature f;
  f.id = id;
  f.kind = FeatureKind::polyline;
  for (PlanePoint p : pts) {
    f.coords.push_back(at_plane(p.x, p.y));
  }
  return f;
}

RawFeature polygon_feature(int64_t id, const std::vector<PlanePoint>& ring) {
  RawFeature f;
  f.id = id;
  f.kind = FeatureKind::polygon;
  for (PlanePoint p : ring) {
    f.coords.push_back(at_plane(p.x, p.y));
  }
  f.coords.push_back(f.coords.front());
  return f;
}

std::vector<PlanePoint> rect_ring(double w, double h) {
  return {PlanePoint{0.0, 0.0}, PlanePoint{w, 0.0}, PlanePoint{w, h},
          PlanePoint{0.0, h}};
}

const FoundationalShape& foundational(const Shape& s) {
  REQUIRE(std::holds_alternative<FoundationalShape>(s));
  return std::get<FoundationalShape>(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Polyline fitting

TEST_CASE("straight polyline collapses to one ray pair") {
  std::vector<PlanePoint> pts;
  for (int i = 0; i <= 8; ++i) {
    pts.push_back(PlanePoint{3.0 * i, 1.5 * i});
  }
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polyline(pts, 8, kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE_FALSE(flag);
  REQUIRE(std::holds_alternative<SimpleShape>(out[0]));
  const SimpleShape& s = std::get<SimpleShape>(out[0]);
  REQUIRE(foundation_kind(s.first) == FoundationKind::ray);
  REQUIRE(foundation_kind(s.second) == FoundationKind::ray);
  // The rays anchor at the snapped endpoints and span the same magnitude.
  const HexCoord a = oracle::plane_to_hex(pts.front());
  const HexCoord b = oracle::plane_to_hex(pts.back());
  REQUIRE(s.first.anchor == a);
  REQUIRE(s.second.anchor == b);
  REQUIRE(*s.first.magnitude == distance(a, b));
  REQUIRE(*s.second.magnitude == distance(a, b));
}

TEST_CASE("sharp corner splits the polyline into two segments") {
  std::vector<PlanePoint> pts;
  for (int i = 0; i <= 5; ++i) {
    pts.push_back(PlanePoint{8.0 * i, 0.0});
  }
  for (int i = 1; i <= 5; ++i) {
    pts.push_back(PlanePoint{40.0, 8.0 * i});
  }
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polyline(pts, 8, kQ, out, flag);
  REQUIRE(out.size() == 2);
  REQUIRE_FALSE(flag);
  REQUIRE(std::holds_alternative<SimpleShape>(out[0]));
  REQUIRE(std::holds_alternative<SimpleShape>(out[1]));
}

TEST_CASE("circular sweep fits a single arc primitive") {
  const double r = 40.0;
  const double pi = 3.14159265358979323846;
  std::vector<PlanePoint> pts;
  for (int deg = -60; deg <= 60; deg += 10) {
    const double a = deg * pi / 180.0;
    pts.push_back(PlanePoint{r * std::cos(a), r * std::sin(a)});
  }
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polyline(pts, 8, kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE_FALSE(flag);
  REQUIRE(std::holds_alternative<ComplexShape>(out[0]));

  // Donut wedge: (outer disc minus inner disc) intersected with a wedge.
  const ComplexShape& c = std::get<ComplexShape>(out[0]);
  const ComplexShape::Node& root = c.root();
  REQUIRE(root.kind == ComplexShape::NodeKind::ao);
  REQUIRE(root.left->kind == ComplexShape::NodeKind::so);
  REQUIRE(root.right->kind == ComplexShape::NodeKind::leaf);
  const FoundationalShape& outer =
      std::get<FoundationalShape>(root.left->left->payload);
  const FoundationalShape& inner =
      std::get<FoundationalShape>(root.left->right->payload);
  const FoundationalShape& wedge =
      std::get<FoundationalShape>(root.right->payload);
  REQUIRE(foundation_kind(outer) == FoundationKind::disc);
  REQUIRE(foundation_kind(inner) == FoundationKind::disc);
  REQUIRE(foundation_kind(wedge) == FoundationKind::wedge);
  REQUIRE(outer.anchor == inner.anchor);
  REQUIRE(outer.anchor == wedge.anchor);
  REQUIRE(*inner.magnitude >= 0);
  REQUIRE(*inner.magnitude < *outer.magnitude);
  // The fitted center sits near the true one.
  const PlanePoint cp = oracle::hex_to_plane(outer.anchor);
  REQUIRE(oracle::norm(cp) < 2.0);
  // The cell under the mid-sweep sample lies inside the donut wedge.
  REQUIRE(contains(out[0], oracle::plane_to_hex(PlanePoint{r, 0.0}), kQ));
}

TEST_CASE("polyline budget exhaustion sets the accuracy flag") {
  // Square-wave zigzag: every bend needs its own segment.
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 10; ++i) {
    pts.push_back(PlanePoint{20.0 * i, (i % 2) ? 40.0 : 0.0});
  }
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polyline(pts, 3, kQ, out, flag);
  REQUIRE(flag);
  REQUIRE(out.size() == 3);
}

TEST_CASE("segment endpoints in the same cell become a point") {
  const Shape s = osm::detail::segment_shape(PlanePoint{0.1, 0.1},
                                        PlanePoint{0.2, 0.0}, kQ);
  const FoundationalShape& f = foundational(s);
  REQUIRE(foundation_kind(f) == FoundationKind::point);
}

// ---------------------------------------------------------------------------
// Polygon fitting

TEST_CASE("rectangle fits as one pair of opposing wedges") {
  const std::vector<PlanePoint> ring = rect_ring(104.0, 69.0);
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polygon(ring, 8, 0.10, kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE_FALSE(flag);
  REQUIRE(std::holds_alternative<SimpleShape>(out[0]));
  const SimpleShape& s = std::get<SimpleShape>(out[0]);
  REQUIRE(foundation_kind(s.first) == FoundationKind::wedge);
  REQUIRE(foundation_kind(s.second) == FoundationKind::wedge);
  // Anchors are opposite rectangle corners.
  const int64_t diag = distance(s.first.anchor, s.second.anchor);
  REQUIRE(diag >= *s.first.magnitude);
  REQUIRE(*s.first.magnitude == *s.second.magnitude);
}

TEST_CASE("round polygon fits as a single disc") {
  const double r = 35.0;
  const double pi = 3.14159265358979323846;
  std::vector<PlanePoint> ring;
  for (int k = 0; k < 24; ++k) {
    const double a = 2.0 * pi * k / 24.0;
    ring.push_back(PlanePoint{r * std::cos(a), r * std::sin(a)});
  }
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polygon(ring, 8, 0.10, kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE_FALSE(flag);
  const FoundationalShape& f = foundational(out[0]);
  REQUIRE(foundation_kind(f) == FoundationKind::disc);
  // Area-matched radius: hex disc of magnitude m covers about pi r^2.
  const double expected = osm::detail::disc_magnitude(r);
  REQUIRE(*f.magnitude == static_cast<int64_t>(expected));
  REQUIRE(oracle::norm(oracle::hex_to_plane(f.anchor)) < 2.0);
}

TEST_CASE("concave ring keeps the hull cover and raises the flag") {
  // L shape: the min-area rectangle of the hull overcovers the notch, and
  // a union of primitives cannot carve coverage away, so the fitter
  // reports the miss through the accuracy flag.
  const std::vector<PlanePoint> ring = {
      {0.0, 0.0}, {80.0, 0.0},  {80.0, 30.0}, {30.0, 30.0},
      {30.0, 80.0}, {0.0, 80.0}};
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polygon(ring, 8, 0.10, kQ, out, flag);
  REQUIRE(flag);
  REQUIRE(out.size() >= 1);
}

TEST_CASE("degenerate rings become points") {
  std::vector<Shape> out;
  bool flag = false;
  osm::detail::fit_polygon({PlanePoint{5.0, 5.0}, PlanePoint{5.1, 5.0}}, 8, 0.10,
                      kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE(foundation_kind(foundational(out[0])) == FoundationKind::point);
  REQUIRE_FALSE(flag);

  out.clear();
  // Collinear ring: positive vertex count, zero area.
  osm::detail::fit_polygon(
      {PlanePoint{0.0, 0.0}, PlanePoint{10.0, 0.0}, PlanePoint{20.0, 0.0}}, 8,
      0.10, kQ, out, flag);
  REQUIRE(out.size() == 1);
  REQUIRE(foundation_kind(foundational(out[0])) == FoundationKind::point);
}

// ---------------------------------------------------------------------------
// Feature-level conversion

TEST_CASE("node features become point objects") {
  RawFeature f;
  f.id = 77;
  f.kind = FeatureKind::node;
  f.coords.push_back(at_plane(12.0, -9.0));
  f.tags["amenity"] = "cafe";
  const MosaicObject obj =
      fit_feature(f, FeatureClass::landmark, kFrame, ResolutionPolicy::metro());
  REQUIRE(obj.source_id == 77);
  REQUIRE(obj.cls == FeatureClass::landmark);
  REQUIRE(obj.tier == Tier::contextual);
  REQUIRE_FALSE(obj.accuracy_flag);
  REQUIRE(obj.primitives.size() == 1);
  const FoundationalShape& p = foundational(obj.primitives[0]);
  REQUIRE(foundation_kind(p) == FoundationKind::point);
  REQUIRE(p.anchor == oracle::plane_to_hex(PlanePoint{12.0, -9.0}));
}

TEST_CASE("polyline features convert through the grid frame") {
  const RawFeature f = polyline_feature(
      5, {PlanePoint{0.0, 0.0}, PlanePoint{20.0, 10.0}, PlanePoint{40.0, 20.0}});
  const MosaicObject obj =
      fit_feature(f, FeatureClass::highway, kFrame, ResolutionPolicy::metro());
  REQUIRE(obj.tier == Tier::structural);
  REQUIRE(obj.primitives.size() == 1);
  REQUIRE(std::holds_alternative<SimpleShape>(obj.primitives[0]));
}

TEST_CASE("polygon features drop the closure duplicate before fitting") {
  const RawFeature f = polygon_feature(6, rect_ring(104.0, 69.0));
  const MosaicObject obj =
      fit_feature(f, FeatureClass::building, kFrame, ResolutionPolicy::metro());
  REQUIRE(obj.tier == Tier::contextual);
  REQUIRE(obj.primitives.size() == 1);
  REQUIRE(std::holds_alternative<SimpleShape>(obj.primitives[0]));
}

TEST_CASE("parks draw from the larger primitive budget") {
  const ResolutionPolicy p = ResolutionPolicy::metro();
  REQUIRE(primitive_budget(FeatureClass::park, p) == p.park_max_primitives);
  REQUIRE(primitive_budget(FeatureClass::building, p) == p.max_primitives);
  REQUIRE(primitive_budget(FeatureClass::river, p) == p.max_primitives);
}

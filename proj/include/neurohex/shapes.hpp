#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "neurohex/error.hpp"
#include "neurohex/hex.hpp"

// Shape library: foundational shapes (point, ray, wedge, disc), pairwise
// intersections, boolean composition trees, and lattice polygons, together
// with membership predicates, rasterization, and shape-level transforms.

namespace neurohex {

// Instrumented count of angular boundary comparisons. Each orientation
// predicate is one comparison; an arc test is two (one per endpoint).
namespace detail {
inline thread_local uint64_t predicate_evals = 0;
}
inline uint64_t predicate_count() { return detail::predicate_evals; }
inline void reset_predicate_count() { detail::predicate_evals = 0; }

enum class Ordering { before, on, after };

// Where p sits relative to the boundary direction out of anchor: "after"
// means clockwise past it by at most a half turn, "before" counterclockwise.
inline Ordering orientation_predicate(HexCoord p, HexCoord anchor,
                                      QuantizedAngle boundary,
                                      Quantization qz = kDefaultQuantization) {
  if (p == anchor)
    fail(ErrorKind::degenerate_at_anchor,
         "orientation query coincides with the anchor");
  ++detail::predicate_evals;
  const QuantizedAngle a =
      normalize_angle(polar_angle(translate(p, anchor)), qz);
  const int64_t off = angle_offset(boundary, a, qz);
  if (off == 0) return Ordering::on;
  return off <= qz.half_turn() ? Ordering::after : Ordering::before;
}

// True iff a lies on the clockwise arc from start to end, endpoints
// included. start == end admits exactly that one angle.
inline bool angle_in_arc(QuantizedAngle a, QuantizedAngle start,
                         QuantizedAngle end,
                         Quantization qz = kDefaultQuantization) {
  detail::predicate_evals += 2;
  return angle_offset(start, a, qz) <= angle_offset(start, end, qz);
}

// ---------------------------------------------------------------------------

enum class FoundationKind { point, ray, wedge, disc };

// The null mask of the optionals decides the kind: nothing set is a point,
// one angle a ray, both angles a wedge, magnitude alone a disc.
struct FoundationalShape {
  HexCoord anchor;
  std::optional<int64_t> magnitude;
  std::optional<QuantizedAngle> angle_start;
  std::optional<QuantizedAngle> angle_end;
};

inline FoundationKind foundation_kind(const FoundationalShape& f) {
  if (!f.magnitude) return FoundationKind::point;
  const bool s = f.angle_start.has_value(), e = f.angle_end.has_value();
  if (s && e) return FoundationKind::wedge;
  if (s || e) return FoundationKind::ray;
  return FoundationKind::disc;
}

inline QuantizedAngle ray_angle(const FoundationalShape& f) {
  if (f.angle_start) return *f.angle_start;
  if (f.angle_end) return *f.angle_end;
  fail(ErrorKind::invalid_shape, "shape carries no ray angle");
}

inline void validate_foundational(const FoundationalShape& f,
                                  Quantization qz = kDefaultQuantization) {
  if (f.magnitude && *f.magnitude < 0)
    fail(ErrorKind::invalid_shape, "negative magnitude");
  if (!f.magnitude && (f.angle_start || f.angle_end))
    fail(ErrorKind::invalid_shape,
         "unbounded ray or wedge: angles require a finite magnitude");
  if (f.angle_start) quantized_angle(f.angle_start->value, qz);
  if (f.angle_end) quantized_angle(f.angle_end->value, qz);
}

inline FoundationalShape make_point(HexCoord anchor) {
  return FoundationalShape{anchor, std::nullopt, std::nullopt, std::nullopt};
}

inline FoundationalShape make_ray(HexCoord anchor, int64_t magnitude,
                                  QuantizedAngle angle,
                                  Quantization qz = kDefaultQuantization) {
  FoundationalShape f{anchor, magnitude, angle, std::nullopt};
  validate_foundational(f, qz);
  return f;
}

inline FoundationalShape make_wedge(HexCoord anchor, int64_t magnitude,
                                    QuantizedAngle start, QuantizedAngle end,
                                    Quantization qz = kDefaultQuantization) {
  FoundationalShape f{anchor, magnitude, start, end};
  validate_foundational(f, qz);
  return f;
}

inline FoundationalShape make_disc(HexCoord anchor, int64_t magnitude) {
  FoundationalShape f{anchor, magnitude, std::nullopt, std::nullopt};
  validate_foundational(f);
  return f;
}

struct SimpleShape {
  FoundationalShape first;
  FoundationalShape second;
};

inline SimpleShape make_simple(FoundationalShape first,
                               FoundationalShape second) {
  return SimpleShape{std::move(first), std::move(second)};
}

// Boolean composition tree. Immutable: nodes are shared, never mutated.
class ComplexShape {
 public:
  enum class NodeKind { leaf, ao, so, unite };

  struct Node {
    NodeKind kind = NodeKind::leaf;
    std::variant<FoundationalShape, SimpleShape> payload;
    std::shared_ptr<const Node> left, right;
  };

  static ComplexShape leaf(FoundationalShape f) {
    auto n = std::make_shared<Node>();
    n->payload = std::move(f);
    return ComplexShape(std::move(n));
  }
  static ComplexShape leaf(SimpleShape s) {
    auto n = std::make_shared<Node>();
    n->payload = std::move(s);
    return ComplexShape(std::move(n));
  }
  // additive overlap: in both
  static ComplexShape ao(ComplexShape l, ComplexShape r) {
    return combine(NodeKind::ao, std::move(l), std::move(r));
  }
  // subtractive overlap: in left, not in right
  static ComplexShape so(ComplexShape l, ComplexShape r) {
    return combine(NodeKind::so, std::move(l), std::move(r));
  }
  static ComplexShape unite(ComplexShape l, ComplexShape r) {
    return combine(NodeKind::unite, std::move(l), std::move(r));
  }

  const Node& root() const { return *root_; }

 private:
  explicit ComplexShape(std::shared_ptr<const Node> root)
      : root_(std::move(root)) {}

  static ComplexShape combine(NodeKind kind, ComplexShape l, ComplexShape r) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->left = std::move(l.root_);
    n->right = std::move(r.root_);
    return ComplexShape(std::move(n));
  }

  std::shared_ptr<const Node> root_;
};

// Integer cross product in axial coordinates. The axial-to-plane map has
// positive determinant, so the sign agrees with the plane orientation:
// negative means clockwise.
inline int64_t cross_axial(HexCoord a, HexCoord b) {
  return a.q() * b.r() - a.r() * b.q();
}

// Lattice polygon with clockwise winding. Convex polygons test one
// orientation predicate per edge; non-convex ones fall back to a triangle
// fan from vertex 0 (exact for polygons star-shaped from that vertex).
class HexPolygon {
 public:
  explicit HexPolygon(std::vector<HexCoord> vertices)
      : verts_(std::move(vertices)) {
    const size_t n = verts_.size();
    if (n < 3)
      fail(ErrorKind::invalid_polygon, "polygon needs at least 3 vertices");
    int64_t shoelace = 0;
    convex_ = true;
    for (size_t i = 0; i < n; ++i) {
      const HexCoord a = verts_[i];
      const HexCoord b = verts_[(i + 1) % n];
      const HexCoord c = verts_[(i + 2) % n];
      if (a == b)
        fail(ErrorKind::invalid_polygon, "consecutive vertices coincide");
      shoelace += cross_axial(a, b);
      if (cross_axial(b - a, c - b) > 0) convex_ = false;
    }
    if (shoelace == 0)
      fail(ErrorKind::invalid_polygon, "degenerate polygon (zero area)");
    if (shoelace > 0)
      fail(ErrorKind::invalid_polygon, "vertices must wind clockwise");
  }

  const std::vector<HexCoord>& vertices() const { return verts_; }
  bool convex() const { return convex_; }

 private:
  std::vector<HexCoord> verts_;
  bool convex_;
};

using Shape = std::variant<FoundationalShape, SimpleShape, ComplexShape,
                           HexPolygon>;

// ---------------------------------------------------------------------------
// Membership.

inline bool contains(const FoundationalShape& f, HexCoord p,
                     Quantization qz = kDefaultQuantization) {
  const FoundationKind kind = foundation_kind(f);
  if (kind == FoundationKind::point) return p == f.anchor;
  // the anchor belongs to every extended shape: its angle is undefined
  if (p == f.anchor) return true;
  const HexCoord v = translate(p, f.anchor);
  const int64_t d = radial_distance(v);
  if (d > *f.magnitude) return false;
  switch (kind) {
    case FoundationKind::disc:
      return true;
    case FoundationKind::ray: {
      // on the ray iff the cell's ring-local angle equals the ray angle
      // truncated to that ring's resolution: one cell per ring
      ++detail::predicate_evals;
      const RingLocalAngle want = denormalize_angle(ray_angle(f), d, qz);
      return polar_angle(v).phi == want.phi;
    }
    case FoundationKind::wedge: {
      const QuantizedAngle a = normalize_angle(polar_angle(v), qz);
      return angle_in_arc(a, *f.angle_start, *f.angle_end, qz);
    }
    default:
      return false;  // unreachable
  }
}

inline bool contains(const SimpleShape& s, HexCoord p,
                     Quantization qz = kDefaultQuantization) {
  return contains(s.first, p, qz) && contains(s.second, p, qz);
}

namespace detail {
inline bool contains_node(const ComplexShape::Node& n, HexCoord p,
                          Quantization qz) {
  switch (n.kind) {
    case ComplexShape::NodeKind::leaf:
      return std::visit([&](const auto& s) { return contains(s, p, qz); },
                        n.payload);
    case ComplexShape::NodeKind::ao:
      return contains_node(*n.left, p, qz) && contains_node(*n.right, p, qz);
    case ComplexShape::NodeKind::so:
      return contains_node(*n.left, p, qz) && !contains_node(*n.right, p, qz);
    case ComplexShape::NodeKind::unite:
      return contains_node(*n.left, p, qz) || contains_node(*n.right, p, qz);
  }
  return false;  // unreachable
}
}  // namespace detail

inline bool contains(const ComplexShape& c, HexCoord p,
                     Quantization qz = kDefaultQuantization) {
  return detail::contains_node(c.root(), p, qz);
}

// A triangle is the meet of two wedges: at t0 the clockwise span from
// direction(t0->t1) to direction(t0->t2), at t1 the span from
// direction(t1->t2) back to direction(t1->t0). Vertices must wind clockwise.
inline bool contains_triangle(HexCoord p, HexCoord t0, HexCoord t1,
                              HexCoord t2,
                              Quantization qz = kDefaultQuantization) {
  if (p == t0 || p == t1 || p == t2) return true;
  const auto dir = [&](HexCoord from, HexCoord to) {
    return normalize_angle(polar_angle(translate(to, from)), qz);
  };
  const FoundationalShape w0 =
      make_wedge(t0, std::max(distance(t0, t1), distance(t0, t2)),
                 dir(t0, t1), dir(t0, t2), qz);
  const FoundationalShape w1 =
      make_wedge(t1, std::max(distance(t1, t2), distance(t1, t0)),
                 dir(t1, t2), dir(t1, t0), qz);
  return contains(w0, p, qz) && contains(w1, p, qz);
}

inline bool contains(const HexPolygon& poly, HexCoord p,
                     Quantization qz = kDefaultQuantization) {
  const auto& vs = poly.vertices();
  const size_t n = vs.size();
  if (poly.convex()) {
    // interior lies clockwise of every directed edge: n predicates
    for (size_t i = 0; i < n; ++i) {
      const HexCoord a = vs[i];
      const HexCoord b = vs[(i + 1) % n];
      if (p == a) return true;
      const QuantizedAngle edge =
          normalize_angle(polar_angle(translate(b, a)), qz);
      if (orientation_predicate(p, a, edge, qz) == Ordering::before)
        return false;
    }
    return true;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    HexCoord t1 = vs[i], t2 = vs[i + 1];
    const int64_t cz = cross_axial(t1 - vs[0], t2 - vs[0]);
    if (cz == 0) continue;  // collinear sliver contributes no area
    if (cz > 0) std::swap(t1, t2);
    if (contains_triangle(p, vs[0], t1, t2, qz)) return true;
  }
  return false;
}

inline bool contains(const Shape& s, HexCoord p,
                     Quantization qz = kDefaultQuantization) {
  return std::visit([&](const auto& v) { return contains(v, p, qz); }, s);
}

// ---------------------------------------------------------------------------
// Rasterization.

inline HexCoord shape_anchor(const FoundationalShape& f) { return f.anchor; }
inline HexCoord shape_anchor(const SimpleShape& s) { return s.first.anchor; }
inline HexCoord shape_anchor(const ComplexShape& c) {
  const ComplexShape::Node* n = &c.root();
  while (n->kind != ComplexShape::NodeKind::leaf) n = n->left.get();
  return std::visit([](const auto& s) { return shape_anchor(s); }, n->payload);
}
inline HexCoord shape_anchor(const HexPolygon& poly) {
  return poly.vertices().front();
}
inline HexCoord shape_anchor(const Shape& s) {
  return std::visit([](const auto& v) { return shape_anchor(v); }, s);
}

// All member cells within `radius` hops of the shape anchor, in ascending
// (q, r) order. The bound keeps the scan finite; callers pick it at least
// as large as the shape extent to get the full raster.
template <typename ShapeT>
std::vector<HexCoord> rasterize(const ShapeT& s, int64_t radius,
                                Quantization qz = kDefaultQuantization) {
  if (radius < 0)
    fail(ErrorKind::invalid_shape, "negative rasterization bound");
  const HexCoord center = shape_anchor(s);
  std::vector<HexCoord> out;
  for (int64_t q = -radius; q <= radius; ++q) {
    const int64_t lo = std::max(-radius, -q - radius);
    const int64_t hi = std::min(radius, -q + radius);
    for (int64_t r = lo; r <= hi; ++r) {
      const HexCoord p = center + HexCoord(q, r, -q - r);
      if (contains(s, p, qz)) out.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transforms.

inline FoundationalShape translate_shape(FoundationalShape f, HexCoord delta) {
  f.anchor = translate(f.anchor, delta);
  return f;
}
inline SimpleShape translate_shape(SimpleShape s, HexCoord delta) {
  s.first = translate_shape(std::move(s.first), delta);
  s.second = translate_shape(std::move(s.second), delta);
  return s;
}

inline FoundationalShape rotate_shape(FoundationalShape f, HexCoord pivot,
                                      QuantizedAngle rot,
                                      Quantization qz = kDefaultQuantization) {
  f.anchor = rotate_point(translate(f.anchor, pivot), rot, qz) + pivot;
  if (f.angle_start) f.angle_start = add_angles(*f.angle_start, rot, qz);
  if (f.angle_end) f.angle_end = add_angles(*f.angle_end, rot, qz);
  return f;
}
inline SimpleShape rotate_shape(SimpleShape s, HexCoord pivot,
                                QuantizedAngle rot,
                                Quantization qz = kDefaultQuantization) {
  s.first = rotate_shape(std::move(s.first), pivot, rot, qz);
  s.second = rotate_shape(std::move(s.second), pivot, rot, qz);
  return s;
}

enum class ScaleDirection { up, down };

inline FoundationalShape scale_shape(FoundationalShape f, int64_t k,
                                     ScaleDirection dir) {
  const int shift = detail::scale_shift(k);
  if (dir == ScaleDirection::up) {
    f.anchor = refine(f.anchor, k);
    if (f.magnitude) f.magnitude = *f.magnitude << shift;
  } else {
    f.anchor = coarsen(f.anchor, k);
    if (f.magnitude) f.magnitude = *f.magnitude >> shift;
  }
  return f;
}
inline SimpleShape scale_shape(SimpleShape s, int64_t k, ScaleDirection dir) {
  s.first = scale_shape(std::move(s.first), k, dir);
  s.second = scale_shape(std::move(s.second), k, dir);
  return s;
}

namespace detail {
template <typename Fn>
ComplexShape map_complex(const ComplexShape& c, const Fn& fn) {
  // rebuild through the public factories to keep Node construction private
  struct Rebuilder {
    const Fn& fn;
    ComplexShape operator()(const ComplexShape::Node& n) const {
      switch (n.kind) {
        case ComplexShape::NodeKind::leaf:
          return std::visit(
              [&](const auto& s) { return ComplexShape::leaf(fn(s)); },
              n.payload);
        case ComplexShape::NodeKind::ao:
          return ComplexShape::ao((*this)(*n.left), (*this)(*n.right));
        case ComplexShape::NodeKind::so:
          return ComplexShape::so((*this)(*n.left), (*this)(*n.right));
        case ComplexShape::NodeKind::unite:
        default:
          return ComplexShape::unite((*this)(*n.left), (*this)(*n.right));
      }
    }
  };
  return Rebuilder{fn}(c.root());
}
}  // namespace detail

inline ComplexShape translate_shape(const ComplexShape& c, HexCoord delta) {
  return detail::map_complex(
      c, [&](const auto& s) { return translate_shape(s, delta); });
}
inline ComplexShape rotate_shape(const ComplexShape& c, HexCoord pivot,
                                 QuantizedAngle rot,
                                 Quantization qz = kDefaultQuantization) {
  return detail::map_complex(
      c, [&](const auto& s) { return rotate_shape(s, pivot, rot, qz); });
}
inline ComplexShape scale_shape(const ComplexShape& c, int64_t k,
                                ScaleDirection dir) {
  return detail::map_complex(
      c, [&](const auto& s) { return scale_shape(s, k, dir); });
}

inline HexPolygon translate_shape(const HexPolygon& poly, HexCoord delta) {
  std::vector<HexCoord> vs;
  vs.reserve(poly.vertices().size());
  for (HexCoord v : poly.vertices()) vs.push_back(translate(v, delta));
  return HexPolygon(std::move(vs));
}

// Rotation and downscaling revalidate: away from 60-degree multiples or
// under coarsening, vertices can collapse and construction then reports
// the degeneracy rather than returning a broken polygon.
inline HexPolygon rotate_shape(const HexPolygon& poly, HexCoord pivot,
                               QuantizedAngle rot,
                               Quantization qz = kDefaultQuantization) {
  std::vector<HexCoord> vs;
  vs.reserve(poly.vertices().size());
  for (HexCoord v : poly.vertices())
    vs.push_back(rotate_point(translate(v, pivot), rot, qz) + pivot);
  return HexPolygon(std::move(vs));
}

inline HexPolygon scale_shape(const HexPolygon& poly, int64_t k,
                              ScaleDirection dir) {
  std::vector<HexCoord> vs;
  vs.reserve(poly.vertices().size());
  for (HexCoord v : poly.vertices())
    vs.push_back(dir == ScaleDirection::up ? refine(v, k) : coarsen(v, k));
  if (dir == ScaleDirection::down) {
    std::vector<HexCoord> dedup;
    for (HexCoord v : vs)
      if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
    while (dedup.size() > 1 && dedup.front() == dedup.back())
      dedup.pop_back();
    vs = std::move(dedup);
  }
  return HexPolygon(std::move(vs));
}

inline Shape translate_shape(const Shape& s, HexCoord delta) {
  return std::visit(
      [&](const auto& v) { return Shape(translate_shape(v, delta)); }, s);
}
inline Shape rotate_shape(const Shape& s, HexCoord pivot, QuantizedAngle rot,
                          Quantization qz = kDefaultQuantization) {
  return std::visit(
      [&](const auto& v) { return Shape(rotate_shape(v, pivot, rot, qz)); },
      s);
}
inline Shape scale_shape(const Shape& s, int64_t k, ScaleDirection dir) {
  return std::visit(
      [&](const auto& v) { return Shape(scale_shape(v, k, dir)); }, s);
}

}  // namespace neurohex

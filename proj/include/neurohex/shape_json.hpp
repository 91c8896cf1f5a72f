#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "neurohex/error.hpp"
#include "neurohex/shapes.hpp"

// JSON schema for shapes. Kind tags: point, ray, wedge, disc, simple, ao,
// so, union, polygon. Anchors serialize as [q, r, s]; angles as integers
// under a declared quantization width. Serialization is deterministic
// (insertion-ordered keys), so parse followed by serialize is bit-exact.

namespace neurohex {

using ordered_json = nlohmann::ordered_json;

inline ordered_json coord_to_json(HexCoord p) {
  return ordered_json::array({p.q(), p.r(), p.s()});
}

inline HexCoord coord_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number_integer() ||
      !j[1].is_number_integer() || !j[2].is_number_integer())
    fail(ErrorKind::schema, "coordinate must be an array of three integers");
  const int64_t q = j[0], r = j[1], s = j[2];
  if (q + r + s != 0)
    fail(ErrorKind::schema, "coordinate components must sum to zero");
  return HexCoord(q, r, s);
}

inline ordered_json shape_to_json(const FoundationalShape& f) {
  ordered_json j;
  switch (foundation_kind(f)) {
    case FoundationKind::point:
      j["kind"] = "point";
      j["anchor"] = coord_to_json(f.anchor);
      break;
    case FoundationKind::ray:
      j["kind"] = "ray";
      j["anchor"] = coord_to_json(f.anchor);
      j["magnitude"] = *f.magnitude;
      j["angle"] = ray_angle(f).value;
      break;
    case FoundationKind::wedge:
      j["kind"] = "wedge";
      j["anchor"] = coord_to_json(f.anchor);
      j["magnitude"] = *f.magnitude;
      j["angle_start"] = f.angle_start->value;
      j["angle_end"] = f.angle_end->value;
      break;
    case FoundationKind::disc:
      j["kind"] = "disc";
      j["anchor"] = coord_to_json(f.anchor);
      j["magnitude"] = *f.magnitude;
      break;
  }
  return j;
}

inline ordered_json shape_to_json(const SimpleShape& s) {
  ordered_json j;
  j["kind"] = "simple";
  j["first"] = shape_to_json(s.first);
  j["second"] = shape_to_json(s.second);
  return j;
}

inline ordered_json shape_to_json(const ComplexShape::Node& n) {
  switch (n.kind) {
    case ComplexShape::NodeKind::leaf:
      return std::visit([](const auto& s) { return shape_to_json(s); },
                        n.payload);
    case ComplexShape::NodeKind::ao:
    case ComplexShape::NodeKind::so:
    case ComplexShape::NodeKind::unite: {
      ordered_json j;
      j["kind"] = n.kind == ComplexShape::NodeKind::ao   ? "ao"
                  : n.kind == ComplexShape::NodeKind::so ? "so"
                                                         : "union";
      j["left"] = shape_to_json(*n.left);
      j["right"] = shape_to_json(*n.right);
      return j;
    }
  }
  fail(ErrorKind::invalid_shape, "unknown composition node");
}

inline ordered_json shape_to_json(const ComplexShape& c) {
  return shape_to_json(c.root());
}

inline ordered_json shape_to_json(const HexPolygon& poly) {
  ordered_json j;
  j["kind"] = "polygon";
  ordered_json verts = ordered_json::array();
  for (HexCoord v : poly.vertices()) verts.push_back(coord_to_json(v));
  j["vertices"] = std::move(verts);
  return j;
}

inline ordered_json shape_to_json(const Shape& s) {
  return std::visit([](const auto& v) { return shape_to_json(v); }, s);
}

namespace detail {

inline void require_keys(const ordered_json& j,
                         std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!j.contains(k))
      fail(ErrorKind::schema, std::string("missing key \"") + k + "\"");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known)
      fail(ErrorKind::schema, "unknown key \"" + key + "\"");
  }
}

inline int64_t int_field(const ordered_json& j, const char* key) {
  if (!j[key].is_number_integer())
    fail(ErrorKind::schema, std::string("key \"") + key + "\" must be an integer");
  return j[key].get<int64_t>();
}

}  // namespace detail

inline FoundationalShape foundational_from_json(const ordered_json& j,
                                                Quantization qz) {
  const std::string kind = j.value("kind", "");
  if (kind == "point") {
    detail::require_keys(j, {"kind", "anchor"});
    return make_point(coord_from_json(j["anchor"]));
  }
  if (kind == "ray") {
    detail::require_keys(j, {"kind", "anchor", "magnitude", "angle"});
    return make_ray(coord_from_json(j["anchor"]),
                    detail::int_field(j, "magnitude"),
                    quantized_angle(detail::int_field(j, "angle"), qz), qz);
  }
  if (kind == "wedge") {
    detail::require_keys(j,
                         {"kind", "anchor", "magnitude", "angle_start",
                          "angle_end"});
    return make_wedge(
        coord_from_json(j["anchor"]), detail::int_field(j, "magnitude"),
        quantized_angle(detail::int_field(j, "angle_start"), qz),
        quantized_angle(detail::int_field(j, "angle_end"), qz), qz);
  }
  if (kind == "disc") {
    detail::require_keys(j, {"kind", "anchor", "magnitude"});
    return make_disc(coord_from_json(j["anchor"]),
                     detail::int_field(j, "magnitude"));
  }
  fail(ErrorKind::schema, "expected a foundational shape, got kind \"" +
                              kind + "\"");
}

inline SimpleShape simple_from_json(const ordered_json& j, Quantization qz) {
  detail::require_keys(j, {"kind", "first", "second"});
  return make_simple(foundational_from_json(j["first"], qz),
                     foundational_from_json(j["second"], qz));
}

inline ComplexShape complex_from_json(const ordered_json& j,
                                      Quantization qz) {
  const std::string kind = j.value("kind", "");
  if (kind == "ao" || kind == "so" || kind == "union") {
    detail::require_keys(j, {"kind", "left", "right"});
    ComplexShape left = complex_from_json(j["left"], qz);
    ComplexShape right = complex_from_json(j["right"], qz);
    if (kind == "ao") return ComplexShape::ao(std::move(left), std::move(right));
    if (kind == "so") return ComplexShape::so(std::move(left), std::move(right));
    return ComplexShape::unite(std::move(left), std::move(right));
  }
  if (kind == "simple") return ComplexShape::leaf(simple_from_json(j, qz));
  return ComplexShape::leaf(foundational_from_json(j, qz));
}

inline HexPolygon polygon_from_json(const ordered_json& j) {
  detail::require_keys(j, {"kind", "vertices"});
  if (!j["vertices"].is_array())
    fail(ErrorKind::schema, "polygon vertices must be an array");
  std::vector<HexCoord> vs;
  for (const auto& v : j["vertices"]) vs.push_back(coord_from_json(v));
  return HexPolygon(std::move(vs));
}

inline Shape shape_from_json(const ordered_json& j, Quantization qz) {
  if (!j.is_object()) fail(ErrorKind::schema, "shape must be a JSON object");
  const std::string kind = j.value("kind", "");
  if (kind == "simple") return simple_from_json(j, qz);
  if (kind == "ao" || kind == "so" || kind == "union")
    return complex_from_json(j, qz);
  if (kind == "polygon") return polygon_from_json(j);
  return foundational_from_json(j, qz);
}

// Document wrapper carrying the quantization the angles are expressed in.
inline std::string shape_document(const Shape& s,
                                  Quantization qz = kDefaultQuantization) {
  ordered_json j;
  j["format"] = "neurohex-shape";
  j["quantization_bits"] = qz.bits;
  j["shape"] = shape_to_json(s);
  return j.dump(2) + "\n";
}

inline std::pair<Shape, Quantization> parse_shape_document(
    const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::schema, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::schema, "document must be an object");
  detail::require_keys(j, {"format", "quantization_bits", "shape"});
  if (j["format"] != "neurohex-shape")
    fail(ErrorKind::schema, "format must be \"neurohex-shape\"");
  const int64_t bits = detail::int_field(j, "quantization_bits");
  if (bits < 1 || bits > 20)
    fail(ErrorKind::schema, "quantization_bits outside 1..20");
  const Quantization qz{static_cast<int>(bits)};
  return {shape_from_json(j["shape"], qz), qz};
}

}  // namespace neurohex

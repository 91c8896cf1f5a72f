#pragma once

// Deterministic SVG rendering of a model document. One <path> element per
// primitive (complex primitives emit one subpath per leaf), objects grouped
// and layered by tier with identity at the bottom, coordinates formatted
// with two decimals so the same document always renders to the same bytes.

#include <cstdio>
#include <string>
#include <vector>

#include "neurohex/hex.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/osm/pipeline.hpp"
#include "neurohex/shapes.hpp"

namespace neurohex::osm {

namespace detail {

struct Outline {
  std::vector<PlanePoint> pts;
  bool closed = true;
};

inline void hexagon_outline(PlanePoint center, double radius,
                            std::vector<Outline>& out) {
  Outline o;
  for (int w = 0; w < 6; ++w) {
    o.pts.push_back(center + radius * oracle::hex_to_plane(kWedgeCorners[w]));
  }
  out.push_back(std::move(o));
}

inline void leaf_outlines(const FoundationalShape& f, Quantization qz,
                          std::vector<Outline>& out) {
  const PlanePoint center = oracle::hex_to_plane(f.anchor);
  switch (foundation_kind(f)) {
    case FoundationKind::point:
      hexagon_outline(center, 0.5, out);
      break;
    case FoundationKind::disc: {
      const double m = static_cast<double>(*f.magnitude);
      hexagon_outline(center, m > 0 ? m : 0.5, out);
      break;
    }
    case FoundationKind::ray: {
      // Straight stroke through the cells the ray selects: out to the rim
      // point at the center of the angle's quantum.
      const double m = static_cast<double>(*f.magnitude);
      const double param = static_cast<double>(ray_angle(f).value) + 0.5;
      Outline o;
      o.closed = false;
      o.pts.push_back(center);
      o.pts.push_back(center + m * oracle::perimeter_point(param, qz));
      out.push_back(std::move(o));
      break;
    }
    case FoundationKind::wedge: {
      const double m = static_cast<double>(*f.magnitude);
      if (m <= 0) {
        hexagon_outline(center, 0.5, out);
        break;
      }
      const int64_t turn = qz.full_turn();
      const int64_t start = f.angle_start->value;
      // Arc intervals are inclusive of the end quantum, so the exact
      // parameter sweep runs to end + 1.
      const int64_t width = ((f.angle_end->value - start) % turn + turn) % turn + 1;
      Outline o;
      o.pts.push_back(center);
      for (int64_t t = 0; t <= width;) {
        const double param = static_cast<double>(start + t);
        o.pts.push_back(center + m * oracle::perimeter_point(param, qz));
        if (t == width) {
          break;
        }
        // step to the next wedge-corner parameter, or the arc end
        const int64_t next_corner =
            ((start + t) / qz.q() + 1) * qz.q() - start;
        t = next_corner < width ? next_corner : width;
      }
      out.push_back(std::move(o));
      break;
    }
  }
}

inline void simple_outlines(const SimpleShape& s, Quantization qz,
                            std::vector<Outline>& out) {
  leaf_outlines(s.first, qz, out);
  leaf_outlines(s.second, qz, out);
}

inline void node_outlines(const ComplexShape::Node& n, Quantization qz,
                          std::vector<Outline>& out) {
  if (n.kind == ComplexShape::NodeKind::leaf) {
    std::visit(
        [&](const auto& payload) {
          if constexpr (std::is_same_v<std::decay_t<decltype(payload)>,
                                       FoundationalShape>) {
            leaf_outlines(payload, qz, out);
          } else {
            simple_outlines(payload, qz, out);
          }
        },
        n.payload);
    return;
  }
  node_outlines(*n.left, qz, out);
  node_outlines(*n.right, qz, out);
}

inline void shape_outlines(const Shape& s, Quantization qz,
                           std::vector<Outline>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FoundationalShape>) {
          leaf_outlines(v, qz, out);
        } else if constexpr (std::is_same_v<T, SimpleShape>) {
          simple_outlines(v, qz, out);
        } else if constexpr (std::is_same_v<T, ComplexShape>) {
          node_outlines(v.root(), qz, out);
        } else {
          Outline o;
          for (HexCoord c : v.vertices()) {
            o.pts.push_back(oracle::hex_to_plane(c));
          }
          out.push_back(std::move(o));
        }
      },
      s);
}

inline void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  out += buf;
}

struct ClassStyle {
  const char* color;
  // linear classes render stroke-only; area classes get a translucent fill
  bool fill;
};

inline ClassStyle class_style(FeatureClass c) {
  switch (c) {
    case FeatureClass::river: return {"#1d4ed8", false};
    case FeatureClass::highway: return {"#b91c1c", false};
    case FeatureClass::arterial: return {"#ea580c", false};
    case FeatureClass::building: return {"#6b7280", true};
    case FeatureClass::park: return {"#15803d", true};
    case FeatureClass::water: return {"#0e7490", true};
    case FeatureClass::path: return {"#a16207", false};
    case FeatureClass::landmark: return {"#7c3aed", true};
    case FeatureClass::other: return {"#334155", true};
  }
  return {"#334155", true};
}

}  // namespace detail

// Renders the document to a standalone SVG string. The y axis is flipped
// so north points up on screen.
inline std::string render_svg(const ModelDocument& doc) {
  const Quantization qz{doc.quantization_bits};

  struct Rendered {
    const MosaicObject* obj;
    std::vector<std::vector<detail::Outline>> prim_outlines;
  };
  std::vector<Rendered> rendered;
  double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
  for (const MosaicObject& o : doc.objects) {
    Rendered r;
    r.obj = &o;
    for (const Shape& s : o.primitives) {
      std::vector<detail::Outline> outs;
      detail::shape_outlines(s, qz, outs);
      for (const detail::Outline& ol : outs) {
        for (PlanePoint p : ol.pts) {
          minx = std::min(minx, p.x);
          maxx = std::max(maxx, p.x);
          miny = std::min(miny, -p.y);
          maxy = std::max(maxy, -p.y);
        }
      }
      r.prim_outlines.push_back(std::move(outs));
    }
    rendered.push_back(std::move(r));
  }
  if (rendered.empty() || minx > maxx) {
    minx = miny = 0.0;
    maxx = maxy = 100.0;
  }
  const double margin = 4.0;
  minx -= margin;
  miny -= margin;
  maxx += margin;
  maxy += margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  detail::append_num(out, minx);
  out += " ";
  detail::append_num(out, miny);
  out += " ";
  detail::append_num(out, maxx - minx);
  out += " ";
  detail::append_num(out, maxy - miny);
  out += "\">\n";

  const Tier layers[3] = {Tier::identity, Tier::structural, Tier::contextual};
  for (Tier layer : layers) {
    bool any = false;
    for (const Rendered& r : rendered) {
      if (r.obj->tier == layer) {
        any = true;
        break;
      }
    }
    if (!any) {
      continue;
    }
    out += "<g class=\"";
    out += tier_name(layer);
    out += "\">\n";
    for (const Rendered& r : rendered) {
      if (r.obj->tier != layer) {
        continue;
      }
      const detail::ClassStyle style = detail::class_style(r.obj->cls);
      for (const auto& outs : r.prim_outlines) {
        if (outs.empty()) {
          continue;
        }
        bool has_open = false;
        for (const detail::Outline& ol : outs) {
          if (!ol.closed) {
            has_open = true;
          }
        }
        out += "<path d=\"";
        bool first_sub = true;
        for (const detail::Outline& ol : outs) {
          if (ol.pts.empty()) {
            continue;
          }
          if (!first_sub) {
            out += " ";
          }
          first_sub = false;
          out += "M";
          detail::append_num(out, ol.pts[0].x);
          out += " ";
          detail::append_num(out, -ol.pts[0].y);
          for (size_t i = 1; i < ol.pts.size(); ++i) {
            out += " L";
            detail::append_num(out, ol.pts[i].x);
            out += " ";
            detail::append_num(out, -ol.pts[i].y);
          }
          if (ol.closed) {
            out += " Z";
          }
        }
        out += "\" stroke=\"";
        out += style.color;
        out += "\" stroke-width=\"1\" fill=\"";
        if (style.fill && !has_open) {
          out += style.color;
          out += "\" fill-opacity=\"0.35\"";
        } else {
          out += "none\"";
        }
        out += "/>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace neurohex::osm

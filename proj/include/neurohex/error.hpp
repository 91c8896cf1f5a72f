#pragma once

#include <stdexcept>
#include <string>

namespace neurohex {

enum class ErrorKind {
  zero_sum_violation,
  invalid_ring_position,
  invalid_angle,
  invalid_scale,
  undefined_at_origin,
  degenerate_at_anchor,
  invalid_shape,
  invalid_polygon,
  degenerate_geometry,
  xml_syntax,
  empty_extract,
  out_of_grid_range,
  schema,
  io,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::zero_sum_violation: return "zero_sum_violation";
    case ErrorKind::invalid_ring_position: return "invalid_ring_position";
    case ErrorKind::invalid_angle: return "invalid_angle";
    case ErrorKind::invalid_scale: return "invalid_scale";
    case ErrorKind::undefined_at_origin: return "undefined_at_origin";
    case ErrorKind::degenerate_at_anchor: return "degenerate_at_anchor";
    case ErrorKind::invalid_shape: return "invalid_shape";
    case ErrorKind::invalid_polygon: return "invalid_polygon";
    case ErrorKind::degenerate_geometry: return "degenerate_geometry";
    case ErrorKind::xml_syntax: return "xml_syntax";
    case ErrorKind::empty_extract: return "empty_extract";
    case ErrorKind::out_of_grid_range: return "out_of_grid_range";
    case ErrorKind::schema: return "schema";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

// All library failures surface as Error; kind() tells callers what rule broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace neurohex

// osm2hex: converts OSM extracts into hex mosaic models.
//
// Subcommands:
//   convert  parse an extract, run the reduction pipeline, write the model
//   render   draw a model document as SVG
//   stats    print the reduction statistics of a model document
//   bench    emit the operation cost table as CSV
//
// Exit codes: 0 success, 1 pipeline error (bad data, failed conversion),
// 2 usage or file system error.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neurohex/error.hpp"
#include "neurohex/oracle.hpp"
#include "neurohex/osm/pipeline.hpp"
#include "neurohex/osm/svg.hpp"

namespace {

using neurohex::Error;
using neurohex::ErrorKind;
using neurohex::Quantization;
using neurohex::osm::BoundingBox;
using neurohex::osm::GeoPoint;
using neurohex::osm::ModelDocument;
using neurohex::osm::ResolutionPolicy;
using neurohex::osm::ScalePreset;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    neurohex::fail(ErrorKind::io, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    neurohex::fail(ErrorKind::io, "cannot read " + path);
  }
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    neurohex::fail(ErrorKind::io, "cannot open " + path + " for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    neurohex::fail(ErrorKind::io, "cannot write " + path);
  }
}

std::vector<double> parse_number_list(const std::string& text, size_t count,
                                      const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      neurohex::fail(ErrorKind::schema,
                     std::string(what) + " must be " +
                         std::to_string(count) + " comma-separated numbers");
    }
    out.push_back(v);
  }
  if (out.size() != count) {
    neurohex::fail(ErrorKind::schema,
                   std::string(what) + " must be " + std::to_string(count) +
                       " comma-separated numbers");
  }
  return out;
}

void check_known_keys(const ordered_json& j,
                      std::initializer_list<const char*> allowed,
                      const char* where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      neurohex::fail(ErrorKind::schema,
                     std::string("unknown key \"") + key + "\" in " + where);
    }
  }
}

// Everything convert needs, merged from config file and flags.
struct ConvertSettings {
  std::string input;
  std::optional<BoundingBox> bbox;
  std::optional<GeoPoint> origin;  // absent: bounding box center
  std::string scale;               // empty: unset
  double cell_size = 0.0;          // <= 0: unset
  int quantization_bits = 0;       // 0: unset
  std::string out = "model.ndjson";
  std::string stats_out = "stats.json";
  ordered_json policy_overrides;   // from config "policy", may be null
};

void apply_config(ConvertSettings& s, const std::string& path) {
  const std::string text = read_file(path);
  const ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    neurohex::fail(ErrorKind::schema, "config is not a JSON object");
  }
  check_known_keys(
      j, {"policy", "grid", "quantization_bits", "bbox", "out", "stats_out"},
      "config");
  if (j.contains("policy")) {
    if (!j["policy"].is_object()) {
      neurohex::fail(ErrorKind::schema, "config policy must be an object");
    }
    check_known_keys(j["policy"],
                     {"scale", "dp_tolerance_deg", "chaikin_iterations",
                      "area_threshold_deg2", "max_vertices", "tier_cutoff",
                      "max_primitives", "park_max_primitives",
                      "mosaic_error_threshold", "cell_size_m"},
                     "config policy");
    s.policy_overrides = j["policy"];
  }
  if (j.contains("grid")) {
    const ordered_json& grid = j["grid"];
    if (!grid.is_object()) {
      neurohex::fail(ErrorKind::schema, "config grid must be an object");
    }
    check_known_keys(grid, {"cell_size_m", "origin"}, "config grid");
    if (grid.contains("cell_size_m")) {
      if (!grid["cell_size_m"].is_number()) {
        neurohex::fail(ErrorKind::schema, "cell_size_m must be a number");
      }
      s.cell_size = grid["cell_size_m"].get<double>();
    }
    if (grid.contains("origin")) {
      const ordered_json& origin = grid["origin"];
      if (origin.is_string() && origin.get<std::string>() == "bbox-center") {
        s.origin.reset();
      } else if (origin.is_array() && origin.size() == 2 &&
                 origin[0].is_number() && origin[1].is_number()) {
        s.origin = GeoPoint{origin[0].get<double>(), origin[1].get<double>()};
      } else {
        neurohex::fail(ErrorKind::schema,
                       "grid origin must be \"bbox-center\" or [lon, lat]");
      }
    }
  }
  if (j.contains("quantization_bits")) {
    if (!j["quantization_bits"].is_number_integer()) {
      neurohex::fail(ErrorKind::schema,
                     "quantization_bits must be an integer");
    }
    s.quantization_bits = j["quantization_bits"].get<int>();
  }
  if (j.contains("bbox")) {
    const ordered_json& b = j["bbox"];
    if (!b.is_array() || b.size() != 4 || !b[0].is_number() ||
        !b[1].is_number() || !b[2].is_number() || !b[3].is_number()) {
      neurohex::fail(ErrorKind::schema,
                     "config bbox must be [west, south, east, north]");
    }
    s.bbox = BoundingBox{b[0].get<double>(), b[1].get<double>(),
                         b[2].get<double>(), b[3].get<double>()};
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) {
      neurohex::fail(ErrorKind::schema, "config out must be a string");
    }
    s.out = j["out"].get<std::string>();
  }
  if (j.contains("stats_out")) {
    if (!j["stats_out"].is_string()) {
      neurohex::fail(ErrorKind::schema, "config stats_out must be a string");
    }
    s.stats_out = j["stats_out"].get<std::string>();
  }
}

ResolutionPolicy build_policy(const ConvertSettings& s) {
  std::string scale = s.scale;
  if (scale.empty() && s.policy_overrides.is_object() &&
      s.policy_overrides.contains("scale")) {
    if (!s.policy_overrides["scale"].is_string()) {
      neurohex::fail(ErrorKind::schema, "policy scale must be a string");
    }
    scale = s.policy_overrides["scale"].get<std::string>();
  }
  if (scale.empty()) {
    scale = "metro";
  }
  ResolutionPolicy p;
  if (scale == "metro") {
    p = ResolutionPolicy::metro();
  } else if (scale == "zoom") {
    p = ResolutionPolicy::zoom();
  } else {
    neurohex::fail(ErrorKind::schema, "unknown policy scale: " + scale);
  }
  if (s.policy_overrides.is_object()) {
    const ordered_json& o = s.policy_overrides;
    const auto num = [&](const char* key, double& field) {
      if (o.contains(key)) {
        if (!o[key].is_number()) {
          neurohex::fail(ErrorKind::schema,
                         std::string(key) + " must be a number");
        }
        field = o[key].get<double>();
      }
    };
    const auto integer = [&](const char* key, int& field) {
      if (o.contains(key)) {
        if (!o[key].is_number_integer()) {
          neurohex::fail(ErrorKind::schema,
                         std::string(key) + " must be an integer");
        }
        field = o[key].get<int>();
      }
    };
    num("dp_tolerance_deg", p.dp_tolerance_deg);
    integer("chaikin_iterations", p.chaikin_iterations);
    num("area_threshold_deg2", p.area_threshold_deg2);
    integer("max_vertices", p.max_vertices);
    if (o.contains("tier_cutoff")) {
      if (!o["tier_cutoff"].is_string()) {
        neurohex::fail(ErrorKind::schema, "tier_cutoff must be a string");
      }
      p.tier_cutoff = neurohex::osm::detail::tier_from_name(
          o["tier_cutoff"].get<std::string>());
    }
    integer("max_primitives", p.max_primitives);
    integer("park_max_primitives", p.park_max_primitives);
    num("mosaic_error_threshold", p.mosaic_error_threshold);
    num("cell_size_m", p.cell_size_m);
  }
  if (s.cell_size > 0.0) {
    p.cell_size_m = s.cell_size;
  }
  neurohex::osm::validate_policy(p);
  return p;
}

int run_convert(const ConvertSettings& s) {
  if (!s.bbox) {
    neurohex::fail(ErrorKind::schema,
                   "a bounding box is required (--bbox or config)");
  }
  neurohex::osm::validate_box(*s.bbox);
  const ResolutionPolicy policy = build_policy(s);
  int bits = s.quantization_bits > 0 ? s.quantization_bits : 6;
  if (bits < 1 || bits > 20) {
    neurohex::fail(ErrorKind::schema, "quantization bits must be in 1..20");
  }
  const Quantization qz{bits};
  const std::string xml = read_file(s.input);
  const ModelDocument doc =
      neurohex::osm::run_pipeline(xml, *s.bbox, policy, qz, s.origin);
  write_file(s.out, neurohex::osm::write_model(doc));
  write_file(s.stats_out, neurohex::osm::write_stats(doc.stats));
  std::cout << "wrote " << doc.objects.size() << " objects ("
            << doc.stats.primitive_count << " primitives) to " << s.out
            << "\n";
  return 0;
}

int run_render(const std::string& input, const std::string& out) {
  const ModelDocument doc = neurohex::osm::read_model(read_file(input));
  write_file(out, neurohex::osm::render_svg(doc));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_stats(const std::string& input) {
  const ModelDocument doc = neurohex::osm::read_model(read_file(input));
  const neurohex::osm::ReductionStats& s = doc.stats;
  std::cout << "objects: " << s.kept_object_count << " (identity "
            << s.identity_count << ", structural " << s.structural_count
            << ", contextual " << s.contextual_count << ")\n"
            << "primitives: " << s.primitive_count << "\n"
            << "raw geometries: " << s.raw_geometry_count << ", raw vertices: "
            << s.raw_vertex_count << "\n"
            << "post-simplification features: "
            << s.post_simplification_feature_count << ", vertices: "
            << s.post_simplification_vertex_count << "\n"
            << "vertex reduction: " << s.vertex_reduction() << "\n"
            << "feature reduction: " << s.feature_reduction() << "\n"
            << "flagged objects: " << s.flagged_object_count << "\n"
            << "parse warnings: " << s.parse_warning_count << "\n";
  return 0;
}

int run_bench(const std::string& out) {
  const std::string csv = neurohex::oracle::bench_csv();
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSM extract to hex mosaic converter"};
  app.require_subcommand(1);

  ConvertSettings settings;
  std::string config_path;
  std::string bbox_arg;
  std::string origin_arg;

  CLI::App* convert = app.add_subcommand("convert", "convert an OSM extract");
  convert->add_option("input", settings.input, "OSM XML file")->required();
  convert->add_option("--config", config_path, "JSON config file");
  convert->add_option("--bbox", bbox_arg, "west,south,east,north (degrees)");
  convert->add_option("--policy", settings.scale, "metro or zoom")
      ->check(CLI::IsMember({"metro", "zoom"}));
  convert->add_option("--cell-size", settings.cell_size,
                      "cell pitch in meters");
  convert->add_option("--quantization-bits", settings.quantization_bits,
                      "angle quantization bits (1..20)");
  convert->add_option("--origin", origin_arg, "grid origin lon,lat");
  CLI::Option* out_opt =
      convert->add_option("--out", settings.out, "model output path");
  CLI::Option* stats_opt =
      convert->add_option("--stats-out", settings.stats_out,
                          "statistics output path");

  std::string render_in, render_out = "model.svg";
  CLI::App* render = app.add_subcommand("render", "render a model as SVG");
  render->add_option("input", render_in, "model document")->required();
  render->add_option("--out", render_out, "SVG output path");

  std::string stats_in;
  CLI::App* stats = app.add_subcommand("stats", "print model statistics");
  stats->add_option("input", stats_in, "model document")->required();

  std::string bench_out;
  CLI::App* bench =
      app.add_subcommand("bench", "emit the operation cost table");
  bench->add_option("--out", bench_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*convert) {
      // Flags override the config file, so remember which flags were set
      // before the config fills the rest.
      const std::string flag_out = out_opt->count() > 0 ? settings.out : "";
      const std::string flag_stats =
          stats_opt->count() > 0 ? settings.stats_out : "";
      const std::string flag_scale = settings.scale;
      const double flag_cell = settings.cell_size;
      const int flag_bits = settings.quantization_bits;
      if (!config_path.empty()) {
        apply_config(settings, config_path);
      }
      if (!flag_out.empty()) settings.out = flag_out;
      if (!flag_stats.empty()) settings.stats_out = flag_stats;
      if (!flag_scale.empty()) settings.scale = flag_scale;
      if (flag_cell > 0.0) settings.cell_size = flag_cell;
      if (flag_bits > 0) settings.quantization_bits = flag_bits;
      if (!bbox_arg.empty()) {
        const std::vector<double> v =
            parse_number_list(bbox_arg, 4, "--bbox");
        settings.bbox = BoundingBox{v[0], v[1], v[2], v[3]};
      }
      if (!origin_arg.empty()) {
        const std::vector<double> v =
            parse_number_list(origin_arg, 2, "--origin");
        settings.origin = GeoPoint{v[0], v[1]};
      }
      return run_convert(settings);
    }
    if (*render) {
      return run_render(render_in, render_out);
    }
    if (*stats) {
      return run_stats(stats_in);
    }
    if (*bench) {
      return run_bench(bench_out);
    }
  } catch (const Error& e) {
    std::cerr << "osm2hex: " << e.what() << "\n";
    return e.kind() == ErrorKind::io ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "osm2hex: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

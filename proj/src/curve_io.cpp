#include "gim/curve_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gim {

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CurveSequence parse_curve_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw FormatError("curve file must be a JSON object");
  const ManifoldKind kind = ManifoldKind::parse(field<std::string>(j, "manifold"), field<int>(j, "dim_or_size"));
  CurveSequence curve{{}, parse_boundary(field<std::string>(j, "boundary"))};

  if (!j.contains("points") || !j["points"].is_array()) throw FormatError("\"points\" must be an array");
  const auto& pts = j["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!p.is_array()) throw InvalidPoint("point " + std::to_string(i) + ": expected an array of numbers");
    Eigen::VectorXd coords(static_cast<Eigen::Index>(p.size()));
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (!p[c].is_number()) throw InvalidPoint("point " + std::to_string(i) + ": non-numeric coordinate");
      coords[static_cast<Eigen::Index>(c)] = p[c].get<double>();
    }
    try {
      curve.points.push_back(ManifoldPoint::from_coords(kind, std::move(coords)));
    } catch (const InvalidPoint& e) {
      throw InvalidPoint("point " + std::to_string(i) + ": " + e.what());
    }
  }
  validate_curve(curve);
  return curve;
}

std::string curve_to_json(const CurveSequence& curve) {
  std::ostringstream os;
  const auto& kind = curve.kind();
  os << "{\n  \"manifold\": \"" << kind.tag_name() << "\",\n  \"dim_or_size\": " << kind.size()
     << ",\n  \"boundary\": \"" << boundary_name(curve.boundary) << "\",\n  \"points\": [";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    os << (i == 0 ? "\n    [" : ",\n    [");
    const auto& c = curve.points[i].coords();
    for (Eigen::Index k = 0; k < c.size(); ++k) os << (k == 0 ? "" : ", ") << format_double(c[k]);
    os << "]";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

CurveSequence read_curve_file(const std::filesystem::path& path) { return parse_curve_json(slurp(path)); }

void write_curve_file(const std::filesystem::path& path, const CurveSequence& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << curve_to_json(curve);
}

MaskConfig parse_mask_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw FormatError("mask file must be a JSON object");
  MaskConfig cfg;
  cfg.mask.coefficients = field<std::vector<double>>(j, "coefficients");
  cfg.mask.offset = field<int>(j, "offset");
  if (j.contains("name")) cfg.name = field<std::string>(j, "name");
  if (j.contains("mu") && !j["mu"].is_null()) cfg.mu = field<double>(j, "mu");
  return cfg;
}

MaskConfig read_mask_file(const std::filesystem::path& path) { return parse_mask_json(slurp(path)); }

GimScheme scheme_from_config(const MaskConfig& config) {
  GimScheme s = adapt(config.mask, config.name);
  s.mu = config.mu;
  return s;
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsReport& report) {
  os << "level,delta,contractivity_ratio,max_displacement_ratio,cauchy_gap\n";
  for (const auto& r : report.levels) {
    os << r.level << ',' << format_double(r.delta) << ',' << format_double(r.contractivity_ratio) << ','
       << format_double(r.max_displacement_ratio) << ',' << format_double(r.cauchy_gap) << '\n';
  }
}

}  // namespace gim

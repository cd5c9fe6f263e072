#pragma once

// Line-oriented `key = value` run configuration with `#` comments and
// bracketed numeric lists.  Unknown and duplicate keys are hard errors that
// name the key and line.  serialize_config/parse_config round-trip exactly.

#include <charconv>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "slitwave/io.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

enum class EvaluatorKind { Quadrature, Fresnel, Hypergeometric, Auto };

struct RunConfig {
  std::vector<double> slits = {-20.01, -19.99, 19.99, 20.01};
  EvaluatorKind evaluator = EvaluatorKind::Auto;
  SourceConfig::Kind source = SourceConfig::Kind::FarField;
  double x0 = 0.0;
  double zp = 1.0;
  double x2_min = -30.0, x2_max = 30.0, zpp_min = 0.1, zpp_max = 100.0;
  std::uint64_t nx = 400, nz = 400;
  bool log_z = false;
  double threshold = 1e-14;
  std::uint64_t seed = 12345;
  std::uint64_t samples = 1'000'000;
  SamplerKind sampler = SamplerKind::Grid;
  std::uint64_t quad_points = 16;
  double quad_max_phase = std::numbers::pi / 2;
  double h = 0.0;  // 0 = auto: max(1e-4, 1e-3 * zpp_min)
  SliceAxis axis = SliceAxis::FixedZ;
  double value = 1.0;
  double from = -30.0;
  double to = 30.0;
  std::uint64_t n = 801;
  double x2_0 = 0.0;
  double zpp_0 = 1.0;
  double factor = 10.0;
  double tol = 1e-9;
  std::uint64_t stations = 400;
  std::uint64_t threads = 0;
  bool pgm = false;
  bool pgm_log = false;
  std::string out;

  bool operator==(const RunConfig&) const = default;

  SlitArray slit_array() const { return SlitArray(slits); }
  Region region() const { return Region(x2_min, x2_max, zpp_min, zpp_max); }
  SourceConfig source_config() const {
    return source == SourceConfig::Kind::Finite ? SourceConfig::finite(x0, zp)
                                                : SourceConfig::far_field();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void bad_key(std::string_view key, int line,
                                 const std::string& why) {
  throw config_error("config line " + std::to_string(line) + ", key '" +
                     std::string(key) + "': " + why);
}

inline double parse_double(std::string_view v, std::string_view key, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    bad_key(key, line, "malformed number '" + std::string(v) + "'");
  return out;
}

inline std::uint64_t parse_count(std::string_view v, std::string_view key,
                                 int line) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    bad_key(key, line, "malformed count '" + std::string(v) + "'");
  return out;
}

inline bool parse_bool(std::string_view v, std::string_view key, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad_key(key, line, "expected true or false, got '" + std::string(v) + "'");
}

inline std::vector<double> parse_list(std::string_view v, std::string_view key,
                                      int line) {
  v = trim(v);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    bad_key(key, line, "expected bracketed list [a, b, ...]");
  v = v.substr(1, v.size() - 2);
  std::vector<double> out;
  while (true) {
    v = trim(v);
    if (v.empty()) break;
    const std::size_t comma = v.find(',');
    const std::string_view item =
        trim(comma == std::string_view::npos ? v : v.substr(0, comma));
    if (item.empty()) bad_key(key, line, "empty list element");
    out.push_back(parse_double(item, key, line));
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  return out;
}

}  // namespace detail

inline std::string to_string(EvaluatorKind e) {
  switch (e) {
    case EvaluatorKind::Quadrature: return "quadrature";
    case EvaluatorKind::Fresnel: return "fresnel";
    case EvaluatorKind::Hypergeometric: return "hypergeometric";
    case EvaluatorKind::Auto: return "auto";
  }
  return "auto";
}

inline std::string to_string(SamplerKind s) {
  return s == SamplerKind::Grid ? "grid" : "mc";
}

inline std::string to_string(SourceConfig::Kind k) {
  return k == SourceConfig::Kind::FarField ? "farfield" : "finite";
}

inline std::string to_string(SliceAxis a) {
  return a == SliceAxis::FixedZ ? "fixed_z" : "fixed_x";
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::vector<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected 'key = value'");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view val = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(line_no) +
                         ": missing key");
    for (const std::string& s : seen)
      if (s == key) detail::bad_key(key, line_no, "duplicate key");
    seen.emplace_back(key);

    const int ln = line_no;
    if (key == "slits") {
      cfg.slits = detail::parse_list(val, key, ln);
    } else if (key == "evaluator") {
      if (val == "quadrature") cfg.evaluator = EvaluatorKind::Quadrature;
      else if (val == "fresnel") cfg.evaluator = EvaluatorKind::Fresnel;
      else if (val == "hypergeometric")
        cfg.evaluator = EvaluatorKind::Hypergeometric;
      else if (val == "auto") cfg.evaluator = EvaluatorKind::Auto;
      else detail::bad_key(key, ln, "unknown evaluator '" + std::string(val) + "'");
    } else if (key == "source") {
      if (val == "farfield") cfg.source = SourceConfig::Kind::FarField;
      else if (val == "finite") cfg.source = SourceConfig::Kind::Finite;
      else detail::bad_key(key, ln, "unknown source '" + std::string(val) + "'");
    } else if (key == "x0") {
      cfg.x0 = detail::parse_double(val, key, ln);
    } else if (key == "zp") {
      cfg.zp = detail::parse_double(val, key, ln);
    } else if (key == "region") {
      const auto r = detail::parse_list(val, key, ln);
      if (r.size() != 4)
        detail::bad_key(key, ln, "expected [x2_min, x2_max, zpp_min, zpp_max]");
      cfg.x2_min = r[0];
      cfg.x2_max = r[1];
      cfg.zpp_min = r[2];
      cfg.zpp_max = r[3];
    } else if (key == "nx") {
      cfg.nx = detail::parse_count(val, key, ln);
    } else if (key == "nz") {
      cfg.nz = detail::parse_count(val, key, ln);
    } else if (key == "log_z") {
      cfg.log_z = detail::parse_bool(val, key, ln);
    } else if (key == "threshold") {
      cfg.threshold = detail::parse_double(val, key, ln);
    } else if (key == "seed") {
      cfg.seed = detail::parse_count(val, key, ln);
    } else if (key == "samples") {
      cfg.samples = detail::parse_count(val, key, ln);
    } else if (key == "sampler") {
      if (val == "grid") cfg.sampler = SamplerKind::Grid;
      else if (val == "mc") cfg.sampler = SamplerKind::MonteCarlo;
      else detail::bad_key(key, ln, "unknown sampler '" + std::string(val) + "'");
    } else if (key == "quad_points") {
      cfg.quad_points = detail::parse_count(val, key, ln);
    } else if (key == "quad_max_phase") {
      cfg.quad_max_phase = detail::parse_double(val, key, ln);
    } else if (key == "h") {
      cfg.h = detail::parse_double(val, key, ln);
    } else if (key == "axis") {
      if (val == "fixed_z") cfg.axis = SliceAxis::FixedZ;
      else if (val == "fixed_x") cfg.axis = SliceAxis::FixedX;
      else detail::bad_key(key, ln, "unknown axis '" + std::string(val) + "'");
    } else if (key == "value") {
      cfg.value = detail::parse_double(val, key, ln);
    } else if (key == "from") {
      cfg.from = detail::parse_double(val, key, ln);
    } else if (key == "to") {
      cfg.to = detail::parse_double(val, key, ln);
    } else if (key == "n") {
      cfg.n = detail::parse_count(val, key, ln);
    } else if (key == "x2_0") {
      cfg.x2_0 = detail::parse_double(val, key, ln);
    } else if (key == "zpp_0") {
      cfg.zpp_0 = detail::parse_double(val, key, ln);
    } else if (key == "factor") {
      cfg.factor = detail::parse_double(val, key, ln);
    } else if (key == "tol") {
      cfg.tol = detail::parse_double(val, key, ln);
    } else if (key == "stations") {
      cfg.stations = detail::parse_count(val, key, ln);
    } else if (key == "threads") {
      cfg.threads = detail::parse_count(val, key, ln);
    } else if (key == "pgm") {
      cfg.pgm = detail::parse_bool(val, key, ln);
    } else if (key == "pgm_log") {
      cfg.pgm_log = detail::parse_bool(val, key, ln);
    } else if (key == "out") {
      cfg.out = std::string(val);
    } else {
      detail::bad_key(key, ln, "unknown key");
    }

    // Surface structural violations with the offending key and line.
    if (key == "slits" || key == "region") {
      try {
        if (key == "slits")
          cfg.slit_array();
        else
          cfg.region();
      } catch (const config_error& e) {
        detail::bad_key(key, ln, e.what());
      }
    }
  }
  return cfg;
}

inline std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "slits = [";
  for (std::size_t i = 0; i < cfg.slits.size(); ++i)
    os << (i ? ", " : "") << format_double(cfg.slits[i]);
  os << "]\n";
  os << "evaluator = " << to_string(cfg.evaluator) << '\n';
  os << "source = " << to_string(cfg.source) << '\n';
  os << "x0 = " << format_double(cfg.x0) << '\n';
  os << "zp = " << format_double(cfg.zp) << '\n';
  os << "region = [" << format_double(cfg.x2_min) << ", "
     << format_double(cfg.x2_max) << ", " << format_double(cfg.zpp_min) << ", "
     << format_double(cfg.zpp_max) << "]\n";
  os << "nx = " << cfg.nx << '\n';
  os << "nz = " << cfg.nz << '\n';
  os << "log_z = " << (cfg.log_z ? "true" : "false") << '\n';
  os << "threshold = " << format_double(cfg.threshold) << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "samples = " << cfg.samples << '\n';
  os << "sampler = " << to_string(cfg.sampler) << '\n';
  os << "quad_points = " << cfg.quad_points << '\n';
  os << "quad_max_phase = " << format_double(cfg.quad_max_phase) << '\n';
  os << "h = " << format_double(cfg.h) << '\n';
  os << "axis = " << to_string(cfg.axis) << '\n';
  os << "value = " << format_double(cfg.value) << '\n';
  os << "from = " << format_double(cfg.from) << '\n';
  os << "to = " << format_double(cfg.to) << '\n';
  os << "n = " << cfg.n << '\n';
  os << "x2_0 = " << format_double(cfg.x2_0) << '\n';
  os << "zpp_0 = " << format_double(cfg.zpp_0) << '\n';
  os << "factor = " << format_double(cfg.factor) << '\n';
  os << "tol = " << format_double(cfg.tol) << '\n';
  os << "stations = " << cfg.stations << '\n';
  os << "threads = " << cfg.threads << '\n';
  os << "pgm = " << (cfg.pgm ? "true" : "false") << '\n';
  os << "pgm_log = " << (cfg.pgm_log ? "true" : "false") << '\n';
  os << "out = " << cfg.out << '\n';
  return os.str();
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

}  // namespace slitwave

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slitwave/slitwave.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> slits;
  std::optional<std::string> evaluator;
  std::optional<std::string> source;
  std::optional<std::string> region;
  std::optional<std::string> sampler;
  std::optional<std::string> axis;
  std::optional<std::string> out;
  std::optional<double> x0, zp, threshold, quad_max_phase, h, value, from, to;
  std::optional<double> x2_0, zpp_0, factor, tol;
  std::optional<std::uint64_t> nx, nz, seed, samples, quad_points, n, stations,
      threads;
  std::optional<bool> log_z;
  bool pgm = false;
  bool pgm_log = false;
  std::vector<double> range;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "config file (key = value lines)");
  cmd->add_option("--slits", o.slits, "slit edges, comma separated");
  cmd->add_option("--evaluator", o.evaluator,
                  "quadrature|fresnel|hypergeometric|auto");
  cmd->add_option("--source", o.source, "farfield|finite");
  cmd->add_option("--x0", o.x0, "source transverse position (finite)");
  cmd->add_option("--zp", o.zp, "source distance (finite)");
  cmd->add_option("--region", o.region,
                  "x2_min,x2_max,zpp_min,zpp_max (comma separated)");
  cmd->add_option("--nx", o.nx, "grid columns (x2)");
  cmd->add_option("--nz", o.nz, "grid rows (zpp)");
  cmd->add_option("--log-z", o.log_z, "log-spaced zpp rows (true|false)");
  cmd->add_option("--threshold", o.threshold, "null threshold on rho/peak");
  cmd->add_option("--seed", o.seed, "Monte-Carlo seed");
  cmd->add_option("--samples", o.samples, "Monte-Carlo sample count");
  cmd->add_option("--sampler", o.sampler, "grid|mc");
  cmd->add_option("--quad-points", o.quad_points, "Gauss-Legendre points per panel");
  cmd->add_option("--quad-max-phase", o.quad_max_phase,
                  "max phase change per panel (radians)");
  cmd->add_option("--step", o.h, "finite-difference step for drho");
  cmd->add_option("--axis", o.axis, "slice axis: fixed_z|fixed_x");
  cmd->add_option("--value", o.value, "slice fixed-coordinate value");
  cmd->add_option("--from", o.from, "slice/cornu range start");
  cmd->add_option("--to", o.to, "slice/cornu range end");
  cmd->add_option("--range", o.range, "range start and end")->expected(2);
  cmd->add_option("--n", o.n, "sample count along a slice/curve");
  cmd->add_option("--x2", o.x2_0, "refinement start x2");
  cmd->add_option("--zpp", o.zpp_0, "refinement start zpp");
  cmd->add_option("--factor", o.factor, "scale factor");
  cmd->add_option("--tol", o.tol, "scalecheck tolerance");
  cmd->add_option("--stations", o.stations, "transition zpp stations");
  cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
  cmd->add_flag("--pgm", o.pgm, "write a PGM heatmap instead of CSV");
  cmd->add_flag("--pgm-log", o.pgm_log, "log10 value mapping for PGM");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
}

std::vector<double> parse_csv_doubles(const std::string& s,
                                      const char* what) {
  return slitwave::detail::parse_list("[" + s + "]", what, 0);
}

slitwave::RunConfig build_config(const Overrides& o) {
  slitwave::RunConfig cfg;
  if (o.config) cfg = slitwave::parse_config_file(*o.config);
  if (o.slits) {
    cfg.slits = parse_csv_doubles(*o.slits, "slits");
    cfg.slit_array();
  }
  if (o.evaluator) {
    const std::string& v = *o.evaluator;
    if (v == "quadrature") cfg.evaluator = slitwave::EvaluatorKind::Quadrature;
    else if (v == "fresnel") cfg.evaluator = slitwave::EvaluatorKind::Fresnel;
    else if (v == "hypergeometric")
      cfg.evaluator = slitwave::EvaluatorKind::Hypergeometric;
    else if (v == "auto") cfg.evaluator = slitwave::EvaluatorKind::Auto;
    else throw slitwave::config_error("unknown evaluator '" + v + "'");
  }
  if (o.source) {
    if (*o.source == "farfield")
      cfg.source = slitwave::SourceConfig::Kind::FarField;
    else if (*o.source == "finite")
      cfg.source = slitwave::SourceConfig::Kind::Finite;
    else throw slitwave::config_error("unknown source '" + *o.source + "'");
  }
  if (o.region) {
    const auto r = parse_csv_doubles(*o.region, "region");
    if (r.size() != 4)
      throw slitwave::config_error(
          "region needs x2_min,x2_max,zpp_min,zpp_max");
    cfg.x2_min = r[0];
    cfg.x2_max = r[1];
    cfg.zpp_min = r[2];
    cfg.zpp_max = r[3];
    cfg.region();
  }
  if (o.sampler) {
    if (*o.sampler == "grid") cfg.sampler = slitwave::SamplerKind::Grid;
    else if (*o.sampler == "mc") cfg.sampler = slitwave::SamplerKind::MonteCarlo;
    else throw slitwave::config_error("unknown sampler '" + *o.sampler + "'");
  }
  if (o.axis) {
    if (*o.axis == "fixed_z") cfg.axis = slitwave::SliceAxis::FixedZ;
    else if (*o.axis == "fixed_x") cfg.axis = slitwave::SliceAxis::FixedX;
    else throw slitwave::config_error("unknown axis '" + *o.axis + "'");
  }
  if (o.x0) cfg.x0 = *o.x0;
  if (o.zp) cfg.zp = *o.zp;
  if (o.nx) cfg.nx = *o.nx;
  if (o.nz) cfg.nz = *o.nz;
  if (o.log_z) cfg.log_z = *o.log_z;
  if (o.threshold) cfg.threshold = *o.threshold;
  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  if (o.quad_points) cfg.quad_points = *o.quad_points;
  if (o.quad_max_phase) cfg.quad_max_phase = *o.quad_max_phase;
  if (o.h) cfg.h = *o.h;
  if (o.value) cfg.value = *o.value;
  if (o.from) cfg.from = *o.from;
  if (o.to) cfg.to = *o.to;
  if (!o.range.empty()) {
    cfg.from = o.range[0];
    cfg.to = o.range[1];
  }
  if (o.n) cfg.n = *o.n;
  if (o.x2_0) cfg.x2_0 = *o.x2_0;
  if (o.zpp_0) cfg.zpp_0 = *o.zpp_0;
  if (o.factor) cfg.factor = *o.factor;
  if (o.tol) cfg.tol = *o.tol;
  if (o.stations) cfg.stations = *o.stations;
  if (o.threads) {
    cfg.threads = *o.threads;
  } else if (const char* env = std::getenv("SLITWAVE_THREADS")) {
    const std::string v(env);
    std::uint64_t t = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), t);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
      throw slitwave::config_error("SLITWAVE_THREADS: malformed count '" + v +
                                   "'");
    cfg.threads = t;
  }
  if (o.pgm) cfg.pgm = true;
  if (o.pgm_log) cfg.pgm_log = true;
  if (o.out) cfg.out = *o.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-slit matter-wave diffraction toolkit"};
  app.require_subcommand(1);
  Overrides o;
  const struct {
    const char* name;
    const char* desc;
  } subs[] = {
      {"density", "probability-density grid (CSV or PGM)"},
      {"drho", "d(rho)/d(zpp) grid via central differences"},
      {"nullmap", "near-null point map (grid or Monte-Carlo sampler)"},
      {"slice", "1-D density profile at fixed zpp or fixed x2"},
      {"cornu", "Cornu spiral samples (u, S, C)"},
      {"transition", "braid-to-fringe transition band"},
      {"scalecheck", "scaling-symmetry verification"},
      {"refine", "local density-minimum refinement"},
  };
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.desc), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return slitwave::run_subcommand(cmd, build_config(o));
  } catch (const slitwave::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const slitwave::io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const slitwave::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const slitwave::convergence_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

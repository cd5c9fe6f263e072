#pragma once

// run_subcommand: the CLI back end.  Throws config_error / domain_error /
// convergence_error / io_error; the binary maps those to exit codes
// 2 / 3 / 3 / 4.  Returns the process exit status for non-error outcomes
// (scalecheck reports 1 when the deviation exceeds the tolerance).

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include "slitwave/config.hpp"
#include "slitwave/core.hpp"
#include "slitwave/fields.hpp"
#include "slitwave/io.hpp"
#include "slitwave/kernels.hpp"
#include "slitwave/nullmap.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

using ErasedEvaluator =
    std::function<Complex(const SlitArray&, const ObservationPoint&)>;

inline ErasedEvaluator make_evaluator(const RunConfig& cfg) {
  const bool finite = cfg.source == SourceConfig::Kind::Finite;
  if (finite && cfg.evaluator != EvaluatorKind::Quadrature)
    throw config_error(
        "a finite source requires the quadrature evaluator (closed forms "
        "assume the far-field reduction)");
  switch (cfg.evaluator) {
    case EvaluatorKind::Quadrature: {
      QuadratureSpec spec{static_cast<int>(cfg.quad_points),
                          cfg.quad_max_phase};
      spec.validate();
      return QuadratureEvaluator(cfg.source_config(), spec);
    }
    case EvaluatorKind::Fresnel:
      return FresnelEvaluator{};
    case EvaluatorKind::Hypergeometric:
      return HypergeometricEvaluator{/*strict=*/true};
    case EvaluatorKind::Auto:
      return HypergeometricEvaluator{};
  }
  throw config_error("unknown evaluator");
}

namespace detail {

// Writes through `sink` when an output path is set, else to `console`.
template <class WriteFn>
void deliver(const RunConfig& cfg, std::ostream& console, WriteFn&& write) {
  if (cfg.out.empty()) {
    write(console);
  } else {
    std::ofstream os = open_output(cfg.out);
    write(os);
    if (!os) throw io_error("failed writing output: " + cfg.out);
  }
}

inline double auto_h(const RunConfig& cfg) {
  if (cfg.h > 0.0) return cfg.h;
  return std::max(1e-4, 1e-3 * cfg.zpp_min);
}

}  // namespace detail

inline int run_subcommand(std::string_view name, const RunConfig& cfg,
                          std::ostream& console = std::cout) {
  const unsigned threads = static_cast<unsigned>(cfg.threads);

  if (name == "density" || name == "drho") {
    const SlitArray slits = cfg.slit_array();
    const Region region = cfg.region();
    const ErasedEvaluator ev = make_evaluator(cfg);
    const ScalarFieldGrid g =
        name == "density"
            ? density_grid(slits, region, cfg.nx, cfg.nz, ev, cfg.log_z,
                           threads)
            : drho_dz_grid(slits, region, cfg.nx, cfg.nz, detail::auto_h(cfg),
                           ev, cfg.log_z, threads);
    if (cfg.pgm) {
      if (cfg.out.empty())
        throw config_error("pgm output requires an output path");
      write_pgm(g, cfg.out, cfg.pgm_log);
    } else {
      detail::deliver(cfg, console,
                      [&](std::ostream& os) { write_grid_csv(os, g); });
    }
    return 0;
  }

  if (name == "nullmap") {
    const SlitArray slits = cfg.slit_array();
    const Region region = cfg.region();
    const ErasedEvaluator ev = make_evaluator(cfg);
    const NullMap map =
        cfg.sampler == SamplerKind::Grid
            ? scan_grid(slits, region, cfg.nx, cfg.nz, cfg.threshold, ev,
                        cfg.log_z, threads)
            : sample_monte_carlo(slits, region, cfg.samples, cfg.threshold,
                                 cfg.seed, ev, threads);
    detail::deliver(cfg, console,
                    [&](std::ostream& os) { write_nullmap_csv(os, map); });
    return 0;
  }

  if (name == "slice") {
    const SlitArray slits = cfg.slit_array();
    const ErasedEvaluator ev = make_evaluator(cfg);
    const auto samples = slice_density(slits, cfg.axis, cfg.value, cfg.from,
                                       cfg.to, cfg.n, ev);
    detail::deliver(cfg, console,
                    [&](std::ostream& os) { write_slice_csv(os, samples); });
    return 0;
  }

  if (name == "cornu") {
    const auto pts = cornu_curve(cfg.from, cfg.to, cfg.n);
    detail::deliver(cfg, console,
                    [&](std::ostream& os) { write_cornu_csv(os, pts); });
    return 0;
  }

  if (name == "refine") {
    const SlitArray slits = cfg.slit_array();
    const ErasedEvaluator ev = make_evaluator(cfg);
    const RefinedMinimum m = refine_minimum(slits, cfg.x2_0, cfg.zpp_0, ev);
    detail::deliver(cfg, console, [&](std::ostream& os) {
      os << "x2,zpp,rho_min,converged,iterations\n"
         << format_double(m.x2) << ',' << format_double(m.zpp) << ','
         << format_double(m.rho_min) << ',' << (m.converged ? 1 : 0) << ','
         << m.iterations << '\n';
    });
    return 0;
  }

  if (name == "transition") {
    const SlitArray slits = cfg.slit_array();
    const ErasedEvaluator ev = make_evaluator(cfg);
    TransitionConfig tc;
    tc.stations = cfg.stations;
    const TransitionResult res =
        detect_transition(slits, cfg.zpp_min, cfg.zpp_max, ev, tc);
    if (!cfg.out.empty()) {
      std::ofstream os = open_output(cfg.out);
      os << "zpp,count,predicted\n";
      for (const TransitionStation& st : res.profile)
        os << format_double(st.zpp) << ',' << st.count << ','
           << format_double(st.predicted) << '\n';
      if (!os) throw io_error("failed writing output: " + cfg.out);
    }
    console << "z_lo,z_hi\n"
            << format_double(res.z_lo) << ',' << format_double(res.z_hi)
            << '\n';
    return 0;
  }

  if (name == "scalecheck") {
    const SlitArray slits = cfg.slit_array();
    const Region region = cfg.region();
    const ErasedEvaluator ev = make_evaluator(cfg);
    const auto [slits_s, unused] = scale_configuration(
        slits, ObservationPoint(0.0, 1.0), cfg.factor);
    const Region region_s = scale_region(region, cfg.factor);
    const ScalarFieldGrid base =
        density_grid(slits, region, cfg.nx, cfg.nz, ev, cfg.log_z, threads);
    const ScalarFieldGrid scaled = density_grid(slits_s, region_s, cfg.nx,
                                                cfg.nz, ev, cfg.log_z, threads);
    const double pb = base.max_value(), ps = scaled.max_value();
    if (pb <= 0.0 || ps <= 0.0)
      throw convergence_error("scalecheck: degenerate (all-zero) density grid");
    double dev = 0.0;
    for (std::size_t k = 0; k < base.values.size(); ++k)
      dev = std::max(dev,
                     std::fabs(scaled.values[k] / ps - base.values[k] / pb));
    console << "max ratio deviation = " << format_double(dev) << '\n';
    return dev <= cfg.tol ? 0 : 1;
  }

  throw config_error("unknown subcommand: " + std::string(name));
}

}  // namespace slitwave

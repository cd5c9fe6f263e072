#pragma once

// Dense field computation: density and d(rho)/d(zpp) grids, 1-D slices,
// and enclosed-probability integrals.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "slitwave/kernels.hpp"
#include "slitwave/parallel.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

template <class F>
concept AmplitudeEvaluator =
    std::invocable<const F&, const SlitArray&, const ObservationPoint&>;

enum class GridKind { Density, DensityTimeDerivative };

struct ScalarFieldGrid {
  Region region;
  std::size_t nx = 0;
  std::size_t nz = 0;
  bool log_z = false;
  GridKind kind = GridKind::Density;
  std::vector<double> values;  // row-major, x2 fastest

  double x2_at(std::size_t i) const {
    return region.x2_min + (region.x2_max - region.x2_min) *
                               static_cast<double>(i) /
                               static_cast<double>(nx - 1);
  }

  double zpp_at(std::size_t j) const {
    const double t = static_cast<double>(j) / static_cast<double>(nz - 1);
    if (log_z)
      return region.zpp_min *
             std::pow(region.zpp_max / region.zpp_min, t);
    return region.zpp_min + (region.zpp_max - region.zpp_min) * t;
  }

  double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
  double& at(std::size_t i, std::size_t j) { return values[j * nx + i]; }

  double max_value() const {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

namespace detail {

inline void check_resolution(std::size_t nx, std::size_t nz) {
  if (nx < 2 || nz < 2)
    throw config_error("grid resolution must be at least 2x2");
}

}  // namespace detail

template <AmplitudeEvaluator F>
ScalarFieldGrid density_grid(const SlitArray& slits, const Region& region,
                             std::size_t nx, std::size_t nz, const F& evaluator,
                             bool log_z = false, unsigned threads = 0) {
  detail::check_resolution(nx, nz);
  ScalarFieldGrid g{region, nx, nz, log_z, GridKind::Density,
                    std::vector<double>(nx * nz)};
  parallel_for(nz, threads, [&](std::size_t j) {
    const double zpp = g.zpp_at(j);
    for (std::size_t i = 0; i < nx; ++i) {
      const ObservationPoint p(g.x2_at(i), zpp);
      g.values[j * nx + i] = probability_density(evaluator(slits, p));
    }
  });
  return g;
}

template <AmplitudeEvaluator F>
ScalarFieldGrid drho_dz_grid(const SlitArray& slits, const Region& region,
                             std::size_t nx, std::size_t nz, double h,
                             const F& evaluator, bool log_z = false,
                             unsigned threads = 0) {
  detail::check_resolution(nx, nz);
  if (!(h > 0.0) || !(h < region.zpp_min / 2))
    throw config_error("drho_dz_grid: need 0 < h < zpp_min/2");
  ScalarFieldGrid g{region, nx, nz, log_z, GridKind::DensityTimeDerivative,
                    std::vector<double>(nx * nz)};
  parallel_for(nz, threads, [&](std::size_t j) {
    const double zpp = g.zpp_at(j);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x2 = g.x2_at(i);
      const double hi =
          probability_density(evaluator(slits, ObservationPoint(x2, zpp + h)));
      const double lo =
          probability_density(evaluator(slits, ObservationPoint(x2, zpp - h)));
      g.values[j * nx + i] = (hi - lo) / (2.0 * h);
    }
  });
  return g;
}

enum class SliceAxis { FixedZ, FixedX };

struct SliceSample {
  double coord = 0.0;
  double rho = 0.0;
};

template <AmplitudeEvaluator F>
std::vector<SliceSample> slice_density(const SlitArray& slits, SliceAxis axis,
                                       double value, double lo, double hi,
                                       std::size_t n, const F& evaluator) {
  if (n < 2) throw config_error("slice_density: need at least 2 samples");
  if (!(lo < hi)) throw config_error("slice_density: empty range");
  if (axis == SliceAxis::FixedZ && !(value > 0.0))
    throw config_error("slice_density: FixedZ requires value > 0");
  if (axis == SliceAxis::FixedX && !(lo > 0.0))
    throw config_error("slice_density: FixedX requires zpp range > 0");
  std::vector<SliceSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    const ObservationPoint p = axis == SliceAxis::FixedZ
                                   ? ObservationPoint(t, value)
                                   : ObservationPoint(value, t);
    out[i] = {t, probability_density(evaluator(slits, p))};
  }
  return out;
}

// Deterministic pairwise reduction; independent of any threading above it.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

// Composite Simpson integral of rho over [x_lo, x_hi] at fixed zpp.
// n is the interval count (rounded up to even, minimum 16).
template <AmplitudeEvaluator F>
double enclosed_probability(const SlitArray& slits, double zpp, double x_lo,
                            double x_hi, std::size_t n, const F& evaluator) {
  if (!(x_lo <= x_hi)) throw config_error("enclosed_probability: x_lo > x_hi");
  if (n < 16) throw config_error("enclosed_probability: need n >= 16");
  if (x_lo == x_hi) return 0.0;
  if (n % 2 != 0) ++n;
  const double hstep = (x_hi - x_lo) / static_cast<double>(n);
  std::vector<double> terms(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = x_lo + hstep * static_cast<double>(i);
    const double rho =
        probability_density(evaluator(slits, ObservationPoint(x, zpp)));
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    terms[i] = w * rho;
  }
  return pairwise_sum(terms) * hstep / 3.0;
}

}  // namespace slitwave

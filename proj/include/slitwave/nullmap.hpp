#pragma once

// Near-null analysis: grid and Monte-Carlo null maps (peak-normalized rho),
// local minimum refinement, braid-to-fringe transition detection, and
// connected-cluster counting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "slitwave/fields.hpp"
#include "slitwave/kernels.hpp"
#include "slitwave/parallel.hpp"
#include "slitwave/rng.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

enum class SamplerKind { Grid, MonteCarlo };

struct NullPoint {
  double x2 = 0.0;
  double zpp = 0.0;
  double rho = 0.0;  // peak-normalized
};

struct NullMap {
  std::vector<NullPoint> points;
  double threshold = 0.0;
  SamplerKind sampler = SamplerKind::Grid;
  std::uint64_t seed = 0;
  std::uint64_t samples_taken = 0;
  double rho_peak = 0.0;  // raw peak used for normalization
};

// Evaluates rho on the lattice and keeps points with rho/peak < threshold.
// The peak is the lattice maximum, so the map is self-normalizing.
template <AmplitudeEvaluator F>
NullMap scan_grid(const SlitArray& slits, const Region& region, std::size_t nx,
                  std::size_t nz, double threshold, const F& evaluator,
                  bool log_z = false, unsigned threads = 0) {
  if (!(threshold >= 0.0))
    throw config_error("scan_grid: threshold must be non-negative");
  const ScalarFieldGrid g =
      density_grid(slits, region, nx, nz, evaluator, log_z, threads);
  const double peak = g.max_value();
  NullMap map;
  map.threshold = threshold;
  map.sampler = SamplerKind::Grid;
  map.samples_taken = nx * nz;
  map.rho_peak = peak;
  if (peak <= 0.0) return map;
  for (std::size_t j = 0; j < nz; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double r = g.at(i, j) / peak;
      if (r < threshold) map.points.push_back({g.x2_at(i), g.zpp_at(j), r});
    }
  return map;
}

// Uniform Monte-Carlo sampling over the region with a counter-based
// generator: sample j is a pure function of (seed, j), so the output is
// identical for any worker count.  Two passes: find the sampled peak, then
// retain normalized sub-threshold points in sample order.
template <AmplitudeEvaluator F>
NullMap sample_monte_carlo(const SlitArray& slits, const Region& region,
                           std::uint64_t n, double threshold,
                           std::uint64_t seed, const F& evaluator,
                           unsigned threads = 0) {
  if (n < 1) throw config_error("sample_monte_carlo: need n >= 1");
  if (!(threshold >= 0.0))
    throw config_error("sample_monte_carlo: threshold must be non-negative");
  const double wx = region.x2_max - region.x2_min;
  const double wz = region.zpp_max - region.zpp_min;

  std::vector<double> rho(n);
  parallel_for(n, threads, [&](std::size_t j) {
    const double x2 = region.x2_min + wx * counter_uniform(seed, 2 * j);
    const double zpp = region.zpp_min + wz * counter_uniform(seed, 2 * j + 1);
    rho[j] = probability_density(evaluator(slits, ObservationPoint(x2, zpp)));
  });

  double peak = 0.0;
  for (double r : rho) peak = std::max(peak, r);

  NullMap map;
  map.threshold = threshold;
  map.sampler = SamplerKind::MonteCarlo;
  map.seed = seed;
  map.samples_taken = n;
  map.rho_peak = peak;
  if (peak <= 0.0) return map;
  for (std::uint64_t j = 0; j < n; ++j) {
    const double r = rho[j] / peak;
    if (r < threshold) {
      const double x2 = region.x2_min + wx * counter_uniform(seed, 2 * j);
      const double zpp = region.zpp_min + wz * counter_uniform(seed, 2 * j + 1);
      map.points.push_back({x2, zpp, r});
    }
  }
  return map;
}

struct RefinedMinimum {
  double x2 = 0.0;
  double zpp = 0.0;
  double rho_min = 0.0;  // raw density at the minimum
  bool converged = false;
  int iterations = 0;
};

// Coordinate descent with geometric step shrinkage.  One probe per axis per
// round keeps total travel within ~2 initial steps of the start, so the
// refinement stays on the structure it was seeded on.
template <AmplitudeEvaluator F>
RefinedMinimum refine_minimum(const SlitArray& slits, double x2_0,
                              double zpp_0, const F& evaluator,
                              double initial_step = 0.0) {
  if (!(zpp_0 > 0.0)) throw config_error("refine_minimum: zpp_0 must be > 0");
  double step = initial_step;
  if (!(step > 0.0)) {
    step = slits.slit_count() >= 2
               ? zpp_0 / (2.0 * slits.characteristic_spacing())
               : slits.width(0) / 10.0;
  }
  const auto rho_at = [&](double x2, double zpp) {
    return probability_density(evaluator(slits, ObservationPoint(x2, zpp)));
  };
  double x2 = x2_0, zpp = zpp_0;
  double best = rho_at(x2, zpp);
  RefinedMinimum out;
  int rounds = 0;
  while (rounds < 200) {
    ++rounds;
    for (const double dx : {step, -step}) {
      const double r = rho_at(x2 + dx, zpp);
      if (r < best) {
        best = r;
        x2 += dx;
        break;
      }
    }
    for (const double dz : {step, -step}) {
      if (zpp + dz <= 0.0) continue;
      const double r = rho_at(x2, zpp + dz);
      if (r < best) {
        best = r;
        zpp += dz;
        break;
      }
    }
    step *= 0.5;
    if (step < 1e-12) {
      out.converged = true;
      break;
    }
  }
  out.x2 = x2;
  out.zpp = zpp;
  out.rho_min = best;
  out.iterations = rounds;
  return out;
}

struct TransitionConfig {
  std::size_t stations = 400;     // log-spaced zpp stations
  double points_per_fringe = 8.0; // transverse sampling density
  double rel_threshold = 0.05;    // depth cut vs neighboring maxima
  double match_tol = 0.10;        // |count/predicted - 1| for far-field match
  double depart_tol = 0.50;       // mismatch marking the braid side
};

struct TransitionStation {
  double zpp = 0.0;
  std::size_t count = 0;
  double predicted = 0.0;
};

struct TransitionResult {
  double z_lo = 0.0;
  double z_hi = 0.0;
  std::vector<TransitionStation> profile;
};

namespace detail {

// Depth of a discrete local minimum estimated by the parabola through the
// three bracketing samples; the raw lattice value depends on how the lattice
// happens to align with the null and is useless for a depth cut.
inline double parabola_min(double y0, double y1, double y2) {
  const double curv = y0 - 2.0 * y1 + y2;
  if (curv <= 0.0) return y1;
  const double m = y1 - (y2 - y0) * (y2 - y0) / (8.0 * curv);
  return std::max(m, 0.0);
}

}  // namespace detail

// Counts deep minima of rho(x2) across |x2| <= ISD per log-spaced station
// and locates the band where the count settles onto the far-field fringe
// prediction 2*ISD^2/zpp (spacing zpp/ISD over a 2*ISD window).  A minimum
// is deep when its interpolated value stays below rel_threshold times the
// smaller of the two flanking local maxima.
template <AmplitudeEvaluator F>
TransitionResult detect_transition(const SlitArray& slits, double zpp_lo,
                                   double zpp_hi, const F& evaluator,
                                   TransitionConfig cfg = TransitionConfig{}) {
  if (slits.slit_count() < 2)
    throw config_error("detect_transition: need at least 2 slits");
  if (!(zpp_lo > 0.0) || !(zpp_lo < zpp_hi))
    throw config_error("detect_transition: need 0 < zpp_lo < zpp_hi");
  if (cfg.stations < 8)
    throw config_error("detect_transition: need at least 8 stations");

  const double isd = slits.characteristic_spacing();
  const double x_center =
      0.5 * (slits.center(0) + slits.center(slits.slit_count() - 1));
  TransitionResult res;
  res.profile.resize(cfg.stations);

  parallel_for(cfg.stations, 0, [&](std::size_t si) {
    const double t =
        static_cast<double>(si) / static_cast<double>(cfg.stations - 1);
    const double zpp = zpp_lo * std::pow(zpp_hi / zpp_lo, t);
    const double predicted = 2.0 * isd * isd / zpp;
    const std::size_t npts = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(cfg.points_per_fringe * predicted)),
        64, 500'000);
    std::vector<double> rho(npts + 1);
    for (std::size_t i = 0; i <= npts; ++i) {
      const double x2 = x_center - isd +
                        2.0 * isd * static_cast<double>(i) /
                            static_cast<double>(npts);
      rho[i] = probability_density(
          evaluator(slits, ObservationPoint(x2, zpp)));
    }
    // local extrema in sample order: maxima bracket the minima between them
    struct Extremum {
      std::size_t idx;
      bool is_min;
    };
    std::vector<Extremum> ext;
    for (std::size_t i = 1; i < npts; ++i) {
      if (rho[i] > rho[i - 1] && rho[i] > rho[i + 1])
        ext.push_back({i, false});
      else if (rho[i] < rho[i - 1] && rho[i] < rho[i + 1])
        ext.push_back({i, true});
    }
    std::size_t count = 0;
    for (std::size_t e = 0; e < ext.size(); ++e) {
      if (!ext[e].is_min) continue;
      const std::size_t i = ext[e].idx;
      const double left_max =
          e > 0 && !ext[e - 1].is_min ? rho[ext[e - 1].idx] : rho[0];
      const double right_max = e + 1 < ext.size() && !ext[e + 1].is_min
                                   ? rho[ext[e + 1].idx]
                                   : rho[npts];
      const double depth =
          detail::parabola_min(rho[i - 1], rho[i], rho[i + 1]);
      if (depth < cfg.rel_threshold * std::min(left_max, right_max)) ++count;
    }
    res.profile[si] = {zpp, count, predicted};
  });

  // z_hi: first station from which every later station matches the
  // far-field prediction within match_tol.
  std::size_t hi_idx = cfg.stations;
  for (std::size_t si = cfg.stations; si-- > 0;) {
    const auto& st = res.profile[si];
    const double ratio = static_cast<double>(st.count) / st.predicted;
    if (std::fabs(ratio - 1.0) <= cfg.match_tol)
      hi_idx = si;
    else
      break;
  }
  if (hi_idx == cfg.stations)
    throw convergence_error(
        "detect_transition: no far-field match inside the range");
  // z_lo: last station before z_hi with a strong mismatch.
  std::size_t lo_idx = 0;
  bool found_lo = false;
  for (std::size_t si = hi_idx; si-- > 0;) {
    const auto& st = res.profile[si];
    const double ratio = static_cast<double>(st.count) / st.predicted;
    if (std::fabs(ratio - 1.0) >= cfg.depart_tol) {
      lo_idx = si;
      found_lo = true;
      break;
    }
  }
  res.z_lo = res.profile[found_lo ? lo_idx : 0].zpp;
  res.z_hi = res.profile[hi_idx].zpp;
  return res;
}

// Number of 8-connected clusters of lattice cells whose peak-normalized
// density falls below the threshold.
inline std::size_t null_cluster_count(const ScalarFieldGrid& grid,
                                      double threshold) {
  const double peak = grid.max_value();
  if (peak <= 0.0) return 0;
  const std::size_t nx = grid.nx, nz = grid.nz;
  std::vector<char> mask(nx * nz);
  for (std::size_t k = 0; k < mask.size(); ++k)
    mask[k] = grid.values[k] / peak < threshold ? 1 : 0;

  std::vector<std::size_t> parent(nx * nz);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  const auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t j = 0; j < nz; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = j * nx + i;
      if (!mask[k]) continue;
      if (i + 1 < nx && mask[k + 1]) unite(k, k + 1);
      if (j + 1 < nz) {
        const std::size_t below = k + nx;
        if (mask[below]) unite(k, below);
        if (i > 0 && mask[below - 1]) unite(k, below - 1);
        if (i + 1 < nx && mask[below + 1]) unite(k, below + 1);
      }
    }
  std::size_t clusters = 0;
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k] && find(k) == k) ++clusters;
  return clusters;
}

}  // namespace slitwave

#pragma once

// The three amplitude evaluators.  All of them drop the global prefactors
// 1/(i*lambda), 1/sqrt(z') and the source phase, so amplitudes are defined
// up to one complex constant per evaluator:
//   quadrature (far field) = hypergeometric exactly,
//   fresnel = sqrt(2) * hypergeometric exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "slitwave/core.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

struct QuadratureSpec {
  int points_per_panel = 16;
  double max_phase_per_panel = std::numbers::pi / 2;

  void validate() const {
    if (points_per_panel < 2 || points_per_panel > 512)
      throw config_error("QuadratureSpec: points_per_panel must be in [2, 512]");
    if (!(max_phase_per_panel > 0.0) ||
        max_phase_per_panel > std::numbers::pi)
      throw config_error(
          "QuadratureSpec: max_phase_per_panel must be in (0, pi]");
  }
};

inline double probability_density(Complex psi) { return std::norm(psi); }

// Far-field closed form: psi = sum over slits of F(u_hi) - F(u_lo) with
// F(u) = C(u) + i S(u) and u = sqrt(2/zpp) (e - x2).
inline Complex amplitude_fresnel(const SlitArray& slits,
                                 const ObservationPoint& p) {
  const double k = std::sqrt(2.0 / p.zpp);
  Complex acc{0.0, 0.0};
  for (std::size_t s = 0; s < slits.slit_count(); ++s) {
    const FresnelCS hi = fresnel_cs(k * (slits.upper_edge(s) - p.x2));
    const FresnelCS lo = fresnel_cs(k * (slits.lower_edge(s) - p.x2));
    acc += Complex{hi.c - lo.c, hi.s - lo.s};
  }
  return acc;
}

// Far-field series form: psi = (1/sqrt(pi)) sum over slits of
// [t2(q) + i t1(q)] at the upper edge minus the same at the lower edge.
// Strict about its stable domain: |q| must stay within kTSeriesRadius.
inline Complex amplitude_hypergeometric(const SlitArray& slits,
                                        const ObservationPoint& p) {
  const double k = std::sqrt(std::numbers::pi / p.zpp);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  Complex acc{0.0, 0.0};
  for (std::size_t s = 0; s < slits.slit_count(); ++s) {
    const double q_hi = k * (slits.upper_edge(s) - p.x2);
    const double q_lo = k * (slits.lower_edge(s) - p.x2);
    if (std::fabs(q_hi) > kTSeriesRadius || std::fabs(q_lo) > kTSeriesRadius)
      throw domain_error(
          "amplitude_hypergeometric: |q| = " +
          std::to_string(std::max(std::fabs(q_hi), std::fabs(q_lo))) +
          " exceeds the stable series domain " +
          std::to_string(kTSeriesRadius));
    double c_hi, s_hi, c_lo, s_lo;
    detail::t_series(q_hi, c_hi, s_hi);
    detail::t_series(q_lo, c_lo, s_lo);
    acc += Complex{c_hi - c_lo, s_hi - s_lo};
  }
  return inv_sqrt_pi * acc;
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per rule order.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n) : x_(n), w_(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x_[i] = -xi;
      x_[n - 1 - i] = xi;
      w_[i] = w_[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> x_, w_;
};

}  // namespace detail

// Direct panelwise Gauss-Legendre integration of the oscillatory kernel.
// The only evaluator that supports a finite-distance source.
class QuadratureEvaluator {
 public:
  explicit QuadratureEvaluator(SourceConfig source = SourceConfig::far_field(),
                               QuadratureSpec spec = QuadratureSpec{})
      : source_(source), spec_(spec), rule_(spec.points_per_panel) {
    spec_.validate();
  }

  Complex operator()(const SlitArray& slits, const ObservationPoint& p) const {
    const bool finite = source_.kind == SourceConfig::Kind::Finite;
    // Combined quadratic phase c (x - xv)^2 + const; xv is the vertex.
    const double inv_zpp = 1.0 / p.zpp;
    const double inv_zp = finite ? 1.0 / source_.zp : 0.0;
    const double c = std::numbers::pi * (inv_zpp + inv_zp);
    const double xv = (source_.x0 * inv_zp + p.x2 * inv_zpp) /
                      (inv_zpp + inv_zp);

    Complex acc{0.0, 0.0};
    std::size_t panel_budget = 50'000'000;
    for (std::size_t s = 0; s < slits.slit_count(); ++s) {
      const double a = slits.lower_edge(s), b = slits.upper_edge(s);
      if (xv > a && xv < b) {
        acc += integrate_segment(a, xv, xv, c, p, panel_budget);
        acc += integrate_segment(xv, b, xv, c, p, panel_budget);
      } else {
        acc += integrate_segment(a, b, xv, c, p, panel_budget);
      }
    }
    acc /= std::sqrt(p.zpp);
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
      throw convergence_error(
          "amplitude_quadrature: non-finite intermediate value");
    return acc;
  }

  const SourceConfig& source() const { return source_; }
  const QuadratureSpec& spec() const { return spec_; }

 private:
  // Integrate exp(i phase(x)) over [lo, hi]; the phase is monotone in
  // distance from the vertex xv (callers split at xv).
  Complex integrate_segment(double lo, double hi, double xv, double c,
                            const ObservationPoint& p,
                            std::size_t& panel_budget) const {
    const double d_lo = std::abs(lo - xv), d_hi = std::abs(hi - xv);
    const double dn2 = std::min(d_lo, d_hi) * std::min(d_lo, d_hi);
    const double df2 = std::max(d_lo, d_hi) * std::max(d_lo, d_hi);
    const double dphi = c * (df2 - dn2);
    const double want = std::ceil(dphi / spec_.max_phase_per_panel);
    const std::size_t npan =
        want >= 1.0 ? static_cast<std::size_t>(want) : 1;
    if (npan > panel_budget)
      throw convergence_error("amplitude_quadrature: panel budget exceeded");
    panel_budget -= npan;

    // Panel boundaries equally spaced in squared distance (equal phase).
    const bool left = 0.5 * (lo + hi) < xv;
    const double d2_first = left ? df2 : dn2;
    const double d2_step = (left ? -1.0 : 1.0) * (df2 - dn2) /
                           static_cast<double>(npan);
    const bool finite = source_.kind == SourceConfig::Kind::Finite;
    const auto& xs = rule_.nodes();
    const auto& ws = rule_.weights();
    Complex seg{0.0, 0.0};
    double x_prev = lo;
    for (std::size_t k = 1; k <= npan; ++k) {
      const double d2 = d2_first + d2_step * static_cast<double>(k);
      const double d = std::sqrt(std::max(0.0, d2));
      const double x_next = k == npan ? hi : (left ? xv - d : xv + d);
      const double mid = 0.5 * (x_prev + x_next);
      const double half = 0.5 * (x_next - x_prev);
      Complex panel{0.0, 0.0};
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double x = mid + half * xs[j];
        const double dx2 = x - p.x2;
        double phase = std::numbers::pi * dx2 * dx2 / p.zpp;
        if (finite) {
          const double dx0 = x - source_.x0;
          phase += std::numbers::pi * dx0 * dx0 / source_.zp;
        }
        panel += ws[j] * Complex{std::cos(phase), std::sin(phase)};
      }
      seg += half * panel;
      x_prev = x_next;
    }
    return seg;
  }

  SourceConfig source_;
  QuadratureSpec spec_;
  detail::GaussLegendre rule_;
};

inline Complex amplitude_quadrature(const SlitArray& slits,
                                    const ObservationPoint& p,
                                    const SourceConfig& source,
                                    const QuadratureSpec& spec) {
  return QuadratureEvaluator(source, spec)(slits, p);
}

// Callable wrappers for the field/nullmap scanners.
struct FresnelEvaluator {
  Complex operator()(const SlitArray& slits, const ObservationPoint& p) const {
    return amplitude_fresnel(slits, p);
  }
};

// strict = true surfaces the domain error; the default silently reroutes to
// the Fresnel form rescaled by 1/sqrt(2) so the returned amplitude stays on
// the hypergeometric normalization across the whole field.
struct HypergeometricEvaluator {
  bool strict = false;

  Complex operator()(const SlitArray& slits, const ObservationPoint& p) const {
    if (!strict) {
      const double k = std::sqrt(std::numbers::pi / p.zpp);
      for (double e : slits.edges())
        if (std::fabs(k * (e - p.x2)) > kTSeriesRadius)
          return amplitude_fresnel(slits, p) / std::numbers::sqrt2;
    }
    return amplitude_hypergeometric(slits, p);
  }
};

using AutoEvaluator = HypergeometricEvaluator;

}  // namespace slitwave

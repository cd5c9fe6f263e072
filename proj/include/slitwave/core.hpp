#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "slitwave/types.hpp"

namespace slitwave {

// Reduced per-edge coordinates at an observation point:
//   q = sqrt(pi / zpp) * (e - x2)   (argument of the t1/t2 integrals)
//   u = sqrt(2  / zpp) * (e - x2)   (argument of the Fresnel integrals)
// so u = q * sqrt(2/pi) always.
struct ReducedCoordinate {
  double q = 0.0;
  double u = 0.0;
};

inline ReducedCoordinate reduced_coordinate(double edge,
                                            const ObservationPoint& p) {
  const double d = edge - p.x2;
  return {std::sqrt(std::numbers::pi / p.zpp) * d,
          std::sqrt(2.0 / p.zpp) * d};
}

// One entry per aperture edge, in edge order.
inline std::vector<ReducedCoordinate> reduced_coordinates(
    const SlitArray& slits, const ObservationPoint& p) {
  std::vector<ReducedCoordinate> out;
  out.reserve(slits.edges().size());
  for (double e : slits.edges()) out.push_back(reduced_coordinate(e, p));
  return out;
}

// The similarity map (x1, x2, zpp) -> (s*x1, s*x2, s^2*zpp) leaves every
// reduced coordinate, and hence the normalized density pattern, unchanged.
inline std::pair<SlitArray, ObservationPoint> scale_configuration(
    const SlitArray& slits, const ObservationPoint& p, double s) {
  if (!(s > 0.0))
    throw config_error("scale_configuration: scale factor must be positive");
  std::vector<double> edges = slits.edges();
  for (double& e : edges) e *= s;
  return {SlitArray(std::move(edges)), ObservationPoint(s * p.x2, s * s * p.zpp)};
}

inline Region scale_region(const Region& r, double s) {
  if (!(s > 0.0))
    throw config_error("scale_region: scale factor must be positive");
  return Region(s * r.x2_min, s * r.x2_max, s * s * r.zpp_min,
                s * s * r.zpp_max);
}

}  // namespace slitwave

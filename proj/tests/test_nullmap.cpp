#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "slitwave/fields.hpp"
#include "slitwave/nullmap.hpp"

namespace {

using namespace slitwave;

const SlitArray kBraidSlits({-20.01, -19.99, 19.99, 20.01});
const Region kBraidRegion{-60.0, 60.0, 0.1, 100.0};

// Analytic quadratic bowl: rho = (x2 - a)^2 + (zpp - b)^2.
struct BowlEval {
  double a = 0.0;
  double b = 0.0;
  Complex operator()(const SlitArray&, const ObservationPoint& p) const {
    return Complex{p.x2 - a, p.zpp - b};
  }
};

TEST(ScanGrid, RejectsNegativeThreshold) {
  FresnelEvaluator ev;
  EXPECT_THROW(scan_grid(kBraidSlits, kBraidRegion, 16, 16, -1.0, ev),
               config_error);
}

TEST(ScanGrid, ThresholdZeroGivesEmptyMap) {
  FresnelEvaluator ev;
  const NullMap m = scan_grid(kBraidSlits, kBraidRegion, 64, 32, 0.0, ev);
  EXPECT_TRUE(m.points.empty());
  EXPECT_GT(m.rho_peak, 0.0);
}

TEST(ScanGrid, ThresholdMonotonicityIsSetInclusion) {
  FresnelEvaluator ev;
  const NullMap tight =
      scan_grid(kBraidSlits, kBraidRegion, 241, 81, 1e-8, ev, true);
  const NullMap mid =
      scan_grid(kBraidSlits, kBraidRegion, 241, 81, 1e-6, ev, true);
  const NullMap loose =
      scan_grid(kBraidSlits, kBraidRegion, 241, 81, 1e-4, ev, true);
  ASSERT_LE(tight.points.size(), mid.points.size());
  ASSERT_LE(mid.points.size(), loose.points.size());
  EXPECT_GT(loose.points.size(), 0u);

  const auto key = [](const NullPoint& p) {
    return std::pair<double, double>(p.zpp, p.x2);
  };
  const auto contains = [&](const NullMap& big, const NullMap& small) {
    std::map<std::pair<double, double>, double> index;
    for (const NullPoint& p : big.points) index[key(p)] = p.rho;
    for (const NullPoint& p : small.points) {
      const auto it = index.find(key(p));
      if (it == index.end()) return false;
      if (it->second != p.rho) return false;
    }
    return true;
  };
  EXPECT_TRUE(contains(mid, tight));
  EXPECT_TRUE(contains(loose, mid));
}

TEST(ScanGrid, BraidStructureSpansNearAndFarField) {
  FresnelEvaluator ev;
  const NullMap m =
      scan_grid(kBraidSlits, kBraidRegion, 1201, 241, 1e-6, ev, true);
  EXPECT_NEAR(m.rho_peak, 8.191527e-3, 1e-8);
  ASSERT_GT(m.points.size(), 10u);
  bool near_plane = false, far_field = false;
  for (const NullPoint& p : m.points) {
    EXPECT_LT(p.rho, 1e-6);
    EXPECT_GE(p.rho, 0.0);
    if (p.zpp < 1.0) near_plane = true;
    if (p.zpp > 10.0) far_field = true;
  }
  EXPECT_TRUE(near_plane);
  EXPECT_TRUE(far_field);
}

TEST(ScanGrid, MirrorSymmetryOfLoci) {
  FresnelEvaluator ev;
  const NullMap m =
      scan_grid(kBraidSlits, kBraidRegion, 1201, 241, 1e-6, ev, true);
  ASSERT_FALSE(m.points.empty());
  for (const NullPoint& p : m.points) {
    const bool mirrored =
        std::any_of(m.points.begin(), m.points.end(), [&](const NullPoint& q) {
          return std::fabs(q.x2 + p.x2) < 1e-9 && q.zpp == p.zpp;
        });
    EXPECT_TRUE(mirrored) << "unmatched point x2=" << p.x2
                          << " zpp=" << p.zpp;
  }
}

TEST(ScanGrid, ThreadCountInvariance) {
  FresnelEvaluator ev;
  const NullMap a =
      scan_grid(kBraidSlits, kBraidRegion, 101, 41, 1e-2, ev, true, 1);
  const NullMap b =
      scan_grid(kBraidSlits, kBraidRegion, 101, 41, 1e-2, ev, true, 5);
  ASSERT_EQ(a.points.size(), b.points.size());
  EXPECT_EQ(a.rho_peak, b.rho_peak);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].x2, b.points[i].x2);
    EXPECT_EQ(a.points[i].zpp, b.points[i].zpp);
    EXPECT_EQ(a.points[i].rho, b.points[i].rho);
  }
}

TEST(MonteCarlo, RejectsBadArguments) {
  FresnelEvaluator ev;
  EXPECT_THROW(sample_monte_carlo(kBraidSlits, kBraidRegion, 0, 1e-6, 1, ev),
               config_error);
  EXPECT_THROW(sample_monte_carlo(kBraidSlits, kBraidRegion, 10, -1e-6, 1, ev),
               config_error);
}

TEST(MonteCarlo, ThreadCountInvariance) {
  FresnelEvaluator ev;
  const NullMap a =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 20001, 1e-2, 3, ev, 1);
  const NullMap b =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 20001, 1e-2, 3, ev, 3);
  const NullMap c =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 20001, 1e-2, 3, ev, 8);
  ASSERT_EQ(a.points.size(), b.points.size());
  ASSERT_EQ(a.points.size(), c.points.size());
  EXPECT_EQ(a.rho_peak, b.rho_peak);
  EXPECT_EQ(a.rho_peak, c.rho_peak);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].x2, b.points[i].x2);
    EXPECT_EQ(a.points[i].rho, c.points[i].rho);
    EXPECT_EQ(a.points[i].zpp, c.points[i].zpp);
  }
}

TEST(MonteCarlo, SeedChangesTheSample) {
  FresnelEvaluator ev;
  const NullMap a =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 5000, 1e-2, 1, ev);
  const NullMap b =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 5000, 1e-2, 2, ev);
  EXPECT_NE(a.rho_peak, b.rho_peak);
}

TEST(MonteCarlo, SingleSampleIsReproducible) {
  FresnelEvaluator ev;
  const NullMap a =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 1, 2.0, 42, ev);
  const NullMap b =
      sample_monte_carlo(kBraidSlits, kBraidRegion, 1, 2.0, 42, ev);
  ASSERT_EQ(a.points.size(), 1u);
  ASSERT_EQ(b.points.size(), 1u);
  EXPECT_EQ(a.points[0].x2, b.points[0].x2);
  EXPECT_EQ(a.points[0].zpp, b.points[0].zpp);
}

// Retained counts are exact: sample j is a pure function of (seed, j).
TEST(MonteCarlo, RetainedCountGrowsWithThreshold) {
  FresnelEvaluator ev;
  const std::uint64_t n = 1'000'000;
  const NullMap m12 =
      sample_monte_carlo(kBraidSlits, kBraidRegion, n, 1e-12, 1, ev);
  const NullMap m10 =
      sample_monte_carlo(kBraidSlits, kBraidRegion, n, 1e-10, 1, ev);
  const NullMap m8 =
      sample_monte_carlo(kBraidSlits, kBraidRegion, n, 1e-8, 1, ev);
  const NullMap m6 =
      sample_monte_carlo(kBraidSlits, kBraidRegion, n, 1e-6, 1, ev);
  EXPECT_NEAR(m6.rho_peak, 8.219823073e-3, 1e-11);
  EXPECT_EQ(m12.points.size(), 0u);
  EXPECT_EQ(m10.points.size(), 24u);
  EXPECT_EQ(m8.points.size(), 574u);
  EXPECT_EQ(m6.points.size(), 6549u);
}

// The MC retained fraction is a binomial estimate of the sub-threshold area
// fraction; compare against a grid fine enough to resolve every fringe.
TEST(MonteCarlo, AgreesWithGridFractionWithinThreeSigma) {
  FresnelEvaluator ev;
  const Region region{-20.0, 20.0, 20.0, 100.0};
  const std::uint64_t n = 20000;
  for (const double thr : {1e-3, 1e-2}) {
    const NullMap g = scan_grid(kBraidSlits, region, 801, 161, thr, ev);
    const double p_grid =
        static_cast<double>(g.points.size()) / (801.0 * 161.0);
    const double sigma = std::sqrt(p_grid * (1.0 - p_grid) /
                                   static_cast<double>(n));
    for (const std::uint64_t seed : {8ull, 1ull}) {
      const NullMap m =
          sample_monte_carlo(kBraidSlits, region, n, thr, seed, ev);
      const double p_mc =
          static_cast<double>(m.points.size()) / static_cast<double>(n);
      EXPECT_LE(std::fabs(p_mc - p_grid), 3.0 * sigma)
          << "thr=" << thr << " seed=" << seed;
    }
  }
}

TEST(RefineMinimum, QuadraticBowlConvergesToMachinePrecision) {
  const BowlEval ev{1.5, 2.0};
  const RefinedMinimum r = refine_minimum(kBraidSlits, 1.4, 2.05, ev, 0.1);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rho_min, 1e-20);
  EXPECT_NEAR(r.x2, 1.5, 1e-10);
  EXPECT_NEAR(r.zpp, 2.0, 1e-10);
}

TEST(RefineMinimum, TravelBoundedByTwiceInitialStep) {
  const BowlEval ev{10.0, 1.0};
  const RefinedMinimum r = refine_minimum(kBraidSlits, 0.0, 1.0, ev, 0.5);
  EXPECT_LE(std::fabs(r.x2), 1.0 + 1e-12);
  EXPECT_LE(std::fabs(r.zpp - 1.0), 1.0 + 1e-12);
}

TEST(RefineMinimum, NeverIncreasesDensity) {
  FresnelEvaluator ev;
  for (const auto& [x, z] : {std::pair{0.5, 1.0}, {3.7, 2.2}, {15.0, 40.0}}) {
    const double before =
        probability_density(ev(kBraidSlits, ObservationPoint(x, z)));
    const RefinedMinimum r = refine_minimum(kBraidSlits, x, z, ev);
    EXPECT_LE(r.rho_min, before);
  }
}

// Single slit of width 0.1 at zpp = 10: fringe minima sit near multiples of
// zpp/width = 100, and the refined floor is far below the central peak.
TEST(RefineMinimum, SingleSlitFringeMinimum) {
  FresnelEvaluator ev;
  const SlitArray slit = SlitArray::single(0.0, 0.1);
  const double peak =
      probability_density(ev(slit, ObservationPoint(0.0, 10.0)));
  double seed_x = 95.0, seed_rho = 1e300;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 95.0 + 10.0 * i / 2000.0;
    const double rho = probability_density(ev(slit, ObservationPoint(x, 10.0)));
    if (rho < seed_rho) {
      seed_rho = rho;
      seed_x = x;
    }
  }
  const RefinedMinimum r = refine_minimum(slit, seed_x, 10.0, ev);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x2, 100.0, 0.5);
  const double ratio = r.rho_min / peak;
  EXPECT_GE(ratio, 1e-9);
  EXPECT_LE(ratio, 1e-3);
}

TEST(RefineMinimum, BraidBoundaryNullStaysLocal) {
  FresnelEvaluator ev;
  const RefinedMinimum r = refine_minimum(kBraidSlits, 0.00375, 0.3, ev);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.rho_min, 1e-9);
  EXPECT_NEAR(r.x2, 0.00375, 0.01);
  EXPECT_NEAR(r.zpp, 0.3, 0.01);
}

TEST(RefineMinimum, DeepZeroNearWindingClosure) {
  FresnelEvaluator ev;
  const RefinedMinimum r = refine_minimum(kBraidSlits, 0.1104, 0.39999, ev);
  EXPECT_LT(r.rho_min, 1e-18);
}

TEST(RefineMinimum, RejectsNonPositiveHeight) {
  FresnelEvaluator ev;
  EXPECT_THROW(refine_minimum(kBraidSlits, 0.0, 0.0, ev), config_error);
}

TEST(DetectTransition, RejectsBadInput) {
  FresnelEvaluator ev;
  const SlitArray single = SlitArray::single(0.0, 0.02);
  EXPECT_THROW(detect_transition(single, 0.5, 20.0, ev), config_error);
  EXPECT_THROW(detect_transition(kBraidSlits, 5.0, 5.0, ev), config_error);
  TransitionConfig cfg;
  cfg.stations = 7;
  EXPECT_THROW(detect_transition(kBraidSlits, 0.5, 20.0, ev, cfg),
               config_error);
}

TEST(DetectTransition, LocatesTheBraidToFringeBand) {
  FresnelEvaluator ev;
  TransitionConfig cfg;
  cfg.stations = 60;
  const TransitionResult r = detect_transition(kBraidSlits, 0.5, 20.0, ev, cfg);
  EXPECT_LT(r.z_lo, r.z_hi);
  EXPECT_GT(r.z_lo, 1.2);
  EXPECT_LT(r.z_lo, 1.9);
  EXPECT_GT(r.z_hi, 2.0);
  EXPECT_LT(r.z_hi, 2.5);
  ASSERT_EQ(r.profile.size(), 60u);
  const TransitionStation& last = r.profile.back();
  EXPECT_NEAR(static_cast<double>(last.count) / last.predicted, 1.0, 0.10);
}

TEST(DetectTransition, BandScalesAsScaleSquared) {
  FresnelEvaluator ev;
  TransitionConfig cfg;
  cfg.stations = 60;
  const TransitionResult base =
      detect_transition(kBraidSlits, 0.5, 20.0, ev, cfg);
  const double s = 10.0;
  const SlitArray scaled =
      scale_configuration(kBraidSlits, ObservationPoint(0.0, 1.0), s).first;
  const TransitionResult moved =
      detect_transition(scaled, 0.5 * s * s, 20.0 * s * s, ev, cfg);
  EXPECT_NEAR(moved.z_lo / base.z_lo, s * s, 0.05 * s * s);
  EXPECT_NEAR(moved.z_hi / base.z_hi, s * s, 0.05 * s * s);
}

TEST(NullClusterCount, CountsSyntheticComponents) {
  ScalarFieldGrid g{{0.0, 1.0, 1.0, 2.0}, 5, 5, false, GridKind::Density,
                    std::vector<double>(25, 1.0)};
  g.at(1, 1) = 1e-12;
  g.at(3, 3) = 1e-12;
  EXPECT_EQ(null_cluster_count(g, 1e-6), 2u);
  g.at(2, 2) = 1e-12;  // diagonal bridge joins the two
  EXPECT_EQ(null_cluster_count(g, 1e-6), 1u);
}

TEST(NullClusterCount, ConstantGridEdgeCases) {
  const ScalarFieldGrid g{{0.0, 1.0, 1.0, 2.0}, 4, 3, false,
                          GridKind::Density, std::vector<double>(12, 0.5)};
  EXPECT_EQ(null_cluster_count(g, 1.0), 0u);
  EXPECT_EQ(null_cluster_count(g, 2.0), 1u);
}

// Whole-apparatus scan at fixed cell size: the braid structure gets strictly
// busier as slits are added.
TEST(NullClusterCount, ClusterCountGrowsWithSlitCount) {
  FresnelEvaluator ev;
  std::size_t prev = 0;
  for (const std::size_t n : {2u, 3u, 4u, 5u}) {
    const SlitArray slits = SlitArray::equal_pitch(n, 0.02, 40.0);
    const double half = 20.0 * static_cast<double>(n - 1) + 40.0;
    const std::size_t nx = static_cast<std::size_t>(2.0 * half / 0.25) + 1;
    const ScalarFieldGrid g =
        density_grid(slits, {-half, half, 0.3, 30.0}, nx, 129, ev, true);
    const std::size_t count = null_cluster_count(g, 2e-2);
    EXPECT_GE(count, prev) << "slit count " << n;
    prev = count;
  }
  EXPECT_GT(prev, 1000u);
}

}  // namespace

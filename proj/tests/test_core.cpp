#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "slitwave/core.hpp"
#include "slitwave/types.hpp"

using namespace slitwave;

TEST(SlitArray, ValidatesEdgeList) {
  EXPECT_THROW(SlitArray({}), config_error);
  EXPECT_THROW(SlitArray({1.0}), config_error);
  EXPECT_THROW(SlitArray({1.0, 1.0}), config_error);
  EXPECT_THROW(SlitArray({2.0, 1.0}), config_error);
  EXPECT_NO_THROW(SlitArray({-1.0, 1.0}));
}

TEST(SlitArray, Accessors) {
  const SlitArray s({-20.01, -19.99, 19.99, 20.01});
  EXPECT_EQ(s.slit_count(), 2u);
  EXPECT_DOUBLE_EQ(s.lower_edge(1), 19.99);
  EXPECT_DOUBLE_EQ(s.upper_edge(0), -19.99);
  EXPECT_DOUBLE_EQ(s.center(1), 20.0);
  EXPECT_NEAR(s.width(0), 0.02, 1e-13);
  EXPECT_DOUBLE_EQ(s.characteristic_spacing(), 40.0);
}

TEST(SlitArray, EqualPitchFactory) {
  const SlitArray s = SlitArray::equal_pitch(3, 0.1, 8.0);
  ASSERT_EQ(s.slit_count(), 3u);
  EXPECT_DOUBLE_EQ(s.center(0), -8.0);
  EXPECT_DOUBLE_EQ(s.center(1), 0.0);
  EXPECT_DOUBLE_EQ(s.center(2), 8.0);
  EXPECT_DOUBLE_EQ(s.characteristic_spacing(), 8.0);
  const SlitArray single = SlitArray::single(0.0, 0.1);
  EXPECT_DOUBLE_EQ(single.characteristic_spacing(), single.width(0));
}

TEST(ObservationPoint, RequiresPositiveZpp) {
  EXPECT_THROW(ObservationPoint(0.0, 0.0), config_error);
  EXPECT_THROW(ObservationPoint(0.0, -1.0), config_error);
  EXPECT_NO_THROW(ObservationPoint(5.0, 1e-9));
}

TEST(Region, Validation) {
  EXPECT_THROW(Region(1.0, -1.0, 0.1, 1.0), config_error);
  EXPECT_THROW(Region(-1.0, 1.0, 0.0, 1.0), config_error);
  EXPECT_THROW(Region(-1.0, 1.0, 2.0, 1.0), config_error);
  const Region r(-1.0, 1.0, 0.5, 2.0);
  EXPECT_TRUE(r.contains(0.0, 1.0));
  EXPECT_FALSE(r.contains(0.0, 0.4));
  EXPECT_FALSE(r.contains(1.5, 1.0));
}

TEST(ScaleConfiguration, IdentityAtUnitScale) {
  const SlitArray s({-0.05, 0.05});
  const ObservationPoint p(3.0, 10.0);
  const auto [s2, p2] = scale_configuration(s, p, 1.0);
  EXPECT_EQ(s2, s);
  EXPECT_EQ(p2, p);
}

TEST(ScaleConfiguration, DefinitionOfTheMap) {
  const SlitArray s({0.0, 1.0});
  const ObservationPoint p(2.0, 4.0);
  const auto [s2, p2] = scale_configuration(s, p, 3.0);
  EXPECT_DOUBLE_EQ(s2.edges()[0], 0.0);
  EXPECT_DOUBLE_EQ(s2.edges()[1], 3.0);
  EXPECT_DOUBLE_EQ(p2.x2, 6.0);
  EXPECT_DOUBLE_EQ(p2.zpp, 36.0);
}

TEST(ScaleConfiguration, PreservesWidthToSpacingRatio) {
  // double slit, SW 0.1, ISD 8
  const SlitArray s({-4.05, -3.95, 3.95, 4.05});
  const auto [s10, p10] =
      scale_configuration(s, ObservationPoint(1.0, 2.0), 10.0);
  EXPECT_NEAR(s10.width(0), 1.0, 1e-12);
  EXPECT_NEAR(s10.characteristic_spacing(), 80.0, 1e-12);
  EXPECT_DOUBLE_EQ(p10.zpp, 200.0);
}

TEST(ScaleConfiguration, RejectsBadFactors) {
  const SlitArray s({0.0, 1.0});
  const ObservationPoint p(0.0, 1.0);
  EXPECT_THROW(scale_configuration(s, p, 0.0), config_error);
  EXPECT_THROW(scale_configuration(s, p, -2.0), config_error);
  EXPECT_THROW(scale_configuration(s, p, std::nan("")), config_error);
}

TEST(ScaleConfiguration, Composes) {
  const SlitArray s({-0.3, 0.7, 1.1, 2.9});
  const ObservationPoint p(0.25, 3.5);
  const auto [sa, pa] = scale_configuration(s, p, 2.5);
  const auto [sab, pab] = scale_configuration(sa, pa, 4.0);
  const auto [direct_s, direct_p] = scale_configuration(s, p, 10.0);
  for (std::size_t i = 0; i < s.edges().size(); ++i)
    EXPECT_NEAR(sab.edges()[i], direct_s.edges()[i],
                1e-12 * std::abs(direct_s.edges()[i]));
  EXPECT_NEAR(pab.zpp, direct_p.zpp, 1e-12 * direct_p.zpp);
}

TEST(ReducedCoordinates, DirectSubstitution) {
  const SlitArray s({1.0, 2.0});
  {
    // edge at x2: both coordinates vanish
    const auto rc = reduced_coordinates(s, ObservationPoint(1.0, 2.0));
    EXPECT_DOUBLE_EQ(rc[0].q, 0.0);
    EXPECT_DOUBLE_EQ(rc[0].u, 0.0);
  }
  {
    // e - x2 = 1, zpp = pi -> q = 1
    const auto rc =
        reduced_coordinates(s, ObservationPoint(0.0, std::numbers::pi));
    EXPECT_DOUBLE_EQ(rc[0].q, 1.0);
  }
  {
    // e - x2 = 2, zpp = 2 -> u = 2
    const auto rc = reduced_coordinates(s, ObservationPoint(0.0, 2.0));
    EXPECT_DOUBLE_EQ(rc[1].u, 2.0);
  }
}

TEST(ReducedCoordinates, UAndQAreProportional) {
  const SlitArray s({-0.37, 0.12, 5.0, 6.25});
  const auto rc = reduced_coordinates(s, ObservationPoint(0.8, 7.3));
  const double k = std::sqrt(2.0 / std::numbers::pi);
  for (const auto& c : rc) EXPECT_NEAR(c.u, c.q * k, 1e-15 * std::abs(c.u));
}

TEST(ReducedCoordinates, ScaleInvariant) {
  const SlitArray s({-4.05, -3.95, 3.95, 4.05});
  const ObservationPoint p(1.7, 12.0);
  const auto base = reduced_coordinates(s, p);
  for (const double factor : {0.1, 10.0, 100.0}) {
    const auto [ss, ps] = scale_configuration(s, p, factor);
    const auto scaled = reduced_coordinates(ss, ps);
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_NEAR(scaled[i].q, base[i].q, 1e-12 * std::abs(base[i].q));
      EXPECT_NEAR(scaled[i].u, base[i].u, 1e-12 * std::abs(base[i].u));
    }
  }
}

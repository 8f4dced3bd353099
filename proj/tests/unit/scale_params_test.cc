// Copyright 2026 The Arbomis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arbomis/scale_params.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace arbomis {
namespace {

TEST(ScaleParamsTest, FaithfulSmallDeltaHasNoScales) {
  ScaleParams p = compute_scale_params(2, 16, 1.0, 1.0);
  EXPECT_EQ(p.theta, 0u);
  // Reference value from 50-digit arithmetic.
  EXPECT_EQ(p.lambda, 680126u);
}

TEST(ScaleParamsTest, FaithfulHugeDelta) {
  const std::size_t delta = std::size_t{1} << 40;
  ScaleParams p = compute_scale_params(1, delta, 1.0, 1.0);
  // log2 of the argument is 16.214004211...
  EXPECT_EQ(p.theta, 16u);
  EXPECT_EQ(p.lambda, 3223u);
  // rho_1 = 2 ln(2^40) 2^40 = 6.0969870782864836e13 exceeds delta.
  EXPECT_NEAR(p.rho(1), 60969870782864.836, 1e-2);
  EXPECT_GT(p.rho(1), static_cast<double>(delta));
}

TEST(ScaleParamsTest, DegenerateDelta) {
  ScaleParams p = compute_scale_params(3, 1, 1.0, 1e-12);
  EXPECT_EQ(p.theta, 0u);
  EXPECT_EQ(p.lambda, 0u);
  EXPECT_EQ(p.shatter_rounds(), 0u);
}

TEST(ScaleParamsTest, RejectsInvalidArguments) {
  EXPECT_THROW(compute_scale_params(0, 10), std::invalid_argument);
  EXPECT_THROW(compute_scale_params(1, 0), std::invalid_argument);
  EXPECT_THROW(compute_scale_params(1, 10, 0.5), std::invalid_argument);
  EXPECT_THROW(compute_scale_params(1, 10, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(compute_scale_params(1, 10, 1.0, -1.0), std::invalid_argument);
}

TEST(ScaleParamsTest, ScaledModeMultipliesLambdaAndConstant) {
  const double s = 1e-6;
  ScaleParams faithful = compute_scale_params(2, 40, 1.0, 1.0);
  ScaleParams scaled = compute_scale_params(2, 40, 1.0, s);
  const double ln = std::log(40.0);
  const double raw = 8.0 * 4.0 * (32.0 * 64.0 + 1.0) * std::log(260.0 * 16.0 * ln * ln);
  EXPECT_EQ(faithful.lambda, static_cast<std::size_t>(std::ceil(raw)));
  EXPECT_EQ(scaled.lambda, static_cast<std::size_t>(std::ceil(raw * s)));
  EXPECT_DOUBLE_EQ(scaled.big_constant(), 1176.0 * 16.0 * 1024.0 * s);
  EXPECT_DOUBLE_EQ(scaled.rho(2), faithful.rho(2));
  EXPECT_DOUBLE_EQ(scaled.lo_threshold(), scaled.big_constant() * ln * ln + 2.0);
  EXPECT_DOUBLE_EQ(scaled.hi_degree_bound(), 1176.0 * 4.0 * 1024.0 * s * ln * ln);
}

TEST(ScaleParamsTest, ConstScaleForThetaHitsTarget) {
  for (std::size_t alpha = 1; alpha <= 4; ++alpha) {
    for (std::size_t delta : {2u, 3u, 7u, 16u, 31u, 100u, 1000u}) {
      for (std::size_t theta = 1; theta <= 6; ++theta) {
        const double s = const_scale_for_theta(alpha, delta, theta);
        EXPECT_EQ(compute_scale_params(alpha, delta, 1.0, s).theta, theta)
            << alpha << " " << delta << " " << theta;
      }
    }
  }
}

TEST(ScaleParamsTest, Cuts) {
  ScaleParams p = compute_scale_params(2, 64, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(p.high_degree_cut(3), 8.0 + 2.0);
  EXPECT_DOUBLE_EQ(p.bad_count_cut(3), 2.0);
  EXPECT_EQ(p.shatter_rounds(), p.theta * (3 * p.lambda + 2));
}

}  // namespace
}  // namespace arbomis

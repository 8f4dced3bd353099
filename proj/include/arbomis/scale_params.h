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

#pragma once

#include <cstddef>

namespace arbomis {

/// Scale and iteration parameters of the shattering phase.
///
/// With const_scale = 1 the constants are the faithful ones. A smaller
/// const_scale multiplies both the 1176 * 16 * alpha^10 constant and the
/// iteration count, so that the scale loop runs on desk-sized graphs.
struct ScaleParams {
  std::size_t alpha = 1;
  std::size_t delta = 1;
  double p_const = 1.0;
  double const_scale = 1.0;
  std::size_t theta = 0;
  std::size_t lambda = 0;

  /// 1176 * 16 * alpha^10 * const_scale.
  double big_constant() const;
  /// Competitiveness threshold rho_k = 8 ln(delta) * delta / 2^(k+1).
  double rho(std::size_t k) const;
  /// Degree above which a neighbor counts as high at the end of scale k.
  double high_degree_cut(std::size_t k) const;
  /// A node is bad when more than this many neighbors are high.
  double bad_count_cut(std::size_t k) const;
  /// Active nodes of degree at most this go to V_lo.
  double lo_threshold() const;
  /// 1176 * 4 * alpha^10 * ln^2(delta) * const_scale.
  double hi_degree_bound() const;
  /// Communication rounds of the full scale loop: theta * (3 lambda + 2).
  std::size_t shatter_rounds() const { return theta * (3 * lambda + 2); }
};

/// Throws std::invalid_argument unless alpha >= 1, delta >= 1, p_const >= 1
/// and const_scale > 0.
ScaleParams compute_scale_params(std::size_t alpha, std::size_t delta, double p_const = 1.0,
                                 double const_scale = 1.0);

/// Largest const_scale for which theta reaches `theta` (for delta >= 2).
double const_scale_for_theta(std::size_t alpha, std::size_t delta, std::size_t theta);

}  // namespace arbomis

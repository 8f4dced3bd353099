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

#include <cmath>
#include <stdexcept>

namespace arbomis {
namespace {

double alpha_constant(std::size_t alpha) {
  return 1176.0 * 16.0 * std::pow(static_cast<double>(alpha), 10);
}

}  // namespace

double ScaleParams::big_constant() const { return alpha_constant(alpha) * const_scale; }

double ScaleParams::rho(std::size_t k) const {
  const double d = static_cast<double>(delta);
  return std::ldexp(8.0 * std::log(d) * d, -static_cast<int>(k + 1));
}

double ScaleParams::high_degree_cut(std::size_t k) const {
  return std::ldexp(static_cast<double>(delta), -static_cast<int>(k)) +
         static_cast<double>(alpha);
}

double ScaleParams::bad_count_cut(std::size_t k) const {
  return std::ldexp(static_cast<double>(delta), -static_cast<int>(k + 2));
}

double ScaleParams::lo_threshold() const {
  const double ln = std::log(static_cast<double>(delta));
  return big_constant() * ln * ln + static_cast<double>(alpha);
}

double ScaleParams::hi_degree_bound() const {
  const double ln = std::log(static_cast<double>(delta));
  return big_constant() / 4.0 * ln * ln;
}

ScaleParams compute_scale_params(std::size_t alpha, std::size_t delta, double p_const,
                                 double const_scale) {
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
  if (delta < 1) throw std::invalid_argument("delta must be at least 1");
  if (!(p_const >= 1.0)) throw std::invalid_argument("p_const must be at least 1");
  if (!(const_scale > 0.0) || !std::isfinite(const_scale)) {
    throw std::invalid_argument("const_scale must be positive");
  }
  ScaleParams p;
  p.alpha = alpha;
  p.delta = delta;
  p.p_const = p_const;
  p.const_scale = const_scale;
  if (delta < 2) return p;  // ln(delta) = 0: no scales, no iterations.

  const double a = static_cast<double>(alpha);
  const double ln = std::log(static_cast<double>(delta));
  const double arg = static_cast<double>(delta) / (p.big_constant() * ln * ln);
  if (arg > 1.0) p.theta = static_cast<std::size_t>(std::floor(std::log2(arg)));

  const double a2 = a * a;
  const double lambda = const_scale * p_const * 8.0 * a2 * (32.0 * a2 * a2 * a2 + 1.0) *
                        std::log(260.0 * a2 * a2 * ln * ln);
  p.lambda = lambda > 0.0 ? static_cast<std::size_t>(std::ceil(lambda)) : 0;
  return p;
}

double const_scale_for_theta(std::size_t alpha, std::size_t delta, std::size_t theta) {
  if (delta < 2) throw std::invalid_argument("delta must be at least 2");
  const double ln = std::log(static_cast<double>(delta));
  const double target = std::ldexp(1.0, static_cast<int>(theta));
  return static_cast<double>(delta) / (target * alpha_constant(alpha) * ln * ln) *
         (1.0 - 0x1.0p-40);
}

}  // namespace arbomis

// Copyright 2026 The qbm-infogeo Authors
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

// Scalar pieces of the belief-propagation channel: the high-peak tent density
// and its Fourier transform, the spectral filter applied per eigen-gap.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbm {

/// p(t) = (2/pi) ln|coth(pi t / 2)|. Undefined at t = 0.
inline double tent_density(double t) {
  if (t == 0.0) throw std::invalid_argument("tent_density: logarithmic singularity at t = 0");
  const double x = std::numbers::pi * std::abs(t) / 2.0;
  // -ln tanh x = ln(1 + e^{-2x}) - ln(1 - e^{-2x})
  const double e = std::exp(-2.0 * x);
  const double lower = e < 0.5 ? std::log1p(-e) : std::log(-std::expm1(-2.0 * x));
  return (2.0 / std::numbers::pi) * (std::log1p(e) - lower);
}

/// Second derivative of p for t > 0.
inline double tent_density_second_derivative(double t) {
  const double a = std::numbers::pi * std::abs(t);
  const double s = std::sinh(a);
  return 2.0 * std::numbers::pi * std::cosh(a) / (s * s);
}

/// f(delta) = tanh(delta/2) / (delta/2) = integral of p(t) e^{-i delta t} dt.
inline double filter_value(double delta) {
  if (std::abs(delta) < 1e-6) {
    const double d2 = delta * delta;
    return 1.0 - d2 / 12.0 + d2 * d2 / 120.0;
  }
  const double half = 0.5 * delta;
  return std::tanh(half) / half;
}

}  // namespace qbm

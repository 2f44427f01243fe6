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

#include "qbm/filter.hpp"
#include "qbm/gibbs.hpp"
#include "qbm/operator_core.hpp"
#include "qbm/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace qbm {

namespace detail {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace detail

/// Inverse-CDF sampler for the tent density on [-t_max, t_max].
///
/// The grid is symmetric about 0. Each cell carries its exact probability
/// mass and a linear density whose slope follows p, so the cumulative
/// distribution is exact at grid points and quadratic inside cells. The
/// central cell [-t_min, t_min] around the singularity is uniform.
/// Grid points on the half-line are equidistributed in (p'')^{1/3} + c/t,
/// which keeps the total-variation error of the linearized law ~1e-7.
class TentSampler {
 public:
  struct Options {
    double t_max = 12.0;
    double t_min = 1e-10;
    int points_per_half_line = 4096;
    double tv_limit = 1e-6;
  };

  TentSampler() : TentSampler(Options{}) {}

  explicit TentSampler(const Options& opt) : t_max_(opt.t_max) {
    const int m = opt.points_per_half_line;
    if (m < 16 || !(opt.t_min > 0.0) || !(opt.t_max > opt.t_min)) {
      throw std::invalid_argument("TentSampler: invalid options");
    }
    const std::vector<double> half = half_line_grid(opt.t_min, opt.t_max, m);
    const detail::GaussRule gl = detail::gauss_legendre(20);

    // Right half-line cells [half[k], half[k+1]].
    const std::size_t nh = half.size() - 1;
    std::vector<double> mass(nh);
    std::vector<double> slope(nh);
    for (std::size_t k = 0; k < nh; ++k) {
      const double a = half[k];
      const double b = half[k + 1];
      const double mid = 0.5 * (a + b);
      const double hw = 0.5 * (b - a);
      double acc = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        acc += gl.weights[q] * tent_density(mid + hw * gl.nodes[q]);
      }
      mass[k] = acc * hw;
      const double h = b - a;
      double s = (tent_density(b) - tent_density(a)) / h;
      // keep the linear density non-negative on the cell
      const double s_max = 2.0 * mass[k] / (h * h);
      slope[k] = std::clamp(s, -s_max, s_max);
    }
    // integral of p over [0, t_min]: -ln tanh x = -ln x + x^2/3 + O(x^4)
    const double c = std::numbers::pi / 2.0;
    const double tm = opt.t_min;
    const double center_half =
        (2.0 / std::numbers::pi) * (tm * (1.0 - std::log(c * tm)) + c * c * tm * tm * tm / 9.0);

    // Assemble the symmetric grid: -half reversed, then +half.
    grid_.reserve(2 * half.size());
    for (std::size_t k = half.size(); k-- > 0;) grid_.push_back(-half[k]);
    for (double t : half) grid_.push_back(t);
    const std::size_t cells = grid_.size() - 1;
    cell_mass_.resize(cells);
    cell_slope_.resize(cells);
    for (std::size_t k = 0; k < nh; ++k) {
      // left cell mirrored: index nh - 1 - k, slope negated
      cell_mass_[nh - 1 - k] = mass[k];
      cell_slope_[nh - 1 - k] = -slope[k];
      cell_mass_[nh + 1 + k] = mass[k];
      cell_slope_[nh + 1 + k] = slope[k];
    }
    cell_mass_[nh] = 2.0 * center_half;
    cell_slope_[nh] = 0.0;

    double total = 0.0;
    for (double mk : cell_mass_) total += mk;
    for (double& mk : cell_mass_) mk /= total;
    for (double& sk : cell_slope_) sk /= total;
    cdf_.resize(grid_.size());
    cdf_[0] = 0.0;
    for (std::size_t k = 0; k < cells; ++k) cdf_[k + 1] = cdf_[k] + cell_mass_[k];
    // pin the endpoint; accumulated round-off is ~1e-16
    cdf_.back() = 1.0;

    tv_ = total_variation(gl, total, center_half, half, mass, slope);
    if (!(tv_ <= opt.tv_limit)) {
      std::ostringstream os;
      os << "TentSampler: total-variation error " << tv_ << " exceeds " << opt.tv_limit;
      throw NumericError(os.str());
    }
  }

  /// Draw one t. Consumes exactly one uniform from the stream.
  double sample(RandomStream& rng) const { return quantile(rng.uniform()); }

  /// Inverse CDF of the linearized law.
  double quantile(double u) const {
    // bisection over the CDF nodes
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t k = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
    k = k == 0 ? 0 : k - 1;
    if (k >= cell_mass_.size()) k = cell_mass_.size() - 1;
    const double a = grid_[k];
    const double h = grid_[k + 1] - a;
    const double m = cell_mass_[k];
    const double s = cell_slope_[k];
    const double r = std::clamp(u - cdf_[k], 0.0, m);
    // in-cell density q(x) = m/h + s (x - h/2); solve int_0^x q = r
    const double q0 = m / h - 0.5 * s * h;
    const double disc = std::max(0.0, q0 * q0 + 2.0 * s * r);
    const double denom = q0 + std::sqrt(disc);
    const double x = denom > 0.0 ? 2.0 * r / denom : 0.0;
    return a + std::clamp(x, 0.0, h);
  }

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& cdf() const noexcept { return cdf_; }
  double t_max() const noexcept { return t_max_; }
  /// Total-variation distance between the sampled law and p(t), measured at build.
  double total_variation() const noexcept { return tv_; }

 private:
  static std::vector<double> half_line_grid(double t_min, double t_max, int m) {
    constexpr int kFine = 1 << 17;
    constexpr double kGeometricWeight = 0.03;
    const double l0 = std::log(t_min);
    const double l1 = std::log(t_max);
    std::vector<double> fine(kFine + 1);
    std::vector<double> cum(kFine + 1, 0.0);
    auto weight = [&](double t) {
      return std::cbrt(tent_density_second_derivative(t)) + kGeometricWeight / t;
    };
    for (int i = 0; i <= kFine; ++i) fine[i] = std::exp(l0 + (l1 - l0) * i / kFine);
    double prev = weight(fine[0]);
    for (int i = 1; i <= kFine; ++i) {
      const double cur = weight(fine[i]);
      cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (fine[i] - fine[i - 1]);
      prev = cur;
    }
    std::vector<double> out(static_cast<std::size_t>(m));
    out.front() = t_min;
    out.back() = t_max;
    std::size_t pos = 0;
    for (int k = 1; k + 1 < m; ++k) {
      const double target = cum.back() * k / (m - 1);
      while (pos + 1 < cum.size() && cum[pos + 1] < target) ++pos;
      const double frac = (target - cum[pos]) / (cum[pos + 1] - cum[pos]);
      out[static_cast<std::size_t>(k)] = fine[pos] + frac * (fine[pos + 1] - fine[pos]);
    }
    return out;
  }

  double total_variation(const detail::GaussRule& gl, double total, double center_half,
                         const std::vector<double>& half, const std::vector<double>& mass,
                         const std::vector<double>& slope) const {
    // right half-line; the left half is its mirror image
    double half_err = 0.0;
    for (std::size_t k = 0; k + 1 < half.size(); ++k) {
      const double a = half[k];
      const double b = half[k + 1];
      const double mid = 0.5 * (a + b);
      const double hw = 0.5 * (b - a);
      double acc = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double t = mid + hw * gl.nodes[q];
        const double model = (mass[k] / (b - a) + slope[k] * (t - mid)) / total;
        acc += gl.weights[q] * std::abs(tent_density(t) - model);
      }
      half_err += acc * hw;
    }
    // The central cell is bounded by the mass the two laws put there;
    // the truncated tails carry (4/pi^2) e^{-pi t_max} each.
    const double center = 2.0 * center_half * (1.0 + 1.0 / total);
    const double tails = 2.0 * (4.0 / (std::numbers::pi * std::numbers::pi)) *
                         std::exp(-std::numbers::pi * t_max_);
    return 0.5 * (2.0 * half_err + center + tails);
  }

  double t_max_;
  std::vector<double> grid_;
  std::vector<double> cdf_;
  std::vector<double> cell_mass_;
  std::vector<double> cell_slope_;
  double tv_ = 0.0;
};

/// Process-wide sampler with default options, built on first use.
inline const TentSampler& default_tent_sampler() {
  static const TentSampler sampler;
  return sampler;
}

inline double sample_t(const TentSampler& s, RandomStream& rng) { return s.sample(rng); }

/// Phi_theta(X) in the G eigenbasis: X_kl -> f(mu_k - mu_l) X_kl.
inline ComplexMatrix channel_in_eigenbasis(const ThermalState& ts, const ComplexMatrix& x_eig) {
  const RealVector& mu = ts.energies();
  ComplexMatrix out(x_eig.rows(), x_eig.cols());
  for (Eigen::Index k = 0; k < out.rows(); ++k) {
    for (Eigen::Index l = 0; l < out.cols(); ++l) {
      out(k, l) = filter_value(mu[k] - mu[l]) * x_eig(k, l);
    }
  }
  return out;
}

/// Phi_theta(X) = integral dt p(t) e^{-iGt} X e^{iGt}, evaluated exactly as a
/// spectral filter.
inline HermitianOperator apply_channel(const ThermalState& ts, const HermitianOperator& x) {
  detail::require_same_dim(x.matrix(), ts.rho.matrix(), "apply_channel");
  const ComplexMatrix out = ts.from_eigenbasis(channel_in_eigenbasis(ts, ts.to_eigenbasis(x.matrix())));
  return HermitianOperator((out + out.adjoint()) * 0.5);
}

/// e^{-iGt} X e^{iGt}.
inline ComplexMatrix evolve(const ThermalState& ts, const ComplexMatrix& x, double t) {
  const RealVector& mu = ts.energies();
  ComplexMatrix y = ts.to_eigenbasis(x);
  for (Eigen::Index k = 0; k < y.rows(); ++k) {
    for (Eigen::Index l = 0; l < y.cols(); ++l) {
      y(k, l) *= std::polar(1.0, -(mu[k] - mu[l]) * t);
    }
  }
  return ts.from_eigenbasis(y);
}

}  // namespace qbm

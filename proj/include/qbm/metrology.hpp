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

#include "qbm/gibbs.hpp"
#include "qbm/hamiltonian.hpp"
#include "qbm/info_geometry.hpp"
#include "qbm/operator_core.hpp"
#include "qbm/random.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace qbm {

struct CramerRaoReport {
  std::uint64_t n_copies = 1;
  /// pinv(I_FB) / n.
  RealMatrix bound_matrix;
  std::optional<RealMatrix> weight;
  /// Tr[W pinv(I_FB)] / n.
  std::optional<double> scalar_bound;
};

inline CramerRaoReport cr_bound(const ParamHamiltonian& h, std::uint64_t n,
                                const std::optional<RealMatrix>& weight = std::nullopt) {
  if (n < 1) throw std::invalid_argument("cr_bound: n must be at least 1");
  const RealMatrix inv = pseudo_inverse(fb_exact(h).values);
  CramerRaoReport r;
  r.n_copies = n;
  r.bound_matrix = inv / static_cast<double>(n);
  if (weight) {
    const RealMatrix& w = *weight;
    if (w.rows() != h.num_terms() || w.cols() != h.num_terms()) {
      throw std::invalid_argument("cr_bound: weight matrix has the wrong shape");
    }
    const double scale = std::max(1.0, max_abs(w));
    if (max_abs(RealMatrix(w - w.transpose())) > 1e-12 * scale) {
      throw std::invalid_argument("cr_bound: weight matrix is not symmetric");
    }
    if (min_eigenvalue(w) < -1e-12 * scale) throw std::invalid_argument("cr_bound: weight matrix is not PSD");
    r.weight = w;
    r.scalar_bound = (w * inv).trace() / static_cast<double>(n);
  }
  return r;
}

/// A projective measurement {P_r} with outcome labels and probabilities
/// Tr[P_r rho] at the point where it was built.
struct ProjectiveMeasurement {
  std::vector<double> labels;
  std::vector<ComplexMatrix> projectors;
  std::vector<double> outcome_probs;

  std::size_t size() const noexcept { return projectors.size(); }
};

using SLDMeasurement = ProjectiveMeasurement;

namespace detail {

inline std::vector<double> outcome_probabilities(const std::vector<ComplexMatrix>& projectors,
                                                 const DensityMatrix& rho) {
  std::vector<double> p;
  p.reserve(projectors.size());
  double total = 0.0;
  for (const auto& pr : projectors) {
    const double x = expectation(pr, rho);
    if (x < -1e-12) throw NumericError("measurement: negative outcome probability");
    p.push_back(std::max(x, 0.0));
    total += p.back();
  }
  if (std::abs(total - 1.0) > 1e-10) throw NumericError("measurement: probabilities do not sum to 1");
  return p;
}

}  // namespace detail

/// Projective measurement in the eigenbasis of the SLD L_j. Eigenvalues within
/// 1e-10 (relative) of each other share one projector.
inline SLDMeasurement sld_measurement(const ParamHamiltonian& h, int j) {
  h.check_index(j);
  const ThermalState ts = thermal_state(h);
  const HermitianOperator l = sld_operator(ts, h.term_matrices()[static_cast<std::size_t>(j)]);
  const SpectralDecomposition sd = spectral(l);
  const double gap = 1e-10 * std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  SLDMeasurement m;
  const Eigen::Index d = sd.dim();
  for (Eigen::Index k = 0; k < d;) {
    Eigen::Index end = k + 1;
    while (end < d && sd.eigenvalues[end] - sd.eigenvalues[end - 1] <= gap) ++end;
    const auto block = sd.eigenvectors.middleCols(k, end - k);
    m.projectors.push_back(block * block.adjoint());
    m.labels.push_back(sd.eigenvalues.segment(k, end - k).mean());
    k = end;
  }
  m.outcome_probs = detail::outcome_probabilities(m.projectors, ts.rho);
  return m;
}

/// Measurement of every qubit in the Z basis; outcome r is the basis index.
inline ProjectiveMeasurement computational_basis_measurement(const ParamHamiltonian& h) {
  const ThermalState ts = thermal_state(h);
  ProjectiveMeasurement m;
  for (Eigen::Index k = 0; k < h.dim(); ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(h.dim(), h.dim());
    p(k, k) = 1.0;
    m.projectors.push_back(std::move(p));
    m.labels.push_back(static_cast<double>(k));
  }
  m.outcome_probs = detail::outcome_probabilities(m.projectors, ts.rho);
  return m;
}

/// Probability floor below which an outcome is left out of the Fisher sum.
inline constexpr double kProbabilityFloor = 1e-14;

/// F_c = sum_r (d_j p_r)^2 / p_r for the outcome law of `m` at the current theta.
inline double classical_fisher_info(const ParamHamiltonian& h, int j, const ProjectiveMeasurement& m) {
  h.check_index(j);
  if (m.projectors.empty()) throw std::invalid_argument("classical_fisher_info: empty measurement");
  for (const auto& p : m.projectors) detail::require_same_dim(p, ComplexMatrix(h.dim(), h.dim()), "classical_fisher_info");
  const ThermalState ts = thermal_state(h);
  const ComplexMatrix drho = thermal_derivative(ts, h.term_matrices()[static_cast<std::size_t>(j)]);
  double f = 0.0;
  for (const auto& pr : m.projectors) {
    const double p = expectation(pr, ts.rho);
    const double dp = detail::real_with_check((pr * drho).trace(), 1.0, "classical_fisher_info");
    if (p > kProbabilityFloor) {
      f += dp * dp / p;
      continue;
    }
    const double bound = dp == 0.0 ? 0.0 : dp * dp / std::max(std::abs(p), std::numeric_limits<double>::min());
    if (bound > 1e-10) {
      throw NumericError("classical_fisher_info: vanishing outcome probability with nonzero derivative");
    }
  }
  return f;
}

struct MLEResult {
  /// Mean of the per-repeat estimates.
  double estimate = 0.0;
  std::vector<double> estimates;
  std::uint64_t n_samples = 0;
  int repeats = 0;
  /// Unbiased sample variance across repeats.
  double empirical_variance = 0.0;
  /// 1 / (n I_FB_jj).
  double crb = 0.0;
  double ratio = 0.0;
  double fisher_exact = 0.0;
  double fisher_classical = 0.0;
};

namespace detail {

/// Log-likelihood of outcome counts as a function of theta_j, with the
/// measurement held fixed.
class LikelihoodFunction {
 public:
  LikelihoodFunction(const ParamHamiltonian& h, int j, const ProjectiveMeasurement& m,
                     std::vector<std::uint64_t> counts)
      : h_(h), j_(j), m_(m), counts_(std::move(counts)) {}

  double value(double x) const {
    const ThermalState ts = thermal_state(at(x));
    double acc = 0.0;
    for (std::size_t r = 0; r < counts_.size(); ++r) {
      if (counts_[r] == 0) continue;
      const double p = expectation(m_.projectors[r], ts.rho);
      if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
      acc += static_cast<double>(counts_[r]) * std::log(p);
    }
    return acc;
  }

  double derivative(double x) const {
    const ParamHamiltonian hx = at(x);
    const ThermalState ts = thermal_state(hx);
    const ComplexMatrix drho = thermal_derivative(ts, hx.term_matrices()[static_cast<std::size_t>(j_)]);
    double acc = 0.0;
    for (std::size_t r = 0; r < counts_.size(); ++r) {
      if (counts_[r] == 0) continue;
      const double p = expectation(m_.projectors[r], ts.rho);
      const double dp = (m_.projectors[r] * drho).trace().real();
      acc += static_cast<double>(counts_[r]) * dp / p;
    }
    return acc;
  }

 private:
  ParamHamiltonian at(double x) const {
    RealVector th = h_.theta();
    th[j_] = x;
    return h_.with_theta(std::move(th));
  }

  const ParamHamiltonian& h_;
  int j_;
  const ProjectiveMeasurement& m_;
  std::vector<std::uint64_t> counts_;
};

/// Maximizer of a smooth unimodal f on [lo, hi]: golden-section search to
/// localize, then bisection on f' to `tol`. Empty if the maximum sits on the
/// boundary.
inline std::optional<double> maximize_1d(const std::function<double(double)>& f,
                                         const std::function<double(double)>& df, double lo, double hi,
                                         double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-3 * (hi - lo)) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  // Widen the golden bracket until f' changes sign inside it.
  double step = b - a;
  while (df(a) <= 0.0) {
    if (a <= lo) return std::nullopt;
    a = std::max(lo, a - step);
    step *= 2.0;
  }
  step = b - a;
  while (df(b) >= 0.0) {
    if (b >= hi) return std::nullopt;
    b = std::min(hi, b + step);
    step *= 2.0;
  }
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (df(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Categorical draw by inverse CDF.
inline std::size_t draw_outcome(const std::vector<double>& cdf, RandomStream& rng) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace detail

/// Minimum copies per experiment accepted by mle_single_param.
inline constexpr std::uint64_t kMinMleSamples = 1000;

/// Repeated maximum-likelihood estimation of theta_j from n outcomes of the SLD
/// measurement built at the true theta. Other parameters are treated as known.
/// Repeat r draws from stream r of `seed`.
inline MLEResult mle_single_param(const ParamHamiltonian& h, int j, std::uint64_t n, int repeats,
                                  std::uint64_t seed, int workers = 1) {
  h.check_index(j);
  if (n < kMinMleSamples) {
    throw std::invalid_argument("mle_single_param: n must be at least " + std::to_string(kMinMleSamples));
  }
  if (repeats < 2) throw std::invalid_argument("mle_single_param: need at least 2 repeats");
  const SLDMeasurement m = sld_measurement(h, j);
  std::vector<double> cdf(m.outcome_probs.size());
  std::partial_sum(m.outcome_probs.begin(), m.outcome_probs.end(), cdf.begin());
  const double truth = h.theta()[j];

  MLEResult res;
  res.n_samples = n;
  res.repeats = repeats;
  res.estimates.assign(static_cast<std::size_t>(repeats), 0.0);
  parallel_for(static_cast<std::size_t>(repeats), workers, [&](std::size_t r) {
    RandomStream rng = RandomStream::split(seed, r);
    std::vector<std::uint64_t> counts(m.size(), 0);
    for (std::uint64_t k = 0; k < n; ++k) ++counts[detail::draw_outcome(cdf, rng)];
    const detail::LikelihoodFunction like(h, j, m, std::move(counts));
    const auto f = [&](double x) { return like.value(x); };
    const auto df = [&](double x) { return like.derivative(x); };
    std::optional<double> est = detail::maximize_1d(f, df, truth - 2.0, truth + 2.0, 1e-8);
    if (!est) est = detail::maximize_1d(f, df, truth - 4.0, truth + 4.0, 1e-8);
    if (!est) {
      throw NumericError("mle_single_param: likelihood maximum not bracketed in [theta - 4, theta + 4] (repeat " +
                         std::to_string(r) + ")");
    }
    res.estimates[r] = *est;
  });

  const double mean = std::accumulate(res.estimates.begin(), res.estimates.end(), 0.0) / repeats;
  double ss = 0.0;
  for (double e : res.estimates) ss += (e - mean) * (e - mean);
  res.estimate = mean;
  res.empirical_variance = ss / (repeats - 1);
  res.fisher_exact = fb_exact(h).values(j, j);
  res.fisher_classical = classical_fisher_info(h, j, m);
  res.crb = 1.0 / (static_cast<double>(n) * res.fisher_exact);
  res.ratio = res.empirical_variance / res.crb;
  return res;
}

}  // namespace qbm

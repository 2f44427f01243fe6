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

#include "qbm/bp_channel.hpp"
#include "qbm/gibbs.hpp"
#include "qbm/hamiltonian.hpp"
#include "qbm/info_geometry.hpp"
#include "qbm/operator_core.hpp"
#include "qbm/random.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace qbm {

/// N = ceil(2 ln(2/delta) / eps^2): Hoeffding budget for a +-1 variable.
inline std::uint64_t hoeffding_shots(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("hoeffding_shots: need epsilon > 0 and delta in (0, 1)");
  }
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0 / delta) / (epsilon * epsilon)));
}

struct ShotConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t master_seed = 0;

  ShotConfig() = default;
  ShotConfig(double eps, double del, std::uint64_t seed) : epsilon(eps), delta(del), master_seed(seed) {
    (void)shots();
  }

  std::uint64_t shots() const { return hoeffding_shots(epsilon, delta); }
};

/// One estimated quantity. For a composed matrix element both terms are set
/// and value = first_term - second_term.
struct EstimatorReport {
  double value = 0.0;
  std::uint64_t shots = 0;
  std::optional<double> first_term;
  std::optional<double> second_term;
  std::optional<double> exact_reference;
};

namespace detail {

inline void require_unitary(const ComplexMatrix& u, const char* what) {
  detail::require_square(u, what);
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  if (max_abs(ComplexMatrix(u.adjoint() * u - id)) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
  }
}

}  // namespace detail

/// Probability of reading 0 on the control qubit of the Hadamard test with
/// controlled unitary |0><0| (x) U0 + |1><1| (x) U1:
///   p_0 = (2 + Tr[(U1^dagger U0 + U0^dagger U1) rho]) / 4.
inline double hadamard_test_prob(const ComplexMatrix& u0, const ComplexMatrix& u1,
                                 const DensityMatrix& rho) {
  detail::require_unitary(u0, "hadamard_test_prob: U0");
  detail::require_unitary(u1, "hadamard_test_prob: U1");
  detail::require_same_dim(u0, u1, "hadamard_test_prob");
  detail::require_same_dim(u0, rho.matrix(), "hadamard_test_prob");
  const ComplexMatrix m = u1.adjoint() * u0 + u0.adjoint() * u1;
  const double tr = expectation(HermitianOperator(m), rho);
  return std::clamp((2.0 + tr) / 4.0, 0.0, 1.0);
}

/// Circuit unitaries of the first-term estimators at evolution time s:
/// U0 = e^{-iGs}, U1 = G_i e^{-iGs} G_j. The Fisher-Bures circuit uses
/// s = t1 - t2, the Kubo-Mori circuit s = t.
inline std::pair<ComplexMatrix, ComplexMatrix> first_term_unitaries(const ParamHamiltonian& h, int i,
                                                                    int j, double s) {
  h.check_index(i);
  h.check_index(j);
  const ThermalState ts = thermal_state(h);
  const RealVector& mu = ts.energies();
  Eigen::VectorXcd phases(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) phases[k] = std::polar(1.0, -mu[k] * s);
  ComplexMatrix u0 = ts.from_eigenbasis(ComplexMatrix(phases.asDiagonal()));
  ComplexMatrix u1 = h.term_matrices()[static_cast<std::size_t>(i)] * u0 *
                     h.term_matrices()[static_cast<std::size_t>(j)];
  return {std::move(u0), std::move(u1)};
}

namespace detail {

/// Outcome-law simulator for the first-term circuits. For A, B in the G
/// eigenbasis, Re Tr[e^{iGs} A e^{-iGs} B rho] = sum_kl Re(C_kl e^{i D_kl s})
/// with C_kl = A_kl B_lk w_k and D_kl = mu_k - mu_l; this equals
/// Tr[(U1^dagger U0 + U0^dagger U1) rho] / 2 for the unitaries above.
class InterferenceSampler {
 public:
  InterferenceSampler(const ThermalState& ts, const ComplexMatrix& a_eig, const ComplexMatrix& b_eig) {
    const RealVector& mu = ts.energies();
    const RealVector& w = ts.weights;
    for (Eigen::Index k = 0; k < a_eig.rows(); ++k) {
      for (Eigen::Index l = 0; l < a_eig.cols(); ++l) {
        const Complex c = a_eig(k, l) * b_eig(l, k) * w[k];
        if (c == Complex(0.0, 0.0)) continue;
        coeff_.push_back(c);
        gap_.push_back(mu[k] - mu[l]);
      }
    }
  }

  double overlap(double s) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < coeff_.size(); ++q) {
      const double phase = gap_[q] * s;
      acc += coeff_[q].real() * std::cos(phase) - coeff_[q].imag() * std::sin(phase);
    }
    return acc;
  }

  /// One run of the circuit: returns (-1)^b.
  int shot(double s, RandomStream& rng) const {
    const double p0 = std::clamp(0.5 * (1.0 + overlap(s)), 0.0, 1.0);
    return rng.bernoulli(p0) ? 1 : -1;
  }

 private:
  std::vector<Complex> coeff_;
  std::vector<double> gap_;
};

/// Algorithm 1 (two_times) or Algorithm 2 body: N shots, mean of (-1)^b.
inline double first_term_shots(const ThermalState& ts, const ComplexMatrix& a_eig,
                               const ComplexMatrix& b_eig, bool two_times, std::uint64_t n,
                               RandomStream& rng) {
  const InterferenceSampler sampler(ts, a_eig, b_eig);
  const TentSampler& tent = default_tent_sampler();
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    double s = tent.sample(rng);
    if (two_times) s -= tent.sample(rng);
    sum += sampler.shot(s, rng);
  }
  return static_cast<double>(sum) / static_cast<double>(n);
}

/// One +-1 outcome of measuring a Pauli observable whose mean is `mean`.
inline int pauli_outcome(double mean, RandomStream& rng) {
  return rng.bernoulli(std::clamp(0.5 * (1.0 + mean), 0.0, 1.0)) ? 1 : -1;
}

/// Mean of s_a * s_b over N pairs of independent copies.
inline double product_shots(double mean_a, double mean_b, std::uint64_t n, RandomStream& rng) {
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const int sa = pauli_outcome(mean_a, rng);
    const int sb = pauli_outcome(mean_b, rng);
    sum += sa * sb;
  }
  return static_cast<double>(sum) / static_cast<double>(n);
}

/// Mean of N single-copy +-1 outcomes.
inline double pauli_mean_shots(double mean, std::uint64_t n, RandomStream& rng) {
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) sum += pauli_outcome(mean, rng);
  return static_cast<double>(sum) / static_cast<double>(n);
}

enum class StreamTag : std::uint64_t { FbFirst = 1, KmFirst = 2, Product = 3, Gradient = 4, Moment = 5 };

inline std::uint64_t stream_index(StreamTag tag, int i, int j) {
  return (static_cast<std::uint64_t>(tag) << 48) ^ (static_cast<std::uint64_t>(i) << 24) ^
         static_cast<std::uint64_t>(j);
}

inline void require_pauli_terms(const ParamHamiltonian& h) {
  if (!validate_terms(h).all_valid) {
    throw std::invalid_argument("shot estimators require Hermitian unitary terms");
  }
}

}  // namespace detail

/// Algorithm 1: estimates 1/2 <{Phi(G_i), Phi(G_j)}>.
inline EstimatorReport estimate_fb_first_term(const ParamHamiltonian& h, int i, int j,
                                              const ShotConfig& cfg, RandomStream& rng) {
  h.check_index(i);
  h.check_index(j);
  detail::require_pauli_terms(h);
  const detail::EigenFrame frame(h.term_matrices(), h.theta());
  const std::uint64_t n = cfg.shots();
  EstimatorReport r;
  r.value = detail::first_term_shots(frame.state, frame.terms[static_cast<std::size_t>(i)],
                                     frame.terms[static_cast<std::size_t>(j)], true, n, rng);
  r.shots = n;
  r.first_term = r.value;
  r.exact_reference = frame.fb_first(i, j);
  return r;
}

inline EstimatorReport estimate_fb_first_term(const ParamHamiltonian& h, int i, int j,
                                              const ShotConfig& cfg) {
  RandomStream rng = RandomStream::split(
      cfg.master_seed, detail::stream_index(detail::StreamTag::FbFirst, i, j));
  return estimate_fb_first_term(h, i, j, cfg, rng);
}

/// Algorithm 2: estimates 1/2 <{G_i, Phi(G_j)}>.
inline EstimatorReport estimate_km_first_term(const ParamHamiltonian& h, int i, int j,
                                              const ShotConfig& cfg, RandomStream& rng) {
  h.check_index(i);
  h.check_index(j);
  detail::require_pauli_terms(h);
  const detail::EigenFrame frame(h.term_matrices(), h.theta());
  const std::uint64_t n = cfg.shots();
  EstimatorReport r;
  r.value = detail::first_term_shots(frame.state, frame.terms[static_cast<std::size_t>(i)],
                                     frame.terms[static_cast<std::size_t>(j)], false, n, rng);
  r.shots = n;
  r.first_term = r.value;
  r.exact_reference = frame.km_first(i, j);
  return r;
}

inline EstimatorReport estimate_km_first_term(const ParamHamiltonian& h, int i, int j,
                                              const ShotConfig& cfg) {
  RandomStream rng = RandomStream::split(
      cfg.master_seed, detail::stream_index(detail::StreamTag::KmFirst, i, j));
  return estimate_km_first_term(h, i, j, cfg, rng);
}

/// Two-copy estimate of <G_i><G_j>: measure G_i and G_j on independent copies.
inline EstimatorReport estimate_product_term(const ParamHamiltonian& h, int i, int j,
                                             const ShotConfig& cfg, RandomStream& rng) {
  h.check_index(i);
  h.check_index(j);
  detail::require_pauli_terms(h);
  const ThermalState ts = thermal_state(h);
  const double mi = expectation(h.term_matrices()[static_cast<std::size_t>(i)], ts.rho);
  const double mj = expectation(h.term_matrices()[static_cast<std::size_t>(j)], ts.rho);
  const std::uint64_t n = cfg.shots();
  EstimatorReport r;
  r.value = detail::product_shots(mi, mj, n, rng);
  r.shots = n;
  r.second_term = r.value;
  r.exact_reference = mi * mj;
  return r;
}

inline EstimatorReport estimate_product_term(const ParamHamiltonian& h, int i, int j,
                                             const ShotConfig& cfg) {
  RandomStream rng = RandomStream::split(
      cfg.master_seed, detail::stream_index(detail::StreamTag::Product, i, j));
  return estimate_product_term(h, i, j, cfg, rng);
}

/// One matrix element: first term minus product term, independent budgets N each.
inline EstimatorReport estimate_element(const ParamHamiltonian& h, MetricKind kind, int i, int j,
                                        const ShotConfig& cfg) {
  const EstimatorReport first = kind == MetricKind::FisherBures ? estimate_fb_first_term(h, i, j, cfg)
                                                                : estimate_km_first_term(h, i, j, cfg);
  const EstimatorReport second = estimate_product_term(h, i, j, cfg);
  EstimatorReport r;
  r.first_term = first.value;
  r.second_term = second.value;
  r.value = first.value - second.value;
  r.shots = first.shots + second.shots;
  r.exact_reference = *first.exact_reference - *second.exact_reference;
  return r;
}

struct MatrixEstimate {
  InfoMatrix matrix;
  std::uint64_t total_shots = 0;
  /// max |estimate - exact| elementwise, when requested.
  std::optional<double> max_abs_deviation;
};

/// Shot estimate of all J^2 elements, symmetrized. Element (i, j) draws from
/// its own stream, so the result does not depend on the worker count.
inline MatrixEstimate estimate_matrix(const ParamHamiltonian& h, MetricKind kind, const ShotConfig& cfg,
                                      int workers = 1, bool compare_exact = false) {
  const int n = h.num_terms();
  std::vector<EstimatorReport> reports(static_cast<std::size_t>(n * n));
  parallel_for(reports.size(), workers, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n;
    const int j = static_cast<int>(idx) % n;
    reports[idx] = estimate_element(h, kind, i, j, cfg);
  });
  RealMatrix raw(n, n);
  MatrixEstimate out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& r = reports[static_cast<std::size_t>(i * n + j)];
      raw(i, j) = r.value;
      out.total_shots += r.shots;
    }
  }
  out.matrix = InfoMatrix{(raw + raw.transpose()) * 0.5, kind, InfoMethod::ShotEstimate, h.theta()};
  if (compare_exact) {
    const InfoMatrix exact = info_exact(h, kind);
    out.max_abs_deviation = max_abs(RealMatrix(out.matrix.values - exact.values));
  }
  return out;
}

}  // namespace qbm

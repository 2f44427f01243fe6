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
#include "qbm/operator_core.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qbm {

enum class MetricKind { FisherBures, KuboMori };
enum class InfoMethod { TheoremClosedForm, SpectralOracle, ShotEstimate };

inline std::string_view to_string(MetricKind k) {
  return k == MetricKind::FisherBures ? "fb" : "km";
}

inline std::string_view to_string(InfoMethod m) {
  switch (m) {
    case InfoMethod::TheoremClosedForm: return "exact";
    case InfoMethod::SpectralOracle: return "spectral";
    case InfoMethod::ShotEstimate: return "shot";
  }
  return "?";
}

/// A J x J information matrix and how it was produced.
struct InfoMatrix {
  RealMatrix values;
  MetricKind kind = MetricKind::FisherBures;
  InfoMethod method = InfoMethod::TheoremClosedForm;
  RealVector theta;

  Eigen::Index size() const noexcept { return values.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values(i, j); }
  double min_eigenvalue() const { return qbm::min_eigenvalue(values); }
  double condition_number() const { return qbm::condition_number(values); }
};

/// Asymmetry allowed before symmetrizing an exactly computed matrix.
inline constexpr double kSymmetryTolerance = 1e-9;
/// Imaginary residue allowed on quantities that are real analytically.
inline constexpr double kResidueTolerance = 1e-9;
/// Verdict tolerance for PSD and Loewner-order checks.
inline constexpr double kOrderTolerance = 1e-9;

namespace detail {

inline RealMatrix symmetrized(const RealMatrix& m, const char* what) {
  const double asym = max_abs(RealMatrix(m - m.transpose()));
  if (asym > kSymmetryTolerance) {
    std::ostringstream os;
    os << what << ": asymmetry " << asym << " above tolerance";
    throw NumericError(os.str());
  }
  return (m + m.transpose()) * 0.5;
}

inline double checked_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > kResidueTolerance) {
    std::ostringstream os;
    os << what << ": imaginary residue " << z.imag() << " above tolerance";
    throw NumericError(os.str());
  }
  return z.real();
}

/// 1/2 Tr[{A, B} rho] for A, B in the G eigenbasis:
/// 1/2 sum_kl (w_k + w_l) A_kl B_lk.
inline Complex half_anticommutator_mean(const RealVector& w, const ComplexMatrix& a,
                                        const ComplexMatrix& b) {
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    for (Eigen::Index l = 0; l < a.cols(); ++l) acc += (w[k] + w[l]) * a(k, l) * b(l, k);
  }
  return 0.5 * acc;
}

/// Terms rotated into the G(theta) eigenbasis, their filtered images under
/// Phi_theta, and thermal means.
struct EigenFrame {
  ThermalState state;
  std::vector<ComplexMatrix> terms;
  std::vector<ComplexMatrix> filtered;
  RealVector means;

  EigenFrame(const std::vector<ComplexMatrix>& term_matrices, const RealVector& theta)
      : state(thermal_state(HermitianOperator(weighted_sum(term_matrices, theta)), theta)) {
    means.resize(static_cast<Eigen::Index>(term_matrices.size()));
    for (std::size_t j = 0; j < term_matrices.size(); ++j) {
      terms.push_back(state.to_eigenbasis(term_matrices[j]));
      filtered.push_back(channel_in_eigenbasis(state, terms.back()));
      means[static_cast<Eigen::Index>(j)] =
          checked_real(state.trace_in_eigenbasis(terms.back()), "term mean");
    }
  }

  int size() const noexcept { return static_cast<int>(terms.size()); }

  /// 1/2 <{Phi(G_i), Phi(G_j)}>.
  double fb_first(int i, int j) const {
    return checked_real(half_anticommutator_mean(state.weights, filtered[static_cast<std::size_t>(i)],
                                                 filtered[static_cast<std::size_t>(j)]),
                        "fb first term");
  }

  /// 1/2 <{G_i, Phi(G_j)}>.
  double km_first(int i, int j) const {
    return checked_real(half_anticommutator_mean(state.weights, terms[static_cast<std::size_t>(i)],
                                                 filtered[static_cast<std::size_t>(j)]),
                        "km first term");
  }
};

/// Derivative of rho through the divided difference of exp(-x)/Z in the G
/// eigenbasis (Daleckii-Krein), independent of the channel filter.
inline ComplexMatrix divided_difference_derivative(const ThermalState& ts, const ComplexMatrix& term) {
  const ComplexMatrix t = ts.to_eigenbasis(term);
  const RealVector& mu = ts.energies();
  const RealVector& w = ts.weights;
  const Eigen::Index d = ts.dim();
  double mean = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) mean += w[k] * t(k, k).real();
  ComplexMatrix out(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      // (w(a) - w(b)) / (a - b) = w(a) expm1(-(b - a)) / (b - a), with a <= b
      const Eigen::Index lo = mu[k] <= mu[l] ? k : l;
      const Eigen::Index hi = lo == k ? l : k;
      const double gap = mu[hi] - mu[lo];
      const double dd = gap == 0.0 ? -w[lo] : w[lo] * std::expm1(-gap) / gap;
      out(k, l) = dd * t(k, l);
    }
    out(k, k) += w[k] * mean;
  }
  ComplexMatrix full = ts.from_eigenbasis(out);
  return (full + full.adjoint()) * 0.5;
}

inline double km_weight(double x, double y) {
  if (std::abs(x - y) <= 1e-12 * std::max(x, y)) return 1.0 / x;
  return (std::log(x) - std::log(y)) / (x - y);
}

inline InfoMatrix spectral_oracle(const std::vector<ComplexMatrix>& term_matrices,
                                  const RealVector& theta, MetricKind kind) {
  const ThermalState ts = thermal_state(HermitianOperator(weighted_sum(term_matrices, theta)), theta);
  // fresh eigendecomposition of rho itself
  const SpectralDecomposition rs = spectral(HermitianOperator(ts.rho.matrix()));
  const RealVector& lam = rs.eigenvalues;
  if (lam.minCoeff() <= 0.0) throw NumericError("spectral oracle: rho not positive definite");
  const Eigen::Index d = lam.size();
  RealMatrix weight(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      weight(k, l) = kind == MetricKind::FisherBures ? 2.0 / (lam[k] + lam[l])
                                                     : km_weight(lam[k], lam[l]);
    }
  }
  std::vector<ComplexMatrix> derivs;
  for (const auto& t : term_matrices) {
    derivs.push_back(rs.to_eigenbasis(divided_difference_derivative(ts, t)));
  }
  const auto j_count = static_cast<Eigen::Index>(term_matrices.size());
  RealMatrix out(j_count, j_count);
  for (Eigen::Index i = 0; i < j_count; ++i) {
    for (Eigen::Index j = 0; j < j_count; ++j) {
      const ComplexMatrix& a = derivs[static_cast<std::size_t>(i)];
      const ComplexMatrix& b = derivs[static_cast<std::size_t>(j)];
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) acc += weight(k, l) * a(k, l) * b(l, k);
      }
      out(i, j) = checked_real(acc, "spectral oracle");
    }
  }
  return InfoMatrix{symmetrized(out, "spectral oracle"), kind, InfoMethod::SpectralOracle, theta};
}

}  // namespace detail

/// I^FB_ij = 1/2 <{Phi(G_i), Phi(G_j)}> - <G_i><G_j>, for arbitrary Hermitian terms.
inline InfoMatrix fb_exact(const std::vector<ComplexMatrix>& terms, const RealVector& theta) {
  const detail::EigenFrame frame(terms, theta);
  const int n = frame.size();
  RealMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = frame.fb_first(i, j) - frame.means[i] * frame.means[j];
  }
  return InfoMatrix{detail::symmetrized(out, "fb_exact"), MetricKind::FisherBures,
                    InfoMethod::TheoremClosedForm, theta};
}

/// I^KM_ij = 1/2 <{G_i, Phi(G_j)}> - <G_i><G_j>, for arbitrary Hermitian terms.
inline InfoMatrix km_exact(const std::vector<ComplexMatrix>& terms, const RealVector& theta) {
  const detail::EigenFrame frame(terms, theta);
  const int n = frame.size();
  RealMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = frame.km_first(i, j) - frame.means[i] * frame.means[j];
  }
  return InfoMatrix{detail::symmetrized(out, "km_exact"), MetricKind::KuboMori,
                    InfoMethod::TheoremClosedForm, theta};
}

inline InfoMatrix fb_exact(const ParamHamiltonian& h) { return fb_exact(h.term_matrices(), h.theta()); }
inline InfoMatrix km_exact(const ParamHamiltonian& h) { return km_exact(h.term_matrices(), h.theta()); }

inline InfoMatrix info_exact(const ParamHamiltonian& h, MetricKind kind) {
  return kind == MetricKind::FisherBures ? fb_exact(h) : km_exact(h);
}

/// sum_kl 2/(l_k + l_l) <k|d_i rho|l><l|d_j rho|k>.
inline InfoMatrix fb_spectral_oracle(const ParamHamiltonian& h) {
  return detail::spectral_oracle(h.term_matrices(), h.theta(), MetricKind::FisherBures);
}

/// sum_kl c_KM(l_k, l_l) <k|d_i rho|l><l|d_j rho|k>, c_KM the inverse logarithmic mean.
inline InfoMatrix km_spectral_oracle(const ParamHamiltonian& h) {
  return detail::spectral_oracle(h.term_matrices(), h.theta(), MetricKind::KuboMori);
}

inline InfoMatrix info_spectral(const ParamHamiltonian& h, MetricKind kind) {
  return kind == MetricKind::FisherBures ? fb_spectral_oracle(h) : km_spectral_oracle(h);
}

/// Exact first terms, the quantities the shot estimators target.
inline double fb_first_term(const ParamHamiltonian& h, int i, int j) {
  h.check_index(i);
  h.check_index(j);
  return detail::EigenFrame(h.term_matrices(), h.theta()).fb_first(i, j);
}

inline double km_first_term(const ParamHamiltonian& h, int i, int j) {
  h.check_index(i);
  h.check_index(j);
  return detail::EigenFrame(h.term_matrices(), h.theta()).km_first(i, j);
}

/// Symmetric logarithmic derivative L^(j) = -Phi(G_j) + <G_j> I.
inline HermitianOperator sld_operator(const ThermalState& ts, const ComplexMatrix& term) {
  const HermitianOperator phi = apply_channel(ts, HermitianOperator(term));
  const double mean = expectation(term, ts.rho);
  return HermitianOperator(ComplexMatrix(
      -phi.matrix() + mean * ComplexMatrix::Identity(term.rows(), term.cols())));
}

inline HermitianOperator sld_operator(const ParamHamiltonian& h, int j) {
  h.check_index(j);
  return sld_operator(thermal_state(h), h.term_matrices()[static_cast<std::size_t>(j)]);
}

struct SldCheck {
  double lyapunov_residual = 0.0;  // max|d_j rho - (rho L + L rho)/2|
  double fisher_from_sld = 0.0;    // 1/2 <{L, L}> - <L>^2
};

/// Checks L_j against a derivative of rho computed by divided differences of
/// the exponential, independent of the channel.
inline SldCheck sld_check(const ParamHamiltonian& h, int j) {
  h.check_index(j);
  const ThermalState ts = thermal_state(h);
  const ComplexMatrix& term = h.term_matrices()[static_cast<std::size_t>(j)];
  const ComplexMatrix l = sld_operator(ts, term).matrix();
  const ComplexMatrix& rho = ts.rho.matrix();
  const ComplexMatrix drho = detail::divided_difference_derivative(ts, term);
  SldCheck c;
  c.lyapunov_residual = max_abs(ComplexMatrix(drho - 0.5 * (rho * l + l * rho)));
  const double mean = expectation(l, ts.rho);
  c.fisher_from_sld = expectation(ComplexMatrix(l * l), ts.rho) - mean * mean;
  return c;
}

struct OrderReport {
  double min_eig_difference = 0.0;  // min eigenvalue of a - b
  double min_eig_a = 0.0;
  double min_eig_b = 0.0;
  bool psd_a = false;
  bool psd_b = false;
  bool ordered = false;  // a - b >= 0 at tolerance
};

/// Loewner-order diagnostics for a against b.
inline OrderReport check_order(const InfoMatrix& a, const InfoMatrix& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw std::invalid_argument("check_order: shape mismatch");
  }
  if (a.theta.size() != b.theta.size() || (a.theta - b.theta).cwiseAbs().maxCoeff() > 0.0) {
    throw std::invalid_argument("check_order: matrices evaluated at different theta");
  }
  OrderReport r;
  r.min_eig_difference = qbm::min_eigenvalue(RealMatrix(a.values - b.values));
  r.min_eig_a = a.min_eigenvalue();
  r.min_eig_b = b.min_eigenvalue();
  r.psd_a = r.min_eig_a >= -kOrderTolerance;
  r.psd_b = r.min_eig_b >= -kOrderTolerance;
  r.ordered = r.min_eig_difference >= -kOrderTolerance;
  return r;
}

struct VarianceGap {
  double km_side = 0.0;  // 1/2 Tr[{W, Phi(W)} rho] - <W>^2
  double fb_side = 0.0;  // Tr[Phi(W)^2 rho] - <Phi(W)>^2
};

/// Both sides of the W = sum_j v_j G_j variance inequality, evaluated on
/// operators rather than through the information matrices.
inline VarianceGap variance_gap(const ParamHamiltonian& h, const RealVector& v) {
  if (v.size() != h.num_terms()) throw std::invalid_argument("variance_gap: length mismatch");
  const ThermalState ts = thermal_state(h);
  const HermitianOperator w(weighted_sum(h.term_matrices(), v));
  const HermitianOperator phi_w = apply_channel(ts, w);
  const double mean_w = expectation(w, ts.rho);
  const double mean_phi = expectation(phi_w, ts.rho);
  const ComplexMatrix anti = anticommutator(w.matrix(), phi_w.matrix());
  VarianceGap g;
  g.km_side = 0.5 * expectation(HermitianOperator(anti), ts.rho) - mean_w * mean_w;
  g.fb_side = expectation(HermitianOperator(ComplexMatrix(phi_w.matrix() * phi_w.matrix())), ts.rho) -
              mean_phi * mean_phi;
  return g;
}

struct AdditivityReport {
  InfoMatrix single;
  InfoMatrix doubled;
  double max_abs_deviation = 0.0;  // max |doubled - 2 single|
  bool passed = false;
};

inline constexpr double kAdditivityTolerance = 1e-8;

/// FB information of rho(theta) (x) rho(theta), generated by G_j (x) I + I (x) G_j,
/// compared against twice the single-copy matrix.
inline AdditivityReport additivity_check(const ParamHamiltonian& h) {
  if (2 * h.qubits() > kMaxQubits) {
    throw std::invalid_argument("additivity_check: doubled system exceeds " +
                                std::to_string(kMaxQubits) + " qubits");
  }
  const Eigen::Index d = h.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> doubled_terms;
  for (const auto& g : h.term_matrices()) {
    doubled_terms.push_back(tensor_product(g, id) + tensor_product(id, g));
  }
  AdditivityReport r{fb_exact(h), fb_exact(doubled_terms, h.theta()), 0.0, false};
  r.max_abs_deviation = max_abs(RealMatrix(r.doubled.values - 2.0 * r.single.values));
  r.passed = r.max_abs_deviation <= kAdditivityTolerance;
  return r;
}

}  // namespace qbm

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
#include "qbm/hamiltonian.hpp"
#include "qbm/operator_core.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qbm {

/// rho(theta) = e^{-G(theta)} / Z(theta) together with the spectral data of
/// G(theta) it was built from. weights[k] = e^{-mu_k} / Z pairs with
/// eigenvector column k of g_spectral.
struct ThermalState {
  DensityMatrix rho;
  SpectralDecomposition g_spectral;
  double log_partition = 0.0;
  RealVector theta;
  RealVector weights;

  Eigen::Index dim() const noexcept { return weights.size(); }
  const RealVector& energies() const noexcept { return g_spectral.eigenvalues; }

  ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const { return g_spectral.to_eigenbasis(x); }
  ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const {
    return g_spectral.from_eigenbasis(x);
  }

  /// Tr[X rho] for X already expressed in the G eigenbasis.
  Complex trace_in_eigenbasis(const ComplexMatrix& x) const {
    Complex acc = 0.0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) acc += x(k, k) * weights[k];
    return acc;
  }
};

/// Thermal state of an explicit generator. The log-partition function is a
/// max-shifted log-sum-exp of {-mu_k}.
inline ThermalState thermal_state(const HermitianOperator& generator, RealVector theta = {}) {
  SpectralDecomposition sd = spectral(generator);
  const RealVector& mu = sd.eigenvalues;
  const double worst = mu.cwiseAbs().maxCoeff();
  if (!(worst <= kMaxExponent)) {
    std::ostringstream os;
    os << "thermal_state: max|eigenvalue of G| = " << worst << " exceeds " << kMaxExponent
       << "; rescale the Hamiltonian coefficients";
    throw NumericError(os.str());
  }
  // mu ascending, so -mu(0) is the largest exponent.
  const double shift = -mu[0];
  double sum = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) sum += std::exp(-mu[k] - shift);
  const double log_z = shift + std::log(sum);
  RealVector w(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) w[k] = std::exp(-mu[k] - log_z);
  ComplexMatrix rho = sd.eigenvectors * w.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
  return ThermalState{DensityMatrix(std::move(rho)), std::move(sd), log_z, std::move(theta),
                      std::move(w)};
}

inline ThermalState thermal_state(const ParamHamiltonian& h) {
  return thermal_state(assemble(h), h.theta());
}

namespace detail {

inline double real_with_check(Complex z, double scale, const char* what) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << what << ": imaginary residue " << z.imag() << " above tolerance";
    throw NumericError(os.str());
  }
  return z.real();
}

}  // namespace detail

/// Tr[obs rho].
inline double expectation(const ComplexMatrix& obs, const DensityMatrix& rho) {
  detail::require_same_dim(obs, rho.matrix(), "expectation");
  const Complex z = (obs * rho.matrix()).trace();
  return detail::real_with_check(z, max_abs(obs), "expectation");
}

inline double expectation(const HermitianOperator& obs, const DensityMatrix& rho) {
  return expectation(obs.matrix(), rho);
}

/// Expectation of term T under a thermal state, using the eigenbasis weights.
inline double thermal_expectation(const ThermalState& ts, const ComplexMatrix& term) {
  return expectation(term, ts.rho);
}

/// d rho / d theta_j for the family exp(-sum theta_k T_k)/Z, given the term
/// T_j that multiplies theta_j:
///   d_j rho = -1/2 {Phi(T_j), rho} + rho <T_j>.
/// In the G eigenbasis this is -1/2 (w_k + w_l) f(mu_k - mu_l) T_kl + delta_kl w_k <T_j>.
inline ComplexMatrix thermal_derivative(const ThermalState& ts, const ComplexMatrix& term) {
  detail::require_same_dim(term, ts.rho.matrix(), "thermal_derivative");
  const ComplexMatrix t = ts.to_eigenbasis(term);
  const RealVector& mu = ts.energies();
  const RealVector& w = ts.weights;
  const double mean = detail::real_with_check(ts.trace_in_eigenbasis(t), max_abs(term),
                                              "thermal_derivative");
  const Eigen::Index d = ts.dim();
  ComplexMatrix out(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      out(k, l) = -0.5 * (w[k] + w[l]) * filter_value(mu[k] - mu[l]) * t(k, l);
    }
    out(k, k) += w[k] * mean;
  }
  ComplexMatrix full = ts.from_eigenbasis(out);
  return (full + full.adjoint()) * 0.5;
}

inline ComplexMatrix thermal_derivative(const ParamHamiltonian& h, int j) {
  h.check_index(j);
  return thermal_derivative(thermal_state(h), h.term_matrices()[static_cast<std::size_t>(j)]);
}

}  // namespace qbm

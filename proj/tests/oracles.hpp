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

// Reference computations for the test suites. Nothing here calls into the
// library's spectral filter, channel or closed-form information matrices.

#include "qbm/hamiltonian.hpp"
#include "qbm/instances.hpp"
#include "qbm/operator_core.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace qbm::oracle {

/// Pauli string as a Kronecker product of 2x2 blocks.
inline ComplexMatrix kron_pauli(const std::string& label) {
  const Complex i(0.0, 1.0);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : label) {
    ComplexMatrix p(2, 2);
    switch (c) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -i, i, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: throw std::invalid_argument("kron_pauli");
    }
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index s = 0; s < out.cols(); ++s) next.block(2 * r, 2 * s, 2, 2) = out(r, s) * p;
    out = next;
  }
  return out;
}

/// e^A by scaling and squaring with a 30-term Taylor series.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  const ComplexMatrix b = a / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline ComplexMatrix generator(const std::vector<std::string>& labels, const RealVector& theta) {
  ComplexMatrix g = ComplexMatrix::Zero(Eigen::Index{1} << labels.front().size(), Eigen::Index{1} << labels.front().size());
  for (std::size_t j = 0; j < labels.size(); ++j) g += theta[static_cast<Eigen::Index>(j)] * kron_pauli(labels[j]);
  return g;
}

inline std::vector<std::string> labels_of(const ParamHamiltonian& h) {
  std::vector<std::string> out;
  for (const auto& t : h.terms()) out.push_back(t.label());
  return out;
}

/// rho = e^{-G} / Tr e^{-G} through the Taylor exponential.
inline ComplexMatrix thermal(const std::vector<std::string>& labels, const RealVector& theta) {
  const ComplexMatrix e = taylor_expm(-generator(labels, theta));
  return e / e.trace().real();
}

inline double log_partition(const std::vector<std::string>& labels, const RealVector& theta) {
  return std::log(taylor_expm(-generator(labels, theta)).trace().real());
}

/// Central difference of rho along e_j.
inline ComplexMatrix drho_fd(const std::vector<std::string>& labels, const RealVector& theta, int j,
                             double h = 1e-5) {
  RealVector p = theta, m = theta;
  p[j] += h;
  m[j] -= h;
  return (thermal(labels, p) - thermal(labels, m)) / (2.0 * h);
}

/// Central difference of a scalar function along e_j.
inline double partial_fd(const std::function<double(const RealVector&)>& f, const RealVector& theta, int j,
                         double h = 1e-5) {
  RealVector p = theta, m = theta;
  p[j] += h;
  m[j] -= h;
  return (f(p) - f(m)) / (2.0 * h);
}

/// Kubo-Mori matrix as the Hessian of ln Z, by second differences.
inline RealMatrix km_from_log_partition(const std::vector<std::string>& labels, const RealVector& theta,
                                        double h = 1e-4) {
  const auto n = theta.size();
  RealMatrix out(n, n);
  const auto lz = [&](const RealVector& t) { return log_partition(labels, t); };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      RealVector pp = theta, pm = theta, mp = theta, mm = theta;
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      out(i, j) = (lz(pp) - lz(pm) - lz(mp) + lz(mm)) / (4.0 * h * h);
    }
  }
  return out;
}

/// sqrt of a PSD matrix via its eigendecomposition.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> s((a + a.adjoint()) * 0.5);
  const RealVector v = s.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return s.eigenvectors() * v.cast<Complex>().asDiagonal() * s.eigenvectors().adjoint();
}

/// Root fidelity Tr sqrt(sqrt(a) b sqrt(a)).
inline double root_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix sa = psd_sqrt(a);
  return psd_sqrt(sa * b * sa).trace().real();
}

/// Fisher-Bures matrix from the Bures distance: 1 - sqrt F ~ v^T I v h^2 / 8
/// along direction v, with off-diagonals by polarization.
inline RealMatrix fb_from_fidelity(const std::vector<std::string>& labels, const RealVector& theta,
                                   double h = 1e-3) {
  const auto n = theta.size();
  const auto quad = [&](const RealVector& v) {
    const ComplexMatrix a = thermal(labels, theta - 0.5 * h * v);
    const ComplexMatrix b = thermal(labels, theta + 0.5 * h * v);
    return 8.0 * (1.0 - root_fidelity(a, b)) / (h * h);
  };
  RealMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = quad(RealVector::Unit(n, i));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = quad(RealVector::Unit(n, i) + RealVector::Unit(n, j));
      out(i, j) = out(j, i) = 0.5 * (s - out(i, i) - out(j, j));
    }
  }
  return out;
}

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 30) {
  const auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(lo, mid, flo, flm, fmid);
        const double right = simpson(mid, hi, fmid, frm, fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) + rec(mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// Tent density through coth x = 1 + 2 / (e^{2x} - 1).
inline double tent(double t) {
  const double x = std::numbers::pi * std::abs(t) / 2.0;
  return (2.0 / std::numbers::pi) * std::log1p(2.0 / std::expm1(2.0 * x));
}

/// integral over the real line of p(t) g(t) for even g, using t = u^3 to
/// remove the logarithmic peak. The tail beyond t = 30 is below 1e-40.
inline double tent_integral(const std::function<double(double)>& g, double tol = 1e-12) {
  const auto integrand = [&](double u) {
    if (u == 0.0) return 0.0;
    const double t = u * u * u;
    return 3.0 * u * u * tent(t) * g(t);
  };
  const double upper = std::cbrt(30.0);
  double sum = 0.0;
  const int pieces = 64;
  for (int k = 0; k < pieces; ++k) {
    sum += adaptive_simpson(integrand, upper * k / pieces, upper * (k + 1) / pieces, tol / pieces);
  }
  return 2.0 * sum;
}

/// Instance k of the randomized protocol: 1 to 3 qubits, 1 to 4 terms,
/// theta uniform in [-1.5, 1.5].
inline ParamHamiltonian protocol_instance(RandomStream& rng, int k) {
  const int qubits = 1 + k % 3;
  const int terms = std::min(1 + (k / 3) % 4, qubits == 1 ? 3 : 4);
  return random_hamiltonian(rng, qubits, terms, 1.5);
}

}  // namespace qbm::oracle

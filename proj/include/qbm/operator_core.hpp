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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qbm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when a computation loses internal consistency (imaginary residue,
/// overflow, solver failure). Caller bugs raise std::invalid_argument instead.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace detail

/// A complex matrix known to be Hermitian. Construction rejects inputs whose
/// anti-Hermitian part exceeds 1e-12 (relative to max(1, max|M|)) and stores
/// the Hermitized (M + M^dagger)/2 otherwise.
class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-12;

  HermitianOperator() = default;

  explicit HermitianOperator(ComplexMatrix m) {
    detail::require_square(m, "HermitianOperator");
    if (!all_finite(m)) throw std::invalid_argument("HermitianOperator: non-finite entries");
    const double skew = max_abs(ComplexMatrix(m - m.adjoint()));
    const double scale = std::max(1.0, max_abs(m));
    if (skew > kTolerance * scale) {
      std::ostringstream os;
      os << "HermitianOperator: max|M - M^dagger| = " << skew << " exceeds tolerance";
      throw std::invalid_argument(os.str());
    }
    matrix_ = (m + m.adjoint()) * 0.5;
  }

  static HermitianOperator identity(Eigen::Index dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim));
  }

  static HermitianOperator zero(Eigen::Index dim) {
    return HermitianOperator(ComplexMatrix::Zero(dim, dim));
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// Eigen-decomposition M = V diag(eigenvalues) V^dagger with ascending eigenvalues.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }

  /// V^dagger X V.
  ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const {
    return eigenvectors.adjoint() * x * eigenvectors;
  }

  /// V X V^dagger.
  ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const {
    return eigenvectors * x * eigenvectors.adjoint();
  }
};

inline SpectralDecomposition spectral(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "spectral: eigen-solver did not converge (dim " << h.dim()
       << ", max|M| = " << max_abs(h.matrix()) << ")";
    throw NumericError(os.str());
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

/// Real-symmetric eigendecomposition, ascending.
inline std::pair<RealVector, RealMatrix> symmetric_eigen(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric_eigen: eigen-solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// A unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  DensityMatrix() = default;

  explicit DensityMatrix(ComplexMatrix m) {
    detail::require_square(m, "DensityMatrix");
    if (!all_finite(m)) throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (max_abs(ComplexMatrix(m - m.adjoint())) > kTolerance) {
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    ComplexMatrix herm = (m + m.adjoint()) * 0.5;
    const double tr = herm.trace().real();
    if (std::abs(tr - 1.0) > kTolerance) {
      std::ostringstream os;
      os << "DensityMatrix: trace " << tr << " != 1";
      throw std::invalid_argument(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kTolerance) {
      std::ostringstream os;
      os << "DensityMatrix: negative eigenvalue " << solver.eigenvalues().minCoeff();
      throw std::invalid_argument(os.str());
    }
    matrix_ = std::move(herm);
  }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  /// |index><index| in the computational basis.
  static DensityMatrix basis_state(Eigen::Index dim, Eigen::Index index) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// Largest |scale * eigenvalue| accepted by expm_hermitian before the
/// exponentials leave double range.
inline constexpr double kMaxExponent = 700.0;

/// e^{scale * H} computed through the eigendecomposition of H.
inline HermitianOperator expm_hermitian(const HermitianOperator& h, double scale) {
  const SpectralDecomposition sd = spectral(h);
  const double worst = std::abs(scale) * sd.eigenvalues.cwiseAbs().maxCoeff();
  if (!(worst <= kMaxExponent)) {
    std::ostringstream os;
    os << "expm_hermitian: |scale * eigenvalue| = " << worst << " exceeds " << kMaxExponent
       << "; rescale the Hamiltonian coefficients";
    throw NumericError(os.str());
  }
  const Eigen::VectorXcd diag = (scale * sd.eigenvalues).array().exp().cast<Complex>();
  return HermitianOperator(sd.eigenvectors * diag.asDiagonal() * sd.eigenvectors.adjoint());
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

/// Kronecker product, (i*dimB + k, j*dimB + l) <- A(i,j) B(k,l).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Symmetric pseudoinverse: eigenvalues with |lambda| <= rel_tol * max|lambda|
/// map to zero, the rest to 1/lambda.
inline RealMatrix pseudo_inverse(const RealMatrix& m, double rel_tol = 1e-10) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pseudo_inverse: matrix not square");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("pseudo_inverse: rel_tol must lie in (0, 1)");
  }
  if (m.size() == 0) return m;
  const RealMatrix sym = (m + m.transpose()) * 0.5;
  auto [values, vectors] = symmetric_eigen(sym);
  const double cutoff = rel_tol * values.cwiseAbs().maxCoeff();
  RealVector inv(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    inv[k] = std::abs(values[k]) <= cutoff ? 0.0 : 1.0 / values[k];
  }
  RealMatrix out = vectors * inv.asDiagonal() * vectors.transpose();
  return (out + out.transpose()) * 0.5;
}

inline double min_eigenvalue(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  return symmetric_eigen((m + m.transpose()) * 0.5).first.minCoeff();
}

/// max|lambda| / min|lambda| of a symmetric matrix; +inf when singular.
inline double condition_number(const RealMatrix& m) {
  if (m.size() == 0) return 1.0;
  const RealVector values = symmetric_eigen((m + m.transpose()) * 0.5).first.cwiseAbs();
  const double lo = values.minCoeff();
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return values.maxCoeff() / lo;
}

}  // namespace qbm

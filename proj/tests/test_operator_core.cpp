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

#include "qbm/operator_core.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using qbm::Complex;
using qbm::ComplexMatrix;
using qbm::RealMatrix;

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(u(g), u(g));
  return (m + m.adjoint()) * 0.5;
}

TEST(HermitianOperator, AcceptsAndSymmetrizes) {
  ComplexMatrix m = random_hermitian(4, 1);
  m(0, 1) += Complex(1e-14, 0.0);
  const qbm::HermitianOperator h(m);
  EXPECT_EQ(qbm::max_abs(ComplexMatrix(h.matrix() - h.matrix().adjoint())), 0.0);
}

TEST(HermitianOperator, RejectsSkewPart) {
  ComplexMatrix m = random_hermitian(3, 2);
  m(0, 2) += Complex(0.0, 1e-6);
  EXPECT_THROW(qbm::HermitianOperator{m}, std::invalid_argument);
}

TEST(HermitianOperator, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(qbm::HermitianOperator{ComplexMatrix(2, 3)}, std::invalid_argument);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(qbm::HermitianOperator{m}, std::invalid_argument);
}

TEST(Spectral, ReconstructsAndIsAscending) {
  const qbm::HermitianOperator h(random_hermitian(6, 3));
  const auto sd = qbm::spectral(h);
  EXPECT_LT(qbm::max_abs(ComplexMatrix(sd.reconstruct() - h.matrix())), 1e-12);
  for (Eigen::Index k = 1; k < sd.dim(); ++k) EXPECT_LE(sd.eigenvalues[k - 1], sd.eigenvalues[k]);
  const ComplexMatrix x = random_hermitian(6, 4);
  EXPECT_LT(qbm::max_abs(ComplexMatrix(sd.from_eigenbasis(sd.to_eigenbasis(x)) - x)), 1e-12);
}

TEST(ExpmHermitian, MatchesTaylorSeries) {
  const ComplexMatrix m = random_hermitian(4, 5);
  for (double scale : {-1.0, 0.3, 2.5}) {
    const auto e = qbm::expm_hermitian(qbm::HermitianOperator(m), scale);
    EXPECT_LT(qbm::max_abs(ComplexMatrix(e.matrix() - qbm::oracle::taylor_expm(scale * m))), 1e-11);
  }
}

TEST(ExpmHermitian, OverflowGuard) {
  const qbm::HermitianOperator h(ComplexMatrix::Identity(2, 2) * 800.0);
  EXPECT_THROW(qbm::expm_hermitian(h, 1.0), qbm::NumericError);
  EXPECT_NO_THROW(qbm::expm_hermitian(h, 0.5));
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(qbm::DensityMatrix::maximally_mixed(4));
  EXPECT_NO_THROW(qbm::DensityMatrix::basis_state(4, 2));
  EXPECT_THROW(qbm::DensityMatrix{ComplexMatrix::Identity(2, 2)}, std::invalid_argument);
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(qbm::DensityMatrix{neg}, std::invalid_argument);
}

TEST(Algebra, CommutatorsAndTensorProduct) {
  const ComplexMatrix x = qbm::oracle::kron_pauli("X");
  const ComplexMatrix z = qbm::oracle::kron_pauli("Z");
  EXPECT_EQ(qbm::max_abs(qbm::anticommutator(x, z)), 0.0);
  EXPECT_EQ(qbm::max_abs(ComplexMatrix(qbm::commutator(z, x) - 2.0 * Complex(0, 1) * qbm::oracle::kron_pauli("Y"))), 0.0);
  EXPECT_EQ(qbm::max_abs(ComplexMatrix(qbm::tensor_product(x, z) - qbm::oracle::kron_pauli("XZ"))), 0.0);
  EXPECT_THROW(qbm::commutator(x, qbm::oracle::kron_pauli("XX")), std::invalid_argument);
}

TEST(PseudoInverse, MoorePenroseConditions) {
  RealMatrix b = RealMatrix::Random(4, 2);
  const RealMatrix a = b * b.transpose();  // rank 2
  const RealMatrix p = qbm::pseudo_inverse(a);
  EXPECT_LT(qbm::max_abs(RealMatrix(a * p * a - a)), 1e-10);
  EXPECT_LT(qbm::max_abs(RealMatrix(p * a * p - p)), 1e-10);
  EXPECT_LT(qbm::max_abs(RealMatrix((a * p).transpose() - a * p)), 1e-10);
  const RealMatrix full = a + RealMatrix::Identity(4, 4);
  EXPECT_LT(qbm::max_abs(RealMatrix(qbm::pseudo_inverse(full) - full.inverse())), 1e-12);
  EXPECT_THROW(qbm::pseudo_inverse(a, 0.0), std::invalid_argument);
}

TEST(ConditionNumber, DiagonalCases) {
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 0.5;
  EXPECT_DOUBLE_EQ(qbm::condition_number(d), 8.0);
  EXPECT_DOUBLE_EQ(qbm::min_eigenvalue(d), 0.5);
  d(1, 1) = 0.0;
  EXPECT_TRUE(std::isinf(qbm::condition_number(d)));
}

}  // namespace

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

#include "qbm/hamiltonian.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace {

using qbm::ComplexMatrix;

TEST(PauliString, MatricesMatchKroneckerProducts) {
  for (const char* label : {"I", "X", "Y", "Z", "XY", "ZI", "YZX", "IXYZ"}) {
    const ComplexMatrix m = qbm::pauli_to_matrix(qbm::PauliString(label)).matrix();
    EXPECT_EQ(qbm::max_abs(ComplexMatrix(m - qbm::oracle::kron_pauli(label))), 0.0) << label;
  }
}

TEST(PauliString, YActionConvention) {
  const ComplexMatrix y = qbm::pauli_to_matrix(qbm::PauliString("Y")).matrix();
  EXPECT_EQ(y(1, 0), qbm::Complex(0.0, 1.0));
  EXPECT_EQ(y(0, 1), qbm::Complex(0.0, -1.0));
}

TEST(PauliString, ZZIsDiagonal) {
  const ComplexMatrix m = qbm::pauli_to_matrix(qbm::PauliString("ZZ")).matrix();
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect.diagonal() << 1, -1, -1, 1;
  EXPECT_EQ(qbm::max_abs(ComplexMatrix(m - expect)), 0.0);
}

TEST(PauliString, RejectsBadLabels) {
  EXPECT_THROW(qbm::PauliString("XQ"), std::invalid_argument);
  EXPECT_THROW(qbm::PauliString(""), std::invalid_argument);
  EXPECT_THROW(qbm::PauliString("XXXXXXXXXXX"), std::invalid_argument);
  EXPECT_THROW(qbm::PauliString("xz"), std::invalid_argument);
}

TEST(ParamHamiltonian, AssemblesWeightedSum) {
  qbm::RealVector theta(2);
  theta << 0.5, -1.25;
  const qbm::ParamHamiltonian h(std::vector<std::string>{"ZI", "XX"}, theta);
  EXPECT_EQ(h.num_terms(), 2);
  EXPECT_EQ(h.qubits(), 2);
  EXPECT_EQ(h.dim(), 4);
  const ComplexMatrix expect = 0.5 * qbm::oracle::kron_pauli("ZI") - 1.25 * qbm::oracle::kron_pauli("XX");
  EXPECT_EQ(qbm::max_abs(ComplexMatrix(qbm::assemble(h).matrix() - expect)), 0.0);
}

TEST(ParamHamiltonian, Validation) {
  using V = std::vector<std::string>;
  EXPECT_THROW(qbm::ParamHamiltonian(V{"Z", "X"}, qbm::RealVector::Zero(3)), std::invalid_argument);
  EXPECT_THROW(qbm::ParamHamiltonian(V{"Z", "XX"}, qbm::RealVector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(qbm::ParamHamiltonian(V{"Z", "Z"}, qbm::RealVector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(qbm::ParamHamiltonian(V{}, qbm::RealVector::Zero(0)), std::invalid_argument);
  qbm::RealVector bad(1);
  bad << std::numeric_limits<double>::infinity();
  EXPECT_THROW(qbm::ParamHamiltonian(V{"Z"}, bad), std::invalid_argument);
  const qbm::ParamHamiltonian h(V{"Z"}, qbm::RealVector::Zero(1));
  EXPECT_THROW(h.check_index(1), std::invalid_argument);
  EXPECT_THROW(h.check_index(-1), std::invalid_argument);
  EXPECT_THROW(h.with_theta(qbm::RealVector::Zero(2)), std::invalid_argument);
}

TEST(ValidateTerms, UnitaryAndCommutation) {
  const qbm::ParamHamiltonian h(std::vector<std::string>{"ZI", "IZ", "XX", "YI"}, qbm::RealVector::Zero(4));
  const auto d = qbm::validate_terms(h);
  EXPECT_TRUE(d.all_valid);
  EXPECT_FALSE(d.all_commuting);
  EXPECT_TRUE(d.commutes[0][1]);
  EXPECT_TRUE(d.commutes[0][2] == false);
  EXPECT_TRUE(d.commutes[2][0] == false);
  EXPECT_FALSE(d.commutes[0][3]);
  EXPECT_TRUE(d.commutes[1][3]);
  const auto c = qbm::validate_terms(
      qbm::ParamHamiltonian(std::vector<std::string>{"ZI", "IZ", "ZZ"}, qbm::RealVector::Zero(3)));
  EXPECT_TRUE(c.all_commuting);
  std::vector<ComplexMatrix> non_unitary{2.0 * qbm::oracle::kron_pauli("Z")};
  EXPECT_FALSE(qbm::validate_terms(non_unitary).all_valid);
}

}  // namespace

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

#include "qbm/gibbs.hpp"
#include "qbm/instances.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using qbm::ComplexMatrix;
using qbm::RealVector;

qbm::ParamHamiltonian single_z(double theta) {
  RealVector t(1);
  t << theta;
  return qbm::ParamHamiltonian(std::vector<std::string>{"Z"}, t);
}

TEST(ThermalState, SingleZClosedForm) {
  const auto ts = qbm::thermal_state(single_z(std::log(2.0)));
  // e^{-ln2 Z} / Z = diag(1/2, 2) / 2.5
  EXPECT_NEAR(ts.rho.matrix()(0, 0).real(), 0.2, 1e-15);
  EXPECT_NEAR(ts.rho.matrix()(1, 1).real(), 0.8, 1e-15);
  EXPECT_NEAR(ts.log_partition, std::log(2.5), 1e-15);
  EXPECT_NEAR(qbm::thermal_expectation(ts, qbm::oracle::kron_pauli("Z")), -0.6, 1e-15);
}

TEST(ThermalState, ZeroThetaIsMaximallyMixed) {
  const qbm::ParamHamiltonian h(std::vector<std::string>{"XY", "ZZ"}, RealVector::Zero(2));
  const auto ts = qbm::thermal_state(h);
  EXPECT_LT(qbm::max_abs(ComplexMatrix(ts.rho.matrix() - ComplexMatrix::Identity(4, 4) / 4.0)), 1e-15);
}

TEST(ThermalState, MatchesTaylorOracleOnRandomInstances) {
  qbm::RandomStream rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    const auto ts = qbm::thermal_state(h);
    const ComplexMatrix ref = qbm::oracle::thermal(qbm::oracle::labels_of(h), h.theta());
    EXPECT_LT(qbm::max_abs(ComplexMatrix(ts.rho.matrix() - ref)), 1e-12);
    EXPECT_NEAR(ts.log_partition, qbm::oracle::log_partition(qbm::oracle::labels_of(h), h.theta()), 1e-12);
    EXPECT_NEAR(ts.rho.matrix().trace().real(), 1.0, 1e-14);
    EXPECT_GT(ts.weights.minCoeff(), 0.0);
  }
}

TEST(ThermalState, LargeCoefficientsStayFinite) {
  const auto ts = qbm::thermal_state(single_z(300.0));
  EXPECT_NEAR(ts.rho.matrix()(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(ts.log_partition, 300.0, 1e-12);
}

TEST(ThermalState, OverflowRaisesNumericError) {
  EXPECT_THROW(qbm::thermal_state(single_z(701.0)), qbm::NumericError);
}

TEST(Expectation, RejectsMismatchedDimensions) {
  const auto ts = qbm::thermal_state(single_z(0.3));
  EXPECT_THROW(qbm::expectation(ComplexMatrix::Identity(4, 4), ts.rho), std::invalid_argument);
}

TEST(Expectation, RejectsImaginaryResidue) {
  const auto ts = qbm::thermal_state(single_z(0.3));
  ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
  not_hermitian(0, 0) = qbm::Complex(0.0, 1.0);
  EXPECT_THROW(qbm::expectation(not_hermitian, ts.rho), qbm::NumericError);
}

TEST(ThermalDerivative, MatchesFiniteDifferences) {
  qbm::RandomStream rng(12);
  for (int k = 0; k < 15; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    for (int j = 0; j < h.num_terms(); ++j) {
      const ComplexMatrix fd = qbm::oracle::drho_fd(qbm::oracle::labels_of(h), h.theta(), j);
      const ComplexMatrix d = qbm::thermal_derivative(h, j);
      EXPECT_LT(qbm::max_abs(ComplexMatrix(d - fd)), 1e-8);
      EXPECT_LT(std::abs(d.trace()), 1e-13);
    }
  }
}

TEST(ThermalDerivative, CommutingCase) {
  // d/dtheta of diag(e^{-t}, e^{t}) / 2cosh t
  const double t = 0.4;
  const ComplexMatrix d = qbm::thermal_derivative(single_z(t), 0);
  const double s = 1.0 / (std::cosh(t) * std::cosh(t));
  EXPECT_NEAR(d(0, 0).real(), -0.5 * s, 1e-14);
  EXPECT_NEAR(d(1, 1).real(), 0.5 * s, 1e-14);
}

}  // namespace

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

#include "qbm/info_geometry.hpp"
#include "qbm/instances.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using qbm::ComplexMatrix;
using qbm::RealMatrix;
using qbm::RealVector;

qbm::ParamHamiltonian make(std::vector<std::string> labels, std::initializer_list<double> theta) {
  RealVector t(static_cast<Eigen::Index>(theta.size()));
  Eigen::Index k = 0;
  for (double x : theta) t[k++] = x;
  return qbm::ParamHamiltonian(labels, t);
}

TEST(FisherBures, SingleZ) {
  const auto fb = qbm::fb_exact(make({"Z"}, {std::log(2.0)}));
  EXPECT_NEAR(fb(0, 0), 0.64, 1e-14);
  EXPECT_NEAR(qbm::fb_exact(make({"Z"}, {0.0}))(0, 0), 1.0, 1e-15);
}

TEST(FisherBures, ZeroThetaNonCommuting) {
  // At rho = I/2 both terms have unit variance and no correlation.
  const auto fb = qbm::fb_exact(make({"Z", "X"}, {0.0, 0.0}));
  EXPECT_LT(qbm::max_abs(RealMatrix(fb.values - RealMatrix::Identity(2, 2))), 1e-15);
}

TEST(FisherBures, MatchesFidelityOracle) {
  qbm::RandomStream rng(21);
  for (int k = 0; k < 12; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    const RealMatrix ref = qbm::oracle::fb_from_fidelity(qbm::oracle::labels_of(h), h.theta());
    EXPECT_LT(qbm::max_abs(RealMatrix(qbm::fb_exact(h).values - ref)), 1e-6) << k;
  }
}

TEST(KuboMori, MatchesLogPartitionHessian) {
  qbm::RandomStream rng(22);
  for (int k = 0; k < 12; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    const RealMatrix ref = qbm::oracle::km_from_log_partition(qbm::oracle::labels_of(h), h.theta());
    EXPECT_LT(qbm::max_abs(RealMatrix(qbm::km_exact(h).values - ref)), 1e-6) << k;
  }
}

TEST(InfoMatrices, ClosedFormAgreesWithSpectralOracle) {
  qbm::RandomStream rng(23);
  for (int k = 0; k < 30; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    EXPECT_LT(qbm::max_abs(RealMatrix(qbm::fb_exact(h).values - qbm::fb_spectral_oracle(h).values)), 1e-8);
    EXPECT_LT(qbm::max_abs(RealMatrix(qbm::km_exact(h).values - qbm::km_spectral_oracle(h).values)), 1e-8);
  }
}

TEST(InfoMatrices, CommutingTermsGiveCovariance) {
  const auto h = make({"ZI", "IZ", "ZZ"}, {0.4, -0.9, 0.25});
  const auto fb = qbm::fb_exact(h);
  const auto km = qbm::km_exact(h);
  EXPECT_LT(qbm::max_abs(RealMatrix(fb.values - km.values)), 1e-14);
  const auto ts = qbm::thermal_state(h);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const ComplexMatrix& a = h.term_matrices()[i];
      const ComplexMatrix& b = h.term_matrices()[j];
      const double cov = qbm::expectation(ComplexMatrix(a * b), ts.rho) -
                         qbm::expectation(a, ts.rho) * qbm::expectation(b, ts.rho);
      EXPECT_NEAR(fb(i, j), cov, 1e-14);
    }
  }
}

TEST(InfoMatrices, FirstTermsAndMetadata) {
  const auto h = make({"Z", "X"}, {1.0, 0.3});
  const auto fb = qbm::fb_exact(h);
  EXPECT_EQ(fb.kind, qbm::MetricKind::FisherBures);
  EXPECT_EQ(fb.method, qbm::InfoMethod::TheoremClosedForm);
  EXPECT_EQ(fb.theta, h.theta());
  EXPECT_EQ(qbm::km_spectral_oracle(h).method, qbm::InfoMethod::SpectralOracle);
  const auto ts = qbm::thermal_state(h);
  const double mz = qbm::expectation(h.term_matrices()[0], ts.rho);
  const double mx = qbm::expectation(h.term_matrices()[1], ts.rho);
  EXPECT_NEAR(qbm::fb_first_term(h, 0, 1) - mz * mx, fb(0, 1), 1e-15);
  EXPECT_NEAR(qbm::km_first_term(h, 1, 0) - mz * mx, qbm::km_exact(h)(1, 0), 1e-15);
  EXPECT_THROW(qbm::fb_first_term(h, 0, 2), std::invalid_argument);
  EXPECT_EQ(qbm::to_string(qbm::MetricKind::KuboMori), "km");
  EXPECT_EQ(qbm::to_string(qbm::InfoMethod::SpectralOracle), "spectral");
}

TEST(Order, KuboMoriDominatesFisherBures) {
  qbm::RandomStream rng(24);
  for (int k = 0; k < 30; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    const auto r = qbm::check_order(qbm::km_exact(h), qbm::fb_exact(h));
    EXPECT_TRUE(r.ordered) << r.min_eig_difference;
    EXPECT_TRUE(r.psd_b) << r.min_eig_b;
    for (int v = 0; v < 10; ++v) {
      const auto g = qbm::variance_gap(h, qbm::random_direction(rng, h.num_terms()));
      EXPECT_GE(g.km_side - g.fb_side, -1e-9);
    }
  }
}

TEST(Order, QuadraticFormsMatchVarianceGap) {
  const auto h = make({"Z", "X", "Y"}, {0.5, -0.7, 0.2});
  RealVector v(3);
  v << 0.3, -1.0, 0.6;
  const auto g = qbm::variance_gap(h, v);
  EXPECT_NEAR(g.km_side, v.dot(qbm::km_exact(h).values * v), 1e-13);
  EXPECT_NEAR(g.fb_side, v.dot(qbm::fb_exact(h).values * v), 1e-13);
}

TEST(Order, CheckOrderRejectsMismatch) {
  const auto a = qbm::fb_exact(make({"Z", "X"}, {1.0, 0.3}));
  const auto b = qbm::fb_exact(make({"Z", "X"}, {1.0, 0.4}));
  const auto c = qbm::fb_exact(make({"Z"}, {1.0}));
  EXPECT_THROW(qbm::check_order(a, b), std::invalid_argument);
  EXPECT_THROW(qbm::check_order(a, c), std::invalid_argument);
  qbm::InfoMatrix zero{RealMatrix::Zero(2, 2), qbm::MetricKind::FisherBures, qbm::InfoMethod::TheoremClosedForm,
                       a.theta};
  EXPECT_TRUE(qbm::check_order(a, zero).ordered);
}

TEST(Additivity, DoubledSystemDoublesFisherBures) {
  qbm::RandomStream rng(25);
  for (int k = 0; k < 8; ++k) {
    const auto h = qbm::random_hamiltonian(rng, 1 + k % 2, 1 + k % 3, 1.5);
    const auto r = qbm::additivity_check(h);
    EXPECT_TRUE(r.passed) << r.max_abs_deviation;
  }
  EXPECT_THROW(qbm::additivity_check(make({"ZIIIII"}, {0.1})), std::invalid_argument);
}

TEST(Sld, LyapunovEquationAndDiagonal) {
  qbm::RandomStream rng(26);
  for (int k = 0; k < 20; ++k) {
    const auto h = qbm::oracle::protocol_instance(rng, k);
    const auto fb = qbm::fb_exact(h);
    for (int j = 0; j < h.num_terms(); ++j) {
      const auto c = qbm::sld_check(h, j);
      EXPECT_LE(c.lyapunov_residual, 1e-9);
      EXPECT_NEAR(c.fisher_from_sld, fb(j, j), 1e-8);
      // against a finite-difference derivative too
      const ComplexMatrix l = qbm::sld_operator(h, j).matrix();
      const ComplexMatrix rho = qbm::thermal_state(h).rho.matrix();
      const ComplexMatrix fd = qbm::oracle::drho_fd(qbm::oracle::labels_of(h), h.theta(), j);
      EXPECT_LT(qbm::max_abs(ComplexMatrix(fd - 0.5 * (rho * l + l * rho))), 1e-8);
    }
  }
}

TEST(Sld, SingleZIsDiagonal) {
  const auto l = qbm::sld_operator(make({"Z"}, {std::log(2.0)}), 0).matrix();
  // -Z + <Z> I with <Z> = -0.6
  EXPECT_NEAR(l(0, 0).real(), -1.6, 1e-14);
  EXPECT_NEAR(l(1, 1).real(), 0.4, 1e-14);
  EXPECT_EQ(std::abs(l(0, 1)), 0.0);
}

}  // namespace

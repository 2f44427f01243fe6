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

#include "qbm/hamiltonian.hpp"
#include "qbm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qbm {

/// Random model: `num_terms` distinct non-identity Pauli strings on `qubits`
/// qubits with coefficients uniform in [-theta_range, theta_range].
inline ParamHamiltonian random_hamiltonian(RandomStream& rng, int qubits, int num_terms,
                                           double theta_range) {
  if (qubits < 1 || qubits > kMaxQubits) throw std::invalid_argument("random_hamiltonian: bad qubit count");
  const std::uint64_t available = (std::uint64_t{1} << (2 * qubits)) - 1;
  if (num_terms < 1 || static_cast<std::uint64_t>(num_terms) > available) {
    throw std::invalid_argument("random_hamiltonian: cannot pick that many distinct terms");
  }
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::uint64_t> codes;
  while (codes.size() < static_cast<std::size_t>(num_terms)) {
    const auto code = 1 + static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(available));
    if (code > available || std::find(codes.begin(), codes.end(), code) != codes.end()) continue;
    codes.push_back(code);
  }
  std::vector<PauliString> terms;
  for (std::uint64_t code : codes) {
    std::string label(static_cast<std::size_t>(qubits), 'I');
    for (int q = 0; q < qubits; ++q) label[static_cast<std::size_t>(q)] = kLetters[(code >> (2 * (qubits - 1 - q))) & 3];
    terms.emplace_back(label);
  }
  RealVector theta(num_terms);
  for (int j = 0; j < num_terms; ++j) theta[j] = theta_range * (2.0 * rng.uniform() - 1.0);
  return ParamHamiltonian(std::move(terms), std::move(theta));
}

/// Uniform random unit vector of length n.
inline RealVector random_direction(RandomStream& rng, Eigen::Index n) {
  RealVector v(n);
  do {
    // Box-Muller from the stream's own uniforms.
    for (Eigen::Index k = 0; k < n; ++k) {
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      v[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace qbm

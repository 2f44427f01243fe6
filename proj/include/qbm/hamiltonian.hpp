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

#include "qbm/operator_core.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qbm {

/// Qubit-count cap for dense simulation.
inline constexpr int kMaxQubits = 10;

/// A tensor product of single-qubit Paulis written as a label over {I,X,Y,Z}.
/// The leftmost character acts on the most significant qubit.
class PauliString {
 public:
  explicit PauliString(std::string label) : label_(std::move(label)) {
    if (label_.empty()) throw std::invalid_argument("PauliString: empty label");
    if (label_.size() > static_cast<std::size_t>(kMaxQubits)) {
      throw std::invalid_argument("PauliString: label '" + label_ + "' exceeds " +
                                  std::to_string(kMaxQubits) + " qubits");
    }
    for (char c : label_) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument(std::string("PauliString: invalid character '") + c +
                                    "' in label '" + label_ + "'");
      }
    }
  }

  const std::string& label() const noexcept { return label_; }
  int qubits() const noexcept { return static_cast<int>(label_.size()); }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << label_.size(); }

  bool operator==(const PauliString&) const = default;

 private:
  std::string label_;
};

/// Dense matrix of a Pauli string. Entries are exactly 0, +-1 or +-i.
inline HermitianOperator pauli_to_matrix(const PauliString& p) {
  const int n = p.qubits();
  const Eigen::Index dim = p.dim();
  // Column c maps to row c ^ flip with a phase collected per qubit.
  Eigen::Index flip = 0;
  for (int q = 0; q < n; ++q) {
    const char c = p.label()[q];
    if (c == 'X' || c == 'Y') flip |= Eigen::Index{1} << (n - 1 - q);
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const bool bit = (col >> (n - 1 - q)) & 1;
      switch (p.label()[q]) {
        case 'Z':
          if (bit) phase = -phase;
          break;
        case 'Y':
          // Y|0> = i|1>, Y|1> = -i|0>
          phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
          break;
        default:
          break;
      }
    }
    m(col ^ flip, col) = phase;
  }
  return HermitianOperator(std::move(m));
}

/// G(theta) = sum_j theta_j G_j over an ordered set of distinct Pauli strings.
class ParamHamiltonian {
 public:
  ParamHamiltonian(std::vector<PauliString> terms, RealVector theta)
      : terms_(std::move(terms)), theta_(std::move(theta)) {
    if (terms_.empty()) throw std::invalid_argument("ParamHamiltonian: at least one term required");
    if (theta_.size() != static_cast<Eigen::Index>(terms_.size())) {
      throw std::invalid_argument("ParamHamiltonian: theta has length " +
                                  std::to_string(theta_.size()) + " but there are " +
                                  std::to_string(terms_.size()) + " terms");
    }
    if (!theta_.allFinite()) throw std::invalid_argument("ParamHamiltonian: non-finite theta");
    std::set<std::string> seen;
    for (const auto& t : terms_) {
      if (t.qubits() != terms_.front().qubits()) {
        throw std::invalid_argument("ParamHamiltonian: terms act on different qubit counts");
      }
      if (!seen.insert(t.label()).second) {
        throw std::invalid_argument("ParamHamiltonian: duplicate term '" + t.label() + "'");
      }
    }
    auto mats = std::make_shared<std::vector<ComplexMatrix>>();
    mats->reserve(terms_.size());
    for (const auto& t : terms_) mats->push_back(pauli_to_matrix(t).matrix());
    term_matrices_ = std::move(mats);
  }

  ParamHamiltonian(const std::vector<std::string>& labels, RealVector theta)
      : ParamHamiltonian(to_strings(labels), std::move(theta)) {}

  const std::vector<PauliString>& terms() const noexcept { return terms_; }
  const RealVector& theta() const noexcept { return theta_; }
  int num_terms() const noexcept { return static_cast<int>(terms_.size()); }
  int qubits() const noexcept { return terms_.front().qubits(); }
  Eigen::Index dim() const noexcept { return terms_.front().dim(); }

  /// Matrices of the G_j, built once and shared between copies.
  const std::vector<ComplexMatrix>& term_matrices() const noexcept { return *term_matrices_; }

  /// Same terms at a new parameter point.
  ParamHamiltonian with_theta(RealVector theta) const {
    if (theta.size() != theta_.size()) {
      throw std::invalid_argument("ParamHamiltonian::with_theta: length mismatch");
    }
    if (!theta.allFinite()) throw std::invalid_argument("ParamHamiltonian: non-finite theta");
    ParamHamiltonian copy = *this;
    copy.theta_ = std::move(theta);
    return copy;
  }

  void check_index(int j) const {
    if (j < 0 || j >= num_terms()) {
      throw std::invalid_argument("term index " + std::to_string(j) + " out of range [0, " +
                                  std::to_string(num_terms()) + ")");
    }
  }

 private:
  static std::vector<PauliString> to_strings(const std::vector<std::string>& labels) {
    std::vector<PauliString> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.emplace_back(l);
    return out;
  }

  std::vector<PauliString> terms_;
  RealVector theta_;
  std::shared_ptr<const std::vector<ComplexMatrix>> term_matrices_;
};

/// sum_j theta_j T_j for arbitrary term matrices.
inline ComplexMatrix weighted_sum(const std::vector<ComplexMatrix>& terms, const RealVector& theta) {
  if (terms.empty() || static_cast<Eigen::Index>(terms.size()) != theta.size()) {
    throw std::invalid_argument("weighted_sum: term/coefficient count mismatch");
  }
  ComplexMatrix g = ComplexMatrix::Zero(terms.front().rows(), terms.front().cols());
  for (std::size_t j = 0; j < terms.size(); ++j) g += theta[static_cast<Eigen::Index>(j)] * terms[j];
  return g;
}

inline HermitianOperator assemble(const ParamHamiltonian& h) {
  return HermitianOperator(weighted_sum(h.term_matrices(), h.theta()));
}

struct TermDiagnostics {
  /// G_j^2 = I and G_j = G_j^dagger, per term.
  std::vector<bool> unitary_hermitian;
  /// commutes(i, j) for every pair.
  std::vector<std::vector<bool>> commutes;
  bool all_valid = true;
  bool all_commuting = true;
};

inline TermDiagnostics validate_terms(const std::vector<ComplexMatrix>& terms, double tol = 1e-12) {
  TermDiagnostics d;
  const std::size_t n = terms.size();
  d.commutes.assign(n, std::vector<bool>(n, true));
  for (const auto& m : terms) {
    const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    const bool ok = max_abs(ComplexMatrix(m * m - id)) <= tol &&
                    max_abs(ComplexMatrix(m - m.adjoint())) <= tol;
    d.unitary_hermitian.push_back(ok);
    d.all_valid = d.all_valid && ok;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool c = max_abs(commutator(terms[i], terms[j])) <= tol;
      d.commutes[i][j] = d.commutes[j][i] = c;
      d.all_commuting = d.all_commuting && c;
    }
  }
  return d;
}

inline TermDiagnostics validate_terms(const ParamHamiltonian& h) {
  return validate_terms(h.term_matrices());
}

}  // namespace qbm

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
#include "qbm/info_geometry.hpp"
#include "qbm/operator_core.hpp"
#include "qbm/random.hpp"
#include "qbm/shot_estimators.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qbm {

struct GroundEnergy {
  HermitianOperator hamiltonian;
};

struct RelativeEntropy {
  DensityMatrix target;
};

using LossSpec = std::variant<GroundEnergy, RelativeEntropy>;

namespace detail {

inline void require_loss_dim(const ParamHamiltonian& h, const LossSpec& loss) {
  const Eigen::Index d = std::visit(
      [](const auto& l) -> Eigen::Index {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, GroundEnergy>) {
          return l.hamiltonian.dim();
        } else {
          return l.target.dim();
        }
      },
      loss);
  if (d != h.dim()) {
    throw std::invalid_argument("loss operator has dimension " + std::to_string(d) +
                                " but the model acts on dimension " + std::to_string(h.dim()));
  }
}

/// Tr[w ln w] with 0 ln 0 = 0.
inline double neg_entropy(const DensityMatrix& w) {
  const SpectralDecomposition sd = spectral(HermitianOperator(w.matrix()));
  double acc = 0.0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    const double x = sd.eigenvalues[k];
    if (x > 0.0) acc += x * std::log(x);
  }
  return acc;
}

}  // namespace detail

/// Tr[H rho(theta)].
inline double ground_energy_loss(const ParamHamiltonian& h, const HermitianOperator& ham) {
  return expectation(ham, thermal_state(h).rho);
}

/// D(w || rho(theta)) = Tr[w ln w] + Tr[w G(theta)] + ln Z(theta).
inline double relative_entropy_loss(const ParamHamiltonian& h, const DensityMatrix& target) {
  detail::require_same_dim(target.matrix(), ComplexMatrix(h.dim(), h.dim()), "relative_entropy_loss");
  const ThermalState ts = thermal_state(h);
  return detail::neg_entropy(target) + expectation(assemble(h), target) + ts.log_partition;
}

inline double loss_value(const ParamHamiltonian& h, const LossSpec& loss) {
  detail::require_loss_dim(h, loss);
  if (const auto* g = std::get_if<GroundEnergy>(&loss)) return ground_energy_loss(h, g->hamiltonian);
  return relative_entropy_loss(h, std::get<RelativeEntropy>(loss).target);
}

/// dL/dtheta_j = -1/2 Tr[{H, Phi(G_j)} rho] + <H><G_j>.
inline RealVector grad_ground_energy(const ParamHamiltonian& h, const HermitianOperator& ham) {
  detail::require_same_dim(ham.matrix(), ComplexMatrix(h.dim(), h.dim()), "grad_ground_energy");
  const detail::EigenFrame frame(h.term_matrices(), h.theta());
  const ComplexMatrix h_eig = frame.state.to_eigenbasis(ham.matrix());
  const double mean_h = detail::checked_real(frame.state.trace_in_eigenbasis(h_eig), "<H>");
  RealVector g(frame.size());
  for (int j = 0; j < frame.size(); ++j) {
    const double first = detail::checked_real(
        detail::half_anticommutator_mean(frame.state.weights, h_eig,
                                         frame.filtered[static_cast<std::size_t>(j)]),
        "ground-energy gradient");
    g[j] = -first + mean_h * frame.means[j];
  }
  return g;
}

/// dD(w || rho(theta))/dtheta_j = <G_j>_w - <G_j>_rho.
inline RealVector grad_rel_entropy(const ParamHamiltonian& h, const DensityMatrix& target) {
  detail::require_same_dim(target.matrix(), ComplexMatrix(h.dim(), h.dim()), "grad_rel_entropy");
  const ThermalState ts = thermal_state(h);
  RealVector g(h.num_terms());
  for (int j = 0; j < h.num_terms(); ++j) {
    const ComplexMatrix& t = h.term_matrices()[static_cast<std::size_t>(j)];
    g[j] = expectation(t, target) - expectation(t, ts.rho);
  }
  return g;
}

inline RealVector loss_gradient(const ParamHamiltonian& h, const LossSpec& loss) {
  detail::require_loss_dim(h, loss);
  if (const auto* g = std::get_if<GroundEnergy>(&loss)) return grad_ground_energy(h, g->hamiltonian);
  return grad_rel_entropy(h, std::get<RelativeEntropy>(loss).target);
}

/// Real coefficients c_P of H = sum_P c_P P over all Pauli strings on n qubits.
inline std::vector<std::pair<PauliString, double>> pauli_decomposition(const HermitianOperator& ham,
                                                                       int qubits,
                                                                       double cutoff = 1e-14) {
  if (ham.dim() != (Eigen::Index{1} << qubits)) {
    throw std::invalid_argument("pauli_decomposition: dimension does not match qubit count");
  }
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::pair<PauliString, double>> out;
  const std::uint64_t count = std::uint64_t{1} << (2 * qubits);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::string label(static_cast<std::size_t>(qubits), 'I');
    for (int q = 0; q < qubits; ++q) label[static_cast<std::size_t>(q)] = kLetters[(code >> (2 * (qubits - 1 - q))) & 3];
    PauliString p(label);
    const Complex tr = (pauli_to_matrix(p).matrix() * ham.matrix()).trace();
    const double c = detail::real_with_check(tr, max_abs(ham.matrix()), "pauli_decomposition") /
                     static_cast<double>(ham.dim());
    if (std::abs(c) > cutoff) out.emplace_back(std::move(p), c);
  }
  return out;
}

/// Shot estimate of the ground-energy gradient. H is expanded in Pauli strings;
/// each non-identity string P contributes -c_P (1/2 <{P, Phi(G_j)}> - <P><G_j>),
/// with the first piece from the single-time interference circuit and the
/// second from the two-copy product estimator, N shots each.
inline RealVector grad_ground_energy_shots(const ParamHamiltonian& h, const HermitianOperator& ham,
                                           const ShotConfig& cfg, int workers = 1) {
  detail::require_pauli_terms(h);
  const auto paulis = pauli_decomposition(ham, h.qubits());
  const detail::EigenFrame frame(h.term_matrices(), h.theta());
  const std::uint64_t n = cfg.shots();
  const int jn = h.num_terms();
  RealVector g = RealVector::Zero(jn);
  std::vector<double> parts(static_cast<std::size_t>(jn) * paulis.size(), 0.0);
  parallel_for(parts.size(), workers, [&](std::size_t idx) {
    const int j = static_cast<int>(idx / paulis.size());
    const std::size_t p = idx % paulis.size();
    const auto& [label, coeff] = paulis[p];
    if (label.label().find_first_not_of('I') == std::string::npos) return;
    RandomStream rng = RandomStream::split(
        cfg.master_seed, detail::stream_index(detail::StreamTag::Gradient, static_cast<int>(p), j));
    const ComplexMatrix p_eig = frame.state.to_eigenbasis(pauli_to_matrix(label).matrix());
    const double mean_p = detail::checked_real(frame.state.trace_in_eigenbasis(p_eig), "<P>");
    const double first = detail::first_term_shots(frame.state, p_eig,
                                                  frame.terms[static_cast<std::size_t>(j)], false, n, rng);
    const double second = detail::product_shots(mean_p, frame.means[j], n, rng);
    parts[idx] = -coeff * (first - second);
  });
  for (int j = 0; j < jn; ++j) {
    for (std::size_t p = 0; p < paulis.size(); ++p) g[j] += parts[static_cast<std::size_t>(j) * paulis.size() + p];
  }
  return g;
}

/// Shot estimate of the relative-entropy gradient: each of <G_j>_w and
/// <G_j>_rho from N single-copy Pauli measurements.
inline RealVector grad_rel_entropy_shots(const ParamHamiltonian& h, const DensityMatrix& target,
                                         const ShotConfig& cfg) {
  detail::require_pauli_terms(h);
  const ThermalState ts = thermal_state(h);
  const std::uint64_t n = cfg.shots();
  RealVector g(h.num_terms());
  for (int j = 0; j < h.num_terms(); ++j) {
    const ComplexMatrix& t = h.term_matrices()[static_cast<std::size_t>(j)];
    RandomStream rng = RandomStream::split(
        cfg.master_seed, detail::stream_index(detail::StreamTag::Moment, 0, j));
    const double on_target = detail::pauli_mean_shots(expectation(t, target), n, rng);
    const double on_model = detail::pauli_mean_shots(expectation(t, ts.rho), n, rng);
    g[j] = on_target - on_model;
  }
  return g;
}

/// theta' = theta - 4 eta pinv(metric) grad.
inline RealVector natgrad_step(const RealVector& theta, const RealVector& grad, const RealMatrix& metric,
                               double eta, double pinv_rel_tol = 1e-10) {
  if (grad.size() != theta.size() || metric.rows() != theta.size() || metric.cols() != theta.size()) {
    throw std::invalid_argument("natgrad_step: dimension mismatch");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("natgrad_step: eta must be positive");
  if (max_abs(RealMatrix(metric - metric.transpose())) > kSymmetryTolerance * std::max(1.0, max_abs(metric))) {
    throw std::invalid_argument("natgrad_step: metric is not symmetric");
  }
  return theta - 4.0 * eta * (pseudo_inverse(metric, pinv_rel_tol) * grad);
}

inline RealVector natgrad_step(const RealVector& theta, const RealVector& grad, const InfoMatrix& metric,
                               double eta, double pinv_rel_tol = 1e-10) {
  return natgrad_step(theta, grad, metric.values, eta, pinv_rel_tol);
}

enum class TrainMetric { FisherBures, KuboMori, Euclidean };

inline std::string_view to_string(TrainMetric m) {
  switch (m) {
    case TrainMetric::FisherBures:
      return "fb";
    case TrainMetric::KuboMori:
      return "km";
    case TrainMetric::Euclidean:
      return "euclidean";
  }
  return "?";
}

/// The Euclidean baseline uses the metric 4I so that the update is plain
/// gradient descent theta - eta grad.
inline RealMatrix euclidean_metric(Eigen::Index n) { return 4.0 * RealMatrix::Identity(n, n); }

struct TrainConfig {
  double eta = 0.1;
  TrainMetric metric = TrainMetric::FisherBures;
  /// Shot mode when set, exact otherwise.
  std::optional<ShotConfig> shots;
  int max_iters = 1000;
  double grad_tol = 1e-8;
  double pinv_rel_tol = 1e-10;
  /// Added to the metric as lambda I before inversion. Default off.
  double tikhonov = 0.0;
  int workers = 1;

  void validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("TrainConfig: eta must be positive");
    if (max_iters < 1) throw std::invalid_argument("TrainConfig: max_iters must be at least 1");
    if (!(grad_tol >= 0.0)) throw std::invalid_argument("TrainConfig: grad_tol must be non-negative");
    if (!(pinv_rel_tol > 0.0 && pinv_rel_tol < 1.0)) {
      throw std::invalid_argument("TrainConfig: pinv_rel_tol must lie in (0, 1)");
    }
    if (!(tikhonov >= 0.0)) throw std::invalid_argument("TrainConfig: tikhonov must be non-negative");
    if (shots) (void)shots->shots();
  }
};

struct TrainRecord {
  int iter = 0;
  RealVector theta;
  /// Exact loss at theta, also in shot mode.
  double loss = 0.0;
  double grad_norm = 0.0;
  double metric_min_eig = 0.0;
  double metric_cond = 0.0;
};

struct TrainTrace {
  std::vector<TrainRecord> records;
  /// "grad_tol" or "max_iters".
  std::string stop_reason;

  const TrainRecord& final() const { return records.back(); }
};

/// Metric used at the current point.
inline RealMatrix training_metric(const ParamHamiltonian& h, const TrainConfig& cfg,
                                  const std::optional<ShotConfig>& shots) {
  RealMatrix m;
  if (cfg.metric == TrainMetric::Euclidean) {
    m = euclidean_metric(h.num_terms());
  } else {
    const MetricKind kind = cfg.metric == TrainMetric::FisherBures ? MetricKind::FisherBures : MetricKind::KuboMori;
    m = shots ? estimate_matrix(h, kind, *shots, cfg.workers).matrix.values : info_exact(h, kind).values;
  }
  if (cfg.tikhonov > 0.0) m += cfg.tikhonov * RealMatrix::Identity(m.rows(), m.cols());
  return m;
}

inline TrainTrace train(const ParamHamiltonian& h0, const LossSpec& loss, const TrainConfig& cfg) {
  cfg.validate();
  detail::require_loss_dim(h0, loss);
  TrainTrace trace;
  ParamHamiltonian h = h0;
  for (int iter = 0;; ++iter) {
    try {
      std::optional<ShotConfig> iter_shots;
      if (cfg.shots) {
        iter_shots = *cfg.shots;
        iter_shots->master_seed = stream_seed(cfg.shots->master_seed, static_cast<std::uint64_t>(iter));
      }
      RealVector grad;
      if (!iter_shots) {
        grad = loss_gradient(h, loss);
      } else if (const auto* g = std::get_if<GroundEnergy>(&loss)) {
        grad = grad_ground_energy_shots(h, g->hamiltonian, *iter_shots, cfg.workers);
      } else {
        grad = grad_rel_entropy_shots(h, std::get<RelativeEntropy>(loss).target, *iter_shots);
      }
      const RealMatrix metric = training_metric(h, cfg, iter_shots);
      TrainRecord rec;
      rec.iter = iter;
      rec.theta = h.theta();
      rec.loss = loss_value(h, loss);
      rec.grad_norm = grad.norm();
      rec.metric_min_eig = min_eigenvalue(metric);
      rec.metric_cond = condition_number(metric);
      trace.records.push_back(rec);
      if (rec.grad_norm <= cfg.grad_tol) {
        trace.stop_reason = "grad_tol";
        break;
      }
      if (iter >= cfg.max_iters) {
        trace.stop_reason = "max_iters";
        break;
      }
      h = h.with_theta(natgrad_step(h.theta(), grad, metric, cfg.eta, cfg.pinv_rel_tol));
    } catch (const NumericError& e) {
      throw NumericError("train: iteration " + std::to_string(iter) + ": " + e.what());
    }
  }
  return trace;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// iter,loss,grad_norm,metric_min_eig,metric_cond,theta_0..theta_{J-1}
inline void write_trace_csv(std::ostream& os, const TrainTrace& trace) {
  if (trace.records.empty()) return;
  os << "iter,loss,grad_norm,metric_min_eig,metric_cond";
  for (Eigen::Index j = 0; j < trace.records.front().theta.size(); ++j) os << ",theta_" << j;
  os << '\n';
  for (const auto& r : trace.records) {
    os << r.iter << ',' << detail::format_double(r.loss) << ',' << detail::format_double(r.grad_norm) << ','
       << detail::format_double(r.metric_min_eig) << ',' << detail::format_double(r.metric_cond);
    for (Eigen::Index j = 0; j < r.theta.size(); ++j) os << ',' << detail::format_double(r.theta[j]);
    os << '\n';
  }
}

}  // namespace qbm

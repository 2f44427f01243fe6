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

// Config parsing and command implementations behind the qbm command-line tool.

#include "qbm/bp_channel.hpp"
#include "qbm/hamiltonian.hpp"
#include "qbm/info_geometry.hpp"
#include "qbm/instances.hpp"
#include "qbm/metrology.hpp"
#include "qbm/natgrad.hpp"
#include "qbm/shot_estimators.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qbm {

using Json = nlohmann::json;

/// Malformed or inconsistent configuration.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace cli {

namespace detail {

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

inline double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + ": non-finite number");
  return x;
}

inline std::int64_t as_integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t as_unsigned(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw SchemaError(where + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  return v.get<std::string>();
}

inline RealVector as_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of numbers");
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out[static_cast<Eigen::Index>(k)] = as_number(v[k], where);
  return out;
}

inline std::vector<std::string> as_labels(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of Pauli labels");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(as_string(x, where));
  return out;
}

inline RealMatrix as_matrix(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw SchemaError(where + ": expected a non-empty array of rows");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  RealMatrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!v[r].is_array() || v[r].size() != cols) throw SchemaError(where + ": ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_number(v[r][c], where);
    }
  }
  return m;
}

template <typename T, typename Fn>
T optional_field(const Json& obj, const char* key, T fallback, Fn&& convert, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return convert(obj.at(key), where + "." + key);
}

inline MetricKind parse_kind(const Json& v, const std::string& where) {
  const std::string s = as_string(v, where);
  if (s == "fb") return MetricKind::FisherBures;
  if (s == "km") return MetricKind::KuboMori;
  throw SchemaError(where + ": kind must be 'fb' or 'km', got '" + s + "'");
}

inline InfoMethod parse_method(const Json& v, const std::string& where) {
  const std::string s = as_string(v, where);
  if (s == "exact") return InfoMethod::TheoremClosedForm;
  if (s == "spectral") return InfoMethod::SpectralOracle;
  if (s == "shot") return InfoMethod::ShotEstimate;
  throw SchemaError(where + ": method must be 'exact', 'spectral' or 'shot', got '" + s + "'");
}

inline TrainMetric parse_train_metric(const Json& v, const std::string& where) {
  const std::string s = as_string(v, where);
  if (s == "fb") return TrainMetric::FisherBures;
  if (s == "km") return TrainMetric::KuboMori;
  if (s == "euclidean") return TrainMetric::Euclidean;
  throw SchemaError(where + ": metric must be 'fb', 'km' or 'euclidean', got '" + s + "'");
}

/// Wraps library argument errors raised while building config objects.
template <typename Fn>
auto schema_guard(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

inline Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

inline Json to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

/// Infinite or NaN values become null.
inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

inline ParamHamiltonian parse_hamiltonian(const Json& v, const std::string& where = "hamiltonian") {
  detail::check_keys(v, {"qubits", "terms", "theta"}, where);
  const std::int64_t qubits = detail::as_integer(detail::require(v, "qubits", where), where + ".qubits");
  const auto labels = detail::as_labels(detail::require(v, "terms", where), where + ".terms");
  const RealVector theta = detail::as_vector(detail::require(v, "theta", where), where + ".theta");
  return detail::schema_guard(where, [&] {
    ParamHamiltonian h(labels, theta);
    if (h.qubits() != qubits) {
      throw SchemaError(where + ": qubits = " + std::to_string(qubits) + " but terms act on " +
                        std::to_string(h.qubits()) + " qubits");
    }
    return h;
  });
}

struct InfoMatrixTask {
  MetricKind kind = MetricKind::FisherBures;
  InfoMethod method = InfoMethod::TheoremClosedForm;
  double epsilon = 0.05;
  double delta = 0.05;
};

struct EstimateTask {
  MetricKind kind = MetricKind::FisherBures;
  int i = 0;
  int j = 0;
  double epsilon = 0.05;
  double delta = 0.05;
};

struct TrainTask {
  TrainConfig config;
  LossSpec loss;
  std::optional<std::string> trace_csv;
};

struct MetrologyTask {
  int j = 0;
  std::uint64_t n = 10000;
  int repeats = 200;
  std::optional<RealMatrix> weight;
};

struct ValidateTask {
  int random_instances = 10;
  int max_qubits = 2;
  int directions = 20;
  double theta_range = 1.5;
  std::uint64_t sampler_draws = 100000;
};

struct ProblemConfig {
  ParamHamiltonian hamiltonian;
  std::uint64_t seed = 0;
  std::optional<InfoMatrixTask> info_matrix;
  std::optional<EstimateTask> estimate;
  std::optional<TrainTask> train;
  std::optional<MetrologyTask> metrology;
  std::optional<ValidateTask> validate;
};

namespace detail {

inline ShotConfig shot_config(double eps, double del, std::uint64_t seed, const std::string& where) {
  return schema_guard(where, [&] { return ShotConfig(eps, del, seed); });
}

inline int as_int(const Json& v, const std::string& where) {
  const std::int64_t x = as_integer(v, where);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw SchemaError(where + ": integer out of range");
  }
  return static_cast<int>(x);
}

inline InfoMatrixTask parse_info_matrix(const Json& v) {
  const std::string w = "info_matrix";
  check_keys(v, {"kind", "method", "epsilon", "delta"}, w);
  InfoMatrixTask t;
  t.kind = parse_kind(require(v, "kind", w), w + ".kind");
  t.method = parse_method(require(v, "method", w), w + ".method");
  t.epsilon = optional_field(v, "epsilon", t.epsilon, as_number, w);
  t.delta = optional_field(v, "delta", t.delta, as_number, w);
  shot_config(t.epsilon, t.delta, 0, w);
  return t;
}

inline EstimateTask parse_estimate(const Json& v) {
  const std::string w = "estimate";
  check_keys(v, {"kind", "i", "j", "epsilon", "delta"}, w);
  EstimateTask t;
  t.kind = parse_kind(require(v, "kind", w), w + ".kind");
  t.i = as_int(require(v, "i", w), w + ".i");
  t.j = as_int(require(v, "j", w), w + ".j");
  t.epsilon = optional_field(v, "epsilon", t.epsilon, as_number, w);
  t.delta = optional_field(v, "delta", t.delta, as_number, w);
  shot_config(t.epsilon, t.delta, 0, w);
  return t;
}

inline LossSpec parse_loss(const Json& v, const ParamHamiltonian& h) {
  const std::string w = "train.loss";
  const std::string type = as_string(require(v, "type", w), w + ".type");
  if (type == "ground_energy") {
    check_keys(v, {"type", "terms", "coeffs"}, w);
    const auto labels = as_labels(require(v, "terms", w), w + ".terms");
    const RealVector coeffs = as_vector(require(v, "coeffs", w), w + ".coeffs");
    return schema_guard(w, [&]() -> LossSpec {
      const ParamHamiltonian ham(labels, coeffs);
      if (ham.dim() != h.dim()) throw SchemaError(w + ": loss Hamiltonian acts on a different qubit count");
      return GroundEnergy{assemble(ham)};
    });
  }
  if (type == "relative_entropy") {
    check_keys(v, {"type", "target_theta"}, w);
    const RealVector target = as_vector(require(v, "target_theta", w), w + ".target_theta");
    return schema_guard(w, [&]() -> LossSpec {
      return RelativeEntropy{thermal_state(h.with_theta(target)).rho};
    });
  }
  throw SchemaError(w + ".type: expected 'ground_energy' or 'relative_entropy', got '" + type + "'");
}

inline TrainTask parse_train(const Json& v, const ParamHamiltonian& h, std::uint64_t seed) {
  const std::string w = "train";
  check_keys(v, {"loss", "eta", "metric", "mode", "epsilon", "delta", "max_iters", "grad_tol", "pinv_rel_tol",
                 "tikhonov", "trace_csv"},
             w);
  TrainTask t{TrainConfig{}, parse_loss(require(v, "loss", w), h), std::nullopt};
  TrainConfig& c = t.config;
  c.eta = as_number(require(v, "eta", w), w + ".eta");
  c.metric = parse_train_metric(require(v, "metric", w), w + ".metric");
  c.max_iters = as_int(require(v, "max_iters", w), w + ".max_iters");
  c.grad_tol = optional_field(v, "grad_tol", c.grad_tol, as_number, w);
  c.pinv_rel_tol = optional_field(v, "pinv_rel_tol", c.pinv_rel_tol, as_number, w);
  c.tikhonov = optional_field(v, "tikhonov", c.tikhonov, as_number, w);
  const std::string mode = optional_field(v, "mode", std::string("exact"), as_string, w);
  if (mode == "shot") {
    const double eps = as_number(require(v, "epsilon", w), w + ".epsilon");
    const double del = as_number(require(v, "delta", w), w + ".delta");
    c.shots = shot_config(eps, del, seed, w);
  } else if (mode != "exact") {
    throw SchemaError(w + ".mode: expected 'exact' or 'shot', got '" + mode + "'");
  } else if (v.contains("epsilon") || v.contains("delta")) {
    throw SchemaError(w + ": epsilon/delta only apply when mode is 'shot'");
  }
  if (v.contains("trace_csv")) t.trace_csv = as_string(v.at("trace_csv"), w + ".trace_csv");
  schema_guard(w, [&] {
    c.validate();
    return 0;
  });
  return t;
}

inline MetrologyTask parse_metrology(const Json& v) {
  const std::string w = "metrology";
  check_keys(v, {"j", "n", "repeats", "weight"}, w);
  MetrologyTask t;
  t.j = as_int(require(v, "j", w), w + ".j");
  t.n = as_unsigned(require(v, "n", w), w + ".n");
  t.repeats = as_int(require(v, "repeats", w), w + ".repeats");
  if (v.contains("weight")) t.weight = as_matrix(v.at("weight"), w + ".weight");
  return t;
}

inline ValidateTask parse_validate(const Json& v) {
  const std::string w = "validate";
  check_keys(v, {"random_instances", "max_qubits", "directions", "theta_range", "sampler_draws"}, w);
  ValidateTask t;
  t.random_instances = optional_field(v, "random_instances", t.random_instances, as_int, w);
  t.max_qubits = optional_field(v, "max_qubits", t.max_qubits, as_int, w);
  t.directions = optional_field(v, "directions", t.directions, as_int, w);
  t.theta_range = optional_field(v, "theta_range", t.theta_range, as_number, w);
  t.sampler_draws = optional_field(v, "sampler_draws", t.sampler_draws, as_unsigned, w);
  if (t.random_instances < 0 || t.max_qubits < 1 || t.max_qubits > 4 || t.directions < 0 ||
      !(t.theta_range > 0.0) || t.sampler_draws < 2) {
    throw SchemaError(w + ": parameter out of range");
  }
  return t;
}

}  // namespace detail

inline ProblemConfig parse_config(const Json& v) {
  detail::check_keys(v, {"hamiltonian", "seed", "info_matrix", "estimate", "train", "metrology", "validate"},
                     "config");
  ProblemConfig c{parse_hamiltonian(detail::require(v, "hamiltonian", "config")), 0, {}, {}, {}, {}, {}};
  c.seed = detail::optional_field(v, "seed", std::uint64_t{0}, detail::as_unsigned, std::string("config"));
  if (v.contains("info_matrix")) c.info_matrix = detail::parse_info_matrix(v.at("info_matrix"));
  if (v.contains("estimate")) c.estimate = detail::parse_estimate(v.at("estimate"));
  if (v.contains("train")) c.train = detail::parse_train(v.at("train"), c.hamiltonian, c.seed);
  if (v.contains("metrology")) c.metrology = detail::parse_metrology(v.at("metrology"));
  if (v.contains("validate")) c.validate = detail::parse_validate(v.at("validate"));
  return c;
}

inline ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open config file '" + path + "'");
  Json v;
  try {
    v = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(v);
}

/// Replaces the seed everywhere it was copied into sub-configs.
inline void override_seed(ProblemConfig& c, std::uint64_t seed) {
  c.seed = seed;
  if (c.train && c.train->config.shots) c.train->config.shots->master_seed = seed;
}

inline const char* require_block(bool present, const char* name) {
  if (!present) throw SchemaError(std::string("config has no '") + name + "' block");
  return name;
}

inline Json cmd_info_matrix(const ProblemConfig& c, int workers = 1) {
  require_block(c.info_matrix.has_value(), "info_matrix");
  const InfoMatrixTask& t = *c.info_matrix;
  const ParamHamiltonian& h = c.hamiltonian;
  Json out;
  out["kind"] = std::string(to_string(t.kind));
  out["method"] = std::string(to_string(t.method));
  out["theta"] = detail::to_json(h.theta());
  InfoMatrix m;
  if (t.method == InfoMethod::ShotEstimate) {
    const ShotConfig cfg = detail::shot_config(t.epsilon, t.delta, c.seed, "info_matrix");
    const MatrixEstimate est = estimate_matrix(h, t.kind, cfg, workers, true);
    m = est.matrix;
    out["epsilon"] = t.epsilon;
    out["delta"] = t.delta;
    out["shots_per_term"] = cfg.shots();
    out["total_shots"] = est.total_shots;
    out["max_abs_deviation"] = *est.max_abs_deviation;
  } else {
    const InfoMatrix exact = info_exact(h, t.kind);
    const InfoMatrix spec = info_spectral(h, t.kind);
    m = t.method == InfoMethod::TheoremClosedForm ? exact : spec;
    out["max_abs_deviation"] = max_abs(RealMatrix(exact.values - spec.values));
  }
  out["matrix"] = detail::to_json(m.values);
  out["min_eigenvalue"] = m.min_eigenvalue();
  out["condition_number"] = detail::number_or_null(m.condition_number());
  return out;
}

inline Json cmd_estimate(const ProblemConfig& c) {
  require_block(c.estimate.has_value(), "estimate");
  const EstimateTask& t = *c.estimate;
  const ShotConfig cfg = detail::shot_config(t.epsilon, t.delta, c.seed, "estimate");
  const EstimatorReport r = estimate_element(c.hamiltonian, t.kind, t.i, t.j, cfg);
  Json out;
  out["kind"] = std::string(to_string(t.kind));
  out["i"] = t.i;
  out["j"] = t.j;
  out["epsilon"] = t.epsilon;
  out["delta"] = t.delta;
  out["shots"] = r.shots;
  out["value"] = r.value;
  out["first_term"] = *r.first_term;
  out["second_term"] = *r.second_term;
  out["exact_reference"] = *r.exact_reference;
  return out;
}

struct TrainOutput {
  TrainTrace trace;
  Json summary;
};

inline TrainOutput cmd_train(const ProblemConfig& c) {
  require_block(c.train.has_value(), "train");
  const TrainTask& t = *c.train;
  TrainOutput out{train(c.hamiltonian, t.loss, t.config), Json::object()};
  const TrainRecord& last = out.trace.final();
  out.summary["metric"] = std::string(to_string(t.config.metric));
  out.summary["mode"] = t.config.shots ? "shot" : "exact";
  out.summary["eta"] = t.config.eta;
  out.summary["final_theta"] = detail::to_json(last.theta);
  out.summary["final_loss"] = last.loss;
  out.summary["final_grad_norm"] = last.grad_norm;
  out.summary["iters"] = last.iter;
  out.summary["stop_reason"] = out.trace.stop_reason;
  return out;
}

inline Json cmd_metrology(const ProblemConfig& c, int workers = 1) {
  require_block(c.metrology.has_value(), "metrology");
  const MetrologyTask& t = *c.metrology;
  const ParamHamiltonian& h = c.hamiltonian;
  const MLEResult r = mle_single_param(h, t.j, t.n, t.repeats, c.seed, workers);
  Json out;
  out["theta"] = detail::to_json(h.theta());
  out["j"] = t.j;
  out["n"] = t.n;
  out["repeats"] = t.repeats;
  out["crb"] = r.crb;
  out["empirical_variance"] = r.empirical_variance;
  out["ratio"] = r.ratio;
  out["estimate_mean"] = r.estimate;
  out["fisher_exact"] = r.fisher_exact;
  out["fisher_classical_sld"] = r.fisher_classical;
  if (t.weight) {
    const CramerRaoReport cr = cr_bound(h, t.n, t.weight);
    out["bound_matrix"] = detail::to_json(cr.bound_matrix);
    out["scalar_bound"] = *cr.scalar_bound;
  }
  return out;
}

struct ValidationLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationLine> lines;
  bool passed() const {
    for (const auto& l : lines) {
      if (!l.passed) return false;
    }
    return true;
  }
};

namespace detail {

inline std::string fmt(double x) { return qbm::detail::format_double(x); }

inline void validate_instance(const ParamHamiltonian& h, const std::string& tag, int directions,
                              RandomStream& rng, ValidationReport& rep) {
  const InfoMatrix fb = fb_exact(h);
  const InfoMatrix km = km_exact(h);
  const double dev_fb = max_abs(RealMatrix(fb.values - fb_spectral_oracle(h).values));
  const double dev_km = max_abs(RealMatrix(km.values - km_spectral_oracle(h).values));
  rep.lines.push_back({tag + " fb_exact_vs_spectral", dev_fb <= 1e-8, "max_dev=" + fmt(dev_fb)});
  rep.lines.push_back({tag + " km_exact_vs_spectral", dev_km <= 1e-8, "max_dev=" + fmt(dev_km)});

  double worst_res = 0.0, worst_diag = 0.0;
  for (int j = 0; j < h.num_terms(); ++j) {
    const SldCheck s = sld_check(h, j);
    worst_res = std::max(worst_res, s.lyapunov_residual);
    worst_diag = std::max(worst_diag, std::abs(s.fisher_from_sld - fb.values(j, j)));
  }
  rep.lines.push_back({tag + " sld_lyapunov", worst_res <= 1e-9 && worst_diag <= 1e-8,
                       "residual=" + fmt(worst_res) + " diag_dev=" + fmt(worst_diag)});

  const OrderReport ord = check_order(km, fb);
  rep.lines.push_back({tag + " km_dominates_fb", ord.min_eig_difference >= -kOrderTolerance &&
                                                     ord.min_eig_b >= -kOrderTolerance,
                       "min_eig(km-fb)=" + fmt(ord.min_eig_difference) + " min_eig(fb)=" + fmt(ord.min_eig_b)});

  double worst_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const VarianceGap g = variance_gap(h, random_direction(rng, h.num_terms()));
    worst_gap = std::min(worst_gap, g.km_side - g.fb_side);
  }
  if (directions > 0) {
    rep.lines.push_back({tag + " variance_order", worst_gap >= -kOrderTolerance, "min_gap=" + fmt(worst_gap)});
  }

  if (h.qubits() <= 3) {
    const AdditivityReport a = additivity_check(h);
    rep.lines.push_back({tag + " additivity", a.passed, "max_dev=" + fmt(a.max_abs_deviation)});
  }
}

}  // namespace detail

/// Cross-oracle, ordering, additivity and sampler checks on the configured
/// model plus random instances.
inline ValidationReport cmd_validate(const ProblemConfig& c) {
  const ValidateTask t = c.validate.value_or(ValidateTask{});
  ValidationReport rep;
  RandomStream rng = RandomStream::split(c.seed, 0);
  detail::validate_instance(c.hamiltonian, "config", t.directions, rng, rep);
  for (int k = 0; k < t.random_instances; ++k) {
    const int qubits = 1 + static_cast<int>(rng.uniform() * t.max_qubits);
    const int available = (1 << (2 * qubits)) - 1;
    const int terms = 1 + static_cast<int>(rng.uniform() * std::min(4, available));
    const ParamHamiltonian h = random_hamiltonian(rng, qubits, terms, t.theta_range);
    detail::validate_instance(h, "random" + std::to_string(k), t.directions, rng, rep);
  }

  // E[cos(2t)] under the tent density equals tanh(1).
  RandomStream srng = RandomStream::split(c.seed, 1);
  const TentSampler& sampler = default_tent_sampler();
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t k = 0; k < t.sampler_draws; ++k) {
    const double x = std::cos(2.0 * sampler.sample(srng));
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(t.sampler_draws);
  const double mean = sum / n;
  const double se = std::sqrt(std::max(0.0, (sum_sq / n - mean * mean) / (n - 1.0)));
  const double err = std::abs(mean - std::tanh(1.0));
  rep.lines.push_back({"sampler_moment", err <= 3.0 * se,
                       "|E[cos 2t] - tanh(1)|=" + detail::fmt(err) + " band=" + detail::fmt(3.0 * se)});
  return rep;
}

}  // namespace cli

}  // namespace qbm

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

#include "qbm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitStatistical = 4;

struct Options {
  std::string config;
  std::string out;
  std::string trace;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw qbm::SchemaError("cannot write '" + path + "'");
  f << text;
}

qbm::cli::ProblemConfig load(const Options& o) {
  qbm::cli::ProblemConfig c = qbm::cli::load_config(o.config);
  if (o.seed) qbm::cli::override_seed(c, *o.seed);
  return c;
}

int run(const std::string& command, const Options& o) {
  using namespace qbm::cli;
  const ProblemConfig c = load(o);
  if (command == "info-matrix") {
    emit(cmd_info_matrix(c, o.workers).dump(2) + "\n", o.out);
  } else if (command == "estimate") {
    emit(cmd_estimate(c).dump(2) + "\n", o.out);
  } else if (command == "train") {
    const TrainOutput r = cmd_train(c);
    std::string trace_path = o.trace;
    if (trace_path.empty() && c.train->trace_csv) trace_path = *c.train->trace_csv;
    if (!trace_path.empty()) {
      std::ofstream f(trace_path);
      if (!f) throw qbm::SchemaError("cannot write '" + trace_path + "'");
      qbm::write_trace_csv(f, r.trace);
    }
    emit(r.summary.dump(2) + "\n", o.out);
  } else if (command == "metrology") {
    emit(cmd_metrology(c, o.workers).dump(2) + "\n", o.out);
  } else if (command == "validate") {
    const ValidationReport rep = cmd_validate(c);
    std::string text;
    for (const auto& l : rep.lines) text += (l.passed ? "PASS " : "FAIL ") + l.name + " " + l.detail + "\n";
    text += rep.passed() ? "ALL PASS\n" : "SOME CHECKS FAILED\n";
    emit(text, o.out);
    return rep.passed() ? 0 : kExitStatistical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-state information geometry: metrics, estimators, training, metrology"};
  app.require_subcommand(1);
  Options o;
  for (const char* name : {"info-matrix", "train", "metrology", "estimate", "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", o.config, "problem definition (JSON)")->required();
    sub->add_option("--out", o.out, "output file, stdout when omitted");
    sub->add_option("--seed", o.seed, "master seed, overrides the config");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    if (std::string(name) == "train") sub->add_option("--trace", o.trace, "trace CSV path");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const qbm::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

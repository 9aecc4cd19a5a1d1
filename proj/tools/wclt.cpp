// Copyright 2026 The wclt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wclt: command-line front end for the counting-function experiments.
//
//   wclt counting --ensemble gue-tridiag --n 4096 --reps 20000 --format json
//   wclt variance-slope --n 1024 --n 4096 --n 16384 --reps 20000
//   wclt predict --n 4096 --y 0.5
//
// Exit status: 0 all verdicts pass, 1 a verdict failed, 2 usage error,
// 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wclt/ensembles.hpp"
#include "wclt/errors.hpp"
#include "wclt/harness/config.hpp"
#include "wclt/harness/experiments.hpp"
#include "wclt/harness/report.hpp"
#include "wclt/harness/svg.hpp"
#include "wclt/semicircle.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::optional<std::string> ensemble;
  std::optional<std::string> reference;
  std::vector<std::string> n;
  std::optional<std::string> y;
  std::optional<std::string> reps;
  std::optional<std::string> seed;
  std::optional<std::string> threads;
  std::optional<std::string> index;
  std::optional<std::string> epsilon;
  std::optional<std::string> rigidity_c;
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::string svg;
  bool timings = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--ensemble", f.ensemble, "gue-tridiag | goe-tridiag | gue-dense | goe-dense | "
                                            "wigner-threepoint | wigner-rademacher");
  cmd->add_option("--n", f.n, "Matrix order; repeat or comma-separate for a sweep");
  cmd->add_option("--y", f.y, "Left end of the interval [y, inf), in (-2, 2)");
  cmd->add_option("--reps", f.reps, "Replicates");
  cmd->add_option("--seed", f.seed, "Master seed (64-bit)");
  cmd->add_option("--threads", f.threads, "Worker threads");
  cmd->add_option("--config", f.config_path, "key=value file; command-line flags take precedence");
}

void add_output(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "Write the report here instead of stdout");
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--svg", f.svg, "Write a z-score histogram with the normal density");
  cmd->add_flag("--timings", f.timings, "Include wall-clock time in JSON output");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wclt::UsageError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw wclt::UsageError("cannot write " + path);
  out << text;
}

wclt::ExperimentConfig build_config(const Flags& f) {
  wclt::ExperimentConfig config;
  if (!f.config_path.empty()) config = wclt::parse_config_text(read_file(f.config_path));
  const std::pair<const char*, const std::optional<std::string>*> scalars[] = {
      {"ensemble", &f.ensemble}, {"reference", &f.reference}, {"y", &f.y},
      {"reps", &f.reps},         {"seed", &f.seed},           {"threads", &f.threads},
      {"index", &f.index},       {"epsilon", &f.epsilon},     {"rigidity-c", &f.rigidity_c},
  };
  for (const auto& [key, value] : scalars) {
    if (*value) wclt::apply_setting(config, key, **value);
  }
  if (!f.n.empty()) {
    config.n_list.clear();
    for (const auto& n : f.n) wclt::apply_setting(config, "n", n);
  }
  return config;
}

int emit(const wclt::ExperimentReport& report, const Flags& f) {
  if (f.format == "csv") {
    write_text(f.out, wclt::to_csv(report));
  } else {
    write_text(f.out, wclt::to_json(report, f.timings).dump(2) + "\n");
  }
  if (!f.svg.empty()) {
    std::ofstream svg(f.svg);
    if (!svg) throw wclt::UsageError("cannot write " + f.svg);
    svg << wclt::zscore_histogram_svg(report.z_scores, report.experiment);
  }
  for (const auto& v : report.verdicts) {
    std::cerr << (v.passed ? "PASS " : "FAIL ") << v.name << " = " << v.value
              << (v.op == wclt::Verdict::Op::kAtMost ? " <= " : " >= ") << v.threshold << '\n';
  }
  return report.passed() ? kExitPass : kExitVerdictFail;
}

void print_prediction(const Flags& f) {
  const auto config = build_config(f);
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t n : config.n_list) {
    const auto p = wclt::predict(n, config.y, wclt::beta_of(config.ensemble));
    out.push_back({{"n", p.n},
                   {"y", p.y},
                   {"beta", p.beta},
                   {"mean", p.mean},
                   {"variance", p.variance},
                   {"sigma", p.sigma},
                   {"center", p.center},
                   {"fluctuation_std", p.fluctuation_std}});
  }
  std::cout << out.dump(2) << '\n';
}

void print_moment_match() {
  const auto gue = wclt::EnsembleSpec::gue(2);
  const auto three = wclt::EnsembleSpec::gue_matched_three_point(2);
  const auto rad = wclt::EnsembleSpec::rademacher(2);
  nlohmann::json out = nlohmann::json::array();
  for (const auto* spec : {&three, &rad}) {
    const auto off = wclt::verify_moment_match(spec->off_diag_part, gue.off_diag_part, 4);
    const auto diag = wclt::verify_moment_match(spec->diag, gue.diag, 4);
    out.push_back({{"off_diagonal_part", spec->off_diag_part.describe()},
                   {"diagonal", spec->diag.describe()},
                   {"matches_gue_to_order_4", off.matched && diag.matched},
                   {"off_diagonal_first_mismatch", off.first_mismatch},
                   {"diagonal_first_mismatch", diag.first_mismatch}});
  }
  std::cout << out.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo checks of the eigenvalue counting CLT for Wigner matrices"};
  app.require_subcommand(1);
  Flags f;

  using Runner = std::function<wclt::ExperimentReport(const wclt::ExperimentConfig&)>;
  const std::vector<std::pair<std::string, Runner>> runners = {
      {"counting", wclt::run_counting},       {"variance-slope", wclt::run_variance_slope},
      {"clt", wclt::run_clt},                 {"fluctuation", wclt::run_fluctuation},
      {"rigidity", wclt::run_rigidity},       {"interlace", wclt::run_interlacing},
      {"universality", wclt::run_universality},
  };
  std::map<CLI::App*, Runner> dispatch;
  for (const auto& [name, fn] : runners) {
    auto* cmd = app.add_subcommand(name, "Run the " + name + " experiment");
    add_common(cmd, f);
    add_output(cmd, f);
    if (name == "fluctuation") cmd->add_option("--index", f.index, "1-based eigenvalue index");
    if (name == "rigidity") {
      cmd->add_option("--epsilon", f.epsilon, "Bulk margin");
      cmd->add_option("--rigidity-c", f.rigidity_c, "Window constant C");
    }
    if (name == "universality") cmd->add_option("--reference", f.reference, "Reference ensemble");
    dispatch[cmd] = fn;
  }
  auto* predict = app.add_subcommand("predict", "Print the leading-order theory for Y_n");
  add_common(predict, f);
  auto* match = app.add_subcommand("match-moments", "Print the entry laws and their moment match");

  try {
    app.parse(argc, argv);
    if (predict->parsed()) {
      print_prediction(f);
      return kExitPass;
    }
    if (match->parsed()) {
      print_moment_match();
      return kExitPass;
    }
    for (const auto& [cmd, fn] : dispatch) {
      if (cmd->parsed()) return emit(fn(build_config(f)), f);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const wclt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const wclt::InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  }
}

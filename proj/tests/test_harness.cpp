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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wclt/errors.hpp"
#include "wclt/harness/config.hpp"
#include "wclt/harness/experiments.hpp"
#include "wclt/harness/parallel.hpp"
#include "wclt/harness/report.hpp"
#include "wclt/harness/svg.hpp"

using namespace wclt;

namespace {

ExperimentConfig small(EnsembleId e, std::size_t n, std::size_t reps) {
  ExperimentConfig c;
  c.ensemble = e;
  c.n_list = {n};
  c.replicates = reps;
  c.seed = 99;
  return c;
}

std::string dump(const ExperimentReport& r) { return to_json(r).dump(); }

}  // namespace

TEST_CASE("ensemble names round-trip") {
  for (auto id : {EnsembleId::kGueTridiag, EnsembleId::kGoeTridiag, EnsembleId::kGueDense,
                  EnsembleId::kGoeDense, EnsembleId::kWignerThreePoint, EnsembleId::kWignerRademacher}) {
    CHECK(parse_ensemble(to_string(id)) == id);
  }
  CHECK_THROWS_AS((void)parse_ensemble("gue"), UsageError);
  CHECK(beta_of(EnsembleId::kGoeDense) == 1);
  CHECK(beta_of(EnsembleId::kWignerRademacher) == 2);
  CHECK_THROWS_AS((void)dense_spec(EnsembleId::kGueTridiag, 4), UsageError);
}

TEST_CASE("config file parsing") {
  const auto c = parse_config_text(
      "# sweep\n"
      "ensemble = goe-tridiag\n"
      "n = 1024, 4096\n"
      "n=16384   # appended\n"
      "\n"
      "y=0.25\nreps=300\nseed=18446744073709551615\nthreads=3\n"
      "index=7\nepsilon=0.2\nrigidity-c=1.5\ntol.slope-rel=0.2\n");
  CHECK(c.ensemble == EnsembleId::kGoeTridiag);
  CHECK(c.n_list == std::vector<std::size_t>{1024, 4096, 16384});
  CHECK(c.y == 0.25);
  CHECK(c.replicates == 300);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.threads == 3);
  CHECK(c.index == 7);
  CHECK(c.epsilon == 0.2);
  CHECK(c.rigidity_c == 1.5);
  CHECK(c.tol.slope_rel == 0.2);

  try {
    (void)parse_config_text("y=0\nbogus=1\n");
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config_text("reps\n"), UsageError);
  CHECK_THROWS_AS((void)parse_config_text("reps=abc\n"), UsageError);
  CHECK_THROWS_AS((void)parse_config_text("reps=-3\n"), UsageError);
  CHECK_THROWS_AS((void)parse_config_text("tol.nope=1\n"), UsageError);
}

TEST_CASE("config validation") {
  auto c = small(EnsembleId::kGueTridiag, 64, 10);
  CHECK_NOTHROW(c.validate());
  c.replicates = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small(EnsembleId::kGueTridiag, 64, 10);
  c.y = 2.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small(EnsembleId::kGueTridiag, 64, 10);
  c.epsilon = 0.5;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small(EnsembleId::kGueDense, 4096, 10);
  CHECK_THROWS_AS(c.validate(), UsageError);
  CHECK_THROWS_AS((void)run_counting(c), UsageError);
}

TEST_CASE("parallel map keeps index order and rethrows") {
  const auto squares = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == i * i);
  CHECK_THROWS_AS((void)parallel_map(10, 3,
                                     [](std::size_t i) -> int {
                                       if (i == 6) throw NumericalError("boom");
                                       return 0;
                                     }),
                  NumericalError);
}

TEST_CASE("even superposition keeps interlaced even positions") {
  const std::vector<double> a{1, 3, 5, 7};
  const std::vector<double> b{0, 2, 4, 6, 8};
  const auto kept = even_superposition(a, b);
  CHECK(kept == std::vector<double>{1, 3, 5, 7});
  Rng rng(1);
  std::vector<double> x(50), y(51);
  for (auto& v : x) v = rng.normal();
  for (auto& v : y) v = rng.normal();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto k = even_superposition(x, y);
  REQUIRE(k.size() == 50);
  std::vector<double> merged(x);
  merged.insert(merged.end(), y.begin(), y.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    // Exactly one discarded value lies strictly between consecutive kept ones.
    const auto between = std::count_if(merged.begin(), merged.end(),
                                       [&](double v) { return v > k[i] && v < k[i + 1]; });
    CHECK(between == 1);
  }
}

TEST_CASE("counting with a single replicate flags the variance") {
  const auto r = run_counting(small(EnsembleId::kGueTridiag, 256, 1));
  REQUIRE(r.sizes.size() == 1);
  CHECK_FALSE(r.sizes[0].variance_defined);
  CHECK(std::isnan(r.sizes[0].moments.variance()));
  CHECK_FALSE(r.notes.empty());
  CHECK(r.verdicts.empty());
  CHECK_NOTHROW((void)to_csv(r));
}

TEST_CASE("counting reports are independent of the worker count") {
  auto c = small(EnsembleId::kGueTridiag, 512, 300);
  c.n_list = {256, 512};
  const auto one = dump(run_counting(c));
  c.threads = 5;
  CHECK(dump(run_counting(c)) == one);
  c.threads = 1;
  c.seed = 100;
  CHECK(dump(run_counting(c)) != one);
}

TEST_CASE("every runner is independent of the worker count") {
  std::vector<std::pair<ExperimentConfig, ExperimentReport (*)(const ExperimentConfig&)>> cases;
  auto slope = small(EnsembleId::kGoeTridiag, 64, 50);
  slope.n_list = {64, 128, 256};
  cases.emplace_back(slope, run_variance_slope);
  cases.emplace_back(small(EnsembleId::kGueTridiag, 64, 5000), run_clt);
  cases.emplace_back(small(EnsembleId::kGueTridiag, 512, 60), run_fluctuation);
  cases.emplace_back(small(EnsembleId::kGueTridiag, 256, 23), run_rigidity);
  cases.emplace_back(small(EnsembleId::kGoeTridiag, 16, 2000), run_interlacing);
  cases.emplace_back(small(EnsembleId::kWignerThreePoint, 16, 40), run_universality);
  for (auto& [config, run] : cases) {
    config.threads = 1;
    const auto a = run(config);
    config.threads = 4;
    const auto b = run(config);
    CAPTURE(a.experiment);
    CHECK(dump(a) == dump(b));
  }
}

TEST_CASE("report JSON round-trips and verdicts recompute") {
  auto c = small(EnsembleId::kGueTridiag, 128, 200);
  c.n_list = {64, 128, 256};
  const auto r = run_variance_slope(c);
  const auto j = to_json(r);
  CHECK(j.at("schema") == "wclt-report/1");
  CHECK_FALSE(j.at("config").contains("threads"));
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(to_json(r, true).contains("wall_seconds"));
  const auto back = report_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  for (const auto& v : back.verdicts) CHECK(v.recompute() == v.passed);
  CHECK(back.verdict("r2") != nullptr);
  CHECK(back.verdict("nope") == nullptr);
}

TEST_CASE("CSV schema v1") {
  CHECK(csv_header() ==
        "experiment,ensemble,beta,n,y,replicates,seed,mean,var,theory_mean,theory_var,ks_d,ks_p,"
        "slope,slope_target,verdict");
  auto c = small(EnsembleId::kGueTridiag, 128, 50);
  c.n_list = {64, 128};
  const auto csv = to_csv(run_counting(c));
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("verdicts") {
  CHECK(Verdict::at_most("a", 1.0, 1.0).passed);
  CHECK_FALSE(Verdict::at_most("a", 1.5, 1.0).passed);
  CHECK(Verdict::at_least("b", 2.0, 1.0).passed);
  CHECK_FALSE(Verdict::at_least("b", std::nan(""), 1.0).passed);
  CHECK_FALSE(Verdict::at_most("b", std::nan(""), 1.0).passed);
}

TEST_CASE("runner preconditions") {
  CHECK_THROWS_AS((void)run_clt(small(EnsembleId::kGueTridiag, 64, 100)), InsufficientDataError);
  auto two = small(EnsembleId::kGueTridiag, 64, 10);
  two.n_list = {64, 128};
  CHECK_THROWS_AS((void)run_variance_slope(two), UsageError);
  two.n_list = {64, 128, 512};
  CHECK_THROWS_AS((void)run_variance_slope(two), UsageError);
  auto edge = small(EnsembleId::kGueTridiag, 1000, 5);
  edge.index = 3;
  CHECK_THROWS_AS((void)run_fluctuation(edge), std::domain_error);
  CHECK_THROWS_AS((void)run_rigidity(small(EnsembleId::kGueTridiag, 64, 1001)), UsageError);
  CHECK_THROWS_AS((void)run_interlacing(small(EnsembleId::kGoeTridiag, 2048, 2000)), UsageError);
  CHECK_THROWS_AS((void)run_interlacing(small(EnsembleId::kGoeTridiag, 16, 100)), UsageError);
  CHECK_THROWS_AS((void)run_interlacing(small(EnsembleId::kGueTridiag, 16, 2000)), UsageError);
  CHECK_THROWS_AS((void)run_universality(small(EnsembleId::kGueTridiag, 16, 10)), UsageError);
}

TEST_CASE("fluctuation duality holds on every replicate") {
  auto c = small(EnsembleId::kGueTridiag, 300, 200);
  c.y = 0.01;
  c.index = 150;
  const auto r = run_fluctuation(c);
  CHECK(r.metrics.at("duality_violations") == 0.0);
  CHECK(r.sizes.at(0).statistic == "eigenvalue");
}

TEST_CASE("universality verdicts only for moment-matched entries") {
  const auto matched = run_universality(small(EnsembleId::kWignerThreePoint, 24, 200));
  CHECK(matched.metrics.at("matched_order4") == 1.0);
  CHECK(matched.verdict("variance_ratio_rel_error") != nullptr);
  CHECK(matched.sizes.size() == 2);
  const auto contrast = run_universality(small(EnsembleId::kWignerRademacher, 24, 200));
  CHECK(contrast.metrics.at("matched_order4") == 0.0);
  CHECK(contrast.verdicts.empty());
  CHECK_FALSE(contrast.notes.empty());
}

TEST_CASE("rigidity profile and metrics") {
  auto c = small(EnsembleId::kGueTridiag, 400, 9);
  const auto r = run_rigidity(c);
  CHECK(r.metrics.at("bulk_lo") == 40.0);
  CHECK(r.metrics.at("bulk_hi") == 360.0);
  CHECK(r.metrics.count("profile_mean@i=100") == 1);
  CHECK(r.metrics.count("profile_mean@i=300") == 1);
  CHECK(r.sizes.at(0).moments.count == 9);
}

TEST_CASE("SVG histogram") {
  const std::vector<double> z{-1.0, 0.0, 0.1, 0.5, 9.0, std::nan("")};
  const auto svg = zscore_histogram_svg(z, "a<b");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("N=5") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK_THROWS_AS((void)zscore_histogram_svg(z, "t", 0), std::invalid_argument);
}

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

#include "wclt/harness/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wclt {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json to_json(const StreamingMoments& m) {
  return {{"count", m.count}, {"mean", number(m.mean)}, {"m2", number(m.m2)},
          {"min", number(m.min)}, {"max", number(m.max)}};
}

StreamingMoments moments_from(const json& j) {
  StreamingMoments m;
  m.count = j.at("count").get<std::size_t>();
  m.mean = number_from(j.at("mean"));
  m.m2 = number_from(j.at("m2"));
  m.min = number_from(j.at("min"));
  m.max = number_from(j.at("max"));
  return m;
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Verdict Verdict::at_most(std::string name, double value, double threshold) {
  Verdict v{std::move(name), value, Op::kAtMost, threshold, false};
  v.passed = v.recompute();
  return v;
}

Verdict Verdict::at_least(std::string name, double value, double threshold) {
  Verdict v{std::move(name), value, Op::kAtLeast, threshold, false};
  v.passed = v.recompute();
  return v;
}

bool Verdict::recompute() const noexcept {
  return op == Op::kAtMost ? value <= threshold : value >= threshold;
}

bool ExperimentReport::passed() const noexcept {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return true;
}

const Verdict* ExperimentReport::verdict(std::string_view name) const noexcept {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

json to_json(const ExperimentConfig& c) {
  const auto& t = c.tol;
  json j = {
      {"ensemble", to_string(c.ensemble)},
      {"reference", to_string(c.reference)},
      {"n", c.n_list},
      {"y", c.y},
      {"replicates", c.replicates},
      {"seed", c.seed},
      {"index", c.index ? json(*c.index) : json(nullptr)},
      {"epsilon", c.epsilon},
      {"rigidity_c", c.rigidity_c},
      {"tolerances",
       {{"slope_rel", t.slope_rel},
        {"r2_min", t.r2_min},
        {"slope_ratio_rel", t.slope_ratio_rel},
        {"ks_d_clt", t.ks_d_clt},
        {"skew_max", t.skew_max},
        {"counting_mean_se", t.counting_mean_se},
        {"universality_mean_se", t.universality_mean_se},
        {"variance_ratio_rel", t.variance_ratio_rel},
        {"std_rel", t.std_rel},
        {"ks_d_fluctuation", t.ks_d_fluctuation},
        {"rigidity_fraction", t.rigidity_fraction},
        {"ks_alpha", t.ks_alpha}}},
  };
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
  c.reference = parse_ensemble(j.at("reference").get<std::string>());
  c.n_list = j.at("n").get<std::vector<std::size_t>>();
  c.y = j.at("y").get<double>();
  c.replicates = j.at("replicates").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("index").is_null()) c.index = j.at("index").get<std::size_t>();
  c.epsilon = j.at("epsilon").get<double>();
  c.rigidity_c = j.at("rigidity_c").get<double>();
  const auto& t = j.at("tolerances");
  c.tol.slope_rel = t.at("slope_rel").get<double>();
  c.tol.r2_min = t.at("r2_min").get<double>();
  c.tol.slope_ratio_rel = t.at("slope_ratio_rel").get<double>();
  c.tol.ks_d_clt = t.at("ks_d_clt").get<double>();
  c.tol.skew_max = t.at("skew_max").get<double>();
  c.tol.counting_mean_se = t.at("counting_mean_se").get<double>();
  c.tol.universality_mean_se = t.at("universality_mean_se").get<double>();
  c.tol.variance_ratio_rel = t.at("variance_ratio_rel").get<double>();
  c.tol.std_rel = t.at("std_rel").get<double>();
  c.tol.ks_d_fluctuation = t.at("ks_d_fluctuation").get<double>();
  c.tol.rigidity_fraction = t.at("rigidity_fraction").get<double>();
  c.tol.ks_alpha = t.at("ks_alpha").get<double>();
  return c;
}

json to_json(const ExperimentReport& r, bool include_timings) {
  json sizes = json::array();
  for (const auto& s : r.sizes) {
    sizes.push_back({
        {"n", s.n},
        {"ensemble", s.ensemble},
        {"beta", s.beta},
        {"statistic", s.statistic},
        {"moments", to_json(s.moments)},
        {"variance_defined", s.variance_defined},
        {"theory_mean", number(s.theory_mean)},
        {"theory_var", number(s.theory_var)},
        {"ks", s.ks ? json{{"d", number(s.ks->d)}, {"p", number(s.ks->p)}, {"p_approximate", true}}
                    : json(nullptr)},
    });
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name},
                        {"value", number(v.value)},
                        {"op", v.op == Verdict::Op::kAtMost ? "<=" : ">="},
                        {"threshold", v.threshold},
                        {"passed", v.passed}});
  }
  json metrics = json::object();
  for (const auto& [key, value] : r.metrics) metrics[key] = number(value);
  json z = json::array();
  for (double x : r.z_scores) z.push_back(number(x));

  json j = {
      {"schema", "wclt-report/1"},
      {"experiment", r.experiment},
      {"config", to_json(r.config)},
      {"sizes", sizes},
      {"fit", r.fit ? json{{"slope", number(r.fit->slope)},
                           {"intercept", number(r.fit->intercept)},
                           {"r2", number(r.fit->r2)}}
                    : json(nullptr)},
      {"slope_target", r.slope_target ? json(*r.slope_target) : json(nullptr)},
      {"metrics", metrics},
      {"verdicts", verdicts},
      {"passed", r.passed()},
      {"notes", r.notes},
      {"z_scores", z},
  };
  if (include_timings) j["wall_seconds"] = r.wall_seconds;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config = config_from_json(j.at("config"));
  for (const auto& s : j.at("sizes")) {
    SizeResult out;
    out.n = s.at("n").get<std::size_t>();
    out.ensemble = s.at("ensemble").get<std::string>();
    out.beta = s.at("beta").get<int>();
    out.statistic = s.at("statistic").get<std::string>();
    out.moments = moments_from(s.at("moments"));
    out.variance_defined = s.at("variance_defined").get<bool>();
    out.theory_mean = number_from(s.at("theory_mean"));
    out.theory_var = number_from(s.at("theory_var"));
    if (!s.at("ks").is_null()) {
      out.ks = KsResult{number_from(s.at("ks").at("d")), number_from(s.at("ks").at("p"))};
    }
    r.sizes.push_back(std::move(out));
  }
  if (!j.at("fit").is_null()) {
    const auto& f = j.at("fit");
    r.fit = LinearFit{number_from(f.at("slope")), number_from(f.at("intercept")),
                      number_from(f.at("r2"))};
  }
  if (!j.at("slope_target").is_null()) r.slope_target = j.at("slope_target").get<double>();
  for (const auto& [key, value] : j.at("metrics").items()) r.metrics[key] = number_from(value);
  for (const auto& v : j.at("verdicts")) {
    Verdict out;
    out.name = v.at("name").get<std::string>();
    out.value = number_from(v.at("value"));
    out.op = v.at("op").get<std::string>() == "<=" ? Verdict::Op::kAtMost : Verdict::Op::kAtLeast;
    out.threshold = v.at("threshold").get<double>();
    out.passed = v.at("passed").get<bool>();
    r.verdicts.push_back(std::move(out));
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& z : j.at("z_scores")) r.z_scores.push_back(number_from(z));
  if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

std::string csv_header() {
  return "experiment,ensemble,beta,n,y,replicates,seed,mean,var,theory_mean,theory_var,ks_d,ks_p,"
         "slope,slope_target,verdict";
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << csv_header() << '\n';
  const std::string verdict = r.verdicts.empty() ? "none" : (r.passed() ? "pass" : "fail");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : r.sizes) {
    os << r.experiment << ',' << s.ensemble << ',' << s.beta << ',' << s.n << ','
       << csv_number(r.config.y) << ',' << s.moments.count << ',' << r.config.seed << ','
       << csv_number(s.moments.mean) << ',' << csv_number(s.moments.variance()) << ','
       << csv_number(s.theory_mean) << ',' << csv_number(s.theory_var) << ','
       << csv_number(s.ks ? s.ks->d : nan) << ',' << csv_number(s.ks ? s.ks->p : nan) << ','
       << csv_number(r.fit ? r.fit->slope : nan) << ',' << csv_number(r.slope_target.value_or(nan))
       << ',' << verdict << '\n';
  }
  return os.str();
}

}  // namespace wclt

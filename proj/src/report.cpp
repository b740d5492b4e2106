/*
 * Copyright (c) 2026 The Bochner Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <chrono>
#include <fstream>
#include <functional>

#include "bochner/error.hpp"
#include "bochner/metrics.hpp"
#include "bochner/random.hpp"
#include "bochner/scenario.hpp"
#include "bochner/theorems.hpp"

namespace bochner {

using nlohmann::json;

namespace {

class Builder {
 public:
  explicit Builder(const ScenarioSpec& spec) : spec_(spec), echo_(echo_scenario(spec)) {}

  std::string num(double v) const { return format_number(v, spec_.precision); }

  json nums(const std::vector<double>& v) const {
    json out = json::array();
    for (double x : v) out.push_back(num(x));
    return out;
  }
  static json ints(const std::vector<std::int64_t>& v) {
    json out = json::array();
    for (auto x : v) out.push_back(std::to_string(x));
    return out;
  }
  json element(const BanachElement& e) const {
    json re = json::array();
    json im = json::array();
    for (const auto& z : e.components()) {
      re.push_back(num(z.real()));
      im.push_back(num(z.imag()));
    }
    return {{"re", re}, {"im", im}};
  }
  void set_value(ReportRecord& r, const BanachElement& e) const {
    r.value_re.clear();
    r.value_im.clear();
    for (const auto& z : e.components()) {
      r.value_re.push_back(num(z.real()));
      r.value_im.push_back(num(z.imag()));
    }
  }

  json ui(const UIModulusReport& u) const {
    json j;
    j["horizon"] = std::to_string(u.horizon);
    j["stabilized"] = u.stabilized;
    j["delta_grid"] = nums(u.delta_grid);
    j["modulus"] = nums(u.modulus_values);
    json bounds = json::array();
    for (auto b : u.bounds) bounds.push_back(b == BoundKind::Exact ? "exact" : b == BoundKind::Lower ? "lower" : "upper");
    j["bounds"] = bounds;
    j["resolved"] = u.resolved;
    if (const auto* fail = std::get_if<FailsAtResolution>(&u.verdict)) {
      j["verdict"] = "fails_at_resolution";
      j["epsilon"] = num(fail->epsilon);
      j["floor"] = num(fail->floor);
    } else {
      j["verdict"] = "uniformly_integrable";
      json table = json::array();
      for (const auto& [eps, delta] : std::get<UniformlyIntegrable>(u.verdict).table) {
        table.push_back({{"epsilon", num(eps)}, {"delta", num(delta)}});
      }
      j["table"] = table;
    }
    return j;
  }

  json extension(const ExtensionResult& e) const {
    return {{"value", element(e.value)},
            {"cauchy_bound", num(e.cauchy_bound)},
            {"n_used", std::to_string(e.n_used)},
            {"in_measure_threshold", num(e.in_measure_threshold)},
            {"in_measure_converged", e.in_measure_converged},
            {"ui", ui(e.ui_report)}};
  }
  json extension_traces(const ExtensionResult& e) const {
    std::vector<std::int64_t> depths(e.reference_depths.begin(), e.reference_depths.end());
    return {{"cauchy_index", ints(e.cauchy_indices)},
            {"cauchy_l1", nums(e.cauchy_trace)},
            {"in_measure_index", ints(e.in_measure_indices)},
            {"in_measure_ky_fan", nums(e.in_measure_trace)},
            {"reference_depth", ints(depths)}};
  }

  ReportRecord record(std::size_t index) const {
    ReportRecord r;
    r.experiment = to_string(spec_.experiment);
    r.index = index;
    r.inputs = echo_;
    r.result = json::object();
    r.traces = json::object();
    return r;
  }

  void fail(ReportRecord& r, const Error& e) const {
    r.status = std::string("error:") + to_string(e.kind());
    r.verdict = e.what();
    r.outcome = Outcome::Inapplicable;
    if (const auto* ext = dynamic_cast<const ExtensionError*>(&e)) {
      r.result["partial"] = extension(ext->partial());
      r.traces = extension_traces(ext->partial());
      r.n_used = std::to_string(ext->partial().n_used);
    }
  }

  const ScenarioSpec& spec() const { return spec_; }

 private:
  const ScenarioSpec& spec_;
  json echo_;
};

const char* conclusion_name(VitaliConclusion c) {
  switch (c) {
    case VitaliConclusion::Consistent: return "consistent";
    case VitaliConclusion::Violation: return "violation";
    case VitaliConclusion::Inapplicable: return "inapplicable";
  }
  return "";
}

Outcome conclusion_outcome(VitaliConclusion c) {
  return c == VitaliConclusion::Consistent   ? Outcome::Success
         : c == VitaliConclusion::Violation ? Outcome::Violation
                                            : Outcome::Inapplicable;
}

json vitali_json(const Builder& b, const VitaliVerdict& v) {
  json j{{"direction", v.direction == VitaliDirection::Forward ? "forward" : "backward"},
         {"conclusion", conclusion_name(v.conclusion)},
         {"reason", v.reason},
         {"ui", b.ui(v.ui)}};
  if (v.witness) {
    j["witness"] = {{"index", std::to_string(v.witness->index)},
                    {"lhs", b.num(v.witness->lhs)},
                    {"rhs", b.num(v.witness->rhs)},
                    {"what", v.witness->what}};
  }
  return j;
}

json vitali_traces(const Builder& b, const VitaliVerdict& v) {
  return {{"index", Builder::ints(v.indices)},
          {"ky_fan", b.nums(v.in_measure_trace)},
          {"l1", b.nums(v.l1_trace)},
          {"norm_integral", b.nums(v.norm_trace)},
          {"approximation_gap", b.nums(v.approximation_gaps)}};
}

void run_integrate(const Builder& b, std::vector<ReportRecord>& out) {
  auto r = b.record(0);
  try {
    const auto f = build_target(b.spec());
    const auto e = extend_integral(f, build_options(b.spec()));
    r.result = b.extension(e);
    r.traces = b.extension_traces(e);
    r.verdict = "converged";
    r.status = "ok";
    b.set_value(r, e.value);
    r.bound = b.num(e.cauchy_bound);
    r.n_used = std::to_string(e.n_used);
  } catch (const Error& e) {
    b.fail(r, e);
  }
  out.push_back(std::move(r));
}

void run_welldef(const Builder& b, std::vector<ReportRecord>& out) {
  auto r = b.record(0);
  try {
    const auto& spec = b.spec();
    const auto f = build_target(spec);
    SchemeSpec other = spec.scheme;
    if (spec.scheme_b) {
      other = *spec.scheme_b;
    } else {
      other.kind = spec.scheme.kind == SchemeKind::DyadicLeft ? SchemeKind::DyadicMid : SchemeKind::DyadicLeft;
    }
    const auto scheme_b = build_scheme(spec, other, f.target());
    const auto w = well_definedness_audit(f.target(), f.scheme(), scheme_b, build_options(spec));
    r.result["discrepancy"] = b.num(w.discrepancy);
    r.result["allowance"] = b.num(w.allowance);
    r.result["in_measure_mismatch"] = w.in_measure_mismatch;
    r.result["reason"] = w.reason;
    if (w.a) r.result["a"] = b.extension(*w.a);
    if (w.b) r.result["b"] = b.extension(*w.b);
    r.traces["pair_index"] = Builder::ints(w.pair_indices);
    r.traces["pair_l1"] = b.nums(w.pair_trace);
    r.value_re = {b.num(w.discrepancy)};
    r.value_im = {b.num(0.0)};
    r.bound = b.num(w.allowance);
    if (w.a && w.b) r.n_used = std::to_string(std::max(w.a->n_used, w.b->n_used));
    switch (w.verdict) {
      case Agreement::Agree:
        r.verdict = "agree";
        r.status = "ok";
        break;
      case Agreement::Disagree:
        r.verdict = "disagree";
        r.status = "violation";
        r.outcome = Outcome::Violation;
        break;
      case Agreement::Inapplicable:
        r.verdict = "inapplicable";
        r.status = "inapplicable";
        r.outcome = Outcome::Inapplicable;
        break;
    }
  } catch (const Error& e) {
    b.fail(r, e);
  }
  out.push_back(std::move(r));
}

void run_vitali(const Builder& b, std::vector<ReportRecord>& out) {
  auto r = b.record(0);
  try {
    const auto f = build_target(b.spec());
    const auto v = vitali_audit(f, f.scheme(), b.spec().forward ? VitaliDirection::Forward : VitaliDirection::Backward,
                                build_options(b.spec()));
    r.result = vitali_json(b, v);
    r.traces = vitali_traces(b, v);
    r.verdict = conclusion_name(v.conclusion);
    r.status = v.conclusion == VitaliConclusion::Consistent ? "ok" : conclusion_name(v.conclusion);
    r.outcome = conclusion_outcome(v.conclusion);
    r.value_re = {b.num(v.l1_trace.empty() ? 0.0 : v.l1_trace.back())};
    r.value_im = {b.num(0.0)};
    r.bound = b.num(b.spec().cauchy_tol);
    r.n_used = v.indices.empty() ? "" : std::to_string(v.indices.back());
  } catch (const Error& e) {
    b.fail(r, e);
  }
  out.push_back(std::move(r));
}

void run_riesz_fischer(const Builder& b, std::vector<ReportRecord>& out) {
  auto r = b.record(0);
  try {
    const auto f = build_target(b.spec());
    const auto rf = riesz_fischer_construct(f.scheme(), build_options(b.spec()));
    r.result = b.extension(rf.extension);
    r.result["picks"] = Builder::ints(rf.picks);
    r.result["tails"] = b.nums(rf.tails);
    r.result["audit"] = vitali_json(b, rf.audit);
    r.traces = vitali_traces(b, rf.audit);
    r.verdict = conclusion_name(rf.audit.conclusion);
    r.status = rf.audit.conclusion == VitaliConclusion::Consistent ? "ok" : conclusion_name(rf.audit.conclusion);
    r.outcome = conclusion_outcome(rf.audit.conclusion);
    b.set_value(r, rf.extension.value);
    r.bound = b.num(rf.extension.cauchy_bound);
    r.n_used = std::to_string(rf.extension.n_used);
  } catch (const Error& e) {
    b.fail(r, e);
  }
  out.push_back(std::move(r));
}

void run_inequalities(const Builder& b, std::vector<ReportRecord>& out) {
  const auto& spec = b.spec();
  const auto space = build_space(spec);
  const auto vs = build_value_space(spec);
  CampaignRng rng(spec.seed);
  out.reserve(static_cast<std::size_t>(spec.campaign_pairs));
  for (std::int64_t i = 0; i < spec.campaign_pairs; ++i) {
    ReportRecord r;
    r.experiment = to_string(spec.experiment);
    r.index = static_cast<std::size_t>(i);
    r.inputs = {{"pair", std::to_string(i)}, {"seed", std::to_string(spec.seed)},
                {"epsilon", b.num(spec.campaign_epsilon)}};
    r.traces = json::object();
    const auto s = random_simple_map(space, vs, rng);
    const auto t = random_simple_map(space, vs, rng);
    const auto slack = inequality_audit(s, t, spec.campaign_epsilon);
    r.result = {{"markov_slack", b.num(slack.markov_slack)},
                {"truncation_slack", b.num(slack.truncation_slack)},
                {"triangle_slack", b.num(slack.triangle_slack)},
                {"cells", {std::to_string(s.cell_count()), std::to_string(t.cell_count())}}};
    const bool ok = slack.valid(1e-12);
    r.verdict = ok ? "valid" : "negative_slack";
    r.status = ok ? "ok" : "violation";
    r.outcome = ok ? Outcome::Success : Outcome::Violation;
    r.value_re = {b.num(slack.min_slack())};
    r.value_im = {b.num(0.0)};
    r.bound = b.num(1e-12);
    r.n_used = std::to_string(i);
    out.push_back(std::move(r));
  }
}

void run_ui_report(const Builder& b, std::vector<ReportRecord>& out) {
  auto r = b.record(0);
  try {
    const auto f = build_target(b.spec());
    const auto opts = build_options(b.spec());
    const auto u = sequence_ui_probe(f.scheme(), opts.horizon, opts.delta_grid, opts.epsilon_grid);
    r.result = b.ui(u);
    r.value_im = {b.num(0.0)};
    r.n_used = std::to_string(f.scheme().last_within(opts.horizon));
    if (const auto* fail = std::get_if<FailsAtResolution>(&u.verdict)) {
      r.verdict = "fails_at_resolution";
      r.status = "inapplicable";
      r.outcome = Outcome::Inapplicable;
      r.value_re = {b.num(fail->floor)};
      r.bound = b.num(fail->epsilon);
    } else {
      r.verdict = "uniformly_integrable";
      r.status = "ok";
      r.value_re = {b.num(u.modulus_values.back())};
      r.bound = b.num(u.delta_grid.back());
    }
  } catch (const Error& e) {
    b.fail(r, e);
  }
  out.push_back(std::move(r));
}

void run_density(const Builder& b, std::vector<ReportRecord>& out) {
  const auto& spec = b.spec();
  std::optional<ApproximableMap> f;
  std::optional<Error> setup;
  try {
    f = build_target(spec);
  } catch (const Error& e) {
    setup = e;
  }
  for (std::size_t i = 0; i < spec.epsilon_grid.size(); ++i) {
    auto r = b.record(i);
    const double eps = spec.epsilon_grid[i];
    try {
      if (setup) throw *setup;
      const auto d = density_approximation(*f, eps, build_options(spec));
      r.result = {{"epsilon", b.num(eps)},
                  {"index", std::to_string(d.index)},
                  {"cells", std::to_string(d.map.cell_count())},
                  {"measured", b.num(d.measured)},
                  {"certified", b.num(d.certified)},
                  {"exact_reference", d.exact_reference},
                  {"reference_depth", std::to_string(d.reference_depth)},
                  {"integral", b.element(integrate_simple(d.map))}};
      r.verdict = "approximated";
      r.status = "ok";
      r.value_re = {b.num(d.certified)};
      r.value_im = {b.num(0.0)};
      r.bound = b.num(eps);
      r.n_used = std::to_string(d.index);
    } catch (const Error& e) {
      b.fail(r, e);
    }
    out.push_back(std::move(r));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + v[i];
  return out;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Inapplicable: return "inapplicable";
    case Outcome::Violation: return "violation";
  }
  return "";
}

}  // namespace

std::vector<ReportRecord> run_campaign(const ScenarioSpec& spec) {
  validate_scenario(spec);
  const Builder b(spec);
  std::vector<ReportRecord> out;
  const auto start = std::chrono::steady_clock::now();
  switch (spec.experiment) {
    case Experiment::Integrate: run_integrate(b, out); break;
    case Experiment::Welldef: run_welldef(b, out); break;
    case Experiment::Vitali: run_vitali(b, out); break;
    case Experiment::RieszFischer: run_riesz_fischer(b, out); break;
    case Experiment::Inequalities: run_inequalities(b, out); break;
    case Experiment::UiReport: run_ui_report(b, out); break;
    case Experiment::Density: run_density(b, out); break;
  }
  if (spec.timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : out) r.wall_time = secs;
  }
  return out;
}

int exit_code(const std::vector<ReportRecord>& records) {
  int code = 0;
  for (const auto& r : records) code = std::max(code, static_cast<int>(r.outcome));
  return code;
}

void emit_report(const std::vector<ReportRecord>& records, OutputFormat format, std::ostream& out) {
  if (records.empty()) throw Error(ErrorKind::Precondition, "no records to emit");
  if (format == OutputFormat::Csv) {
    out << "experiment,value_re,value_im,bound,n_used,status\n";
    for (const auto& r : records) {
      out << csv_field(r.experiment) << ',' << csv_field(joined(r.value_re)) << ','
          << csv_field(joined(r.value_im)) << ',' << csv_field(r.bound) << ',' << csv_field(r.n_used)
          << ',' << csv_field(r.status) << '\n';
    }
    return;
  }
  for (const auto& r : records) {
    json j{{"experiment", r.experiment}, {"index", std::to_string(r.index)}, {"inputs", r.inputs},
           {"result", r.result},         {"traces", r.traces},               {"verdict", r.verdict},
           {"status", r.status},         {"outcome", outcome_name(r.outcome)}};
    if (r.wall_time) j["wall_time"] = format_number(*r.wall_time, 6);
    out << j.dump() << '\n';
  }
}

void write_report(const std::vector<ReportRecord>& records, OutputFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  emit_report(records, format, out);
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

}  // namespace bochner

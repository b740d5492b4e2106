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

#include "bochner/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bochner/error.hpp"
#include "bochner/expression.hpp"

namespace bochner {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw Error(ErrorKind::Parse, where(path) + msg);
  }

  void allow(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& item : obj.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) ==
          keys.end()) {
        fail(join(path, item.key()), "unknown field");
      }
    }
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }
  std::int64_t integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(path, "integer out of range");
    }
    return j.get<std::int64_t>();
  }
  std::uint64_t unsigned_integer(const json& j, const std::string& path) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
      fail(path, "expected an unsigned integer");
    }
    return j.get<std::uint64_t>();
  }
  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  bool boolean(const json& j, const std::string& path) const {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
  }
  const json& array(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }
  std::vector<double> numbers(const json& j, const std::string& path) const {
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& v : array(j, path)) out.push_back(number(v, path + "[" + std::to_string(i++) + "]"));
    return out;
  }

  // A constant value: number, expression string, or array of those.
  std::string value(const json& j, const std::string& path) const {
    if (j.is_number()) return format_number(j.get<double>(), 17);
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
      std::string out = "[";
      std::size_t i = 0;
      for (const auto& c : j) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        if (!c.is_number() && !c.is_string()) fail(item, "expected a number or expression");
        out += (i++ ? ", " : "") + value(c, item);
      }
      return out + "]";
    }
    fail(path, "expected a number, expression or array");
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  // Line of the last key of a field path, found by searching the text.
  std::string where(const std::string& path) const {
    std::string key = path.substr(path.rfind('.') == std::string::npos ? 0 : path.rfind('.') + 1);
    key = key.substr(0, key.find('['));
    const auto at = text_.find("\"" + key + "\"");
    std::string loc = "field '" + path + "'";
    if (at != std::string_view::npos) {
      loc += " (line " + std::to_string(1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(at), '\n')) + ")";
    }
    return loc + ": ";
  }

  std::string_view text_;
};

SimpleLiteral read_literal(const Reader& r, const json& j, const std::string& path) {
  r.allow(j, path, {"breaks", "cells", "values"});
  SimpleLiteral lit;
  if (!j.contains("values")) r.fail(Reader::join(path, "values"), "missing");
  if (j.contains("breaks") == j.contains("cells")) r.fail(path, "give exactly one of 'breaks' or 'cells'");
  if (j.contains("breaks")) lit.breaks = r.numbers(j["breaks"], Reader::join(path, "breaks"));
  if (j.contains("cells")) {
    std::size_t i = 0;
    for (const auto& c : r.array(j["cells"], Reader::join(path, "cells"))) {
      lit.cells.push_back(static_cast<std::size_t>(
          r.unsigned_integer(c, Reader::join(path, "cells") + "[" + std::to_string(i++) + "]")));
    }
  }
  std::size_t i = 0;
  for (const auto& v : r.array(j["values"], Reader::join(path, "values"))) {
    lit.values.push_back(r.value(v, Reader::join(path, "values") + "[" + std::to_string(i++) + "]"));
  }
  return lit;
}

const std::pair<SchemeKind, const char*> kSchemeNames[] = {
    {SchemeKind::DyadicLeft, "dyadic_left"},   {SchemeKind::DyadicMid, "dyadic_mid"},
    {SchemeKind::ExplicitList, "explicit_list"}, {SchemeKind::Expression, "expression"},
    {SchemeKind::Constant, "constant"}};

const std::pair<Experiment, const char*> kExperimentNames[] = {
    {Experiment::Integrate, "integrate"},       {Experiment::Welldef, "welldef"},
    {Experiment::Vitali, "vitali"},             {Experiment::RieszFischer, "riesz_fischer"},
    {Experiment::Inequalities, "inequalities"}, {Experiment::UiReport, "ui_report"},
    {Experiment::Density, "density"}};

const char* scheme_name(SchemeKind k) {
  for (const auto& [kind, name] : kSchemeNames) {
    if (kind == k) return name;
  }
  return "";
}

SchemeSpec read_scheme(const Reader& r, const json& j, const std::string& path) {
  r.allow(j, path, {"kind", "depth", "maps", "expression", "start"});
  SchemeSpec s;
  if (j.contains("kind")) {
    const auto name = r.string(j["kind"], Reader::join(path, "kind"));
    const auto* hit = std::find_if(std::begin(kSchemeNames), std::end(kSchemeNames),
                                   [&](const auto& p) { return name == p.second; });
    if (hit == std::end(kSchemeNames)) r.fail(Reader::join(path, "kind"), "unknown scheme '" + name + "'");
    s.kind = hit->first;
  }
  if (j.contains("depth")) s.depth = static_cast<int>(std::clamp<std::int64_t>(
                               r.integer(j["depth"], Reader::join(path, "depth")), -1, 1000));
  if (j.contains("start")) s.start = r.integer(j["start"], Reader::join(path, "start"));
  if (j.contains("expression")) s.expression = r.string(j["expression"], Reader::join(path, "expression"));
  if (j.contains("maps")) {
    std::size_t i = 0;
    for (const auto& m : r.array(j["maps"], Reader::join(path, "maps"))) {
      s.maps.push_back(read_literal(r, m, Reader::join(path, "maps") + "[" + std::to_string(i++) + "]"));
    }
  }
  if (s.kind == SchemeKind::ExplicitList && s.maps.empty()) r.fail(Reader::join(path, "maps"), "explicit_list needs maps");
  if (s.kind == SchemeKind::Expression && s.expression.empty()) {
    r.fail(Reader::join(path, "expression"), "expression scheme needs an expression");
  }
  return s;
}

json literal_json(const SimpleLiteral& lit) {
  json j;
  if (!lit.cells.empty() || lit.breaks.empty()) {
    j["cells"] = lit.cells;
  } else {
    j["breaks"] = lit.breaks;
  }
  j["values"] = lit.values;
  return j;
}

json scheme_json(const SchemeSpec& s) {
  json j;
  j["kind"] = scheme_name(s.kind);
  j["depth"] = s.depth;
  j["start"] = s.start;
  if (!s.expression.empty()) j["expression"] = s.expression;
  if (!s.maps.empty()) {
    j["maps"] = json::array();
    for (const auto& m : s.maps) j["maps"].push_back(literal_json(m));
  }
  return j;
}

std::vector<Complex> literal_value(const std::string& text, std::size_t dim, bool vector) {
  const auto e = Expression::parse(text);
  if (e.is_vector() != vector || e.components() != dim) {
    throw Error(ErrorKind::Structural, "value \"" + text + "\" does not match the value space dimension");
  }
  return e.constant();
}

SimpleMap build_literal(const ScenarioSpec& spec, const SimpleLiteral& lit) {
  const auto space = build_space(spec);
  const auto vs = build_value_space(spec);
  std::vector<BanachElement> values;
  for (const auto& v : lit.values) values.emplace_back(literal_value(v, vs.dim(), spec.vector_values));
  if (space.kind() == SpaceKind::Interval) {
    if (lit.breaks.empty()) throw Error(ErrorKind::Structural, "interval maps are given by breaks");
    return SimpleMap::step(space, vs, lit.breaks, values);
  }
  if (lit.cells.size() != space.atom_count()) {
    throw Error(ErrorKind::Structural, "discrete maps need one cell label per atom");
  }
  std::vector<BanachElement> per_atom;
  for (auto c : lit.cells) {
    if (c >= values.size()) throw Error(ErrorKind::Structural, "cell label " + std::to_string(c) + " has no value");
    per_atom.push_back(values[c]);
  }
  return SimpleMap::on_atoms(space, vs, per_atom);
}

}  // namespace

std::string format_number(double v, int precision) {
  if (v == 0.0) v = 0.0;
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", std::clamp(precision, 1, 17), v);
  return buf;
}

std::string to_string(Experiment e) {
  for (const auto& [kind, name] : kExperimentNames) {
    if (kind == e) return name;
  }
  return "";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '-', '_');
  for (const auto& [kind, label] : kExperimentNames) {
    if (n == label) return kind;
  }
  return std::nullopt;
}

ScenarioSpec parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    const auto nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const auto col = upto - (nl == std::string_view::npos || upto == 0 ? 0 : nl + 1) + 1;
    throw Error(ErrorKind::Parse, "syntax error at line " + std::to_string(line) + ", column " +
                                      std::to_string(col));
  }
  const Reader r(text);
  r.allow(doc, "", {"space", "value_space", "target", "scheme", "scheme_b", "experiment", "direction",
                    "tolerances", "campaign", "seed", "output"});
  ScenarioSpec spec;

  if (doc.contains("space")) {
    const auto& j = doc["space"];
    r.allow(j, "space", {"kind", "total_mass", "weights"});
    const auto kind = j.contains("kind") ? r.string(j["kind"], "space.kind") : std::string("interval");
    if (kind == "interval") {
      if (j.contains("weights")) r.fail("space.weights", "not allowed for an interval space");
      if (j.contains("total_mass")) spec.total_mass = r.number(j["total_mass"], "space.total_mass");
    } else if (kind == "discrete") {
      spec.space_kind = SpaceKind::Discrete;
      if (j.contains("total_mass")) r.fail("space.total_mass", "not allowed for a discrete space");
      if (!j.contains("weights")) r.fail("space.weights", "missing");
      spec.weights = r.numbers(j["weights"], "space.weights");
    } else {
      r.fail("space.kind", "expected 'interval' or 'discrete'");
    }
  }

  if (doc.contains("value_space")) {
    const auto& j = doc["value_space"];
    r.allow(j, "value_space", {"kind", "dim", "norm"});
    const auto kind = j.contains("kind") ? r.string(j["kind"], "value_space.kind") : std::string("scalar");
    if (kind == "vector") {
      spec.vector_values = true;
      if (!j.contains("dim")) r.fail("value_space.dim", "missing");
      const auto dim = r.integer(j["dim"], "value_space.dim");
      if (dim < 1 || dim > 4096) r.fail("value_space.dim", "must be between 1 and 4096");
      spec.dim = static_cast<std::size_t>(dim);
      if (j.contains("norm")) {
        const auto n = r.string(j["norm"], "value_space.norm");
        if (n == "one") {
          spec.norm = NormKind::One;
        } else if (n == "two") {
          spec.norm = NormKind::Two;
        } else if (n == "inf") {
          spec.norm = NormKind::Inf;
        } else {
          r.fail("value_space.norm", "expected 'one', 'two' or 'inf'");
        }
      }
    } else if (kind == "scalar") {
      if (j.contains("dim") || j.contains("norm")) r.fail("value_space", "scalar values take no dim or norm");
    } else {
      r.fail("value_space.kind", "expected 'scalar' or 'vector'");
    }
  }

  if (doc.contains("target")) {
    const auto& j = doc["target"];
    r.allow(j, "target", {"expression", "simple"});
    if (j.contains("expression") == j.contains("simple")) r.fail("target", "give exactly one of 'expression' or 'simple'");
    if (j.contains("expression")) spec.target_expression = r.string(j["expression"], "target.expression");
    if (j.contains("simple")) {
      spec.target_simple = read_literal(r, j["simple"], "target.simple");
      spec.target_expression.clear();
    }
  }

  if (doc.contains("scheme")) {
    spec.scheme = read_scheme(r, doc["scheme"], "scheme");
  } else if (spec.target_simple) {
    spec.scheme.kind = SchemeKind::Constant;
  }
  if (doc.contains("scheme_b")) spec.scheme_b = read_scheme(r, doc["scheme_b"], "scheme_b");

  if (doc.contains("experiment")) {
    const auto name = r.string(doc["experiment"], "experiment");
    const auto e = experiment_from_string(name);
    if (!e) r.fail("experiment", "unknown experiment '" + name + "'");
    spec.experiment = *e;
  }
  if (doc.contains("direction")) {
    const auto d = r.string(doc["direction"], "direction");
    if (d != "forward" && d != "backward") r.fail("direction", "expected 'forward' or 'backward'");
    spec.forward = d == "forward";
  }

  if (doc.contains("tolerances")) {
    const auto& j = doc["tolerances"];
    r.allow(j, "tolerances", {"cauchy_tol", "in_measure_tol", "horizon", "delta_grid_k", "epsilon_grid"});
    if (j.contains("cauchy_tol")) spec.cauchy_tol = r.number(j["cauchy_tol"], "tolerances.cauchy_tol");
    if (j.contains("in_measure_tol")) spec.in_measure_tol = r.number(j["in_measure_tol"], "tolerances.in_measure_tol");
    if (j.contains("horizon")) spec.horizon = r.integer(j["horizon"], "tolerances.horizon");
    if (j.contains("delta_grid_k")) {
      spec.delta_grid_k = static_cast<int>(std::clamp<std::int64_t>(
          r.integer(j["delta_grid_k"], "tolerances.delta_grid_k"), -1, 100000));
    }
    if (j.contains("epsilon_grid")) spec.epsilon_grid = r.numbers(j["epsilon_grid"], "tolerances.epsilon_grid");
  }

  if (doc.contains("campaign")) {
    const auto& j = doc["campaign"];
    r.allow(j, "campaign", {"pairs", "epsilon"});
    if (j.contains("pairs")) spec.campaign_pairs = r.integer(j["pairs"], "campaign.pairs");
    if (j.contains("epsilon")) spec.campaign_epsilon = r.number(j["epsilon"], "campaign.epsilon");
  }

  if (doc.contains("seed")) spec.seed = r.unsigned_integer(doc["seed"], "seed");

  if (doc.contains("output")) {
    const auto& j = doc["output"];
    r.allow(j, "output", {"format", "precision", "timing"});
    if (j.contains("format")) {
      const auto f = r.string(j["format"], "output.format");
      if (f == "csv") {
        spec.format = OutputFormat::Csv;
      } else if (f != "records") {
        r.fail("output.format", "expected 'records' or 'csv'");
      }
    }
    if (j.contains("precision")) {
      spec.precision = static_cast<int>(std::clamp<std::int64_t>(r.integer(j["precision"], "output.precision"), 0, 100));
    }
    if (j.contains("timing")) spec.timing = r.boolean(j["timing"], "output.timing");
  }

  validate_scenario(spec);
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void validate_scenario(const ScenarioSpec& spec) {
  auto bad = [](const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::Parse, "field '" + field + "': " + msg);
  };
  if (spec.space_kind == SpaceKind::Interval && !(spec.total_mass > 0.0 && std::isfinite(spec.total_mass))) {
    bad("space.total_mass", "must be positive");
  }
  if (!(spec.cauchy_tol > 0.0)) bad("tolerances.cauchy_tol", "must be positive");
  if (!(spec.in_measure_tol > 0.0)) bad("tolerances.in_measure_tol", "must be positive");
  if (spec.horizon < 2) bad("tolerances.horizon", "must be at least 2");
  if (spec.delta_grid_k < 0 || spec.delta_grid_k > 1000) bad("tolerances.delta_grid_k", "must be in 0..1000");
  if (spec.epsilon_grid.empty()) bad("tolerances.epsilon_grid", "must not be empty");
  for (double e : spec.epsilon_grid) {
    if (!(e > 0.0)) bad("tolerances.epsilon_grid", "entries must be positive");
  }
  if (spec.campaign_pairs < 1) bad("campaign.pairs", "must be positive");
  if (!(spec.campaign_epsilon > 0.0)) bad("campaign.epsilon", "must be positive");
  if (spec.precision < 1 || spec.precision > 17) bad("output.precision", "must be in 1..17");
  for (const auto* s : {&spec.scheme, spec.scheme_b ? &*spec.scheme_b : nullptr}) {
    if (s == nullptr) continue;
    if (s->depth < 0 || s->depth > kMaxDyadicDepth) {
      bad("scheme.depth", "must be in 0.." + std::to_string(kMaxDyadicDepth));
    }
    if (s->start < 1) bad("scheme.start", "must be at least 1");
  }
  try {
    build_space(spec);
    build_value_space(spec);
    // The campaign draws its own maps; target and schemes are unused.
    if (spec.experiment == Experiment::Inequalities) return;
    const auto f = build_target(spec);
    if (spec.scheme_b) build_scheme(spec, *spec.scheme_b, f.target());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, e.what());
  }
}

json echo_scenario(const ScenarioSpec& spec) {
  json j;
  if (spec.space_kind == SpaceKind::Interval) {
    j["space"] = {{"kind", "interval"}, {"total_mass", spec.total_mass}};
  } else {
    j["space"] = {{"kind", "discrete"}, {"weights", spec.weights}};
  }
  if (spec.vector_values) {
    const char* norm = spec.norm == NormKind::One ? "one" : spec.norm == NormKind::Two ? "two" : "inf";
    j["value_space"] = {{"kind", "vector"}, {"dim", spec.dim}, {"norm", norm}};
  } else {
    j["value_space"] = {{"kind", "scalar"}};
  }
  if (spec.target_simple) {
    j["target"] = {{"simple", literal_json(*spec.target_simple)}};
  } else {
    j["target"] = {{"expression", spec.target_expression}};
  }
  j["scheme"] = scheme_json(spec.scheme);
  if (spec.scheme_b) j["scheme_b"] = scheme_json(*spec.scheme_b);
  j["experiment"] = to_string(spec.experiment);
  j["direction"] = spec.forward ? "forward" : "backward";
  j["tolerances"] = {{"cauchy_tol", spec.cauchy_tol},     {"in_measure_tol", spec.in_measure_tol},
                     {"horizon", spec.horizon},           {"delta_grid_k", spec.delta_grid_k},
                     {"epsilon_grid", spec.epsilon_grid}};
  j["campaign"] = {{"pairs", spec.campaign_pairs}, {"epsilon", spec.campaign_epsilon}};
  j["seed"] = spec.seed;
  j["output"] = {{"format", spec.format == OutputFormat::Csv ? "csv" : "records"},
                 {"precision", spec.precision},
                 {"timing", spec.timing}};
  return j;
}

MeasureSpace build_space(const ScenarioSpec& spec) {
  return spec.space_kind == SpaceKind::Interval ? MeasureSpace::interval(spec.total_mass)
                                                : MeasureSpace::discrete(spec.weights);
}

ValueSpace build_value_space(const ScenarioSpec& spec) {
  return spec.vector_values ? ValueSpace::vector(spec.dim, spec.norm) : ValueSpace::scalar();
}

ApproximableMap build_target(const ScenarioSpec& spec) {
  const auto space = build_space(spec);
  const auto vs = build_value_space(spec);
  std::optional<Evaluator> target;
  if (spec.target_simple) {
    target = Evaluator::of(build_literal(spec, *spec.target_simple));
  } else {
    if (space.kind() != SpaceKind::Interval) {
      throw Error(ErrorKind::Parse, "field 'target.expression': expressions need the interval space");
    }
    target = Expression::parse(spec.target_expression).to_evaluator(space, vs);
  }
  return ApproximableMap(*target, build_scheme(spec, spec.scheme, *target));
}

ApproximationScheme build_scheme(const ScenarioSpec& spec, const SchemeSpec& scheme,
                                 const Evaluator& target) {
  switch (scheme.kind) {
    case SchemeKind::DyadicLeft:
    case SchemeKind::DyadicMid:
      if (target.space().kind() != SpaceKind::Interval) {
        throw Error(ErrorKind::Parse, "field 'scheme.kind': dyadic schemes need the interval space");
      }
      return ApproximationScheme::dyadic(
          target, scheme.kind == SchemeKind::DyadicLeft ? SamplingRule::Left : SamplingRule::Mid,
          scheme.depth);
    case SchemeKind::ExplicitList: {
      std::vector<SimpleMap> maps;
      for (const auto& lit : scheme.maps) maps.push_back(build_literal(spec, lit));
      return ApproximationScheme::explicit_list(std::move(maps));
    }
    case SchemeKind::Expression:
      if (target.space().kind() != SpaceKind::Interval) {
        throw Error(ErrorKind::Parse, "field 'scheme.expression': expressions need the interval space");
      }
      return Expression::parse(scheme.expression, true)
          .to_scheme(target.space(), target.value_space(), scheme.start);
    case SchemeKind::Constant:
      if (!target.exact()) {
        throw Error(ErrorKind::Parse, "field 'scheme.kind': a constant scheme needs a simple target");
      }
      return ApproximationScheme::constant(*target.exact());
  }
  throw Error(ErrorKind::Parse, "unknown scheme");
}

ExtensionOptions build_options(const ScenarioSpec& spec) {
  ExtensionOptions o;
  o.tol = spec.cauchy_tol;
  o.in_measure_tol = spec.in_measure_tol;
  o.horizon = spec.horizon;
  o.delta_grid = geometric_delta_grid(spec.delta_grid_k);
  o.epsilon_grid = spec.epsilon_grid;
  return o;
}

}  // namespace bochner

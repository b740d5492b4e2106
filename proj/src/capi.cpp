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

#include "bochner/bochner.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "bochner/expression.hpp"
#include "bochner/extension.hpp"
#include "bochner/metrics.hpp"
#include "bochner/scenario.hpp"
#include "bochner/worst_subset.hpp"

struct bochner_space {
  bochner::MeasureSpace space;
};
struct bochner_map {
  bochner::SimpleMap map;
};
struct bochner_scenario {
  bochner::ScenarioSpec spec;
};
struct bochner_report {
  std::vector<bochner::ReportRecord> records;
};

namespace {

thread_local std::string last_error;

bochner_status status_of(bochner::ErrorKind kind) {
  using bochner::ErrorKind;
  switch (kind) {
    case ErrorKind::Structural: return BOCHNER_STRUCTURAL;
    case ErrorKind::Domain: return BOCHNER_DOMAIN;
    case ErrorKind::Parse: return BOCHNER_PARSE;
    case ErrorKind::Precondition: return BOCHNER_PRECONDITION;
    case ErrorKind::NotElementary: return BOCHNER_NOT_ELEMENTARY;
    case ErrorKind::NotConverging: return BOCHNER_NOT_CONVERGING;
    case ErrorKind::Resolution: return BOCHNER_RESOLUTION;
    case ErrorKind::Io: return BOCHNER_IO;
  }
  return BOCHNER_INTERNAL;
}

template <class Fn>
bochner_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return BOCHNER_OK;
  } catch (const bochner::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BOCHNER_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BOCHNER_INTERNAL;
  }
}

bochner_status invalid(const char* msg) {
  last_error = msg;
  return BOCHNER_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bochner::ValueSpace value_space(size_t dim, bochner_norm norm) {
  if (dim == 0) return bochner::ValueSpace::scalar();
  const auto kind = norm == BOCHNER_NORM_ONE   ? bochner::NormKind::One
                    : norm == BOCHNER_NORM_INF ? bochner::NormKind::Inf
                                               : bochner::NormKind::Two;
  return bochner::ValueSpace::vector(dim, kind);
}

std::vector<bochner::BanachElement> elements(const bochner_complex* values, size_t count, size_t dim) {
  const size_t width = dim == 0 ? 1 : dim;
  std::vector<bochner::BanachElement> out;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    std::vector<bochner::Complex> v(width);
    for (size_t c = 0; c < width; ++c) v[c] = {values[k * width + c].re, values[k * width + c].im};
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace

extern "C" {

const char* bochner_version(void) { return "1.0.0"; }

const char* bochner_last_error_message(void) { return last_error.c_str(); }

void bochner_string_free(char* text) { std::free(text); }

bochner_status bochner_space_create_interval(double total_mass, bochner_space** out) {
  if (out == nullptr) return invalid("null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new bochner_space{bochner::MeasureSpace::interval(total_mass)}; });
}

bochner_status bochner_space_create_discrete(const double* weights, size_t count, bochner_space** out) {
  if (out == nullptr || (weights == nullptr && count > 0)) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] {
    *out = new bochner_space{bochner::MeasureSpace::discrete(std::vector<double>(weights, weights + count))};
  });
}

void bochner_space_destroy(bochner_space* space) { delete space; }

bochner_status bochner_space_total_mass(const bochner_space* space, double* out) {
  if (space == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = space->space.total_mass();
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_map_create_step(const bochner_space* space, size_t dim, bochner_norm norm,
                                       const double* breaks, size_t pieces,
                                       const bochner_complex* values, bochner_map** out) {
  if (space == nullptr || breaks == nullptr || values == nullptr || out == nullptr) {
    return invalid("null pointer argument");
  }
  *out = nullptr;
  return guarded([&] {
    const auto vs = value_space(dim, norm);
    *out = new bochner_map{bochner::SimpleMap::step(space->space, vs,
                                                    std::vector<double>(breaks, breaks + pieces + 1),
                                                    elements(values, pieces, dim))};
  });
}

bochner_status bochner_map_create_atoms(const bochner_space* space, size_t dim, bochner_norm norm,
                                        const bochner_complex* values, bochner_map** out) {
  if (space == nullptr || values == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] {
    const auto vs = value_space(dim, norm);
    *out = new bochner_map{bochner::SimpleMap::on_atoms(space->space, vs,
                                                        elements(values, space->space.atom_count(), dim))};
  });
}

void bochner_map_destroy(bochner_map* map) { delete map; }

bochner_status bochner_map_cell_count(const bochner_map* map, size_t* out) {
  if (map == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = map->map.cell_count();
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_map_dim(const bochner_map* map, size_t* out) {
  if (map == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = map->map.value_space().dim();
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_map_integrate(const bochner_map* map, bochner_complex* out, size_t capacity) {
  if (map == nullptr || out == nullptr) return invalid("null pointer argument");
  if (capacity < map->map.value_space().dim()) return invalid("output array too small");
  return guarded([&] {
    const auto v = bochner::integrate_simple(map->map);
    for (size_t c = 0; c < v.components().size(); ++c) out[c] = {v[c].real(), v[c].imag()};
  });
}

bochner_status bochner_map_norm_integral(const bochner_map* map, double* out) {
  if (map == nullptr || out == nullptr) return invalid("null pointer argument");
  return guarded([&] { *out = bochner::norm_integral(map->map); });
}

bochner_status bochner_l1_distance(const bochner_map* s, const bochner_map* t, double* out) {
  if (s == nullptr || t == nullptr || out == nullptr) return invalid("null pointer argument");
  return guarded([&] { *out = bochner::l1_distance(s->map, t->map); });
}

bochner_status bochner_ky_fan_distance(const bochner_map* s, const bochner_map* t, double* out) {
  if (s == nullptr || t == nullptr || out == nullptr) return invalid("null pointer argument");
  return guarded([&] { *out = bochner::ky_fan_distance(s->map, t->map); });
}

bochner_status bochner_inequality_audit(const bochner_map* s, const bochner_map* t, double epsilon,
                                        bochner_inequality_slack* out) {
  if (s == nullptr || t == nullptr || out == nullptr) return invalid("null pointer argument");
  return guarded([&] {
    const auto r = bochner::inequality_audit(s->map, t->map, epsilon);
    *out = {r.epsilon, r.markov_slack, r.truncation_slack, r.triangle_slack};
  });
}

bochner_status bochner_worst_subset_value(const bochner_map* s, double delta, double* value, int* exact) {
  if (s == nullptr || value == nullptr) return invalid("null pointer argument");
  return guarded([&] {
    const auto w = bochner::worst_subset(s->map.space(), bochner::norm_map(s->map), delta);
    *value = w.value;
    if (exact != nullptr) *exact = w.exact ? 1 : 0;
  });
}

bochner_status bochner_extend_expression(const char* expression, double total_mass, double tol,
                                         int depth, int midpoint, bochner_complex* value,
                                         double* cauchy_bound, int64_t* n_used) {
  if (expression == nullptr || value == nullptr) return invalid("null pointer argument");
  return guarded([&] {
    const auto space = bochner::MeasureSpace::interval(total_mass);
    const auto target = bochner::Expression::parse(expression).to_evaluator(space, bochner::ValueSpace::scalar());
    const auto scheme = bochner::ApproximationScheme::dyadic(
        target, midpoint ? bochner::SamplingRule::Mid : bochner::SamplingRule::Left, depth);
    bochner::ExtensionOptions opts;
    opts.tol = tol;
    const auto r = bochner::extend_integral(bochner::ApproximableMap(target, scheme), opts);
    *value = {r.value[0].real(), r.value[0].imag()};
    if (cauchy_bound != nullptr) *cauchy_bound = r.cauchy_bound;
    if (n_used != nullptr) *n_used = r.n_used;
  });
}

bochner_status bochner_scenario_parse(const char* text, bochner_scenario** out) {
  if (text == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new bochner_scenario{bochner::parse_scenario(text)}; });
}

bochner_status bochner_scenario_load(const char* path, bochner_scenario** out) {
  if (path == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new bochner_scenario{bochner::load_scenario(path)}; });
}

bochner_status bochner_scenario_create_default(bochner_scenario** out) {
  if (out == nullptr) return invalid("null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new bochner_scenario{}; });
}

void bochner_scenario_destroy(bochner_scenario* scenario) { delete scenario; }

bochner_status bochner_scenario_set_experiment(bochner_scenario* scenario, const char* name) {
  if (scenario == nullptr || name == nullptr) return invalid("null pointer argument");
  const auto e = bochner::experiment_from_string(name);
  if (!e) return invalid("unknown experiment");
  scenario->spec.experiment = *e;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_set_seed(bochner_scenario* scenario, uint64_t seed) {
  if (scenario == nullptr) return invalid("null scenario");
  scenario->spec.seed = seed;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_set_cauchy_tol(bochner_scenario* scenario, double tol) {
  if (scenario == nullptr) return invalid("null scenario");
  if (!(tol > 0.0)) return invalid("tolerance must be positive");
  scenario->spec.cauchy_tol = tol;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_set_horizon(bochner_scenario* scenario, int64_t horizon) {
  if (scenario == nullptr) return invalid("null scenario");
  if (horizon < 2) return invalid("horizon must be at least 2");
  scenario->spec.horizon = horizon;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_set_format(bochner_scenario* scenario, bochner_format format) {
  if (scenario == nullptr) return invalid("null scenario");
  if (format != BOCHNER_FORMAT_RECORDS && format != BOCHNER_FORMAT_CSV) return invalid("unknown format");
  scenario->spec.format = format == BOCHNER_FORMAT_CSV ? bochner::OutputFormat::Csv : bochner::OutputFormat::Records;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_get_format(const bochner_scenario* scenario, bochner_format* out) {
  if (scenario == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = scenario->spec.format == bochner::OutputFormat::Csv ? BOCHNER_FORMAT_CSV : BOCHNER_FORMAT_RECORDS;
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_scenario_echo(const bochner_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(bochner::echo_scenario(scenario->spec).dump(2)); });
}

bochner_status bochner_run(const bochner_scenario* scenario, bochner_report** out) {
  if (scenario == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new bochner_report{bochner::run_campaign(scenario->spec)}; });
}

void bochner_report_destroy(bochner_report* report) { delete report; }

bochner_status bochner_report_record_count(const bochner_report* report, size_t* out) {
  if (report == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = report->records.size();
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_report_outcome_counts(const bochner_report* report, size_t counts[3]) {
  if (report == nullptr || counts == nullptr) return invalid("null pointer argument");
  counts[0] = counts[1] = counts[2] = 0;
  for (const auto& r : report->records) ++counts[static_cast<int>(r.outcome)];
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_report_exit_code(const bochner_report* report, int* out) {
  if (report == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = bochner::exit_code(report->records);
  last_error.clear();
  return BOCHNER_OK;
}

bochner_status bochner_report_emit(const bochner_report* report, bochner_format format, char** out) {
  if (report == nullptr || out == nullptr) return invalid("null pointer argument");
  *out = nullptr;
  return guarded([&] {
    std::ostringstream os;
    bochner::emit_report(report->records,
                         format == BOCHNER_FORMAT_CSV ? bochner::OutputFormat::Csv : bochner::OutputFormat::Records, os);
    *out = copy_string(os.str());
  });
}

bochner_status bochner_report_write(const bochner_report* report, bochner_format format, const char* path) {
  if (report == nullptr || path == nullptr) return invalid("null pointer argument");
  return guarded([&] {
    bochner::write_report(report->records,
                          format == BOCHNER_FORMAT_CSV ? bochner::OutputFormat::Csv : bochner::OutputFormat::Records,
                          path);
  });
}

}  // extern "C"

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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bochner/banach.hpp"
#include "bochner/extension.hpp"
#include "bochner/measure.hpp"
#include "bochner/scheme.hpp"

namespace bochner {

enum class Experiment { Integrate, Welldef, Vitali, RieszFischer, Inequalities, UiReport, Density };
enum class OutputFormat { Records, Csv };

/// Simple map literal: interval pieces via breaks, or atom labels via cells.
/// Values are constant expressions ("0.5", "1-2i", "[1, 0]").
struct SimpleLiteral {
  std::vector<double> breaks;
  std::vector<std::size_t> cells;
  std::vector<std::string> values;
  bool operator==(const SimpleLiteral&) const = default;
};

enum class SchemeKind { DyadicLeft, DyadicMid, ExplicitList, Expression, Constant };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::DyadicLeft;
  int depth = 20;
  std::vector<SimpleLiteral> maps;
  std::string expression;
  std::int64_t start = 1;
  bool operator==(const SchemeSpec&) const = default;
};

struct ScenarioSpec {
  SpaceKind space_kind = SpaceKind::Interval;
  double total_mass = 1.0;
  std::vector<double> weights;

  bool vector_values = false;
  std::size_t dim = 1;
  NormKind norm = NormKind::Two;

  std::string target_expression = "x";
  std::optional<SimpleLiteral> target_simple;

  SchemeSpec scheme;
  std::optional<SchemeSpec> scheme_b;

  Experiment experiment = Experiment::Integrate;
  bool forward = false;

  double cauchy_tol = 1e-6;
  double in_measure_tol = 1e-3;
  std::int64_t horizon = 64;
  int delta_grid_k = 20;
  std::vector<double> epsilon_grid = {0.1, 0.01, 0.001};

  std::int64_t campaign_pairs = 10000;
  double campaign_epsilon = 0.1;

  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Records;
  int precision = 17;
  bool timing = false;

  bool operator==(const ScenarioSpec&) const = default;
};

/// Parses and validates a JSON scenario document; defaults fill what is
/// missing. Errors name the offending field and its line.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::string& path);

/// Full scenario as JSON, every default spelled out; parse(echo(s)) == s.
nlohmann::json echo_scenario(const ScenarioSpec& spec);

/// Range checks shared by the parser and programmatic edits.
void validate_scenario(const ScenarioSpec& spec);

std::string to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view name);

MeasureSpace build_space(const ScenarioSpec& spec);
ValueSpace build_value_space(const ScenarioSpec& spec);
ApproximableMap build_target(const ScenarioSpec& spec);
ApproximationScheme build_scheme(const ScenarioSpec& spec, const SchemeSpec& scheme,
                                 const Evaluator& target);
ExtensionOptions build_options(const ScenarioSpec& spec);

enum class Outcome { Success = 0, Inapplicable = 1, Violation = 2 };

struct ReportRecord {
  std::string experiment;
  std::size_t index = 0;
  nlohmann::json inputs;
  nlohmann::json result;
  nlohmann::json traces;
  std::string verdict;
  std::string status;
  Outcome outcome = Outcome::Success;
  std::vector<std::string> value_re;
  std::vector<std::string> value_im;
  std::string bound;
  std::string n_used;
  std::optional<double> wall_time;
};

/// Runs the scenario's experiment. Module errors become failure records.
std::vector<ReportRecord> run_campaign(const ScenarioSpec& spec);

/// Worst outcome over the records, as a process exit code (0, 1 or 2).
int exit_code(const std::vector<ReportRecord>& records);

void emit_report(const std::vector<ReportRecord>& records, OutputFormat format, std::ostream& out);
void write_report(const std::vector<ReportRecord>& records, OutputFormat format, const std::string& path);

/// Decimal string with the given number of significant digits.
std::string format_number(double v, int precision = 17);

}  // namespace bochner

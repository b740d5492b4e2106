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

#include <cstdio>
#include <cstring>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bochner/bochner.h"

namespace {

constexpr int kExitConfig = 3;

struct ScenarioDeleter {
  void operator()(bochner_scenario* s) const { bochner_scenario_destroy(s); }
};
struct ReportDeleter {
  void operator()(bochner_report* r) const { bochner_report_destroy(r); }
};

int config_error(const std::string& what) {
  std::cerr << "bochner: " << what << ": " << bochner_last_error_message() << '\n';
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bochner integral audits on simple-map approximations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bochner_version());

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::int64_t> horizon;
  std::string format;
  std::string out_path;
  bool quiet = false;

  const std::map<std::string, std::string> commands = {
      {"integrate", "Extend the integral along the scenario's scheme"},
      {"welldef", "Compare the integrals along two schemes for one target"},
      {"vitali", "Audit l1 convergence against uniform integrability and convergence in measure"},
      {"riesz-fischer", "Build the limit of an l1-Cauchy sequence and audit it"},
      {"inequalities", "Seeded campaign of the measure/l1 comparison inequalities"},
      {"ui-report", "Uniform integrability modulus of the scheme at the horizon"},
      {"density", "Simple approximations within each epsilon of the grid"}};

  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "Scenario file (JSON); defaults apply without one")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed for randomized experiments");
    sub->add_option("--tolerance", tolerance, "Cauchy tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--horizon", horizon, "Number of scheme members examined")->check(CLI::Range(2, 1 << 30));
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "records"}));
    sub->add_option("--out", out_path, "Output file (default: standard output)");
    sub->add_flag("--quiet", quiet, "No summary on standard error");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  bochner_scenario* raw = nullptr;
  const bochner_status loaded = scenario_path.empty() ? bochner_scenario_create_default(&raw)
                                                      : bochner_scenario_load(scenario_path.c_str(), &raw);
  if (loaded != BOCHNER_OK) return config_error(scenario_path.empty() ? "default scenario" : scenario_path);
  std::unique_ptr<bochner_scenario, ScenarioDeleter> scenario(raw);

  if (bochner_scenario_set_experiment(scenario.get(), command.c_str()) != BOCHNER_OK) return config_error(command);
  if (seed && bochner_scenario_set_seed(scenario.get(), *seed) != BOCHNER_OK) return config_error("--seed");
  if (tolerance && bochner_scenario_set_cauchy_tol(scenario.get(), *tolerance) != BOCHNER_OK) {
    return config_error("--tolerance");
  }
  if (horizon && bochner_scenario_set_horizon(scenario.get(), *horizon) != BOCHNER_OK) {
    return config_error("--horizon");
  }
  if (!format.empty() &&
      bochner_scenario_set_format(scenario.get(), format == "csv" ? BOCHNER_FORMAT_CSV : BOCHNER_FORMAT_RECORDS) !=
          BOCHNER_OK) {
    return config_error("--format");
  }
  bochner_format fmt = BOCHNER_FORMAT_RECORDS;
  bochner_scenario_get_format(scenario.get(), &fmt);

  bochner_report* report_raw = nullptr;
  const bochner_status ran = bochner_run(scenario.get(), &report_raw);
  if (ran == BOCHNER_PARSE || ran == BOCHNER_INVALID_ARGUMENT) return config_error("scenario");
  if (ran != BOCHNER_OK) {
    std::cerr << "bochner: " << command << ": " << bochner_last_error_message() << '\n';
    return 1;
  }
  std::unique_ptr<bochner_report, ReportDeleter> report(report_raw);

  if (!out_path.empty()) {
    if (bochner_report_write(report.get(), fmt, out_path.c_str()) != BOCHNER_OK) return config_error("--out");
  } else {
    char* text = nullptr;
    if (bochner_report_emit(report.get(), fmt, &text) != BOCHNER_OK) return config_error("report");
    std::fwrite(text, 1, std::strlen(text), stdout);
    std::fflush(stdout);
    bochner_string_free(text);
  }

  int code = 0;
  bochner_report_exit_code(report.get(), &code);
  if (!quiet) {
    std::size_t counts[3] = {0, 0, 0};
    bochner_report_outcome_counts(report.get(), counts);
    std::cerr << command << ": " << counts[0] << " success, " << counts[1] << " inapplicable, " << counts[2]
              << " violation (exit " << code << ")\n";
  }
  return code;
}

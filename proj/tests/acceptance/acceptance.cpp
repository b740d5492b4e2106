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

// Desk-scale acceptance checks. One PASS/FAIL line per check; the exit status
// is nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bochner/error.hpp"
#include "bochner/extension.hpp"
#include "bochner/metrics.hpp"
#include "bochner/random.hpp"
#include "bochner/scenario.hpp"
#include "bochner/theorems.hpp"
#include "bochner/worst_subset.hpp"

using namespace bochner;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("unexpected exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%2d] %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

const auto kUnit = MeasureSpace::interval();
const auto kScalar = ValueSpace::scalar();

Evaluator poly(std::vector<double> coeffs) {
  return Evaluator(kUnit, kScalar, [coeffs](const Point& p, std::span<Complex> out) {
    const double x = std::get<double>(p);
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    out[0] = acc;
  });
}

SimpleMap spike(std::int64_t n, double height) {
  if (n == 1) return SimpleMap::step(kUnit, {0.0, 1.0}, {height});
  return SimpleMap::step(kUnit, {0.0, 1.0 / static_cast<double>(n), 1.0}, {height, 0.0});
}

// Closed form of int_0^1 |x - s(x)| dx for a real step map s.
double l1_to_identity(const SimpleMap& s) {
  double total = 0.0;
  const auto cells = s.cells();
  for (std::size_t c = 0; c < s.cell_count(); ++c) {
    const double v = s.value(c)[0].real();
    for (const auto& iv : cells[c].intervals()) {
      auto prim = [v](double x) { return 0.5 * (x - v) * std::abs(x - v); };
      total += prim(iv.hi) - prim(iv.lo);
    }
  }
  return total;
}

double exhaustive_worst(const std::vector<double>& w, const std::vector<double>& v, double delta) {
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w.size()); ++mask) {
    double mass = 0.0, value = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (mask >> k & 1) {
        mass += w[k];
        value += w[k] * v[k];
      }
    }
    if (mass <= delta && value > best) best = value;
  }
  return best;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Outcome simple_integral() {
  const auto t0 = Clock::now();
  const auto space = MeasureSpace::discrete({0.2, 0.3, 0.5});
  const auto vs = ValueSpace::vector(2, NormKind::Inf);
  const auto s = SimpleMap::on_atoms(space, vs, {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const auto v = integrate_simple(s);
  const double lhs = norm(vs, v);
  const double rhs = norm_integral(s);
  const double elapsed = seconds_since(t0);
  const bool ok = v[0] == Complex(0.7) && v[1] == Complex(0.8) && lhs == 0.8 && rhs == 1.0 &&
                  lhs <= rhs && elapsed < 1e-3;
  return {ok, fmt("integral (%.17g, %.17g), |integral|_inf %.17g <= integral of norm %.17g, %.3f ms",
                  v[0].real(), v[1].real(), lhs, rhs, elapsed * 1e3)};
}

Outcome extension_accuracy() {
  auto t0 = Clock::now();
  const auto x = poly({0.0, 1.0});
  const auto rx = extend_integral(ApproximableMap(x, ApproximationScheme::dyadic(x, SamplingRule::Left, 20)));
  const double tx = seconds_since(t0);
  const double ex = std::abs(rx.value[0].real() - 0.5);

  t0 = Clock::now();
  const auto x2 = poly({0.0, 0.0, 1.0});
  const auto rx2 = extend_integral(ApproximableMap(x2, ApproximationScheme::dyadic(x2, SamplingRule::Left, 20)));
  const double tx2 = seconds_since(t0);
  const double ex2 = std::abs(rx2.value[0].real() - 1.0 / 3.0);

  t0 = Clock::now();
  const auto w = well_definedness_audit(x2, ApproximationScheme::dyadic(x2, SamplingRule::Left, 20),
                                        ApproximationScheme::dyadic(x2, SamplingRule::Mid, 20));
  const double tw = seconds_since(t0);

  const bool ok = ex <= std::ldexp(1.0, -20) && ex2 <= 1e-5 && w.verdict == Agreement::Agree &&
                  tx < 1.0 && tx2 < 1.0 && tw < 1.0;
  return {ok, fmt("x err %.3g (%.3f s), x^2 err %.3g (%.3f s), left/mid discrepancy %.3g <= %.3g (%.3f s)",
                  ex, tx, ex2, tx2, w.discrepancy, w.allowance, tw)};
}

Outcome inequality_campaign() {
  struct Config {
    const char* name;
    MeasureSpace space;
    ValueSpace vs;
  };
  const std::vector<Config> configs = {
      {"interval m=1 scalar", MeasureSpace::interval(1.0), ValueSpace::scalar()},
      {"interval m=3 C^3 two", MeasureSpace::interval(3.0), ValueSpace::vector(3, NormKind::Two)},
      {"8 atoms C^2 one", MeasureSpace::discrete({0.05, 0.1, 0.15, 0.2, 0.05, 0.25, 0.1, 0.1}),
       ValueSpace::vector(2, NormKind::One)},
      {"16 atoms C^4 inf",
       MeasureSpace::discrete({0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1, 0.11, 0.12,
                               0.13, 0.14, 0.15, 0.16}),
       ValueSpace::vector(4, NormKind::Inf)},
  };
  const auto t0 = Clock::now();
  double worst = INFINITY;
  long bad = 0, total = 0;
  std::uint64_t seed = 1;
  for (const auto& c : configs) {
    CampaignRng rng(seed++);
    for (int k = 0; k < 10000; ++k) {
      const auto s = random_simple_map(c.space, c.vs, rng);
      const auto t = random_simple_map(c.space, c.vs, rng);
      const auto r = inequality_audit(s, t, 0.1);
      worst = std::min(worst, r.min_slack());
      bad += !r.valid(1e-12);
      ++total;
    }
  }
  const double elapsed = seconds_since(t0);
  return {bad == 0 && total == 40000 && elapsed < 30.0,
          fmt("%ld pairs over 4 spaces, %ld below -1e-12, min slack %.3g, %.2f s", total, bad, worst, elapsed)};
}

Outcome worst_set_oracle() {
  CampaignRng rng(2024);
  long cases = 0, mismatches = 0;
  for (std::size_t atoms = 1; atoms <= 12; ++atoms) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> w(atoms), v(atoms);
      std::vector<BanachElement> values;
      for (auto& x : w) x = rng.uniform();
      for (auto& x : v) {
        x = rng.below(4) == 0 ? 0.0 : 3.0 * rng.uniform();
        values.push_back({x});
      }
      const auto space = MeasureSpace::discrete(w);
      const auto s = SimpleMap::on_atoms(space, kScalar, values);
      for (const double frac : {0.1, 0.3, 0.5, 0.9}) {
        const double delta = frac * space.total_mass();
        if (!(delta > 0.0)) continue;
        const auto got = worst_subset(space, s, delta);
        ++cases;
        mismatches += !(got.exact && got.value == exhaustive_worst(w, v, delta));
      }
    }
  }
  return {mismatches == 0 && cases >= 100,
          fmt("%ld (space, values, delta) cases on 1..12 atoms, %ld mismatches", cases, mismatches)};
}

Outcome vitali_positive() {
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, 1.0); });
  ExtensionOptions o;
  o.horizon = 64;
  const auto v = vitali_audit(ApproximableMap::of(zero), seq, VitaliDirection::Backward, o);
  bool modulus_ok = v.ui.uniformly_integrable();
  for (std::size_t k = 0; k < v.ui.delta_grid.size(); ++k) {
    modulus_ok = modulus_ok && v.ui.modulus_values[k] == v.ui.delta_grid[k];
  }
  bool norms_ok = v.indices.size() == 64;
  for (std::size_t k = 0; k < v.indices.size(); ++k) {
    norms_ok = norms_ok && v.norm_trace[k] == 1.0 / static_cast<double>(v.indices[k]);
  }
  const bool ok = modulus_ok && norms_ok && v.conclusion == VitaliConclusion::Consistent;
  return {ok, fmt("modulus == delta on %zu grid points: %s, integral of norm == 1/n: %s, backward audit %s",
                  v.ui.delta_grid.size(), modulus_ok ? "yes" : "no", norms_ok ? "yes" : "no",
                  v.conclusion == VitaliConclusion::Consistent ? "consistent" : "not consistent")};
}

Outcome vitali_counterexample() {
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, static_cast<double>(n)); });
  ExtensionOptions o;
  o.horizon = 64;
  const auto v = vitali_audit(ApproximableMap::of(zero), seq, VitaliDirection::Backward, o);
  const bool flagged = v.conclusion != VitaliConclusion::Consistent;
  double floor = -1.0;
  if (!v.ui.uniformly_integrable()) floor = std::get<FailsAtResolution>(v.ui.verdict).floor;
  double worst_norm = 0.0;
  for (const double m : v.norm_trace) worst_norm = std::max(worst_norm, std::abs(m - 1.0));
  std::string error = "none";
  try {
    extend_integral(ApproximableMap(Evaluator::of(zero), seq), o);
  } catch (const Error& e) {
    error = to_string(e.kind());
  }
  const bool ok = floor == 1.0 && flagged && error == to_string(ErrorKind::NotElementary) &&
                  v.norm_trace.size() == 64 && worst_norm <= 1e-15;
  return {ok, fmt("floor %.17g, audit %s, extension error %s, max |integral of norm - 1| %.3g over %zu members",
                  floor, v.conclusion == VitaliConclusion::Inapplicable ? "inapplicable" : flagged ? "violation" : "consistent",
                  error.c_str(), worst_norm, v.norm_trace.size())};
}

Outcome riesz_fischer() {
  const auto x = poly({0.0, 1.0});
  const auto r = riesz_fischer_construct(ApproximationScheme::dyadic(x, SamplingRule::Left, 20));
  const double err = std::abs(r.extension.value[0].real() - 0.5);
  const bool ok = err <= 1e-6 && r.audit.conclusion == VitaliConclusion::Consistent;
  return {ok, fmt("limit integral %.17g (error %.3g), %zu picks, backward audit %s", r.extension.value[0].real(),
                  err, r.picks.size(), r.audit.conclusion == VitaliConclusion::Consistent ? "consistent" : "not consistent")};
}

Outcome density() {
  const auto x = poly({0.0, 1.0});
  const auto r = density_approximation(ApproximableMap(x, ApproximationScheme::dyadic(x, SamplingRule::Left, 20)), 0.01);
  const double exact = l1_to_identity(r.map);
  return {exact == 0.00390625 && exact < 0.01,
          fmt("level %lld, closed-form distance %.17g, certified %.6g", static_cast<long long>(r.index), exact,
              r.certified)};
}

Outcome ky_fan_axioms() {
  CampaignRng rng(99);
  const auto vs = ValueSpace::vector(2, NormKind::Two);
  const std::vector<MeasureSpace> spaces = {kUnit, MeasureSpace::interval(2.0),
                                            MeasureSpace::discrete({0.1, 0.2, 0.3, 0.15, 0.25})};
  double sym = 0.0, tri = 0.0, self = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto& space = spaces[static_cast<std::size_t>(k) % spaces.size()];
    const auto s = random_simple_map(space, vs, rng);
    const auto t = random_simple_map(space, vs, rng);
    const auto u = random_simple_map(space, vs, rng);
    sym = std::max(sym, std::abs(ky_fan_distance(s, t) - ky_fan_distance(t, s)));
    tri = std::max(tri, ky_fan_distance(s, u) - ky_fan_distance(s, t) - ky_fan_distance(t, u));
    self = std::max(self, ky_fan_distance(s, s));
  }
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const double half = ky_fan_distance(SimpleMap::constant(kUnit, kScalar, {0.5}), zero);
  const double two = ky_fan_distance(SimpleMap::constant(kUnit, kScalar, {2.0}), zero);
  const bool ok = sym <= 1e-12 && tri <= 1e-9 && self == 0.0 && half == 0.5 && two == 1.0;
  return {ok, fmt("1000 triples: max asymmetry %.3g, max triangle excess %.3g, max self-distance %.3g; "
                  "d(0.5, 0) = %.17g, d(2, 0) = %.17g",
                  sym, tri, self, half, two)};
}

Outcome determinism() {
  const char* scenarios[] = {
      R"j({"target": {"expression": "x"}, "experiment": "integrate"})j",
      R"j({"experiment": "inequalities", "seed": 42,
          "space": {"kind": "interval", "total_mass": 3},
          "value_space": {"kind": "vector", "dim": 3, "norm": "two"}})j",
      R"j({"target": {"simple": {"breaks": [0, 1], "values": ["0"]}},
          "scheme": {"kind": "expression", "expression": "n * ind(0, 1/n)"}, "experiment": "vitali"})j",
  };
  int compared = 0, differing = 0;
  std::string hashes;
  for (const char* text : scenarios) {
    for (const auto format : {OutputFormat::Csv, OutputFormat::Records}) {
      std::uint64_t h[2];
      for (int run = 0; run < 2; ++run) {
        std::ostringstream os;
        emit_report(run_campaign(parse_scenario(text)), format, os);
        h[run] = fnv1a(os.str());
      }
      ++compared;
      differing += h[0] != h[1];
      hashes += fmt(" %016llx", static_cast<unsigned long long>(h[0]));
    }
  }
  return {differing == 0, fmt("%d scenario/format pairs, %d differing; hashes%s", compared, differing, hashes.c_str())};
}

}  // namespace

int main() {
  report(1, "simple integral oracle", simple_integral);
  report(2, "extension accuracy", extension_accuracy);
  report(3, "inequality campaign", inequality_campaign);
  report(4, "worst set vs exhaustive search", worst_set_oracle);
  report(5, "shrinking indicators are uniformly integrable", vitali_positive);
  report(6, "scaled spikes are detected", vitali_counterexample);
  report(7, "completeness construction", riesz_fischer);
  report(8, "density", density);
  report(9, "Ky Fan pseudometric", ky_fan_axioms);
  report(10, "determinism", determinism);
  std::printf("%d of 10 checks failed\n", failures);
  return failures == 0 ? 0 : 1;
}

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

#include "bochner/uniform_integrability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "bochner/error.hpp"
#include "bochner/metrics.hpp"
#include "bochner/worst_subset.hpp"

namespace bochner {
namespace {

std::vector<double> checked_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw Error(ErrorKind::Domain, std::string(what) + " grid is empty");
  for (double d : grid) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorKind::Domain, std::string(what) + " grid entries must be positive");
    }
  }
  std::vector<double> out = grid;
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_family(const std::vector<SimpleMap>& family) {
  if (family.empty()) throw Error(ErrorKind::Domain, "family is empty");
  for (const auto& s : family) {
    if (!(s.space() == family.front().space()) ||
        !(s.value_space() == family.front().value_space())) {
      throw Error(ErrorKind::Structural, "family members live on different spaces");
    }
  }
}

struct Tabulation {
  std::vector<double> values;
  bool exact = true;
};

// Pointwise max over members of their modulus curves.
void accumulate(Tabulation& tab, const SimpleMap& s, const std::vector<double>& grid) {
  const auto m = modulus_on_grid(s, grid);
  if (tab.values.empty()) tab.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) tab.values[i] = std::max(tab.values[i], m.values[i]);
  tab.exact = tab.exact && m.exact;
}

// Lower bounds of a monotone quantity stay lower bounds after taking the
// running max from small delta upward.
void make_monotone(std::vector<double>& values) {
  for (std::size_t i = values.size(); i-- > 1;) values[i - 1] = std::max(values[i - 1], values[i]);
}

std::variant<UniformlyIntegrable, FailsAtResolution> decide(const UIModulusReport& r) {
  UniformlyIntegrable ok;
  double floor = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = r.delta_grid.size(); i-- > 0;) {
    if (r.resolved[i]) {
      floor = r.modulus_values[i];
      break;
    }
  }
  if (std::isnan(floor)) floor = r.modulus_values.back();
  for (double eps : r.epsilon_grid) {
    bool found = false;
    for (std::size_t i = 0; i < r.delta_grid.size(); ++i) {
      if (r.resolved[i] && r.modulus_values[i] < eps) {
        ok.table.emplace_back(eps, r.delta_grid[i]);
        found = true;
        break;
      }
    }
    if (!found) return FailsAtResolution{eps, floor};
  }
  return ok;
}

}  // namespace

std::vector<double> geometric_delta_grid(int k) {
  if (k < 0 || k > 1000) throw Error(ErrorKind::Domain, "delta grid size out of range");
  std::vector<double> grid(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) grid[static_cast<std::size_t>(i)] = std::ldexp(1.0, -i);
  return grid;
}

double ui_modulus(const std::vector<SimpleMap>& family, double delta) {
  check_family(family);
  if (!(delta > 0.0)) throw Error(ErrorKind::Domain, "delta must be positive");
  double m = 0.0;
  for (const auto& s : family) m = std::max(m, ModulusCurve(s)(delta));
  return m;
}

UIModulusReport ui_certificate(const std::vector<SimpleMap>& family,
                               const std::vector<double>& epsilon_grid,
                               const std::vector<double>& delta_grid) {
  check_family(family);
  UIModulusReport r;
  r.delta_grid = checked_grid(delta_grid, "delta");
  r.epsilon_grid = epsilon_grid;
  checked_grid(epsilon_grid, "epsilon");
  Tabulation tab;
  for (const auto& s : family) accumulate(tab, s, r.delta_grid);
  if (!tab.exact) make_monotone(tab.values);
  r.modulus_values = std::move(tab.values);
  r.bounds.assign(r.delta_grid.size(), tab.exact ? BoundKind::Exact : BoundKind::Lower);
  r.resolved.assign(r.delta_grid.size(), true);
  r.verdict = decide(r);
  return r;
}

std::vector<std::size_t> epsilon_net_indices(const std::vector<SimpleMap>& family, double epsilon) {
  check_family(family);
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Domain, "epsilon must be positive");
  std::vector<std::size_t> net{0};
  std::vector<double> dist(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) dist[i] = l1_distance(family[i], family[0]);
  for (;;) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < family.size(); ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    if (dist[far] <= epsilon) break;
    net.push_back(far);
    for (std::size_t i = 0; i < family.size(); ++i) {
      dist[i] = std::min(dist[i], l1_distance(family[i], family[far]));
    }
  }
  return net;
}

std::vector<SimpleMap> epsilon_net(const std::vector<SimpleMap>& family, double epsilon) {
  std::vector<SimpleMap> out;
  for (auto i : epsilon_net_indices(family, epsilon)) out.push_back(family[i]);
  return out;
}

UIModulusReport linear_combination_ui(const UIModulusReport& r1, const UIModulusReport& r2,
                                      Complex alpha, Complex beta) {
  if (r1.delta_grid != r2.delta_grid) {
    throw Error(ErrorKind::Structural, "modulus reports use different delta grids");
  }
  UIModulusReport r;
  r.delta_grid = r1.delta_grid;
  r.epsilon_grid = r1.epsilon_grid;
  r.horizon = std::max(r1.horizon, r2.horizon);
  r.stabilized = r1.stabilized && r2.stabilized;
  const double a = std::abs(alpha);
  const double b = std::abs(beta);
  r.modulus_values.resize(r.delta_grid.size());
  r.resolved.resize(r.delta_grid.size());
  for (std::size_t i = 0; i < r.delta_grid.size(); ++i) {
    r.modulus_values[i] = a * r1.modulus_values[i] + b * r2.modulus_values[i];
    r.resolved[i] = r1.resolved[i] && r2.resolved[i];
  }
  r.bounds.assign(r.delta_grid.size(), BoundKind::Upper);
  r.verdict = decide(r);
  return r;
}

UIModulusReport sequence_ui_probe(const ApproximationScheme& scheme, std::int64_t horizon,
                                  const std::vector<double>& delta_grid,
                                  const std::vector<double>& epsilon_grid) {
  if (horizon < 2) throw Error(ErrorKind::Domain, "horizon must be at least 2");
  UIModulusReport r;
  r.delta_grid = checked_grid(delta_grid, "delta");
  r.epsilon_grid = epsilon_grid;
  checked_grid(epsilon_grid, "epsilon");
  r.horizon = horizon;

  const std::int64_t first = scheme.first();
  const std::int64_t last = scheme.last_within(horizon);
  const std::int64_t half_last = scheme.last_within(horizon / 2);
  Tabulation half;
  for (std::int64_t n = first; n <= half_last; ++n) accumulate(half, scheme.at(n), r.delta_grid);
  Tabulation full = half;
  for (std::int64_t n = half_last + 1; n <= last; ++n) accumulate(full, scheme.at(n), r.delta_grid);
  if (!full.exact) {
    make_monotone(half.values);
    make_monotone(full.values);
  }

  r.modulus_values = full.values;
  r.bounds.assign(r.delta_grid.size(), full.exact ? BoundKind::Exact : BoundKind::Lower);
  r.resolved.resize(r.delta_grid.size());
  for (std::size_t i = 0; i < r.delta_grid.size(); ++i) {
    const double gap = std::abs(full.values[i] - half.values[i]);
    r.resolved[i] = gap <= 0.1 * full.values[i] + 1e-12;
    r.stabilized = r.stabilized && r.resolved[i];
  }
  r.verdict = decide(r);
  return r;
}

}  // namespace bochner

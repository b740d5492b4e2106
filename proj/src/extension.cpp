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

#include "bochner/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bochner/metrics.hpp"
#include "reference.hpp"
#include "sampling.hpp"

namespace bochner {

double ExtensionOptions::in_measure_threshold() const {
  return in_measure_tol ? *in_measure_tol : std::sqrt(tol);
}

namespace detail {

ReferenceCache::ReferenceCache(const ApproximableMap& f, const ExtensionOptions& options)
    : f_(f), options_(options), exact_(f.target().exact().has_value()) {}

int ReferenceCache::depth_for(std::int64_t n) const {
  if (exact_) return -1;
  if (f_.target().space().kind() == SpaceKind::Discrete) return 0;
  if (!f_.scheme().dyadic_levels()) return options_.reference_depth;
  const auto level = static_cast<int>(std::clamp<std::int64_t>(n, 0, kMaxDyadicDepth));
  const int wanted = std::max(2 * level, level + 1);
  return std::clamp(wanted, level, std::max(level, options_.max_reference_depth));
}

const StepData& ReferenceCache::layout(int depth) {
  auto it = cache_.find(depth);
  if (it == cache_.end()) {
    it = cache_.emplace(depth, sample_layout(f_.target(), std::max(depth, 0), f_.reference_rule())).first;
  }
  return it->second;
}

double ReferenceCache::ky_fan(const SimpleMap& s, std::int64_t n) {
  const auto& ref = layout(depth_for(n));
  return ky_fan_from_profile(difference_profile(s.space(), s.value_space(), s.data(), ref));
}

double ReferenceCache::l1(const SimpleMap& s, std::int64_t n) {
  const auto& ref = layout(depth_for(n));
  const auto profile = difference_profile(s.space(), s.value_space(), s.data(), ref);
  return l1_from_profile(profile);
}

std::vector<std::int64_t> chain(const ApproximationScheme& scheme, std::int64_t horizon) {
  const std::int64_t last = scheme.last_within(horizon);
  std::vector<std::int64_t> out;
  std::int64_t n = scheme.first();
  for (;;) {
    out.push_back(n);
    if (n >= last) break;
    const std::int64_t next = scheme.next(n);
    if (next > last) break;
    n = next;
  }
  return out;
}

}  // namespace detail

namespace {

void validate(const ExtensionOptions& o) {
  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  if (o.horizon < 2) throw Error(ErrorKind::Domain, "horizon must be at least 2");
  if (!(o.in_measure_threshold() > 0.0)) {
    throw Error(ErrorKind::Domain, "in-measure tolerance must be positive");
  }
  if (o.reference_depth < 0 || o.reference_depth > kMaxDyadicDepth ||
      o.max_reference_depth < 0 || o.max_reference_depth > kMaxDyadicDepth) {
    throw Error(ErrorKind::Domain, "reference depth outside 0.." + std::to_string(kMaxDyadicDepth));
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Reference reference_for(const ApproximableMap& f, std::int64_t n, const ExtensionOptions& options) {
  validate(options);
  if (f.target().exact()) return Reference{*f.target().exact(), -1, true};
  detail::ReferenceCache cache(f, options);
  const int depth = cache.depth_for(n);
  return Reference{SimpleMap(f.target().space(), f.target().value_space(), cache.layout(depth)), depth,
                   false};
}

ExtensionResult extend_integral(const ApproximableMap& f, const ExtensionOptions& options) {
  validate(options);
  const auto& scheme = f.scheme();
  ExtensionResult res;
  res.value = BanachElement::zero(f.target().value_space().dim());
  res.in_measure_threshold = options.in_measure_threshold();

  res.ui_report = sequence_ui_probe(scheme, options.horizon, options.delta_grid, options.epsilon_grid);
  if (const auto* fail = std::get_if<FailsAtResolution>(&res.ui_report.verdict)) {
    throw ExtensionError(ErrorKind::NotElementary,
                         "scheme is not uniformly integrable at horizon " +
                             std::to_string(options.horizon) + ": modulus floor " + fmt(fail->floor) +
                             " at epsilon " + fmt(fail->epsilon),
                         res);
  }

  const auto indices = detail::chain(scheme, options.horizon);
  const double half = options.tol / 2.0;
  bool converged = false;
  double prev = -1.0;
  for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
    const auto& s = scheme.at(indices[k]);
    const auto& t = scheme.at(indices[k + 1]);
    const double d = l1_distance(s, t);
    res.cauchy_indices.push_back(indices[k]);
    res.cauchy_trace.push_back(d);
    if (d < half) {
      double bound = -1.0;
      if (d == 0.0) {
        bound = 0.0;
      } else if (prev > 0.0 && d < prev) {
        const double r = d / prev;
        bound = d * r / (1.0 - r);
      }
      if (bound >= 0.0 && bound <= half) {
        res.value = integrate_simple(t);
        res.cauchy_bound = bound;
        res.n_used = indices[k + 1];
        converged = true;
        break;
      }
    }
    prev = d;
  }
  if (!converged) {
    if (!indices.empty()) {
      res.n_used = indices.back();
      res.value = integrate_simple(scheme.at(indices.back()));
      res.cauchy_bound = std::numeric_limits<double>::infinity();
    }
    throw ExtensionError(ErrorKind::Resolution,
                         "Cauchy criterion not met within horizon " + std::to_string(options.horizon),
                         res);
  }

  detail::ReferenceCache refs(f, options);
  for (auto n : indices) {
    const double kf = refs.ky_fan(scheme.at(n), n);
    res.in_measure_indices.push_back(n);
    res.in_measure_trace.push_back(kf);
    res.reference_depths.push_back(refs.depth_for(n));
    if (kf <= res.in_measure_threshold) {
      res.in_measure_converged = true;
      break;
    }
  }
  if (!res.in_measure_converged && options.require_in_measure) {
    throw ExtensionError(ErrorKind::NotConverging,
                         "scheme does not approach the target in measure: Ky Fan distance " +
                             fmt(res.in_measure_trace.back()) + " above " +
                             fmt(res.in_measure_threshold),
                         res);
  }
  return res;
}

WellDefinedness well_definedness_audit(const Evaluator& f, const ApproximationScheme& scheme_a,
                                       const ApproximationScheme& scheme_b,
                                       const ExtensionOptions& options) {
  WellDefinedness out;
  ExtensionOptions opts = options;
  opts.require_in_measure = false;
  const ApproximableMap fa(f, scheme_a);
  const ApproximableMap fb(f, scheme_b);
  try {
    out.a = extend_integral(fa, opts);
  } catch (const Error& e) {
    out.reason = std::string("first scheme: ") + e.what();
    return out;
  }
  try {
    out.b = extend_integral(fb, opts);
  } catch (const Error& e) {
    out.reason = std::string("second scheme: ") + e.what();
    return out;
  }
  const auto& vs = f.value_space();
  out.discrepancy = norm(vs, combine(vs, 1.0, out.a->value, -1.0, out.b->value));
  out.allowance = out.a->cauchy_bound + out.b->cauchy_bound + options.tol;
  out.verdict = out.discrepancy <= out.allowance ? Agreement::Agree : Agreement::Disagree;
  out.in_measure_mismatch = !out.a->in_measure_converged || !out.b->in_measure_converged;

  const std::int64_t stop = std::max(out.a->n_used, out.b->n_used);
  for (auto n : detail::chain(scheme_a, options.horizon)) {
    if (n > stop) break;
    if (n < scheme_b.first() || n > scheme_b.last()) continue;
    out.pair_indices.push_back(n);
    out.pair_trace.push_back(l1_distance(scheme_a.at(n), scheme_b.at(n)));
  }
  return out;
}

}  // namespace bochner

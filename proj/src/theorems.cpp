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

#include "bochner/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bochner/metrics.hpp"
#include "reference.hpp"
#include "sampling.hpp"

namespace bochner {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Either small, or visibly decaying over the second half of the window.
bool trace_vanishes(const std::vector<double>& trace, double threshold) {
  if (trace.empty()) return false;
  if (trace.back() <= threshold) return true;
  if (trace.size() < 4) return false;
  const std::size_t mid = trace.size() / 2;
  for (std::size_t i = mid; i + 1 < trace.size(); ++i) {
    if (trace[i + 1] > trace[i] + 1e-12) return false;
  }
  return trace.back() <= 0.75 * trace[mid];
}

void require_real(const SimpleMap& s, const char* which) {
  for (const auto& z : s.data().values) {
    if (std::abs(z.imag()) > 1e-12) {
      throw Error(ErrorKind::Domain, std::string(which) + " takes non-real values");
    }
  }
}

}  // namespace

NormDomination norm_domination_check(const ApproximableMap& f, const ExtensionOptions& options) {
  NormDomination out{0.0, 0.0, extend_integral(f, options), extend_integral(f.norm(), options)};
  const auto& vs = f.target().value_space();
  out.slack = out.norm_integral.value[0].real() - norm(vs, out.integral.value);
  out.allowance = out.integral.cauchy_bound + out.norm_integral.cauchy_bound;
  return out;
}

DensityResult density_approximation(const ApproximableMap& f, double epsilon,
                                    const ExtensionOptions& options) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Domain, "epsilon must be positive");
  if (options.horizon < 1) throw Error(ErrorKind::Domain, "horizon must be positive");
  const auto& scheme = f.scheme();
  detail::ReferenceCache refs(f, options);
  const std::int64_t last = scheme.last_within(options.horizon);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t n = scheme.first(); n <= last; ++n) {
    // A reference no finer than the element itself certifies nothing.
    if (!refs.exact() && scheme.dyadic_levels() && refs.depth_for(n) <= n) break;
    const auto& s = scheme.at(n);
    const double measured = refs.l1(s, n);
    // Against a sampled reference the distance to the target is at most
    // measured + int|f - ref|, and the reference is twice as fine.
    const double certified = refs.exact() ? measured : 2.0 * measured;
    best = std::min(best, certified);
    if (certified < epsilon) {
      return DensityResult{s, n, measured, certified, refs.exact(), refs.depth_for(n)};
    }
  }
  throw Error(ErrorKind::Resolution, "no scheme element within " + fmt(epsilon) + " at horizon " +
                                         std::to_string(options.horizon) + " (best " + fmt(best) + ")");
}

VitaliVerdict vitali_audit(const ApproximableMap& f, const ApproximationScheme& sequence,
                           VitaliDirection direction, const ExtensionOptions& options) {
  if (options.horizon < 2) throw Error(ErrorKind::Domain, "horizon must be at least 2");
  VitaliVerdict v;
  v.direction = direction;
  v.ui = sequence_ui_probe(sequence, options.horizon, options.delta_grid, options.epsilon_grid);

  const auto ref = f.target().exact()
                       ? f.target().exact()->data()
                       : detail::sample_layout(f.target(), options.reference_depth, f.reference_rule());
  const std::int64_t last = sequence.last_within(options.horizon);
  for (std::int64_t n = sequence.first(); n <= last; ++n) {
    const auto& s = sequence.at(n);
    const auto profile = detail::difference_profile(s.space(), s.value_space(), s.data(), ref);
    v.indices.push_back(n);
    v.l1_trace.push_back(detail::l1_from_profile(profile));
    v.in_measure_trace.push_back(detail::ky_fan_from_profile(profile));
    v.norm_trace.push_back(norm_integral(s));
    // Members are simple, so each approximates itself.
    v.approximation_gaps.push_back(0.0);
  }

  const double kf_threshold = options.in_measure_threshold();
  const bool ui = v.ui.uniformly_integrable();
  const bool in_measure = trace_vanishes(v.in_measure_trace, kf_threshold);
  const bool in_l1 = trace_vanishes(v.l1_trace, options.tol);
  const auto mid = v.indices.size() / 2;
  const std::string at_h = " at horizon " + std::to_string(options.horizon);

  if (direction == VitaliDirection::Backward) {
    if (!ui) {
      const auto& fail = std::get<FailsAtResolution>(v.ui.verdict);
      v.reason = "sequence is not uniformly integrable" + at_h + ": modulus floor " +
                 fmt(fail.floor) + " at epsilon " + fmt(fail.epsilon);
      return v;
    }
    if (!in_measure) {
      v.reason = "no convergence in measure" + at_h;
      return v;
    }
    if (in_l1) {
      v.conclusion = VitaliConclusion::Consistent;
    } else {
      v.conclusion = VitaliConclusion::Violation;
      v.witness = VitaliWitness{v.indices.back(), v.l1_trace.back(), v.l1_trace[mid],
                                "l1 distance does not decay although the sequence is uniformly "
                                "integrable and converges in measure"};
    }
    return v;
  }

  if (!in_l1) {
    v.reason = "no l1 convergence" + at_h;
    return v;
  }
  if (!ui) {
    const auto& fail = std::get<FailsAtResolution>(v.ui.verdict);
    v.conclusion = VitaliConclusion::Violation;
    v.witness = VitaliWitness{v.indices.back(), fail.floor, fail.epsilon,
                              "l1 convergent sequence is not uniformly integrable"};
    return v;
  }
  if (!in_measure) {
    v.conclusion = VitaliConclusion::Violation;
    v.witness = VitaliWitness{v.indices.back(), v.in_measure_trace.back(), kf_threshold,
                              "l1 convergent sequence does not converge in measure"};
    return v;
  }
  v.conclusion = VitaliConclusion::Consistent;
  return v;
}

RieszFischerResult riesz_fischer_construct(const ApproximationScheme& sequence,
                                           const ExtensionOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  if (options.horizon < 2) throw Error(ErrorKind::Domain, "horizon must be at least 2");
  const auto idx = detail::chain(sequence, options.horizon);
  if (idx.size() < 2) throw Error(ErrorKind::Precondition, "sequence has fewer than two members in the window");

  std::vector<double> gaps(idx.size() - 1);
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) gaps[j] = l1_distance(sequence.at(idx[j]), sequence.at(idx[j + 1]));
  std::vector<double> tail(idx.size(), 0.0);
  for (std::size_t j = gaps.size(); j-- > 0;) tail[j] = tail[j + 1] + gaps[j];
  if (!(gaps.back() < options.tol)) {
    throw Error(ErrorKind::Precondition, "sequence is not l1-Cauchy at horizon " +
                                             std::to_string(options.horizon) + ": last gap " +
                                             fmt(gaps.back()));
  }

  std::vector<std::size_t> pos;
  const std::size_t end = idx.size() - 1;
  std::size_t p = 0;
  for (int k = 0; k <= 1074; ++k) {
    const double bound = std::ldexp(1.0, -k);
    while (p < end && tail[p] > bound) ++p;
    if (pos.empty() || pos.back() != p) pos.push_back(p);
    if (p == end || tail[p] == 0.0) break;
  }
  if (pos.back() != end) pos.push_back(end);
  if (pos.size() < 2) throw Error(ErrorKind::Resolution, "fast subsequence has fewer than two terms");

  const SimpleMap limit_map = sequence.at(idx[end]);
  const std::size_t before = pos[pos.size() - 2];
  const double drift = ky_fan_distance(limit_map, sequence.at(idx[before]));
  if (drift > std::sqrt(tail[before]) + 1e-12) {
    throw Error(ErrorKind::Resolution, "pointwise limit is unstable: Ky Fan drift " + fmt(drift));
  }

  ApproximableMap limit(Evaluator::of(limit_map), sequence);
  ExtensionResult ext = extend_integral(limit, options);
  VitaliVerdict audit = vitali_audit(limit, sequence, VitaliDirection::Backward, options);
  RieszFischerResult out{std::move(limit), limit_map, std::move(ext), {}, {}, std::move(audit)};
  for (auto q : pos) {
    out.picks.push_back(idx[q]);
    out.tails.push_back(tail[q]);
  }
  return out;
}

Monotonicity positivity_monotonicity_check(const ApproximableMap& f, const ApproximableMap& g,
                                           const ExtensionOptions& options) {
  if (!f.target().value_space().is_scalar() || !g.target().value_space().is_scalar()) {
    throw Error(ErrorKind::Domain, "order comparisons need scalar maps");
  }
  if (!(f.target().space() == g.target().space())) {
    throw Error(ErrorKind::Structural, "maps live on different spaces");
  }
  Monotonicity out{0.0, 0.0, extend_integral(f, options), extend_integral(g, options)};
  for (auto n : out.f.cauchy_indices) require_real(f.scheme().at(n), "first map");
  for (auto n : out.g.cauchy_indices) require_real(g.scheme().at(n), "second map");
  require_real(f.scheme().at(out.f.n_used), "first map");
  require_real(g.scheme().at(out.g.n_used), "second map");
  if (std::abs(out.f.value[0].imag()) > 1e-12 || std::abs(out.g.value[0].imag()) > 1e-12) {
    throw Error(ErrorKind::Domain, "integrals are not real");
  }

  const std::int64_t n = std::max(out.f.n_used, out.g.n_used);
  const auto& sf = f.scheme().at(std::clamp(n, f.scheme().first(), f.scheme().last()));
  const auto& sg = g.scheme().at(std::clamp(n, g.scheme().first(), g.scheme().last()));
  bool ordered = true;
  detail::overlay(sf.space(), sf.data(), sg.data(), [&](double, std::uint32_t a, std::uint32_t b, double, double) {
    if (sf.data().slot_value(a)[0].real() < sg.data().slot_value(b)[0].real() - 1e-12) ordered = false;
  });
  if (!ordered) throw Error(ErrorKind::Precondition, "f >= g is not certified on the scheme cells");

  out.slack = out.f.value[0].real() - out.g.value[0].real();
  out.allowance = out.f.cauchy_bound + out.g.cauchy_bound + options.tol;
  return out;
}

}  // namespace bochner

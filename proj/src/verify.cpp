// Copyright 2026 The qm3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qm3/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qm3/construct.hpp"
#include "qm3/optimize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qm3 {

namespace {

struct SampleResult {
  double min_slack = 0.0;
  int worst_family = 0;
  int worst_perm = 0;
  bool failed = false;
};

SampleResult check_one_sample(std::uint64_t seed) {
  const EPoint x = spectra(random_state(seed));
  SampleResult r;
  r.min_slack = 1e300;
  for (int family = 1; family <= 7; ++family)
    for (int pi = 0; pi < 6; ++pi) {
      const double s = ineq_slack(family, kAllPerms[static_cast<std::size_t>(pi)], x);
      if (s < r.min_slack) {
        r.min_slack = s;
        r.worst_family = family;
        r.worst_perm = pi;
      }
    }
  r.failed = !membership(x, 1e-10).member;
  return r;
}

}  // namespace

SweepReport necessity_sweep(std::uint64_t n, std::uint64_t seed, bool parallel) {
  std::vector<SampleResult> results(n);
  (void)parallel;
  const std::int64_t ni = static_cast<std::int64_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t i = 0; i < ni; ++i)
    results[static_cast<std::size_t>(i)] = check_one_sample(Rng::mix(seed, static_cast<std::uint64_t>(i)));

  SweepReport rep;
  rep.samples = n;
  rep.min_slack_overall = 1e300;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].failed) ++rep.failures;
    if (results[i].min_slack < rep.min_slack_overall) {
      rep.min_slack_overall = results[i].min_slack;
      argmin = i;
    }
  }
  if (n > 0) {
    const SampleResult& worst = results[argmin];
    rep.worst_inequality =
        InequalityId{worst.worst_family, kAllPerms[static_cast<std::size_t>(worst.worst_perm)]}.name();
  }
  return rep;
}

MinimizationReport minimize_functional(Func f, const Perm& perm, int restarts, std::uint64_t seed,
                                       bool parallel, int max_iters) {
  const SpectralCoef coef = functional_coef(f, perm);
  const double constant = f == Func::Q3 ? 1.0 : 0.0;
  GdOptions opt;
  opt.max_iters = max_iters;
  std::vector<GdResult> results(static_cast<std::size_t>(restarts));
  (void)parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int r = 0; r < restarts; ++r)
    results[static_cast<std::size_t>(r)] =
        minimize_linear_spectral(coef, constant, Rng::mix(seed, static_cast<std::uint64_t>(r)), opt);

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[static_cast<std::size_t>(r)].value < results[static_cast<std::size_t>(best)].value) best = r;

  MinimizationReport rep;
  rep.functional = std::string(func_name(f)) + "(" + perm_name(perm) + ")";
  rep.best_value = results[static_cast<std::size_t>(best)].value;
  rep.restarts = restarts;
  rep.best_state = results[static_cast<std::size_t>(best)].state;
  return rep;
}

FacetSuiteReport facet_suite() {
  FacetSuiteReport rep;
  const Rat zero(0);
  for (const FacetSpec& fs : facet_simplices()) {
    // Every corner saturates the facet's inequality, exactly.
    for (const CornerPoint& c : fs.corners) {
      ++rep.checks;
      if (ineq_slack(fs.id.family, fs.id.abc, c.exact) != zero)
        rep.failures.push_back(fs.id.name() + ": corner " + c.label + " not on the hyperplane");
    }
    // Affine rank 5.
    ++rep.checks;
    std::vector<REPoint> pts;
    for (const CornerPoint& c : fs.corners) pts.push_back(c.exact);
    if (affine_rank(pts) != 5) rep.failures.push_back(fs.id.name() + ": affine rank is not 5");
    // Each omission subset lies on its second hyperplane.
    for (int omit = 0; omit < 6; ++omit) {
      ++rep.checks;
      const Hyperplane& h = fs.omission_planes[static_cast<std::size_t>(omit)];
      for (int k = 0; k < 6; ++k) {
        if (k == omit) continue;
        if (h.eval(fs.corners[static_cast<std::size_t>(k)].exact) != zero) {
          rep.failures.push_back(fs.id.name() + ": omission " +
                                 fs.corners[static_cast<std::size_t>(omit)].label + " subset off " +
                                 h.name());
          break;
        }
      }
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

std::vector<EPoint> sample_interior_epoints(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EPoint> out;
  out.reserve(n);
  while (out.size() < n) {
    EPoint x;
    bool valid = true;
    for (int a = 0; a < 3 && valid; ++a) {
      const double l1 = rng.next_double() / 3.0;
      const double l2 = rng.next_double() / 2.0;
      const double l3 = 1.0 - l1 - l2;
      if (l1 > l2 || l2 > l3) {
        valid = false;
        break;
      }
      x.lam(a, 0) = l1;
      x.lam(a, 1) = l2;
      x.lam(a, 2) = l3;
    }
    if (valid && membership(x).member) out.push_back(x);
  }
  return out;
}

RoundTripReport round_trip_suite(std::uint64_t n_interior, std::uint64_t seed, bool parallel) {
  std::vector<EPoint> targets;
  std::vector<std::string> names;
  for (const CornerPoint& c : corner_points()) {
    targets.push_back(c.point);
    names.push_back("corner " + c.label);
  }
  for (const FacetSpec& fs : facet_simplices()) {
    EPoint bary{};
    for (const CornerPoint& c : fs.corners)
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) bary.lam(a, i) += c.point.lam(a, i) / 6.0;
    targets.push_back(bary);
    names.push_back("barycenter " + fs.id.name());
  }
  const std::vector<EPoint> interior = sample_interior_epoints(n_interior, seed);
  for (std::size_t i = 0; i < interior.size(); ++i) {
    targets.push_back(interior[i]);
    names.push_back("interior #" + std::to_string(i));
  }

  std::vector<double> residuals(targets.size(), 0.0);
  std::vector<int> errors(targets.size(), 0);
  (void)parallel;
  const std::int64_t m = static_cast<std::int64_t>(targets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      auto [st, tr] = construct(targets[static_cast<std::size_t>(i)]);
      residuals[static_cast<std::size_t>(i)] = tr.residual;
    } catch (const std::exception&) {
      errors[static_cast<std::size_t>(i)] = 1;
    }
  }

  RoundTripReport rep;
  rep.cases = targets.size();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (errors[i])
      rep.failures.push_back(names[i] + ": construct failed");
    else if (residuals[i] > 1e-8)
      rep.failures.push_back(names[i] + ": residual above 1e-8");
    rep.max_residual = std::max(rep.max_residual, residuals[i]);
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace qm3

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

#include "qm3/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qm3 {

namespace {

// Objective interface: value at a spectrum and the lambda-gradient there.
struct SpectralObjective {
  std::function<double(const EPoint&)> value;
  std::function<SpectralCoef(const EPoint&)> grad;
};

double min_gap(const EPoint& x) {
  double g = 1.0;
  for (int a = 0; a < 3; ++a) {
    g = std::min(g, x.lam(a, 1) - x.lam(a, 0));
    g = std::min(g, x.lam(a, 2) - x.lam(a, 1));
  }
  return g;
}

GdResult pgd(const SpectralObjective& obj, std::uint64_t seed, const GdOptions& opt) {
  Rng rng(seed);
  StateTensor st = canonicalize(random_state(seed)).first;
  EPoint lam = spectra(st);
  double fcur = obj.value(lam);
  double step = opt.initial_step;
  int stalls = 0;
  int iter = 0;

  for (; iter < opt.max_iters; ++iter) {
    const SpectralCoef coef = obj.grad(lam);
    // Canonical-basis gradient: d lam_i^(a) = 2 Re(dc conj(c)) summed over
    // the axis; chain rule gives 2 * (sum of level weights) * c_ijk.
    std::array<cplx, 27> g;
    double dot = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double wgt = coef[0][static_cast<std::size_t>(i)] + coef[1][static_cast<std::size_t>(j)] +
                             coef[2][static_cast<std::size_t>(k)];
          const cplx c = st.amp(i, j, k);
          g[StateTensor::idx(i, j, k)] = 2.0 * wgt * c;
          dot += 2.0 * wgt * std::norm(c);
        }
    double gn2 = 0.0;
    for (int t = 0; t < 27; ++t) {
      g[static_cast<std::size_t>(t)] -= dot * st.raw()[static_cast<std::size_t>(t)];
      gn2 += std::norm(g[static_cast<std::size_t>(t)]);
    }
    if (std::sqrt(gn2) < opt.grad_tol) break;

    bool accepted = false;
    double trial_step = step;
    for (int h = 0; h < 40; ++h) {
      StateTensor cand = st;
      for (int t = 0; t < 27; ++t) cand.raw()[static_cast<std::size_t>(t)] -= trial_step * g[static_cast<std::size_t>(t)];
      cand = cand.normalized();
      const EPoint cl = spectra(cand);
      const double fc = obj.value(cl);
      if (fc <= fcur - 1e-4 * trial_step * gn2) {
        st = canonicalize(cand).first;
        lam = spectra(st);
        fcur = obj.value(lam);
        step = std::min(trial_step * 2.0, 1.0);
        accepted = true;
        stalls = 0;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      // The minima live at degenerate spectra, where sorted eigenvalues
      // kink; nudge off the kink and retry a few times before giving up.
      if (min_gap(lam) < 1e-9 && stalls < 3) {
        StateTensor nudged = st;
        for (int t = 0; t < 27; ++t)
          nudged.raw()[static_cast<std::size_t>(t)] +=
              1e-7 * cplx(rng.next_gaussian(), rng.next_gaussian());
        nudged = nudged.normalized();
        st = canonicalize(nudged).first;
        lam = spectra(st);
        fcur = obj.value(lam);
        step = opt.initial_step;
        ++stalls;
        continue;
      }
      break;
    }
  }
  return GdResult{st, fcur, iter};
}

}  // namespace

GdResult minimize_linear_spectral(const SpectralCoef& coef, double constant, std::uint64_t seed,
                                  const GdOptions& opt) {
  SpectralObjective obj;
  obj.value = [coef, constant](const EPoint& x) {
    double v = constant;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) v += coef[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] * x.lam(a, i);
    return v;
  };
  obj.grad = [coef](const EPoint&) { return coef; };
  return pgd(obj, seed, opt);
}

GdResult minimize_to_target(const EPoint& target, std::uint64_t seed, const GdOptions& opt) {
  SpectralObjective obj;
  obj.value = [target](const EPoint& x) {
    double v = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) {
        const double d = x.lam(a, i) - target.lam(a, i);
        v += d * d;
      }
    return v;
  };
  obj.grad = [target](const EPoint& x) {
    SpectralCoef c{};
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        c[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = 2.0 * (x.lam(a, i) - target.lam(a, i));
    return c;
  };
  return pgd(obj, seed, opt);
}

std::pair<StateTensor, double> construct_numeric(const EPoint& x, std::uint64_t seed, int restarts,
                                                 int max_iters, bool parallel) {
  GdOptions opt;
  opt.max_iters = max_iters;
  std::vector<GdResult> results(static_cast<std::size_t>(restarts));
  (void)parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int r = 0; r < restarts; ++r)
    results[static_cast<std::size_t>(r)] = minimize_to_target(x, Rng::mix(seed, static_cast<std::uint64_t>(r)), opt);

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[static_cast<std::size_t>(r)].value < results[static_cast<std::size_t>(best)].value) best = r;
  const StateTensor& st = results[static_cast<std::size_t>(best)].state;
  return {st, max_abs_diff(spectra(st), x)};
}

}  // namespace qm3

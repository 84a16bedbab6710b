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

#pragma once

#include <cstdint>
#include <utility>

#include "qm3/epoint.hpp"
#include "qm3/polytope.hpp"
#include "qm3/state.hpp"

namespace qm3 {

struct GdOptions {
  int max_iters = 2000;
  double grad_tol = 1e-10;
  double initial_step = 0.1;
  // Armijo backtracking: factor 0.5, up to 40 halvings, slope 1e-4.
};

struct GdResult {
  StateTensor state;
  double value = 0.0;
  int iters = 0;
};

/// Projected gradient descent over the unit amplitude sphere for a linear
/// spectral objective F(lambda) = const + sum coef[a][i] lam_i^(a).
/// Each iterate is canonicalized; the gradient follows the first-order
/// eigenvalue variation (2 * level-weight * amplitude in the canonical
/// basis). Eigenvalue near-degeneracy (gap < 1e-9) with a stalled line
/// search triggers a small random tangent perturbation.
GdResult minimize_linear_spectral(const SpectralCoef& coef, double constant, std::uint64_t seed,
                                  const GdOptions& opt = {});

/// Same machinery for the least-squares objective sum (lam - target)^2.
GdResult minimize_to_target(const EPoint& target, std::uint64_t seed, const GdOptions& opt = {});

/// Independent numerical oracle for `construct`: best of `restarts`
/// projected-gradient runs. Returns the best state and its max-norm
/// spectra residual. Restarts run in parallel when `parallel` is set;
/// per-restart seeds keep the result identical either way.
std::pair<StateTensor, double> construct_numeric(const EPoint& x, std::uint64_t seed,
                                                 int restarts = 32, int max_iters = 5000,
                                                 bool parallel = false);

}  // namespace qm3

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
#include <string>
#include <vector>

#include "qm3/epoint.hpp"
#include "qm3/polytope.hpp"
#include "qm3/state.hpp"

namespace qm3 {

// The sweeps below each exist in two equivalent forms selected by
// `parallel`: a serial reference loop and an OpenMP loop over the same
// per-index tasks. Reductions are index-based (min with smallest-index
// tie-break, exact counts), so both forms produce identical reports.

struct SweepReport {
  std::uint64_t samples = 0;
  double min_slack_overall = 0.0;  // over the 42 inequalities
  std::string worst_inequality;
  std::uint64_t failures = 0;  // membership failures at tol 1e-10
};

/// Haar-samples n states and checks Theorem-1 membership of each spectrum.
SweepReport necessity_sweep(std::uint64_t n, std::uint64_t seed, bool parallel = true);

struct MinimizationReport {
  std::string functional;  // e.g. "P4(132)"
  double best_value = 0.0;
  int restarts = 0;
  StateTensor best_state;
};

/// Restarted projected-gradient minimization of the functional over the
/// state sphere; the empirical stand-in for the tightness proofs.
MinimizationReport minimize_functional(Func f, const Perm& perm, int restarts, std::uint64_t seed,
                                       bool parallel = true, int max_iters = 2000);

struct FacetSuiteReport {
  bool pass = false;
  int checks = 0;
  std::vector<std::string> failures;
};

/// Exact-arithmetic facet structure: every facet corner saturates its
/// inequality, affine rank is 5, and each 5-corner omission subset lies on
/// the recorded second hyperplane.
FacetSuiteReport facet_suite();

struct RoundTripReport {
  bool pass = false;
  std::uint64_t cases = 0;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

/// construct -> spectra round trips over all corners, all facet
/// barycenters, and n rejection-sampled interior points.
RoundTripReport round_trip_suite(std::uint64_t n_interior, std::uint64_t seed,
                                 bool parallel = true);

/// Deterministic rejection sampler: per qutrit lam1 ~ U[0,1/3],
/// lam2 ~ U[0,1/2], triple validity, then the membership filter.
std::vector<EPoint> sample_interior_epoints(std::uint64_t n, std::uint64_t seed);

}  // namespace qm3

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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qm3/epoint.hpp"
#include "qm3/polytope.hpp"
#include "qm3/state.hpp"

namespace qm3 {

struct AngleRangeError : std::range_error {
  using std::range_error::range_error;
};

/// A target is outside the constructive family the caller asked for; the
/// dispatcher reacts by trying the next region.
struct RegionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleEPointError : std::runtime_error {
  MembershipReport report;
  explicit InfeasibleEPointError(MembershipReport r)
      : std::runtime_error("construct: target E-point fails membership"), report(std::move(r)) {}
};

/// Record of how a state was synthesized.
struct ConstructionTrace {
  std::string region;  // S0, C1..C3, D1..D3, Q3-simplex, S5-reshuffle, numeric-fallback
  Perm perm = kIdPerm;  // qutrit relabeling applied before the region build
  std::vector<std::pair<std::string, double>> params;
  double residual = 0.0;  // max |achieved lambda - target lambda|
};

/// Solves u sin(2 theta) = v sin(2 phi), u cos(2 theta) + v cos(2 phi) = f
/// for one valid angle pair. Requires ||u|-|v|| <= |f| <= |u|+|v| (within
/// 1e-12); throws AngleRangeError outside.
std::pair<double, double> solve_angle_pair(double u, double v, double f_target);

/// Squared-amplitude family parameters of the ten-coefficient construction.
struct S0Params {
  double a2 = 0, b2 = 0, c2 = 0, d2 = 0, f2 = 0, g2 = 0, h2 = 0;
  double theta1 = 0, theta2 = 0, phi1 = 0, phi2 = 0, chi1 = 0, chi2 = 0;
};

/// The deduplicated permutation orbit of the base family corners, paired
/// with their squared-parameter assignments; hull membership of this list
/// is the S0 test used by `construct`.
struct S0Corner {
  std::string label;
  EPoint point;
  double a2 = 0;
  std::array<double, 3> bcd2{};  // pair amplitudes, indexed by qutrit
  std::array<double, 3> fgh2{};  // block amplitudes, indexed by qutrit
};
const std::vector<S0Corner>& s0_corners();

/// Builds a state for any point in the hull of the S0 family corners.
/// Throws RegionError when the target is outside that hull.
std::pair<StateTensor, ConstructionTrace> build_s0(const EPoint& x);

struct P1BoundaryParams {
  double a = 0, b = 0, d = 0, f = 0, g = 0;
  double theta = 0, phi = 0;
  double c322 = 0;
};

/// State on the nine-coefficient support that saturates inequality (1),
/// optionally extended by the c_322 amplitude. Without the extension the
/// target must satisfy the boundary equality itself; with it, the target
/// must lie in the seven-corner simplex that includes [B,A,A].
std::pair<StateTensor, ConstructionTrace> build_p1_boundary(const EPoint& x, bool with_c322);

enum class L28Relabel { C1, C3 };

struct L28Params {
  double a = 0, f = 0, g = 0, p = 0, q = 0, r = 0;
  double theta = 0, phi = 0, alpha = 0;
};

/// Thirteen-coefficient family: eigenvalue-index relabeling per the region,
/// then the closed-form parameter solve with a 1-D bisection in q^2.
/// Throws RegionError when the family's window conditions fail.
std::pair<StateTensor, ConstructionTrace> build_l28(const EPoint& x, L28Relabel relabel);

/// A support with no nontrivial orthogonality relations plus per-corner
/// squared-amplitude assignments; spectra are affine in |c|^2 on it.
struct SupportSimplex {
  std::string name;
  std::vector<std::array<int, 3>> support;  // 0-based index triples
  struct Assignment {
    std::string label;
    EPoint point;
    std::vector<double> avals;  // parallel to support
  };
  std::vector<Assignment> corners;

  /// Lemma premise: no two support triples agree in two coordinates.
  bool valid_support() const;
};

const SupportSimplex& d1_support();
const SupportSimplex& d3_support();
const SupportSimplex& s6_support();  // the qutrit-1 variant; others by conjugation

/// Real nonnegative amplitudes on the support realizing any x in the hull of
/// the assignment corners. Throws RegionError outside.
std::pair<StateTensor, ConstructionTrace> build_support_simplex(const SupportSimplex& ss,
                                                                const EPoint& x);

/// Full constructive pipeline: S0 hull fast path, then the P8 split
/// (C1/C2/C3), the tilde-P9 split (D1/D2/D3), the Q3 simplex, and the S5
/// reshuffle. Guarantees spectra residual < 1e-8 for members; throws
/// InfeasibleEPointError (with the report) otherwise.
std::pair<StateTensor, ConstructionTrace> construct(const EPoint& x);

}  // namespace qm3

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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qm3/epoint.hpp"
#include "qm3/rational.hpp"

namespace qm3 {

/// One of the 42 defining inequalities: family 1..7 under a qutrit
/// permutation (abc). Slack >= 0 means satisfied.
struct InequalityId {
  int family = 1;
  Perm abc = kIdPerm;
  std::string name() const;  // "ineq4(132)"
};

/// RHS - LHS of the family's inequality with roles (a,b,c) = abc.
/// Family 8 is the auxiliary inequality from the constructive split
/// (2*lam1^b + lam2^b + 2*lam2^c + lam3^c >= 2*lam2^a + lam3^a); it is not
/// part of the defining set but backs the redundancy check.
double ineq_slack(int family, const Perm& abc, const EPoint& x);
Rat ineq_slack(int family, const Perm& abc, const REPoint& x);

/// The linear functionals used by the proofs and the constructive split.
enum class Func { P1, P4, P5, P6, P7, P8, P9, TildeP9, P10, Q1, Q2, Q3 };

const char* func_name(Func f);
std::optional<Func> func_from_name(const std::string& name);

/// Value of the functional composed with the permutation: the canonical form
/// is evaluated on the relabeled point y with y.q[s] = x.q[perm[s]].
double eval_functional(Func f, const Perm& perm, const EPoint& x);
Rat eval_functional(Func f, const Perm& perm, const REPoint& x);

/// Coefficients of the functional as a matrix over (qutrit, level):
/// F(x) = const + sum coef[a][i] * lam_i^(a). The constant is omitted
/// (only Q3 has one); gradients do not need it.
using SpectralCoef = std::array<std::array<double, 3>, 3>;
SpectralCoef functional_coef(Func f, const Perm& perm);

struct MembershipReport {
  bool member = false;
  double min_slack = 0.0;  // min over simplex constraints and all 42 inequalities
  std::vector<std::pair<std::string, double>> violations;  // (id, slack), slack < -tol
};

/// Feasibility test: the three SpectrumTriple constraints plus the 42
/// inequalities, all with slack >= -tol.
MembershipReport membership(const EPoint& x, double tol = 1e-10);

/// Exact-arithmetic membership for rational points: returns (member,
/// min slack) with closed (>= 0) comparisons.
std::pair<bool, Rat> membership_exact(const REPoint& x);

struct CornerPoint {
  std::string label;  // e.g. "[A,0 1/4 3/4,1/4 1/4 1/2]"
  REPoint exact;
  EPoint point;
};

/// The deduplicated qutrit-permutation orbit of the 11 base corner points,
/// in deterministic order (base order, then permutation order, first
/// occurrence kept).
const std::vector<CornerPoint>& corner_points();

/// A bounding hyperplane used in the facet-structure checks.
struct Hyperplane {
  enum class Kind { LamZero, LamEq, Ineq };
  Kind kind = Kind::LamZero;
  int a = 0;          // qutrit for LamZero / LamEq
  int i = 0, j = 0;   // levels for LamEq
  int family = 1;     // for Ineq
  Perm perm = kIdPerm;
  std::string name() const;
  Rat eval(const REPoint& x) const;  // 0 iff x lies on the hyperplane
};

/// Facet of the set: the inequality it saturates, its six corners, and for
/// each corner the second hyperplane containing the other five.
struct FacetSpec {
  InequalityId id;
  std::array<CornerPoint, 6> corners;
  std::array<Hyperplane, 6> omission_planes;
};

/// All 42 facet simplices (7 families x 6 permutations), family-major.
const std::vector<FacetSpec>& facet_simplices();

/// Theorem-3 slack for an n-qudit spectra list (each ascending, summing
/// to 1): sum_{a<n} sum_{i<d} lam_i^(a) - sum_{i<d} lam_i^(n).
/// Throws std::domain_error on ragged or invalid input.
double general_marginal_inequality(const std::vector<std::vector<double>>& spec);

/// All valid rational E-points on the grid with the given denominator
/// (each triple 0 <= l1 <= l2 <= l3, sum 1, all with denominator denom).
std::vector<REPoint> enumerate_valid_grid(int denom);

/// Affine rank of a set of rational E-points (dimension of their affine
/// hull), computed in exact arithmetic over the six free coordinates.
int affine_rank(const std::vector<REPoint>& pts);

}  // namespace qm3

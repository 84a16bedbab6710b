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

#include "qm3/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qm3 {

namespace {

// Coefficient table: slack = sum over roles (a,b,c) and levels of
// kIneqCoef[family-1][role][level] * lam_level^(role). Families 1..7 are the
// defining inequalities; family 8 is the auxiliary constructive-split one.
constexpr int kIneqCoef[8][3][3] = {
    {{-1, -1, 0}, {1, 1, 0}, {1, 1, 0}},    // (1)
    {{-1, 0, -1}, {1, 1, 0}, {1, 0, 1}},    // (2)
    {{0, -1, -1}, {1, 1, 0}, {0, 1, 1}},    // (3)
    {{-1, -2, 0}, {1, 2, 0}, {1, 2, 0}},    // (4)
    {{-2, -1, 0}, {1, 2, 0}, {2, 1, 0}},    // (5)
    {{0, -2, -1}, {1, 2, 0}, {0, 2, 1}},    // (6)
    {{0, -2, -1}, {2, 1, 0}, {0, 1, 2}},    // (7)
    {{0, -2, -1}, {2, 1, 0}, {0, 2, 1}},    // (8)
};

// Functional tables in the canonical frame (slot order 1,2,3), plus an
// additive constant (only Q3 uses it).
struct FuncDef {
  const char* name;
  int c[3][3];
  int constant;
};

constexpr FuncDef kFuncDefs[] = {
    {"P1", {{-1, -1, 0}, {1, 1, 0}, {1, 1, 0}}, 0},
    {"P4", {{-1, -2, 0}, {1, 2, 0}, {1, 2, 0}}, 0},
    {"P5", {{-2, -1, 0}, {1, 2, 0}, {2, 1, 0}}, 0},
    {"P6", {{0, -2, -1}, {1, 2, 0}, {0, 2, 1}}, 0},
    {"P7", {{0, -2, -1}, {2, 1, 0}, {0, 1, 2}}, 0},
    {"P8", {{0, -2, -1}, {0, 2, 1}, {2, 1, 0}}, 0},
    {"P9", {{2, 1, 0}, {-2, -1, 0}, {2, 1, 0}}, 0},
    {"tildeP9", {{-2, -1, 0}, {2, 1, 0}, {2, 1, 0}}, 0},
    {"P10", {{0, 1, 0}, {0, -1, 0}, {0, -1, 0}}, 0},
    {"Q1", {{-1, 1, 0}, {1, -1, 0}, {-1, 1, 0}}, 0},
    {"Q2", {{-1, 1, 0}, {-1, 1, 0}, {1, -1, 0}}, 0},
    {"Q3", {{1, -1, 0}, {1, -1, 0}, {1, -1, 0}}, 1},
};

template <class Point, class Scalar>
Scalar ineq_slack_impl(int family, const Perm& abc, const Point& x) {
  if (family < 1 || family > 8) throw std::domain_error("ineq_slack: family out of range");
  Scalar s{};
  for (int role = 0; role < 3; ++role)
    for (int lvl = 0; lvl < 3; ++lvl) {
      const int c = kIneqCoef[family - 1][role][lvl];
      if (c != 0) s += Scalar(c) * x.lam(abc[static_cast<std::size_t>(role)], lvl);
    }
  return s;
}

template <class Point, class Scalar>
Scalar eval_functional_impl(Func f, const Perm& perm, const Point& x) {
  const FuncDef& d = kFuncDefs[static_cast<int>(f)];
  Scalar s{d.constant};
  for (int slot = 0; slot < 3; ++slot)
    for (int lvl = 0; lvl < 3; ++lvl) {
      const int c = d.c[slot][lvl];
      if (c != 0) s += Scalar(c) * x.lam(perm[static_cast<std::size_t>(slot)], lvl);
    }
  return s;
}

// --- Corner data -----------------------------------------------------------

using RTriple = std::array<Rat, 3>;

const RTriple kO{Rat(0), Rat(0), Rat(1)};
const RTriple kA{Rat(0), Rat(1, 2), Rat(1, 2)};
const RTriple kB{Rat(1, 3), Rat(1, 3), Rat(1, 3)};
const RTriple kT{Rat(0), Rat(1, 3), Rat(2, 3)};   // 0 1/3 2/3
const RTriple kW{Rat(1, 6), Rat(1, 6), Rat(2, 3)};  // 1/6 1/6 2/3
const RTriple kQ{Rat(1, 4), Rat(1, 4), Rat(1, 2)};  // 1/4 1/4 1/2
const RTriple kQ2{Rat(0), Rat(1, 4), Rat(3, 4)};    // 0 1/4 3/4

REPoint make_rep(const RTriple& a, const RTriple& b, const RTriple& c) {
  REPoint p;
  p.q[0] = a;
  p.q[1] = b;
  p.q[2] = c;
  return p;
}

std::string triple_label(const std::array<Rat, 3>& t) {
  if (t == kO) return "O";
  if (t == kA) return "A";
  if (t == kB) return "B";
  return t[0].str() + " " + t[1].str() + " " + t[2].str();
}

std::string point_label(const REPoint& p) {
  return "[" + triple_label(p.q[0]) + "," + triple_label(p.q[1]) + "," + triple_label(p.q[2]) + "]";
}

CornerPoint make_corner(const REPoint& p) {
  return CornerPoint{point_label(p), p, p.to_double()};
}

// The 11 base corner points of the feasible set.
const std::array<REPoint, 11>& base_corners() {
  static const std::array<REPoint, 11> pts{
      make_rep(kO, kO, kO), make_rep(kO, kA, kA), make_rep(kO, kB, kB), make_rep(kA, kA, kA),
      make_rep(kA, kA, kB), make_rep(kA, kB, kB), make_rep(kB, kB, kB), make_rep(kB, kT, kT),
      make_rep(kA, kQ2, kQ), make_rep(kA, kB, kW), make_rep(kA, kW, kW)};
  return pts;
}

// --- Facet data (Proposition 3, at (abc) = (123)) ---------------------------

Hyperplane hp_zero(int a) {
  Hyperplane h;
  h.kind = Hyperplane::Kind::LamZero;
  h.a = a;
  return h;
}
Hyperplane hp_eq(int a, int i, int j) {
  Hyperplane h;
  h.kind = Hyperplane::Kind::LamEq;
  h.a = a;
  h.i = i;
  h.j = j;
  return h;
}
Hyperplane hp_ineq(int family, const Perm& perm) {
  Hyperplane h;
  h.kind = Hyperplane::Kind::Ineq;
  h.family = family;
  h.perm = perm;
  return h;
}

struct FacetBase {
  std::array<REPoint, 6> corners;
  std::array<Hyperplane, 6> planes;
};

// Permutations by 1-based name for readability of the transcription.
constexpr Perm kP123{0, 1, 2};
constexpr Perm kP132{0, 2, 1};
constexpr Perm kP213{1, 0, 2};
constexpr Perm kP231{1, 2, 0};
constexpr Perm kP312{2, 0, 1};
constexpr Perm kP321{2, 1, 0};

const std::array<FacetBase, 7>& facet_bases() {
  static const std::array<FacetBase, 7> fb = [] {
    std::array<FacetBase, 7> f;
    f[0].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kB, kB, kO),
                    make_rep(kA, kO, kA), make_rep(kA, kA, kO), make_rep(kB, kT, kT)};
    f[0].planes = {hp_eq(0, 1, 2), hp_zero(2),          hp_zero(1),
                   hp_ineq(5, kP132), hp_ineq(5, kP123), hp_ineq(4, kP123)};

    f[1].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kA, kO, kA),
                    make_rep(kO, kA, kA), make_rep(kW, kW, kA), make_rep(kQ, kQ2, kA)};
    f[1].planes = {hp_eq(2, 1, 2), hp_zero(2),          hp_eq(0, 0, 1),
                   hp_ineq(6, kP321), hp_zero(1), hp_ineq(4, kP321)};

    f[2].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kA, kO, kA),
                    make_rep(kT, kT, kB), make_rep(kA, kQ2, kQ), make_rep(kA, kW, kB)};
    f[2].planes = {hp_ineq(7, kP123), hp_zero(0), hp_eq(2, 0, 1),
                   hp_ineq(6, kP123), hp_ineq(5, kP321), hp_zero(1)};

    f[3].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kB, kB, kO),
                    make_rep(kA, kO, kA), make_rep(kA, kA, kO), make_rep(kA, kW, kW)};
    f[3].planes = {hp_eq(0, 1, 2), hp_ineq(2, kP231), hp_ineq(2, kP321),
                   hp_eq(2, 0, 1), hp_eq(1, 0, 1),    hp_ineq(1, kP123)};

    f[4].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kB, kB, kO),
                    make_rep(kA, kO, kA), make_rep(kB, kT, kT), make_rep(kB, kW, kA)};
    f[4].planes = {hp_eq(0, 1, 2), hp_zero(2), hp_ineq(3, kP321),
                   hp_eq(0, 0, 1), hp_eq(1, 0, 1), hp_ineq(1, kP123)};

    f[5].corners = {make_rep(kO, kO, kO), make_rep(kB, kO, kB), make_rep(kA, kO, kA),
                    make_rep(kA, kQ2, kQ), make_rep(kA, kW, kW), make_rep(kA, kW, kB)};
    f[5].planes = {hp_eq(0, 1, 2), hp_zero(0), hp_eq(2, 0, 1),
                   hp_eq(1, 0, 1), hp_ineq(3, kP123), hp_ineq(2, kP321)};

    f[6].corners = {make_rep(kA, kA, kB), make_rep(kB, kO, kB), make_rep(kA, kO, kA),
                    make_rep(kT, kT, kB), make_rep(kA, kQ2, kQ), make_rep(kA, kW, kB)};
    f[6].planes = {hp_ineq(3, kP123), hp_zero(0), hp_eq(2, 0, 1),
                   hp_eq(0, 1, 2), hp_eq(2, 1, 2), hp_zero(1)};
    return f;
  }();
  return fb;
}

}  // namespace

std::string InequalityId::name() const {
  return "ineq" + std::to_string(family) + "(" + perm_name(abc) + ")";
}

double ineq_slack(int family, const Perm& abc, const EPoint& x) {
  return ineq_slack_impl<EPoint, double>(family, abc, x);
}

Rat ineq_slack(int family, const Perm& abc, const REPoint& x) {
  return ineq_slack_impl<REPoint, Rat>(family, abc, x);
}

const char* func_name(Func f) { return kFuncDefs[static_cast<int>(f)].name; }

std::optional<Func> func_from_name(const std::string& name) {
  for (int i = 0; i < 12; ++i)
    if (name == kFuncDefs[i].name) return static_cast<Func>(i);
  return std::nullopt;
}

double eval_functional(Func f, const Perm& perm, const EPoint& x) {
  return eval_functional_impl<EPoint, double>(f, perm, x);
}

Rat eval_functional(Func f, const Perm& perm, const REPoint& x) {
  return eval_functional_impl<REPoint, Rat>(f, perm, x);
}

SpectralCoef functional_coef(Func f, const Perm& perm) {
  const FuncDef& d = kFuncDefs[static_cast<int>(f)];
  SpectralCoef coef{};
  for (int slot = 0; slot < 3; ++slot)
    for (int lvl = 0; lvl < 3; ++lvl)
      coef[static_cast<std::size_t>(perm[static_cast<std::size_t>(slot)])][static_cast<std::size_t>(lvl)] +=
          static_cast<double>(d.c[slot][lvl]);
  return coef;
}

MembershipReport membership(const EPoint& x, double tol) {
  MembershipReport rep;
  rep.min_slack = 1e300;
  auto check = [&rep, tol](const std::string& id, double slack) {
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -tol) rep.violations.emplace_back(id, slack);
  };
  for (int a = 0; a < 3; ++a) {
    const std::string q = ",q=" + std::to_string(a + 1) + ")";
    check("simplex(nonneg" + q, x.lam(a, 0));
    check("simplex(order12" + q, x.lam(a, 1) - x.lam(a, 0));
    check("simplex(order23" + q, x.lam(a, 2) - x.lam(a, 1));
    check("simplex(sum" + q, -std::abs(x.lam(a, 0) + x.lam(a, 1) + x.lam(a, 2) - 1.0));
  }
  for (int family = 1; family <= 7; ++family)
    for (const Perm& p : kAllPerms)
      check(InequalityId{family, p}.name(), ineq_slack(family, p, x));
  rep.member = rep.violations.empty();
  return rep;
}

std::pair<bool, Rat> membership_exact(const REPoint& x) {
  Rat min_slack(1000000);
  bool ok = true;
  auto check = [&](const Rat& slack) {
    if (slack < min_slack) min_slack = slack;
    if (slack < Rat(0)) ok = false;
  };
  for (int a = 0; a < 3; ++a) {
    check(x.lam(a, 0));
    check(x.lam(a, 1) - x.lam(a, 0));
    check(x.lam(a, 2) - x.lam(a, 1));
    if (x.lam(a, 0) + x.lam(a, 1) + x.lam(a, 2) != Rat(1)) ok = false;
  }
  for (int family = 1; family <= 7; ++family)
    for (const Perm& p : kAllPerms) check(ineq_slack(family, p, x));
  return {ok, min_slack};
}

const std::vector<CornerPoint>& corner_points() {
  static const std::vector<CornerPoint> corners = [] {
    std::vector<CornerPoint> out;
    std::vector<REPoint> seen;
    for (const REPoint& base : base_corners()) {
      for (const Perm& p : kAllPerms) {
        const REPoint img = permute_epoint(p, base);
        bool dup = false;
        for (const REPoint& s : seen)
          if (s == img) {
            dup = true;
            break;
          }
        if (!dup) {
          seen.push_back(img);
          out.push_back(make_corner(img));
        }
      }
    }
    return out;
  }();
  return corners;
}

std::string Hyperplane::name() const {
  switch (kind) {
    case Kind::LamZero:
      return "lam1(" + std::to_string(a + 1) + ")=0";
    case Kind::LamEq:
      return "lam" + std::to_string(i + 1) + "(" + std::to_string(a + 1) + ")=lam" +
             std::to_string(j + 1) + "(" + std::to_string(a + 1) + ")";
    case Kind::Ineq:
      return InequalityId{family, perm}.name() + "=0";
  }
  return "?";
}

Rat Hyperplane::eval(const REPoint& x) const {
  switch (kind) {
    case Kind::LamZero:
      return x.lam(a, 0);
    case Kind::LamEq:
      return x.lam(a, i) - x.lam(a, j);
    case Kind::Ineq:
      return ineq_slack(family, perm, x);
  }
  return Rat(0);
}

const std::vector<FacetSpec>& facet_simplices() {
  static const std::vector<FacetSpec> facets = [] {
    std::vector<FacetSpec> out;
    for (int family = 1; family <= 7; ++family) {
      const FacetBase& base = facet_bases()[static_cast<std::size_t>(family - 1)];
      for (const Perm& p : kAllPerms) {
        FacetSpec fs;
        fs.id = InequalityId{family, p};
        const Perm pinv = inverse_perm(p);
        for (int k = 0; k < 6; ++k) {
          fs.corners[static_cast<std::size_t>(k)] =
              make_corner(permute_epoint(pinv, base.corners[static_cast<std::size_t>(k)]));
          Hyperplane h = base.planes[static_cast<std::size_t>(k)];
          // Transform the plane into the permuted frame: a coordinate on
          // slot s becomes one on qutrit p[s]; an inequality's roles
          // compose with p.
          if (h.kind == Hyperplane::Kind::Ineq)
            h.perm = compose_perm(h.perm, p);
          else
            h.a = p[static_cast<std::size_t>(h.a)];
          fs.omission_planes[static_cast<std::size_t>(k)] = h;
        }
        out.push_back(std::move(fs));
      }
    }
    return out;
  }();
  return facets;
}

double general_marginal_inequality(const std::vector<std::vector<double>>& spec) {
  const std::size_t n = spec.size();
  if (n < 2) throw std::domain_error("general_marginal_inequality: need n >= 2 parties");
  const std::size_t d = spec[0].size();
  if (d < 2) throw std::domain_error("general_marginal_inequality: need d >= 2 levels");
  for (const auto& v : spec) {
    if (v.size() != d) throw std::domain_error("general_marginal_inequality: ragged input");
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] < -1e-12 || (i + 1 < d && v[i] > v[i + 1] + 1e-12))
        throw std::domain_error("general_marginal_inequality: spectra must be ascending, nonnegative");
      sum += v[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::domain_error("general_marginal_inequality: spectra must sum to 1");
  }
  double lhs = 0.0;
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t i = 0; i + 1 < d; ++i) lhs += spec[a][i];
  double rhs = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) rhs += spec[n - 1][i];
  return lhs - rhs;
}

std::vector<REPoint> enumerate_valid_grid(int denom) {
  std::vector<RTriple> triples;
  for (int n1 = 0; 3 * n1 <= denom; ++n1)
    for (int n2 = n1; 2 * n2 <= denom - n1; ++n2) {
      const int n3 = denom - n1 - n2;
      triples.push_back(RTriple{Rat(n1, denom), Rat(n2, denom), Rat(n3, denom)});
    }
  std::vector<REPoint> out;
  out.reserve(triples.size() * triples.size() * triples.size());
  for (const auto& t1 : triples)
    for (const auto& t2 : triples)
      for (const auto& t3 : triples) out.push_back(make_rep(t1, t2, t3));
  return out;
}

int affine_rank(const std::vector<REPoint>& pts) {
  if (pts.empty()) return -1;
  // Rows: differences to the first point, in the 6 free coordinates
  // (lam1, lam2 per qutrit).
  std::vector<std::array<Rat, 6>> rows;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::array<Rat, 6> r;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 2; ++i)
        r[static_cast<std::size_t>(2 * a + i)] = pts[k].lam(a, i) - pts[0].lam(a, i);
    rows.push_back(r);
  }
  int rank = 0;
  for (int col = 0; col < 6 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
      if (rows[r][static_cast<std::size_t>(col)] != Rat(0)) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    const std::array<Rat, 6>& prow = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][static_cast<std::size_t>(col)] == Rat(0)) continue;
      const Rat factor = rows[r][static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      for (int c2 = col; c2 < 6; ++c2)
        rows[r][static_cast<std::size_t>(c2)] -= factor * prow[static_cast<std::size_t>(c2)];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qm3

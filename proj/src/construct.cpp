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

#include "qm3/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qm3/linprog.hpp"

namespace qm3 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGateTol = 1e-11;   // region boundary tolerance
constexpr double kWeightTol = 1e-9;  // simplex-coordinate interiority
constexpr double kZeroW = 1e-12;     // weight clamp threshold

using DTriple = std::array<double, 3>;

const DTriple dO{0.0, 0.0, 1.0};
const DTriple dA{0.0, 0.5, 0.5};
const DTriple dB{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
const DTriple dT{0.0, 1.0 / 3.0, 2.0 / 3.0};
const DTriple dW{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
const DTriple dQ{0.25, 0.25, 0.5};
const DTriple dQ2{0.0, 0.25, 0.75};

EPoint ep(const DTriple& a, const DTriple& b, const DTriple& c) {
  EPoint x;
  x.q[0].lam = a;
  x.q[1].lam = b;
  x.q[2].lam = c;
  return x;
}

std::string permute_label(const std::string& label, const Perm& p) {
  // "[s1,s2,s3]" -> segments reordered by p.
  std::array<std::string, 3> seg;
  std::size_t pos = 1, si = 0;
  for (std::size_t i = 1; i + 1 <= label.size() && si < 3; ++i) {
    if (label[i] == ',' || label[i] == ']') {
      seg[si++] = label.substr(pos, i - pos);
      pos = i + 1;
    }
  }
  return "[" + seg[static_cast<std::size_t>(p[0])] + "," + seg[static_cast<std::size_t>(p[1])] +
         "," + seg[static_cast<std::size_t>(p[2])] + "]";
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }
double clamp_nonneg(double v) { return v < 0.0 ? 0.0 : v; }

// ---------------------------------------------------------------------------
// S0 family data
// ---------------------------------------------------------------------------

struct S0Base {
  const char* label;
  EPoint point;
  double a2;
  std::array<double, 3> bcd2;
  std::array<double, 3> fgh2;
};

const std::vector<S0Base>& s0_bases() {
  static const std::vector<S0Base> bases = [] {
    const double k12 = 1.0 / 12.0;
    std::vector<S0Base> v;
    v.push_back({"[B,B,B]", ep(dB, dB, dB), 0.25, {1.0 / 6, 1.0 / 6, 1.0 / 6}, {k12, k12, k12}});
    v.push_back({"[B,A,A]", ep(dB, dA, dA), 1.0 / 3, {1.0 / 3, 1.0 / 6, 1.0 / 6}, {0, 0, 0}});
    v.push_back({"[A,B,B]", ep(dA, dB, dB), 1.0 / 3, {k12, 0.25, 0.25}, {k12, 0, 0}});
    v.push_back({"[O,B,B]", ep(dO, dB, dB), 1.0 / 3, {1.0 / 3, 0, 0}, {1.0 / 3, 0, 0}});
    v.push_back({"[A,A,A]", ep(dA, dA, dA), 0.25, {0.25, 0.25, 0.25}, {0, 0, 0}});
    v.push_back({"[O,A,A]", ep(dO, dA, dA), 0.5, {0.5, 0, 0}, {0, 0, 0}});
    v.push_back({"[O,O,O]", ep(dO, dO, dO), 1.0, {0, 0, 0}, {0, 0, 0}});
    v.push_back({"[A,B,1/6 1/6 2/3]", ep(dA, dB, dW), 1.0 / 3, {0, 1.0 / 6, 1.0 / 3}, {1.0 / 6, 0, 0}});
    v.push_back(
        {"[A,1/4 1/4 1/2,0 1/4 3/4]", ep(dA, dQ, dQ2), 0.5, {0, 0.25, 0.25}, {0, 0, 0}});
    return v;
  }();
  return bases;
}

}  // namespace

const std::vector<S0Corner>& s0_corners() {
  static const std::vector<S0Corner> corners = [] {
    std::vector<S0Corner> out;
    for (const S0Base& base : s0_bases()) {
      for (const Perm& p : kAllPerms) {
        S0Corner c;
        c.label = permute_label(base.label, p);
        c.point = permute_epoint(p, base.point);
        c.a2 = base.a2;
        for (std::size_t s = 0; s < 3; ++s) {
          c.bcd2[s] = base.bcd2[static_cast<std::size_t>(p[s])];
          c.fgh2[s] = base.fgh2[static_cast<std::size_t>(p[s])];
        }
        bool dup = false;
        for (const S0Corner& prev : out)
          if (prev.point == c.point) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(std::move(c));
      }
    }
    return out;
  }();
  return corners;
}

std::pair<double, double> solve_angle_pair(double u, double v, double f_target) {
  const double au = std::abs(u), av = std::abs(v), af = std::abs(f_target);
  if (af > au + av + 1e-12 || af < std::abs(au - av) - 1e-12)
    throw AngleRangeError("solve_angle_pair: f outside [||u|-|v||, |u|+|v|]");

  double theta, phi;
  if (au < 1e-15 && av < 1e-15) {
    theta = phi = 0.0;
  } else if (av < 1e-15) {
    theta = 0.5 * std::acos(std::min(1.0, std::max(-1.0, f_target / u)));
    phi = 0.0;
  } else if (au < 1e-15) {
    phi = 0.5 * std::acos(std::min(1.0, std::max(-1.0, f_target / v)));
    theta = 0.0;
  } else {
    // f^2 = u^2 + v^2 + 2uv cos 2(theta+phi) fixes theta+phi; the constraint
    // then fixes theta-phi.
    const double c2s =
        std::min(1.0, std::max(-1.0, (f_target * f_target - u * u - v * v) / (2.0 * u * v)));
    const double sigma = 0.5 * std::acos(c2s);  // theta+phi
    const double tau = std::atan2(-(u - v) * std::sin(sigma), (u + v) * std::cos(sigma));
    theta = 0.5 * (sigma + tau);
    phi = 0.5 * (sigma - tau);
  }
  const double f_achieved = u * std::cos(2 * theta) + v * std::cos(2 * phi);
  if (std::abs(f_achieved - f_target) > std::abs(f_achieved + f_target)) {
    // Shifting both angles by pi/2 flips f and preserves the constraint.
    theta += 0.5 * kPi;
    phi += 0.5 * kPi;
  }
  return {theta, phi};
}

std::pair<StateTensor, ConstructionTrace> build_s0(const EPoint& x) {
  const std::vector<S0Corner>& corners = s0_corners();
  std::vector<EPoint> pts;
  pts.reserve(corners.size());
  for (const S0Corner& c : corners) pts.push_back(c.point);
  const auto w = lp_decompose_weights(pts, x, 1e-9);
  if (!w) throw RegionError("build_s0: target outside the S0 hull");

  S0Params prm;
  std::array<double, 3> bcd2{0, 0, 0}, fgh2{0, 0, 0};
  double a2 = 0.0;
  for (std::size_t s = 0; s < corners.size(); ++s) {
    const double ws = (*w)[s];
    if (ws <= 0.0) continue;
    a2 += ws * corners[s].a2;
    for (std::size_t t = 0; t < 3; ++t) {
      bcd2[t] += ws * corners[s].bcd2[t];
      fgh2[t] += ws * corners[s].fgh2[t];
    }
  }
  a2 = clamp_nonneg(a2);
  for (double& v : bcd2) v = clamp_nonneg(v);
  for (double& v : fgh2) v = clamp_nonneg(v);
  const double fgh_sum = fgh2[0] + fgh2[1] + fgh2[2];

  std::array<double, 3> ang1{}, ang2{};
  for (int t = 0; t < 3; ++t) {
    const double u = a2 + 2.0 * fgh2[static_cast<std::size_t>(t)] - fgh_sum;
    const double v = bcd2[static_cast<std::size_t>(t)];
    const double delta = x.lam(t, 2) - x.lam(t, 0);
    const auto [th, ph] = solve_angle_pair(u, v, delta);
    ang1[static_cast<std::size_t>(t)] = th;
    ang2[static_cast<std::size_t>(t)] = -ph;  // families constrain u sin + v sin = 0
  }
  prm.a2 = a2;
  prm.b2 = bcd2[0];
  prm.c2 = bcd2[1];
  prm.d2 = bcd2[2];
  prm.f2 = fgh2[0];
  prm.g2 = fgh2[1];
  prm.h2 = fgh2[2];
  prm.theta1 = ang1[0];
  prm.theta2 = ang2[0];
  prm.phi1 = ang1[1];
  prm.phi2 = ang2[1];
  prm.chi1 = ang1[2];
  prm.chi2 = ang2[2];

  const double a = std::sqrt(a2), b = std::sqrt(bcd2[0]), c = std::sqrt(bcd2[1]),
               d = std::sqrt(bcd2[2]), f = std::sqrt(fgh2[0]), g = std::sqrt(fgh2[1]),
               h = std::sqrt(fgh2[2]);

  // Block amplitudes before the j- and k-axis rotations (0-based indices).
  double bt[3][3][3] = {};
  bt[2][2][2] = a * std::cos(prm.theta1);
  bt[0][2][2] = a * std::sin(prm.theta1);
  bt[2][2][0] = -g * std::sin(prm.theta1);
  bt[0][2][0] = g * std::cos(prm.theta1);
  bt[2][0][2] = -h * std::sin(prm.theta1);
  bt[0][0][2] = h * std::cos(prm.theta1);
  bt[2][0][0] = f * std::cos(prm.theta1);
  bt[0][0][0] = f * std::sin(prm.theta1);
  // j-axis rotation by phi1 on (j=2, j=0) pairs.
  for (int i : {0, 2})
    for (int k : {0, 2}) {
      const double hi = bt[i][2][k], lo = bt[i][0][k];
      bt[i][2][k] = std::cos(prm.phi1) * hi - std::sin(prm.phi1) * lo;
      bt[i][0][k] = std::sin(prm.phi1) * hi + std::cos(prm.phi1) * lo;
    }
  // k-axis rotation by chi1 on (k=2, k=0) pairs.
  for (int i : {0, 2})
    for (int j : {0, 2}) {
      const double hi = bt[i][j][2], lo = bt[i][j][0];
      bt[i][j][2] = std::cos(prm.chi1) * hi - std::sin(prm.chi1) * lo;
      bt[i][j][0] = std::sin(prm.chi1) * hi + std::cos(prm.chi1) * lo;
    }

  StateTensor st;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (bt[i][j][k] != 0.0) st.amp(i, j, k) = bt[i][j][k];
  st.amp(2, 1, 1) = b * std::cos(prm.theta2);
  st.amp(0, 1, 1) = b * std::sin(prm.theta2);
  st.amp(1, 2, 1) = c * std::cos(prm.phi2);
  st.amp(1, 0, 1) = c * std::sin(prm.phi2);
  st.amp(1, 1, 2) = d * std::cos(prm.chi2);
  st.amp(1, 1, 0) = d * std::sin(prm.chi2);
  st = st.normalized();

  ConstructionTrace tr;
  tr.region = "S0";
  tr.params = {{"a2", prm.a2},     {"b2", prm.b2},       {"c2", prm.c2},   {"d2", prm.d2},
               {"f2", prm.f2},     {"g2", prm.g2},       {"h2", prm.h2},   {"theta1", prm.theta1},
               {"theta2", prm.theta2}, {"phi1", prm.phi1}, {"phi2", prm.phi2}, {"chi1", prm.chi1},
               {"chi2", prm.chi2}};
  tr.residual = max_abs_diff(spectra(st), x);
  return {st, tr};
}

// ---------------------------------------------------------------------------
// P1 boundary family (with the optional c322 extension)
// ---------------------------------------------------------------------------

namespace {

struct Lemma27Corner {
  const char* label;
  EPoint point;
  EPoint big;      // the nine Lambda values of the boundary-family part
  double c322sq;
};

const std::array<Lemma27Corner, 7>& lemma27_corners() {
  static const std::array<Lemma27Corner, 7> cs = [] {
    auto plain = [](const char* lbl, const EPoint& p) {
      return Lemma27Corner{lbl, p, p, 0.0};
    };
    std::array<Lemma27Corner, 7> a{
        plain("[B,0 1/3 2/3,0 1/3 2/3]", ep(dB, dT, dT)),
        plain("[O,O,O]", ep(dO, dO, dO)),
        plain("[B,B,O]", ep(dB, dB, dO)),
        plain("[B,O,B]", ep(dB, dO, dB)),
        Lemma27Corner{"[B,A,A]", ep(dB, dA, dA),
                      ep(DTriple{1.0 / 3, 1.0 / 3, 1.0 / 6}, DTriple{0.0, 1.0 / 3, 0.5},
                         DTriple{0.0, 1.0 / 3, 0.5}),
                      1.0 / 6},
        plain("[A,A,O]", ep(dA, dA, dO)),
        plain("[A,O,A]", ep(dA, dO, dA)),
    };
    return a;
  }();
  return cs;
}

}  // namespace

std::pair<StateTensor, ConstructionTrace> build_p1_boundary(const EPoint& x, bool with_c322) {
  EPoint big = x;
  double c322sq = 0.0;
  if (with_c322) {
    std::array<EPoint, 7> pts;
    for (int i = 0; i < 7; ++i) pts[static_cast<std::size_t>(i)] = lemma27_corners()[static_cast<std::size_t>(i)].point;
    std::array<double, 7> w;
    try {
      w = solve_simplex_coords(pts, x);
    } catch (const DegenerateSimplexError&) {
      throw RegionError("build_p1_boundary: degenerate corner system");
    }
    for (double wi : w)
      if (wi < -kWeightTol) throw RegionError("build_p1_boundary: target outside the simplex");
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) big.lam(a, i) = 0.0;
    c322sq = 0.0;
    for (int s = 0; s < 7; ++s) {
      const double ws = clamp_nonneg(w[static_cast<std::size_t>(s)]);
      const Lemma27Corner& cc = lemma27_corners()[static_cast<std::size_t>(s)];
      c322sq += ws * cc.c322sq;
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) big.lam(a, i) += ws * cc.big.lam(a, i);
    }
  } else {
    const double border = big.lam(1, 0) + big.lam(1, 1) + big.lam(2, 0) + big.lam(2, 1) -
                          big.lam(0, 0) - big.lam(0, 1);
    if (std::abs(border) > 1e-9)
      throw RegionError("build_p1_boundary: target violates the boundary equality");
  }

  P1BoundaryParams prm;
  const double a2 = clamp_nonneg(big.lam(1, 0));
  const double b2 = clamp_nonneg(big.lam(1, 1));
  const double d2 = clamp_nonneg(big.lam(2, 0));
  const double f2 = clamp_nonneg(big.lam(2, 1));
  const double g2 = clamp_nonneg(1.0 - a2 - b2 - d2 - f2 - c322sq);
  const auto [theta, phi] =
      solve_angle_pair(b2 - a2, f2 - d2, big.lam(0, 1) - big.lam(0, 0));
  prm.a = std::sqrt(a2);
  prm.b = std::sqrt(b2);
  prm.d = std::sqrt(d2);
  prm.f = std::sqrt(f2);
  prm.g = std::sqrt(g2);
  prm.theta = theta;
  prm.phi = phi;
  prm.c322 = std::sqrt(clamp_nonneg(c322sq));

  StateTensor st;
  st.amp(0, 0, 2) = prm.a * std::cos(theta);   // c113
  st.amp(1, 0, 2) = prm.a * std::sin(theta);   // c213
  st.amp(0, 1, 2) = -prm.b * std::sin(theta);  // c123
  st.amp(1, 1, 2) = prm.b * std::cos(theta);   // c223
  st.amp(0, 2, 0) = prm.d * std::cos(phi);     // c131
  st.amp(1, 2, 0) = -prm.d * std::sin(phi);    // c231
  st.amp(0, 2, 1) = prm.f * std::sin(phi);     // c132
  st.amp(1, 2, 1) = prm.f * std::cos(phi);     // c232
  st.amp(2, 2, 2) = prm.g;                     // c333
  st.amp(2, 1, 1) = prm.c322;                  // c322
  st = st.normalized();

  ConstructionTrace tr;
  tr.region = with_c322 ? "D2" : "P1-boundary";
  tr.params = {{"a", prm.a},         {"b", prm.b},   {"d", prm.d},     {"f", prm.f},
               {"g", prm.g},         {"theta", prm.theta}, {"phi", prm.phi},
               {"c322", prm.c322}};
  tr.residual = max_abs_diff(spectra(st), x);
  return {st, tr};
}

// ---------------------------------------------------------------------------
// Thirteen-coefficient family (the q^2 bisection construction)
// ---------------------------------------------------------------------------

namespace {

struct L28Inputs {
  double t1, t2;  // qutrit-1 pair in the family frame
  double u1, u2;  // qutrit-2 pair
  double v1, v2;  // qutrit-3 pair
};

StateTensor l28_solve(const L28Inputs& in, L28Params& prm) {
  constexpr double eps = 1e-9;
  double r2 = in.u1 + in.u2 + in.v1 + in.v2 - in.t1 - in.t2;
  double a2 = in.t1 + in.t2 - in.u1 - in.u2 - in.v1;
  double s2 = in.t1 + in.t2 - in.v1 - in.v2;
  double f2 = in.v1;
  double g2 = 1.0 - in.t1 - in.t2;
  if (r2 < -eps || a2 < -eps || s2 < -eps || g2 < -eps || f2 < -eps)
    throw RegionError("l28: negative squared parameter");
  r2 = clamp_nonneg(r2);
  a2 = clamp_nonneg(a2);
  s2 = clamp_nonneg(s2);
  f2 = clamp_nonneg(f2);
  g2 = clamp_nonneg(g2);
  if (r2 > in.u1 + eps || in.u2 > s2 + eps || in.u1 > in.u2 + eps)
    throw RegionError("l28: q^2 interval empty");
  double w = a2 - f2 - 2.0 * r2;
  if (w < -eps) throw RegionError("l28: a^2 - f^2 - 2r^2 < 0");
  w = clamp_nonneg(w);
  double target = in.t2 - in.t1;
  if (target < -eps) throw RegionError("l28: qutrit-1 pair not ordered");
  target = clamp_nonneg(target);
  const double delta = clamp_nonneg(in.u2 - in.u1);
  if (target > w + delta + eps || target < std::abs(w - delta) - eps)
    throw RegionError("l28: target outside the attainable window");

  double q2;
  if (in.u1 <= r2 + 1e-12) {
    // Boundary case lambda1^(2) = r^2: q^2 = s^2, p = 0.
    q2 = s2;
  } else if (delta <= 1e-13) {
    q2 = in.u1;
  } else {
    auto h = [&](double q2v) {
      const double p2v = s2 - q2v;
      const double U = r2 + f2 - a2 - p2v;
      const double V = q2v;
      const double S = clamp01((in.u1 * in.u2 - q2v * r2) / (p2v * q2v));
      return (U - V) * (U - V) + 4.0 * U * V * S - target * target;
    };
    double lo = in.u1, hi = in.u2;
    const double hlo = h(lo), hhi = h(hi);
    if (hlo <= 0.0) {
      q2 = lo;
    } else if (hhi >= 0.0) {
      q2 = hi;
    } else {
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) >= 0.0)
          lo = mid;
        else
          hi = mid;
      }
      q2 = 0.5 * (lo + hi);
    }
  }
  const double p2 = clamp_nonneg(s2 - q2);
  const double U = r2 + f2 - a2 - p2;
  const auto [theta, phi] = solve_angle_pair(U, -q2, target);

  prm.a = std::sqrt(a2);
  prm.f = std::sqrt(f2);
  prm.g = std::sqrt(g2);
  prm.p = std::sqrt(p2);
  prm.q = std::sqrt(q2);
  prm.r = std::sqrt(r2);
  prm.theta = theta;
  prm.phi = phi;
  const double d1 = r2 + p2 - q2;
  const double d2 = 2.0 * prm.p * prm.q * std::cos(theta + phi);
  prm.alpha = (std::abs(d1) < 1e-15 && std::abs(d2) < 1e-15) ? 0.0 : 0.5 * std::atan2(d2, d1);

  const double st_ = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double sa = std::sin(prm.alpha), ca = std::cos(prm.alpha);

  StateTensor s;
  s.amp(0, 2, 1) = prm.a * ct;                      // c132
  s.amp(1, 2, 1) = -prm.a * st_;                    // c232
  s.amp(0, 0, 1) = prm.r * sa * st_;                // c112
  s.amp(1, 0, 1) = prm.r * sa * ct;                 // c212
  s.amp(0, 1, 1) = prm.r * ca * st_;                // c122
  s.amp(1, 1, 1) = prm.r * ca * ct;                 // c222
  s.amp(0, 2, 0) = prm.f * st_;                     // c131
  s.amp(1, 2, 0) = prm.f * ct;                      // c231
  s.amp(0, 0, 2) = prm.p * sa * ct - prm.q * ca * cp;   // c113
  s.amp(1, 0, 2) = -prm.p * sa * st_ - prm.q * ca * sp; // c213
  s.amp(0, 1, 2) = prm.p * ca * ct + prm.q * sa * cp;   // c123
  s.amp(1, 1, 2) = -prm.p * ca * st_ + prm.q * sa * sp; // c223
  s.amp(2, 2, 2) = prm.g;                               // c333
  return s.normalized();
}

}  // namespace

std::pair<StateTensor, ConstructionTrace> build_l28(const EPoint& x, L28Relabel relabel) {
  L28Inputs in{};
  Perm back = kIdPerm;
  if (relabel == L28Relabel::C1) {
    // (lam1, lam2)^(1) -> (lam2, lam3)^(1) and likewise on qutrit 2.
    in = {x.lam(0, 1), x.lam(0, 2), x.lam(1, 1), x.lam(1, 2), x.lam(2, 0), x.lam(2, 1)};
  } else {
    // lam2 <-> lam3 swaps on qutrits 1 and 3, then the cyclic qutrit shift.
    in = {x.lam(1, 0), x.lam(1, 2), x.lam(2, 0), x.lam(2, 1), x.lam(0, 0), x.lam(0, 2)};
    back = Perm{2, 0, 1};
  }
  L28Params prm;
  StateTensor st = l28_solve(in, prm);
  if (relabel == L28Relabel::C3) st = permute_axes(st, back);

  ConstructionTrace tr;
  tr.region = relabel == L28Relabel::C1 ? "C1" : "C3";
  tr.params = {{"a", prm.a},   {"f", prm.f},         {"g", prm.g},     {"p", prm.p},
               {"q", prm.q},   {"r", prm.r},         {"theta", prm.theta}, {"phi", prm.phi},
               {"alpha", prm.alpha}};
  tr.residual = max_abs_diff(spectra(st), x);
  return {st, tr};
}

// ---------------------------------------------------------------------------
// Support simplices
// ---------------------------------------------------------------------------

bool SupportSimplex::valid_support() const {
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      int eq = 0;
      for (int t = 0; t < 3; ++t)
        if (support[i][static_cast<std::size_t>(t)] == support[j][static_cast<std::size_t>(t)]) ++eq;
      if (eq >= 2) return false;
    }
  return true;
}

namespace {

SupportSimplex permute_support(const SupportSimplex& ss, const Perm& p, std::string name) {
  SupportSimplex out;
  out.name = std::move(name);
  for (const auto& tr : ss.support)
    out.support.push_back({tr[static_cast<std::size_t>(p[0])], tr[static_cast<std::size_t>(p[1])],
                           tr[static_cast<std::size_t>(p[2])]});
  for (const auto& c : ss.corners)
    out.corners.push_back(
        {permute_label(c.label, p), permute_epoint(p, c.point), c.avals});
  return out;
}

SupportSimplex make_d1() {
  SupportSimplex ss;
  ss.name = "D1";
  ss.support = {{2, 2, 2}, {0, 0, 2}, {1, 1, 2}, {0, 1, 0}, {1, 2, 0}, {2, 1, 1}, {0, 2, 1}};
  const double th = 1.0 / 3, sx = 1.0 / 6;
  ss.corners = {
      {"[B,0 1/3 2/3,0 1/3 2/3]", ep(dB, dT, dT), {th, 0, th, 0, 0, 0, th}},
      {"[O,O,O]", ep(dO, dO, dO), {1, 0, 0, 0, 0, 0, 0}},
      {"[B,O,B]", ep(dB, dO, dB), {th, 0, 0, 0, th, 0, th}},
      {"[B,B,O]", ep(dB, dB, dO), {th, th, th, 0, 0, 0, 0}},
      {"[B,A,A]", ep(dB, dA, dA), {sx, 0, th, 0, 0, sx, th}},
      {"[A,A,O]", ep(dA, dA, dO), {0.5, 0, 0.5, 0, 0, 0, 0}},
      {"[B,A,1/6 1/6 2/3]", ep(dB, dA, dW), {th, 0, th, sx, 0, 0, sx}},
  };
  return ss;
}

SupportSimplex make_s6() {
  SupportSimplex ss;
  ss.name = "S6(1)";
  // Support: 333,113,131,223,232,211,321,312,122 (1-based).
  ss.support = {{2, 2, 2}, {0, 0, 2}, {0, 2, 0}, {1, 1, 2}, {1, 2, 1},
                {1, 0, 0}, {2, 1, 0}, {2, 0, 1}, {0, 1, 1}};
  const double nn = 1.0 / 9, sx = 1.0 / 6, th = 1.0 / 3;
  std::vector<SupportSimplex::Assignment> base = {
      {"[O,O,O]", ep(dO, dO, dO), {1, 0, 0, 0, 0, 0, 0, 0, 0}},
      {"[B,B,B]", ep(dB, dB, dB), {nn, nn, nn, nn, nn, nn, nn, nn, nn}},
      {"[B,A,B]", ep(dB, dA, dB), {sx, 0, sx, sx, sx, 0, sx, 0, sx}},
      {"[A,B,B]", ep(dA, dB, dB), {sx, 0, 0, sx, sx, sx, sx, sx, 0}},
      {"[B,B,O]", ep(dB, dB, dO), {th, th, 0, th, 0, 0, 0, 0, 0}},
      {"[O,B,B]", ep(dO, dB, dB), {th, 0, 0, 0, 0, 0, th, th, 0}},
      {"[B,A,A]", ep(dB, dA, dA), {th, 0, 0, sx, sx, 0, 0, 0, th}},
      {"[A,B,A]", ep(dA, dB, dA), {sx, 0, 0, th, sx, 0, 0, th, 0}},
      {"[A,A,O]", ep(dA, dA, dO), {0.5, 0, 0, 0.5, 0, 0, 0, 0, 0}},
      {"[A,1/6 1/6 2/3,1/6 1/6 2/3]", ep(dA, dW, dW), {0.5, 0, 0, sx, sx, sx, 0, 0, 0}},
      {"[1/6 1/6 2/3,A,1/6 1/6 2/3]", ep(dW, dA, dW), {0.5, 0, 0, sx, 0, 0, sx, 0, sx}},
      {"[A,B,1/6 1/6 2/3]", ep(dA, dB, dW), {th, 0, 0, th, 0, sx, 0, sx, 0}},
      {"[1/6 1/6 2/3,B,A]", ep(dW, dB, dA), {th, 0, 0, sx, 0, 0, 0, th, sx}},
      {"[B,1/6 1/6 2/3,A]", ep(dB, dW, dA), {th, sx, 0, 0, th, 0, 0, 0, sx}},
  };
  ss.corners = base;
  // The support is invariant under the qutrit swap (2<->3); images of the
  // base corners fill in the remaining corners of the region.
  const Perm swap23{0, 2, 1};
  // support triple (i,j,k) -> (i,k,j): position map within ss.support.
  std::vector<std::size_t> pos_map;
  for (const auto& tr : ss.support) {
    const std::array<int, 3> img{tr[0], tr[2], tr[1]};
    for (std::size_t t = 0; t < ss.support.size(); ++t)
      if (ss.support[t] == img) {
        pos_map.push_back(t);
        break;
      }
  }
  for (const auto& c : base) {
    const EPoint img_pt = permute_epoint(swap23, c.point);
    bool dup = false;
    for (const auto& prev : ss.corners)
      if (prev.point == img_pt) {
        dup = true;
        break;
      }
    if (dup) continue;
    SupportSimplex::Assignment img;
    img.label = permute_label(c.label, swap23);
    img.point = img_pt;
    img.avals.resize(ss.support.size());
    for (std::size_t t = 0; t < ss.support.size(); ++t) img.avals[t] = c.avals[pos_map[t]];
    ss.corners.push_back(std::move(img));
  }
  return ss;
}

}  // namespace

const SupportSimplex& d1_support() {
  static const SupportSimplex ss = make_d1();
  return ss;
}

const SupportSimplex& d3_support() {
  static const SupportSimplex ss = permute_support(make_d1(), Perm{0, 2, 1}, "D3");
  return ss;
}

const SupportSimplex& s6_support() {
  static const SupportSimplex ss = make_s6();
  return ss;
}

std::pair<StateTensor, ConstructionTrace> build_support_simplex(const SupportSimplex& ss,
                                                                const EPoint& x) {
  std::vector<EPoint> pts;
  pts.reserve(ss.corners.size());
  for (const auto& c : ss.corners) pts.push_back(c.point);
  const auto w = lp_decompose_weights(pts, x, 1e-9);
  if (!w) throw RegionError("build_support_simplex: target outside the hull (" + ss.name + ")");

  std::vector<double> avals(ss.support.size(), 0.0);
  for (std::size_t s = 0; s < ss.corners.size(); ++s) {
    const double ws = (*w)[s];
    if (ws <= 0.0) continue;
    for (std::size_t t = 0; t < avals.size(); ++t) avals[t] += ws * ss.corners[s].avals[t];
  }
  StateTensor st;
  ConstructionTrace tr;
  tr.region = ss.name;
  for (std::size_t t = 0; t < avals.size(); ++t) {
    const auto& tri = ss.support[t];
    st.amp(tri[0], tri[1], tri[2]) = std::sqrt(clamp_nonneg(avals[t]));
    tr.params.emplace_back("A_" + std::to_string(tri[0] + 1) + std::to_string(tri[1] + 1) +
                               std::to_string(tri[2] + 1),
                           avals[t]);
  }
  st = st.normalized();
  tr.residual = max_abs_diff(spectra(st), x);
  return {st, tr};
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

namespace {

const std::array<EPoint, 5>& c_common() {
  static const std::array<EPoint, 5> v{ep(dO, dO, dO), ep(dB, dB, dO), ep(dA, dA, dO),
                                       ep(dA, dB, dW), ep(dA, dQ, dQ2)};
  return v;
}

std::array<EPoint, 7> c_simplex(int which) {
  std::array<EPoint, 7> s;
  for (int i = 0; i < 5; ++i) s[static_cast<std::size_t>(i)] = c_common()[static_cast<std::size_t>(i)];
  switch (which) {
    case 0:  // C1
      s[5] = ep(dA, dB, dA);
      s[6] = ep(dT, dB, dT);
      break;
    case 1:  // C2
      s[5] = ep(dA, dO, dA);
      s[6] = ep(dA, dB, dA);
      break;
    default:  // C3
      s[5] = ep(dA, dO, dA);
      s[6] = ep(dA, dW, dW);
      break;
  }
  return s;
}

std::array<EPoint, 7> d_simplex(int which) {
  std::array<EPoint, 7> s{ep(dB, dT, dT), ep(dO, dO, dO), ep(dB, dB, dO),
                          ep(dB, dO, dB), ep(dB, dA, dA), EPoint{}, EPoint{}};
  switch (which) {
    case 0:  // D1
      s[5] = ep(dA, dA, dO);
      s[6] = ep(dB, dA, dW);
      break;
    case 1:  // D2
      s[5] = ep(dA, dA, dO);
      s[6] = ep(dA, dO, dA);
      break;
    default:  // D3
      s[5] = ep(dA, dO, dA);
      s[6] = ep(dB, dW, dA);
      break;
  }
  return s;
}

// S5 corner list; the alpha-pair bookkeeping below depends on this order.
struct S5Corner {
  const char* label;
  EPoint point;
};

const std::vector<S5Corner>& s5_corners() {
  static const std::vector<S5Corner> v = {
      {"[O,O,O]", ep(dO, dO, dO)},
      {"[O,A,A]", ep(dO, dA, dA)},       // alpha2 pair, qutrit 1
      {"[A,O,A]", ep(dA, dO, dA)},       // alpha2 pair, qutrit 2
      {"[A,A,O]", ep(dA, dA, dO)},       // alpha2 pair, qutrit 3
      {"[O,B,B]", ep(dO, dB, dB)},
      {"[B,O,B]", ep(dB, dO, dB)},
      {"[B,B,O]", ep(dB, dB, dO)},
      {"[A,A,B]", ep(dA, dA, dB)},
      {"[A,B,A]", ep(dA, dB, dA)},
      {"[B,A,A]", ep(dB, dA, dA)},
      {"[A,B,B]", ep(dA, dB, dB)},
      {"[B,A,B]", ep(dB, dA, dB)},
      {"[B,B,A]", ep(dB, dB, dA)},
      {"[B,B,B]", ep(dB, dB, dB)},
      {"[A,B,1/6 1/6 2/3]", ep(dA, dB, dW)},
      {"[A,1/6 1/6 2/3,B]", ep(dA, dW, dB)},
      {"[B,A,1/6 1/6 2/3]", ep(dB, dA, dW)},
      {"[1/6 1/6 2/3,A,B]", ep(dW, dA, dB)},
      {"[B,1/6 1/6 2/3,A]", ep(dB, dW, dA)},
      {"[1/6 1/6 2/3,B,A]", ep(dW, dB, dA)},
      {"[A,1/6 1/6 2/3,1/6 1/6 2/3]", ep(dA, dW, dW)},  // alpha1 pair, qutrit 1
      {"[1/6 1/6 2/3,A,1/6 1/6 2/3]", ep(dW, dA, dW)},  // alpha1 pair, qutrit 2
      {"[1/6 1/6 2/3,1/6 1/6 2/3,A]", ep(dW, dW, dA)},  // alpha1 pair, qutrit 3
  };
  return v;
}

struct Attempt {
  StateTensor state;
  ConstructionTrace trace;
};

std::optional<Attempt> finish(std::pair<StateTensor, ConstructionTrace> built,
                              const std::string& region, const Perm& sigma, const EPoint& x) {
  StateTensor st = sigma == kIdPerm ? built.first : permute_axes(built.first, inverse_perm(sigma));
  ConstructionTrace tr = std::move(built.second);
  tr.region = region;
  tr.perm = sigma;
  tr.residual = max_abs_diff(spectra(st), x);
  if (tr.residual > 1e-8) return std::nullopt;
  return Attempt{std::move(st), std::move(tr)};
}

std::optional<Attempt> try_s5(const EPoint& x) {
  std::vector<EPoint> pts;
  for (const S5Corner& c : s5_corners()) pts.push_back(c.point);
  const auto wopt = lp_decompose_weights(pts, x, 1e-9);
  if (!wopt) return std::nullopt;
  std::vector<double> w = *wopt;

  // Pair weights: alpha1 on the [A,W,W]-type corners, alpha2 on [O,A,A]-type.
  auto a1 = [&w](int t) -> double& { return w[static_cast<std::size_t>(20 + t)]; };
  auto a2 = [&w](int t) -> double& { return w[static_cast<std::size_t>(1 + t)]; };
  // Reshuffle identity for qutrit t spreads weight onto the other two
  // alpha2 corners and the [O,B,B]-type corner with O at slot t.
  auto spread = [&w, &a2](int t, double amount) {
    for (int o = 0; o < 3; ++o)
      if (o != t) a2(o) += amount;
    w[static_cast<std::size_t>(4 + t)] += amount;
  };

  int route_s6 = -1;
  for (int t = 0; t < 3; ++t) {
    if (a1(t) > kZeroW && a2(t) > kZeroW) {
      if (a1(t) >= 2.0 * a2(t)) {
        const double amt = a2(t);
        a1(t) -= 2.0 * amt;
        a2(t) = 0.0;
        spread(t, amt);
        route_s6 = t;
        break;
      }
      const double amt = 0.5 * a1(t);
      a2(t) -= amt;
      a1(t) = 0.0;
      spread(t, amt);
    }
  }
  if (route_s6 < 0) {
    if (a1(0) <= kZeroW && a1(1) <= kZeroW && a1(2) <= kZeroW) {
      try {
        auto built = build_s0(x);
        auto r = finish(std::move(built), "S5-reshuffle", kIdPerm, x);
        if (r) r->trace.params.emplace_back("route_s0", 1.0);
        return r;
      } catch (const RegionError&) {
        return std::nullopt;
      }
    }
    for (int t = 0; t < 3; ++t)
      if (a2(t) <= kZeroW) {
        route_s6 = t;
        break;
      }
  }
  if (route_s6 < 0) return std::nullopt;

  Perm sigma = kIdPerm;
  std::swap(sigma[0], sigma[static_cast<std::size_t>(route_s6)]);
  const EPoint y = permute_epoint(sigma, x);
  try {
    auto built = build_support_simplex(s6_support(), y);
    auto r = finish(std::move(built), "S5-reshuffle", sigma, x);
    if (r) r->trace.params.emplace_back("route_s6", static_cast<double>(route_s6 + 1));
    return r;
  } catch (const RegionError&) {
    return std::nullopt;
  }
}

}  // namespace

std::pair<StateTensor, ConstructionTrace> construct(const EPoint& x) {
  MembershipReport rep = membership(x);
  if (!rep.member) throw InfeasibleEPointError(std::move(rep));

  // Fast path: most of the set, including every product-like target, lies
  // in the S0 family hull.
  try {
    if (auto r = finish(build_s0(x), "S0", kIdPerm, x)) return {std::move(r->state), std::move(r->trace)};
  } catch (const RegionError&) {
  }

  // P8 split: C1/C2/C3 in the frame where the split functional is <= 0.
  for (const Perm& sigma : kAllPerms) {
    const EPoint y = permute_epoint(sigma, x);
    if (eval_functional(Func::P8, kIdPerm, y) > kGateTol) continue;
    for (int ci = 0; ci < 3; ++ci) {
      std::array<double, 7> w;
      try {
        w = solve_simplex_coords(c_simplex(ci), y);
      } catch (const DegenerateSimplexError&) {
        continue;
      }
      if (*std::min_element(w.begin(), w.end()) < -kWeightTol) continue;
      try {
        auto built = ci == 1 ? build_s0(y) : build_l28(y, ci == 0 ? L28Relabel::C1 : L28Relabel::C3);
        const std::string region = ci == 0 ? "C1" : ci == 1 ? "C2" : "C3";
        if (auto r = finish(std::move(built), region, sigma, x))
          return {std::move(r->state), std::move(r->trace)};
      } catch (const RegionError&) {
      }
    }
  }

  // tilde-P9 split: D1/D2/D3.
  for (const Perm& sigma : kAllPerms) {
    const EPoint y = permute_epoint(sigma, x);
    if (eval_functional(Func::TildeP9, kIdPerm, y) > kGateTol) continue;
    for (int di = 0; di < 3; ++di) {
      std::array<double, 7> w;
      try {
        w = solve_simplex_coords(d_simplex(di), y);
      } catch (const DegenerateSimplexError&) {
        continue;
      }
      if (*std::min_element(w.begin(), w.end()) < -kWeightTol) continue;
      try {
        auto built = di == 0   ? build_support_simplex(d1_support(), y)
                     : di == 1 ? build_p1_boundary(y, true)
                               : build_support_simplex(d3_support(), y);
        const std::string region = di == 0 ? "D1" : di == 1 ? "D2" : "D3";
        if (auto r = finish(std::move(built), region, sigma, x))
          return {std::move(r->state), std::move(r->trace)};
      } catch (const RegionError&) {
      }
    }
  }

  // Q3 simplex (a subset of the S0 hull; normally taken by the fast path).
  if (eval_functional(Func::Q3, kIdPerm, x) <= kGateTol) {
    try {
      if (auto r = finish(build_s0(x), "Q3-simplex", kIdPerm, x))
        return {std::move(r->state), std::move(r->trace)};
    } catch (const RegionError&) {
    }
  }

  // S5: barycentric reshuffle, then the ten-coefficient family or a
  // reduced-support simplex.
  if (auto r = try_s5(x)) return {std::move(r->state), std::move(r->trace)};

  throw RegionError("construct: no constructive region accepted the target");
}

}  // namespace qm3

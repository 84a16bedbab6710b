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

#include "qm3/eigh3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qm3 {

HermitianMatrix3 HermitianMatrix3::diag(double a, double b, double c) {
  HermitianMatrix3 h;
  h.at(0, 0) = a;
  h.at(1, 1) = b;
  h.at(2, 2) = c;
  return h;
}

HermitianMatrix3 HermitianMatrix3::from_full(const std::array<std::array<cplx, 3>, 3>& full) {
  double asym = 0.0;
  for (int i = 0; i < 3; ++i) {
    asym = std::max(asym, std::abs(full[i][i].imag()));
    for (int j = i + 1; j < 3; ++j)
      asym = std::max(asym, std::abs(full[i][j] - std::conj(full[j][i])));
  }
  if (asym > 1e-9) throw std::domain_error("HermitianMatrix3: input asymmetry exceeds 1e-9");
  HermitianMatrix3 h;
  for (int i = 0; i < 3; ++i) {
    h.at(i, i) = full[i][i].real();
    for (int j = i + 1; j < 3; ++j) {
      const cplx v = 0.5 * (full[i][j] + std::conj(full[j][i]));
      h.at(i, j) = v;
      h.at(j, i) = std::conj(v);
    }
  }
  return h;
}

double HermitianMatrix3::max_offdiag() const {
  double mx = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) mx = std::max(mx, std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return mx;
}

namespace {

// One complex Jacobi rotation zeroing a[p][q]. V accumulates right-factors so
// that a_in = V a_out V^dagger throughout.
void jacobi_rotate(std::array<std::array<cplx, 3>, 3>& a,
                   std::array<std::array<cplx, 3>, 3>& v, int p, int q) {
  const cplx apq = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  const double absapq = std::abs(apq);
  if (absapq == 0.0) return;
  const double app = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)].real();
  const double aqq = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)].real();
  const cplx phase = apq / absapq;

  const double tau = (aqq - app) / (2.0 * absapq);
  // Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0; zeroes the (p,q) entry.
  double t;
  if (tau >= 0.0)
    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cplx s = t * c * phase;

  // Columns: col_p' = c*col_p + conj(s)*col_q ; col_q' = -s*col_p + c*col_q,
  // applied two-sided with the conjugate on rows.
  for (int k = 0; k < 3; ++k) {
    const cplx akp = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
    const cplx akq = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = c * akp + std::conj(s) * akq;
    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = -s * akp + c * akq;
  }
  for (int k = 0; k < 3; ++k) {
    const cplx apk = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
    const cplx aqk = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)];
    a[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = c * apk + s * aqk;
    a[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)] = -std::conj(s) * apk + c * aqk;
  }
  a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = 0.0;
  a[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = 0.0;
  for (int k = 0; k < 3; ++k) {
    const cplx vkp = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
    const cplx vkq = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
    v[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = c * vkp + std::conj(s) * vkq;
    v[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = -s * vkp + c * vkq;
  }
}

}  // namespace

Eigh3Result eigh3(const HermitianMatrix3& m) {
  std::array<std::array<cplx, 3>, 3> a = m.m;
  std::array<std::array<cplx, 3>, 3> v{};
  v[0][0] = v[1][1] = v[2][2] = 1.0;

  constexpr double kOffTol = 1e-14;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off = std::max(off, std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    if (off < kOffTol) break;
    jacobi_rotate(a, v, 0, 1);
    jacobi_rotate(a, v, 0, 2);
    jacobi_rotate(a, v, 1, 2);
  }

  std::array<int, 3> idx{0, 1, 2};
  std::array<double, 3> d{a[0][0].real(), a[1][1].real(), a[2][2].real()};
  std::stable_sort(idx.begin(), idx.end(), [&d](int x, int y) { return d[static_cast<std::size_t>(x)] < d[static_cast<std::size_t>(y)]; });

  Eigh3Result r;
  for (int k = 0; k < 3; ++k) {
    r.values[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    for (int row = 0; row < 3; ++row)
      r.vectors[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] =
          v[static_cast<std::size_t>(row)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
  }
  return r;
}

}  // namespace qm3

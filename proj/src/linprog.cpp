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

#include "qm3/linprog.hpp"

#include <cmath>

namespace qm3 {

namespace {

// The seven equality rows of the decomposition system: the six free
// coordinates (lam1, lam2 per qutrit) and the weight sum.
void fill_column(const EPoint& p, double* col) {
  for (int a = 0; a < 3; ++a) {
    col[2 * a] = p.lam(a, 0);
    col[2 * a + 1] = p.lam(a, 1);
  }
  col[6] = 1.0;
}

}  // namespace

std::array<double, 7> solve_simplex_coords(const std::array<EPoint, 7>& corners, const EPoint& x) {
  double m[7][8];
  for (int c = 0; c < 7; ++c) {
    double col[7];
    fill_column(corners[static_cast<std::size_t>(c)], col);
    for (int r = 0; r < 7; ++r) m[r][c] = col[r];
  }
  double rhs[7];
  fill_column(x, rhs);
  for (int r = 0; r < 7; ++r) m[r][7] = rhs[r];

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 7; ++col) {
    int piv = col;
    for (int r = col + 1; r < 7; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-11)
      throw DegenerateSimplexError("solve_simplex_coords: corners are affinely dependent");
    if (piv != col)
      for (int c = col; c < 8; ++c) std::swap(m[piv][c], m[col][c]);
    for (int r = 0; r < 7; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < 8; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<double, 7> w;
  for (int r = 0; r < 7; ++r) w[static_cast<std::size_t>(r)] = m[r][7] / m[r][r];
  return w;
}

std::optional<std::vector<double>> lp_decompose_weights(const std::vector<EPoint>& corners,
                                                        const EPoint& x, double tol) {
  const int n = static_cast<int>(corners.size());
  constexpr int kRows = 7;
  const int ncols = n + kRows;  // corner weights + one artificial per row

  // Tableau rows: equality constraints with artificials forming the initial
  // basis; the extra row is the Phase-I objective (sum of artificials),
  // expressed in reduced form.
  std::vector<std::vector<double>> t(kRows + 1, std::vector<double>(static_cast<std::size_t>(ncols) + 1, 0.0));
  double rhs[kRows];
  fill_column(x, rhs);
  std::vector<double> col(kRows);
  for (int c = 0; c < n; ++c) {
    fill_column(corners[static_cast<std::size_t>(c)], col.data());
    for (int r = 0; r < kRows; ++r) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = col[static_cast<std::size_t>(r)];
  }
  std::vector<int> basis(kRows);
  for (int r = 0; r < kRows; ++r) {
    double b = rhs[r];
    // Flip rows with negative rhs so artificials start feasible.
    if (b < 0.0) {
      b = -b;
      for (int c = 0; c < n; ++c) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = -t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    t[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + r)] = 1.0;
    t[static_cast<std::size_t>(r)].back() = b;
    basis[static_cast<std::size_t>(r)] = n + r;
  }
  // Phase-I objective row: minimize sum of artificials. Reduced costs start
  // as -(sum of constraint rows) on the structural columns.
  auto& obj = t[kRows];
  for (int c = 0; c <= ncols; ++c) {
    if (c >= n && c < ncols) continue;
    double s = 0.0;
    for (int r = 0; r < kRows; ++r) s += t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    obj[static_cast<std::size_t>(c)] = -s;
  }

  constexpr double kPivTol = 1e-11;
  const int max_iters = 200 * (ncols + 1);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Bland's rule: first column with negative reduced cost.
    int enter = -1;
    for (int c = 0; c < ncols; ++c)
      if (obj[static_cast<std::size_t>(c)] < -kPivTol) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    // Ratio test, ties broken by smallest basis index (Bland).
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < kRows; ++r) {
      const double a = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (a > kPivTol) {
        const double ratio = t[static_cast<std::size_t>(r)].back() / a;
        if (leave < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded cannot happen with artificials; guard anyway
    // Pivot.
    const double piv = t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
    for (double& v : t[static_cast<std::size_t>(leave)]) v /= piv;
    for (int r = 0; r <= kRows; ++r) {
      if (r == leave) continue;
      const double f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int c = 0; c <= ncols; ++c)
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(c)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  // Residual = value of the Phase-I objective = sum of remaining artificials.
  double artificial_sum = 0.0;
  for (int r = 0; r < kRows; ++r)
    if (basis[static_cast<std::size_t>(r)] >= n) artificial_sum += t[static_cast<std::size_t>(r)].back();
  if (artificial_sum > tol) return std::nullopt;

  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < kRows; ++r)
    if (basis[static_cast<std::size_t>(r)] < n) w[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = t[static_cast<std::size_t>(r)].back();
  return w;
}

BarycentricDecomposition lp_decompose(const std::vector<EPoint>& corners,
                                      const std::vector<std::string>& labels, const EPoint& x,
                                      double tol) {
  auto w = lp_decompose_weights(corners, x, tol);
  if (!w) throw NotInHullError("lp_decompose: point is not in the hull of the given corners");
  BarycentricDecomposition d;
  double recon[7] = {0, 0, 0, 0, 0, 0, 0};
  double col[7];
  for (std::size_t c = 0; c < corners.size(); ++c) {
    const double wi = (*w)[c];
    if (wi <= 0.0) continue;
    d.weights.emplace_back(c < labels.size() ? labels[c] : "#" + std::to_string(c), wi);
    fill_column(corners[c], col);
    for (int r = 0; r < 7; ++r) recon[r] += wi * col[r];
  }
  double target[7];
  fill_column(x, target);
  double res = 0.0;
  for (int r = 0; r < 7; ++r) res = std::max(res, std::abs(recon[r] - target[r]));
  d.residual = res;
  return d;
}

}  // namespace qm3

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

#include <array>
#include <cmath>
#include <string>

#include "qm3/rational.hpp"

namespace qm3 {

/// Ascending one-qutrit spectrum (lam1 <= lam2 <= lam3, sum 1).
struct SpectrumTriple {
  std::array<double, 3> lam{0.0, 0.0, 0.0};

  double& operator[](int i) { return lam[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return lam[static_cast<std::size_t>(i)]; }

  /// Max violation of 0 <= lam1 <= lam2 <= lam3, sum = 1.
  double validity_error() const {
    double e = -lam[0];
    e = std::max(e, lam[0] - lam[1]);
    e = std::max(e, lam[1] - lam[2]);
    e = std::max(e, std::abs(lam[0] + lam[1] + lam[2] - 1.0));
    return e;
  }
};

/// A point in eigenvalue space: the three ascending RDM spectra.
struct EPoint {
  std::array<SpectrumTriple, 3> q;

  double lam(int a, int i) const { return q[static_cast<std::size_t>(a)][i]; }
  double& lam(int a, int i) { return q[static_cast<std::size_t>(a)][i]; }

  friend bool operator==(const EPoint& x, const EPoint& y) {
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        if (x.lam(a, i) != y.lam(a, i)) return false;
    return true;
  }
};

inline double max_abs_diff(const EPoint& x, const EPoint& y) {
  double m = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(x.lam(a, i) - y.lam(a, i)));
  return m;
}

/// Exact-rational E-point; the corner/facet tables live in this form.
struct REPoint {
  std::array<std::array<Rat, 3>, 3> q;

  const Rat& lam(int a, int i) const {
    return q[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
  }
  Rat& lam(int a, int i) { return q[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]; }

  EPoint to_double() const {
    EPoint x;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) x.lam(a, i) = lam(a, i).to_double();
    return x;
  }

  friend bool operator==(const REPoint& x, const REPoint& y) {
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        if (x.lam(a, i) != y.lam(a, i)) return false;
    return true;
  }
  /// Lexicographic order on the 9 rational coordinates; used for corner dedup.
  friend bool operator<(const REPoint& x, const REPoint& y) {
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) {
        if (x.lam(a, i) < y.lam(a, i)) return true;
        if (y.lam(a, i) < x.lam(a, i)) return false;
      }
    return false;
  }
};

/// Qutrit permutation. p[s] is the source qutrit placed at slot s, so
/// permuted.q[s] = original.q[p[s]] for E-points, and spectra commute with
/// permute_axes under the same convention.
using Perm = std::array<int, 3>;

inline constexpr std::array<Perm, 6> kAllPerms{
    Perm{0, 1, 2}, Perm{0, 2, 1}, Perm{1, 0, 2}, Perm{1, 2, 0}, Perm{2, 0, 1}, Perm{2, 1, 0}};

inline constexpr Perm kIdPerm{0, 1, 2};

inline Perm inverse_perm(const Perm& p) {
  Perm inv{};
  for (int s = 0; s < 3; ++s) inv[static_cast<std::size_t>(p[static_cast<std::size_t>(s)])] = s;
  return inv;
}

inline Perm compose_perm(const Perm& p, const Perm& r) {
  // (p then-read-through r): result[s] = r[p[s]] so that x composed twice
  // matches permute(permute(x, r), p).
  Perm c{};
  for (std::size_t s = 0; s < 3; ++s)
    c[s] = r[static_cast<std::size_t>(p[s])];
  return c;
}

inline std::string perm_name(const Perm& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('1' + v);
  return s;
}

inline EPoint permute_epoint(const Perm& p, const EPoint& x) {
  EPoint y;
  for (std::size_t s = 0; s < 3; ++s) y.q[s] = x.q[static_cast<std::size_t>(p[s])];
  return y;
}

inline REPoint permute_epoint(const Perm& p, const REPoint& x) {
  REPoint y;
  for (std::size_t s = 0; s < 3; ++s) y.q[s] = x.q[static_cast<std::size_t>(p[s])];
  return y;
}

}  // namespace qm3

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

#include "qm3/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qm3 {

double StateTensor::norm2() const {
  double n = 0.0;
  for (const cplx& c : a_) n += std::norm(c);
  return n;
}

StateTensor StateTensor::normalized() const {
  const double n = std::sqrt(norm2());
  if (n < 1e-15) throw std::domain_error("StateTensor: norm below 1e-15, degenerate input");
  StateTensor out = *this;
  for (cplx& c : out.a_) c /= n;
  return out;
}

double LocalUnitary::unitarity_error() const {
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx dot = 0.0;
      for (int k = 0; k < 3; ++k)
        dot += u[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
               std::conj(u[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      if (i == j) dot -= 1.0;
      err = std::max(err, std::abs(dot));
    }
  return err;
}

LocalUnitary LocalUnitary::identity(int axis) {
  LocalUnitary lu;
  lu.axis = axis;
  lu.u[0][0] = lu.u[1][1] = lu.u[2][2] = 1.0;
  return lu;
}

HermitianMatrix3 rdm(const StateTensor& s, int axis) {
  if (axis < 0 || axis > 2) throw std::domain_error("rdm: axis out of range");
  HermitianMatrix3 rho;
  for (int i = 0; i < 3; ++i) {
    for (int ip = i; ip < 3; ++ip) {
      cplx v = 0.0;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
          cplx ci, cip;
          switch (axis) {
            case 0:
              ci = s.amp(i, x, y);
              cip = s.amp(ip, x, y);
              break;
            case 1:
              ci = s.amp(x, i, y);
              cip = s.amp(x, ip, y);
              break;
            default:
              ci = s.amp(x, y, i);
              cip = s.amp(x, y, ip);
              break;
          }
          v += ci * std::conj(cip);
        }
      if (i == ip) {
        rho.at(i, i) = v.real();
      } else {
        rho.at(i, ip) = v;
        rho.at(ip, i) = std::conj(v);
      }
    }
  }
  return rho;
}

EPoint spectra(const StateTensor& s) {
  EPoint x;
  for (int a = 0; a < 3; ++a) {
    const Eigh3Result e = eigh3(rdm(s, a));
    for (int i = 0; i < 3; ++i) x.lam(a, i) = e.values[static_cast<std::size_t>(i)];
  }
  return x;
}

StateTensor apply_local_unitary(const StateTensor& s, const LocalUnitary& lu) {
  if (lu.axis < 0 || lu.axis > 2) throw std::domain_error("apply_local_unitary: axis out of range");
  if (lu.unitarity_error() > 1e-12)
    throw std::domain_error("apply_local_unitary: matrix is not unitary within 1e-12");
  StateTensor out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        cplx v = 0.0;
        for (int m = 0; m < 3; ++m) {
          const std::size_t mi = static_cast<std::size_t>(m);
          switch (lu.axis) {
            case 0:
              v += lu.u[static_cast<std::size_t>(i)][mi] * s.amp(m, j, k);
              break;
            case 1:
              v += lu.u[static_cast<std::size_t>(j)][mi] * s.amp(i, m, k);
              break;
            default:
              v += lu.u[static_cast<std::size_t>(k)][mi] * s.amp(i, j, m);
              break;
          }
        }
        out.amp(i, j, k) = v;
      }
  return out;
}

StateTensor permute_axes(const StateTensor& s, const Perm& p) {
  Perm sorted = p;
  std::array<bool, 3> seen{false, false, false};
  for (int v : sorted) {
    if (v < 0 || v > 2 || seen[static_cast<std::size_t>(v)])
      throw std::domain_error("permute_axes: invalid permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  StateTensor out;
  int jj[3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // Slot s of the output reads original axis p[s].
        const int slot[3] = {i, j, k};
        for (int t = 0; t < 3; ++t) jj[p[static_cast<std::size_t>(t)]] = slot[t];
        out.amp(i, j, k) = s.amp(jj[0], jj[1], jj[2]);
      }
  return out;
}

std::pair<StateTensor, std::array<LocalUnitary, 3>> canonicalize(const StateTensor& s) {
  StateTensor cur = s;
  std::array<LocalUnitary, 3> us{LocalUnitary::identity(0), LocalUnitary::identity(1),
                                 LocalUnitary::identity(2)};
  for (int axis = 0; axis < 3; ++axis) {
    const Eigh3Result e = eigh3(rdm(cur, axis));
    LocalUnitary lu;
    lu.axis = axis;
    // Rows of U are the conjugated eigenvectors: U rho U^dagger = diag(ascending).
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        lu.u[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = std::conj(e.vec(c, r));
    cur = apply_local_unitary(cur, lu);
    us[static_cast<std::size_t>(axis)] = lu;
  }
  return {cur, us};
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair; decorrelates per-task streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_double();
  while (u1 <= 0.0) u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

StateTensor random_state(std::uint64_t seed) {
  Rng rng(seed);
  StateTensor s;
  for (cplx& c : s.raw()) {
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    c = cplx(re, im);
  }
  return s.normalized();
}

std::array<std::array<cplx, 3>, 3> random_unitary3(Rng& rng) {
  std::array<std::array<cplx, 3>, 3> m;
  for (auto& row : m)
    for (cplx& c : row) c = cplx(rng.next_gaussian(), rng.next_gaussian());
  // Gram-Schmidt on columns.
  for (int c = 0; c < 3; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx dot = 0.0;
      for (int r = 0; r < 3; ++r)
        dot += std::conj(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(prev)]) *
               m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      for (int r = 0; r < 3; ++r)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            dot * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(prev)];
    }
    double n = 0.0;
    for (int r = 0; r < 3; ++r) n += std::norm(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    n = std::sqrt(n);
    for (int r = 0; r < 3; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /= n;
  }
  return m;
}

}  // namespace qm3

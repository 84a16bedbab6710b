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
#include <cstdint>
#include <utility>

#include "qm3/eigh3.hpp"
#include "qm3/epoint.hpp"

namespace qm3 {

/// Pure three-qutrit state: 27 complex amplitudes c_ijk, i,j,k in {0,1,2}.
/// Immutable value type; all operations below are pure functions.
class StateTensor {
 public:
  StateTensor() = default;

  cplx& amp(int i, int j, int k) { return a_[idx(i, j, k)]; }
  cplx amp(int i, int j, int k) const { return a_[idx(i, j, k)]; }

  const std::array<cplx, 27>& raw() const { return a_; }
  std::array<cplx, 27>& raw() { return a_; }

  double norm2() const;

  /// Scales to unit norm. Throws std::domain_error below 1e-15 norm:
  /// such an input is degenerate, not rescuable.
  StateTensor normalized() const;

  static std::size_t idx(int i, int j, int k) {
    return static_cast<std::size_t>(9 * i + 3 * j + k);
  }

 private:
  std::array<cplx, 27> a_{};
};

/// A unitary acting on one qutrit. axis in {0,1,2}.
struct LocalUnitary {
  int axis = 0;
  std::array<std::array<cplx, 3>, 3> u{};  // u[row][col]

  /// Max deviation of U U^dagger from the identity.
  double unitarity_error() const;
  static LocalUnitary identity(int axis);
};

/// One-particle reduced density matrix of the given axis (0,1,2).
/// rho^(1)_{ii'} = sum_{JK} c_{iJK} conj(c_{i'JK}) and its analogues.
/// Throws std::domain_error for an axis out of range.
HermitianMatrix3 rdm(const StateTensor& s, int axis);

/// The three ascending RDM spectra.
EPoint spectra(const StateTensor& s);

/// Applies a local unitary; throws std::domain_error if u fails the 1e-12
/// unitarity check. Preserves the norm and every RDM spectrum.
StateTensor apply_local_unitary(const StateTensor& s, const LocalUnitary& u);

/// Reindexes qutrits: result.amp at slot ordering follows perm, so
/// spectra(permute_axes(s, p)).q[slot] == spectra(s).q[p[slot]].
/// Throws std::domain_error if p is not a permutation of {0,1,2}.
StateTensor permute_axes(const StateTensor& s, const Perm& p);

/// Rotates each qutrit basis so all three RDMs are diagonal with ascending
/// diagonal entries. Returns the rotated state and the unitaries applied.
std::pair<StateTensor, std::array<LocalUnitary, 3>> canonicalize(const StateTensor& s);

/// Deterministic counter-based RNG (splitmix64 core). Hand-rolled uniforms
/// and Box-Muller normals so runs are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double next_double();    // uniform [0,1)
  double next_gaussian();  // standard normal

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-uniform pure state: 27 i.i.d. standard complex Gaussians, normalized.
StateTensor random_state(std::uint64_t seed);

/// Haar-ish random 3x3 unitary (Gaussian matrix + Gram-Schmidt); used by the
/// invariance sweeps and tests.
std::array<std::array<cplx, 3>, 3> random_unitary3(Rng& rng);

}  // namespace qm3

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
#include <complex>

namespace qm3 {

using cplx = std::complex<double>;

/// 3x3 Hermitian matrix. Entries satisfy m[i][j] == conj(m[j][i]) exactly;
/// the factories enforce it.
struct HermitianMatrix3 {
  std::array<std::array<cplx, 3>, 3> m{};

  cplx operator()(int i, int j) const {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  cplx& at(int i, int j) { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  static HermitianMatrix3 diag(double a, double b, double c);

  /// Validates Hermiticity of a general matrix (asymmetry <= 1e-9) and
  /// symmetrizes exactly. Throws std::domain_error beyond the tolerance.
  static HermitianMatrix3 from_full(const std::array<std::array<cplx, 3>, 3>& full);

  double trace_real() const { return m[0][0].real() + m[1][1].real() + m[2][2].real(); }
  double max_offdiag() const;
};

struct Eigh3Result {
  std::array<double, 3> values;                   // ascending
  std::array<std::array<cplx, 3>, 3> vectors;     // vectors[i][k]: i = row, k = column/eigenvector
  cplx vec(int row, int k) const { return vectors[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)]; }
};

/// Eigendecomposition by cyclic complex Jacobi rotations. Deterministic:
/// fixed sweep order, convergence when all off-diagonal magnitudes drop
/// below 1e-14, at most 100 sweeps. Eigenvalues ascending (stable
/// index tie-break); m = V diag(values) V^dagger.
Eigh3Result eigh3(const HermitianMatrix3& m);

}  // namespace qm3

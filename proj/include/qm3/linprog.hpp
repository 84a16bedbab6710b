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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qm3/epoint.hpp"

namespace qm3 {

struct BarycentricDecomposition {
  // (corner label or index tag, weight). Weights >= -1e-12, summing to 1
  // for feasible results; reconstruction error below 1e-9.
  std::vector<std::pair<std::string, double>> weights;
  double residual = 0.0;
};

struct DegenerateSimplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInHullError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unique barycentric coordinates of x in the 6-simplex spanned by exactly
/// seven affinely independent E-points (6 coordinate rows plus the
/// weight-sum row). Negative outputs flag exteriority; no clamping here.
/// Throws DegenerateSimplexError on a singular system.
std::array<double, 7> solve_simplex_coords(const std::array<EPoint, 7>& corners, const EPoint& x);

/// Phase-I simplex method (Bland's rule) for the equality system
/// sum_s w_s * corner_s = x, sum_s w_s = 1, w >= 0. Returns the weights when
/// the artificial objective reaches ~0, std::nullopt when x is not in the
/// hull (residual above `tol`).
std::optional<std::vector<double>> lp_decompose_weights(const std::vector<EPoint>& corners,
                                                        const EPoint& x, double tol = 1e-8);

/// lp_decompose against a labeled corner list; throws NotInHullError when
/// infeasible. Labels of zero-weight corners are omitted from the result.
BarycentricDecomposition lp_decompose(const std::vector<EPoint>& corners,
                                      const std::vector<std::string>& labels, const EPoint& x,
                                      double tol = 1e-8);

}  // namespace qm3

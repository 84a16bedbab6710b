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

#include <string>

#include <json.hpp>

#include "qm3/construct.hpp"
#include "qm3/epoint.hpp"
#include "qm3/linprog.hpp"
#include "qm3/polytope.hpp"
#include "qm3/state.hpp"
#include "qm3/verify.hpp"

namespace qm3 {

using ojson = nlohmann::ordered_json;

/// Serializes with stable key order and floats at 17 significant digits,
/// so identical runs produce byte-identical output.
std::string dump_deterministic(const ojson& j);

// Wire formats.
StateTensor state_from_json(const nlohmann::json& j);  // {"re": [[[..]]], "im": [[[..]]]}
ojson state_to_json(const StateTensor& s);

EPoint epoint_from_json(const nlohmann::json& j);  // {"lambda": [[l1,l2,l3] x3]}
ojson epoint_to_json(const EPoint& x);

ojson membership_to_json(const MembershipReport& r);
ojson decomposition_to_json(const BarycentricDecomposition& d);
ojson trace_to_json(const ConstructionTrace& t);
ojson corners_to_json();
ojson facets_to_json();
ojson sweep_to_json(const SweepReport& r);
ojson minimization_to_json(const MinimizationReport& r);
ojson facet_suite_to_json(const FacetSuiteReport& r);
ojson round_trip_to_json(const RoundTripReport& r);

}  // namespace qm3

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

#include "qm3/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qm3 {

namespace {

void dump_value(const ojson& j, std::ostream& os) {
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << nlohmann::json(it.key()).dump() << ':';
        dump_value(it.value(), os);
      }
      os << '}';
      break;
    }
    case nlohmann::detail::value_t::array: {
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        dump_value(v, os);
      }
      os << ']';
      break;
    }
    case nlohmann::detail::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      os << buf;
      break;
    }
    default:
      os << j.dump();
      break;
  }
}

}  // namespace

std::string dump_deterministic(const ojson& j) {
  std::ostringstream os;
  dump_value(j, os);
  return os.str();
}

StateTensor state_from_json(const nlohmann::json& j) {
  if (!j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("state JSON must have \"re\" and \"im\" fields");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  StateTensor s;
  for (int i = 0; i < 3; ++i)
    for (int jj = 0; jj < 3; ++jj)
      for (int k = 0; k < 3; ++k)
        s.amp(i, jj, k) = cplx(re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj)).at(static_cast<std::size_t>(k)).get<double>(),
                               im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj)).at(static_cast<std::size_t>(k)).get<double>());
  return s;
}

ojson state_to_json(const StateTensor& s) {
  ojson re = ojson::array(), im = ojson::array();
  for (int i = 0; i < 3; ++i) {
    ojson re_i = ojson::array(), im_i = ojson::array();
    for (int j = 0; j < 3; ++j) {
      ojson re_ij = ojson::array(), im_ij = ojson::array();
      for (int k = 0; k < 3; ++k) {
        re_ij.push_back(s.amp(i, j, k).real());
        im_ij.push_back(s.amp(i, j, k).imag());
      }
      re_i.push_back(std::move(re_ij));
      im_i.push_back(std::move(im_ij));
    }
    re.push_back(std::move(re_i));
    im.push_back(std::move(im_i));
  }
  ojson out;
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

EPoint epoint_from_json(const nlohmann::json& j) {
  if (!j.contains("lambda")) throw std::invalid_argument("E-point JSON must have a \"lambda\" field");
  const auto& lam = j.at("lambda");
  if (lam.size() != 3) throw std::invalid_argument("\"lambda\" must hold three triples");
  EPoint x;
  for (int a = 0; a < 3; ++a) {
    if (lam.at(static_cast<std::size_t>(a)).size() != 3)
      throw std::invalid_argument("\"lambda\" must hold three triples");
    for (int i = 0; i < 3; ++i)
      x.lam(a, i) = lam.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(i)).get<double>();
  }
  return x;
}

ojson epoint_to_json(const EPoint& x) {
  ojson lam = ojson::array();
  for (int a = 0; a < 3; ++a) {
    ojson t = ojson::array();
    for (int i = 0; i < 3; ++i) t.push_back(x.lam(a, i));
    lam.push_back(std::move(t));
  }
  ojson out;
  out["lambda"] = std::move(lam);
  return out;
}

ojson membership_to_json(const MembershipReport& r) {
  ojson out;
  out["member"] = r.member;
  out["min_slack"] = r.min_slack;
  ojson v = ojson::array();
  for (const auto& [id, slack] : r.violations) {
    ojson e;
    e["id"] = id;
    e["slack"] = slack;
    v.push_back(std::move(e));
  }
  out["violations"] = std::move(v);
  return out;
}

ojson decomposition_to_json(const BarycentricDecomposition& d) {
  ojson w = ojson::array();
  for (const auto& [label, wi] : d.weights) {
    ojson e;
    e["label"] = label;
    e["w"] = wi;
    w.push_back(std::move(e));
  }
  ojson out;
  out["weights"] = std::move(w);
  out["residual"] = d.residual;
  return out;
}

ojson trace_to_json(const ConstructionTrace& t) {
  ojson out;
  out["region"] = t.region;
  ojson p = ojson::array();
  for (int v : t.perm) p.push_back(v + 1);
  out["perm"] = std::move(p);
  out["residual"] = t.residual;
  return out;
}

ojson corners_to_json() {
  ojson arr = ojson::array();
  for (const CornerPoint& c : corner_points()) {
    ojson e;
    e["label"] = c.label;
    e["lambda"] = epoint_to_json(c.point)["lambda"];
    arr.push_back(std::move(e));
  }
  ojson out;
  out["corners"] = std::move(arr);
  return out;
}

ojson facets_to_json() {
  ojson arr = ojson::array();
  for (const FacetSpec& fs : facet_simplices()) {
    ojson e;
    e["id"] = fs.id.name();
    ojson cs = ojson::array();
    for (const CornerPoint& c : fs.corners) cs.push_back(c.label);
    e["corners"] = std::move(cs);
    arr.push_back(std::move(e));
  }
  ojson out;
  out["facets"] = std::move(arr);
  return out;
}

ojson sweep_to_json(const SweepReport& r) {
  ojson out;
  out["samples"] = r.samples;
  out["min_slack_overall"] = r.min_slack_overall;
  out["worst_inequality"] = r.worst_inequality;
  out["failures"] = r.failures;
  return out;
}

ojson minimization_to_json(const MinimizationReport& r) {
  ojson out;
  out["functional"] = r.functional;
  out["best_value"] = r.best_value;
  out["restarts"] = r.restarts;
  out["best_state"] = state_to_json(r.best_state);
  return out;
}

ojson facet_suite_to_json(const FacetSuiteReport& r) {
  ojson out;
  out["pass"] = r.pass;
  out["checks"] = r.checks;
  out["failures"] = r.failures;
  return out;
}

ojson round_trip_to_json(const RoundTripReport& r) {
  ojson out;
  out["pass"] = r.pass;
  out["cases"] = r.cases;
  out["max_residual"] = r.max_residual;
  out["failures"] = r.failures;
  return out;
}

}  // namespace qm3

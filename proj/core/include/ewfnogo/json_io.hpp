// Copyright 2026 The ewfnogo Authors
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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ewfnogo/behavior.hpp"
#include "ewfnogo/marginal_lp.hpp"
#include "ewfnogo/nogo.hpp"
#include "ewfnogo/scenario.hpp"

namespace ewfnogo {

using Json = nlohmann::ordered_json;

/// Malformed input document. `field()` is a JSON-pointer-like path to the
/// offending member, e.g. "/constraints/2/target".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

/// printf("%.17g"), with "-0" folded to "0". Parses back to the same double.
std::string format_number(double value);

/// Serializes with every floating-point number rendered by format_number and
/// object members in insertion order. Byte-identical for identical input.
std::string dump_json(const Json &doc, int indent = 2);

// Behavior: {"settings": [["x",2],...], "outcomes": [["alice",2],...],
//            "table": {"x=0,y=0": [...], ...}, "observed": {"x=0,y=0": ["c","d"], ...}}
// "observed" is optional.
Json to_json(const Behavior &behavior);
Behavior behavior_from_json(const Json &doc);
std::string behavior_to_csv(const Behavior &behavior);
std::string behavior_to_pretty(const Behavior &behavior);

// {"variables": [["a",2],...], "constraints": [{"subset": ["a","b"], "target": [...]}, ...]}
Json to_json(const MarginalConstraintSet &cs);
MarginalConstraintSet constraints_from_json(const Json &doc);

// {"feasible": bool, "witness": [...]|null, "certificate": [...]|null, "slack": x}
Json to_json(const FeasibilityResult &result);
FeasibilityResult feasibility_from_json(const Json &doc);

Json to_json(const Distribution &dist);
Json to_json(const AgencyCheck &check);
Json to_json(const ContradictionReport &report);
Json to_json(const AppendixBReport &report);
std::string report_to_pretty(const ContradictionReport &report);
std::string report_to_pretty(const AppendixBReport &report);

// Config documents. Angles are numbers (radians) or strings such as "3pi/4".
// Missing members keep the value from `base`.
//   OF:  {"preparation_angles": [a0, a1], "charlie_angle", "debbie_angle",
//         "bob_angle", "prior": [p0, p1]}
//   LF:  {"shared_state": "singlet" | "product" | amplitudes, "charlie_angle",
//         "debbie_angle", "alice_angle", "bob_angle"}
//   ofx: OF members plus "x2_rotation", "y2_angle"
OFConfig of_config_from_json(const Json &doc, OFConfig base = {});
LFConfig lf_config_from_json(const Json &doc, LFConfig base = {});
ExtendedOFConfig extended_config_from_json(const Json &doc, ExtendedOFConfig base = {});

/// Pure state given as "singlet", "product" (|00>), a Bloch angle
/// {"theta": ...}, or a list of amplitudes (numbers or [re, im] pairs).
PureState state_from_json(const Json &doc, const std::string &field = "");

/// {"states": [{"weight": w, "theta": "pi/4"} | {"weight": w, "amplitudes": [...]}, ...]}
std::vector<std::pair<double, PureState>> ensemble_from_json(const Json &doc);

}  // namespace ewfnogo

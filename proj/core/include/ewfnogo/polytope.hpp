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

#include <array>
#include <cstddef>
#include <vector>

#include "ewfnogo/behavior.hpp"
#include "ewfnogo/marginal_lp.hpp"

namespace ewfnogo {

/// Two-party setting/outcome ranges.
struct ScenarioShape {
    std::size_t n_settings_alice = 2;
    std::size_t n_settings_bob = 2;
    std::size_t n_outcomes_alice = 2;
    std::size_t n_outcomes_bob = 2;

    std::size_t vertex_count() const;
};

/// Response functions: alice_map[x] is Alice's outcome for setting x.
struct DeterministicStrategy {
    std::vector<std::size_t> alice_map;
    std::vector<std::size_t> bob_map;
};

/// Largest vertex count enumerate_vertices accepts.
inline constexpr std::size_t kMaxVertices = 1'000'000;

/// Strategy number `index`, row-major over (alice_map[0..], bob_map[0..]) with
/// alice_map[0] most significant; this is also the joint index used by
/// membership's witness.
DeterministicStrategy strategy_at(const ScenarioShape &shape, std::size_t index);
Behavior strategy_behavior(const ScenarioShape &shape, const DeterministicStrategy &strategy);

/// One Behavior per deterministic strategy, in strategy_at order.
/// Throws std::length_error above kMaxVertices.
std::vector<Behavior> enumerate_vertices(const ScenarioShape &shape);

/// Local (equivalently, via the prepare-and-measure mapping, noncontextual)
/// polytope membership. The witness weights deterministic strategies.
FeasibilityResult membership(const Behavior &behavior, const ScenarioShape &shape);
MarginalConstraintSet membership_constraints(const Behavior &behavior, const ScenarioShape &shape);

/// Map from outcome label to a +-1 value, per party.
struct OutcomeSignMap {
    std::array<int, 2> alice{+1, -1};
    std::array<int, 2> bob{+1, -1};
};

/// E(x, y) for a binary 2x2 behavior.
std::array<std::array<double, 2>, 2> correlators(const Behavior &behavior, const OutcomeSignMap &signs = {});

/// max over the CHSH facet sign patterns (one minus sign, overall sign free)
/// of |E00 + E01 + E10 + E11| with the chosen term negated.
double chsh_value(const Behavior &behavior, const OutcomeSignMap &signs = {});

/// Prepare-and-measure behavior (settings: 4 preparations indexed 2*x + a,
/// 2 measurements; one binary outcome) mapped to the Bell behavior
/// p(a, b | x, y) = (1/2) p(b | y, P_{x,a}); returns its chsh_value.
/// Throws std::domain_error when the two 1/2-1/2 preparation mixtures are
/// not operationally equivalent within kLpTol.
double nc_inequality_value(const Behavior &pm_behavior);
Behavior pm_to_bell(const Behavior &pm_behavior);

}  // namespace ewfnogo

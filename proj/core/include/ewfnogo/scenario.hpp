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
#include <span>
#include <utility>
#include <vector>

#include "ewfnogo/behavior.hpp"
#include "ewfnogo/distribution.hpp"
#include "ewfnogo/quantum.hpp"
#include "ewfnogo/registers.hpp"

namespace ewfnogo {

// Protocols of the extended Wigner's friend experiments.
//
// Operational (prepare-and-measure) protocol, per run:
//   Alice prepares S in P_a (a ~ prior), Charlie measures S unitarily (U_C on
//   S and his memory). x=0: Alice adopts c. x=1: Alice applies U_C^dagger.
//   x=2: U_C^dagger, then a y-axis rotation on S. Debbie measures S (U_D).
//   y=0: Bob adopts d. y=1: U_D^dagger then Bob's measurement on S.
//   y=2: U_D^dagger then Bob's second measurement.
// Alice's reported variable is c for x=0 and a otherwise; Bob's is d for y=0
// and b otherwise.
//
// Local (bipartite) protocol: Charlie and Debbie hold halves R and S of a
// shared state. x=1 / y=1 undo the corresponding friend and measure A on R /
// B on S.

struct OFConfig {
    std::array<BlochAngle, 2> preparation_angles{BlochAngle(kPi / 4), BlochAngle(5 * kPi / 4)};
    BlochAngle charlie_basis_angle{3 * kPi / 4};
    BlochAngle debbie_basis_angle{0.0};
    BlochAngle bob_basis_angle{kPi / 2};
    /// p(a); the protocol fixes the uniform prior.
    std::array<double, 2> prior{0.5, 0.5};
};

struct LFConfig {
    PureState shared_state = singlet();
    BlochAngle charlie_angle{kPi / 4};
    BlochAngle debbie_angle{0.0};
    BlochAngle alice_undo_angle{7 * kPi / 4};
    BlochAngle bob_undo_angle{kPi / 2};

    /// (|01> - |10>)/sqrt(2).
    static PureState singlet();
};

struct ExtendedOFConfig {
    OFConfig base = appendix_base();
    /// Signed radians; maps Bloch angle theta to theta + phi.
    double alice_x2_rotation_angle = -kPi / 4;
    BlochAngle bob_y2_basis_angle{kPi / 4};

    /// Z-eigenstate preparations, Charlie X, Debbie X, Bob Z.
    static OFConfig appendix_base();
};

/// Which friend memories the hypothetical agent copies. A Charlie tap copies
/// c right after U_C; a Debbie tap copies d right after U_D. Both copies are
/// never touched again.
struct EveTaps {
    bool charlie = true;
    bool debbie = false;
};

Behavior run_of_scenario(const OFConfig &cfg);
Behavior run_lf_scenario(const LFConfig &cfg);
Behavior run_extended_of_scenario(const ExtendedOFConfig &cfg);

/// Joint over ("a", "c", Bob's variable) with a the preparation label and c
/// Eve's copy of Charlie's record. Bob's variable is "d" for y=0 and "b"
/// otherwise; when taps.debbie is set and y>0, "d" (Eve's copy) is appended
/// after "b". When taps.charlie is off, "c" is present only for x=0.
Distribution eve_tap_run(const OFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps = {});
Distribution eve_tap_run(const ExtendedOFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps = {});

/// Local-protocol counterpart. Variables, in order: "c" (x=0 or tapped),
/// "d" (y=0 or tapped), "a" (x=1), "b" (y=1).
Distribution eve_tap_run(const LFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps = {true, true});

/// Full register state of one operational run with preparation label `a`, for
/// lemma-level inspection. Registers: "S", "MC", "MD", then "EC"/"ED" when
/// tapped.
RegisterState of_run_state(const ExtendedOFConfig &cfg, std::size_t a, std::size_t x, std::size_t y, EveTaps taps);

struct PreparationEquivalence {
    bool equivalent = false;
    double trace_distance = 0.0;
};

/// Equivalent iff the two mixtures are within trace distance kAlgebraTol.
PreparationEquivalence check_preparation_equivalence(std::span<const std::pair<double, PureState>> lhs,
                                                     std::span<const std::pair<double, PureState>> rhs);

/// Prepare-and-measure table over settings (prep, meas) and outcome k:
/// p(k | prep, meas) by the Born rule.
Behavior prepare_and_measure(std::span<const PureState> preparations,
                             std::span<const ProjectiveMeasurement> measurements);

}  // namespace ewfnogo

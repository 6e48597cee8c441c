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

#include "ewfnogo/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ewfnogo {

PureState LFConfig::singlet() {
    CVector v = CVector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return PureState(std::move(v));
}

OFConfig ExtendedOFConfig::appendix_base() {
    OFConfig cfg;
    cfg.preparation_angles = {BlochAngle(0.0), BlochAngle(kPi)};
    cfg.charlie_basis_angle = BlochAngle(kPi / 2);
    cfg.debbie_basis_angle = BlochAngle(kPi / 2);
    cfg.bob_basis_angle = BlochAngle(0.0);
    return cfg;
}

namespace {

const std::vector<Variable> kPartySlots{{"alice", 2}, {"bob", 2}};

void check_prior(const OFConfig &cfg) {
    const auto [p0, p1] = cfg.prior;
    if (!(p0 >= 0.0 && p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("OFConfig: prior must be a probability vector");
    }
}

void check_setting(std::size_t v, std::size_t count, const char *name) {
    if (v >= count) {
        throw std::out_of_range(std::string("setting ") + name + " out of range");
    }
}

// Named readouts of one operational run, in the documented order.
std::vector<Readout> of_readouts(const ExtendedOFConfig &cfg, const RegisterLayout &layout, std::size_t x,
                                 std::size_t y, EveTaps taps) {
    std::vector<Readout> out;
    if (taps.charlie) {
        out.push_back({"c", layout.index_of("EC"), std::nullopt});
    } else if (x == 0) {
        out.push_back({"c", layout.index_of("MC"), std::nullopt});
    }
    if (y == 0) {
        out.push_back({"d", layout.index_of("MD"), std::nullopt});
    } else {
        const BlochAngle basis = y == 1 ? cfg.base.bob_basis_angle : cfg.bob_y2_basis_angle;
        out.push_back({"b", layout.index_of("S"), pauli_xz_measurement(basis)});
        if (taps.debbie) {
            out.push_back({"d", layout.index_of("ED"), std::nullopt});
        }
    }
    return out;
}

Distribution of_joint(const ExtendedOFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps) {
    check_prior(cfg.base);
    std::vector<std::pair<double, Distribution>> parts;
    for (std::size_t a = 0; a < 2; ++a) {
        const RegisterState st = of_run_state(cfg, a, x, y, taps);
        parts.emplace_back(cfg.base.prior[a], joint_born(st, of_readouts(cfg, st.layout(), x, y, taps)));
    }
    return Distribution::stack({"a", 2}, parts);
}

Behavior of_behavior(const ExtendedOFConfig &cfg, std::size_t n_settings) {
    std::map<SettingTuple, std::vector<double>> table;
    std::map<SettingTuple, std::vector<std::string>> observed;
    for (std::size_t x = 0; x < n_settings; ++x) {
        for (std::size_t y = 0; y < n_settings; ++y) {
            const std::string alice = x == 0 ? "c" : "a";
            const std::string bob = y == 0 ? "d" : "b";
            const Distribution joint = of_joint(cfg, x, y, EveTaps{false, false});
            table[{x, y}] = joint.marginal({alice, bob}).probs();
            observed[{x, y}] = {alice, bob};
        }
    }
    return Behavior({{"x", n_settings}, {"y", n_settings}}, kPartySlots, std::move(table), std::move(observed));
}

ExtendedOFConfig lift(const OFConfig &cfg) {
    ExtendedOFConfig ext;
    ext.base = cfg;
    return ext;
}

RegisterState lf_run_state(const LFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps) {
    if (cfg.shared_state.dim() != 4) {
        throw std::invalid_argument("LFConfig: shared state must be two qubits");
    }
    RegisterLayout layout;
    const std::size_t r = layout.add("R", 2);
    const std::size_t s = layout.add("S", 2);
    const std::size_t mc = layout.add("MC", 2);
    const std::size_t md = layout.add("MD", 2);
    const std::size_t ec = taps.charlie ? layout.add("EC", 2) : 0;
    const std::size_t ed = taps.debbie ? layout.add("ED", 2) : 0;

    PureState joint = cfg.shared_state;
    for (std::size_t i = 2; i < layout.size(); ++i) {
        joint = tensor(joint, PureState::basis(2, 0));
    }
    RegisterState st(layout, joint);

    const UnitaryOp uc = measurement_dilation(pauli_xz_measurement(cfg.charlie_angle));
    const UnitaryOp ud = measurement_dilation(pauli_xz_measurement(cfg.debbie_angle));
    const UnitaryOp copy = measurement_dilation(ProjectiveMeasurement::computational(2));

    st.apply(uc, {r, mc});
    if (taps.charlie) {
        st.apply(copy, {mc, ec});
    }
    st.apply(ud, {s, md});
    if (taps.debbie) {
        st.apply(copy, {md, ed});
    }
    if (x == 1) {
        st.apply(uc.adjoint(), {r, mc});
    }
    if (y == 1) {
        st.apply(ud.adjoint(), {s, md});
    }
    return st;
}

}  // namespace

RegisterState of_run_state(const ExtendedOFConfig &cfg, std::size_t a, std::size_t x, std::size_t y, EveTaps taps) {
    check_setting(a, 2, "a");
    check_setting(x, 3, "x");
    check_setting(y, 3, "y");
    RegisterLayout layout;
    const std::size_t s = layout.add("S", 2);
    const std::size_t mc = layout.add("MC", 2);
    const std::size_t md = layout.add("MD", 2);
    const std::size_t ec = taps.charlie ? layout.add("EC", 2) : 0;
    const std::size_t ed = taps.debbie ? layout.add("ED", 2) : 0;

    RegisterState st(layout, std::vector<std::pair<std::size_t, PureState>>{{s, make_bloch_state(cfg.base.preparation_angles[a])}});
    const UnitaryOp uc = measurement_dilation(pauli_xz_measurement(cfg.base.charlie_basis_angle));
    const UnitaryOp ud = measurement_dilation(pauli_xz_measurement(cfg.base.debbie_basis_angle));
    const UnitaryOp copy = measurement_dilation(ProjectiveMeasurement::computational(2));

    st.apply(uc, {s, mc});
    if (taps.charlie) {
        st.apply(copy, {mc, ec});
    }
    if (x >= 1) {
        st.apply(uc.adjoint(), {s, mc});
    }
    if (x == 2) {
        st.apply(y_rotation(cfg.alice_x2_rotation_angle), {s});
    }
    st.apply(ud, {s, md});
    if (taps.debbie) {
        st.apply(copy, {md, ed});
    }
    if (y >= 1) {
        st.apply(ud.adjoint(), {s, md});
    }
    return st;
}

Behavior run_of_scenario(const OFConfig &cfg) { return of_behavior(lift(cfg), 2); }

Behavior run_extended_of_scenario(const ExtendedOFConfig &cfg) { return of_behavior(cfg, 3); }

Distribution eve_tap_run(const OFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps) {
    check_setting(x, 2, "x");
    check_setting(y, 2, "y");
    return of_joint(lift(cfg), x, y, taps);
}

Distribution eve_tap_run(const ExtendedOFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps) {
    return of_joint(cfg, x, y, taps);
}

Distribution eve_tap_run(const LFConfig &cfg, std::size_t x, std::size_t y, EveTaps taps) {
    check_setting(x, 2, "x");
    check_setting(y, 2, "y");
    const RegisterState st = lf_run_state(cfg, x, y, taps);
    const RegisterLayout &layout = st.layout();
    std::vector<Readout> readouts;
    if (taps.charlie) {
        readouts.push_back({"c", layout.index_of("EC"), std::nullopt});
    } else if (x == 0) {
        readouts.push_back({"c", layout.index_of("MC"), std::nullopt});
    }
    if (taps.debbie) {
        readouts.push_back({"d", layout.index_of("ED"), std::nullopt});
    } else if (y == 0) {
        readouts.push_back({"d", layout.index_of("MD"), std::nullopt});
    }
    if (x == 1) {
        readouts.push_back({"a", layout.index_of("R"), pauli_xz_measurement(cfg.alice_undo_angle)});
    }
    if (y == 1) {
        readouts.push_back({"b", layout.index_of("S"), pauli_xz_measurement(cfg.bob_undo_angle)});
    }
    return joint_born(st, readouts);
}

Behavior run_lf_scenario(const LFConfig &cfg) {
    std::map<SettingTuple, std::vector<double>> table;
    std::map<SettingTuple, std::vector<std::string>> observed;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            const std::string alice = x == 0 ? "c" : "a";
            const std::string bob = y == 0 ? "d" : "b";
            const Distribution joint = eve_tap_run(cfg, x, y, EveTaps{false, false});
            table[{x, y}] = joint.marginal({alice, bob}).probs();
            observed[{x, y}] = {alice, bob};
        }
    }
    return Behavior({{"x", 2}, {"y", 2}}, kPartySlots, std::move(table), std::move(observed));
}

PreparationEquivalence check_preparation_equivalence(std::span<const std::pair<double, PureState>> lhs,
                                                     std::span<const std::pair<double, PureState>> rhs) {
    const double d = trace_distance(mix(lhs), mix(rhs));
    return {d <= kAlgebraTol, d};
}

Behavior prepare_and_measure(std::span<const PureState> preparations,
                             std::span<const ProjectiveMeasurement> measurements) {
    if (preparations.empty() || measurements.empty()) {
        throw std::invalid_argument("prepare_and_measure: need at least one preparation and one measurement");
    }
    const std::size_t k = measurements.front().outcomes();
    std::map<SettingTuple, std::vector<double>> table;
    for (std::size_t p = 0; p < preparations.size(); ++p) {
        for (std::size_t m = 0; m < measurements.size(); ++m) {
            if (measurements[m].outcomes() != k) {
                throw std::invalid_argument("prepare_and_measure: measurements differ in outcome count");
            }
            table[{p, m}] = born(preparations[p], measurements[m]);
        }
    }
    return Behavior({{"prep", preparations.size()}, {"meas", measurements.size()}}, {{"k", k}}, std::move(table));
}

}  // namespace ewfnogo

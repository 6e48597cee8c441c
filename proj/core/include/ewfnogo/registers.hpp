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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewfnogo/distribution.hpp"
#include "ewfnogo/quantum.hpp"

namespace ewfnogo {

/// An ordered tensor product of named registers. Register 0 is the most
/// significant factor of the joint index.
class RegisterLayout {
public:
    RegisterLayout() = default;

    /// Appends a register and returns its position.
    std::size_t add(std::string name, std::size_t dim);

    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t reg) const { return dims_.at(reg); }
    std::size_t total_dim() const;
    const std::string &name(std::size_t reg) const { return names_.at(reg); }
    std::size_t index_of(const std::string &name) const;

    /// Digit of register `reg` inside a joint basis index.
    std::size_t digit(std::size_t joint, std::size_t reg) const;
    std::size_t with_digit(std::size_t joint, std::size_t reg, std::size_t value) const;

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> dims_;
};

/// Lifts an operator acting on the ordered register list `targets` (first
/// target most significant) to the whole layout.
CMatrix embed(const CMatrix &op, const RegisterLayout &layout, const std::vector<std::size_t> &targets);

/// A state vector living on a RegisterLayout.
class RegisterState {
public:
    /// Product state: `inputs` gives (register, state) for the registers that
    /// are not |0>.
    RegisterState(RegisterLayout layout, const std::vector<std::pair<std::size_t, PureState>> &inputs = {});
    /// Arbitrary joint state; `joint.dim()` must equal the layout's total dim.
    RegisterState(RegisterLayout layout, const PureState &joint);

    const RegisterLayout &layout() const { return layout_; }
    const CVector &vector() const { return psi_; }

    void apply(const UnitaryOp &u, const std::vector<std::size_t> &targets);

    /// Reduced density matrix on `keep`, optionally conditioned on
    /// computational-basis values of other registers. Returns nullopt when the
    /// condition has zero probability; otherwise the normalized state.
    std::optional<DensityOperator> reduced(const std::vector<std::size_t> &keep,
                                           const std::vector<std::pair<std::size_t, std::size_t>> &condition = {}) const;

private:
    RegisterLayout layout_;
    CVector psi_;
};

/// One variable read out at the end of a protocol run: register `reg` measured
/// in `basis`, or in its computational basis when `basis` is empty.
struct Readout {
    std::string name;
    std::size_t reg;
    std::optional<ProjectiveMeasurement> basis;
};

/// Born-rule joint distribution of readouts on pairwise distinct registers.
Distribution joint_born(const RegisterState &state, const std::vector<Readout> &readouts);

}  // namespace ewfnogo

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

#include "ewfnogo/registers.hpp"

#include <algorithm>
#include <stdexcept>

namespace ewfnogo {

std::size_t RegisterLayout::add(std::string name, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("RegisterLayout: zero-dimensional register");
    }
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
        throw std::invalid_argument("RegisterLayout: duplicate register '" + name + "'");
    }
    names_.push_back(std::move(name));
    dims_.push_back(dim);
    return dims_.size() - 1;
}

std::size_t RegisterLayout::total_dim() const {
    std::size_t n = 1;
    for (std::size_t d : dims_) {
        n *= d;
    }
    return n;
}

std::size_t RegisterLayout::index_of(const std::string &name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("RegisterLayout: no register '" + name + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t RegisterLayout::digit(std::size_t joint, std::size_t reg) const {
    for (std::size_t r = dims_.size(); r-- > reg + 1;) {
        joint /= dims_[r];
    }
    return joint % dims_.at(reg);
}

std::size_t RegisterLayout::with_digit(std::size_t joint, std::size_t reg, std::size_t value) const {
    std::size_t stride = 1;
    for (std::size_t r = dims_.size(); r-- > reg + 1;) {
        stride *= dims_[r];
    }
    const std::size_t old = (joint / stride) % dims_.at(reg);
    return joint - old * stride + value * stride;
}

namespace {

void check_targets(const RegisterLayout &layout, const std::vector<std::size_t> &targets) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= layout.size()) {
            throw std::out_of_range("register index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("repeated register in target list");
            }
        }
    }
}

// Sub-index of `joint` restricted to `targets`, first target most significant.
std::size_t sub_index(const RegisterLayout &layout, const std::vector<std::size_t> &targets, std::size_t joint) {
    std::size_t idx = 0;
    for (std::size_t t : targets) {
        idx = idx * layout.dim(t) + layout.digit(joint, t);
    }
    return idx;
}

// Joint index with the digits of `targets` cleared.
std::size_t rest_index(const RegisterLayout &layout, const std::vector<std::size_t> &targets, std::size_t joint) {
    for (std::size_t t : targets) {
        joint = layout.with_digit(joint, t, 0);
    }
    return joint;
}

}  // namespace

CMatrix embed(const CMatrix &op, const RegisterLayout &layout, const std::vector<std::size_t> &targets) {
    check_targets(layout, targets);
    std::size_t sub = 1;
    for (std::size_t t : targets) {
        sub *= layout.dim(t);
    }
    if (static_cast<std::size_t>(op.rows()) != sub || static_cast<std::size_t>(op.cols()) != sub) {
        throw std::invalid_argument("embed: operator dimension does not match target registers");
    }
    const std::size_t n = layout.total_dim();
    CMatrix full = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ri = rest_index(layout, targets, i);
        const std::size_t si = sub_index(layout, targets, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (rest_index(layout, targets, j) != ri) {
                continue;
            }
            full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                op(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sub_index(layout, targets, j)));
        }
    }
    return full;
}

RegisterState::RegisterState(RegisterLayout layout, const std::vector<std::pair<std::size_t, PureState>> &inputs)
    : layout_(std::move(layout)) {
    if (layout_.size() == 0) {
        throw std::invalid_argument("RegisterState: empty layout");
    }
    std::vector<const PureState *> chosen(layout_.size(), nullptr);
    for (const auto &[reg, state] : inputs) {
        if (reg >= layout_.size() || state.dim() != layout_.dim(reg)) {
            throw std::invalid_argument("RegisterState: input does not match its register");
        }
        chosen[reg] = &state;
    }
    CMatrix acc = CMatrix::Ones(1, 1);
    for (std::size_t r = 0; r < layout_.size(); ++r) {
        const CVector v = chosen[r] ? chosen[r]->amplitudes() : PureState::basis(layout_.dim(r), 0).amplitudes();
        acc = tensor(acc, CMatrix(v));
    }
    psi_ = acc.col(0);
}

RegisterState::RegisterState(RegisterLayout layout, const PureState &joint) : layout_(std::move(layout)) {
    if (joint.dim() != layout_.total_dim()) {
        throw std::invalid_argument("RegisterState: joint state dimension does not match layout");
    }
    psi_ = joint.amplitudes();
}

void RegisterState::apply(const UnitaryOp &u, const std::vector<std::size_t> &targets) {
    psi_ = embed(u.matrix(), layout_, targets) * psi_;
}

std::optional<DensityOperator> RegisterState::reduced(
    const std::vector<std::size_t> &keep, const std::vector<std::pair<std::size_t, std::size_t>> &condition) const {
    check_targets(layout_, keep);
    std::size_t sub = 1;
    for (std::size_t t : keep) {
        sub *= layout_.dim(t);
    }
    const auto satisfies = [&](std::size_t joint) {
        return std::all_of(condition.begin(), condition.end(),
                           [&](const auto &c) { return layout_.digit(joint, c.first) == c.second; });
    };
    const std::size_t n = layout_.total_dim();
    const auto m = static_cast<Eigen::Index>(sub);
    CMatrix rho = CMatrix::Zero(m, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (!satisfies(i)) {
            continue;
        }
        const std::size_t ri = rest_index(layout_, keep, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (rest_index(layout_, keep, j) != ri || !satisfies(j)) {
                continue;
            }
            rho(static_cast<Eigen::Index>(sub_index(layout_, keep, i)),
                static_cast<Eigen::Index>(sub_index(layout_, keep, j))) +=
                psi_(static_cast<Eigen::Index>(i)) * std::conj(psi_(static_cast<Eigen::Index>(j)));
        }
    }
    const double mass = rho.trace().real();
    if (mass <= 1e-14) {
        return std::nullopt;
    }
    rho /= mass;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(std::move(rho));
}

Distribution joint_born(const RegisterState &state, const std::vector<Readout> &readouts) {
    const RegisterLayout &layout = state.layout();
    std::vector<std::size_t> regs;
    std::vector<Variable> vars;
    // embedded[r][k]: projector for outcome k of readout r on the full space
    std::vector<std::vector<CMatrix>> embedded;
    for (const Readout &r : readouts) {
        regs.push_back(r.reg);
        check_targets(layout, regs);
        const ProjectiveMeasurement meas =
            r.basis ? *r.basis : ProjectiveMeasurement::computational(layout.dim(r.reg));
        if (meas.dim() != layout.dim(r.reg)) {
            throw std::invalid_argument("joint_born: readout '" + r.name + "' does not match its register");
        }
        vars.push_back({r.name, meas.outcomes()});
        std::vector<CMatrix> projs;
        for (const CMatrix &p : meas.projectors()) {
            projs.push_back(embed(p, layout, {r.reg}));
        }
        embedded.push_back(std::move(projs));
    }
    const std::size_t count = outcome_count(vars);
    std::vector<double> probs(count, 0.0);
    Distribution shape(vars, std::vector<double>(count, 0.0));
    for (std::size_t idx = 0; idx < count; ++idx) {
        const std::vector<std::size_t> ks = shape.values(idx);
        CVector phi = state.vector();
        for (std::size_t r = 0; r < readouts.size(); ++r) {
            phi = embedded[r][ks[r]] * phi;
        }
        probs[idx] = phi.squaredNorm();
    }
    return Distribution(std::move(vars), std::move(probs));
}

}  // namespace ewfnogo

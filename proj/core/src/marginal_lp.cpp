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

#include "ewfnogo/marginal_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ewfnogo/quantum.hpp"

namespace ewfnogo {

// --- MarginalConstraintSet ----------------------------------------------------

MarginalConstraintSet::MarginalConstraintSet(std::vector<Variable> variables,
                                             std::vector<MarginalConstraint> constraints)
    : vars_(std::move(variables)), constraints_(std::move(constraints)) {
    std::vector<std::size_t> strides(vars_.size(), 1);
    for (std::size_t i = vars_.size(); i-- > 0;) {
        if (vars_[i].cardinality == 0) {
            throw std::invalid_argument("variable '" + vars_[i].name + "' has cardinality 0");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (vars_[j].name == vars_[i].name) {
                throw std::invalid_argument("duplicate variable '" + vars_[i].name + "'");
            }
        }
        if (i + 1 < vars_.size()) {
            strides[i] = strides[i + 1] * vars_[i + 1].cardinality;
        }
    }
    for (std::size_t k = 0; k < constraints_.size(); ++k) {
        const MarginalConstraint &c = constraints_[k];
        const std::string where = "constraint " + std::to_string(k);
        if (c.subset.empty()) {
            throw std::invalid_argument(where + ": empty subset");
        }
        std::vector<std::pair<std::size_t, std::size_t>> entry;
        std::size_t expected = 1;
        for (const std::string &name : c.subset) {
            const auto it = std::find_if(vars_.begin(), vars_.end(), [&](const Variable &v) { return v.name == name; });
            if (it == vars_.end()) {
                throw std::invalid_argument(where + ": undeclared variable '" + name + "'");
            }
            const auto pos = static_cast<std::size_t>(it - vars_.begin());
            for (const auto &e : entry) {
                if (e.first == strides[pos]) {
                    throw std::invalid_argument(where + ": variable '" + name + "' repeated");
                }
            }
            entry.emplace_back(strides[pos], it->cardinality);
            expected *= it->cardinality;
        }
        if (c.target.size() != expected) {
            throw std::invalid_argument(where + ": target has " + std::to_string(c.target.size()) +
                                        " entries, expected " + std::to_string(expected));
        }
        double total = 0.0;
        for (double t : c.target) {
            if (!(t >= 0.0) || !std::isfinite(t)) {
                throw std::invalid_argument(where + ": target entries must be nonnegative");
            }
            total += t;
        }
        if (std::abs(total - 1.0) > kLpTol) {
            throw std::invalid_argument(where + ": target does not sum to 1");
        }
        layout_.push_back(std::move(entry));
    }
}

std::size_t MarginalConstraintSet::joint_size() const {
    std::size_t n = 1;
    for (const Variable &v : vars_) {
        if (n > std::numeric_limits<std::size_t>::max() / v.cardinality) {
            return std::numeric_limits<std::size_t>::max();
        }
        n *= v.cardinality;
    }
    return n;
}

std::size_t MarginalConstraintSet::scalar_constraint_count() const {
    std::size_t n = 0;
    for (const MarginalConstraint &c : constraints_) {
        n += c.target.size();
    }
    return n;
}

std::size_t MarginalConstraintSet::projected_index(std::size_t constraint, std::size_t joint) const {
    std::size_t idx = 0;
    for (const auto &[stride, card] : layout_.at(constraint)) {
        idx = idx * card + (joint / stride) % card;
    }
    return idx;
}

namespace {

// Row offsets of each constraint block inside the stacked scalar constraints.
std::vector<std::size_t> block_offsets(const MarginalConstraintSet &cs) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (const MarginalConstraint &c : cs.constraints()) {
        off.push_back(acc);
        acc += c.target.size();
    }
    return off;
}

std::vector<double> stacked_targets(const MarginalConstraintSet &cs) {
    std::vector<double> t;
    for (const MarginalConstraint &c : cs.constraints()) {
        t.insert(t.end(), c.target.begin(), c.target.end());
    }
    return t;
}

// Values f_j = sum_k y_k A_kj for every joint outcome j.
std::vector<double> functional_values(const MarginalConstraintSet &cs, const std::vector<double> &y) {
    const std::size_t n = cs.joint_size();
    const std::vector<std::size_t> off = block_offsets(cs);
    std::vector<double> f(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < cs.constraints().size(); ++k) {
            f[j] += y[off[k] + cs.projected_index(k, j)];
        }
    }
    return f;
}

// Largest violation of the marginal constraints and of normalization.
double max_violation(const MarginalConstraintSet &cs, const std::vector<double> &q) {
    const std::vector<std::size_t> off = block_offsets(cs);
    std::vector<double> achieved(cs.scalar_constraint_count(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        total += q[j];
        for (std::size_t k = 0; k < cs.constraints().size(); ++k) {
            achieved[off[k] + cs.projected_index(k, j)] += q[j];
        }
    }
    const std::vector<double> t = stacked_targets(cs);
    double v = std::abs(total - 1.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        v = std::max(v, std::abs(achieved[i] - t[i]));
    }
    return v;
}

// Dense phase-1 tableau over [original | artificial | rhs], one artificial
// per equality row.
class PhaseOneSimplex {
public:
    PhaseOneSimplex(const MarginalConstraintSet &cs) : n_(cs.joint_size()) {
        const std::vector<double> t = stacked_targets(cs);
        m_ = t.size() + 1;
        cols_ = n_ + m_ + 1;
        tab_.assign(m_ * cols_, 0.0);
        const std::vector<std::size_t> off = block_offsets(cs);
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < cs.constraints().size(); ++k) {
                at(off[k] + cs.projected_index(k, j), j) = 1.0;
            }
            at(m_ - 1, j) = 1.0;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            at(i, n_ + i) = 1.0;
            at(i, cols_ - 1) = i + 1 < m_ ? t[i] : 1.0;
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
        }
        // reduced costs of min sum(artificials) with the artificial basis
        cost_.assign(cols_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j >= n_ && j < n_ + m_) {
                continue;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                s += at(i, j);
            }
            cost_[j] = -s;  // rhs column holds -objective
        }
    }

    void solve() {
        const std::size_t max_iter = 100 * (n_ + m_) + 1000;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            // Bland: lowest-index improving column
            std::size_t enter = cols_;
            for (std::size_t j = 0; j + 1 < cols_; ++j) {
                if (cost_[j] < -kEnterTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) {
                return;
            }
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a <= kPivotTol) {
                    continue;
                }
                const double ratio = at(i, cols_ - 1) / a;
                if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) {
                throw std::runtime_error("lp_feasibility: phase-1 problem reported unbounded");
            }
            pivot(leave, enter);
        }
        throw std::runtime_error("lp_feasibility: iteration limit reached");
    }

    double objective() const { return -cost_[cols_ - 1]; }

    std::vector<double> primal() const {
        std::vector<double> q(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                q[basis_[i]] = std::max(0.0, at(i, cols_ - 1));
            }
        }
        return q;
    }

    /// Phase-1 duals y with y^T A <= 0 and y^T t = objective.
    std::vector<double> duals() const {
        std::vector<double> y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            y[i] = 1.0 - cost_[n_ + i];
        }
        return y;
    }

private:
    static constexpr double kEnterTol = 1e-12;
    static constexpr double kPivotTol = 1e-11;

    double &at(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return tab_[i * cols_ + j]; }

    void pivot(std::size_t row, std::size_t col) {
        const double p = at(row, col);
        for (std::size_t j = 0; j < cols_; ++j) {
            at(row, j) /= p;
        }
        at(row, col) = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) {
                continue;
            }
            const double f = at(i, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < cols_; ++j) {
                at(i, j) -= f * at(row, j);
            }
            at(i, col) = 0.0;
        }
        const double f = cost_[col];
        for (std::size_t j = 0; j < cols_; ++j) {
            cost_[j] -= f * at(row, j);
        }
        cost_[col] = 0.0;
        basis_[row] = col;
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> tab_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

}  // namespace

double certificate_margin(const MarginalConstraintSet &cs, const std::vector<double> &certificate) {
    if (certificate.size() != cs.scalar_constraint_count()) {
        throw std::invalid_argument("certificate_margin: certificate has the wrong length");
    }
    const std::vector<double> f = functional_values(cs, certificate);
    const std::vector<double> t = stacked_targets(cs);
    double demanded = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        demanded += certificate[i] * t[i];
    }
    return *std::min_element(f.begin(), f.end()) - demanded;
}

namespace {

// Iterative proportional fitting from the uniform joint. Converges to the
// maximum-entropy distribution with the prescribed marginals when one exists;
// returns nullopt unless it gets within kAlgebraTol of every target.
std::optional<std::vector<double>> max_entropy_witness(const MarginalConstraintSet &cs) {
    const std::size_t n = cs.joint_size();
    const std::size_t k = cs.constraints().size();
    if (n == 0 || k == 0) {
        return std::nullopt;
    }
    constexpr std::size_t kWorkBudget = 50'000'000;
    const std::size_t sweeps = std::min<std::size_t>(200, kWorkBudget / (n * k) + 1);
    std::vector<double> q(n, 1.0 / static_cast<double>(n));
    std::vector<std::vector<std::size_t>> index(k, std::vector<std::size_t>(n));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < n; ++j) {
            index[c][j] = cs.projected_index(c, j);
        }
    }
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t c = 0; c < k; ++c) {
            const std::vector<double> &t = cs.constraints()[c].target;
            std::vector<double> m(t.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                m[index[c][j]] += q[j];
            }
            for (std::size_t j = 0; j < n; ++j) {
                const double mass = m[index[c][j]];
                q[j] = mass > 0.0 ? q[j] * t[index[c][j]] / mass : 0.0;
            }
        }
        if (max_violation(cs, q) <= kAlgebraTol) {
            return q;
        }
    }
    return std::nullopt;
}

}  // namespace

FeasibilityResult lp_feasibility(const MarginalConstraintSet &cs) {
    if (cs.joint_size() > kMaxJointOutcomes) {
        throw std::length_error("lp_feasibility: joint outcome space exceeds 10^6 entries");
    }
    PhaseOneSimplex lp(cs);
    lp.solve();

    FeasibilityResult result;
    if (lp.objective() <= kLpTol || cs.constraints().empty()) {
        result.feasible = true;
        result.witness = lp.primal();
        if (auto smooth = max_entropy_witness(cs)) {
            result.witness = std::move(smooth);
        }
        result.slack = max_violation(cs, *result.witness);
        return result;
    }

    // Farkas vector g = -y: g^T A >= 0 on every column, g^T t < 0.
    std::vector<double> y = lp.duals();
    const double norm_dual = -y.back();
    y.pop_back();
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        g[i] = -y[i];
    }
    // Fold the normalization row into the first block (its targets sum to 1),
    // then shift so the functional's minimum over joint outcomes is 0.
    const std::size_t first = cs.constraints().front().target.size();
    for (std::size_t i = 0; i < first; ++i) {
        g[i] += norm_dual;
    }
    const std::vector<double> f = functional_values(cs, g);
    const double lowest = *std::min_element(f.begin(), f.end());
    for (std::size_t i = 0; i < first; ++i) {
        g[i] -= lowest;
    }
    double scale = 0.0;
    for (double v : g) {
        scale = std::max(scale, std::abs(v));
    }
    if (scale > 0.0) {
        for (double &v : g) {
            v /= scale;
        }
    }
    result.feasible = false;
    result.slack = certificate_margin(cs, g);
    result.certificate = std::move(g);
    return result;
}

MarginalConstraintSet fine_constraints(const Table2x2 &ab, const Table2x2 &ad, const Table2x2 &cb,
                                       const Table2x2 &cd) {
    const auto vec = [](const Table2x2 &t) { return std::vector<double>(t.begin(), t.end()); };
    return MarginalConstraintSet({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, {{{"a", "b"}, vec(ab)},
                                                                          {{"a", "d"}, vec(ad)},
                                                                          {{"c", "b"}, vec(cb)},
                                                                          {{"c", "d"}, vec(cd)}});
}

FeasibilityResult fine_check(const Table2x2 &ab, const Table2x2 &ad, const Table2x2 &cb, const Table2x2 &cd) {
    return lp_feasibility(fine_constraints(ab, ad, cb, cd));
}

bool validate_certificate(const MarginalConstraintSet &cs, const FeasibilityResult &result) {
    if (!std::isfinite(result.slack)) {
        return false;
    }
    if (result.feasible) {
        if (!result.witness || result.witness->size() != cs.joint_size()) {
            return false;
        }
        for (double q : *result.witness) {
            if (!(q >= 0.0) || !std::isfinite(q)) {
                return false;
            }
        }
        const double v = max_violation(cs, *result.witness);
        return v <= kLpTol && std::abs(v - result.slack) <= kLpTol;
    }
    if (!result.certificate || result.certificate->size() != cs.scalar_constraint_count()) {
        return false;
    }
    const std::vector<double> &g = *result.certificate;
    if (!std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); })) {
        return false;
    }
    const std::vector<double> f = functional_values(cs, g);
    if (*std::min_element(f.begin(), f.end()) < -kAlgebraTol) {
        return false;
    }
    const std::vector<double> t = stacked_targets(cs);
    double demanded = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        demanded += g[i] * t[i];
    }
    const double margin = certificate_margin(cs, g);
    return demanded < -kLpTol && margin > kLpTol && std::abs(margin - result.slack) <= kLpTol;
}

}  // namespace ewfnogo

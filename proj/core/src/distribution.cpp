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

#include "ewfnogo/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ewfnogo {

std::size_t outcome_count(std::span<const Variable> vars) {
    std::size_t n = 1;
    for (const Variable &v : vars) {
        n *= v.cardinality;
    }
    return n;
}

Distribution::Distribution(std::vector<Variable> variables, std::vector<double> probs)
    : vars_(std::move(variables)), probs_(std::move(probs)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].cardinality == 0) {
            throw std::invalid_argument("Distribution: variable '" + vars_[i].name + "' has cardinality 0");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (vars_[i].name == vars_[j].name) {
                throw std::invalid_argument("Distribution: duplicate variable '" + vars_[i].name + "'");
            }
        }
    }
    if (probs_.size() != outcome_count(vars_)) {
        throw std::invalid_argument("Distribution: table size does not match variables");
    }
}

Distribution Distribution::stack(const Variable &label, std::span<const std::pair<double, Distribution>> parts) {
    if (parts.size() != label.cardinality || parts.empty()) {
        throw std::invalid_argument("Distribution::stack: need one part per label value");
    }
    const std::vector<Variable> &rest = parts.front().second.variables();
    std::vector<Variable> vars{label};
    vars.insert(vars.end(), rest.begin(), rest.end());
    std::vector<double> probs;
    probs.reserve(outcome_count(vars));
    for (const auto &[w, d] : parts) {
        if (d.variables() != rest) {
            throw std::invalid_argument("Distribution::stack: parts disagree on variables");
        }
        for (double p : d.probs()) {
            probs.push_back(w * p);
        }
    }
    return Distribution(std::move(vars), std::move(probs));
}

bool Distribution::has(const std::string &name) const {
    return std::any_of(vars_.begin(), vars_.end(), [&](const Variable &v) { return v.name == name; });
}

std::size_t Distribution::position(const std::string &name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == name) {
            return i;
        }
    }
    throw std::out_of_range("Distribution: no variable '" + name + "'");
}

std::size_t Distribution::index(std::span<const std::size_t> values) const {
    if (values.size() != vars_.size()) {
        throw std::invalid_argument("Distribution::index: wrong number of values");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (values[i] >= vars_[i].cardinality) {
            throw std::out_of_range("Distribution::index: value out of range");
        }
        idx = idx * vars_[i].cardinality + values[i];
    }
    return idx;
}

std::vector<std::size_t> Distribution::values(std::size_t index) const {
    std::vector<std::size_t> out(vars_.size());
    for (std::size_t i = vars_.size(); i-- > 0;) {
        out[i] = index % vars_[i].cardinality;
        index /= vars_[i].cardinality;
    }
    return out;
}

Distribution Distribution::marginal(const std::vector<std::string> &names) const {
    std::vector<std::size_t> pos;
    std::vector<Variable> vars;
    for (const std::string &n : names) {
        pos.push_back(position(n));
        vars.push_back(vars_[pos.back()]);
    }
    Distribution out(vars, std::vector<double>(outcome_count(vars), 0.0));
    std::vector<std::size_t> sub(pos.size());
    for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
        const std::vector<std::size_t> v = values(idx);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            sub[i] = v[pos[i]];
        }
        out.probs_[out.index(sub)] += probs_[idx];
    }
    return out;
}

std::optional<Distribution> Distribution::conditioned(const std::vector<std::pair<std::string, std::size_t>> &given,
                                                      double min_mass) const {
    std::vector<bool> fixed(vars_.size(), false);
    std::vector<std::size_t> fixed_value(vars_.size(), 0);
    for (const auto &[name, value] : given) {
        const std::size_t p = position(name);
        if (value >= vars_[p].cardinality) {
            throw std::out_of_range("Distribution::conditioned: value out of range");
        }
        fixed[p] = true;
        fixed_value[p] = value;
    }
    std::vector<Variable> rest;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!fixed[i]) {
            rest.push_back(vars_[i]);
        }
    }
    Distribution out(rest, std::vector<double>(outcome_count(rest), 0.0));
    double mass = 0.0;
    std::vector<std::size_t> sub;
    for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
        const std::vector<std::size_t> v = values(idx);
        bool match = true;
        sub.clear();
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (fixed[i]) {
                match = match && v[i] == fixed_value[i];
            } else {
                sub.push_back(v[i]);
            }
        }
        if (match) {
            out.probs_[out.index(sub)] += probs_[idx];
            mass += probs_[idx];
        }
    }
    if (mass <= min_mass) {
        return std::nullopt;
    }
    for (double &p : out.probs_) {
        p /= mass;
    }
    return out;
}

bool Distribution::is_normalized(double tol) const {
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    return std::abs(total - 1.0) <= tol &&
           std::all_of(probs_.begin(), probs_.end(), [&](double p) { return p >= -tol; });
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("max_abs_diff: size mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace ewfnogo

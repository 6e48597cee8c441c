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

#include "ewfnogo/behavior.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ewfnogo {

namespace {
constexpr double kBehaviorTol = 1e-9;
}

std::vector<SettingTuple> enumerate_tuples(std::span<const Variable> vars) {
    const std::size_t n = outcome_count(vars);
    std::vector<SettingTuple> out;
    out.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        SettingTuple t(vars.size());
        std::size_t rem = idx;
        for (std::size_t i = vars.size(); i-- > 0;) {
            t[i] = rem % vars[i].cardinality;
            rem /= vars[i].cardinality;
        }
        out.push_back(std::move(t));
    }
    return out;
}

Behavior::Behavior(std::vector<Variable> settings, std::vector<Variable> outcomes,
                   std::map<SettingTuple, std::vector<double>> table,
                   std::map<SettingTuple, std::vector<std::string>> observed)
    : settings_(std::move(settings)),
      outcomes_(std::move(outcomes)),
      table_(std::move(table)),
      observed_(std::move(observed)) {
    for (const Variable &v : settings_) {
        if (v.cardinality == 0) {
            throw std::invalid_argument("Behavior: setting '" + v.name + "' has cardinality 0");
        }
    }
    for (const Variable &v : outcomes_) {
        if (v.cardinality == 0) {
            throw std::invalid_argument("Behavior: outcome '" + v.name + "' has cardinality 0");
        }
    }
    const std::vector<SettingTuple> tuples = enumerate_tuples(settings_);
    if (table_.size() != tuples.size()) {
        throw std::invalid_argument("Behavior: table does not cover exactly the setting product space");
    }
    const std::size_t n_out = ewfnogo::outcome_count(outcomes_);
    for (const SettingTuple &t : tuples) {
        const auto it = table_.find(t);
        if (it == table_.end()) {
            throw std::invalid_argument("Behavior: missing row " + setting_key(t));
        }
        const std::vector<double> &p = it->second;
        if (p.size() != n_out) {
            throw std::invalid_argument("Behavior: row " + setting_key(t) + " has the wrong length");
        }
        double total = 0.0;
        for (double v : p) {
            if (!(v >= -kBehaviorTol)) {
                throw std::invalid_argument("Behavior: row " + setting_key(t) + " has a negative entry");
            }
            total += v;
        }
        if (std::abs(total - 1.0) > kBehaviorTol) {
            throw std::invalid_argument("Behavior: row " + setting_key(t) + " does not sum to 1");
        }
    }
    if (!observed_.empty()) {
        if (observed_.size() != tuples.size()) {
            throw std::invalid_argument("Behavior: observed labels must cover every setting row");
        }
        for (const auto &[t, names] : observed_) {
            if (!table_.contains(t) || names.size() != outcomes_.size()) {
                throw std::invalid_argument("Behavior: malformed observed labels");
            }
        }
    }
}

std::size_t Behavior::outcome_count() const { return ewfnogo::outcome_count(outcomes_); }

const std::vector<double> &Behavior::row(const SettingTuple &s) const {
    const auto it = table_.find(s);
    if (it == table_.end()) {
        throw std::out_of_range("Behavior: no row for settings " + setting_key(s));
    }
    return it->second;
}

double Behavior::prob(const SettingTuple &s, std::span<const std::size_t> outcome) const {
    return distribution(s).at(outcome);
}

Distribution Behavior::distribution(const SettingTuple &s) const {
    std::vector<Variable> vars = outcomes_;
    if (const auto it = observed_.find(s); it != observed_.end()) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            vars[i].name = it->second[i];
        }
    }
    return Distribution(std::move(vars), row(s));
}

std::vector<double> Behavior::slot_marginal(const SettingTuple &s, std::size_t slot) const {
    Distribution d(outcomes_, row(s));
    return d.marginal({outcomes_.at(slot).name}).probs();
}

std::string Behavior::setting_key(const SettingTuple &s) const {
    std::string key;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) {
            key += ',';
        }
        key += (i < settings_.size() ? settings_[i].name : "?") + "=" + std::to_string(s[i]);
    }
    return key;
}

std::vector<SettingTuple> Behavior::setting_tuples() const { return enumerate_tuples(settings_); }

}  // namespace ewfnogo

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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ewfnogo/distribution.hpp"

namespace ewfnogo {

using SettingTuple = std::vector<std::size_t>;

/// Conditional table p(outcome-tuple | setting-tuple). Every setting tuple of
/// the declared product space has a probability vector over the outcome
/// product, nonnegative and summing to 1 within 1e-9.
///
/// Optionally each setting row also records which physical variable each
/// outcome slot holds (e.g. Alice's slot is "c" when x=0 and "a" when x=1).
class Behavior {
public:
    Behavior(std::vector<Variable> settings, std::vector<Variable> outcomes,
             std::map<SettingTuple, std::vector<double>> table,
             std::map<SettingTuple, std::vector<std::string>> observed = {});

    const std::vector<Variable> &settings() const { return settings_; }
    const std::vector<Variable> &outcomes() const { return outcomes_; }
    const std::map<SettingTuple, std::vector<double>> &table() const { return table_; }
    const std::map<SettingTuple, std::vector<std::string>> &observed() const { return observed_; }

    std::size_t setting_count() const { return table_.size(); }
    std::size_t outcome_count() const;

    const std::vector<double> &row(const SettingTuple &s) const;
    double prob(const SettingTuple &s, std::span<const std::size_t> outcome) const;

    /// The row for `s` as a Distribution. Slot names come from observed()
    /// when recorded, else from outcomes().
    Distribution distribution(const SettingTuple &s) const;
    /// Distribution of a single outcome slot given the settings.
    std::vector<double> slot_marginal(const SettingTuple &s, std::size_t slot) const;

    /// Key used by the JSON format, e.g. "x=0,y=1".
    std::string setting_key(const SettingTuple &s) const;
    /// All setting tuples in row-major order.
    std::vector<SettingTuple> setting_tuples() const;

    friend bool operator==(const Behavior &, const Behavior &) = default;

private:
    std::vector<Variable> settings_;
    std::vector<Variable> outcomes_;
    std::map<SettingTuple, std::vector<double>> table_;
    std::map<SettingTuple, std::vector<std::string>> observed_;
};

/// Every setting tuple in the product of `settings`, row-major.
std::vector<SettingTuple> enumerate_tuples(std::span<const Variable> vars);

}  // namespace ewfnogo

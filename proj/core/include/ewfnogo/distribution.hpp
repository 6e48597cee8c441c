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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ewfnogo {

/// A named discrete variable.
struct Variable {
    std::string name;
    std::size_t cardinality = 0;

    friend bool operator==(const Variable &, const Variable &) = default;
};

/// Number of joint outcomes of `vars` (product of cardinalities).
std::size_t outcome_count(std::span<const Variable> vars);

/// Probability table over the product of `variables()`, row-major with the
/// first variable most significant.
class Distribution {
public:
    Distribution() = default;
    /// Throws std::invalid_argument on duplicate names or a size mismatch. Does
    /// not require normalization; see is_normalized().
    Distribution(std::vector<Variable> variables, std::vector<double> probs);

    /// Joint over (label, parts' variables): P(label=i, rest) = w_i * part_i(rest).
    /// All parts must share their variable list.
    static Distribution stack(const Variable &label, std::span<const std::pair<double, Distribution>> parts);

    const std::vector<Variable> &variables() const { return vars_; }
    const std::vector<double> &probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

    bool has(const std::string &name) const;
    std::size_t position(const std::string &name) const;

    std::size_t index(std::span<const std::size_t> values) const;
    std::vector<std::size_t> values(std::size_t index) const;
    double at(std::span<const std::size_t> values) const { return probs_.at(index(values)); }

    /// Marginal over `names`, in the given order.
    Distribution marginal(const std::vector<std::string> &names) const;

    /// Distribution of the remaining variables given fixed values of
    /// `given`. Empty when the conditioning event has probability <= `min_mass`.
    std::optional<Distribution> conditioned(const std::vector<std::pair<std::string, std::size_t>> &given,
                                            double min_mass = 1e-14) const;

    bool is_normalized(double tol) const;

private:
    std::vector<Variable> vars_;
    std::vector<double> probs_;
};

/// Largest entrywise |a_i - b_i|. Throws when the sizes differ.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace ewfnogo

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
#include <optional>
#include <string>
#include <vector>

#include "ewfnogo/distribution.hpp"

namespace ewfnogo {

/// Largest joint outcome space lp_feasibility accepts.
inline constexpr std::size_t kMaxJointOutcomes = 1'000'000;

struct MarginalConstraint {
    std::vector<std::string> subset;
    /// Row-major over the subset's outcome product, first name most significant.
    std::vector<double> target;

    friend bool operator==(const MarginalConstraint &, const MarginalConstraint &) = default;
};

/// A marginal problem: is there a joint distribution over `variables` whose
/// marginals on each subset equal the targets?
class MarginalConstraintSet {
public:
    /// Throws std::invalid_argument if a subset names an undeclared or repeated
    /// variable, a target has the wrong length, or a target is negative or
    /// does not sum to 1 within kLpTol.
    MarginalConstraintSet(std::vector<Variable> variables, std::vector<MarginalConstraint> constraints);

    const std::vector<Variable> &variables() const { return vars_; }
    const std::vector<MarginalConstraint> &constraints() const { return constraints_; }

    std::size_t joint_size() const;
    /// Total number of scalar equalities (sum of target lengths).
    std::size_t scalar_constraint_count() const;
    /// For joint outcome j, the row inside constraint k's target that j feeds.
    std::size_t projected_index(std::size_t constraint, std::size_t joint) const;

    friend bool operator==(const MarginalConstraintSet &, const MarginalConstraintSet &) = default;

private:
    std::vector<Variable> vars_;
    std::vector<MarginalConstraint> constraints_;
    // per constraint, per subset entry: (stride in the joint index, cardinality)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layout_;
};

/// Outcome of a marginal feasibility problem.
///
/// Feasible: `witness` is a joint distribution reproducing every target and
/// `slack` is its largest constraint violation.
///
/// Infeasible: `certificate` holds one multiplier y_k per scalar constraint
/// (constraints in order, each target row-major). The functional
/// f(q) = sum_k y_k (A q)_k is >= 0 on every joint outcome, while the targets
/// demand sum_k y_k t_k = -slack < 0. It is scaled to unit max-norm.
struct FeasibilityResult {
    bool feasible = false;
    std::optional<std::vector<double>> witness;
    std::optional<std::vector<double>> certificate;
    double slack = 0.0;

    friend bool operator==(const FeasibilityResult &, const FeasibilityResult &) = default;
};

/// Phase-1 simplex (Bland's rule) on { q >= 0, sum q = 1, A q = t }.
/// Feasible iff the phase-1 optimum is <= kLpTol. The reported witness is the
/// maximum-entropy joint when iterative fitting reaches it within kAlgebraTol,
/// otherwise the simplex vertex.
FeasibilityResult lp_feasibility(const MarginalConstraintSet &cs);

using Table2x2 = std::array<double, 4>;

/// Fine's joint-distribution test over binary (a, b, c, d) with pairwise
/// targets on (a,b), (a,d), (c,b), (c,d). Inconsistent shared single-variable
/// marginals surface as infeasibility.
FeasibilityResult fine_check(const Table2x2 &ab, const Table2x2 &ad, const Table2x2 &cb, const Table2x2 &cd);
MarginalConstraintSet fine_constraints(const Table2x2 &ab, const Table2x2 &ad, const Table2x2 &cb,
                                       const Table2x2 &cd);

/// Recomputes the primal witness or the dual certificate of `result` against
/// `cs` by direct arithmetic. Also requires `result.slack` to agree with the
/// recomputed violation / margin within kLpTol.
bool validate_certificate(const MarginalConstraintSet &cs, const FeasibilityResult &result);

/// Margin min_j f(e_j) - sum_k y_k t_k of a candidate certificate.
double certificate_margin(const MarginalConstraintSet &cs, const std::vector<double> &certificate);

}  // namespace ewfnogo

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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ewfnogo/behavior.hpp"
#include "ewfnogo/marginal_lp.hpp"
#include "ewfnogo/scenario.hpp"

namespace ewfnogo {

/// One checked equality between two probability vectors.
struct AgencyCheck {
    std::string description;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double max_abs_diff = 0.0;
    bool passed = false;  // max_abs_diff <= kLpTol

    static AgencyCheck compare(std::string description, std::vector<double> lhs, std::vector<double> rhs);
};

enum class Verdict { contradiction_established, premises_failed, joint_exists };
std::string_view to_string(Verdict v);

/// Record of one no-go verification. Empirical tables (wp) come from runs
/// without Eve; `identifications` lists how each is read as a marginal of the
/// posited joint p(a,b,c,d|x=1,y=1).
struct ContradictionReport {
    std::string scenario;
    std::vector<std::string> assumptions;
    std::vector<AgencyCheck> premise_checks;
    std::vector<std::string> identifications;
    MarginalConstraintSet identified_marginals;
    FeasibilityResult fine_result;
    bool certificate_valid = false;
    double chsh = 0.0;
    Verdict verdict = Verdict::premises_failed;
};

/// Thrown by identify_of_marginals when an Agency instance does not hold.
class PremiseViolation : public std::runtime_error {
public:
    PremiseViolation(const std::string &what, std::vector<AgencyCheck> checks)
        : std::runtime_error(what), checks_(std::move(checks)) {}
    const std::vector<AgencyCheck> &checks() const { return checks_; }

private:
    std::vector<AgencyCheck> checks_;
};

/// Operational Agency instances used by the operational proof, evaluated in
/// Eve mode.
std::vector<AgencyCheck> of_premise_checks(const OFConfig &cfg);
/// Local Agency instances used by the bipartite proof, evaluated in Eve mode
/// on both wings.
std::vector<AgencyCheck> lf_premise_checks(const LFConfig &cfg);

/// The four empirical tables as pairwise targets on binary (a, b, c, d):
/// (c,d) <- x=0,y=0; (c,b) <- x=0,y=1; (a,d) <- x=1,y=0; (a,b) <- x=1,y=1.
MarginalConstraintSet identified_marginals(const Behavior &empirical);

struct IdentifiedMarginals {
    MarginalConstraintSet marginals;
    std::vector<AgencyCheck> premise_checks;
};

/// Throws PremiseViolation when any premise fails.
IdentifiedMarginals identify_of_marginals(const OFConfig &cfg);

ContradictionReport verify_of_theorem(const OFConfig &cfg);
ContradictionReport verify_lf_theorem(const LFConfig &cfg);

/// P(a,c,d | x, y) for x, y in {0,1,2}, built from the Eve-mode joint
/// p(a,c,d|x=1,y=1) and the empirical wp(d|x=2,y=0,a).
struct WitnessDistribution {
    std::map<SettingTuple, Distribution> table;  // key {x, y}
    std::vector<AgencyCheck> checks;
};

WitnessDistribution construct_witness_distribution(const ExtendedOFConfig &cfg);

/// A strict inequality between two conditionals, measured in Eve mode.
struct EveGap {
    std::string description;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double gap = 0.0;
    bool strict = false;  // gap > kLpTol
};

enum class SeparationVerdict { separation_established, separation_not_shown };
std::string_view to_string(SeparationVerdict v);

struct AppendixBReport {
    AgencyCheck new_oe;
    std::vector<AgencyCheck> agency_equalities;  // x=0 vs x=1 in Eve mode
    std::vector<EveGap> gaps;                    // x=2 against x=0 and x=1
    /// |p(d=0|c=0,x=2,y=0) - p(d=0|c=0,x=1,y=0)|.
    double gap_d0_c0 = 0.0;
    Behavior restricted;  // settings x,y in {1,2}, relabelled 0,1
    FeasibilityResult restricted_membership;
    double restricted_chsh = 0.0;
    MarginalConstraintSet of_marginals;
    FeasibilityResult of_fine;
    bool of_fine_certificate_valid = false;
    WitnessDistribution witness;
    SeparationVerdict verdict = SeparationVerdict::separation_not_shown;
};

AppendixBReport verify_appendix_b(const ExtendedOFConfig &cfg);

}  // namespace ewfnogo

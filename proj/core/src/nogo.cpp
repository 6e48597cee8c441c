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

#include "ewfnogo/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ewfnogo/polytope.hpp"

namespace ewfnogo {

AgencyCheck AgencyCheck::compare(std::string description, std::vector<double> lhs, std::vector<double> rhs) {
    AgencyCheck c;
    c.description = std::move(description);
    c.max_abs_diff = ewfnogo::max_abs_diff(lhs, rhs);
    c.passed = c.max_abs_diff <= kLpTol;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    return c;
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::contradiction_established:
        return "contradiction_established";
    case Verdict::premises_failed:
        return "premises_failed";
    case Verdict::joint_exists:
        return "joint_exists";
    }
    return "unknown";
}

std::string_view to_string(SeparationVerdict v) {
    return v == SeparationVerdict::separation_established ? "separation_established" : "separation_not_shown";
}

namespace {

std::string xy(std::size_t x, std::size_t y) { return "x=" + std::to_string(x) + ",y=" + std::to_string(y); }

// Concatenated conditionals p(target | given=v) over the values v where both
// sides are defined.
std::pair<std::vector<double>, std::vector<double>> paired_conditionals(const Distribution &lhs,
                                                                        const Distribution &rhs,
                                                                        const std::string &target,
                                                                        const std::string &given) {
    std::vector<double> l;
    std::vector<double> r;
    const Distribution lm = lhs.marginal({given, target});
    const Distribution rm = rhs.marginal({given, target});
    const std::size_t card = lm.variables().front().cardinality;
    for (std::size_t v = 0; v < card; ++v) {
        const auto lc = lm.conditioned({{given, v}});
        const auto rc = rm.conditioned({{given, v}});
        if (!lc || !rc) {
            continue;
        }
        l.insert(l.end(), lc->probs().begin(), lc->probs().end());
        r.insert(r.end(), rc->probs().begin(), rc->probs().end());
    }
    return {l, r};
}

AgencyCheck compare_marginals(std::string description, const Distribution &lhs, const Distribution &rhs,
                              const std::vector<std::string> &vars) {
    return AgencyCheck::compare(std::move(description), lhs.marginal(vars).probs(), rhs.marginal(vars).probs());
}

AgencyCheck compare_conditionals(std::string description, const Distribution &lhs, const Distribution &rhs,
                                 const std::string &target, const std::string &given) {
    auto [l, r] = paired_conditionals(lhs, rhs, target, given);
    return AgencyCheck::compare(std::move(description), std::move(l), std::move(r));
}

using EveGrid = std::array<std::array<Distribution, 2>, 2>;

EveGrid eve_grid(const OFConfig &cfg, EveTaps taps) {
    EveGrid g;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            g[x][y] = eve_tap_run(cfg, x, y, taps);
        }
    }
    return g;
}

EveGrid eve_grid(const LFConfig &cfg, EveTaps taps) {
    EveGrid g;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            g[x][y] = eve_tap_run(cfg, x, y, taps);
        }
    }
    return g;
}

const std::vector<std::string> kAssumptionsOF{
    "Absoluteness of Observed Events: a single joint p(a,b,c,d|x=1,y=1) reproducing all observed outcomes is "
    "posited (modelling assumption, not numerically checked)",
    "Operational Agency: operational equivalences verifiable by an all-access agent (Eve) hold without her; "
    "each instance used is checked in Eve mode (premise_checks)"};

const std::vector<std::string> kAssumptionsLF{
    "Absoluteness of Observed Events: a single joint p(a,b,c,d|x=1,y=1) reproducing all observed outcomes is "
    "posited (modelling assumption, not numerically checked)",
    "Local Agency: no-signalling verifiable by an all-access agent (Eve) holds without her; each instance used "
    "is checked in Eve mode on both wings (premise_checks)"};

const std::vector<std::string> kIdentifications{
    "wp(c,d|x=0,y=0) = p(c,d|x=1,y=1)", "wp(c,b|x=0,y=1) = p(c,b|x=1,y=1)", "wp(a,d|x=1,y=0) = p(a,d|x=1,y=1)",
    "wp(a,b|x=1,y=1) = p(a,b|x=1,y=1)"};

Verdict decide(const std::vector<AgencyCheck> &checks, const FeasibilityResult &fine) {
    const bool premises = std::all_of(checks.begin(), checks.end(), [](const AgencyCheck &c) { return c.passed; });
    if (!premises) {
        return Verdict::premises_failed;
    }
    return fine.feasible ? Verdict::joint_exists : Verdict::contradiction_established;
}

ContradictionReport build_report(std::string scenario, std::vector<std::string> assumptions,
                                 std::vector<AgencyCheck> checks, const Behavior &empirical) {
    MarginalConstraintSet marginals = identified_marginals(empirical);
    FeasibilityResult fine = lp_feasibility(marginals);
    const bool valid = validate_certificate(marginals, fine);
    const Verdict verdict = decide(checks, fine);
    return ContradictionReport{std::move(scenario),  std::move(assumptions), std::move(checks),
                               kIdentifications,      std::move(marginals),  std::move(fine),
                               valid,                 chsh_value(empirical), verdict};
}

Behavior restrict_settings(const Behavior &b, std::size_t first) {
    std::map<SettingTuple, std::vector<double>> table;
    std::map<SettingTuple, std::vector<std::string>> observed;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            table[{x, y}] = b.row({x + first, y + first});
            if (const auto it = b.observed().find({x + first, y + first}); it != b.observed().end()) {
                observed[{x, y}] = it->second;
            }
        }
    }
    return Behavior({{"x", 2}, {"y", 2}}, b.outcomes(), std::move(table), std::move(observed));
}

}  // namespace

std::vector<AgencyCheck> of_premise_checks(const OFConfig &cfg) {
    const EveGrid with_c = eve_grid(cfg, {true, false});
    const EveGrid with_cd = eve_grid(cfg, {true, true});
    const EveGrid with_d = eve_grid(cfg, {false, true});
    std::vector<AgencyCheck> checks;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            if (x == 0 && y == 0) {
                continue;
            }
            checks.push_back(compare_marginals("p(c|x,y)=p(c): " + xy(x, y) + " vs x=0,y=0", with_c[x][y],
                                               with_c[0][0], {"c"}));
        }
    }
    for (std::size_t x = 0; x < 2; ++x) {
        checks.push_back(compare_marginals("p(c,d|x,y)=p(c,d|x): " + xy(x, 1) + " vs " + xy(x, 0), with_cd[x][1],
                                           with_cd[x][0], {"c", "d"}));
    }
    for (std::size_t y = 0; y < 2; ++y) {
        checks.push_back(compare_conditionals("p(d|c,x,y)=p(d|c,y): " + xy(1, y) + " vs " + xy(0, y), with_cd[1][y],
                                              with_cd[0][y], "d", "c"));
    }
    checks.push_back(compare_conditionals("p(b|c,x,y)=p(b|c,y): x=1,y=1 vs x=0,y=1", with_c[1][1], with_c[0][1],
                                          "b", "c"));
    for (std::size_t x = 0; x < 2; ++x) {
        checks.push_back(compare_marginals("p(a,d|x,y)=p(a,d|x): " + xy(x, 1) + " vs " + xy(x, 0), with_d[x][1],
                                           with_d[x][0], {"a", "d"}));
    }
    return checks;
}

std::vector<AgencyCheck> lf_premise_checks(const LFConfig &cfg) {
    const EveGrid both = eve_grid(cfg, {true, true});
    const EveGrid with_c = eve_grid(cfg, {true, false});
    const EveGrid with_d = eve_grid(cfg, {false, true});
    std::vector<AgencyCheck> checks;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            if (x == 0 && y == 0) {
                continue;
            }
            checks.push_back(
                compare_marginals("p(c|x,y)=p(c): " + xy(x, y) + " vs x=0,y=0", both[x][y], both[0][0], {"c"}));
            checks.push_back(
                compare_marginals("p(d|x,y)=p(d): " + xy(x, y) + " vs x=0,y=0", both[x][y], both[0][0], {"d"}));
            checks.push_back(compare_marginals("p(c,d|x,y)=p(c,d): " + xy(x, y) + " vs x=0,y=0", both[x][y],
                                               both[0][0], {"c", "d"}));
        }
    }
    checks.push_back(compare_conditionals("p(b|c,x,y)=p(b|c,y): x=1,y=1 vs x=0,y=1", with_c[1][1], with_c[0][1],
                                          "b", "c"));
    checks.push_back(compare_conditionals("p(a|d,x,y)=p(a|d,x): x=1,y=1 vs x=1,y=0", with_d[1][1], with_d[1][0],
                                          "a", "d"));
    return checks;
}

MarginalConstraintSet identified_marginals(const Behavior &empirical) {
    if (empirical.settings().size() != 2 || empirical.settings()[0].cardinality < 2 ||
        empirical.settings()[1].cardinality < 2 || empirical.outcomes().size() != 2 ||
        empirical.outcomes()[0].cardinality != 2 || empirical.outcomes()[1].cardinality != 2) {
        throw std::invalid_argument("identified_marginals: need binary outcomes and settings x,y in {0,1}");
    }
    std::vector<MarginalConstraint> constraints;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            std::vector<std::string> names{x == 0 ? "c" : "a", y == 0 ? "d" : "b"};
            if (const auto it = empirical.observed().find({x, y}); it != empirical.observed().end()) {
                if (it->second != names) {
                    throw std::invalid_argument("identified_marginals: unexpected observed variables at " + xy(x, y));
                }
            }
            std::vector<double> target = empirical.row({x, y});
            for (double &t : target) {
                t = std::max(0.0, t);
            }
            constraints.push_back({std::move(names), std::move(target)});
        }
    }
    return MarginalConstraintSet({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, std::move(constraints));
}

IdentifiedMarginals identify_of_marginals(const OFConfig &cfg) {
    std::vector<AgencyCheck> checks = of_premise_checks(cfg);
    for (const AgencyCheck &c : checks) {
        if (!c.passed) {
            throw PremiseViolation("Operational Agency instance failed: " + c.description, std::move(checks));
        }
    }
    return {identified_marginals(run_of_scenario(cfg)), std::move(checks)};
}

ContradictionReport verify_of_theorem(const OFConfig &cfg) {
    return build_report("of", kAssumptionsOF, of_premise_checks(cfg), run_of_scenario(cfg));
}

ContradictionReport verify_lf_theorem(const LFConfig &cfg) {
    return build_report("lf", kAssumptionsLF, lf_premise_checks(cfg), run_lf_scenario(cfg));
}

WitnessDistribution construct_witness_distribution(const ExtendedOFConfig &cfg) {
    const Distribution global = eve_tap_run(cfg, 1, 1, EveTaps{true, true});
    const Distribution p_acd = global.marginal({"a", "c", "d"});
    const Distribution p_ac = global.marginal({"a", "c"});
    const Behavior empirical = run_extended_of_scenario(cfg);
    const Distribution ad_x2 = empirical.distribution({2, 0});  // over (a, d)

    std::vector<double> x2(p_acd.size(), 0.0);
    for (std::size_t idx = 0; idx < x2.size(); ++idx) {
        const std::vector<std::size_t> v = p_acd.values(idx);  // a, c, d
        const auto d_given_a = ad_x2.conditioned({{"a", v[0]}});
        if (d_given_a) {
            x2[idx] = d_given_a->probs()[v[2]] * p_ac.at(std::vector<std::size_t>{v[0], v[1]});
        }
    }
    const Distribution p_x2(p_acd.variables(), x2);

    WitnessDistribution w;
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            w.table.emplace(SettingTuple{x, y}, x == 2 ? p_x2 : p_acd);
        }
    }
    const auto P = [&](std::size_t x, std::size_t y) -> const Distribution & { return w.table.at({x, y}); };
    for (std::size_t y = 1; y < 3; ++y) {
        w.checks.push_back(
            AgencyCheck::compare("P(a,c,d|x=2,y) = P(a,c,d|x=2): y=" + std::to_string(y) + " vs y=0",
                                 P(2, y).probs(), P(2, 0).probs()));
    }
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            w.checks.push_back(AgencyCheck::compare("P(a,c,d|x,y=2) = P(a,c,d|x): " + xy(x, 2) + " vs " + xy(x, y),
                                                    P(x, 2).probs(), P(x, y).probs()));
        }
    }
    for (std::size_t y = 0; y < 3; ++y) {
        w.checks.push_back(AgencyCheck::compare("P(a,c|x=2) = P(a,c|x=1): y=" + std::to_string(y),
                                                P(2, y).marginal({"a", "c"}).probs(),
                                                P(1, y).marginal({"a", "c"}).probs()));
    }
    w.checks.push_back(AgencyCheck::compare("sum_c P(a,c,d|x=2,y=0) = wp(a,d|x=2,y=0)",
                                            P(2, 0).marginal({"a", "d"}).probs(), ad_x2.probs()));
    w.checks.push_back(AgencyCheck::compare("P(a,c|x=2) = Eve-mode p(a,c|x=1,y=1)",
                                            P(2, 0).marginal({"a", "c"}).probs(), p_ac.probs()));
    return w;
}

AppendixBReport verify_appendix_b(const ExtendedOFConfig &cfg) {
    const Behavior empirical = run_extended_of_scenario(cfg);
    AppendixBReport r{
        .new_oe = AgencyCheck::compare("wp(b|y=2,x=1) = wp(b|y=2,x=0)", empirical.slot_marginal({1, 2}, 1),
                                       empirical.slot_marginal({0, 2}, 1)),
        .agency_equalities = {},
        .gaps = {},
        .gap_d0_c0 = 0.0,
        .restricted = restrict_settings(empirical, 1),
        .restricted_membership = {},
        .restricted_chsh = 0.0,
        .of_marginals = identified_marginals(restrict_settings(empirical, 0)),
        .of_fine = {},
        .of_fine_certificate_valid = false,
        .witness = {},
        .verdict = SeparationVerdict::separation_not_shown,
    };

    // Eve copies c only; y=0 exposes d, y>=1 exposes b.
    std::array<std::array<Distribution, 3>, 3> eve;
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            eve[x][y] = eve_tap_run(cfg, x, y, EveTaps{true, false});
        }
    }
    for (std::size_t y = 0; y < 3; ++y) {
        const std::string target = y == 0 ? "d" : "b";
        const std::string cond = "p(" + target + "|c,x," + "y=" + std::to_string(y) + ")";
        r.agency_equalities.push_back(
            compare_conditionals(cond + ": x=1 vs x=0", eve[1][y], eve[0][y], target, "c"));
        if (y == 2) {
            continue;
        }
        for (std::size_t other : {0, 1}) {
            auto [l, rr] = paired_conditionals(eve[2][y], eve[other][y], target, "c");
            EveGap g{cond + ": x=2 vs x=" + std::to_string(other), l, rr, max_abs_diff(l, rr), false};
            g.strict = g.gap > kLpTol;
            r.gaps.push_back(std::move(g));
        }
    }
    const auto d_given_c0 = [&](std::size_t x) {
        return eve[x][0].marginal({"c", "d"}).conditioned({{"c", 0}});
    };
    if (const auto x2 = d_given_c0(2), x1 = d_given_c0(1); x2 && x1) {
        r.gap_d0_c0 = std::abs(x2->probs()[0] - x1->probs()[0]);
    }

    r.restricted_membership = membership(r.restricted, ScenarioShape{});
    r.restricted_chsh = chsh_value(r.restricted);
    r.of_fine = lp_feasibility(r.of_marginals);
    r.of_fine_certificate_valid = validate_certificate(r.of_marginals, r.of_fine);
    r.witness = construct_witness_distribution(cfg);

    const bool witness_ok = std::all_of(r.witness.checks.begin(), r.witness.checks.end(),
                                        [](const AgencyCheck &c) { return c.max_abs_diff <= kAlgebraTol; });
    const bool established = r.new_oe.passed && r.of_fine.feasible && r.of_fine_certificate_valid && witness_ok &&
                             !r.restricted_membership.feasible;
    r.verdict = established ? SeparationVerdict::separation_established : SeparationVerdict::separation_not_shown;
    return r;
}

}  // namespace ewfnogo

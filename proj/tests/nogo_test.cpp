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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ewfnogo/nogo.hpp"
#include "ewfnogo/polytope.hpp"
#include "support/oracles.hpp"

using namespace ewfnogo;

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<double> concat(const MarginalConstraintSet &cs) {
    std::vector<double> out;
    for (const auto &c : cs.constraints()) {
        out.insert(out.end(), c.target.begin(), c.target.end());
    }
    return out;
}

double worst(const std::vector<AgencyCheck> &checks) {
    double m = 0.0;
    for (const AgencyCheck &c : checks) {
        m = std::max(m, c.max_abs_diff);
    }
    return m;
}

// CHSH over correlators e[x][y] with one minus sign.
double chsh_of(const std::array<std::array<double, 2>, 2> &e) {
    const double t[] = {e[0][0], e[0][1], e[1][0], e[1][1]};
    double best = 0.0;
    for (int m = 0; m < 4; ++m) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            s += (i == m ? -1 : 1) * t[i];
        }
        best = std::max(best, std::abs(s));
    }
    return best;
}

}  // namespace

TEST(OperationalTheorem, DefaultConfigIsContradictory) {
    const ContradictionReport r = verify_of_theorem(OFConfig{});
    EXPECT_EQ(r.verdict, Verdict::contradiction_established);
    EXPECT_EQ(r.scenario, "of");
    EXPECT_NEAR(r.chsh, 2 * kSqrt2, 1e-9);
    EXPECT_FALSE(r.fine_result.feasible);
    EXPECT_TRUE(r.certificate_valid);
    EXPECT_FALSE(oracle::fine_oracle().feasible(concat(r.identified_marginals)));
    EXPECT_EQ(r.identifications.size(), 4u);
    EXPECT_EQ(r.assumptions.size(), 2u);
}

TEST(OperationalTheorem, PremisesHoldToMachinePrecision) {
    const std::vector<AgencyCheck> checks = of_premise_checks(OFConfig{});
    EXPECT_GE(checks.size(), 10u);
    EXPECT_LE(worst(checks), 1e-12);
    for (const char *family : {"p(c|x,y)=p(c)", "p(d|c,x,y)=p(d|c,y)", "p(b|c,x,y)=p(b|c,y)",
                               "p(c,d|x,y)=p(c,d|x)", "p(a,d|x,y)=p(a,d|x)"}) {
        EXPECT_TRUE(std::any_of(checks.begin(), checks.end(),
                                [&](const AgencyCheck &c) { return c.description.rfind(family, 0) == 0; }))
            << family;
    }
}

TEST(OperationalTheorem, IdentifiedMarginalsLayout) {
    const IdentifiedMarginals m = identify_of_marginals(OFConfig{});
    const auto &cs = m.marginals.constraints();
    ASSERT_EQ(cs.size(), 4u);
    EXPECT_EQ(cs[0].subset, (std::vector<std::string>{"c", "d"}));
    EXPECT_EQ(cs[1].subset, (std::vector<std::string>{"c", "b"}));
    EXPECT_EQ(cs[2].subset, (std::vector<std::string>{"a", "d"}));
    EXPECT_EQ(cs[3].subset, (std::vector<std::string>{"a", "b"}));
    EXPECT_NEAR(cs[3].target[0], 0.5 * std::pow(std::cos(kPi / 8), 2), 1e-12);
    EXPECT_NEAR(cs[3].target[0], 0.4267766952966369, 1e-12);
}

TEST(OperationalTheorem, CharlieInPreparationBasisAdmitsJoint) {
    OFConfig cfg;
    cfg.charlie_basis_angle = BlochAngle(kPi / 4);
    const IdentifiedMarginals m = identify_of_marginals(cfg);
    EXPECT_TRUE(lp_feasibility(m.marginals).feasible);
    EXPECT_TRUE(oracle::fine_oracle().feasible(concat(m.marginals)));
    EXPECT_EQ(verify_of_theorem(cfg).verdict, Verdict::joint_exists);
}

TEST(OperationalTheorem, AllMeasurementsZAdmitJoint) {
    OFConfig cfg;
    cfg.charlie_basis_angle = BlochAngle(0.0);
    cfg.debbie_basis_angle = BlochAngle(0.0);
    cfg.bob_basis_angle = BlochAngle(0.0);
    const ContradictionReport r = verify_of_theorem(cfg);
    EXPECT_EQ(r.verdict, Verdict::joint_exists);
    EXPECT_TRUE(r.certificate_valid);
    EXPECT_TRUE(oracle::fine_oracle().feasible(concat(r.identified_marginals)));
}

TEST(OperationalTheorem, CharlieAlignedWithDebbieMatchesClosedForm) {
    // Closed form: c = d; b uniform given c; a-d and a-b correlators cos(pi/4).
    OFConfig cfg;
    cfg.charlie_basis_angle = BlochAngle(0.0);
    const ContradictionReport r = verify_of_theorem(cfg);
    const double e_ad = std::cos(kPi / 4);
    const double e_ab = std::sin(kPi / 4);
    const double expected = chsh_of({{{1.0, 0.0}, {e_ad, e_ab}}});
    EXPECT_NEAR(expected, 1 + kSqrt2, 1e-12);
    EXPECT_NEAR(r.chsh, expected, 1e-9);
    EXPECT_EQ(r.fine_result.feasible, oracle::fine_oracle().feasible(concat(r.identified_marginals)));
    EXPECT_EQ(r.verdict, Verdict::contradiction_established);
}

TEST(LocalTheorem, DefaultConfigIsContradictory) {
    const ContradictionReport r = verify_lf_theorem(LFConfig{});
    EXPECT_EQ(r.verdict, Verdict::contradiction_established);
    EXPECT_NEAR(r.chsh, 2 * kSqrt2, 1e-9);
    EXPECT_TRUE(r.certificate_valid);
    EXPECT_LE(worst(r.premise_checks), 1e-12);
}

TEST(LocalTheorem, ProductStateAdmitsJoint) {
    LFConfig cfg;
    cfg.shared_state = PureState::basis(4, 0);
    const ContradictionReport r = verify_lf_theorem(cfg);
    EXPECT_EQ(r.verdict, Verdict::joint_exists);
    EXPECT_TRUE(oracle::fine_oracle().feasible(concat(r.identified_marginals)));
}

TEST(LocalTheorem, EqualAnglesAdmitJoint) {
    LFConfig cfg;
    cfg.charlie_angle = cfg.debbie_angle = cfg.alice_undo_angle = cfg.bob_undo_angle = BlochAngle(0.3);
    const ContradictionReport r = verify_lf_theorem(cfg);
    EXPECT_EQ(r.verdict, Verdict::joint_exists);
    EXPECT_NEAR(r.chsh, 2.0, 1e-9);
}

TEST(IdentifiedMarginals, RejectsNonBinaryBehaviors) {
    const Behavior b({{"x", 2}, {"y", 2}}, {{"alice", 3}, {"bob", 2}},
                     {{{0, 0}, {1, 0, 0, 0, 0, 0}},
                      {{0, 1}, {1, 0, 0, 0, 0, 0}},
                      {{1, 0}, {1, 0, 0, 0, 0, 0}},
                      {{1, 1}, {1, 0, 0, 0, 0, 0}}});
    EXPECT_THROW(identified_marginals(b), std::invalid_argument);
}

TEST(AgencyCheckCompare, ThresholdIsLpTolerance) {
    EXPECT_TRUE(AgencyCheck::compare("ok", {0.5, 0.5}, {0.5 + 1e-10, 0.5 - 1e-10}).passed);
    EXPECT_FALSE(AgencyCheck::compare("bad", {0.5, 0.5}, {0.5 + 1e-8, 0.5 - 1e-8}).passed);
    EXPECT_EQ(to_string(Verdict::premises_failed), "premises_failed");
    EXPECT_EQ(to_string(SeparationVerdict::separation_established), "separation_established");
}

TEST(WitnessDistribution, AllEqualityFamiliesHold) {
    const WitnessDistribution w = construct_witness_distribution(ExtendedOFConfig{});
    EXPECT_EQ(w.table.size(), 9u);
    EXPECT_LE(worst(w.checks), 1e-12);
    for (const auto &[xy, dist] : w.table) {
        EXPECT_TRUE(dist.is_normalized(1e-12));
    }
}

TEST(Separation, SeparationEstablished) {
    const AppendixBReport r = verify_appendix_b(ExtendedOFConfig{});
    EXPECT_EQ(r.verdict, SeparationVerdict::separation_established);
    EXPECT_LE(r.new_oe.max_abs_diff, 1e-9);
    EXPECT_NEAR(r.gap_d0_c0, std::pow(std::sin(kPi / 8), 2), 1e-9);
    EXPECT_NEAR(r.gap_d0_c0, 0.1464466094067262, 1e-9);
    for (const EveGap &g : r.gaps) {
        EXPECT_TRUE(g.strict) << g.description;
    }
    EXPECT_LE(worst(r.agency_equalities), 1e-12);
    EXPECT_FALSE(r.restricted_membership.feasible);
    EXPECT_TRUE(r.of_fine.feasible);
    EXPECT_TRUE(r.of_fine_certificate_valid);
}

TEST(Separation, RestrictedChshMatchesClosedForm) {
    // Alice's state for a=0: theta = 0 (x=1) or -pi/4 (x=2); Bob measures at 0 or pi/4.
    const double theta[2] = {0.0, -kPi / 4};
    const double beta[2] = {0.0, kPi / 4};
    std::array<std::array<double, 2>, 2> e{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            e[x][y] = std::cos(theta[x] - beta[y]);
        }
    }
    const AppendixBReport r = verify_appendix_b(ExtendedOFConfig{});
    EXPECT_NEAR(r.restricted_chsh, chsh_of(e), 1e-9);
    EXPECT_NEAR(r.restricted_chsh, 1 + kSqrt2, 1e-9);
}

TEST(Separation, OperationalWitnessIsProductForm) {
    const AppendixBReport r = verify_appendix_b(ExtendedOFConfig{});
    ASSERT_TRUE(r.of_fine.witness);
    // Variables (a, b, c, d): b = a, d = c, a and c independent fair bits.
    for (std::size_t j = 0; j < 16; ++j) {
        const std::size_t a = (j >> 3) & 1, b = (j >> 2) & 1, c = (j >> 1) & 1, d = j & 1;
        EXPECT_NEAR((*r.of_fine.witness)[j], (a == b && c == d) ? 0.25 : 0.0, 1e-12) << j;
    }
}

TEST(Separation, NoRotationMeansNoSeparation) {
    ExtendedOFConfig cfg;
    cfg.alice_x2_rotation_angle = 0.0;
    const AppendixBReport r = verify_appendix_b(cfg);
    EXPECT_EQ(r.verdict, SeparationVerdict::separation_not_shown);
    EXPECT_TRUE(r.restricted_membership.feasible);
}

TEST(Pipeline, OperationalAndLocalChshAgree) {
    EXPECT_NEAR(verify_of_theorem(OFConfig{}).chsh, verify_lf_theorem(LFConfig{}).chsh, 1e-9);
}

TEST(Pipeline, VerdictsAreConsistentWithFine) {
    std::mt19937_64 rng(404);
    int contradictions = 0;
    for (int i = 0; i < 60; ++i) {
        OFConfig of;
        of.preparation_angles[0] = BlochAngle(oracle::random_angle(rng));
        of.preparation_angles[1] = BlochAngle(of.preparation_angles[0].radians() + kPi);
        of.charlie_basis_angle = BlochAngle(oracle::random_angle(rng));
        of.debbie_basis_angle = BlochAngle(oracle::random_angle(rng));
        of.bob_basis_angle = BlochAngle(oracle::random_angle(rng));
        LFConfig lf;
        lf.charlie_angle = BlochAngle(oracle::random_angle(rng));
        lf.debbie_angle = BlochAngle(oracle::random_angle(rng));
        lf.alice_undo_angle = BlochAngle(oracle::random_angle(rng));
        lf.bob_undo_angle = BlochAngle(oracle::random_angle(rng));
        for (const ContradictionReport &r : {verify_of_theorem(of), verify_lf_theorem(lf)}) {
            ASSERT_LE(worst(r.premise_checks), 1e-12) << r.scenario << " instance " << i;
            EXPECT_EQ(r.fine_result.feasible, r.chsh <= 2 + 1e-9) << r.scenario << " instance " << i;
            EXPECT_TRUE(r.certificate_valid);
            EXPECT_EQ(r.verdict == Verdict::contradiction_established, !r.fine_result.feasible);
            contradictions += r.fine_result.feasible ? 0 : 1;
        }
    }
    EXPECT_GT(contradictions, 0);
}

TEST(Pipeline, ReportsAreDeterministic) {
    const ContradictionReport a = verify_of_theorem(OFConfig{});
    const ContradictionReport b = verify_of_theorem(OFConfig{});
    EXPECT_EQ(a.chsh, b.chsh);
    EXPECT_EQ(a.fine_result, b.fine_result);
}

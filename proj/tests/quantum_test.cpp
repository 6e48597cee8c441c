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

#include "ewfnogo/angle.hpp"
#include "ewfnogo/quantum.hpp"
#include "ewfnogo/registers.hpp"
#include "support/oracles.hpp"

using namespace ewfnogo;

namespace {

PureState plus() { return make_bloch_state(BlochAngle(kPi / 2)); }

void expect_amplitudes(const PureState &s, std::initializer_list<Complex> want) {
    ASSERT_EQ(s.dim(), want.size());
    std::size_t i = 0;
    for (Complex w : want) {
        EXPECT_NEAR(std::abs(s[i] - w), 0.0, 1e-12) << "amplitude " << i;
        ++i;
    }
}

}  // namespace

TEST(Angle, NormalizesIntoOneTurn) {
    EXPECT_NEAR(BlochAngle(-kPi / 4).radians(), 7 * kPi / 4, 1e-15);
    EXPECT_NEAR(BlochAngle(2 * kPi).radians(), 0.0, 1e-15);
    EXPECT_NEAR(BlochAngle(5 * kPi).radians(), kPi, 1e-12);
    EXPECT_THROW(BlochAngle(std::nan("")), std::invalid_argument);
}

TEST(Angle, ParsesRationalMultiplesOfPi) {
    EXPECT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-pi/4"), -kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
    EXPECT_DOUBLE_EQ(parse_angle("2*pi/3"), 2 * kPi / 3);
    EXPECT_DOUBLE_EQ(parse_angle("0"), 0.0);
    EXPECT_DOUBLE_EQ(parse_angle("0.5"), 0.5);
    EXPECT_DOUBLE_EQ(parse_angle(" 5pi/4 "), 5 * kPi / 4);
    for (const char *bad : {"", "pi/", "3pi/0", "abc", "pi pi", "1/0"}) {
        EXPECT_THROW(parse_angle(bad), std::invalid_argument) << bad;
    }
}

TEST(Angle, FormatRoundTrips) {
    EXPECT_EQ(format_angle(3 * kPi / 4), "3pi/4");
    EXPECT_EQ(format_angle(kPi), "pi");
    EXPECT_EQ(format_angle(0.0), "0");
    EXPECT_DOUBLE_EQ(parse_angle(format_angle(0.3)), 0.3);
}

TEST(BlochState, MatchesClosedForm) {
    expect_amplitudes(make_bloch_state(BlochAngle(0.0)), {1.0, 0.0});
    expect_amplitudes(make_bloch_state(BlochAngle(kPi / 4)), {0.9238795325112867, 0.3826834323650898});
    expect_amplitudes(make_bloch_state(BlochAngle(kPi)), {0.0, 1.0});
}

TEST(PureState, RejectsUnnormalizedInput) {
    CVector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, std::invalid_argument);
    EXPECT_NEAR(PureState::normalized(v).amplitudes().norm(), 1.0, 1e-15);
    EXPECT_THROW(PureState::normalized(CVector::Zero(2)), std::invalid_argument);
}

TEST(Measurement, PauliXZProjectors) {
    const ProjectiveMeasurement z = pauli_xz_measurement(BlochAngle(0.0));
    EXPECT_NEAR((z.projector(0) - CMatrix(Eigen::Matrix2cd{{1, 0}, {0, 0}})).norm(), 0.0, 1e-12);
    EXPECT_NEAR((z.projector(1) - CMatrix(Eigen::Matrix2cd{{0, 0}, {0, 1}})).norm(), 0.0, 1e-12);

    const ProjectiveMeasurement x = pauli_xz_measurement(BlochAngle(kPi / 2));
    EXPECT_NEAR((x.projector(0) - CMatrix(Eigen::Matrix2cd{{0.5, 0.5}, {0.5, 0.5}})).norm(), 0.0, 1e-12);
    EXPECT_NEAR((x.projector(1) - CMatrix(Eigen::Matrix2cd{{0.5, -0.5}, {-0.5, 0.5}})).norm(), 0.0, 1e-12);
}

TEST(Measurement, DiagonalBasisIsEigenbasisOfXPlusZ) {
    // (X+Z)/sqrt(2) eigenvectors by a plain 2x2 eigensolve.
    Eigen::Matrix2d h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
    const Eigen::Vector2d up = es.eigenvectors().col(1);  // eigenvalue +1
    const Eigen::Vector2d down = es.eigenvectors().col(0);

    const ProjectiveMeasurement m = pauli_xz_measurement(BlochAngle(kPi / 4));
    const Eigen::Matrix2d p_up = up * up.transpose();
    const Eigen::Matrix2d p_down = down * down.transpose();
    EXPECT_NEAR((m.projector(0).real() - p_up).norm(), 0.0, 1e-12);
    EXPECT_NEAR((m.projector(1).real() - p_down).norm(), 0.0, 1e-12);
}

TEST(Measurement, RejectsIncompleteOrOverlappingProjectors) {
    const CMatrix p0 = Eigen::Matrix2cd{{1, 0}, {0, 0}};
    EXPECT_THROW(ProjectiveMeasurement({p0}), std::invalid_argument);
    EXPECT_THROW(ProjectiveMeasurement({p0, p0}), std::invalid_argument);
}

TEST(Born, ReferenceValues) {
    const auto z = pauli_xz_measurement(BlochAngle(0.0));
    const auto x = pauli_xz_measurement(BlochAngle(kPi / 2));
    const auto p0 = born(PureState::basis(2, 0), z);
    EXPECT_NEAR(p0[0], 1.0, 1e-12);
    EXPECT_NEAR(p0[1], 0.0, 1e-12);

    const auto p = born(DensityOperator::from_pure(make_bloch_state(BlochAngle(kPi / 4))), x);
    EXPECT_NEAR(p[0], (2 + std::sqrt(2.0)) / 4, 1e-12);
    EXPECT_NEAR(p[1], (2 - std::sqrt(2.0)) / 4, 1e-12);

    const auto mixed = born(DensityOperator::maximally_mixed(2), pauli_xz_measurement(BlochAngle(1.234)));
    EXPECT_NEAR(mixed[0], 0.5, 1e-12);
    EXPECT_NEAR(mixed[1], 0.5, 1e-12);
}

TEST(Tensor, ProductsAndIdentity) {
    expect_amplitudes(tensor(PureState::basis(2, 0), PureState::basis(2, 1)), {0.0, 1.0, 0.0, 0.0});
    EXPECT_NEAR((tensor(UnitaryOp::identity(2), UnitaryOp::identity(2)).matrix() - CMatrix::Identity(4, 4)).norm(),
                0.0, 1e-15);
    CVector s = tensor(PureState::basis(2, 0), PureState::basis(2, 1)).amplitudes() -
                tensor(PureState::basis(2, 1), PureState::basis(2, 0)).amplitudes();
    s /= std::sqrt(2.0);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    expect_amplitudes(PureState(s), {0.0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0.0});
}

TEST(Dilation, ComputationalBasisActsLikeCnot) {
    const UnitaryOp u = measurement_dilation(pauli_xz_measurement(BlochAngle(0.0)));
    const PureState out = u.apply(tensor(plus(), PureState::basis(2, 0)));
    const double r = 1 / std::sqrt(2.0);
    expect_amplitudes(out, {r, 0.0, 0.0, r});
}

TEST(Dilation, UndoRestoresInput) {
    const UnitaryOp u = measurement_dilation(pauli_xz_measurement(BlochAngle(3 * kPi / 4)));
    const PureState in = tensor(make_bloch_state(BlochAngle(0.7)), PureState::basis(2, 0));
    EXPECT_GE(fidelity(u.adjoint().apply(u.apply(in)), in), 1 - 1e-12);
}

TEST(Dilation, BranchWeightsFollowOverlap) {
    const UnitaryOp u = measurement_dilation(pauli_xz_measurement(BlochAngle(3 * kPi / 4)));
    RegisterLayout layout;
    const auto s = layout.add("S", 2);
    const auto m = layout.add("M", 2);
    RegisterState st(layout, std::vector<std::pair<std::size_t, PureState>>{
                                 {s, make_bloch_state(BlochAngle(kPi / 4))}});
    st.apply(u, {s, m});
    const Distribution d = joint_born(st, {{"c", m, std::nullopt}});
    EXPECT_NEAR(d.probs()[0], oracle::bloch_overlap(3 * kPi / 4, kPi / 4), 1e-12);
    EXPECT_NEAR(d.probs()[0], 0.5, 1e-12);
    EXPECT_NEAR(d.probs()[1], 0.5, 1e-12);
}

TEST(Mix, AntipodalPairsAreMaximallyMixed) {
    for (double t : {kPi / 4, 3 * kPi / 4}) {
        const std::vector<std::pair<double, PureState>> pairs{{0.5, make_bloch_state(BlochAngle(t))},
                                                              {0.5, make_bloch_state(BlochAngle(t + kPi))}};
        EXPECT_NEAR((mix(pairs).matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 0.0, 1e-12);
    }
    const std::vector<std::pair<double, PureState>> pure{{1.0, make_bloch_state(BlochAngle(kPi / 4))}};
    const CMatrix rho = mix(pure).matrix();
    const CVector v = make_bloch_state(BlochAngle(kPi / 4)).amplitudes();
    EXPECT_NEAR((rho - v * v.adjoint()).norm(), 0.0, 1e-12);
}

TEST(Mix, RejectsBadWeights) {
    const std::vector<std::pair<double, PureState>> bad{{0.7, PureState::basis(2, 0)}, {0.7, PureState::basis(2, 1)}};
    EXPECT_THROW(mix(bad), std::invalid_argument);
}

TEST(TraceDistance, AgreesWithClosedForm) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const double t = oracle::random_angle(rng);
        const double u = oracle::random_angle(rng);
        const auto rho = DensityOperator::from_pure(make_bloch_state(BlochAngle(t)));
        const auto sigma = DensityOperator::from_pure(make_bloch_state(BlochAngle(u)));
        const auto real4 = [](const CMatrix &m) {
            return std::array<double, 4>{m(0, 0).real(), m(0, 1).real(), m(1, 0).real(), m(1, 1).real()};
        };
        EXPECT_NEAR(trace_distance(rho, sigma), oracle::qubit_trace_distance(real4(rho.matrix()), real4(sigma.matrix())),
                    1e-12);
        EXPECT_NEAR(trace_distance(rho, sigma), std::abs(std::sin((t - u) / 2)), 1e-12);
    }
}

TEST(YRotation, ShiftsBlochAngle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const double t = oracle::random_angle(rng);
        const double phi = oracle::random_angle(rng) - kPi;
        const PureState rotated = y_rotation(phi).apply(make_bloch_state(BlochAngle(t)));
        EXPECT_GE(fidelity(rotated, make_bloch_state(BlochAngle(t + phi))), 1 - 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Randomized invariants.

TEST(QuantumInvariants, UnitarityOfDilationsAndRotations) {
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 100; ++i) {
        const UnitaryOp u = measurement_dilation(pauli_xz_measurement(BlochAngle(oracle::random_angle(rng))));
        EXPECT_NEAR((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0, 1e-12);
        const UnitaryOp r = y_rotation(oracle::random_angle(rng));
        EXPECT_NEAR((r.matrix().adjoint() * r.matrix() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    }
}

TEST(QuantumInvariants, BornNormalization) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        CVector v(4);
        for (int k = 0; k < 4; ++k) {
            v(k) = Complex(g(rng), g(rng));
        }
        const PureState s = PureState::normalized(v);
        EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
        const auto p = born(s, ProjectiveMeasurement::computational(4));
        double total = 0.0;
        for (double x : p) {
            EXPECT_GE(x, 0.0);
            total += x;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(QuantumInvariants, DilationUndoFidelity) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const UnitaryOp u = measurement_dilation(pauli_xz_measurement(BlochAngle(oracle::random_angle(rng))));
        const PureState in = tensor(make_bloch_state(BlochAngle(oracle::random_angle(rng))), PureState::basis(2, 0));
        EXPECT_GE(fidelity(u.adjoint().apply(u.apply(in)), in), 1 - 1e-12);
    }
}

TEST(QuantumInvariants, OverlapLaw) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const double t = oracle::random_angle(rng);
        const double u = oracle::random_angle(rng);
        const double want = std::pow(std::cos((t - u) / 2), 2);
        EXPECT_NEAR(fidelity(make_bloch_state(BlochAngle(t)), make_bloch_state(BlochAngle(u))), want, 1e-12);
        EXPECT_NEAR(oracle::bloch_overlap(t, u), want, 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Registers.

TEST(Registers, DigitsAreMostSignificantFirst) {
    RegisterLayout l;
    l.add("A", 2);
    l.add("B", 3);
    EXPECT_EQ(l.total_dim(), 6u);
    EXPECT_EQ(l.digit(4, 0), 1u);
    EXPECT_EQ(l.digit(4, 1), 1u);
    EXPECT_EQ(l.with_digit(4, 1, 2), 5u);
    EXPECT_EQ(l.index_of("B"), 1u);
    EXPECT_THROW(l.index_of("C"), std::out_of_range);
}

TEST(Registers, EmbedMatchesKroneckerOnAdjacentTargets) {
    RegisterLayout l;
    l.add("A", 2);
    l.add("B", 2);
    const CMatrix x = Eigen::Matrix2cd{{0, 1}, {1, 0}};
    EXPECT_NEAR((embed(x, l, {1}) - tensor(CMatrix(CMatrix::Identity(2, 2)), x)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((embed(x, l, {0}) - tensor(x, CMatrix(CMatrix::Identity(2, 2)))).norm(), 0.0, 1e-15);
}

TEST(Registers, ReversedTargetsSwapRoles) {
    RegisterLayout l;
    const auto a = l.add("A", 2);
    const auto b = l.add("B", 2);
    const UnitaryOp cnot = measurement_dilation(ProjectiveMeasurement::computational(2));
    RegisterState st(l, std::vector<std::pair<std::size_t, PureState>>{{b, PureState::basis(2, 1)}});
    st.apply(cnot, {b, a});  // control B, target A
    const Distribution d = joint_born(st, {{"a", a, std::nullopt}, {"b", b, std::nullopt}});
    EXPECT_NEAR(d.probs()[3], 1.0, 1e-12);
}

TEST(Registers, ReducedAndConditionedStates) {
    RegisterLayout l;
    const auto s = l.add("S", 2);
    const auto m = l.add("M", 2);
    RegisterState st(l, std::vector<std::pair<std::size_t, PureState>>{{s, plus()}});
    st.apply(measurement_dilation(ProjectiveMeasurement::computational(2)), {s, m});
    const auto rho = st.reduced({s});
    ASSERT_TRUE(rho);
    EXPECT_NEAR((rho->matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 0.0, 1e-12);
    const auto cond = st.reduced({s}, {{m, 1}});
    ASSERT_TRUE(cond);
    EXPECT_NEAR(cond->matrix()(1, 1).real(), 1.0, 1e-12);

    RegisterState zero(l);
    EXPECT_FALSE(zero.reduced({s}, {{m, 1}}).has_value());
}

TEST(Registers, JointBornRejectsSharedRegisters) {
    RegisterLayout l;
    const auto s = l.add("S", 2);
    RegisterState st(l);
    EXPECT_THROW(joint_born(st, {{"a", s, std::nullopt}, {"b", s, std::nullopt}}), std::invalid_argument);
}

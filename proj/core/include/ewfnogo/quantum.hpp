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

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ewfnogo/angle.hpp"

namespace ewfnogo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for exact algebraic identities (normalization, unitarity, ...).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for anything that has been through a linear program.
inline constexpr double kLpTol = 1e-9;

/// Normalized state vector. Squared norm is 1 within kAlgebraTol.
class PureState {
public:
    /// Throws std::invalid_argument unless `amplitudes` has unit norm.
    explicit PureState(CVector amplitudes);

    /// Rescales `amplitudes` to unit norm. Throws on the zero vector.
    static PureState normalized(CVector amplitudes);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector &amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

private:
    CVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite (eigenvalues >= -1e-10).
class DensityOperator {
public:
    explicit DensityOperator(CMatrix matrix);
    static DensityOperator from_pure(const PureState &state);
    static DensityOperator maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const CMatrix &matrix() const { return rho_; }

private:
    CMatrix rho_;
};

class UnitaryOp {
public:
    /// Throws std::invalid_argument unless U^dagger U = I entrywise within
    /// kAlgebraTol.
    explicit UnitaryOp(CMatrix matrix);
    static UnitaryOp identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(u_.rows()); }
    const CMatrix &matrix() const { return u_; }
    UnitaryOp adjoint() const;

    PureState apply(const PureState &state) const;
    friend UnitaryOp operator*(const UnitaryOp &lhs, const UnitaryOp &rhs);

private:
    CMatrix u_;
};

/// Complete set of orthogonal projectors, one per outcome label.
class ProjectiveMeasurement {
public:
    explicit ProjectiveMeasurement(std::vector<CMatrix> projectors);

    /// Rank-1 measurement onto an orthonormal basis, outcome k <-> basis[k].
    static ProjectiveMeasurement from_basis(std::span<const PureState> basis);
    /// The computational basis of a `dim`-level register.
    static ProjectiveMeasurement computational(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t outcomes() const { return projectors_.size(); }
    const CMatrix &projector(std::size_t k) const { return projectors_.at(k); }
    const std::vector<CMatrix> &projectors() const { return projectors_; }

private:
    std::size_t dim_;
    std::vector<CMatrix> projectors_;
};

// --- constructors for the qubit x-z plane ---------------------------------

/// cos(theta/2)|0> + sin(theta/2)|1>.
PureState make_bloch_state(BlochAngle theta);

/// Measurement of the observable cos(angle) Z + sin(angle) X. Outcome 0 is the
/// +1 eigenvector make_bloch_state(angle), outcome 1 is make_bloch_state(angle + pi).
ProjectiveMeasurement pauli_xz_measurement(BlochAngle angle);

/// Rotation about the Bloch y-axis that maps Bloch angle theta to theta + phi:
/// rows (cos(phi/2), -sin(phi/2)) and (sin(phi/2), cos(phi/2)).
UnitaryOp y_rotation(double phi);

// --- Born rule and friends ------------------------------------------------

std::vector<double> born(const DensityOperator &state, const ProjectiveMeasurement &meas);
std::vector<double> born(const PureState &state, const ProjectiveMeasurement &meas);

/// Kronecker product; joint index = i_a * dim_b + i_b.
PureState tensor(const PureState &a, const PureState &b);
CMatrix tensor(const CMatrix &a, const CMatrix &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);
UnitaryOp tensor(const UnitaryOp &a, const UnitaryOp &b);

/// Unitary on system (x) memory, with an n-level memory for an n-outcome
/// measurement, such that U(|psi>|0>) = sum_c (Pi_c|psi>)|c>. Completed on the
/// other memory states as U = sum_c Pi_c (x) Shift^c, Shift|m> = |m+1 mod n>.
UnitaryOp measurement_dilation(const ProjectiveMeasurement &meas);

/// sum_i w_i |psi_i><psi_i|. Weights must be nonnegative and sum to 1 within
/// kAlgebraTol; all states must share a dimension.
DensityOperator mix(std::span<const std::pair<double, PureState>> pairs);

/// |<a|b>|^2.
double fidelity(const PureState &a, const PureState &b);
/// (1/2) * trace norm of (a - b), from the eigenvalues of the difference.
double trace_distance(const DensityOperator &a, const DensityOperator &b);

}  // namespace ewfnogo

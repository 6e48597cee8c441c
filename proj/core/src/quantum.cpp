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

#include "ewfnogo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ewfnogo {

namespace {

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
}

}  // namespace

// --- PureState ----------------------------------------------------------------

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
}

PureState PureState::normalized(CVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("PureState: cannot normalize the zero vector");
    }
    return PureState(amplitudes / n);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("PureState::basis: index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

// --- DensityOperator ----------------------------------------------------------

DensityOperator::DensityOperator(CMatrix matrix) : rho_(std::move(matrix)) {
    require_square(rho_, "DensityOperator");
    if (max_abs(rho_ - rho_.adjoint()) > kAlgebraTol) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) > kAlgebraTol) {
        throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityOperator: matrix has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::from_pure(const PureState &state) {
    const CVector &v = state.amplitudes();
    return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityOperator(CMatrix::Identity(n, n) / static_cast<double>(dim));
}

// --- UnitaryOp ----------------------------------------------------------------

UnitaryOp::UnitaryOp(CMatrix matrix) : u_(std::move(matrix)) {
    require_square(u_, "UnitaryOp");
    const CMatrix id = CMatrix::Identity(u_.rows(), u_.cols());
    if (max_abs(u_.adjoint() * u_ - id) > kAlgebraTol) {
        throw std::invalid_argument("UnitaryOp: matrix is not unitary");
    }
}

UnitaryOp UnitaryOp::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return UnitaryOp(CMatrix::Identity(n, n));
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(u_.adjoint()); }

PureState UnitaryOp::apply(const PureState &state) const {
    if (state.dim() != dim()) {
        throw std::invalid_argument("UnitaryOp::apply: dimension mismatch");
    }
    return PureState(u_ * state.amplitudes());
}

UnitaryOp operator*(const UnitaryOp &lhs, const UnitaryOp &rhs) {
    if (lhs.dim() != rhs.dim()) {
        throw std::invalid_argument("UnitaryOp product: dimension mismatch");
    }
    return UnitaryOp(lhs.u_ * rhs.u_);
}

// --- ProjectiveMeasurement ----------------------------------------------------

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<CMatrix> projectors)
    : dim_(0), projectors_(std::move(projectors)) {
    if (projectors_.empty()) {
        throw std::invalid_argument("ProjectiveMeasurement: no projectors");
    }
    require_square(projectors_.front(), "ProjectiveMeasurement");
    dim_ = static_cast<std::size_t>(projectors_.front().rows());
    const auto n = static_cast<Eigen::Index>(dim_);
    CMatrix sum = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const CMatrix &p = projectors_[i];
        if (p.rows() != n || p.cols() != n) {
            throw std::invalid_argument("ProjectiveMeasurement: projector dimension mismatch");
        }
        if (max_abs(p - p.adjoint()) > kAlgebraTol) {
            throw std::invalid_argument("ProjectiveMeasurement: projector is not Hermitian");
        }
        if (max_abs(p * p - p) > kAlgebraTol) {
            throw std::invalid_argument("ProjectiveMeasurement: projector is not idempotent");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (max_abs(p * projectors_[j]) > kAlgebraTol) {
                throw std::invalid_argument("ProjectiveMeasurement: projectors are not orthogonal");
            }
        }
        sum += p;
    }
    if (max_abs(sum - CMatrix::Identity(n, n)) > kAlgebraTol) {
        throw std::invalid_argument("ProjectiveMeasurement: projectors do not sum to identity");
    }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(std::span<const PureState> basis) {
    std::vector<CMatrix> projectors;
    projectors.reserve(basis.size());
    for (const PureState &s : basis) {
        projectors.push_back(s.amplitudes() * s.amplitudes().adjoint());
    }
    return ProjectiveMeasurement(std::move(projectors));
}

ProjectiveMeasurement ProjectiveMeasurement::computational(std::size_t dim) {
    std::vector<PureState> basis;
    for (std::size_t k = 0; k < dim; ++k) {
        basis.push_back(PureState::basis(dim, k));
    }
    return from_basis(basis);
}

// --- qubit x-z plane ----------------------------------------------------------

PureState make_bloch_state(BlochAngle theta) {
    CVector v(2);
    v << std::cos(theta.radians() / 2), std::sin(theta.radians() / 2);
    return PureState(std::move(v));
}

ProjectiveMeasurement pauli_xz_measurement(BlochAngle angle) {
    const PureState basis[] = {make_bloch_state(angle), make_bloch_state(BlochAngle(angle.radians() + kPi))};
    return ProjectiveMeasurement::from_basis(basis);
}

UnitaryOp y_rotation(double phi) {
    CMatrix r(2, 2);
    r << std::cos(phi / 2), -std::sin(phi / 2), std::sin(phi / 2), std::cos(phi / 2);
    return UnitaryOp(std::move(r));
}

// --- Born rule ----------------------------------------------------------------

std::vector<double> born(const DensityOperator &state, const ProjectiveMeasurement &meas) {
    if (state.dim() != meas.dim()) {
        throw std::invalid_argument("born: dimension mismatch between state and measurement");
    }
    std::vector<double> p;
    p.reserve(meas.outcomes());
    for (const CMatrix &proj : meas.projectors()) {
        p.push_back(std::max(0.0, (proj * state.matrix()).trace().real()));
    }
    return p;
}

std::vector<double> born(const PureState &state, const ProjectiveMeasurement &meas) {
    if (state.dim() != meas.dim()) {
        throw std::invalid_argument("born: dimension mismatch between state and measurement");
    }
    std::vector<double> p;
    p.reserve(meas.outcomes());
    const CVector &v = state.amplitudes();
    for (const CMatrix &proj : meas.projectors()) {
        p.push_back(std::max(0.0, v.dot(proj * v).real()));
    }
    return p;
}

// --- tensor products ----------------------------------------------------------

CMatrix tensor(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

PureState tensor(const PureState &a, const PureState &b) {
    return PureState(tensor(CMatrix(a.amplitudes()), CMatrix(b.amplitudes())).col(0));
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator(tensor(a.matrix(), b.matrix()));
}

UnitaryOp tensor(const UnitaryOp &a, const UnitaryOp &b) { return UnitaryOp(tensor(a.matrix(), b.matrix())); }

// --- dilation and mixtures ----------------------------------------------------

UnitaryOp measurement_dilation(const ProjectiveMeasurement &meas) {
    const auto n = static_cast<Eigen::Index>(meas.outcomes());
    CMatrix shift = CMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        shift((m + 1) % n, m) = 1.0;
    }
    const auto d = static_cast<Eigen::Index>(meas.dim());
    CMatrix u = CMatrix::Zero(d * n, d * n);
    CMatrix power = CMatrix::Identity(n, n);
    for (const CMatrix &proj : meas.projectors()) {
        u += tensor(proj, power);
        power = shift * power;
    }
    return UnitaryOp(std::move(u));
}

DensityOperator mix(std::span<const std::pair<double, PureState>> pairs) {
    if (pairs.empty()) {
        throw std::invalid_argument("mix: empty ensemble");
    }
    const auto n = static_cast<Eigen::Index>(pairs.front().second.dim());
    CMatrix rho = CMatrix::Zero(n, n);
    double total = 0.0;
    for (const auto &[w, s] : pairs) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("mix: negative weight");
        }
        if (static_cast<Eigen::Index>(s.dim()) != n) {
            throw std::invalid_argument("mix: states of different dimension");
        }
        rho += w * (s.amplitudes() * s.amplitudes().adjoint());
        total += w;
    }
    if (std::abs(total - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("mix: weights do not sum to 1");
    }
    return DensityOperator(std::move(rho));
}

double fidelity(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double trace_distance(const DensityOperator &a, const DensityOperator &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    const CMatrix diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace ewfnogo

// Copyright 2026 The superrep Authors
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

#include "superrep/qmat.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace superrep {

namespace {

Tolerances g_tolerances;

void check_register(int qubits) {
    if (qubits > g_tolerances.register_cap) {
        throw Error(ErrorCode::capacity, "register of " + std::to_string(qubits) + " qubits exceeds the cap of " +
                                             std::to_string(g_tolerances.register_cap));
    }
}

}  // namespace

const Tolerances &tolerances() {
    return g_tolerances;
}

void set_tolerances(const Tolerances &t) {
    g_tolerances = t;
}

int qubit_count_for_dim(Eigen::Index dim) {
    if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
        throw Error(ErrorCode::invalid_argument, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

Operator::Operator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw Error(ErrorCode::invalid_argument, "operator matrix must be square");
    }
    qubits_ = qubit_count_for_dim(m_.rows());
    check_register(qubits_);
}

Operator Operator::identity(int qubits) {
    check_register(qubits);
    return Operator(Matrix::Identity(Eigen::Index{1} << qubits, Eigen::Index{1} << qubits));
}

bool Operator::is_unitary(double tol) const {
    Matrix d = m_.adjoint() * m_ - Matrix::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff() < tol;
}

Operator Operator::adjoint() const {
    return Operator(m_.adjoint());
}

Operator Operator::operator*(const Operator &other) const {
    if (dim() != other.dim()) {
        throw Error(ErrorCode::invalid_argument, "operator dimension mismatch in product");
    }
    return Operator(m_ * other.m_);
}

Operator Operator::scaled(cplx factor) const {
    return Operator(m_ * factor);
}

Operator kron(const Operator &a, const Operator &b) {
    const Matrix &x = a.matrix();
    const Matrix &y = b.matrix();
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return Operator(std::move(out));
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Operator on_qubit(const Operator &gate, int qubit, int qubits) {
    if (gate.qubits() != 1 || qubit < 0 || qubit >= qubits) {
        throw Error(ErrorCode::invalid_argument, "on_qubit expects a single-qubit gate and a qubit inside the register");
    }
    Operator out = qubit == 0 ? gate : Operator::identity(qubit);
    if (qubit != 0) {
        out = kron(out, gate);
    }
    if (qubit + 1 < qubits) {
        out = kron(out, Operator::identity(qubits - qubit - 1));
    }
    return out;
}

bool equal_up_to_phase(const Operator &a, const Operator &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    double na = a.matrix().norm();
    double nb = b.matrix().norm();
    if (std::abs(na - nb) > tol * std::max(1.0, na)) {
        return false;
    }
    if (na == 0.0) {
        return true;
    }
    double overlap = std::abs((a.matrix().adjoint() * b.matrix()).trace()) / (na * nb);
    return overlap >= 1.0 - tol;
}

BasisIndex::BasisIndex(std::uint64_t value, int width) : value_(value), width_(width) {
    if (width < 0 || width > 63 || value >= (std::uint64_t{1} << width)) {
        throw Error(ErrorCode::invalid_argument, "basis index out of range for its width");
    }
}

int hamming_weight(BasisIndex m) {
    return std::popcount(m.value());
}

QuantumState QuantumState::pure(Vector psi) {
    QuantumState s;
    s.qubits_ = qubit_count_for_dim(psi.size());
    if (std::abs(psi.norm() - 1.0) > g_tolerances.normalization) {
        throw Error(ErrorCode::invalid_argument, "pure state is not normalized");
    }
    s.kind_ = StateKind::pure;
    s.psi_ = std::move(psi);
    return s;
}

QuantumState QuantumState::subnormalized(Matrix rho) {
    if (rho.rows() != rho.cols()) {
        throw Error(ErrorCode::invalid_argument, "density matrix must be square");
    }
    QuantumState s;
    s.qubits_ = qubit_count_for_dim(rho.rows());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > g_tolerances.hermiticity) {
        throw Error(ErrorCode::invalid_argument, "density matrix is not Hermitian");
    }
    s.kind_ = StateKind::mixed;
    s.rho_ = std::move(rho);
    return s;
}

QuantumState QuantumState::mixed(Matrix rho) {
    QuantumState s = subnormalized(std::move(rho));
    if (std::abs(s.rho_.trace().real() - 1.0) > g_tolerances.normalization) {
        throw Error(ErrorCode::invalid_argument, "density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -g_tolerances.eigenvalue) {
        throw Error(ErrorCode::invalid_argument, "density matrix has a negative eigenvalue");
    }
    return s;
}

const Vector &QuantumState::vector() const {
    if (kind_ != StateKind::pure) {
        throw Error(ErrorCode::invalid_argument, "state is not pure");
    }
    return psi_;
}

Matrix QuantumState::density() const {
    if (kind_ == StateKind::pure) {
        return psi_ * psi_.adjoint();
    }
    return rho_;
}

double QuantumState::trace() const {
    return kind_ == StateKind::pure ? psi_.squaredNorm() : rho_.trace().real();
}

QuantumState apply(const Operator &u, const QuantumState &state) {
    if (u.dim() != state.dim()) {
        throw Error(ErrorCode::invalid_argument, "operator and state dimensions differ");
    }
    if (state.kind() == StateKind::pure) {
        Vector out = u.matrix() * state.vector();
        double n = out.norm();
        if (std::abs(n - 1.0) <= g_tolerances.normalization * 10) {
            return QuantumState::pure(out / n);
        }
        return QuantumState::subnormalized(out * out.adjoint());
    }
    Matrix rho = u.matrix() * state.density() * u.matrix().adjoint();
    return QuantumState::subnormalized(0.5 * (rho + rho.adjoint()));
}

double state_fidelity(const QuantumState &a, const QuantumState &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::invalid_argument, "state dimensions differ");
    }
    if (a.kind() == StateKind::pure && b.kind() == StateKind::pure) {
        return std::norm(a.vector().dot(b.vector()));
    }
    if (a.kind() == StateKind::pure) {
        return (a.vector().adjoint() * b.density() * a.vector())(0, 0).real();
    }
    if (b.kind() == StateKind::pure) {
        return (b.vector().adjoint() * a.density() * b.vector())(0, 0).real();
    }
    // Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2. Eigenvalues at round-off
    // level are dropped; their square roots would otherwise add ~1e-8.
    auto clipped_sqrt = [](const Eigen::VectorXd &ev) {
        const double floor = 1e-13 * std::max(ev.maxCoeff(), 0.0);
        return ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; }).eval();
    };
    Eigen::SelfAdjointEigenSolver<Matrix> ea(a.density());
    Matrix sa = ea.eigenvectors() * clipped_sqrt(ea.eigenvalues()).asDiagonal() * ea.eigenvectors().adjoint();
    Matrix m = sa * b.density() * sa;
    Eigen::SelfAdjointEigenSolver<Matrix> em(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    double s = clipped_sqrt(em.eigenvalues()).sum();
    return s * s;
}

QuantumState partial_trace(const QuantumState &state, std::span<const int> keep) {
    const int n = state.qubits();
    if (keep.empty()) {
        throw Error(ErrorCode::invalid_argument, "partial_trace needs at least one kept qubit");
    }
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 0 || kept.back() >= n) {
        throw Error(ErrorCode::invalid_argument, "kept qubits must be distinct register indices");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    const int nk = static_cast<int>(kept.size());
    const int nt = static_cast<int>(traced.size());
    auto compose = [&](std::uint64_t k, std::uint64_t t) {
        std::uint64_t full = 0;
        for (int i = 0; i < nk; ++i) {
            if ((k >> (nk - 1 - i)) & 1) {
                full |= std::uint64_t{1} << (n - 1 - kept[i]);
            }
        }
        for (int i = 0; i < nt; ++i) {
            if ((t >> (nt - 1 - i)) & 1) {
                full |= std::uint64_t{1} << (n - 1 - traced[i]);
            }
        }
        return static_cast<Eigen::Index>(full);
    };
    const Eigen::Index dk = Eigen::Index{1} << nk;
    const Eigen::Index dt = Eigen::Index{1} << nt;
    Matrix reduced = Matrix::Zero(dk, dk);
    if (state.kind() == StateKind::pure) {
        const Vector &psi = state.vector();
        for (Eigen::Index t = 0; t < dt; ++t) {
            Vector slice(dk);
            for (Eigen::Index k = 0; k < dk; ++k) {
                slice(k) = psi(compose(k, t));
            }
            reduced += slice * slice.adjoint();
        }
    } else {
        Matrix rho = state.density();
        for (Eigen::Index a = 0; a < dk; ++a) {
            for (Eigen::Index b = 0; b < dk; ++b) {
                cplx acc = 0;
                for (Eigen::Index t = 0; t < dt; ++t) {
                    acc += rho(compose(a, t), compose(b, t));
                }
                reduced(a, b) = acc;
            }
        }
    }
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    if (std::abs(state.trace() - 1.0) <= g_tolerances.normalization) {
        return QuantumState::mixed(std::move(reduced));
    }
    return QuantumState::subnormalized(std::move(reduced));
}

Vector single_qubit_ket(Projector p) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    Vector v(2);
    switch (p) {
        case Projector::zero:
            v << 1, 0;
            break;
        case Projector::one:
            v << 0, 1;
            break;
        case Projector::plus:
            v << s, s;
            break;
        case Projector::minus:
            v << s, -s;
            break;
        case Projector::plus_i:
            v << s, i * s;
            break;
        case Projector::minus_i:
            v << s, -i * s;
            break;
    }
    return v;
}

Projection project_and_renormalize(const QuantumState &state, int qubit, Projector projector) {
    const int n = state.qubits();
    if (qubit < 0 || qubit >= n) {
        throw Error(ErrorCode::invalid_argument, "projected qubit outside the register");
    }
    Vector ket = single_qubit_ket(projector);
    Operator p = on_qubit(Operator(ket * ket.adjoint()), qubit, n);
    constexpr double kImpossible = 1e-14;
    if (state.kind() == StateKind::pure) {
        Vector out = p.matrix() * state.vector();
        double prob = out.squaredNorm();
        if (prob < kImpossible) {
            throw Error(ErrorCode::impossible_outcome, "impossible outcome: projection has zero probability");
        }
        return {QuantumState::pure(out / std::sqrt(prob)), std::min(prob, 1.0)};
    }
    Matrix rho = p.matrix() * state.density() * p.matrix();
    double prob = rho.trace().real();
    if (prob < kImpossible) {
        throw Error(ErrorCode::impossible_outcome, "impossible outcome: projection has zero probability");
    }
    rho /= prob;
    return {QuantumState::mixed(0.5 * (rho + rho.adjoint())), std::min(prob, 1.0)};
}

}  // namespace superrep

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

#include "superrep/gates.h"

#include <cmath>

namespace superrep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// <a|_anc W |0>_anc for a 3-qubit W with the ancilla as qubit 2.
Operator ancilla_branch(const Operator &w, const Vector &ancilla_ket) {
    Matrix k = Matrix::Zero(4, 4);
    for (Eigen::Index out = 0; out < 4; ++out) {
        for (Eigen::Index in = 0; in < 4; ++in) {
            cplx acc = 0;
            for (Eigen::Index a = 0; a < 2; ++a) {
                acc += std::conj(ancilla_ket(a)) * w(2 * out + a, 2 * in);
            }
            k(out, in) = acc;
        }
    }
    return Operator(std::move(k));
}

void require_two_qubit_pure(const QuantumState &psi) {
    if (psi.kind() != StateKind::pure || psi.qubits() != 2) {
        throw Error(ErrorCode::invalid_argument, "replication input must be a pure two-qubit state");
    }
}

Operator two_copies(PhaseAngle phi) {
    Operator u = phase_gate(phi);
    return kron(u, u);
}

}  // namespace

PhaseAngle::PhaseAngle(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    radians_ = r;
}

Operator phase_gate(PhaseAngle phi) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, phi.radians());
    return Operator(std::move(m));
}

Operator hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << s, s, s, -s;
    return Operator(std::move(m));
}

Operator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(std::move(m));
}

Operator pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(std::move(m));
}

Operator controlled(const Operator &gate, int control, int target, int qubits) {
    if (gate.qubits() != 1 || control == target || control < 0 || target < 0 || control >= qubits ||
        target >= qubits) {
        throw Error(ErrorCode::invalid_argument, "controlled: invalid control/target assignment");
    }
    const Eigen::Index d = Eigen::Index{1} << qubits;
    const Eigen::Index cmask = Eigen::Index{1} << (qubits - 1 - control);
    const Eigen::Index tmask = Eigen::Index{1} << (qubits - 1 - target);
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index in = 0; in < d; ++in) {
        if (!(in & cmask)) {
            m(in, in) = 1.0;
            continue;
        }
        const int tb = (in & tmask) ? 1 : 0;
        for (int ob = 0; ob < 2; ++ob) {
            Eigen::Index out = ob ? (in | tmask) : (in & ~tmask);
            m(out, in) += gate(ob, tb);
        }
    }
    return Operator(std::move(m));
}

Operator toffoli() {
    Matrix m = Matrix::Identity(8, 8);
    m(6, 6) = 0;
    m(7, 7) = 0;
    m(6, 7) = 1;
    m(7, 6) = 1;
    return Operator(std::move(m));
}

Operator cu_phase(PhaseAngle phi) {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = std::polar(1.0, phi.radians());
    return Operator(std::move(m));
}

Operator controlled_z() {
    return cu_phase(PhaseAngle(std::numbers::pi));
}

QuantumState replicate_unitary_form(PhaseAngle phi, const QuantumState &psi_in) {
    require_two_qubit_pure(psi_in);
    const Operator t = toffoli();
    const Operator w = t * on_qubit(phase_gate(phi), 2, 3) * t;
    Vector out = w.matrix() * kron(psi_in.vector(), single_qubit_ket(Projector::zero));

    QuantumState joint = QuantumState::pure(out / out.norm());
    const int ancilla[] = {2};
    QuantumState anc = partial_trace(joint, ancilla);
    double overlap = state_fidelity(anc, QuantumState::pure(single_qubit_ket(Projector::zero)));
    if (overlap < 1.0 - 1e-10) {
        throw Error(ErrorCode::numerical, "ancilla failed to disentangle in the unitary replication circuit");
    }
    Vector signal(4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        signal(i) = out(2 * i);
    }
    return QuantumState::pure(signal / signal.norm());
}

std::array<ReplicationOutcome, 2> replicate_measured_form(PhaseAngle phi, const QuantumState &psi_in,
                                                          bool apply_feedforward) {
    require_two_qubit_pure(psi_in);
    const Operator w = on_qubit(phase_gate(phi), 2, 3) * toffoli();
    auto branch = [&](Branch b) {
        Operator k = ancilla_branch(w, single_qubit_ket(b == Branch::plus ? Projector::plus : Projector::minus));
        if (apply_feedforward && b == Branch::minus) {
            k = controlled_z() * k;
        }
        Vector out = k.matrix() * psi_in.vector();
        double p = out.squaredNorm();
        return ReplicationOutcome{b, k, p, QuantumState::pure(out / std::sqrt(p))};
    };
    return {branch(Branch::plus), branch(Branch::minus)};
}

double fidelity_replicas(PhaseAngle phi) {
    return gate_fidelity(cu_phase(phi), two_copies(phi));
}

double twirled_mean_fidelity(int grid_size, PhaseAngle phi) {
    if (grid_size < 2) {
        throw Error(ErrorCode::invalid_argument, "twirling grid needs at least two points");
    }
    const Operator target = two_copies(phi);
    double acc = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        PhaseAngle theta(kTwoPi * j / grid_size);
        // Ancilla sees U(phi)U(theta); outputs are rotated back by U(theta)^dag on each qubit.
        Operator realised = two_copies(theta).adjoint() * cu_phase(phi + theta);
        acc += gate_fidelity(realised, target);
    }
    return acc / grid_size;
}

double baseline_single_copy(PhaseAngle phi) {
    Operator u = phase_gate(phi);
    return gate_fidelity(kron(u, Operator::identity(1)), kron(u, u));
}

double baseline_single_copy_mean(int grid_size) {
    if (grid_size < 2) {
        throw Error(ErrorCode::invalid_argument, "averaging grid needs at least two points");
    }
    double acc = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        acc += baseline_single_copy(PhaseAngle(kTwoPi * j / grid_size));
    }
    return acc / grid_size;
}

double measure_prepare_integrand(double delta) {
    // Covariant estimation from U(phi)|+>: density of phi_E is |<+|U(delta)|+>|^2 / pi.
    Vector plus = single_qubit_ket(Projector::plus);
    double overlap = std::norm(plus.dot(phase_gate(PhaseAngle(delta)).matrix() * plus));
    double density = overlap / std::numbers::pi;
    double fidelity = gate_fidelity(two_copies(PhaseAngle(delta)), Operator::identity(2));
    return density * fidelity;
}

double baseline_measure_prepare(int intervals) {
    if (intervals < 2 || intervals % 2 != 0) {
        throw Error(ErrorCode::invalid_argument, "Simpson integration needs an even number of intervals");
    }
    const double a = -std::numbers::pi;
    const double h = kTwoPi / intervals;
    double acc = measure_prepare_integrand(a) + measure_prepare_integrand(-a);
    for (int i = 1; i < intervals; ++i) {
        acc += (i % 2 ? 4.0 : 2.0) * measure_prepare_integrand(a + i * h);
    }
    return acc * h / 3.0;
}

ProcessMatrix ClonerMap::process() const {
    return choi_from_kraus(branch_operators);
}

ClonerMap optimal_cloner(PhaseAngle phi, ClonerForm form) {
    const Operator h = hadamard();
    const Operator x = pauli_x();
    Operator w = on_qubit(phase_gate(phi), 2, 3) * toffoli() * controlled(h, 1, 2, 3) * controlled(h, 0, 2, 3);
    if (form == ClonerForm::cnot) {
        w = controlled(x, 1, 2, 3) * controlled(x, 0, 2, 3) * w;
        return ClonerMap{{ancilla_branch(w, single_qubit_ket(Projector::zero)),
                          ancilla_branch(w, single_qubit_ket(Projector::one))}};
    }
    const Operator zz = kron(pauli_z(), pauli_z());
    return ClonerMap{{ancilla_branch(w, single_qubit_ket(Projector::plus)),
                      zz * ancilla_branch(w, single_qubit_ket(Projector::minus))}};
}

double optimal_cloner_fidelity(PhaseAngle phi) {
    return process_fidelity(optimal_cloner(phi).process(), two_copies(phi));
}

double optimal_cloner_mean_fidelity(int grid_size) {
    if (grid_size < 2) {
        throw Error(ErrorCode::invalid_argument, "averaging grid needs at least two points");
    }
    double acc = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        acc += optimal_cloner_fidelity(PhaseAngle(kTwoPi * j / grid_size));
    }
    return acc / grid_size;
}

}  // namespace superrep

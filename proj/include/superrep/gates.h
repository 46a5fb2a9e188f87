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

#ifndef SUPERREP_GATES_H
#define SUPERREP_GATES_H

#include <array>
#include <numbers>

#include "superrep/choi.h"
#include "superrep/qmat.h"

namespace superrep {

/// Phase in [0, 2pi), reduced on construction.
class PhaseAngle {
   public:
    constexpr PhaseAngle() = default;
    explicit PhaseAngle(double radians);
    double radians() const noexcept {
        return radians_;
    }
    PhaseAngle operator+(PhaseAngle other) const {
        return PhaseAngle(radians_ + other.radians_);
    }
    PhaseAngle operator-() const {
        return PhaseAngle(-radians_);
    }

   private:
    double radians_ = 0.0;
};

Operator phase_gate(PhaseAngle phi);
Operator hadamard();
Operator pauli_x();
Operator pauli_z();

/// Applies `gate` to `target` when `control` is |1>, on an n-qubit register.
Operator controlled(const Operator &gate, int control, int target, int qubits);

/// Flips qubit 2 iff qubits 0 and 1 are both |1>.
Operator toffoli();
Operator cu_phase(PhaseAngle phi);
Operator controlled_z();

/// Unitary form: Toffoli, phase gate on the ancilla, Toffoli. The ancilla enters
/// and leaves in |0>; throws Error(numerical) if it fails to disentangle.
QuantumState replicate_unitary_form(PhaseAngle phi, const QuantumState &psi_in);

enum class Branch { plus, minus };

struct ReplicationOutcome {
    Branch branch;
    /// Two-qubit map realised on the signal qubits in this branch, including
    /// the 1/sqrt(2) branch amplitude.
    Operator effective_operator;
    double branch_probability;
    QuantumState output;
};

/// Measured form: Toffoli, phase gate on the ancilla, ancilla measured in |+-> with
/// an optional controlled-Z correction on the minus branch.
std::array<ReplicationOutcome, 2> replicate_measured_form(PhaseAngle phi, const QuantumState &psi_in,
                                                          bool apply_feedforward);

/// Gate fidelity of cu_phase(phi) with U(phi) (x) U(phi).
double fidelity_replicas(PhaseAngle phi);

/// Fidelity after twirling with a uniform grid of random phase shifts theta:
/// U(theta) on the ancilla, U(theta)^dag (x) U(theta)^dag on the outputs.
double twirled_mean_fidelity(int grid_size, PhaseAngle phi = PhaseAngle{});

/// U(phi) on the first qubit, nothing on the second.
double baseline_single_copy(PhaseAngle phi);
double baseline_single_copy_mean(int grid_size);

/// Probe |+>, optimal covariant phase estimate, U(phi_E)^(x)2 on the outputs.
/// Integrand: p(delta) * F(delta), p = (1 + cos delta)/2pi, F = two-copy fidelity.
double measure_prepare_integrand(double delta);
double baseline_measure_prepare(int intervals = 4096);

enum class ClonerForm { cnot, measured_feedforward };

/// Optimal 1->2 phase-gate cloner. Circuit on (q0, q1, ancilla):
/// CH(q0->anc), CH(q1->anc), Toffoli, U(phi) on anc, then either
/// CNOT(q0->anc), CNOT(q1->anc) with the ancilla discarded, or a |+-> ancilla
/// measurement with a Z (x) Z correction on the minus outcome.
struct ClonerMap {
    std::array<Operator, 2> branch_operators;
    ProcessMatrix process() const;
};

ClonerMap optimal_cloner(PhaseAngle phi, ClonerForm form = ClonerForm::cnot);
double optimal_cloner_fidelity(PhaseAngle phi);
double optimal_cloner_mean_fidelity(int grid_size = 64);

/// (3 + 2 sqrt 2) / 8.
inline constexpr double kOptimalClonerFidelity = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;

}  // namespace superrep

#endif

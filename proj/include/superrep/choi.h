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

#ifndef SUPERREP_CHOI_H
#define SUPERREP_CHOI_H

#include <span>
#include <string>

#include "superrep/qmat.h"

namespace superrep {

/// How the Choi matrix is scaled.
///  raw       : chi = (I (x) R)(|Phi><Phi|), |Phi> normalized; Tr chi = Tr[sum K^dag K] / d.
///  trace_one : raw chi rescaled to unit trace (normalized conditional channel).
///  trace_dim : chi = sum_ij |i><j| (x) R(|i><j|), Tr chi = d for trace-preserving R.
enum class Normalization { raw, trace_one, trace_dim };

const char *to_string(Normalization n);

/// Choi representation of an n-qubit channel. The first tensor factor is
/// the reference (identity side), the second carries the channel.
class ProcessMatrix {
   public:
    ProcessMatrix(Matrix chi, Normalization normalization);

    const Matrix &chi() const noexcept {
        return chi_;
    }
    Normalization normalization() const noexcept {
        return normalization_;
    }
    int qubits() const noexcept {
        return qubits_;
    }
    Eigen::Index channel_dim() const noexcept {
        return Eigen::Index{1} << qubits_;
    }
    double trace() const;

    /// Copy rescaled to unit trace. Throws when Tr chi <= 0.
    ProcessMatrix normalized() const;
    double min_eigenvalue() const;

   private:
    Matrix chi_;
    Normalization normalization_;
    int qubits_;
};

/// |Phi_U> = (I (x) U)|Phi>, |Phi> = d^{-1/2} sum_m |m>|m>.
QuantumState choi_state(const Operator &u);

/// |Tr[U2^dag U1]|^2 / d^2.
double gate_fidelity(const Operator &u1, const Operator &u2);

/// |<Phi_U1|Phi_U2>|^2, the same quantity through the Choi states.
double choi_overlap_fidelity(const Operator &u1, const Operator &u2);

/// <Phi_U|chi|Phi_U> / Tr chi.
double process_fidelity(const ProcessMatrix &chi, const Operator &u);

/// Uhlmann fidelity between the unit-trace versions of two process matrices.
double process_overlap(const ProcessMatrix &a, const ProcessMatrix &b);

QuantumState apply_channel(const ProcessMatrix &chi, const QuantumState &rho);

ProcessMatrix choi_from_kraus(std::span<const Operator> kraus);

/// Multiplies output-side coherences between |0> and |1> of `qubit` by `factor`.
ProcessMatrix damp_output_coherence(const ProcessMatrix &chi, int qubit, double factor);

}  // namespace superrep

#endif

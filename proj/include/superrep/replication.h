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

#ifndef SUPERREP_REPLICATION_H
#define SUPERREP_REPLICATION_H

#include <cstdint>
#include <span>
#include <vector>

#include "superrep/gates.h"
#include "superrep/qmat.h"

namespace superrep {

/// N -> M replication request. The Hamming-weight window
/// [m_min, m_max) = [ceil((M-N)/2), ceil((M+N)/2)) is derived, never stored.
class ReplicationSpec {
   public:
    ReplicationSpec(int copies, int replicas);

    int copies() const noexcept {
        return copies_;
    }
    int replicas() const noexcept {
        return replicas_;
    }
    int m_min() const noexcept;
    int m_max() const noexcept;

    /// Phase multiple f(w) applied to basis states of Hamming weight w.
    int phase_multiple(int weight) const;

    /// Ancilla pattern k(m) for weight w in the window: the first
    /// w - m_min ancilla bits set (unary prefix). 0 below the window,
    /// 2^N - 1 from m_max upward.
    std::uint64_t ancilla_pattern(int weight) const;

   private:
    int copies_;
    int replicas_;
};

/// V|m>|n> = |m>|n XOR k(m)>, stored as a permutation of basis indices on
/// the (M + N)-qubit register (signal first, ancilla last). V is an involution.
class ImprintingUnitary {
   public:
    explicit ImprintingUnitary(const ReplicationSpec &spec);

    const ReplicationSpec &spec() const noexcept {
        return spec_;
    }
    int qubits() const noexcept {
        return spec_.copies() + spec_.replicas();
    }
    std::uint64_t dim() const noexcept {
        return std::uint64_t{1} << qubits();
    }
    std::uint64_t image(std::uint64_t index) const;
    const std::vector<std::uint64_t> &permutation() const noexcept {
        return image_;
    }
    Vector apply(const Vector &state) const;
    Operator to_operator() const;

   private:
    ReplicationSpec spec_;
    std::vector<std::uint64_t> image_;
};

/// Throws Error(capacity) when M + N exceeds the register cap.
ImprintingUnitary build_v(const ReplicationSpec &spec);

/// Diagonal of the induced M-qubit map: e^{i f(|m|) phi} at index m.
Vector replicated_map_diagonal(const ReplicationSpec &spec, PhaseAngle phi);
Operator replicated_map(const ReplicationSpec &spec, PhaseAngle phi);

/// V (I_A (x) U(phi)^{(x)N}) V simulated on every |m>|0>_B, returned as the
/// M-qubit block on the ancilla-|0> sector. Also reports the largest ancilla
/// weight left outside |0>_B (zero when the ancilla disentangles).
struct SectorBlock {
    Operator block;
    double leakage;
};
SectorBlock sandwich_sector(const ReplicationSpec &spec, PhaseAngle phi);

/// |2^{-M} sum_w C(M,w) e^{i (f(w) - w) phi}|^2 via log-space binomials and
/// compensated summation. No register cap.
double replication_fidelity(const ReplicationSpec &spec, PhaseAngle phi);

/// |Tr[U^{(x)M dag} D]|^2 / 4^M by explicit enumeration of all 2^M basis states.
double replication_fidelity_dense(const ReplicationSpec &spec, PhaseAngle phi);

struct ConvergenceRow {
    int copies;
    int replicas;
    double alpha;
    double worst_phi;
    double worst_fidelity;
    std::vector<double> phis;
    std::vector<double> fidelities;
};

/// Fidelity over `phi_grid` for one (N, M) pair; `alpha` is only recorded.
ConvergenceRow convergence_row(const ReplicationSpec &spec, double alpha, std::span<const double> phi_grid);

/// 2 - ln M / ln N, the exponent for which M = N^{2 - alpha}; NaN for N = 1.
double effective_alpha(int copies, int replicas);

/// M = floor(N^{2 - alpha}) for each N; worst case over `phi_grid`.
std::vector<ConvergenceRow> asymptotic_sweep(double alpha, std::span<const int> copies,
                                             std::span<const double> phi_grid);

/// Uniform grid of `points` phases on [0, 2pi).
std::vector<double> uniform_phase_grid(int points);

}  // namespace superrep

#endif

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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace superrep {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx I1{0.0, 1.0};

double eq9(double phi) {
    return (5.0 + 3.0 * std::cos(phi)) / 8.0;
}

Vector random_ket(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = cplx(n(rng), n(rng));
    }
    return v.normalized();
}

Vector basis(int index, int dim) {
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return v;
}

TEST(PhaseGate, Examples) {
    EXPECT_TRUE(phase_gate(PhaseAngle(0.0)).matrix().isApprox(Matrix::Identity(2, 2)));
    EXPECT_LT((phase_gate(PhaseAngle(kPi)).matrix() - pauli_z().matrix()).cwiseAbs().maxCoeff(), 1e-15);
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = I1;
    EXPECT_LT((phase_gate(PhaseAngle(kPi / 2)).matrix() - s).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PhaseAngle, ReducesModuloTwoPi) {
    EXPECT_NEAR(PhaseAngle(-kPi / 2).radians(), 3 * kPi / 2, 1e-15);
    EXPECT_NEAR(PhaseAngle(5 * kPi).radians(), kPi, 1e-14);
    EXPECT_NEAR((-PhaseAngle(kPi / 4)).radians(), 7 * kPi / 4, 1e-15);
}

TEST(Toffoli, FlipsOnlyWhenBothControlsSet) {
    const Operator t = toffoli();
    EXPECT_LT((t.matrix() * basis(0b110, 8) - basis(0b111, 8)).norm(), 1e-15);
    EXPECT_LT((t.matrix() * basis(0b010, 8) - basis(0b010, 8)).norm(), 1e-15);
    EXPECT_TRUE((t * t).matrix().isApprox(Matrix::Identity(8, 8)));
}

TEST(CuPhase, Examples) {
    EXPECT_TRUE(cu_phase(PhaseAngle(0.0)).matrix().isApprox(Matrix::Identity(4, 4)));
    EXPECT_LT((cu_phase(PhaseAngle(kPi)).matrix() - controlled_z().matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CuPhase, IsToffoliSandwichOnAncillaZero) {
    for (double phi : {0.3, 1.1, 2.5, 4.0}) {
        const Operator w = toffoli() * on_qubit(phase_gate(PhaseAngle(phi)), 2, 3) * toffoli();
        Matrix block(4, 4);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                block(r, c) = w(2 * r, 2 * c);
            }
        }
        EXPECT_LT((block - cu_phase(PhaseAngle(phi)).matrix()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Gates, AllUnitary) {
    for (double phi : {0.0, 0.4, kPi, 5.5}) {
        EXPECT_TRUE(phase_gate(PhaseAngle(phi)).is_unitary());
        EXPECT_TRUE(cu_phase(PhaseAngle(phi)).is_unitary());
    }
    EXPECT_TRUE(hadamard().is_unitary());
    EXPECT_TRUE(pauli_x().is_unitary());
    EXPECT_TRUE(pauli_z().is_unitary());
    EXPECT_TRUE(toffoli().is_unitary());
    EXPECT_TRUE(controlled_z().is_unitary());
    EXPECT_TRUE(controlled(hadamard(), 2, 0, 3).is_unitary());
}

TEST(Controlled, RejectsBadQubits) {
    EXPECT_THROW(controlled(pauli_x(), 1, 1, 2), Error);
    EXPECT_THROW(controlled(pauli_x(), 0, 2, 2), Error);
}

TEST(ReplicateUnitaryForm, Examples) {
    const QuantumState zero = QuantumState::pure(basis(0, 4));
    EXPECT_NEAR(state_fidelity(replicate_unitary_form(PhaseAngle(1.234), zero), zero), 1.0, 1e-14);

    Vector expected(4);
    expected << 0.5, 0.5, 0.5, -0.5;
    QuantumState out = replicate_unitary_form(PhaseAngle(kPi), QuantumState::pure(Vector::Constant(4, 0.5)));
    EXPECT_LT((out.vector() - expected).norm(), 1e-14);

    Vector in = Vector::Zero(4);
    in(1) = in(3) = 1.0 / std::sqrt(2.0);
    Vector want = Vector::Zero(4);
    want(1) = 1.0 / std::sqrt(2.0);
    want(3) = I1 / std::sqrt(2.0);
    out = replicate_unitary_form(PhaseAngle(kPi / 2), QuantumState::pure(in));
    EXPECT_LT((out.vector() - want).norm(), 1e-14);
}

TEST(ReplicateMeasuredForm, BranchesAreEquallyLikely) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int trial = 0; trial < 50; ++trial) {
        auto outcomes = replicate_measured_form(PhaseAngle(u(rng)), QuantumState::pure(random_ket(4, rng)), true);
        EXPECT_NEAR(outcomes[0].branch_probability, 0.5, 1e-12);
        EXPECT_NEAR(outcomes[1].branch_probability, 0.5, 1e-12);
    }
}

TEST(ReplicateMeasuredForm, PlusBranchMatchesUnitaryForm) {
    const QuantumState in = QuantumState::pure(Vector::Constant(4, 0.5));
    auto outcomes = replicate_measured_form(PhaseAngle(kPi), in, false);
    EXPECT_EQ(outcomes[0].branch, Branch::plus);
    EXPECT_NEAR(state_fidelity(outcomes[0].output, replicate_unitary_form(PhaseAngle(kPi), in)), 1.0, 1e-12);
}

TEST(ReplicateMeasuredForm, FeedForwardRestoresPlusBranch) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int trial = 0; trial < 100; ++trial) {
        const QuantumState in = QuantumState::pure(random_ket(4, rng));
        auto outcomes = replicate_measured_form(PhaseAngle(u(rng)), in, true);
        EXPECT_TRUE(equal_up_to_phase(outcomes[0].effective_operator, outcomes[1].effective_operator, 1e-10));
        EXPECT_NEAR(state_fidelity(outcomes[0].output, outcomes[1].output), 1.0, 1e-10);
    }
    auto uncorrected = replicate_measured_form(PhaseAngle(kPi / 2), QuantumState::pure(Vector::Constant(4, 0.5)),
                                               false);
    EXPECT_FALSE(equal_up_to_phase(uncorrected[0].effective_operator, uncorrected[1].effective_operator, 1e-6));
}

TEST(FidelityReplicas, Examples) {
    EXPECT_NEAR(fidelity_replicas(PhaseAngle(0.0)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_replicas(PhaseAngle(kPi)), 0.25, 1e-15);
    EXPECT_NEAR(fidelity_replicas(PhaseAngle(kPi / 2)), 0.625, 1e-15);
}

TEST(FidelityReplicas, CircuitMatchesClosedForm) {
    const QuantumState in = QuantumState::pure(Vector::Constant(4, 0.5));
    for (int k = 0; k < 64; ++k) {
        const double phi = 2 * kPi * k / 64;
        auto outcomes = replicate_measured_form(PhaseAngle(phi), in, true);
        const Operator effective = outcomes[0].effective_operator.scaled(std::sqrt(2.0));
        const Operator u = phase_gate(PhaseAngle(phi));
        EXPECT_NEAR(gate_fidelity(effective, kron(u, u)), eq9(phi), 1e-10) << "phi = " << phi;
    }
}

TEST(Twirling, MeanIsFiveEighthsForEveryPhase) {
    std::vector<double> values;
    for (int k = 0; k < 8; ++k) {
        values.push_back(twirled_mean_fidelity(360, PhaseAngle(k * kPi / 8)));
        EXPECT_NEAR(values.back(), 0.625, 1e-9);
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v / 8;
    }
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean) / 8;
    }
    EXPECT_LT(var, 1e-10);
    EXPECT_NEAR(twirled_mean_fidelity(2, PhaseAngle(0.9)), 0.625, 1e-12);
    EXPECT_THROW(twirled_mean_fidelity(1), Error);
}

TEST(Baselines, SingleCopy) {
    EXPECT_NEAR(baseline_single_copy(PhaseAngle(0.0)), 1.0, 1e-15);
    EXPECT_NEAR(baseline_single_copy(PhaseAngle(kPi)), 0.0, 1e-15);
    EXPECT_NEAR(baseline_single_copy_mean(64), 0.5, 1e-9);
}

TEST(Baselines, MeasurePrepare) {
    EXPECT_NEAR(measure_prepare_integrand(0.0), 1.0 / kPi, 1e-15);
    EXPECT_NEAR(measure_prepare_integrand(kPi), 0.0, 1e-15);
    EXPECT_NEAR(baseline_measure_prepare(), 0.625, 1e-6);
}

TEST(OptimalCloner, MeanFidelity) {
    EXPECT_NEAR(optimal_cloner_mean_fidelity(64), (3.0 + 2.0 * std::sqrt(2.0)) / 8.0, 1e-6);
    EXPECT_NEAR(kOptimalClonerFidelity, 0.7285533905932737, 1e-15);
}

TEST(OptimalCloner, CurveIsFlat) {
    // The optimal covariant cloner has the same fidelity at every phase,
    // including phi = 0: the channel is not the identity there.
    for (int k = 0; k < 64; ++k) {
        EXPECT_NEAR(optimal_cloner_fidelity(PhaseAngle(2 * kPi * k / 64)), kOptimalClonerFidelity, 1e-12);
    }
}

TEST(OptimalCloner, MeasuredFormRealisesTheSameChannel) {
    for (double phi : {0.0, 0.8, 2.9, 4.4}) {
        const ProcessMatrix a = optimal_cloner(PhaseAngle(phi), ClonerForm::cnot).process();
        const ProcessMatrix b = optimal_cloner(PhaseAngle(phi), ClonerForm::measured_feedforward).process();
        EXPECT_LT((a.chi() - b.chi()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(a.trace(), 1.0, 1e-12);
    }
}

// Brute force over every control/target assignment of the two controlled-
// Hadamard and the two CNOT gates around the fixed Toffoli core.
TEST(OptimalCloner, NoGateLayoutDoesBetter) {
    std::vector<std::pair<int, int>> pairs;
    for (int c = 0; c < 3; ++c) {
        for (int t = 0; t < 3; ++t) {
            if (c != t) {
                pairs.emplace_back(c, t);
            }
        }
    }
    const int grid = 8;
    auto mean_fidelity = [&](const std::array<std::pair<int, int>, 4> &layout) {
        const Operator pre = controlled(hadamard(), layout[1].first, layout[1].second, 3) *
                             controlled(hadamard(), layout[0].first, layout[0].second, 3);
        const Operator post = controlled(pauli_x(), layout[3].first, layout[3].second, 3) *
                              controlled(pauli_x(), layout[2].first, layout[2].second, 3);
        double acc = 0.0;
        for (int k = 0; k < grid; ++k) {
            const PhaseAngle phi(2 * kPi * k / grid);
            const Matrix w = (post * on_qubit(phase_gate(phi), 2, 3) * toffoli() * pre).matrix();
            std::vector<Operator> kraus;
            for (int a = 0; a < 2; ++a) {
                Matrix k4(4, 4);
                for (int r = 0; r < 4; ++r) {
                    for (int c = 0; c < 4; ++c) {
                        k4(r, c) = w(2 * r + a, 2 * c);
                    }
                }
                kraus.emplace_back(k4);
            }
            const Operator u = phase_gate(phi);
            acc += process_fidelity(choi_from_kraus(kraus), kron(u, u));
        }
        return acc / grid;
    };
    double best = 0.0;
    for (const auto &a : pairs) {
        for (const auto &b : pairs) {
            for (const auto &c : pairs) {
                for (const auto &d : pairs) {
                    best = std::max(best, mean_fidelity({a, b, c, d}));
                }
            }
        }
    }
    EXPECT_NEAR(best, kOptimalClonerFidelity, 1e-12);
    EXPECT_NEAR(mean_fidelity({std::pair{0, 2}, std::pair{1, 2}, std::pair{0, 2}, std::pair{1, 2}}),
                kOptimalClonerFidelity, 1e-12);
}

TEST(Protocols, Ordering) {
    const double cloner = optimal_cloner_mean_fidelity(64);
    const double twirled = twirled_mean_fidelity(64);
    const double mp = baseline_measure_prepare();
    const double single = baseline_single_copy_mean(64);
    EXPECT_GT(cloner, twirled);
    EXPECT_NEAR(twirled, mp, 1e-6);
    EXPECT_GT(mp, single);
    EXPECT_NEAR(cloner, kOptimalClonerFidelity, 1e-6);
    EXPECT_NEAR(twirled, 0.625, 1e-6);
    EXPECT_NEAR(single, 0.5, 1e-6);
}

}  // namespace
}  // namespace superrep

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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "superrep/gates.h"

namespace superrep {
namespace {

const cplx I1{0.0, 1.0};

Matrix random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Matrix z(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            z(r, c) = cplx(n(rng), n(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    return qr.householderQ();
}

Matrix random_density(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = cplx(n(rng), n(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

TEST(Operator, RejectsNonSquareAndNonPowerOfTwo) {
    EXPECT_THROW(Operator(Matrix::Zero(2, 3)), Error);
    EXPECT_THROW(Operator(Matrix::Identity(3, 3)), Error);
    EXPECT_EQ(Operator(Matrix::Identity(8, 8)).qubits(), 3);
    EXPECT_EQ(Operator::identity(2).dim(), 4);
}

TEST(Operator, RegisterCapIsEnforced) {
    Tolerances t = tolerances();
    Tolerances capped = t;
    capped.register_cap = 2;
    set_tolerances(capped);
    EXPECT_THROW(Operator::identity(3), Error);
    set_tolerances(t);
    EXPECT_NO_THROW(Operator::identity(3));
}

TEST(Kron, IdentityTimesIdentity) {
    Operator k = kron(Operator::identity(1), Operator::identity(1));
    EXPECT_TRUE(k.matrix().isApprox(Matrix::Identity(4, 4)));
    EXPECT_EQ(k.qubits(), 2);
}

TEST(Kron, DiagonalPhases) {
    const double phi = 0.7;
    Operator u = phase_gate(PhaseAngle(phi));
    Operator k = kron(u, u);
    const cplx e = std::exp(I1 * phi);
    Vector expected(4);
    expected << 1.0, e, e, e * e;
    EXPECT_LT((k.matrix() - Matrix(expected.asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Kron, XTensorZByHand) {
    Operator k = kron(pauli_x(), pauli_z());
    Matrix expected(4, 4);
    expected << 0, 0, 1, 0,
                0, 0, 0, -1,
                1, 0, 0, 0,
                0, -1, 0, 0;
    EXPECT_EQ((k.matrix() - expected).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Kron, Associative) {
    std::mt19937_64 rng(11);
    Operator a(random_unitary(2, rng));
    Operator b(random_unitary(4, rng));
    Operator c(random_unitary(2, rng));
    Matrix left = kron(kron(a, b), c).matrix();
    Matrix right = kron(a, kron(b, c)).matrix();
    EXPECT_LT((left - right).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HammingWeight, Examples) {
    EXPECT_EQ(hamming_weight(BasisIndex(0, 4)), 0);
    EXPECT_EQ(hamming_weight(BasisIndex(0b101, 3)), 2);
    for (int m = 1; m <= 20; ++m) {
        EXPECT_EQ(hamming_weight(BasisIndex((std::uint64_t{1} << m) - 1, m)), m);
    }
    EXPECT_THROW(BasisIndex(8, 3), Error);
}

TEST(BasisIndex, FirstDigitIsMostSignificant) {
    BasisIndex m(0b100, 3);
    EXPECT_TRUE(m.bit(0));
    EXPECT_FALSE(m.bit(1));
    EXPECT_FALSE(m.bit(2));
}

TEST(QuantumState, Validation) {
    Vector bad(2);
    bad << 1.0, 1.0;
    EXPECT_THROW(QuantumState::pure(bad), Error);
    Matrix not_hermitian(2, 2);
    not_hermitian << 0.5, 0.3, 0.0, 0.5;
    EXPECT_THROW(QuantumState::mixed(not_hermitian), Error);
    Matrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(QuantumState::mixed(negative), Error);
    EXPECT_NO_THROW(QuantumState::subnormalized(Matrix::Identity(2, 2) * 0.25));
}

TEST(PartialTrace, ProductWithAncilla) {
    Vector psi(4);
    psi << 0.5, cplx(0.5, 0.0), cplx(0.0, 0.5), -0.5;
    QuantumState full = QuantumState::pure(kron(psi, single_qubit_ket(Projector::zero)));
    const std::array<int, 2> keep{0, 1};
    Matrix reduced = partial_trace(full, keep).density();
    EXPECT_LT((reduced - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, BellStateEitherQubit) {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    QuantumState s = QuantumState::pure(bell);
    for (int q : {0, 1}) {
        const std::array<int, 1> keep{q};
        EXPECT_LT((partial_trace(s, keep).density() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(PartialTrace, ToffoliImprintedStateIsRankTwo) {
    // Toffoli |psi>|0> for uniform amplitudes; discarding the ancilla leaves
    // |a><a| + |b><b| with a = (|00>+|01>+|10>)/2 and b = |11>/2.
    Vector psi = Vector::Constant(4, 0.5);
    QuantumState s = apply(toffoli(), QuantumState::pure(kron(psi, single_qubit_ket(Projector::zero))));
    const std::array<int, 2> keep{0, 1};
    Matrix reduced = partial_trace(s, keep).density();
    Matrix expected = Matrix::Zero(4, 4);
    expected.topLeftCorner(3, 3).setConstant(0.25);
    expected(3, 3) = 0.25;
    EXPECT_LT((reduced - expected).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::SelfAdjointEigenSolver<Matrix> es(reduced);
    int rank = 0;
    for (Eigen::Index i = 0; i < 4; ++i) {
        rank += es.eigenvalues()(i) > 1e-12;
    }
    EXPECT_EQ(rank, 2);
}

TEST(PartialTrace, InvertsKron) {
    std::mt19937_64 rng(5);
    Matrix a = random_density(4, rng);
    Matrix b = random_density(2, rng);
    Matrix ab(8, 8);
    ab = Eigen::kroneckerProduct(a, b);
    const std::array<int, 2> keep{0, 1};
    EXPECT_LT((partial_trace(QuantumState::mixed(ab), keep).density() - a).cwiseAbs().maxCoeff(), 1e-12);
    const std::array<int, 1> keep_b{2};
    EXPECT_LT((partial_trace(QuantumState::mixed(ab), keep_b).density() - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, RejectsEmptyOrInvalidKeep) {
    QuantumState s = QuantumState::pure(single_qubit_ket(Projector::plus));
    EXPECT_THROW(partial_trace(s, std::span<const int>{}), Error);
    const std::array<int, 1> bad{3};
    EXPECT_THROW(partial_trace(s, bad), Error);
}

TEST(Apply, UnitaryPreservesTrace) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Operator u(random_unitary(8, rng));
        QuantumState rho = QuantumState::mixed(random_density(8, rng));
        EXPECT_NEAR(apply(u, rho).trace(), rho.trace(), 1e-12);
    }
}

TEST(Project, SimpleProbabilities) {
    QuantumState plus = QuantumState::pure(single_qubit_ket(Projector::plus));
    EXPECT_NEAR(project_and_renormalize(plus, 0, Projector::plus).probability, 1.0, 1e-15);
    QuantumState zero = QuantumState::pure(single_qubit_ket(Projector::zero));
    EXPECT_NEAR(project_and_renormalize(zero, 0, Projector::minus).probability, 0.5, 1e-15);
}

TEST(Project, ImpossibleOutcomeThrows) {
    QuantumState zero = QuantumState::pure(single_qubit_ket(Projector::zero));
    try {
        project_and_renormalize(zero, 0, Projector::one);
        FAIL() << "expected an impossible-outcome error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::impossible_outcome);
    }
}

TEST(Project, AncillaAfterPhaseLeavesControlledPhase) {
    Vector psi = Vector::Constant(4, 0.5);
    QuantumState s = apply(toffoli(), QuantumState::pure(kron(psi, single_qubit_ket(Projector::zero))));
    s = apply(on_qubit(phase_gate(PhaseAngle(std::numbers::pi)), 2, 3), s);
    Projection p = project_and_renormalize(s, 2, Projector::plus);
    EXPECT_NEAR(p.probability, 0.5, 1e-14);
    const std::array<int, 2> keep{0, 1};
    QuantumState reduced = partial_trace(p.state, keep);
    QuantumState expected = apply(cu_phase(PhaseAngle(std::numbers::pi)), QuantumState::pure(psi));
    EXPECT_NEAR(state_fidelity(reduced, expected), 1.0, 1e-12);
}

TEST(Project, CompleteSetsSumToOne) {
    std::mt19937_64 rng(9);
    QuantumState rho = QuantumState::mixed(random_density(8, rng));
    const std::array<std::pair<Projector, Projector>, 3> bases{
        std::pair{Projector::zero, Projector::one}, std::pair{Projector::plus, Projector::minus},
        std::pair{Projector::plus_i, Projector::minus_i}};
    for (int q = 0; q < 3; ++q) {
        for (const auto &[a, b] : bases) {
            const double total = project_and_renormalize(rho, q, a).probability +
                                 project_and_renormalize(rho, q, b).probability;
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

TEST(EqualUpToPhase, IgnoresGlobalPhase) {
    Operator z = pauli_z();
    EXPECT_TRUE(equal_up_to_phase(z, z.scaled(std::exp(I1 * 1.3))));
    EXPECT_FALSE(equal_up_to_phase(z, pauli_x()));
}

}  // namespace
}  // namespace superrep

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

#ifndef SUPERREP_QMAT_H
#define SUPERREP_QMAT_H

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace superrep {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode : int {
    invalid_argument = 1,
    numerical = 2,
    io = 3,
    unidentifiable = 4,
    impossible_outcome = 5,
    capacity = 6,
    invalid_config = 7,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Numerical tolerances and limits used across the library. Set once at
/// startup (e.g. from a run configuration); read everywhere else.
struct Tolerances {
    double unitarity = 1e-10;
    double normalization = 1e-12;
    double hermiticity = 1e-10;
    double eigenvalue = 1e-10;
    int register_cap = 24;
};

const Tolerances &tolerances();
void set_tolerances(const Tolerances &t);

/// Dense square operator on an n-qubit register. Qubit 0 is the most
/// significant bit of the basis index.
class Operator {
   public:
    explicit Operator(Matrix m);
    static Operator identity(int qubits);

    int qubits() const noexcept {
        return qubits_;
    }
    Eigen::Index dim() const noexcept {
        return m_.rows();
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    cplx operator()(Eigen::Index r, Eigen::Index c) const {
        return m_(r, c);
    }

    bool is_unitary(double tol = tolerances().unitarity) const;
    Operator adjoint() const;
    Operator operator*(const Operator &other) const;
    Operator scaled(cplx factor) const;

   private:
    Matrix m_;
    int qubits_;
};

Operator kron(const Operator &a, const Operator &b);
Vector kron(const Vector &a, const Vector &b);

/// Embeds a single-qubit gate on `qubit` of an n-qubit register.
Operator on_qubit(const Operator &gate, int qubit, int qubits);

/// Operator equality up to a global phase: |Tr[A^dag B]| / dim >= 1 - tol,
/// with matching Frobenius norms.
bool equal_up_to_phase(const Operator &a, const Operator &b, double tol = 1e-10);

/// |m> = |m_1 m_2 ... m_M>, m_1 being the most significant digit.
class BasisIndex {
   public:
    BasisIndex(std::uint64_t value, int width);
    std::uint64_t value() const noexcept {
        return value_;
    }
    int width() const noexcept {
        return width_;
    }
    bool bit(int position) const noexcept {
        return (value_ >> (width_ - 1 - position)) & 1;
    }

   private:
    std::uint64_t value_;
    int width_;
};

int hamming_weight(BasisIndex m);

enum class StateKind { pure, mixed };

class QuantumState {
   public:
    static QuantumState pure(Vector psi);
    static QuantumState mixed(Matrix rho);
    /// Density matrix whose trace may fall below one (postselected outputs).
    static QuantumState subnormalized(Matrix rho);

    StateKind kind() const noexcept {
        return kind_;
    }
    int qubits() const noexcept {
        return qubits_;
    }
    Eigen::Index dim() const noexcept {
        return kind_ == StateKind::pure ? psi_.size() : rho_.rows();
    }
    /// Throws unless kind() == pure.
    const Vector &vector() const;
    Matrix density() const;
    double trace() const;

   private:
    QuantumState() = default;
    StateKind kind_ = StateKind::pure;
    int qubits_ = 0;
    Vector psi_;
    Matrix rho_;
};

QuantumState apply(const Operator &u, const QuantumState &state);
double state_fidelity(const QuantumState &a, const QuantumState &b);

/// Reduced state on `keep` (qubit indices, any order; output keeps register order).
QuantumState partial_trace(const QuantumState &state, std::span<const int> keep);

enum class Projector { zero, one, plus, minus, plus_i, minus_i };

Vector single_qubit_ket(Projector p);

struct Projection {
    QuantumState state;
    double probability;
};

/// Projects `qubit` onto the given single-qubit state. The returned state
/// lives on the full register. Throws Error(impossible_outcome) when the
/// outcome has zero probability.
Projection project_and_renormalize(const QuantumState &state, int qubit, Projector projector);

int qubit_count_for_dim(Eigen::Index dim);

}  // namespace superrep

#endif

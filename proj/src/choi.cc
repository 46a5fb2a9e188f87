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

#include "superrep/choi.h"

#include <cmath>

namespace superrep {

const char *to_string(Normalization n) {
    switch (n) {
        case Normalization::raw:
            return "raw";
        case Normalization::trace_one:
            return "trace_one";
        case Normalization::trace_dim:
            return "trace_dim";
    }
    return "unknown";
}

ProcessMatrix::ProcessMatrix(Matrix chi, Normalization normalization)
    : chi_(std::move(chi)), normalization_(normalization) {
    if (chi_.rows() != chi_.cols()) {
        throw Error(ErrorCode::invalid_argument, "process matrix must be square");
    }
    int total = qubit_count_for_dim(chi_.rows());
    if (total % 2 != 0) {
        throw Error(ErrorCode::invalid_argument, "process matrix dimension must be 4^n");
    }
    qubits_ = total / 2;
    if ((chi_ - chi_.adjoint()).cwiseAbs().maxCoeff() > tolerances().hermiticity * std::max(1.0, chi_.norm())) {
        throw Error(ErrorCode::numerical, "process matrix is not Hermitian");
    }
    chi_ = 0.5 * (chi_ + chi_.adjoint()).eval();
    if (normalization_ == Normalization::trace_one && std::abs(trace() - 1.0) > 1e-10) {
        throw Error(ErrorCode::invalid_argument, "trace_one process matrix has trace " + std::to_string(trace()));
    }
}

double ProcessMatrix::trace() const {
    return chi_.trace().real();
}

ProcessMatrix ProcessMatrix::normalized() const {
    double t = trace();
    if (!(t > 0)) {
        throw Error(ErrorCode::numerical, "process matrix has non-positive trace");
    }
    return ProcessMatrix(chi_ / t, Normalization::trace_one);
}

double ProcessMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(chi_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

QuantumState choi_state(const Operator &u) {
    if (!u.is_unitary()) {
        throw Error(ErrorCode::invalid_argument, "choi_state requires a unitary operator");
    }
    const Eigen::Index d = u.dim();
    Vector phi = Vector::Zero(d * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index m = 0; m < d; ++m) {
        // (I (x) U)|m>|m> = |m> (x) U|m>
        phi.segment(m * d, d) = s * u.matrix().col(m);
    }
    return QuantumState::pure(std::move(phi));
}

double gate_fidelity(const Operator &u1, const Operator &u2) {
    if (u1.dim() != u2.dim()) {
        throw Error(ErrorCode::invalid_argument, "gate_fidelity: dimension mismatch");
    }
    const double d = static_cast<double>(u1.dim());
    cplx tr = (u2.matrix().adjoint() * u1.matrix()).trace();
    return std::norm(tr) / (d * d);
}

double choi_overlap_fidelity(const Operator &u1, const Operator &u2) {
    if (u1.dim() != u2.dim()) {
        throw Error(ErrorCode::invalid_argument, "choi_overlap_fidelity: dimension mismatch");
    }
    return state_fidelity(choi_state(u1), choi_state(u2));
}

namespace {

Vector raw_choi_vector(const Operator &k) {
    const Eigen::Index d = k.dim();
    Vector v = Vector::Zero(d * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index m = 0; m < d; ++m) {
        v.segment(m * d, d) = s * k.matrix().col(m);
    }
    return v;
}

}  // namespace

double process_fidelity(const ProcessMatrix &chi, const Operator &u) {
    if (chi.channel_dim() != u.dim()) {
        throw Error(ErrorCode::invalid_argument, "process_fidelity: dimension mismatch");
    }
    double t = chi.trace();
    if (!(t > 0)) {
        throw Error(ErrorCode::numerical, "process_fidelity: Tr(chi) must be positive");
    }
    Vector phi = raw_choi_vector(u);
    return (phi.adjoint() * chi.chi() * phi)(0, 0).real() / t;
}

double process_overlap(const ProcessMatrix &a, const ProcessMatrix &b) {
    if (a.chi().rows() != b.chi().rows()) {
        throw Error(ErrorCode::invalid_argument, "process_overlap: dimension mismatch");
    }
    ProcessMatrix na = a.normalized();
    ProcessMatrix nb = b.normalized();
    QuantumState sa = QuantumState::subnormalized(na.chi());
    QuantumState sb = QuantumState::subnormalized(nb.chi());
    return state_fidelity(sa, sb);
}

QuantumState apply_channel(const ProcessMatrix &chi, const QuantumState &rho) {
    const Eigen::Index d = chi.channel_dim();
    if (rho.dim() != d) {
        throw Error(ErrorCode::invalid_argument, "apply_channel: dimension mismatch");
    }
    // R(rho) = c * Tr_ref[(rho^T (x) I) chi], c = d except for the trace_dim convention.
    const double scale = chi.normalization() == Normalization::trace_dim ? 1.0 : static_cast<double>(d);
    Matrix in = rho.density();
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            cplx w = in(i, j);
            if (w != cplx(0)) {
                out += w * chi.chi().block(i * d, j * d, d, d);
            }
        }
    }
    out *= scale;
    return QuantumState::subnormalized(0.5 * (out + out.adjoint()));
}

ProcessMatrix choi_from_kraus(std::span<const Operator> kraus) {
    if (kraus.empty()) {
        throw Error(ErrorCode::invalid_argument, "choi_from_kraus needs at least one operator");
    }
    const Eigen::Index d = kraus.front().dim();
    Matrix chi = Matrix::Zero(d * d, d * d);
    for (const Operator &k : kraus) {
        if (k.dim() != d) {
            throw Error(ErrorCode::invalid_argument, "Kraus operators must share a dimension");
        }
        Vector v = raw_choi_vector(k);
        chi.noalias() += v * v.adjoint();
    }
    return ProcessMatrix(std::move(chi), Normalization::raw);
}

ProcessMatrix damp_output_coherence(const ProcessMatrix &chi, int qubit, double factor) {
    const int n = chi.qubits();
    if (qubit < 0 || qubit >= n) {
        throw Error(ErrorCode::invalid_argument, "damped qubit outside the channel register");
    }
    const Eigen::Index d = chi.channel_dim();
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - qubit);
    Matrix out = chi.chi();
    for (Eigen::Index r = 0; r < d * d; ++r) {
        for (Eigen::Index c = 0; c < d * d; ++c) {
            if (((r % d) & mask) != ((c % d) & mask)) {
                out(r, c) *= factor;
            }
        }
    }
    return ProcessMatrix(std::move(out), chi.normalization());
}

}  // namespace superrep

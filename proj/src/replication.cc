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

#include "superrep/replication.h"

#include <bit>
#include <cmath>
#include <limits>

namespace superrep {

namespace {

constexpr int kDenseOperatorLimit = 13;

int ceil_half(int a) {
    return a >= 0 ? (a + 1) / 2 : -((-a) / 2);
}

/// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + carry;
    }
};

Vector phase_gate_power_diagonal(int copies, PhaseAngle phi) {
    Vector diag = Vector::Ones(1);
    Vector u = phase_gate(phi).matrix().diagonal();
    for (int i = 0; i < copies; ++i) {
        diag = kron(diag, u);
    }
    return diag;
}

}  // namespace

ReplicationSpec::ReplicationSpec(int copies, int replicas) : copies_(copies), replicas_(replicas) {
    if (copies < 1 || replicas < 1) {
        throw Error(ErrorCode::invalid_argument, "replication needs N >= 1 copies and M >= 1 replicas");
    }
    if (copies > 62 || replicas > 1'000'000) {
        throw Error(ErrorCode::invalid_argument, "replication sizes out of supported range");
    }
}

int ReplicationSpec::m_min() const noexcept {
    return ceil_half(replicas_ - copies_);
}

int ReplicationSpec::m_max() const noexcept {
    return ceil_half(replicas_ + copies_);
}

int ReplicationSpec::phase_multiple(int weight) const {
    if (weight < 0 || weight > replicas_) {
        throw Error(ErrorCode::invalid_argument, "Hamming weight outside [0, M]");
    }
    if (weight < m_min()) {
        return 0;
    }
    if (weight < m_max()) {
        return weight - m_min();
    }
    return copies_;
}

std::uint64_t ReplicationSpec::ancilla_pattern(int weight) const {
    const int set = phase_multiple(weight);
    const std::uint64_t ones = (std::uint64_t{1} << set) - 1;
    return ones << (copies_ - set);
}

ImprintingUnitary::ImprintingUnitary(const ReplicationSpec &spec) : spec_(spec) {
    const int n = spec.copies();
    const std::uint64_t d = dim();
    image_.resize(d);
    std::vector<std::uint64_t> pattern(spec.replicas() + 1);
    for (int w = 0; w <= spec.replicas(); ++w) {
        pattern[w] = spec.ancilla_pattern(w);
    }
    for (std::uint64_t idx = 0; idx < d; ++idx) {
        image_[idx] = idx ^ pattern[std::popcount(idx >> n)];
    }
}

std::uint64_t ImprintingUnitary::image(std::uint64_t index) const {
    return image_.at(index);
}

Vector ImprintingUnitary::apply(const Vector &state) const {
    if (static_cast<std::uint64_t>(state.size()) != dim()) {
        throw Error(ErrorCode::invalid_argument, "state size does not match the imprinting register");
    }
    Vector out(state.size());
    for (std::uint64_t i = 0; i < dim(); ++i) {
        out(static_cast<Eigen::Index>(image_[i])) = state(static_cast<Eigen::Index>(i));
    }
    return out;
}

Operator ImprintingUnitary::to_operator() const {
    if (qubits() > kDenseOperatorLimit) {
        throw Error(ErrorCode::capacity, "dense V limited to " + std::to_string(kDenseOperatorLimit) + " qubits");
    }
    const auto d = static_cast<Eigen::Index>(dim());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        m(static_cast<Eigen::Index>(image_[i]), i) = 1.0;
    }
    return Operator(std::move(m));
}

ImprintingUnitary build_v(const ReplicationSpec &spec) {
    const int q = spec.copies() + spec.replicas();
    if (q > tolerances().register_cap) {
        throw Error(ErrorCode::capacity, "V on " + std::to_string(q) + " qubits exceeds the register cap of " +
                                             std::to_string(tolerances().register_cap));
    }
    return ImprintingUnitary(spec);
}

Vector replicated_map_diagonal(const ReplicationSpec &spec, PhaseAngle phi) {
    if (spec.replicas() > tolerances().register_cap) {
        throw Error(ErrorCode::capacity, "replicated map exceeds the register cap");
    }
    const Eigen::Index d = Eigen::Index{1} << spec.replicas();
    std::vector<cplx> by_weight(spec.replicas() + 1);
    for (int w = 0; w <= spec.replicas(); ++w) {
        by_weight[w] = std::polar(1.0, spec.phase_multiple(w) * phi.radians());
    }
    Vector diag(d);
    for (Eigen::Index m = 0; m < d; ++m) {
        diag(m) = by_weight[std::popcount(static_cast<std::uint64_t>(m))];
    }
    return diag;
}

Operator replicated_map(const ReplicationSpec &spec, PhaseAngle phi) {
    if (spec.replicas() > kDenseOperatorLimit) {
        throw Error(ErrorCode::capacity, "dense replicated map limited to " + std::to_string(kDenseOperatorLimit) +
                                             " qubits");
    }
    return Operator(replicated_map_diagonal(spec, phi).asDiagonal().toDenseMatrix());
}

SectorBlock sandwich_sector(const ReplicationSpec &spec, PhaseAngle phi) {
    const ImprintingUnitary v = build_v(spec);
    const int n = spec.copies();
    const Eigen::Index da = Eigen::Index{1} << spec.replicas();
    const Eigen::Index db = Eigen::Index{1} << n;
    // I_A (x) U(phi)^{(x)N} is diagonal on the joint register.
    const Vector phases = kron(Vector::Ones(da), phase_gate_power_diagonal(n, phi));
    Matrix block = Matrix::Zero(da, da);
    double leakage = 0.0;
    Vector state = Vector::Zero(da * db);
    for (Eigen::Index m = 0; m < da; ++m) {
        state.setZero();
        state(m * db) = 1.0;
        Vector out = v.apply(phases.cwiseProduct(v.apply(state)));
        for (Eigen::Index r = 0; r < da; ++r) {
            block(r, m) = out(r * db);
            for (Eigen::Index b = 1; b < db; ++b) {
                leakage = std::max(leakage, std::abs(out(r * db + b)));
            }
        }
    }
    return {Operator(std::move(block)), leakage};
}

double replication_fidelity(const ReplicationSpec &spec, PhaseAngle phi) {
    const int m = spec.replicas();
    const double log_norm = m * std::log(2.0);
    const double lg_m = std::lgamma(m + 1.0);
    CompensatedSum re;
    CompensatedSum im;
    for (int w = 0; w <= m; ++w) {
        const double log_weight = lg_m - std::lgamma(w + 1.0) - std::lgamma(m - w + 1.0) - log_norm;
        const double mag = std::exp(log_weight);
        const double angle = (spec.phase_multiple(w) - w) * phi.radians();
        re.add(mag * std::cos(angle));
        im.add(mag * std::sin(angle));
    }
    const double r = re.value();
    const double i = im.value();
    return std::min(1.0, r * r + i * i);
}

double replication_fidelity_dense(const ReplicationSpec &spec, PhaseAngle phi) {
    const Vector target = phase_gate_power_diagonal(spec.replicas(), phi);
    const Vector realised = replicated_map_diagonal(spec, phi);
    const cplx tr = target.dot(realised);
    const double d = static_cast<double>(target.size());
    return std::norm(tr) / (d * d);
}

std::vector<double> uniform_phase_grid(int points) {
    if (points < 1) {
        throw Error(ErrorCode::invalid_argument, "phase grid needs at least one point");
    }
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) {
        grid[k] = 2.0 * std::numbers::pi * k / points;
    }
    return grid;
}

ConvergenceRow convergence_row(const ReplicationSpec &spec, double alpha, std::span<const double> phi_grid) {
    if (phi_grid.empty()) {
        throw Error(ErrorCode::invalid_argument, "phase grid must not be empty");
    }
    ConvergenceRow row{spec.copies(), spec.replicas(), alpha, 0.0, 2.0, {}, {}};
    for (double phi : phi_grid) {
        const double f = replication_fidelity(spec, PhaseAngle(phi));
        row.phis.push_back(phi);
        row.fidelities.push_back(f);
        if (f < row.worst_fidelity) {
            row.worst_fidelity = f;
            row.worst_phi = phi;
        }
    }
    return row;
}

double effective_alpha(int copies, int replicas) {
    if (copies < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return 2.0 - std::log(static_cast<double>(replicas)) / std::log(static_cast<double>(copies));
}

std::vector<ConvergenceRow> asymptotic_sweep(double alpha, std::span<const int> copies,
                                             std::span<const double> phi_grid) {
    if (!(alpha > 0)) {
        throw Error(ErrorCode::invalid_argument, "alpha must be positive");
    }
    if (phi_grid.empty()) {
        throw Error(ErrorCode::invalid_argument, "phase grid must not be empty");
    }
    std::vector<ConvergenceRow> rows;
    for (int n : copies) {
        if (n < 1) {
            throw Error(ErrorCode::invalid_argument, "copy counts must be positive");
        }
        const int m = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 2.0 - alpha) + 1e-9));
        rows.push_back(convergence_row(ReplicationSpec(n, std::max(m, 1)), alpha, phi_grid));
    }
    return rows;
}

}  // namespace superrep

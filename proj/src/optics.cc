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

#include "superrep/optics.h"

#include <cmath>
#include <string>

namespace superrep {

namespace {

constexpr int idx(OpticalMode m) {
    return static_cast<int>(m);
}

OpticalMode signal_mode(int spatial, int pol) {
    if (spatial == 0) {
        return pol ? OpticalMode::bypass_v : OpticalMode::bypass_h;
    }
    return pol ? OpticalMode::port_a_v : OpticalMode::port_a_h;
}

OpticalMode idler_mode(int pol) {
    return pol ? OpticalMode::port_b_v : OpticalMode::port_b_h;
}

/// Wave plate acting as a Hadamard on the idler polarization in port b.
ModeMatrix idler_hadamard() {
    ModeMatrix m = ModeMatrix::Identity();
    const double s = 1.0 / std::sqrt(2.0);
    const int h = idx(OpticalMode::port_b_h);
    const int v = idx(OpticalMode::port_b_v);
    m(h, h) = s;
    m(h, v) = s;
    m(v, h) = s;
    m(v, v) = -s;
    return m;
}

/// Balancing losses fixed at the ideal design point: H in both PPBS outputs
/// and both polarizations in the bypass arm pass with amplitude 1/sqrt(3).
ModeMatrix balancing_losses() {
    ModeMatrix m = ModeMatrix::Identity();
    const double a = 1.0 / std::sqrt(3.0);
    m(idx(OpticalMode::bypass_h), idx(OpticalMode::bypass_h)) = a;
    m(idx(OpticalMode::bypass_v), idx(OpticalMode::bypass_v)) = a;
    m(idx(OpticalMode::port_a_h), idx(OpticalMode::port_a_h)) = a;
    m(idx(OpticalMode::port_b_h), idx(OpticalMode::port_b_h)) = a;
    return m;
}

void check_unit(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

OpticsParams OpticsParams::ideal() {
    return OpticsParams{};
}

OpticsParams OpticsParams::measured(double phase_jitter_sigma) {
    return OpticsParams{0.660, 0.017, 0.958, phase_jitter_sigma};
}

void OpticsParams::validate() const {
    check_unit(reflectance_v, "reflectance_v");
    check_unit(reflectance_h, "reflectance_h");
    check_unit(visibility, "visibility");
    if (!(phase_jitter_sigma >= 0.0) || !std::isfinite(phase_jitter_sigma)) {
        throw Error(ErrorCode::invalid_argument, "phase_jitter_sigma must be finite and non-negative");
    }
}

OpticalState::OpticalState(Sector sector, ModeMatrix amplitudes) : sector_(sector), amplitudes_(std::move(amplitudes)) {
}

OpticalState OpticalState::product(Sector sector, OpticalMode signal, OpticalMode idler) {
    ModeMatrix a = ModeMatrix::Zero();
    a(idx(signal), idx(idler)) = 1.0;
    return OpticalState(sector, a);
}

double OpticalState::norm_squared() const {
    if (sector_ == Sector::distinguishable) {
        return amplitudes_.squaredNorm();
    }
    // || sum A_jk a_j^dag a_k^dag |0> ||^2 = 2 sum |S_jk|^2 with S the symmetric part.
    ModeMatrix s = 0.5 * (amplitudes_ + amplitudes_.transpose());
    return 2.0 * s.squaredNorm();
}

OpticalState OpticalState::transformed(const ModeMatrix &modes) const {
    return OpticalState(sector_, modes * amplitudes_ * modes.transpose());
}

cplx OpticalState::coincidence_amplitude(OpticalMode j, OpticalMode k) const {
    if (sector_ == Sector::interfering) {
        return amplitudes_(idx(j), idx(k)) + amplitudes_(idx(k), idx(j));
    }
    return amplitudes_(idx(j), idx(k));
}

cplx OpticalState::exchanged_amplitude(OpticalMode j, OpticalMode k) const {
    if (sector_ != Sector::distinguishable) {
        throw Error(ErrorCode::invalid_argument, "exchanged amplitudes exist only for distinguishable photons");
    }
    return amplitudes_(idx(k), idx(j));
}

ModeMatrix ppbs_mode_matrix(const OpticsParams &params) {
    params.validate();
    ModeMatrix m = ModeMatrix::Identity();
    auto couple = [&](OpticalMode a, OpticalMode b, double reflectance) {
        const double t = std::sqrt(1.0 - reflectance);
        const double r = std::sqrt(reflectance);
        // Columns are input modes: a -> t a + r b, b -> -r a + t b.
        m(idx(a), idx(a)) = t;
        m(idx(b), idx(a)) = r;
        m(idx(a), idx(b)) = -r;
        m(idx(b), idx(b)) = t;
    };
    couple(OpticalMode::port_a_h, OpticalMode::port_b_h, params.reflectance_h);
    couple(OpticalMode::port_a_v, OpticalMode::port_b_v, params.reflectance_v);
    return m;
}

OpticalState ppbs_transform(const OpticalState &state, const OpticsParams &params) {
    return state.transformed(ppbs_mode_matrix(params));
}

double relative_hom_visibility(const OpticsParams &params) {
    params.validate();
    auto coincidences = [&](Sector sector) {
        OpticalState out = ppbs_transform(OpticalState::product(sector, OpticalMode::port_a_v, OpticalMode::port_b_v),
                                          params);
        double p = std::norm(out.coincidence_amplitude(OpticalMode::port_a_v, OpticalMode::port_b_v));
        if (sector == Sector::distinguishable) {
            p += std::norm(out.exchanged_amplitude(OpticalMode::port_a_v, OpticalMode::port_b_v));
        }
        return p;
    };
    const double p_int = coincidences(Sector::interfering);
    const double p_dist = coincidences(Sector::distinguishable);
    if (p_dist - p_int <= 0.0) {
        return 0.0;
    }
    const double p_mix = params.visibility * p_int + (1.0 - params.visibility) * p_dist;
    return (p_dist - p_mix) / (p_dist - p_int);
}

EffectiveToffoli effective_toffoli(const OpticsParams &params) {
    params.validate();
    const ModeMatrix network = idler_hadamard() * balancing_losses() * ppbs_mode_matrix(params) * idler_hadamard();
    Matrix k_int = Matrix::Zero(8, 8);
    Matrix k_trans = Matrix::Zero(8, 8);
    Matrix k_exch = Matrix::Zero(8, 8);
    for (int in = 0; in < 8; ++in) {
        const OpticalMode s_in = signal_mode((in >> 2) & 1, (in >> 1) & 1);
        const OpticalMode i_in = idler_mode(in & 1);
        const OpticalState bos = OpticalState::product(Sector::interfering, s_in, i_in).transformed(network);
        const OpticalState dis = OpticalState::product(Sector::distinguishable, s_in, i_in).transformed(network);
        for (int out = 0; out < 8; ++out) {
            // Coincidence: one photon in the signal detection block, one in the idler block.
            const OpticalMode j = signal_mode((out >> 2) & 1, (out >> 1) & 1);
            const OpticalMode k = idler_mode(out & 1);
            k_int(out, in) = bos.coincidence_amplitude(j, k);
            k_trans(out, in) = dis.coincidence_amplitude(j, k);
            k_exch(out, in) = dis.exchanged_amplitude(j, k);
        }
    }
    EffectiveToffoli gate;
    const double w_int = std::sqrt(params.visibility);
    const double w_dis = std::sqrt(1.0 - params.visibility);
    if (w_int > 0) {
        gate.kraus.emplace_back(Matrix(w_int * k_int));
    }
    if (w_dis > 0) {
        gate.kraus.emplace_back(Matrix(w_dis * k_trans));
        gate.kraus.emplace_back(Matrix(w_dis * k_exch));
    }
    Matrix effect = Matrix::Zero(8, 8);
    for (const Operator &k : gate.kraus) {
        effect += k.matrix().adjoint() * k.matrix();
    }
    gate.success_probability = effect.trace().real() / 8.0;
    for (int in = 0; in < 8; ++in) {
        gate.success_by_input.push_back(effect(in, in).real());
    }
    return gate;
}

ProcessMatrix dephase_spatial(const ProcessMatrix &chi, double sigma, int spatial_qubit) {
    if (!(sigma >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "dephasing sigma must be non-negative");
    }
    if (sigma == 0.0) {
        return chi;
    }
    return damp_output_coherence(chi, spatial_qubit, std::exp(-0.5 * sigma * sigma));
}

ProcessMatrix effective_toffoli_process(const OpticsParams &params) {
    EffectiveToffoli gate = effective_toffoli(params);
    return dephase_spatial(choi_from_kraus(gate.kraus), params.phase_jitter_sigma);
}

ReplicationChannel replication_experiment(PhaseAngle phi, const OpticsParams &params) {
    const EffectiveToffoli gate = effective_toffoli(params);
    const Operator phase = on_qubit(phase_gate(phi), 2, 3);
    const Vector plus = single_qubit_ket(Projector::plus);
    std::vector<Operator> projected;
    double unprojected = 0.0;
    for (const Operator &k : gate.kraus) {
        const Matrix w = (phase * k).matrix();
        Matrix kp = Matrix::Zero(4, 4);
        for (Eigen::Index out = 0; out < 4; ++out) {
            for (Eigen::Index in = 0; in < 4; ++in) {
                kp(out, in) = plus(0) * w(2 * out, 2 * in) + plus(1) * w(2 * out + 1, 2 * in);
                unprojected += std::norm(w(2 * out, 2 * in)) + std::norm(w(2 * out + 1, 2 * in));
            }
        }
        projected.emplace_back(std::move(kp));
    }
    ProcessMatrix chi = dephase_spatial(choi_from_kraus(projected), params.phase_jitter_sigma);
    const double success = chi.trace();
    return ReplicationChannel{std::move(chi), success, unprojected / 4.0};
}

ProcessMatrix replication_experiment_channel(PhaseAngle phi, const OpticsParams &params) {
    return replication_experiment(phi, params).projected;
}

}  // namespace superrep

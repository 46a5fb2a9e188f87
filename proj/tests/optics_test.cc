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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "superrep/tomo.h"

namespace superrep {
namespace {

constexpr double kPi = std::numbers::pi;

int idx(OpticalMode m) {
    return static_cast<int>(m);
}

Operator two_copies(double phi) {
    const Operator u = phase_gate(PhaseAngle(phi));
    return kron(u, u);
}

double replication_fidelity_cu(double phi, const OpticsParams &p) {
    return process_fidelity(replication_experiment_channel(PhaseAngle(phi), p), cu_phase(PhaseAngle(phi)));
}

TEST(OpticsParams, Presets) {
    const OpticsParams ideal = OpticsParams::ideal();
    EXPECT_DOUBLE_EQ(ideal.reflectance_v, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(ideal.reflectance_h, 0.0);
    EXPECT_DOUBLE_EQ(ideal.visibility, 1.0);
    const OpticsParams m = OpticsParams::measured(0.1);
    EXPECT_DOUBLE_EQ(m.reflectance_v, 0.660);
    EXPECT_DOUBLE_EQ(m.reflectance_h, 0.017);
    EXPECT_DOUBLE_EQ(m.visibility, 0.958);
    EXPECT_DOUBLE_EQ(m.phase_jitter_sigma, 0.1);
    OpticsParams bad;
    bad.reflectance_v = 1.2;
    EXPECT_THROW(bad.validate(), Error);
    bad = OpticsParams{};
    bad.phase_jitter_sigma = -0.1;
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Ppbs, HorizontalPhotonsPassUnchanged) {
    const OpticalState in = OpticalState::product(Sector::interfering, OpticalMode::port_a_h, OpticalMode::port_b_h);
    const OpticalState out = ppbs_transform(in, OpticsParams::ideal());
    EXPECT_LT((out.amplitudes() - in.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ppbs, VerticalCoincidenceAmplitude) {
    const OpticalState in = OpticalState::product(Sector::interfering, OpticalMode::port_a_v, OpticalMode::port_b_v);
    const OpticalState out = ppbs_transform(in, OpticsParams::ideal());
    const cplx a = out.coincidence_amplitude(OpticalMode::port_a_v, OpticalMode::port_b_v);
    EXPECT_NEAR(a.real(), -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(a.imag(), 0.0, 1e-15);
}

TEST(Ppbs, SinglePhotonTransmission) {
    const ModeMatrix s = ppbs_mode_matrix(OpticsParams::ideal());
    EXPECT_NEAR(std::abs(s(idx(OpticalMode::port_a_v), idx(OpticalMode::port_a_v))), std::sqrt(1.0 / 3.0), 1e-15);
    EXPECT_NEAR(std::abs(s(idx(OpticalMode::port_b_v), idx(OpticalMode::port_a_v))), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_TRUE((s.adjoint() * s).isApprox(ModeMatrix::Identity()));
}

TEST(Ppbs, PreservesNormInBothSectors) {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> n;
    const OpticsParams params = OpticsParams::measured();
    for (Sector sector : {Sector::interfering, Sector::distinguishable}) {
        for (int trial = 0; trial < 20; ++trial) {
            ModeMatrix a;
            for (int r = 0; r < kModeCount; ++r) {
                for (int c = 0; c < kModeCount; ++c) {
                    a(r, c) = cplx(n(rng), n(rng));
                }
            }
            const OpticalState in(sector, a);
            EXPECT_NEAR(ppbs_transform(in, params).norm_squared(), in.norm_squared(), 1e-12 * in.norm_squared());
        }
    }
}

TEST(HomVisibility, ReportsMixtureWeight) {
    EXPECT_NEAR(relative_hom_visibility(OpticsParams::ideal()), 1.0, 1e-14);
    OpticsParams p;
    p.visibility = 0.958;
    EXPECT_NEAR(relative_hom_visibility(p), 0.958, 1e-14);
}

TEST(EffectiveToffoli, DesignPoint) {
    const EffectiveToffoli t = effective_toffoli(OpticsParams::ideal());
    EXPECT_NEAR(process_fidelity(effective_toffoli_process(OpticsParams::ideal()), toffoli()), 1.0, 1e-9);
    EXPECT_NEAR(t.success_probability, 1.0 / 9.0, 1e-12);
    ASSERT_EQ(t.success_by_input.size(), 8u);
    for (double p : t.success_by_input) {
        EXPECT_NEAR(p, t.success_probability, 1e-10);
    }
}

TEST(EffectiveToffoli, MeasuredPresetRegression) {
    const double f = process_fidelity(effective_toffoli_process(OpticsParams::measured()), toffoli());
    EXPECT_NEAR(f, 0.9550979661, 1e-9);
    EXPECT_GT(f, 0.85);
    EXPECT_LT(f, 1.0);
}

TEST(EffectiveToffoli, VisibilityLowersFidelity) {
    OpticsParams none;
    none.visibility = 0.0;
    EXPECT_LT(process_fidelity(effective_toffoli_process(none), toffoli()),
              process_fidelity(effective_toffoli_process(OpticsParams::ideal()), toffoli()) - 1e-3);
}

TEST(DephaseSpatial, Examples) {
    const ProcessMatrix chi = effective_toffoli_process(OpticsParams::measured());
    EXPECT_LT((dephase_spatial(chi, 0.0).chi() - chi.chi()).cwiseAbs().maxCoeff(), 1e-15);

    const std::vector<Operator> h{on_qubit(hadamard(), 0, 2)};
    const ProcessMatrix had = choi_from_kraus(h);
    const QuantumState zero = QuantumState::pure(kron(single_qubit_ket(Projector::zero), single_qubit_ket(Projector::zero)));
    const Matrix coherent = apply_channel(had, zero).density();
    const Matrix damped = apply_channel(dephase_spatial(had, 0.3), zero).density();
    EXPECT_NEAR(std::abs(damped(0, 2)) / std::abs(coherent(0, 2)), std::exp(-0.045), 1e-12);
    EXPECT_NEAR(std::exp(-0.045), 0.956, 5e-4);
    const Matrix flat = apply_channel(dephase_spatial(had, 40.0), zero).density();
    EXPECT_LT(std::abs(flat(0, 2)), 1e-15);
    EXPECT_NEAR(flat(0, 0).real(), 0.5, 1e-15);
}

TEST(ReplicationChannel, DesignPoint) {
    for (int k = 0; k < 8; ++k) {
        const double phi = k * kPi / 4;
        const ReplicationChannel ch = replication_experiment(PhaseAngle(phi), OpticsParams::ideal());
        EXPECT_NEAR(process_fidelity(ch.projected, cu_phase(PhaseAngle(phi))), 1.0, 1e-9);
        EXPECT_NEAR(ch.projected_success / ch.unprojected_success, 0.5, 1e-12);
        EXPECT_NEAR(ch.projected_success, 1.0 / 18.0, 1e-12);
    }
}

TEST(ReplicationChannel, MeasuredPresetAtZero) {
    const double f = process_fidelity(replication_experiment_channel(PhaseAngle(0.0), OpticsParams::measured()),
                                      Operator::identity(2));
    EXPECT_LT(f, 1.0);
    EXPECT_GT(f, 0.8);
}

TEST(ReplicationChannel, MeasuredPresetCurveIsCosineLike) {
    const std::vector<double> phases = default_phases();
    std::vector<double> fuu;
    for (double phi : phases) {
        fuu.push_back(process_fidelity(replication_experiment_channel(PhaseAngle(phi), OpticsParams::measured()),
                                       two_copies(phi)));
    }
    const FitResult fit = fit_cosine(phases, fuu);
    EXPECT_GT(fit.amplitude, 0.0);
    EXPECT_LT(fit.offset, 0.625);
    for (double phi : {0.3, 1.1, 2.0, 2.9}) {
        const OpticsParams p = OpticsParams::measured(0.2);
        EXPECT_NEAR(process_fidelity(replication_experiment_channel(PhaseAngle(kPi + phi), p), two_copies(kPi + phi)),
                    process_fidelity(replication_experiment_channel(PhaseAngle(kPi - phi), p), two_copies(kPi - phi)),
                    1e-12);
    }
}

// Single-parameter sweeps away from the design point, 5 samples each.
TEST(ReplicationChannel, FidelityDegradesAlongEachImperfection) {
    const double phi = 3 * kPi / 4;
    auto check = [&](auto set, double start, double stop) {
        double previous = 2.0;
        for (int i = 0; i < 5; ++i) {
            OpticsParams p;
            set(p, start + (stop - start) * i / 4.0);
            const double f = replication_fidelity_cu(phi, p);
            EXPECT_LE(f, previous + 1e-12);
            previous = f;
        }
    };
    check([](OpticsParams &p, double x) { p.reflectance_v = x; }, 2.0 / 3.0, 0.55);
    check([](OpticsParams &p, double x) { p.reflectance_v = x; }, 2.0 / 3.0, 0.78);
    check([](OpticsParams &p, double x) { p.reflectance_h = x; }, 0.0, 0.1);
    check([](OpticsParams &p, double x) { p.visibility = x; }, 1.0, 0.5);
    check([](OpticsParams &p, double x) { p.phase_jitter_sigma = x; }, 0.0, 1.0);
}

}  // namespace
}  // namespace superrep

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

#ifndef SUPERREP_OPTICS_H
#define SUPERREP_OPTICS_H

#include <vector>

#include "superrep/choi.h"
#include "superrep/gates.h"
#include "superrep/qmat.h"

namespace superrep {

/// Imperfections of the linear-optical Toffoli.
struct OpticsParams {
    /// Intensity reflectance of the central PPBS for V and H photons.
    double reflectance_v = 2.0 / 3.0;
    double reflectance_h = 0.0;
    /// Two-photon interference visibility, relative to the ideal dip.
    double visibility = 1.0;
    /// Standard deviation (rad) of the spatial-interferometer phase.
    double phase_jitter_sigma = 0.0;

    static OpticsParams ideal();
    static OpticsParams measured(double phase_jitter_sigma = 0.0);
    void validate() const;
};

/// Optical modes seen by the two photons. The signal photon's spatial qubit
/// is |0> = bypass arm, |1> = PPBS port a; the idler enters PPBS port b.
enum class OpticalMode : int { bypass_h = 0, bypass_v, port_a_h, port_a_v, port_b_h, port_b_v };
inline constexpr int kModeCount = 6;

using ModeMatrix = Eigen::Matrix<cplx, kModeCount, kModeCount>;

enum class Sector { interfering, distinguishable };

/// Two-photon amplitudes A(j, k): signal photon in mode j, idler photon in
/// mode k. In the interfering sector photons are bosonic and the state is
/// sum_jk A(j, k) a_j^dag a_k^dag |0>; only the symmetric part of A matters.
class OpticalState {
   public:
    OpticalState(Sector sector, ModeMatrix amplitudes);
    static OpticalState product(Sector sector, OpticalMode signal, OpticalMode idler);

    Sector sector() const noexcept {
        return sector_;
    }
    const ModeMatrix &amplitudes() const noexcept {
        return amplitudes_;
    }
    double norm_squared() const;

    /// Same single-photon mode transformation applied to both photons.
    OpticalState transformed(const ModeMatrix &modes) const;

    /// Amplitude for one photon found in mode j and the other in mode k (j != k).
    /// Distinguishable sector: the signal photon is the one in j.
    cplx coincidence_amplitude(OpticalMode j, OpticalMode k) const;
    /// Distinguishable sector only: idler photon in j, signal photon in k.
    cplx exchanged_amplitude(OpticalMode j, OpticalMode k) const;

   private:
    Sector sector_;
    ModeMatrix amplitudes_;
};

/// Single-photon action of the central PPBS. Per polarization p, port a maps to
/// t_p a + r_p b and port b to -r_p a + t_p b; bypass modes are untouched.
ModeMatrix ppbs_mode_matrix(const OpticsParams &params);
OpticalState ppbs_transform(const OpticalState &state, const OpticsParams &params);

/// Coincidence visibility of the V-V dip on the PPBS, relative to the
/// fully indistinguishable case.
double relative_hom_visibility(const OpticsParams &params);

/// Conditional three-qubit map of the coincidence-basis Toffoli as Kraus
/// operators on (spatial, signal polarization, idler polarization), before
/// interferometer dephasing.
struct EffectiveToffoli {
    std::vector<Operator> kraus;
    /// Coincidence probability for a maximally mixed input.
    double success_probability;
    std::vector<double> success_by_input;
};

EffectiveToffoli effective_toffoli(const OpticsParams &params);

/// Raw process matrix of the Toffoli including interferometer dephasing.
ProcessMatrix effective_toffoli_process(const OpticsParams &params);

/// Gaussian phase noise on the spatial qubit's |1> arm, averaged
/// analytically: coherences between the arms scale by exp(-sigma^2 / 2).
ProcessMatrix dephase_spatial(const ProcessMatrix &chi, double sigma, int spatial_qubit = 0);

struct ReplicationChannel {
    /// Two-qubit raw process matrix conditioned on the ancilla reading |+>.
    ProcessMatrix projected;
    double projected_success;
    /// Success probability with the ancilla traced out instead.
    double unprojected_success;
};

ReplicationChannel replication_experiment(PhaseAngle phi, const OpticsParams &params);
ProcessMatrix replication_experiment_channel(PhaseAngle phi, const OpticsParams &params);

}  // namespace superrep

#endif

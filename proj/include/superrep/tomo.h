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

#ifndef SUPERREP_TOMO_H
#define SUPERREP_TOMO_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superrep/choi.h"
#include "superrep/gates.h"
#include "superrep/optics.h"

namespace superrep {

/// Product-state process tomography design on two qubits.
struct TomographyDesign {
    std::vector<Vector> inputs;
    std::vector<std::array<Vector, 4>> settings;
    std::vector<std::string> input_labels;
    std::vector<std::string> setting_labels;

    std::size_t record_count() const noexcept {
        return inputs.size() * settings.size() * 4;
    }
    std::size_t record_index(std::size_t input, std::size_t setting, std::size_t outcome) const noexcept {
        return (input * settings.size() + setting) * 4 + outcome;
    }
};

/// 36 inputs (products of the six Pauli eigenstates) x 9 Pauli product bases.
TomographyDesign default_design();

/// Rank of the span of the input projectors (16 when identifiable).
int input_rank(const TomographyDesign &design);
/// Rank of the span of all measurement effects (16 when identifiable).
int effect_rank(const TomographyDesign &design);

/// Counts for one phase, ordered as TomographyDesign::record_index.
struct TomographyDataset {
    int phase_id = 0;
    double rate = 0.0;
    std::vector<std::uint64_t> counts;

    std::vector<double> as_real() const;
};

/// Outcome probabilities d * Tr[(rho_in^T (x) Pi) chi] for every record.
std::vector<double> outcome_probabilities(const ProcessMatrix &channel, const TomographyDesign &design);
std::vector<double> expected_counts(const ProcessMatrix &channel, const TomographyDesign &design, double rate);

/// Poisson(rate * p) for every record; deterministic in `seed`.
TomographyDataset simulate_counts(const ProcessMatrix &channel, const TomographyDesign &design, double rate,
                                  std::uint64_t seed, int phase_id = 0);

enum class MleMethod {
    /// Diluted fixed point, then accelerated projected-gradient ascent
    /// (momentum restarted whenever the likelihood would drop) from there.
    polished,
    /// sigma <- (I + eps T) sigma (I + eps T) with adaptive eps (diluted R rho R).
    diluted_fixed_point,
};

struct MleOptions {
    MleMethod method = MleMethod::polished;
    int max_iterations = 5000;
    /// Stop when the per-count log-likelihood gains less than this in one step.
    double tolerance = 1e-10;
    bool record_trace = true;
    /// Optional trace-one starting point; it is mixed with 1% of the
    /// maximally mixed matrix so that no direction starts at zero weight.
    std::optional<Matrix> warm_start;
};

struct MleResult {
    ProcessMatrix chi;  // trace_one
    int iterations = 0;
    bool converged = false;
    /// Per-count log-likelihood after each accepted step (index 0 = start).
    std::vector<double> log_likelihood;
};

/// Poisson maximum-likelihood process reconstruction. Every iterate is
/// positive semidefinite and the log-likelihood never decreases. Throws Error(unidentifiable) if the design
/// does not span the process space.
MleResult mle_reconstruct(std::span<const double> counts, const TomographyDesign &design,
                          const MleOptions &options = {});
MleResult mle_reconstruct(const TomographyDataset &dataset, const TomographyDesign &design,
                          const MleOptions &options = {});

struct FidelityStats {
    int trials = 0;
    double mean_cu = 0.0;
    double std_cu = 0.0;
    double mean_uu = 0.0;
    double std_uu = 0.0;
};

/// Resamples every count as Poisson(observed), reconstructs each replica and
/// reports the spread of the fidelities to CU(phi) and U(phi) (x) U(phi).
FidelityStats monte_carlo_errors(const TomographyDataset &dataset, const TomographyDesign &design, int trials,
                                 PhaseAngle phi, std::uint64_t seed, const MleOptions &options = {});

struct FitResult {
    double offset;     // A
    double amplitude;  // B
    double residual_rms;
};

/// Least squares of f(phi) = A + B cos(phi).
FitResult fit_cosine(std::span<const double> phases, std::span<const double> fidelities);

struct PhaseReport {
    int phase_id;
    double phi;
    ProcessMatrix chi;     // reconstructed, trace one
    ProcessMatrix chi_th;  // ideal CU(phi), trace one
    double f_cu;
    double f_uu;
    double f_cu_model;  // fidelities of the simulated channel itself
    double f_uu_model;
    double success_probability;
    FidelityStats errors;
    int iterations;
    bool converged;
};

struct PipelineReport {
    std::vector<PhaseReport> phases;
    std::vector<TomographyDataset> datasets;
    FitResult fit_uu;
    double mean_f_cu;
    double mean_f_uu;
    double max_std;
};

struct PipelineOptions {
    double rate = 1e4;
    int trials = 100;
    std::uint64_t seed = 1;
    MleOptions mle;
};

/// phi_k = k pi / 4, k = 0..7.
std::vector<double> default_phases();

/// Channel -> counts -> MLE -> fidelities -> Monte Carlo errors per phase,
/// followed by the cosine fit of F_UU.
PipelineReport experiment_pipeline(const OpticsParams &params, std::span<const double> phases,
                                   const PipelineOptions &options);

/// CSV with columns phase_id,input_id,setting_id,outcome_id,count.
void write_dataset_csv(std::ostream &out, std::span<const TomographyDataset> datasets,
                       const TomographyDesign &design);
std::vector<TomographyDataset> read_dataset_csv(std::istream &in, const TomographyDesign &design);

/// Seed for sub-task `stream` derived from `seed` (SplitMix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace superrep

#endif

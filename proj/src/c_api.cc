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

#include "superrep/superrep.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "superrep/commands.h"
#include "superrep/gates.h"
#include "superrep/optics.h"
#include "superrep/replication.h"
#include "superrep/report.h"
#include "superrep/tomo.h"

struct srp_process {
    superrep::ProcessMatrix chi;
};

struct srp_dataset {
    superrep::TomographyDataset data;
};

namespace {

using namespace superrep;

thread_local std::string last_error;

srp_status fail(srp_status status, const std::string &what) {
    last_error = what;
    return status;
}

srp_status from_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return SRP_INVALID_ARGUMENT;
        case ErrorCode::numerical: return SRP_NUMERICAL;
        case ErrorCode::io: return SRP_IO;
        case ErrorCode::unidentifiable: return SRP_UNIDENTIFIABLE;
        case ErrorCode::impossible_outcome: return SRP_IMPOSSIBLE_OUTCOME;
        case ErrorCode::capacity: return SRP_CAPACITY;
        case ErrorCode::invalid_config: return SRP_INVALID_CONFIG;
    }
    return SRP_INTERNAL;
}

template <typename F>
srp_status guarded(F &&body) {
    try {
        body();
        return SRP_OK;
    } catch (const Error &e) {
        return fail(from_code(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(SRP_CAPACITY, "out of memory");
    } catch (const std::exception &e) {
        return fail(SRP_INTERNAL, e.what());
    } catch (...) {
        return fail(SRP_INTERNAL, "unknown error");
    }
}

void need(const void *p, const char *name) {
    if (p == nullptr) {
        throw Error(ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

OpticsParams to_params(const srp_optics_params *p) {
    need(p, "params");
    OpticsParams o;
    o.reflectance_v = p->reflectance_v;
    o.reflectance_h = p->reflectance_h;
    o.visibility = p->visibility;
    o.phase_jitter_sigma = p->phase_jitter_sigma;
    o.validate();
    return o;
}

MleOptions to_options(const srp_mle_options *p) {
    MleOptions o;
    o.record_trace = false;
    if (p != nullptr) {
        if (p->method != SRP_MLE_POLISHED && p->method != SRP_MLE_DILUTED_FIXED_POINT) {
            throw Error(ErrorCode::invalid_argument, "unknown MLE method");
        }
        o.method = p->method == SRP_MLE_POLISHED ? MleMethod::polished : MleMethod::diluted_fixed_point;
        o.max_iterations = p->max_iterations;
        o.tolerance = p->tolerance;
    }
    return o;
}

void store(const MleResult &r, srp_process **out, int *iterations, int *converged) {
    *out = new srp_process{r.chi};
    if (iterations) {
        *iterations = r.iterations;
    }
    if (converged) {
        *converged = r.converged ? 1 : 0;
    }
}

const TomographyDesign &design() {
    static const TomographyDesign d = default_design();
    return d;
}

template <typename F>
srp_status scalar(double *out, F &&f) {
    return guarded([&] {
        need(out, "out");
        *out = f();
    });
}

}  // namespace

extern "C" {

const char *srp_version(void) {
    return kVersion;
}

const char *srp_last_error(void) {
    return last_error.c_str();
}

const char *srp_status_name(srp_status status) {
    switch (status) {
        case SRP_OK: return "ok";
        case SRP_INVALID_ARGUMENT: return "invalid argument";
        case SRP_NUMERICAL: return "numerical error";
        case SRP_IO: return "i/o error";
        case SRP_UNIDENTIFIABLE: return "unidentifiable";
        case SRP_IMPOSSIBLE_OUTCOME: return "impossible outcome";
        case SRP_CAPACITY: return "capacity exceeded";
        case SRP_INVALID_CONFIG: return "invalid configuration";
        case SRP_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void srp_string_free(char *s) {
    std::free(s);
}

srp_status srp_fidelity_replicas(double phi, double *out) {
    return scalar(out, [&] { return fidelity_replicas(PhaseAngle(phi)); });
}

srp_status srp_twirled_mean_fidelity(int grid, double phi, double *out) {
    return scalar(out, [&] { return twirled_mean_fidelity(grid, PhaseAngle(phi)); });
}

srp_status srp_baseline_single_copy(double phi, double *out) {
    return scalar(out, [&] { return baseline_single_copy(PhaseAngle(phi)); });
}

srp_status srp_baseline_single_copy_mean(int grid, double *out) {
    return scalar(out, [&] { return baseline_single_copy_mean(grid); });
}

srp_status srp_baseline_measure_prepare(int intervals, double *out) {
    return scalar(out, [&] { return baseline_measure_prepare(intervals); });
}

srp_status srp_optimal_cloner_fidelity(double phi, double *out) {
    return scalar(out, [&] { return optimal_cloner_fidelity(PhaseAngle(phi)); });
}

srp_status srp_optimal_cloner_mean_fidelity(int grid, double *out) {
    return scalar(out, [&] { return optimal_cloner_mean_fidelity(grid); });
}

srp_status srp_replication_fidelity(int copies, int replicas, double phi, double *out) {
    return scalar(out, [&] { return replication_fidelity(ReplicationSpec(copies, replicas), PhaseAngle(phi)); });
}

srp_status srp_replication_fidelity_dense(int copies, int replicas, double phi, double *out) {
    return scalar(out, [&] { return replication_fidelity_dense(ReplicationSpec(copies, replicas), PhaseAngle(phi)); });
}

srp_status srp_build_v(int copies, int replicas, uint64_t *image, size_t len) {
    return guarded([&] {
        need(image, "image");
        const ImprintingUnitary v = build_v(ReplicationSpec(copies, replicas));
        if (len != v.dim()) {
            throw Error(ErrorCode::invalid_argument,
                        "image buffer must hold 2^(N+M) = " + std::to_string(v.dim()) + " entries");
        }
        std::copy(v.permutation().begin(), v.permutation().end(), image);
    });
}

srp_status srp_worst_case_fidelity(int copies, int replicas, int phase_points, double *worst_phi,
                                   double *worst_fidelity) {
    return guarded([&] {
        need(worst_phi, "worst_phi");
        need(worst_fidelity, "worst_fidelity");
        const std::vector<double> grid = uniform_phase_grid(phase_points);
        const ReplicationSpec spec(copies, replicas);
        const ConvergenceRow row = convergence_row(spec, effective_alpha(copies, replicas), grid);
        *worst_phi = row.worst_phi;
        *worst_fidelity = row.worst_fidelity;
    });
}

srp_status srp_optics_preset(const char *name, double sigma, srp_optics_params *out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        OpticsParams p;
        const std::string n = name;
        if (n == "ideal") {
            p = OpticsParams::ideal();
            p.phase_jitter_sigma = sigma;
        } else if (n == "measured") {
            p = OpticsParams::measured(sigma);
        } else {
            throw Error(ErrorCode::invalid_argument, "preset must be \"ideal\" or \"measured\"");
        }
        p.validate();
        *out = {p.reflectance_v, p.reflectance_h, p.visibility, p.phase_jitter_sigma};
    });
}

srp_status srp_toffoli_fidelity(const srp_optics_params *params, double *fidelity, double *success_probability) {
    return guarded([&] {
        need(fidelity, "fidelity");
        const OpticsParams p = to_params(params);
        *fidelity = process_fidelity(effective_toffoli_process(p), toffoli());
        if (success_probability) {
            *success_probability = effective_toffoli(p).success_probability;
        }
    });
}

srp_status srp_process_from_experiment(double phi, const srp_optics_params *params, srp_process **out,
                                       double *success_probability) {
    return guarded([&] {
        need(out, "out");
        const ReplicationChannel ch = replication_experiment(PhaseAngle(phi), to_params(params));
        *out = new srp_process{ch.projected.normalized()};
        if (success_probability) {
            *success_probability = ch.projected_success;
        }
    });
}

srp_status srp_process_cu_phase(double phi, srp_process **out) {
    return guarded([&] {
        need(out, "out");
        const Operator u = cu_phase(PhaseAngle(phi));
        *out = new srp_process{choi_from_kraus(std::span<const Operator>(&u, 1))};
    });
}

srp_status srp_process_from_json(const char *json, srp_process **out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new srp_process{process_from_json(json)};
    });
}

srp_status srp_process_to_json(const srp_process *process, double phi, int phase_id, char **out) {
    return guarded([&] {
        need(process, "process");
        need(out, "out");
        *out = copy_string(process_to_json(process->chi, {"library", "", 0}, phi, phase_id));
    });
}

srp_status srp_process_fidelities(const srp_process *process, double phi, double *f_cu, double *f_uu) {
    return guarded([&] {
        need(process, "process");
        if (process->chi.qubits() != 2) {
            throw Error(ErrorCode::invalid_argument, "expected a two-qubit process");
        }
        const PhaseAngle a(phi);
        if (f_cu) {
            *f_cu = process_fidelity(process->chi, cu_phase(a));
        }
        if (f_uu) {
            const Operator u = phase_gate(a);
            *f_uu = process_fidelity(process->chi, kron(u, u));
        }
    });
}

srp_status srp_process_dim(const srp_process *process, int *dim) {
    return guarded([&] {
        need(process, "process");
        need(dim, "dim");
        *dim = static_cast<int>(process->chi.chi().rows());
    });
}

srp_status srp_process_entry(const srp_process *process, int row, int col, double *re, double *im) {
    return guarded([&] {
        need(process, "process");
        const Matrix &m = process->chi.chi();
        if (row < 0 || col < 0 || row >= m.rows() || col >= m.cols()) {
            throw Error(ErrorCode::invalid_argument, "entry index out of range");
        }
        if (re) {
            *re = m(row, col).real();
        }
        if (im) {
            *im = m(row, col).imag();
        }
    });
}

void srp_process_free(srp_process *process) {
    delete process;
}

size_t srp_record_count(void) {
    return design().record_count();
}

srp_status srp_expected_counts(const srp_process *process, double rate, double *counts, size_t len) {
    return guarded([&] {
        need(process, "process");
        need(counts, "counts");
        if (len != design().record_count()) {
            throw Error(ErrorCode::invalid_argument, "counts buffer must hold srp_record_count() entries");
        }
        const std::vector<double> e = expected_counts(process->chi, design(), rate);
        std::copy(e.begin(), e.end(), counts);
    });
}

srp_status srp_dataset_simulate(const srp_process *process, double rate, uint64_t seed, srp_dataset **out) {
    return guarded([&] {
        need(process, "process");
        need(out, "out");
        *out = new srp_dataset{simulate_counts(process->chi, design(), rate, seed)};
    });
}

srp_status srp_dataset_from_counts(const uint64_t *counts, size_t len, srp_dataset **out) {
    return guarded([&] {
        need(counts, "counts");
        need(out, "out");
        if (len != design().record_count()) {
            throw Error(ErrorCode::invalid_argument, "expected srp_record_count() counts");
        }
        TomographyDataset d;
        d.counts.assign(counts, counts + len);
        *out = new srp_dataset{std::move(d)};
    });
}

srp_status srp_dataset_counts(const srp_dataset *dataset, uint64_t *counts, size_t len) {
    return guarded([&] {
        need(dataset, "dataset");
        need(counts, "counts");
        if (len != dataset->data.counts.size()) {
            throw Error(ErrorCode::invalid_argument, "counts buffer must hold srp_record_count() entries");
        }
        std::copy(dataset->data.counts.begin(), dataset->data.counts.end(), counts);
    });
}

void srp_dataset_free(srp_dataset *dataset) {
    delete dataset;
}

void srp_mle_default_options(srp_mle_options *out) {
    if (out) {
        const MleOptions o;
        *out = {SRP_MLE_POLISHED, o.max_iterations, o.tolerance};
    }
}

srp_status srp_mle_reconstruct(const srp_dataset *dataset, const srp_mle_options *options, srp_process **out,
                               int *iterations, int *converged) {
    return guarded([&] {
        need(dataset, "dataset");
        need(out, "out");
        store(mle_reconstruct(dataset->data, design(), to_options(options)), out, iterations, converged);
    });
}

srp_status srp_mle_reconstruct_counts(const double *counts, size_t len, const srp_mle_options *options,
                                      srp_process **out, int *iterations, int *converged) {
    return guarded([&] {
        need(counts, "counts");
        need(out, "out");
        store(mle_reconstruct(std::span<const double>(counts, len), design(), to_options(options)), out, iterations,
              converged);
    });
}

srp_status srp_monte_carlo(const srp_dataset *dataset, int trials, double phi, uint64_t seed,
                           const srp_mle_options *options, srp_fidelity_stats *out) {
    return guarded([&] {
        need(dataset, "dataset");
        need(out, "out");
        const FidelityStats s =
            monte_carlo_errors(dataset->data, design(), trials, PhaseAngle(phi), seed, to_options(options));
        *out = {s.trials, s.mean_cu, s.std_cu, s.mean_uu, s.std_uu};
    });
}

srp_status srp_fit_cosine(const double *phases, const double *fidelities, size_t n, double *offset,
                          double *amplitude, double *residual_rms) {
    return guarded([&] {
        need(phases, "phases");
        need(fidelities, "fidelities");
        need(offset, "offset");
        need(amplitude, "amplitude");
        const FitResult f = fit_cosine(std::span<const double>(phases, n), std::span<const double>(fidelities, n));
        *offset = f.offset;
        *amplitude = f.amplitude;
        if (residual_rms) {
            *residual_rms = f.residual_rms;
        }
    });
}

srp_status srp_run_command(const char *command, const char *config_json, const char *overrides_json,
                           char **summary_json) {
    return guarded([&] {
        need(command, "command");
        const RunConfig config = parse_run_config(parse_command(command), config_json ? config_json : "",
                                                  overrides_json ? overrides_json : "");
        const CommandOutput out = run_command(config);
        if (summary_json) {
            *summary_json = copy_string(out.summary_json);
        }
    });
}

srp_status srp_config_schema(char **out) {
    return guarded([&] {
        need(out, "out");
        *out = copy_string(config_schema());
    });
}

srp_status srp_parse_phase(const char *text, double *out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = parse_phase(text);
    });
}

}  // extern "C"

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

#include "superrep/tomo.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace superrep {

namespace {

constexpr int kChannelDim = 4;

/// Rows are v_k^T with v_k = conj(psi_in) (x) phi_out, so that
/// p_k = d <v_k|chi|v_k>.
Matrix record_vectors(const TomographyDesign &design) {
    Matrix w(static_cast<Eigen::Index>(design.record_count()), kChannelDim * kChannelDim);
    for (std::size_t i = 0; i < design.inputs.size(); ++i) {
        for (std::size_t s = 0; s < design.settings.size(); ++s) {
            for (std::size_t o = 0; o < 4; ++o) {
                Vector v = kron(Vector(design.inputs[i].conjugate()), design.settings[s][o]);
                w.row(static_cast<Eigen::Index>(design.record_index(i, s, o))) = v.transpose();
            }
        }
    }
    return w;
}

Eigen::VectorXd quadratic_forms(const Matrix &w, const Matrix &rho) {
    return (w.conjugate() * rho).cwiseProduct(w).rowwise().sum().real();
}

int span_rank(const std::vector<Matrix> &ops) {
    Matrix m(static_cast<Eigen::Index>(ops.size()), ops.front().size());
    for (std::size_t k = 0; k < ops.size(); ++k) {
        m.row(static_cast<Eigen::Index>(k)) = ops[k].reshaped().transpose();
    }
    Eigen::FullPivLU<Matrix> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

Matrix hermitian_power(const Matrix &m, double power) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        ev(i) = std::pow(ev(i), power);
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

std::uint64_t poisson_draw(std::mt19937_64 &rng, double mean) {
    if (!(mean > 0.0)) {
        return 0;
    }
    std::poisson_distribution<long long> dist(mean);
    return static_cast<std::uint64_t>(dist(rng));
}

double sample_std(const std::vector<double> &x, double mean) {
    if (x.size() < 2) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : x) {
        acc += (v - mean) * (v - mean);
    }
    return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

double mean_of(const std::vector<double> &x) {
    double acc = 0.0;
    for (double v : x) {
        acc += v;
    }
    return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

Operator two_copies(PhaseAngle phi) {
    Operator u = phase_gate(phi);
    return kron(u, u);
}

/// Multinomial problem in whitened coordinates: q_k = <w_k|sigma|w_k>,
/// sum_k |w_k><w_k| = I.
struct Whitened {
    Matrix wt;
    Eigen::VectorXd freq;

    Eigen::VectorXd probabilities(const Matrix &sigma) const {
        return quadratic_forms(wt, sigma);
    }
    double log_likelihood(const Eigen::VectorXd &q) const {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < q.size(); ++k) {
            if (freq(k) > 0.0) {
                if (!(q(k) > 0.0)) {
                    return -std::numeric_limits<double>::infinity();
                }
                acc += freq(k) * std::log(q(k));
            }
        }
        return acc;
    }
    /// R = sum_k f_k / q_k |w_k><w_k|, the gradient of the log-likelihood.
    Matrix gradient(const Eigen::VectorXd &q) const {
        Eigen::VectorXd ratio(q.size());
        for (Eigen::Index k = 0; k < q.size(); ++k) {
            ratio(k) = freq(k) > 0.0 ? freq(k) / std::max(q(k), 1e-300) : 0.0;
        }
        return wt.transpose() * ratio.asDiagonal() * wt.conjugate();
    }
};

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd &v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            theta = candidate;
        }
    }
    return (v.array() - theta).max(0.0).matrix();
}

/// Nearest (Frobenius) trace-one positive semidefinite matrix.
Matrix project_to_states(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd ev = project_to_simplex(es.eigenvalues());
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix projected_ascent(const Whitened &p, const MleOptions &options, MleResult &result, Matrix sigma) {
    Eigen::VectorXd q = p.probabilities(sigma);
    double ll = p.log_likelihood(q);
    if (options.record_trace && result.log_likelihood.empty()) {
        result.log_likelihood.push_back(ll);
    }
    const int first = result.iterations;
    Matrix y = sigma;
    Eigen::VectorXd qy = q;
    double lly = ll;
    double momentum = 1.0;
    double step = 1.0;
    for (int it = first; it < options.max_iterations; ++it) {
        result.iterations = it + 1;
        const Matrix grad = p.gradient(qy);
        Matrix next;
        Eigen::VectorXd next_q;
        double next_ll = 0.0;
        // Backtracking until the quadratic model bounds the (concave) objective.
        for (;;) {
            next = project_to_states(y + step * grad);
            next_q = p.probabilities(next);
            next_ll = p.log_likelihood(next_q);
            const Matrix d = next - y;
            const double model = lly + (grad.adjoint() * d).trace().real() - d.squaredNorm() / (2.0 * step);
            if (next_ll >= model || step < 1e-14) {
                break;
            }
            step *= 0.5;
        }
        if (!(next_ll >= ll)) {
            if (momentum == 1.0) {
                result.converged = true;
                break;
            }
            y = sigma;
            qy = q;
            lly = ll;
            momentum = 1.0;
            continue;
        }
        const double gain = next_ll - ll;
        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        y = next + ((momentum - 1.0) / next_momentum) * (next - sigma);
        momentum = next_momentum;
        // The extrapolated point may leave the feasible set; fall back to the iterate.
        Eigen::SelfAdjointEigenSolver<Matrix> check(y, Eigen::EigenvaluesOnly);
        qy = p.probabilities(y);
        lly = p.log_likelihood(qy);
        if (check.eigenvalues().minCoeff() < 0.0 || !std::isfinite(lly)) {
            y = next;
            qy = next_q;
            lly = next_ll;
            momentum = 1.0;
        }
        sigma = std::move(next);
        q = std::move(next_q);
        ll = next_ll;
        if (options.record_trace) {
            result.log_likelihood.push_back(ll);
        }
        step *= 1.2;
        if (gain < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    return sigma;
}

Matrix diluted_ascent(const Whitened &p, const MleOptions &options, MleResult &result, Matrix sigma) {
    const Eigen::Index n = p.wt.cols();
    const Matrix identity = Matrix::Identity(n, n);
    Eigen::VectorXd q = p.probabilities(sigma);
    double ll = p.log_likelihood(q);
    if (options.record_trace) {
        result.log_likelihood.push_back(ll);
    }
    double step = 1.0;
    for (int it = 0; it < options.max_iterations; ++it) {
        result.iterations = it + 1;
        const Matrix t = p.gradient(q) - identity;
        Matrix next;
        Eigen::VectorXd next_q;
        double next_ll = ll;
        bool accepted = false;
        while (step > 1e-12) {
            const Matrix a = identity + step * t;
            next = a * sigma * a.adjoint();
            next = 0.5 * (next + next.adjoint()).eval();
            next /= next.trace().real();
            next_q = p.probabilities(next);
            next_ll = p.log_likelihood(next_q);
            if (next_ll >= ll) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            result.converged = true;
            break;
        }
        const double gain = next_ll - ll;
        sigma = std::move(next);
        q = std::move(next_q);
        ll = next_ll;
        if (options.record_trace) {
            result.log_likelihood.push_back(ll);
        }
        step = std::min(step * 1.5, 1e3);
        if (gain < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    return sigma;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

TomographyDesign default_design() {
    static const Projector kPauliStates[] = {Projector::zero, Projector::one,    Projector::plus,
                                             Projector::minus, Projector::plus_i, Projector::minus_i};
    static const char *kStateLabels[] = {"0", "1", "+", "-", "+i", "-i"};
    // Each basis lists its +1 eigenstate first.
    static const std::array<std::pair<Projector, Projector>, 3> kBases = {
        std::pair{Projector::plus, Projector::minus}, std::pair{Projector::plus_i, Projector::minus_i},
        std::pair{Projector::zero, Projector::one}};
    static const char *kBasisLabels[] = {"X", "Y", "Z"};

    TomographyDesign design;
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            design.inputs.push_back(kron(single_qubit_ket(kPauliStates[a]), single_qubit_ket(kPauliStates[b])));
            design.input_labels.push_back(std::string(kStateLabels[a]) + "," + kStateLabels[b]);
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const Vector a0 = single_qubit_ket(kBases[a].first);
            const Vector a1 = single_qubit_ket(kBases[a].second);
            const Vector b0 = single_qubit_ket(kBases[b].first);
            const Vector b1 = single_qubit_ket(kBases[b].second);
            design.settings.push_back({kron(a0, b0), kron(a0, b1), kron(a1, b0), kron(a1, b1)});
            design.setting_labels.push_back(std::string(kBasisLabels[a]) + kBasisLabels[b]);
        }
    }
    return design;
}

int input_rank(const TomographyDesign &design) {
    if (design.inputs.empty()) {
        return 0;
    }
    std::vector<Matrix> ops;
    for (const Vector &v : design.inputs) {
        ops.push_back(v * v.adjoint());
    }
    return span_rank(ops);
}

int effect_rank(const TomographyDesign &design) {
    if (design.settings.empty()) {
        return 0;
    }
    std::vector<Matrix> ops;
    for (const auto &setting : design.settings) {
        for (const Vector &v : setting) {
            ops.push_back(v * v.adjoint());
        }
    }
    return span_rank(ops);
}

std::vector<double> TomographyDataset::as_real() const {
    return std::vector<double>(counts.begin(), counts.end());
}

std::vector<double> outcome_probabilities(const ProcessMatrix &channel, const TomographyDesign &design) {
    if (channel.qubits() != 2) {
        throw Error(ErrorCode::invalid_argument, "tomography design expects a two-qubit channel");
    }
    // d * <v|chi|v> reproduces Tr[R(rho_in) Pi] for the raw/trace_one conventions.
    const double scale = channel.normalization() == Normalization::trace_dim ? 1.0 : kChannelDim;
    Eigen::VectorXd q = scale * quadratic_forms(record_vectors(design), channel.chi());
    std::vector<double> p(q.size());
    for (Eigen::Index k = 0; k < q.size(); ++k) {
        p[k] = std::max(0.0, q(k));
    }
    return p;
}

std::vector<double> expected_counts(const ProcessMatrix &channel, const TomographyDesign &design, double rate) {
    if (!(rate > 0)) {
        throw Error(ErrorCode::invalid_argument, "count rate must be positive");
    }
    std::vector<double> p = outcome_probabilities(channel, design);
    for (double &x : p) {
        x *= rate;
    }
    return p;
}

TomographyDataset simulate_counts(const ProcessMatrix &channel, const TomographyDesign &design, double rate,
                                  std::uint64_t seed, int phase_id) {
    std::vector<double> mean = expected_counts(channel, design, rate);
    std::mt19937_64 rng(seed);
    TomographyDataset data;
    data.phase_id = phase_id;
    data.rate = rate;
    data.counts.reserve(mean.size());
    for (double m : mean) {
        data.counts.push_back(poisson_draw(rng, m));
    }
    return data;
}

MleResult mle_reconstruct(std::span<const double> counts, const TomographyDesign &design,
                          const MleOptions &options) {
    if (counts.size() != design.record_count()) {
        throw Error(ErrorCode::invalid_argument, "dataset does not cover the tomography design");
    }
    if (input_rank(design) < kChannelDim * kChannelDim || effect_rank(design) < kChannelDim * kChannelDim) {
        throw Error(ErrorCode::unidentifiable, "unidentifiable model: design does not span the process space");
    }
    if (options.max_iterations < 1 || !(options.tolerance > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "MLE needs a positive iteration cap and tolerance");
    }
    double total = 0.0;
    for (double c : counts) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw Error(ErrorCode::invalid_argument, "counts must be finite and non-negative");
        }
        total += c;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::numerical, "dataset holds no counts");
    }
    Eigen::VectorXd freq(static_cast<Eigen::Index>(counts.size()));
    for (std::size_t k = 0; k < counts.size(); ++k) {
        freq(static_cast<Eigen::Index>(k)) = counts[k] / total;
    }

    // Whitening: with G = sum_k F_k, sigma = G^{1/2} chi G^{1/2} turns the
    // Poisson likelihood into a multinomial one over all records.
    const Matrix w = record_vectors(design);
    const Matrix g = kChannelDim * (w.transpose() * w.conjugate());
    const Matrix g_inv_half = hermitian_power(g, -0.5);
    const Eigen::Index n = kChannelDim * kChannelDim;
    const Whitened problem{std::sqrt(static_cast<double>(kChannelDim)) * (w * g_inv_half.transpose()),
                           std::move(freq)};

    MleResult result{ProcessMatrix(Matrix::Identity(1, 1), Normalization::trace_one), 0, false, {}};
    Matrix start = Matrix::Identity(n, n) / static_cast<double>(n);
    if (options.warm_start) {
        if (options.warm_start->rows() != n || options.warm_start->cols() != n) {
            throw Error(ErrorCode::invalid_argument, "warm start must be a 16x16 process matrix");
        }
        const Matrix g_half = hermitian_power(g, 0.5);
        Matrix warm = g_half * (*options.warm_start) * g_half;
        warm = 0.5 * (warm + warm.adjoint()).eval();
        const double tr = warm.trace().real();
        if (!(tr > 0.0) || !std::isfinite(tr)) {
            throw Error(ErrorCode::invalid_argument, "warm start has non-positive trace");
        }
        start = 0.99 * (warm / tr) + 0.01 * start;
    }
    Matrix sigma = diluted_ascent(problem, options, result, std::move(start));
    if (options.method == MleMethod::polished && result.iterations < options.max_iterations) {
        result.converged = false;
        sigma = projected_ascent(problem, options, result, std::move(sigma));
    }
    Matrix chi = g_inv_half * sigma * g_inv_half;
    chi = 0.5 * (chi + chi.adjoint()).eval();
    chi /= chi.trace().real();
    result.chi = ProcessMatrix(std::move(chi), Normalization::trace_one);
    return result;
}

MleResult mle_reconstruct(const TomographyDataset &dataset, const TomographyDesign &design,
                          const MleOptions &options) {
    std::vector<double> c = dataset.as_real();
    return mle_reconstruct(std::span<const double>(c), design, options);
}

FidelityStats monte_carlo_errors(const TomographyDataset &dataset, const TomographyDesign &design, int trials,
                                 PhaseAngle phi, std::uint64_t seed, const MleOptions &options) {
    if (trials < 2) {
        throw Error(ErrorCode::invalid_argument, "Monte Carlo error estimation needs at least two trials");
    }
    MleOptions opts = options;
    opts.record_trace = false;
    if (!opts.warm_start) {
        opts.warm_start = mle_reconstruct(dataset, design, opts).chi.chi();
    }
    const Operator cu = cu_phase(phi);
    const Operator uu = two_copies(phi);
    std::vector<double> f_cu;
    std::vector<double> f_uu;
    std::vector<double> resampled(dataset.counts.size());
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        for (std::size_t k = 0; k < dataset.counts.size(); ++k) {
            resampled[k] = static_cast<double>(poisson_draw(rng, static_cast<double>(dataset.counts[k])));
        }
        MleResult r = mle_reconstruct(std::span<const double>(resampled), design, opts);
        f_cu.push_back(process_fidelity(r.chi, cu));
        f_uu.push_back(process_fidelity(r.chi, uu));
    }
    FidelityStats stats;
    stats.trials = trials;
    stats.mean_cu = mean_of(f_cu);
    stats.std_cu = sample_std(f_cu, stats.mean_cu);
    stats.mean_uu = mean_of(f_uu);
    stats.std_uu = sample_std(f_uu, stats.mean_uu);
    return stats;
}

FitResult fit_cosine(std::span<const double> phases, std::span<const double> fidelities) {
    if (phases.size() != fidelities.size()) {
        throw Error(ErrorCode::invalid_argument, "fit_cosine: phases and fidelities differ in length");
    }
    std::vector<double> distinct;
    for (double p : phases) {
        double r = PhaseAngle(p).radians();
        if (std::none_of(distinct.begin(), distinct.end(), [&](double d) { return std::abs(d - r) < 1e-12; })) {
            distinct.push_back(r);
        }
    }
    if (distinct.size() < 2) {
        throw Error(ErrorCode::invalid_argument, "fit_cosine needs at least two distinct phases");
    }
    // Normal equations for the basis {1, cos phi}.
    double s1 = 0, sc = 0, scc = 0, sy = 0, scy = 0;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        const double c = std::cos(phases[k]);
        s1 += 1;
        sc += c;
        scc += c * c;
        sy += fidelities[k];
        scy += c * fidelities[k];
    }
    const double det = s1 * scc - sc * sc;
    if (std::abs(det) < 1e-14 * std::max(1.0, s1 * scc)) {
        throw Error(ErrorCode::invalid_argument, "fit_cosine: phases do not separate the offset from the cosine");
    }
    FitResult fit;
    fit.offset = (scc * sy - sc * scy) / det;
    fit.amplitude = (s1 * scy - sc * sy) / det;
    double rss = 0.0;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        const double r = fidelities[k] - (fit.offset + fit.amplitude * std::cos(phases[k]));
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / static_cast<double>(phases.size()));
    return fit;
}

std::vector<double> default_phases() {
    std::vector<double> phases;
    for (int k = 0; k < 8; ++k) {
        phases.push_back(k * std::numbers::pi / 4.0);
    }
    return phases;
}

PipelineReport experiment_pipeline(const OpticsParams &params, std::span<const double> phases,
                                   const PipelineOptions &options) {
    if (phases.empty()) {
        throw Error(ErrorCode::invalid_argument, "pipeline needs at least one phase");
    }
    if (options.trials == 1 || options.trials < 0) {
        throw Error(ErrorCode::invalid_argument, "trials must be 0 (no error bars) or at least 2");
    }
    const TomographyDesign design = default_design();
    PipelineReport report;
    std::vector<double> phis;
    std::vector<double> f_uu;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        const PhaseAngle phi(phases[k]);
        const int id = static_cast<int>(k);
        const ReplicationChannel channel = replication_experiment(phi, params);
        TomographyDataset data = simulate_counts(channel.projected, design, options.rate,
                                                 derive_seed(options.seed, 2 * k), id);
        MleResult mle = mle_reconstruct(data, design, options.mle);
        const Operator cu = cu_phase(phi);
        const Operator uu = two_copies(phi);
        const Operator cu_op[] = {cu};
        PhaseReport row{id,
                        phases[k],
                        mle.chi,
                        choi_from_kraus(cu_op).normalized(),
                        process_fidelity(mle.chi, cu),
                        process_fidelity(mle.chi, uu),
                        process_fidelity(channel.projected, cu),
                        process_fidelity(channel.projected, uu),
                        channel.projected_success,
                        FidelityStats{},
                        mle.iterations,
                        mle.converged};
        if (options.trials >= 2) {
            row.errors = monte_carlo_errors(data, design, options.trials, phi, derive_seed(options.seed, 2 * k + 1),
                                            options.mle);
        }
        phis.push_back(phases[k]);
        f_uu.push_back(row.f_uu);
        report.phases.push_back(std::move(row));
        report.datasets.push_back(std::move(data));
    }
    double sum_cu = 0.0;
    double sum_uu = 0.0;
    report.max_std = 0.0;
    for (const PhaseReport &r : report.phases) {
        sum_cu += r.f_cu;
        sum_uu += r.f_uu;
        report.max_std = std::max({report.max_std, r.errors.std_cu, r.errors.std_uu});
    }
    report.mean_f_cu = sum_cu / static_cast<double>(report.phases.size());
    report.mean_f_uu = sum_uu / static_cast<double>(report.phases.size());
    if (phases.size() >= 2) {
        try {
            report.fit_uu = fit_cosine(phis, f_uu);
        } catch (const Error &) {
            report.fit_uu = FitResult{report.mean_f_uu, 0.0, 0.0};
        }
    } else {
        report.fit_uu = FitResult{report.mean_f_uu, 0.0, 0.0};
    }
    return report;
}

void write_dataset_csv(std::ostream &out, std::span<const TomographyDataset> datasets,
                       const TomographyDesign &design) {
    out << "phase_id,input_id,setting_id,outcome_id,count\n";
    for (const TomographyDataset &d : datasets) {
        if (d.counts.size() != design.record_count()) {
            throw Error(ErrorCode::invalid_argument, "dataset does not match the design");
        }
        for (std::size_t i = 0; i < design.inputs.size(); ++i) {
            for (std::size_t s = 0; s < design.settings.size(); ++s) {
                for (std::size_t o = 0; o < 4; ++o) {
                    out << d.phase_id << ',' << i << ',' << s << ',' << o << ','
                        << d.counts[design.record_index(i, s, o)] << '\n';
                }
            }
        }
    }
}

std::vector<TomographyDataset> read_dataset_csv(std::istream &in, const TomographyDesign &design) {
    std::map<int, TomographyDataset> by_phase;
    std::map<int, std::vector<bool>> seen;
    std::string line;
    bool header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != "phase_id,input_id,setting_id,outcome_id,count") {
                throw Error(ErrorCode::io, "unexpected dataset CSV header: " + line);
            }
            header = true;
            continue;
        }
        std::istringstream row(line);
        long long f[5];
        char comma;
        if (!(row >> f[0] >> comma >> f[1] >> comma >> f[2] >> comma >> f[3] >> comma >> f[4])) {
            throw Error(ErrorCode::io, "malformed dataset CSV line " + std::to_string(line_no));
        }
        if (f[1] < 0 || f[2] < 0 || f[3] < 0 || f[4] < 0 || static_cast<std::size_t>(f[1]) >= design.inputs.size() ||
            static_cast<std::size_t>(f[2]) >= design.settings.size() || f[3] >= 4) {
            throw Error(ErrorCode::io, "dataset CSV line " + std::to_string(line_no) + " is out of range");
        }
        const int phase = static_cast<int>(f[0]);
        TomographyDataset &d = by_phase[phase];
        if (d.counts.empty()) {
            d.phase_id = phase;
            d.counts.assign(design.record_count(), 0);
            seen[phase].assign(design.record_count(), false);
        }
        const std::size_t k = design.record_index(f[1], f[2], f[3]);
        d.counts[k] = static_cast<std::uint64_t>(f[4]);
        seen[phase][k] = true;
    }
    std::vector<TomographyDataset> out;
    for (auto &[phase, d] : by_phase) {
        if (std::find(seen[phase].begin(), seen[phase].end(), false) != seen[phase].end()) {
            throw Error(ErrorCode::io, "dataset CSV misses records for phase " + std::to_string(phase));
        }
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace superrep

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

#include "superrep/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "superrep/gates.h"
#include "superrep/replication.h"
#include "superrep/report.h"

namespace superrep {

namespace {

using nlohmann::json;

constexpr double kBandCuLow = 0.80;
constexpr double kBandCuHigh = 0.95;
constexpr double kBandUuLow = 0.50;
constexpr double kBandUuHigh = 0.625;

[[noreturn]] void bad(const std::string &what) {
    throw Error(ErrorCode::invalid_config, what);
}

json parse_object(const std::string &text, const char *what) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return json::object();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        bad(std::string(what) + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        bad(std::string(what) + " must be a JSON object");
    }
    return doc;
}

const std::set<std::string> &known_keys() {
    static const std::set<std::string> keys = {
        "seed",         "out_dir",      "svg",          "register_cap",
        "tolerances",   "phases",       "preset",       "optics",
        "twirl_grid",   "cloner_grid",  "measure_prepare_intervals",
        "alpha",        "copies",       "pairs",        "phase_points",
        "rate",         "trials",       "mle_max_iterations", "mle_tolerance",
        "mle_method",   "scan_parameter", "scan_start", "scan_stop",
        "scan_points",
    };
    return keys;
}

const std::vector<std::string> &optics_keys() {
    static const std::vector<std::string> keys = {"reflectance_v", "reflectance_h", "visibility",
                                                  "phase_jitter_sigma"};
    return keys;
}

double as_double(const json &v, const std::string &key) {
    if (!v.is_number()) {
        bad("'" + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        bad("'" + key + "' must be finite");
    }
    return x;
}

long long as_integer(const json &v, const std::string &key) {
    if (v.is_number_integer()) {
        return v.get<long long>();
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
            return static_cast<long long>(x);
        }
    }
    bad("'" + key + "' must be an integer");
}

int int_in(const json &v, const std::string &key, long long lo, long long hi) {
    const long long x = as_integer(v, key);
    if (x < lo || x > hi) {
        bad("'" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
}

double positive(const json &v, const std::string &key) {
    const double x = as_double(v, key);
    if (!(x > 0.0)) {
        bad("'" + key + "' must be positive");
    }
    return x;
}

double &optics_field(OpticsParams &p, const std::string &name) {
    if (name == "reflectance_v") {
        return p.reflectance_v;
    }
    if (name == "reflectance_h") {
        return p.reflectance_h;
    }
    if (name == "visibility") {
        return p.visibility;
    }
    return p.phase_jitter_sigma;
}

void check_optics(const OpticsParams &p) {
    try {
        p.validate();
    } catch (const Error &e) {
        bad(std::string("optics: ") + e.what());
    }
}

std::string cell(double v) {
    return format_double(v);
}

Operator two_copies(PhaseAngle phi) {
    const Operator u = phase_gate(phi);
    return kron(u, u);
}

OutputMetadata metadata(const RunConfig &c) {
    return {to_string(c.command), c.config_hash, c.seed};
}

json meta_json(const RunConfig &c) {
    return {{"version", kVersion}, {"command", to_string(c.command)}, {"config_hash", c.config_hash}, {"seed", c.seed}};
}

json optics_json(const OpticsParams &p) {
    return {{"reflectance_v", p.reflectance_v},
            {"reflectance_h", p.reflectance_h},
            {"visibility", p.visibility},
            {"phase_jitter_sigma", p.phase_jitter_sigma}};
}

std::string dump(const json &j) {
    return j.dump(1) + "\n";
}

Eigen::MatrixXd real_part(const ProcessMatrix &chi) {
    return chi.chi().real();
}

class ToleranceScope {
   public:
    explicit ToleranceScope(const Tolerances &t) : saved_(tolerances()) {
        set_tolerances(t);
    }
    ~ToleranceScope() {
        set_tolerances(saved_);
    }
    ToleranceScope(const ToleranceScope &) = delete;
    ToleranceScope &operator=(const ToleranceScope &) = delete;

   private:
    Tolerances saved_;
};

CommandOutput replicate(const RunConfig &c) {
    const OutputMetadata meta = metadata(c);
    const double mp = baseline_measure_prepare(c.measure_prepare_intervals);
    CsvTable table({"phi", "F_UU_ideal", "F_UU_noisy", "F_CU_noisy", "F_single_copy", "F_measure_prepare",
                    "F_twirled", "F_optimal_cloner"});
    std::vector<PlotSeries> plot = {{"F_UU ideal", {}, {}, true},   {"F_UU noisy", {}, {}, true},
                                    {"F_CU noisy", {}, {}, true},   {"single copy", {}, {}, false},
                                    {"measure-prepare", {}, {}, false}, {"optimal cloner", {}, {}, false}};
    double sum_ideal = 0.0, sum_uu = 0.0, sum_cu = 0.0;
    for (double raw : c.phases) {
        const PhaseAngle phi(raw);
        const ProcessMatrix chan = replication_experiment_channel(phi, c.optics);
        const double row[] = {phi.radians(),
                              fidelity_replicas(phi),
                              process_fidelity(chan, two_copies(phi)),
                              process_fidelity(chan, cu_phase(phi)),
                              baseline_single_copy(phi),
                              mp,
                              twirled_mean_fidelity(c.twirl_grid, phi),
                              optimal_cloner_fidelity(phi)};
        std::vector<std::string> cells;
        for (double v : row) {
            cells.push_back(cell(v));
        }
        table.add_row(std::move(cells));
        const int columns[] = {1, 2, 3, 4, 5, 7};
        for (std::size_t s = 0; s < plot.size(); ++s) {
            plot[s].x.push_back(row[0]);
            plot[s].y.push_back(row[columns[s]]);
        }
        sum_ideal += row[1];
        sum_uu += row[2];
        sum_cu += row[3];
    }
    const double n = static_cast<double>(c.phases.size());
    json summary = {{"metadata", meta_json(c)},
                    {"preset", c.preset},
                    {"optics", optics_json(c.optics)},
                    {"phase_count", c.phases.size()},
                    {"mean_F_UU_ideal", sum_ideal / n},
                    {"mean_F_UU_noisy", sum_uu / n},
                    {"mean_F_CU_noisy", sum_cu / n},
                    {"single_copy_mean", baseline_single_copy_mean(c.twirl_grid)},
                    {"measure_prepare_mean", mp},
                    {"twirled_mean", twirled_mean_fidelity(c.twirl_grid)},
                    {"optimal_cloner_mean", optimal_cloner_mean_fidelity(c.cloner_grid)},
                    {"optimal_cloner_bound", kOptimalClonerFidelity}};
    CommandOutput out;
    out.files["replicate.csv"] = table.render(meta);
    out.files["replicate_summary.json"] = dump(summary);
    if (c.svg) {
        out.files["replicate.svg"] = svg_line_plot("Replication fidelity", "phi (rad)", "fidelity", plot);
    }
    out.summary_json = summary.dump();
    return out;
}

CommandOutput superrep_sweep(const RunConfig &c) {
    const OutputMetadata meta = metadata(c);
    const std::vector<double> grid = uniform_phase_grid(c.phase_points);
    std::vector<ConvergenceRow> rows = asymptotic_sweep(c.alpha, c.copies, grid);
    for (const auto &[n, m] : c.pairs) {
        rows.push_back(convergence_row(ReplicationSpec(n, m), effective_alpha(n, m), grid));
    }
    CsvTable conv({"N", "M", "alpha", "worst_phi", "worst_fidelity"});
    CsvTable table({"N", "M", "alpha", "phi", "fidelity"});
    PlotSeries worst{"worst-case infidelity", {}, {}, true};
    json rows_json = json::array();
    for (const auto &r : rows) {
        conv.add_row({std::to_string(r.copies), std::to_string(r.replicas), cell(r.alpha), cell(r.worst_phi),
                      cell(r.worst_fidelity)});
        for (std::size_t i = 0; i < r.phis.size(); ++i) {
            table.add_row({std::to_string(r.copies), std::to_string(r.replicas), cell(r.alpha), cell(r.phis[i]),
                           cell(r.fidelities[i])});
        }
        if (&r - rows.data() < static_cast<std::ptrdiff_t>(c.copies.size())) {
            worst.x.push_back(r.copies);
            worst.y.push_back(1.0 - r.worst_fidelity);
        }
        rows_json.push_back({{"N", r.copies},
                             {"M", r.replicas},
                             {"worst_phi", r.worst_phi},
                             {"worst_fidelity", r.worst_fidelity}});
    }
    json summary = {{"metadata", meta_json(c)}, {"alpha", c.alpha}, {"rows", rows_json}};
    CommandOutput out;
    out.files["superrep_convergence.csv"] = conv.render(meta);
    out.files["superrep_table.csv"] = table.render(meta);
    if (c.svg) {
        out.files["superrep_convergence.svg"] =
            svg_line_plot("Worst-case infidelity, M = floor(N^(2 - alpha))", "N", "1 - F", {worst});
    }
    out.summary_json = summary.dump();
    return out;
}

CommandOutput tomography(const RunConfig &c) {
    const OutputMetadata meta = metadata(c);
    PipelineOptions opts;
    opts.rate = c.rate;
    opts.trials = c.trials;
    opts.seed = c.seed;
    opts.mle = c.mle;
    const PipelineReport report = experiment_pipeline(c.optics, c.phases, opts);

    CommandOutput out;
    CsvTable table({"phase_id", "phi", "F_CU", "F_CU_std", "F_UU", "F_UU_std", "F_CU_model", "F_UU_model",
                    "success_probability", "mle_iterations", "mle_converged"});
    PlotSeries cu{"F_CU", {}, {}, true}, uu{"F_UU", {}, {}, true}, fit{"A + B cos(phi)", {}, {}, false};
    json warnings = json::array();
    json phases = json::array();
    for (const auto &p : report.phases) {
        table.add_row({std::to_string(p.phase_id), cell(p.phi), cell(p.f_cu), cell(p.errors.std_cu), cell(p.f_uu),
                       cell(p.errors.std_uu), cell(p.f_cu_model), cell(p.f_uu_model), cell(p.success_probability),
                       std::to_string(p.iterations), p.converged ? "1" : "0"});
        const std::string k = std::to_string(p.phase_id);
        out.files["chi_phase" + k + ".json"] = process_to_json(p.chi, meta, p.phi, p.phase_id);
        out.files["chi_th_phase" + k + ".json"] = process_to_json(p.chi_th, meta, p.phi, p.phase_id);
        if (c.svg) {
            out.files["chi_phase" + k + "_real.svg"] = svg_heatmap("Re chi, phi = " + cell(p.phi), real_part(p.chi));
            out.files["chi_th_phase" + k + "_real.svg"] =
                svg_heatmap("Re chi_th, phi = " + cell(p.phi), real_part(p.chi_th));
        }
        if (!p.converged) {
            warnings.push_back("phase " + k + ": MLE stopped at the iteration cap");
        }
        cu.x.push_back(p.phi);
        cu.y.push_back(p.f_cu);
        uu.x.push_back(p.phi);
        uu.y.push_back(p.f_uu);
        phases.push_back({{"phase_id", p.phase_id},
                          {"phi", p.phi},
                          {"F_CU", p.f_cu},
                          {"F_CU_std", p.errors.std_cu},
                          {"F_UU", p.f_uu},
                          {"F_UU_std", p.errors.std_uu}});
    }
    for (int i = 0; i <= 64; ++i) {
        const double x = 2.0 * std::numbers::pi * i / 64;
        fit.x.push_back(x);
        fit.y.push_back(report.fit_uu.offset + report.fit_uu.amplitude * std::cos(x));
    }
    const bool cu_in = report.mean_f_cu >= kBandCuLow && report.mean_f_cu <= kBandCuHigh;
    const bool uu_in = report.mean_f_uu >= kBandUuLow && report.mean_f_uu <= kBandUuHigh;
    if (c.preset == "measured") {
        if (!cu_in) {
            warnings.push_back("mean F_CU " + cell(report.mean_f_cu) + " lies outside the band [0.80, 0.95]");
        }
        if (!uu_in) {
            warnings.push_back("mean F_UU " + cell(report.mean_f_uu) + " lies outside the band [0.50, 0.625]");
        }
        if (!(report.fit_uu.amplitude > 0.0)) {
            warnings.push_back("F_UU cosine fit has non-positive amplitude");
        }
    }
    json doc = {{"metadata", meta_json(c)},
                {"preset", c.preset},
                {"optics", optics_json(c.optics)},
                {"rate", c.rate},
                {"trials", c.trials},
                {"mle_method", c.mle.method == MleMethod::polished ? "polished" : "diluted_fixed_point"},
                {"phases", phases},
                {"mean_F_CU", report.mean_f_cu},
                {"mean_F_UU", report.mean_f_uu},
                {"max_std", report.max_std},
                {"fit_F_UU",
                 {{"offset", report.fit_uu.offset},
                  {"amplitude", report.fit_uu.amplitude},
                  {"residual_rms", report.fit_uu.residual_rms}}},
                {"bands",
                 {{"mean_F_CU", {kBandCuLow, kBandCuHigh}},
                  {"mean_F_UU", {kBandUuLow, kBandUuHigh}},
                  {"mean_F_CU_in_band", cu_in},
                  {"mean_F_UU_in_band", uu_in}}},
                {"warnings", warnings}};

    std::ostringstream counts;
    counts << "# version " << kVersion << "\n# command " << meta.command << "\n# config_hash " << meta.config_hash
           << "\n# seed " << meta.seed << "\n";
    write_dataset_csv(counts, report.datasets, default_design());

    out.files["tomo_fidelities.csv"] = table.render(meta);
    out.files["tomo_counts.csv"] = counts.str();
    out.files["tomo_report.json"] = dump(doc);
    if (c.svg) {
        out.files["tomo_fidelities.svg"] =
            svg_line_plot("Reconstructed process fidelities", "phi (rad)", "fidelity", {cu, uu, fit});
    }
    json summary = doc;
    summary.erase("phases");
    out.summary_json = summary.dump();
    return out;
}

CommandOutput optics_scan(const RunConfig &c) {
    const OutputMetadata meta = metadata(c);
    CsvTable table({"parameter", "value", "phi", "F_toffoli", "F_CU", "F_UU", "success_probability"});
    PlotSeries cu{"mean F_CU", {}, {}, true}, uu{"mean F_UU", {}, {}, true}, tof{"F_toffoli", {}, {}, true};
    const Operator ideal_toffoli = toffoli();
    json points = json::array();
    for (int i = 0; i < c.scan_points; ++i) {
        const double t = c.scan_points == 1 ? 0.0 : static_cast<double>(i) / (c.scan_points - 1);
        const double value = c.scan_start + (c.scan_stop - c.scan_start) * t;
        OpticsParams p = c.optics;
        optics_field(p, c.scan_parameter) = value;
        const double f_tof = process_fidelity(effective_toffoli_process(p), ideal_toffoli);
        double sum_cu = 0.0, sum_uu = 0.0;
        for (double raw : c.phases) {
            const PhaseAngle phi(raw);
            const ReplicationChannel ch = replication_experiment(phi, p);
            const double f_cu = process_fidelity(ch.projected, cu_phase(phi));
            const double f_uu = process_fidelity(ch.projected, two_copies(phi));
            table.add_row({c.scan_parameter, cell(value), cell(phi.radians()), cell(f_tof), cell(f_cu), cell(f_uu),
                           cell(ch.projected_success)});
            sum_cu += f_cu;
            sum_uu += f_uu;
        }
        const double n = static_cast<double>(c.phases.size());
        cu.x.push_back(value);
        cu.y.push_back(sum_cu / n);
        uu.x.push_back(value);
        uu.y.push_back(sum_uu / n);
        tof.x.push_back(value);
        tof.y.push_back(f_tof);
        points.push_back({{"value", value}, {"F_toffoli", f_tof}, {"mean_F_CU", sum_cu / n}, {"mean_F_UU", sum_uu / n}});
    }
    json summary = {{"metadata", meta_json(c)}, {"parameter", c.scan_parameter}, {"points", points}};
    CommandOutput out;
    out.files["optics_scan.csv"] = table.render(meta);
    if (c.svg) {
        out.files["optics_scan.svg"] = svg_line_plot("Imperfection scan", c.scan_parameter, "fidelity", {tof, cu, uu});
    }
    out.summary_json = summary.dump();
    return out;
}

}  // namespace

const char *to_string(Command c) {
    switch (c) {
        case Command::replicate: return "replicate";
        case Command::superrep: return "superrep";
        case Command::tomo: return "tomo";
        case Command::optics_scan: return "optics-scan";
    }
    return "unknown";
}

Command parse_command(const std::string &name) {
    for (Command c : {Command::replicate, Command::superrep, Command::tomo, Command::optics_scan}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    bad("unknown command '" + name + "' (expected replicate, superrep, tomo or optics-scan)");
}

double parse_phase(const std::string &text) {
    static const std::regex pattern(
        R"(^\s*([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(\*?\s*pi)?\s*(?:/\s*((?:\d+\.?\d*|\.\d+)))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern) || (!m[2].matched && !m[3].matched)) {
        bad("cannot read phase '" + text + "' (examples: 0.5, pi/2, 3pi/4, -pi)");
    }
    if (m[3].matched && m[3].str().find('*') != std::string::npos && !m[2].matched) {
        bad("cannot read phase '" + text + "'");
    }
    double value = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[3].matched) {
        value *= std::numbers::pi;
    }
    if (m[4].matched) {
        const double den = std::stod(m[4].str());
        if (den == 0.0) {
            bad("phase '" + text + "' divides by zero");
        }
        value /= den;
    }
    if (m[1].matched && m[1].str() == "-") {
        value = -value;
    }
    return value;
}

RunConfig parse_run_config(Command command, const std::string &config_json, const std::string &overrides_json) {
    json merged = parse_object(config_json, "configuration");
    merged.merge_patch(parse_object(overrides_json, "overrides"));
    for (const auto &[key, value] : merged.items()) {
        if (!known_keys().count(key)) {
            bad("unknown configuration key '" + key + "'");
        }
    }

    RunConfig c;
    c.command = command;
    if (merged.contains("seed")) {
        const json &s = merged["seed"];
        if (s.is_number_unsigned()) {
            c.seed = s.get<std::uint64_t>();
        } else {
            const long long v = as_integer(s, "seed");
            if (v < 0) {
                bad("'seed' must be non-negative");
            }
            c.seed = static_cast<std::uint64_t>(v);
        }
    }
    if (merged.contains("out_dir")) {
        if (!merged["out_dir"].is_string() || merged["out_dir"].get<std::string>().empty()) {
            bad("'out_dir' must be a non-empty string");
        }
        c.out_dir = merged["out_dir"].get<std::string>();
    } else if (const char *env = std::getenv("SUPERREP_OUT_DIR"); env && *env) {
        c.out_dir = env;
    } else {
        c.out_dir = "out";
    }
    if (merged.contains("svg")) {
        if (!merged["svg"].is_boolean()) {
            bad("'svg' must be true or false");
        }
        c.svg = merged["svg"].get<bool>();
    }
    if (merged.contains("register_cap")) {
        c.tolerances.register_cap = int_in(merged["register_cap"], "register_cap", 4, 30);
    }
    if (merged.contains("tolerances")) {
        const json &t = merged["tolerances"];
        if (!t.is_object()) {
            bad("'tolerances' must be an object");
        }
        for (const auto &[key, value] : t.items()) {
            const std::string name = "tolerances." + key;
            if (key == "unitarity") {
                c.tolerances.unitarity = positive(value, name);
            } else if (key == "normalization") {
                c.tolerances.normalization = positive(value, name);
            } else if (key == "hermiticity") {
                c.tolerances.hermiticity = positive(value, name);
            } else if (key == "eigenvalue") {
                c.tolerances.eigenvalue = positive(value, name);
            } else {
                bad("unknown configuration key '" + name + "'");
            }
        }
    }
    if (merged.contains("phases")) {
        const json &p = merged["phases"];
        if (!p.is_array() || p.empty()) {
            bad("'phases' must be a non-empty array");
        }
        for (const auto &v : p) {
            if (v.is_string()) {
                c.phases.push_back(parse_phase(v.get<std::string>()));
            } else {
                c.phases.push_back(as_double(v, "phases"));
            }
        }
    } else {
        c.phases = default_phases();
    }

    if (merged.contains("preset")) {
        if (!merged["preset"].is_string()) {
            bad("'preset' must be \"ideal\" or \"measured\"");
        }
        c.preset = merged["preset"].get<std::string>();
        if (c.preset != "ideal" && c.preset != "measured") {
            bad("'preset' must be \"ideal\" or \"measured\", got '" + c.preset + "'");
        }
    }
    c.optics = c.preset == "ideal" ? OpticsParams::ideal() : OpticsParams::measured();
    if (merged.contains("optics")) {
        const json &o = merged["optics"];
        if (!o.is_object()) {
            bad("'optics' must be an object");
        }
        for (const auto &[key, value] : o.items()) {
            if (std::find(optics_keys().begin(), optics_keys().end(), key) == optics_keys().end()) {
                bad("unknown configuration key 'optics." + key + "'");
            }
            optics_field(c.optics, key) = as_double(value, "optics." + key);
        }
    }
    check_optics(c.optics);

    if (merged.contains("twirl_grid")) {
        c.twirl_grid = int_in(merged["twirl_grid"], "twirl_grid", 1, 1 << 20);
    }
    if (merged.contains("cloner_grid")) {
        c.cloner_grid = int_in(merged["cloner_grid"], "cloner_grid", 1, 1 << 20);
    }
    if (merged.contains("measure_prepare_intervals")) {
        c.measure_prepare_intervals =
            int_in(merged["measure_prepare_intervals"], "measure_prepare_intervals", 2, 1 << 24);
        if (c.measure_prepare_intervals % 2) {
            bad("'measure_prepare_intervals' must be even");
        }
    }

    if (merged.contains("alpha")) {
        c.alpha = as_double(merged["alpha"], "alpha");
    }
    if (!(c.alpha > 0.0)) {
        bad("'alpha' must be positive");
    }
    if (c.alpha > 2.0) {
        bad("'alpha' must not exceed 2 (M = floor(N^(2 - alpha)) would drop below 1)");
    }
    if (merged.contains("copies")) {
        const json &v = merged["copies"];
        if (!v.is_array() || v.empty()) {
            bad("'copies' must be a non-empty array of integers");
        }
        for (const auto &n : v) {
            c.copies.push_back(int_in(n, "copies", 1, 1 << 20));
        }
    } else {
        c.copies = {1, 2, 3, 4, 9, 16, 25};
    }
    if (merged.contains("pairs")) {
        const json &v = merged["pairs"];
        if (!v.is_array()) {
            bad("'pairs' must be an array of [N, M] pairs");
        }
        for (const auto &pr : v) {
            if (!pr.is_array() || pr.size() != 2) {
                bad("'pairs' entries must be [N, M]");
            }
            c.pairs.emplace_back(int_in(pr[0], "pairs", 1, 1 << 20), int_in(pr[1], "pairs", 1, 1 << 20));
        }
    } else {
        c.pairs = {{1, 2}};
    }
    if (merged.contains("phase_points")) {
        c.phase_points = int_in(merged["phase_points"], "phase_points", 1, 1 << 20);
    }

    if (merged.contains("rate")) {
        c.rate = positive(merged["rate"], "rate");
    }
    if (merged.contains("trials")) {
        c.trials = int_in(merged["trials"], "trials", 0, 100000);
        if (c.trials == 1) {
            bad("'trials' must be 0 (no error bars) or at least 2");
        }
    }
    if (merged.contains("mle_max_iterations")) {
        c.mle.max_iterations = int_in(merged["mle_max_iterations"], "mle_max_iterations", 1, 10000000);
    }
    if (merged.contains("mle_tolerance")) {
        c.mle.tolerance = positive(merged["mle_tolerance"], "mle_tolerance");
    }
    if (merged.contains("mle_method")) {
        const json &m = merged["mle_method"];
        const std::string name = m.is_string() ? m.get<std::string>() : "";
        if (name == "polished") {
            c.mle.method = MleMethod::polished;
        } else if (name == "diluted_fixed_point") {
            c.mle.method = MleMethod::diluted_fixed_point;
        } else {
            bad("'mle_method' must be \"polished\" or \"diluted_fixed_point\"");
        }
    }
    c.mle.record_trace = false;

    if (merged.contains("scan_parameter")) {
        if (!merged["scan_parameter"].is_string()) {
            bad("'scan_parameter' must be a string");
        }
        c.scan_parameter = merged["scan_parameter"].get<std::string>();
        if (std::find(optics_keys().begin(), optics_keys().end(), c.scan_parameter) == optics_keys().end()) {
            bad("'scan_parameter' must be one of reflectance_v, reflectance_h, visibility, phase_jitter_sigma");
        }
    }
    if (merged.contains("scan_start")) {
        c.scan_start = as_double(merged["scan_start"], "scan_start");
    }
    if (merged.contains("scan_stop")) {
        c.scan_stop = as_double(merged["scan_stop"], "scan_stop");
    }
    if (merged.contains("scan_points")) {
        c.scan_points = int_in(merged["scan_points"], "scan_points", 1, 100000);
    }
    if (command == Command::optics_scan) {
        if (c.scan_parameter.empty()) {
            bad("optics-scan needs 'scan_parameter'");
        }
        if (!merged.contains("scan_start") || !merged.contains("scan_stop")) {
            bad("optics-scan needs 'scan_start' and 'scan_stop'");
        }
        for (double end : {c.scan_start, c.scan_stop}) {
            OpticsParams p = c.optics;
            optics_field(p, c.scan_parameter) = end;
            check_optics(p);
        }
    }

    json canonical = {{"command", to_string(command)},
                      {"seed", c.seed},
                      {"svg", c.svg},
                      {"register_cap", c.tolerances.register_cap},
                      {"tolerances",
                       {{"unitarity", c.tolerances.unitarity},
                        {"normalization", c.tolerances.normalization},
                        {"hermiticity", c.tolerances.hermiticity},
                        {"eigenvalue", c.tolerances.eigenvalue}}},
                      {"phases", c.phases},
                      {"preset", c.preset},
                      {"optics", optics_json(c.optics)},
                      {"twirl_grid", c.twirl_grid},
                      {"cloner_grid", c.cloner_grid},
                      {"measure_prepare_intervals", c.measure_prepare_intervals},
                      {"alpha", c.alpha},
                      {"copies", c.copies},
                      {"pairs", c.pairs},
                      {"phase_points", c.phase_points},
                      {"rate", c.rate},
                      {"trials", c.trials},
                      {"mle_max_iterations", c.mle.max_iterations},
                      {"mle_tolerance", c.mle.tolerance},
                      {"mle_method", c.mle.method == MleMethod::polished ? "polished" : "diluted_fixed_point"},
                      {"scan_parameter", c.scan_parameter},
                      {"scan_start", c.scan_start},
                      {"scan_stop", c.scan_stop},
                      {"scan_points", c.scan_points}};
    c.config_hash = hex64(fnv1a64(canonical.dump()));
    return c;
}

std::string config_schema() {
    return R"(Configuration: one JSON object. Command-line flags override file values.
Unknown keys are rejected.

common
  seed                       non-negative integer            default 1
  out_dir                    string                          default $SUPERREP_OUT_DIR, else ./out
  svg                        bool                            default false
  register_cap               integer in [4, 30]              default 24
  tolerances                 {unitarity, normalization, hermiticity, eigenvalue}, positive numbers
  phases                     array of radians or strings such as "pi/2", "3pi/4"
                                                             default k pi/4, k = 0..7
  preset                     "ideal" | "measured"            default "measured"
  optics                     {reflectance_v, reflectance_h, visibility in [0, 1],
                              phase_jitter_sigma >= 0}; overrides the preset
replicate
  twirl_grid                 integer >= 1                    default 64
  cloner_grid                integer >= 1                    default 64
  measure_prepare_intervals  even integer >= 2               default 4096
superrep
  alpha                      number in (0, 2]                default 0.5
  copies                     array of N >= 1                 default [1, 2, 3, 4, 9, 16, 25]
  pairs                      array of [N, M] extra rows      default [[1, 2]]
  phase_points               integer >= 1                    default 256
tomo
  rate                       mean counts per setting, > 0    default 1e4
  trials                     0 or integer >= 2               default 100
  mle_max_iterations         integer >= 1                    default 5000
  mle_tolerance              positive number                 default 1e-10
  mle_method                 "polished" | "diluted_fixed_point"
optics-scan
  scan_parameter             reflectance_v | reflectance_h | visibility | phase_jitter_sigma
  scan_start, scan_stop      numbers (required)
  scan_points                integer >= 1                    default 5
)";
}

CommandOutput build_outputs(const RunConfig &config) {
    ToleranceScope scope(config.tolerances);
    switch (config.command) {
        case Command::replicate: return replicate(config);
        case Command::superrep: return superrep_sweep(config);
        case Command::tomo: return tomography(config);
        case Command::optics_scan: return optics_scan(config);
    }
    throw Error(ErrorCode::invalid_config, "unknown command");
}

CommandOutput run_command(const RunConfig &config) {
    CommandOutput out = build_outputs(config);
    write_files_atomically(config.out_dir, out.files);
    json summary = json::parse(out.summary_json);
    summary["out_dir"] = config.out_dir;
    summary["files"] = json::array();
    for (const auto &[name, content] : out.files) {
        summary["files"].push_back(name);
    }
    out.summary_json = summary.dump();
    return out;
}

}  // namespace superrep

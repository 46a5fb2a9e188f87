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

// superrep: command-line front end.
//
//   superrep replicate   --phases pi
//   superrep superrep    --config run.json
//   superrep tomo        --preset ideal --rate 1e6 --trials 0
//   superrep optics-scan --config scan.json --svg
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "superrep/superrep.h"

namespace {

struct Flags {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string phases;
    std::optional<double> rate;
    std::optional<int> trials;
    std::string preset;
    bool svg = false;
};

void add_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config, "JSON configuration file");
    cmd->add_option("--out-dir", f.out_dir, "Output directory (default $SUPERREP_OUT_DIR or ./out)");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--phases", f.phases, "Comma-separated phases, e.g. 0,pi/4,pi");
    cmd->add_option("--rate", f.rate, "Mean counts per tomography setting");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials (0 or >= 2)");
    cmd->add_option("--preset", f.preset, "Optics preset")->check(CLI::IsMember({"ideal", "measured"}));
    cmd->add_flag("--svg", f.svg, "Also write SVG plots");
}

std::string schema() {
    char *text = nullptr;
    if (srp_config_schema(&text) != SRP_OK) {
        return "";
    }
    std::string s = text;
    srp_string_free(text);
    return s;
}

int exit_code(srp_status s) {
    return s == SRP_INVALID_CONFIG || s == SRP_INVALID_ARGUMENT ? 1 : 2;
}

int run(const std::string &command, const Flags &f) {
    std::string config_text;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            std::cerr << "error: cannot read configuration file '" << f.config << "'\n\n"
                      << "Expected a JSON object with these keys:\n\n"
                      << schema();
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        config_text = buf.str();
    }

    nlohmann::json overrides = nlohmann::json::object();
    if (!f.out_dir.empty()) {
        overrides["out_dir"] = f.out_dir;
    }
    if (f.seed) {
        overrides["seed"] = *f.seed;
    }
    if (!f.phases.empty()) {
        nlohmann::json list = nlohmann::json::array();
        std::stringstream ss(f.phases);
        std::string item;
        while (std::getline(ss, item, ',')) {
            list.push_back(item);
        }
        overrides["phases"] = list;
    }
    if (f.rate) {
        overrides["rate"] = *f.rate;
    }
    if (f.trials) {
        overrides["trials"] = *f.trials;
    }
    if (!f.preset.empty()) {
        overrides["preset"] = f.preset;
    }
    if (f.svg) {
        overrides["svg"] = true;
    }

    char *summary = nullptr;
    const srp_status s = srp_run_command(command.c_str(), config_text.c_str(), overrides.dump().c_str(), &summary);
    if (s != SRP_OK) {
        std::cerr << "error (" << srp_status_name(s) << "): " << srp_last_error() << "\n";
        if (s == SRP_INVALID_CONFIG) {
            std::cerr << "run with --schema to list the configuration keys\n";
        }
        return exit_code(s);
    }
    std::cout << summary << "\n";
    srp_string_free(summary);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phase-gate replication and superreplication toolkit"};
    app.set_version_flag("--version", std::string(srp_version()));
    bool show_schema = false;
    app.add_flag("--schema", show_schema, "Print the configuration schema and exit");
    app.require_subcommand(0, 1);

    Flags flags;
    std::vector<std::pair<std::string, CLI::App *>> commands;
    for (const char *name : {"replicate", "superrep", "tomo", "optics-scan"}) {
        static const std::map<std::string, std::string> help = {
            {"replicate", "Two-copy replication fidelities and baselines over a phase grid"},
            {"superrep", "N -> M superreplication convergence sweep"},
            {"tomo", "Simulated process tomography of the optical experiment"},
            {"optics-scan", "Sweep one optical imperfection parameter"},
        };
        CLI::App *cmd = app.add_subcommand(name, help.at(name));
        add_flags(cmd, flags);
        commands.emplace_back(name, cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (show_schema) {
        std::cout << schema();
        return 0;
    }
    for (const auto &[name, cmd] : commands) {
        if (cmd->parsed()) {
            return run(name, flags);
        }
    }
    std::cerr << app.help();
    return 1;
}

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

#ifndef SUPERREP_COMMANDS_H
#define SUPERREP_COMMANDS_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superrep/optics.h"
#include "superrep/qmat.h"
#include "superrep/tomo.h"

namespace superrep {

enum class Command { replicate, superrep, tomo, optics_scan };

const char *to_string(Command c);
/// Throws Error(invalid_config) for an unknown name.
Command parse_command(const std::string &name);

/// Validated run configuration. Built only through parse_run_config.
struct RunConfig {
    Command command = Command::replicate;
    std::uint64_t seed = 1;
    std::string out_dir;
    bool svg = false;
    Tolerances tolerances;
    std::vector<double> phases;
    std::string preset = "measured";
    OpticsParams optics;

    // replicate
    int twirl_grid = 64;
    int cloner_grid = 64;
    int measure_prepare_intervals = 4096;

    // superrep
    double alpha = 0.5;
    std::vector<int> copies;
    std::vector<std::pair<int, int>> pairs;
    int phase_points = 256;

    // tomo
    double rate = 1e4;
    int trials = 100;
    MleOptions mle;

    // optics-scan
    std::string scan_parameter;
    double scan_start = 0.0;
    double scan_stop = 0.0;
    int scan_points = 5;

    /// FNV-1a of the canonical resolved configuration (out_dir excluded).
    std::string config_hash;
};

/// `config_json` is the configuration file text (may be empty), `overrides_json`
/// a JSON object of command-line values that win over the file. The output
/// directory falls back to $SUPERREP_OUT_DIR, then ./out. Unknown keys and
/// out-of-range values throw Error(invalid_config).
RunConfig parse_run_config(Command command, const std::string &config_json, const std::string &overrides_json = "");

/// Human-readable description of every configuration key.
std::string config_schema();

/// "pi/2", "3pi/4", "-pi", "0.5", "2*pi/3" -> radians.
double parse_phase(const std::string &text);

struct CommandOutput {
    /// File name -> contents, in the order they are written.
    std::map<std::string, std::string> files;
    /// Short JSON summary of the headline numbers.
    std::string summary_json;
};

/// Runs the command entirely in memory.
CommandOutput build_outputs(const RunConfig &config);

/// build_outputs followed by an atomic write into config.out_dir.
CommandOutput run_command(const RunConfig &config);

}  // namespace superrep

#endif

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

#ifndef SUPERREP_REPORT_H
#define SUPERREP_REPORT_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "superrep/choi.h"

namespace superrep {

inline constexpr const char *kVersion = "1.0.0";

/// Provenance stamped on every emitted file.
struct OutputMetadata {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
};

/// Shortest decimal form that reads back to the same double (17 significant
/// digits at most). NaN and infinities print as nan, inf, -inf.
std::string format_double(double value);
double parse_double(const std::string &text);

std::uint64_t fnv1a64(const std::string &bytes);
std::string hex64(std::uint64_t value);

/// CSV text: `# key value` metadata lines, then the header, then rows.
class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(std::vector<std::string> cells);
    std::string render(const OutputMetadata &meta) const;

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

struct ParsedCsv {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in `columns`; throws Error(io) if absent.
    std::size_t column(const std::string &name) const;
};
ParsedCsv parse_csv(const std::string &text);

/// Choi matrix as JSON with the convention stated in its metadata.
std::string process_to_json(const ProcessMatrix &chi, const OutputMetadata &meta, double phi, int phase_id);
ProcessMatrix process_from_json(const std::string &text);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<PlotSeries> &series);
/// Heat map of a real matrix on a symmetric diverging scale.
std::string svg_heatmap(const std::string &title, const Eigen::MatrixXd &values);

/// Writes each file to `dir/name` through a temporary file and a rename.
/// Creates `dir` if needed. Throws Error(io) naming the offending path.
void write_files_atomically(const std::string &dir, const std::map<std::string, std::string> &files);

}  // namespace superrep

#endif

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

#include "superrep/report.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "superrep/gates.h"

namespace superrep {
namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST(FormatDouble, RoundTripsExactly) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(rng) * std::pow(10.0, (i % 40) - 20);
        EXPECT_EQ(parse_double(format_double(x)), x);
    }
    for (double x : {0.0, -0.0, 1.0, 0.1, std::numbers::pi, 5e-324, 1.7976931348623157e308}) {
        EXPECT_EQ(parse_double(format_double(x)), x);
    }
}

TEST(FormatDouble, SpecialValues) {
    EXPECT_EQ(format_double(0.25), "0.25");
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_TRUE(std::isnan(parse_double("nan")));
    EXPECT_THROW(parse_double("1.5x"), Error);
    EXPECT_THROW(parse_double(""), Error);
}

TEST(Hash, KnownFnvValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(Csv, RendersMetadataAndParsesBack) {
    CsvTable t({"phi", "F"});
    t.add_row({format_double(0.0), format_double(1.0)});
    t.add_row({format_double(std::numbers::pi), format_double(0.25)});
    const std::string text = t.render({"replicate", "00ff", 42});
    EXPECT_EQ(text.rfind("# version 1.0.0\n", 0), 0u);
    const ParsedCsv p = parse_csv(text);
    EXPECT_EQ(p.metadata.at("command"), "replicate");
    EXPECT_EQ(p.metadata.at("config_hash"), "00ff");
    EXPECT_EQ(p.metadata.at("seed"), "42");
    ASSERT_EQ(p.rows.size(), 2u);
    EXPECT_EQ(parse_double(p.rows[1][p.column("phi")]), std::numbers::pi);
    EXPECT_THROW(p.column("missing"), Error);
    EXPECT_THROW(t.add_row({"1"}), Error);
}

TEST(ProcessJson, RoundTripsToFullPrecision) {
    const Operator u = cu_phase(PhaseAngle(0.7));
    const ProcessMatrix chi = choi_from_kraus(std::span<const Operator>(&u, 1));
    const std::string text = process_to_json(chi, {"tomo", "abc", 3}, 0.7, 2);
    EXPECT_NE(text.find("\"convention\""), std::string::npos);
    EXPECT_NE(text.find("\"phase_id\": 2"), std::string::npos);
    const ProcessMatrix back = process_from_json(text);
    EXPECT_EQ(back.normalization(), chi.normalization());
    EXPECT_EQ(back.chi(), chi.chi());
}

TEST(ProcessJson, RejectsMalformedInput) {
    EXPECT_THROW(process_from_json("{"), Error);
    EXPECT_THROW(process_from_json(R"({"normalization":"raw","real":[[1,0]],"imag":[[0,0]]})"), Error);
    EXPECT_THROW(process_from_json(R"({"normalization":"odd","real":[[1]],"imag":[[0]]})"), Error);
}

TEST(Svg, LinePlotAndHeatmapAreWellFormed) {
    const std::string plot = svg_line_plot("t<1>", "x", "y", {{"a", {0, 1, 2}, {1, 0.5, 0.25}, true}});
    EXPECT_EQ(plot.rfind("<svg", 0), 0u);
    EXPECT_NE(plot.find("t&lt;1&gt;"), std::string::npos);
    EXPECT_NE(plot.find("<polyline"), std::string::npos);
    EXPECT_NE(plot.find("</svg>"), std::string::npos);
    Eigen::MatrixXd m(2, 2);
    m << 1, -0.5, 0, 0.25;
    const std::string heat = svg_heatmap("chi", m);
    EXPECT_NE(heat.find("#ff0000"), std::string::npos);
    EXPECT_NE(heat.find("</svg>"), std::string::npos);
}

TEST(AtomicWrite, WritesAllFilesAndNamesBadPaths) {
    const auto dir = std::filesystem::temp_directory_path() / "superrep_report_test";
    std::filesystem::remove_all(dir);
    write_files_atomically(dir.string(), {{"a.txt", "alpha"}, {"b.txt", "beta"}});
    EXPECT_EQ(slurp(dir / "a.txt"), "alpha");
    EXPECT_EQ(slurp(dir / "b.txt"), "beta");
    EXPECT_FALSE(std::filesystem::exists(dir / ".a.txt.tmp"));

    const auto blocker = dir / "a.txt" / "sub";
    try {
        write_files_atomically(blocker.string(), {{"c.txt", "x"}});
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::io);
        EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace superrep

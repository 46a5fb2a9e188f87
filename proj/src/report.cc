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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace superrep {

namespace {

using nlohmann::json;

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text) {
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::io, "not a number: '" + text + "'");
    }
    return v;
}

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw Error(ErrorCode::invalid_argument, "CSV row width does not match the header");
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const OutputMetadata &meta) const {
    std::ostringstream out;
    out << "# version " << kVersion << '\n';
    out << "# command " << meta.command << '\n';
    out << "# config_hash " << meta.config_hash << '\n';
    out << "# seed " << meta.seed << '\n';
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(columns_);
    for (const auto &r : rows_) {
        line(r);
    }
    return out.str();
}

std::size_t ParsedCsv::column(const std::string &name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw Error(ErrorCode::io, "CSV has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

ParsedCsv parse_csv(const std::string &text) {
    ParsedCsv csv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string key;
            std::string value;
            meta >> key;
            std::getline(meta >> std::ws, value);
            csv.metadata[key] = value;
            continue;
        }
        if (csv.columns.empty()) {
            csv.columns = split_line(line);
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != csv.columns.size()) {
            throw Error(ErrorCode::io, "CSV row width does not match the header");
        }
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

std::string process_to_json(const ProcessMatrix &chi, const OutputMetadata &meta, double phi, int phase_id) {
    const Eigen::Index n = chi.chi().rows();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < n; ++r) {
        json rr = json::array();
        json ir = json::array();
        for (Eigen::Index c = 0; c < n; ++c) {
            rr.push_back(chi.chi()(r, c).real());
            ir.push_back(chi.chi()(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    json doc;
    doc["metadata"] = {
        {"version", kVersion},
        {"command", meta.command},
        {"config_hash", meta.config_hash},
        {"seed", meta.seed},
        {"convention", "chi = (I (x) R)(|Phi><Phi|), |Phi> = d^-1/2 sum_m |m>|m>; first factor reference, second "
                       "channel; qubit 0 is the most significant bit"},
    };
    doc["normalization"] = to_string(chi.normalization());
    doc["qubits"] = chi.qubits();
    doc["phi"] = phi;
    doc["phase_id"] = phase_id;
    doc["real"] = std::move(re);
    doc["imag"] = std::move(im);
    return doc.dump(1) + "\n";
}

ProcessMatrix process_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::io, std::string("process JSON does not parse: ") + e.what());
    }
    try {
        const std::string norm = doc.at("normalization").get<std::string>();
        Normalization n;
        if (norm == "raw") {
            n = Normalization::raw;
        } else if (norm == "trace_one") {
            n = Normalization::trace_one;
        } else if (norm == "trace_dim") {
            n = Normalization::trace_dim;
        } else {
            throw Error(ErrorCode::io, "unknown normalization '" + norm + "'");
        }
        const json &re = doc.at("real");
        const json &im = doc.at("imag");
        const std::size_t dim = re.size();
        if (im.size() != dim) {
            throw Error(ErrorCode::io, "real and imaginary parts differ in size");
        }
        Matrix chi(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            if (re[r].size() != dim || im[r].size() != dim) {
                throw Error(ErrorCode::io, "process matrix must be square");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                chi(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
            }
        }
        return ProcessMatrix(std::move(chi), n);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::io, std::string("malformed process JSON: ") + e.what());
    }
}

std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<PlotSeries> &series) {
    const double width = 640, height = 420, left = 70, right = 170, top = 40, bottom = 55;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                x0 = std::min(x0, s.x[i]);
                x1 = std::max(x1, s.x[i]);
                y0 = std::min(y0, s.y[i]);
                y1 = std::max(y1, s.y[i]);
            }
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    }
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5, x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.05, y1 += 0.05;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5;
        const double yv = y0 + (y1 - y0) * i / 5;
        o << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(sx(xv)) << "\" y2=\""
          << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(xv) << "</text>\n";
        o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(left) << "\" y2=\""
          << num(sy(yv)) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
          << tick_label(yv) << "</text>\n";
    }
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 12) << "\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(y_label) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto &s = series[k];
        const char *color = kPalette[k % 8];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                pts << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
            }
        }
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
          << "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                    o << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i])) << "\" r=\"3\" fill=\""
                      << color << "\"/>\n";
                }
            }
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + pw + 32)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << num(left + pw + 36) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(s.label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_heatmap(const std::string &title, const Eigen::MatrixXd &values) {
    const double cell = 24, left = 30, top = 40;
    const double n_rows = static_cast<double>(values.rows());
    const double n_cols = static_cast<double>(values.cols());
    const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
    const double width = left + cell * n_cols + 90, height = top + cell * n_rows + 20;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(left) << "\" y=\"22\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    auto color = [&](double v) {
        const double t = std::clamp(v / scale, -1.0, 1.0);
        const int fade = static_cast<int>(std::lround(255 * (1.0 - std::abs(t))));
        char buf[16];
        if (t >= 0) {
            std::snprintf(buf, sizeof buf, "#ff%02x%02x", fade, fade);
        } else {
            std::snprintf(buf, sizeof buf, "#%02x%02xff", fade, fade);
        }
        return std::string(buf);
    };
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            o << "<rect x=\"" << num(left + cell * static_cast<double>(c)) << "\" y=\""
              << num(top + cell * static_cast<double>(r)) << "\" width=\"" << num(cell) << "\" height=\"" << num(cell)
              << "\" fill=\"" << color(values(r, c)) << "\" stroke=\"#cccccc\"><title>" << r << "," << c << ": "
              << format_double(values(r, c)) << "</title></rect>\n";
        }
    }
    const double lx = left + cell * n_cols + 15;
    o << "<rect x=\"" << num(lx) << "\" y=\"" << num(top) << "\" width=\"14\" height=\"14\" fill=\"" << color(scale)
      << "\"/><text x=\"" << num(lx + 18) << "\" y=\"" << num(top + 11) << "\">" << tick_label(scale) << "</text>\n";
    o << "<rect x=\"" << num(lx) << "\" y=\"" << num(top + 20) << "\" width=\"14\" height=\"14\" fill=\"" << color(0.0)
      << "\" stroke=\"#cccccc\"/><text x=\"" << num(lx + 18) << "\" y=\"" << num(top + 31) << "\">0</text>\n";
    o << "<rect x=\"" << num(lx) << "\" y=\"" << num(top + 40) << "\" width=\"14\" height=\"14\" fill=\""
      << color(-scale) << "\"/><text x=\"" << num(lx + 18) << "\" y=\"" << num(top + 51) << "\">"
      << tick_label(-scale) << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

void write_files_atomically(const std::string &dir, const std::map<std::string, std::string> &files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorCode::io, "cannot create output directory '" + dir + "'");
    }
    for (const auto &[name, content] : files) {
        const fs::path target = fs::path(dir) / name;
        const fs::path temp = fs::path(dir) / ("." + name + ".tmp");
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw Error(ErrorCode::io, "cannot write output file '" + target.string() + "'");
            }
            out << content;
            out.flush();
            if (!out) {
                throw Error(ErrorCode::io, "failed while writing '" + target.string() + "'");
            }
        }
        fs::rename(temp, target, ec);
        if (ec) {
            fs::remove(temp, ec);
            throw Error(ErrorCode::io, "cannot move output into place at '" + target.string() + "'");
        }
    }
}

}  // namespace superrep

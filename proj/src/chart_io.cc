// Copyright 2026 The qst-quorum Authors
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

#include "qstq/chart_io.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qstq/errors.h"

namespace qstq {

namespace {

using nlohmann::json;

// JSON has no infinities; ln L = -inf is stored as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
T required(const json &doc, const char *field) {
    if (!doc.contains(field)) {
        throw FormatError(std::string("missing field '") + field + "'");
    }
    try {
        return doc.at(field).get<T>();
    } catch (const json::exception &e) {
        throw FormatError(std::string("field '") + field + "' has the wrong type: " + e.what());
    }
}

json orthoplex_json(const OrthoplexReport &r) {
    return json{
        {"pairs", r.pairs},
        {"bound", r.bound},
        {"min_d2", finite_or_null(r.min_d2)},
        {"max_d2", finite_or_null(r.max_d2)},
        {"unbiased_pairs", r.unbiased_pairs},
        {"strict_unbiased_pairs", r.strict_unbiased_pairs},
        {"all_unbiased", r.all_unbiased},
    };
}

json projectors_json(std::span<const Projector> projectors) {
    json list = json::array();
    for (const auto &p : projectors) {
        list.push_back(flatten_matrix(p.matrix()));
    }
    return list;
}

}  // namespace

std::vector<double> flatten_matrix(const CMatrix &m) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            flat.push_back(m(r, c).real());
            flat.push_back(m(r, c).imag());
        }
    }
    return flat;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string chart_to_json(const ChartFile &file) {
    const json doc{
        {"format_version", kFormatVersion},
        {"n", file.chart.dims.n},
        {"l", file.chart.dims.l},
        {"fixed_first", true},
        {"angles", file.chart.angles},
        {"metadata",
         {{"seed", file.metadata.seed}, {"created", file.metadata.created}, {"tool_version", file.metadata.tool_version}}},
    };
    return doc.dump(2) + "\n";
}

ChartFile chart_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        // nlohmann reports "line L, column C" in the message.
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError("chart file must be a JSON object");
    }
    const int version = required<int>(doc, "format_version");
    if (version != kFormatVersion) {
        throw FormatError("unsupported format_version " + std::to_string(version));
    }
    const ChartDims dims{required<int>(doc, "n"), required<int>(doc, "l")};
    try {
        dims.validate();
    } catch (const ParameterError &e) {
        throw FormatError(std::string("fields 'n'/'l': ") + e.what());
    }
    if (doc.contains("fixed_first") && !required<bool>(doc, "fixed_first")) {
        throw FormatError("field 'fixed_first': only charts with a fixed first projector are supported");
    }
    const auto angles = required<std::vector<double>>(doc, "angles");
    if (angles.size() != dims.param_count()) {
        throw FormatError("field 'angles': expected " + std::to_string(dims.param_count()) + " values for n=" +
                          std::to_string(dims.n) + ", l=" + std::to_string(dims.l) + ", got " +
                          std::to_string(angles.size()));
    }
    for (std::size_t k = 0; k < angles.size(); ++k) {
        if (!std::isfinite(angles[k])) {
            throw FormatError("field 'angles': entry " + std::to_string(k) + " is not finite");
        }
    }
    ChartFile file{ParamChart(dims, angles), {}};
    if (doc.contains("metadata")) {
        const json &meta = doc.at("metadata");
        if (!meta.is_object()) {
            throw FormatError("field 'metadata' must be an object");
        }
        file.metadata.seed = meta.value("seed", std::uint64_t{0});
        file.metadata.created = meta.value("created", std::string{});
        file.metadata.tool_version = meta.value("tool_version", std::string{});
    }
    return file;
}

ChartFile read_chart_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open chart file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return chart_from_json(buf.str());
}

std::string report_to_json(const MetricsReport &m, std::span<const PairOverlap> worst) {
    json pairs = json::array();
    for (const auto &p : worst) {
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"overlap", p.overlap}});
    }
    const json doc{
        {"format_version", kFormatVersion},
        {"n", m.n},
        {"l", m.l},
        {"quality", m.quality},
        {"log_quality", m.log_quality},
        {"degenerate", m.degenerate},
        {"upper_bound", m.upper_bound},
        {"relative_deviation", m.relative_deviation},
        {"non_orthogonality", m.non_orthogonality},
        {"ln_L", finite_or_null(m.ln_L)},
        {"min_chordal_sq", finite_or_null(m.min_chordal_sq)},
        {"max_chordal_sq", finite_or_null(m.max_chordal_sq)},
        {"repetition_overhead", finite_or_null(m.repetition_overhead)},
        {"worst_pairs", pairs},
    };
    return doc.dump(2) + "\n";
}

std::string trace_to_csv(std::span<const TraceRecord> trace) {
    std::string out = "phase,iteration,objective_kind,objective,quality,ln_L,elapsed_s\n";
    char line[256];
    for (const auto &t : trace) {
        std::snprintf(line, sizeof line, "%d,%d,%s,%.17g,%.17g,%.17g,%.6f\n", t.phase, t.iteration,
                      std::string(to_string(t.kind)).c_str(), t.objective, t.quality, t.ln_L, t.elapsed_s);
        out += line;
    }
    return out;
}

std::string projector_set_to_json(std::span<const Projector> projectors, const OrthoplexReport &orthoplex) {
    const json doc{
        {"format_version", kFormatVersion},
        {"n", projectors.empty() ? 0 : projectors.front().dim()},
        {"l", projectors.empty() ? 0 : projectors.front().rank()},
        {"count", projectors.size()},
        {"layout", "row-major, re/im interleaved"},
        {"projectors", projectors_json(projectors)},
        {"orthoplex", orthoplex_json(orthoplex)},
    };
    return doc.dump(2) + "\n";
}

std::string maximal_set_to_json(const MaximalSet &set, const MaximalSetReport &report) {
    const json doc{
        {"format_version", kFormatVersion},
        {"n", set.n},
        {"l", set.l},
        {"count", set.projectors.size()},
        {"layout", "row-major, re/im interleaved; element j + count/2 is 1 - element j"},
        {"projectors", projectors_json(set.projectors)},
        {"complements_exact", report.complements_exact},
        {"complement_deviation", report.complement_deviation},
        {"cross_pairs", orthoplex_json(report.cross)},
    };
    return doc.dump(2) + "\n";
}

}  // namespace qstq

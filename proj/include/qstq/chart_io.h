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

#ifndef QSTQ_CHART_IO_H
#define QSTQ_CHART_IO_H

// On-disk formats: the JSON chart file, the JSON metrics report, the trace CSV
// and the explicit projector-set dump. All documents carry format_version 1.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qstq/hilbert.h"
#include "qstq/metrics.h"
#include "qstq/optimizer.h"

namespace qstq {

inline constexpr int kFormatVersion = 1;

/// Malformed input document; the message names the line or field at fault.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartMetadata {
    std::uint64_t seed = 0;
    std::string created;
    std::string tool_version = QSTQ_VERSION;
};

struct ChartFile {
    ParamChart chart;
    ChartMetadata metadata;
};

std::string chart_to_json(const ChartFile &file);
ChartFile chart_from_json(std::string_view text);
ChartFile read_chart_file(const std::filesystem::path &path);

/// Metrics plus the `worst.size()` largest |Tr(Q_i Q_j)| pairs.
std::string report_to_json(const MetricsReport &metrics, std::span<const PairOverlap> worst);

/// Columns: phase, iteration, objective_kind, objective, quality, ln_L, elapsed_s.
std::string trace_to_csv(std::span<const TraceRecord> trace);

/// Every matrix row-major with re/im interleaved, plus the orthoplex or maximal-set summary.
std::string projector_set_to_json(std::span<const Projector> projectors, const OrthoplexReport &orthoplex);
std::string maximal_set_to_json(const MaximalSet &set, const MaximalSetReport &report);

/// Row-major, re/im interleaved flattening used by the projector dumps.
std::vector<double> flatten_matrix(const CMatrix &m);

/// UTC timestamp, ISO 8601.
std::string utc_timestamp();

}  // namespace qstq

#endif

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

#ifndef QSTQ_OPTIMIZER_H
#define QSTQ_OPTIMIZER_H

// Powell's derivative-free minimizer, the alternating quality / non-orthogonality
// schedule built on it, and the multi-restart driver.

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "qstq/hilbert.h"
#include "qstq/metrics.h"

namespace qstq {

using Objective = std::function<double(std::span<const double>)>;
using LineObjective = std::function<double(double)>;

struct PowellConfig {
    /// Maximum number of full direction sweeps.
    int max_iterations = 1000;
    /// Stop when 2 (f_start - f_end) <= f_tol (|f_start| + |f_end|) over a sweep.
    double f_tol = 1e-10;
    /// Line-search resolution in the step parameter.
    double x_tol = 1e-10;
    /// Geometric growth of the bracketing steps.
    double bracket_growth = std::numbers::phi;
    /// Evaluation cap for one line search (bracketing plus refinement).
    int max_line_evaluations = 100;
    /// First trial step of every line search.
    double initial_step = 1.0;

    /// Throws ParameterError if any field is not positive.
    void validate() const;
};

struct LineSearchResult {
    double t = 0;
    double value = 0;
    int evaluations = 0;
    /// False when no interior minimum was bracketed within the evaluation cap;
    /// t is then the best sampled point.
    bool bracketed = true;
};

/// Brackets a minimum by geometric expansion from (0, t0), then refines with
/// Brent's golden-section / parabolic iteration. f(0) is passed in when known.
LineSearchResult line_minimize(const LineObjective &f, double t0, const PowellConfig &cfg);
LineSearchResult line_minimize(const LineObjective &f, double t0, const PowellConfig &cfg, double f_at_zero);

struct SweepRecord {
    int sweep = 0;  // 0 is the starting point
    double value = 0;
    long evaluations = 0;  // cumulative
};

/// Called after the starting point and after every sweep; return false to stop.
using SweepCallback = std::function<bool(const SweepRecord &, std::span<const double> x)>;

struct PowellResult {
    std::vector<double> x;
    double value = 0;
    int sweeps = 0;
    long evaluations = 0;
    bool converged = false;
    std::vector<SweepRecord> trace;
};

/// Powell (1964) direction-set minimization. Throws ParameterError if f(x0) is not finite.
PowellResult powell_minimize(const Objective &f, std::vector<double> x0, const PowellConfig &cfg,
                             const SweepCallback &on_sweep = {});

enum class ObjectiveKind { NegLogQuality, LogL };

std::string_view to_string(ObjectiveKind kind);

/// Finite stand-in for ln L = -infinity.
inline constexpr double kLogLSentinel = -1e12;

/// NegLogQuality: -log_quality(quorum_from_chart(chart)). LogL: ln L of the same quorum.
double evaluate_objective(ObjectiveKind kind, const ParamChart &chart);
Objective make_objective(ObjectiveKind kind, ChartDims dims);

struct ScheduleConfig {
    /// Powell sweeps per objective phase.
    int phase_length = 200;
    int total_phases = 20;
    int restart_count = 1;
    std::uint64_t rng_seed = 0;
    /// Wall-clock budget for one run; 0 disables it.
    double max_seconds = 0;

    void validate() const;
};

struct TraceRecord {
    int phase = 0;
    int iteration = 0;
    ObjectiveKind kind = ObjectiveKind::NegLogQuality;
    double objective = 0;
    double quality = 0;
    double ln_L = 0;
    long evaluations = 0;
    double elapsed_s = 0;
};

/// Scores a parameter vector for best-ever tracking. Larger log_quality is better.
struct Score {
    double quality = 0;
    double log_quality = 0;
    double ln_L = 0;
};

/// Objectives for the two phase kinds plus the scorer; the chart-based overload
/// fills this in, tests may inject their own.
struct ScheduleObjectives {
    Objective neg_log_quality;
    Objective log_l;
    std::function<Score(std::span<const double>)> score;
};

struct ScheduleResult {
    std::vector<double> best_x;
    Score best;
    std::vector<TraceRecord> trace;
    long evaluations = 0;
};

/// Phases alternate NegLogQuality, LogL, NegLogQuality, ...; the best-ever point
/// by log_quality across all sweeps is returned.
ScheduleResult alternating_schedule(const ScheduleObjectives &objectives, std::vector<double> x0,
                                    const ScheduleConfig &sched, const PowellConfig &cfg);

struct OptimizationResult {
    ParamChart chart;
    MetricsReport metrics;
    std::vector<TraceRecord> trace;
    std::uint64_t seed = 0;
    long evaluations = 0;
};

OptimizationResult alternating_optimize(const ParamChart &x0, const ScheduleConfig &sched, const PowellConfig &cfg);

/// Uniform angles: polar in [0, pi/2], phases in [0, 2 pi). Deterministic in seed.
ParamChart random_chart(ChartDims dims, std::uint64_t seed);

struct MultiRestartResult {
    OptimizationResult best;
    /// Final quality of every run, in seed order.
    std::vector<double> run_qualities;
    std::vector<std::uint64_t> seeds;
};

/// One alternating_optimize per seed, each from random_chart(dims, seed) unless a
/// start chart is given for the first seed. Runs are spread over `threads` workers
/// (0 = hardware concurrency). Ties go to the earlier seed.
MultiRestartResult multi_restart(ChartDims dims, const ScheduleConfig &sched, const PowellConfig &cfg,
                                 std::span<const std::uint64_t> seeds, unsigned threads = 0,
                                 const ParamChart *first_start = nullptr);

}  // namespace qstq

#endif

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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "qstq/errors.h"
#include "qstq/optimizer.h"

namespace qstq {

std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::NegLogQuality:
            return "neg_log_quality";
        case ObjectiveKind::LogL:
            return "log_L";
    }
    return "unknown";
}

double evaluate_objective(ObjectiveKind kind, const ParamChart &chart) {
    const Quorum q = quorum_from_chart(chart);
    if (kind == ObjectiveKind::NegLogQuality) {
        return -quality_measure(q).log_quality;
    }
    const double ln_L = non_orthogonality(q).ln_L;
    return std::isfinite(ln_L) ? ln_L : kLogLSentinel;
}

Objective make_objective(ObjectiveKind kind, ChartDims dims) {
    dims.validate();
    return [kind, dims](std::span<const double> x) {
        return evaluate_objective(kind, ParamChart(dims, std::vector<double>(x.begin(), x.end())));
    };
}

void ScheduleConfig::validate() const {
    if (phase_length <= 0 || total_phases <= 0 || restart_count <= 0 || max_seconds < 0) {
        throw ParameterError("schedule counts must be positive");
    }
}

ScheduleResult alternating_schedule(const ScheduleObjectives &objectives, std::vector<double> x0,
                                    const ScheduleConfig &sched, const PowellConfig &cfg) {
    sched.validate();
    const auto started = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    const auto out_of_time = [&] { return sched.max_seconds > 0 && elapsed() >= sched.max_seconds; };

    ScheduleResult result;
    result.best_x = x0;
    result.best = objectives.score(x0);
    std::vector<double> x = std::move(x0);

    PowellConfig phase_cfg = cfg;
    phase_cfg.max_iterations = sched.phase_length;
    for (int phase = 0; phase < sched.total_phases; ++phase) {
        const ObjectiveKind kind = phase % 2 == 0 ? ObjectiveKind::NegLogQuality : ObjectiveKind::LogL;
        const Objective &objective = kind == ObjectiveKind::NegLogQuality ? objectives.neg_log_quality
                                                                          : objectives.log_l;
        const long evaluations_before = result.evaluations;
        const SweepCallback on_sweep = [&](const SweepRecord &rec, std::span<const double> at) {
            const Score s = objectives.score(at);
            result.trace.push_back({phase, rec.sweep, kind, rec.value, s.quality, s.ln_L,
                                    evaluations_before + rec.evaluations, elapsed()});
            if (s.log_quality > result.best.log_quality) {
                result.best = s;
                result.best_x.assign(at.begin(), at.end());
            }
            return !out_of_time();
        };
        PowellResult pr = powell_minimize(objective, std::move(x), phase_cfg, on_sweep);
        x = std::move(pr.x);
        result.evaluations += pr.evaluations;
        if (out_of_time()) {
            break;
        }
    }
    return result;
}

OptimizationResult alternating_optimize(const ParamChart &x0, const ScheduleConfig &sched, const PowellConfig &cfg) {
    const ChartDims dims = x0.dims;
    ScheduleObjectives objectives{
        make_objective(ObjectiveKind::NegLogQuality, dims),
        make_objective(ObjectiveKind::LogL, dims),
        [dims](std::span<const double> x) {
            const Eigen::MatrixXd g = gram_matrix(quorum_from_chart(ParamChart(dims, {x.begin(), x.end()})));
            const QualityValue qv = quality_from_gram(g);
            return Score{qv.quality, qv.log_quality, non_orthogonality_from_gram(g).ln_L};
        },
    };
    ScheduleResult sr = alternating_schedule(objectives, x0.angles, sched, cfg);

    OptimizationResult out;
    out.chart = ParamChart(dims, std::move(sr.best_x));
    out.metrics = compute_metrics(quorum_from_chart(out.chart));
    out.trace = std::move(sr.trace);
    out.seed = sched.rng_seed;
    out.evaluations = sr.evaluations;
    return out;
}

ParamChart random_chart(ChartDims dims, std::uint64_t seed) {
    dims.validate();
    std::mt19937_64 rng(seed);
    // 53-bit uniform in [0, 1), independent of the standard library's distribution implementation.
    const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> angles;
    angles.reserve(dims.param_count());
    const int polar = dims.n - dims.l;
    for (int block = 0; block < dims.charted_projectors() * dims.l; ++block) {
        for (int k = 0; k < polar; ++k) {
            angles.push_back(uniform() * (std::numbers::pi / 2));
        }
        for (int k = 0; k < polar; ++k) {
            angles.push_back(uniform() * (2 * std::numbers::pi));
        }
    }
    return ParamChart(dims, std::move(angles));
}

MultiRestartResult multi_restart(ChartDims dims, const ScheduleConfig &sched, const PowellConfig &cfg,
                                 std::span<const std::uint64_t> seeds, unsigned threads,
                                 const ParamChart *first_start) {
    if (seeds.empty()) {
        throw ParameterError("multi_restart needs at least one seed");
    }
    dims.validate();
    sched.validate();
    cfg.validate();
    if (first_start != nullptr && !(first_start->dims == dims)) {
        throw ParameterError("start chart dimensions do not match");
    }

    std::vector<OptimizationResult> runs(seeds.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < seeds.size(); k = next++) {
            ScheduleConfig run_sched = sched;
            run_sched.rng_seed = seeds[k];
            const ParamChart start =
                k == 0 && first_start != nullptr ? *first_start : random_chart(dims, seeds[k]);
            runs[k] = alternating_optimize(start, run_sched, cfg);
        }
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, seeds.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    MultiRestartResult out;
    std::size_t best = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        out.run_qualities.push_back(runs[k].metrics.quality);
        out.seeds.push_back(seeds[k]);
        if (runs[k].metrics.log_quality > runs[best].metrics.log_quality) {
            best = k;
        }
    }
    out.best = std::move(runs[best]);
    return out;
}

}  // namespace qstq

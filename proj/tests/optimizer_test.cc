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

#include "qstq/optimizer.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qstq/errors.h"
#include "qstq/reference.h"
#include "test_support.h"

using namespace qstq;

namespace {

double sphere(std::span<const double> x) {
    double s = 0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

double rosenbrock(std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
}

void expect_monotone(const std::vector<SweepRecord> &trace, double f_tol) {
    for (std::size_t k = 1; k < trace.size(); ++k) {
        EXPECT_LE(trace[k].value, trace[k - 1].value + f_tol * std::abs(trace[k - 1].value)) << "sweep " << k;
    }
}

}  // namespace

TEST(line_minimize, quadratic) {
    const PowellConfig cfg;
    const LineSearchResult r = line_minimize([](double t) { return (t - 2) * (t - 2); }, 1.0, cfg);
    EXPECT_TRUE(r.bracketed);
    EXPECT_NEAR(r.t, 2.0, 1e-10);
}

TEST(line_minimize, non_smooth) {
    const PowellConfig cfg;
    const LineSearchResult r = line_minimize([](double t) { return std::abs(t - 1); }, 0.3, cfg);
    EXPECT_TRUE(r.bracketed);
    EXPECT_NEAR(r.t, 1.0, 1e-8);
    EXPECT_LE(r.evaluations, cfg.max_line_evaluations + 1);
}

TEST(line_minimize, minimum_behind_start) {
    const PowellConfig cfg;
    const LineSearchResult r = line_minimize([](double t) { return (t + 3) * (t + 3); }, 1.0, cfg);
    EXPECT_NEAR(r.t, -3.0, 1e-10);
}

TEST(line_minimize, monotone_function_is_flagged) {
    PowellConfig cfg;
    cfg.max_line_evaluations = 30;
    const LineSearchResult r = line_minimize([](double t) { return -t; }, 1.0, cfg);
    EXPECT_FALSE(r.bracketed);
    EXPECT_GT(r.t, 1.0);
    EXPECT_DOUBLE_EQ(r.value, -r.t);
    EXPECT_LE(r.evaluations, 31);
}

TEST(line_minimize, non_finite_start_throws) {
    EXPECT_THROW(line_minimize([](double) { return std::nan(""); }, 1.0, PowellConfig{}), ParameterError);
}

TEST(powell_minimize, sphere_10d) {
    std::mt19937_64 rng(1);
    const PowellResult r = powell_minimize(sphere, oracle::random_angles(10, rng, 3.0), PowellConfig{});
    EXPECT_LE(r.value, 1e-16);
    expect_monotone(r.trace, 1e-10);
}

TEST(powell_minimize, rosenbrock_2d) {
    PowellConfig cfg;
    cfg.max_iterations = 200;
    const PowellResult r = powell_minimize(rosenbrock, {-1.2, 1.0}, cfg);
    EXPECT_LE(r.value, 1e-8);
    EXPECT_LE(r.sweeps, 200);
    expect_monotone(r.trace, 1e-10);
}

TEST(powell_minimize, never_worse_than_start) {
    std::mt19937_64 rng(2);
    const auto x0 = oracle::random_angles(4, rng);
    const Objective bumpy = [](std::span<const double> x) {
        double s = 0;
        for (double v : x) {
            s += std::sin(3 * v) + 0.1 * v * v;
        }
        return s;
    };
    PowellConfig cfg;
    cfg.max_iterations = 5;
    const PowellResult r = powell_minimize(bumpy, x0, cfg);
    EXPECT_LE(r.value, bumpy(x0));
    expect_monotone(r.trace, 0);
}

TEST(powell_minimize, failed_line_search_keeps_point) {
    // Along x0 the function decreases towards an asymptote; x1 has a proper minimum.
    const Objective f = [](std::span<const double> x) { return std::exp(-x[0]) + (x[1] - 1) * (x[1] - 1); };
    PowellConfig cfg;
    cfg.max_iterations = 20;
    cfg.max_line_evaluations = 20;
    const PowellResult r = powell_minimize(f, {0.0, 0.0}, cfg);
    EXPECT_NEAR(r.x[1], 1.0, 1e-6);
    EXPECT_LE(r.value, f(std::vector<double>{0.0, 0.0}));
}

TEST(powell_minimize, rejects_non_finite_start) {
    const Objective f = [](std::span<const double>) { return std::numeric_limits<double>::infinity(); };
    EXPECT_THROW(powell_minimize(f, {1.0}, PowellConfig{}), ParameterError);
    PowellConfig bad;
    bad.f_tol = 0;
    EXPECT_THROW(powell_minimize(sphere, {1.0}, bad), ParameterError);
}

TEST(powell_minimize, callback_can_stop) {
    int calls = 0;
    const PowellResult r = powell_minimize(rosenbrock, {-1.2, 1.0}, PowellConfig{},
                                           [&](const SweepRecord &, std::span<const double>) { return ++calls < 3; });
    EXPECT_EQ(calls, 3);
    EXPECT_EQ(r.sweeps, 2);
}

TEST(powell_minimize, n2_neg_log_quality_reaches_bound) {
    std::mt19937_64 rng(3);
    const ChartDims dims{2, 1};
    const PowellResult r =
        powell_minimize(make_objective(ObjectiveKind::NegLogQuality, dims), random_chart(dims, 4).angles, {});
    EXPECT_NEAR(r.value, -std::log(std::pow(0.5, 1.5)), 1e-6);
}

TEST(objective, same_path_as_metrics) {
    std::mt19937_64 rng(5);
    const ParamChart chart({6, 3}, oracle::random_angles(612, rng));
    const Quorum q = quorum_from_chart(chart);
    EXPECT_EQ(evaluate_objective(ObjectiveKind::NegLogQuality, chart), -quality_measure(q).log_quality);
    EXPECT_EQ(evaluate_objective(ObjectiveKind::LogL, chart), non_orthogonality(q).ln_L);
    EXPECT_EQ(make_objective(ObjectiveKind::NegLogQuality, chart.dims)(chart.angles),
              evaluate_objective(ObjectiveKind::NegLogQuality, chart));
}

TEST(objective, log_l_stays_finite_near_orthogonality) {
    const double v = evaluate_objective(ObjectiveKind::LogL, rank1_optimal_chart_n2());
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LT(v, -30.0);
}

TEST(objective, richardson_consistent_directional_derivative) {
    std::mt19937_64 rng(6);
    const ParamChart chart = random_chart({6, 3}, 7);
    const auto direction = oracle::random_angles(612, rng, 1.0);
    const Objective f = make_objective(ObjectiveKind::NegLogQuality, chart.dims);
    const auto at = [&](double t) {
        std::vector<double> x = chart.angles;
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] += t * direction[k];
        }
        return f(x);
    };
    const auto central = [&](double h) { return (at(h) - at(-h)) / (2 * h); };
    const double h = 1e-3;
    const double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
    // Second-order error: successive differences shrink by ~4.
    const double ratio = (d1 - d2) / (d2 - d3);
    EXPECT_GT(ratio, 3.0);
    EXPECT_LT(ratio, 5.0);
    // Richardson extrapolation agrees with a fine central difference.
    const double extrapolated = (4 * d3 - d2) / 3;
    const double fine = central(1e-5);
    EXPECT_NEAR(extrapolated, fine, 1e-6 * std::max(1.0, std::abs(fine)));
}

TEST(objective, chart_continuity_finite_difference) {
    const ParamChart chart = random_chart({6, 3}, 8);
    const double base = evaluate_objective(ObjectiveKind::NegLogQuality, chart);
    for (std::size_t k = 0; k < chart.angles.size(); k += 7) {
        ParamChart moved = chart;
        moved.angles[k] += 1e-6;
        EXPECT_LT(std::abs(evaluate_objective(ObjectiveKind::NegLogQuality, moved) - base), 1e-3) << k;
    }
}

TEST(alternating_schedule, single_phase_equals_powell) {
    const ScheduleObjectives objectives{
        sphere,
        rosenbrock,
        [](std::span<const double> x) { return Score{std::exp(-sphere(x)), -sphere(x), 0.0}; },
    };
    ScheduleConfig sched;
    sched.total_phases = 1;
    sched.phase_length = 50;
    PowellConfig cfg;
    const std::vector<double> x0{0.7, -1.3, 2.0};
    const ScheduleResult s = alternating_schedule(objectives, x0, sched, cfg);
    cfg.max_iterations = 50;
    const PowellResult p = powell_minimize(sphere, x0, cfg);
    EXPECT_EQ(s.best_x, p.x);
    ASSERT_EQ(s.trace.size(), p.trace.size());
    for (std::size_t k = 0; k < p.trace.size(); ++k) {
        EXPECT_EQ(s.trace[k].objective, p.trace[k].value);
    }
}

TEST(alternating_schedule, phases_alternate_and_best_is_tracked) {
    // Phase objectives pull towards different points; the scorer prefers the sphere minimum.
    const Objective towards_one = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1); };
    const ScheduleObjectives objectives{
        sphere,
        towards_one,
        [](std::span<const double> x) { return Score{std::exp(-sphere(x)), -sphere(x), 0.0}; },
    };
    ScheduleConfig sched;
    sched.total_phases = 4;
    sched.phase_length = 10;
    const ScheduleResult s = alternating_schedule(objectives, {0.5}, sched, PowellConfig{});
    EXPECT_NEAR(s.best_x[0], 0.0, 1e-8);
    bool saw_log_l = false;
    for (const auto &t : s.trace) {
        EXPECT_EQ(t.kind, t.phase % 2 == 0 ? ObjectiveKind::NegLogQuality : ObjectiveKind::LogL);
        saw_log_l = saw_log_l || t.kind == ObjectiveKind::LogL;
    }
    EXPECT_TRUE(saw_log_l);
}

TEST(alternating_optimize, n6_small_budget_improves) {
    ScheduleConfig sched;
    sched.total_phases = 10;
    sched.phase_length = 50;
    sched.max_seconds = 1.0;  // wall-clock cap keeps 20 runs short
    PowellConfig cfg;
    cfg.x_tol = 1e-6;
    const double ub = upper_bound(6, 3);
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ParamChart start = random_chart({6, 3}, seed);
        const double initial = compute_metrics(quorum_from_chart(start)).quality;
        const OptimizationResult r = alternating_optimize(start, sched, cfg);
        improved += r.metrics.quality > initial ? 1 : 0;
        for (const auto &t : r.trace) {
            EXPECT_LE(t.quality, ub * (1 + 1e-9));
        }
    }
    EXPECT_GE(improved, 19);
}

TEST(alternating_optimize, trace_monotone_within_phase) {
    ScheduleConfig sched;
    sched.total_phases = 4;
    sched.phase_length = 20;
    const OptimizationResult r = alternating_optimize(random_chart({2, 1}, 3), sched, PowellConfig{});
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
        if (r.trace[k].phase == r.trace[k - 1].phase) {
            EXPECT_LE(r.trace[k].objective, r.trace[k - 1].objective + 1e-10 * std::abs(r.trace[k - 1].objective));
        }
    }
}

TEST(alternating_optimize, returns_to_bound_from_perturbed_n2_oracle) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> noise(-1e-2, 1e-2);
    ParamChart chart = rank1_optimal_chart_n2();
    for (auto &a : chart.angles) {
        a += noise(rng);
    }
    ScheduleConfig sched;
    sched.total_phases = 2;
    sched.phase_length = 100;
    const OptimizationResult r = alternating_optimize(chart, sched, PowellConfig{});
    EXPECT_NEAR(r.metrics.quality, upper_bound(2, 1), 1e-8);
}

TEST(random_chart, ranges_and_determinism) {
    const ParamChart a = random_chart({6, 3}, 42);
    const ParamChart b = random_chart({6, 3}, 42);
    EXPECT_EQ(a.angles, b.angles);
    EXPECT_NE(a.angles, random_chart({6, 3}, 43).angles);
    for (std::size_t k = 0; k < a.angles.size(); ++k) {
        const bool polar = (k % 6) < 3;
        EXPECT_GE(a.angles[k], 0.0);
        EXPECT_LE(a.angles[k], polar ? std::numbers::pi / 2 : 2 * std::numbers::pi);
    }
}

TEST(multi_restart, single_seed_matches_alternating_optimize) {
    ScheduleConfig sched;
    sched.total_phases = 2;
    sched.phase_length = 20;
    const std::vector<std::uint64_t> seeds{5};
    const MultiRestartResult m = multi_restart({2, 1}, sched, PowellConfig{}, seeds, 1);
    ScheduleConfig seeded = sched;
    seeded.rng_seed = 5;
    const OptimizationResult r = alternating_optimize(random_chart({2, 1}, 5), seeded, PowellConfig{});
    EXPECT_EQ(m.best.chart.angles, r.chart.angles);
    EXPECT_EQ(m.best.metrics.quality, r.metrics.quality);
    EXPECT_EQ(m.best.seed, 5u);
}

TEST(multi_restart, deterministic_and_monotone_in_restarts) {
    ScheduleConfig sched;
    sched.total_phases = 2;
    sched.phase_length = 3;
    PowellConfig cfg;
    cfg.x_tol = 1e-6;
    const std::vector<std::uint64_t> few{1, 2};
    const std::vector<std::uint64_t> more{1, 2, 3, 4};
    const MultiRestartResult a = multi_restart({3, 1}, sched, cfg, few, 2);
    const MultiRestartResult b = multi_restart({3, 1}, sched, cfg, few, 1);
    EXPECT_EQ(a.best.chart.angles, b.best.chart.angles);
    ASSERT_EQ(a.best.trace.size(), b.best.trace.size());
    for (std::size_t k = 0; k < a.best.trace.size(); ++k) {
        EXPECT_EQ(a.best.trace[k].objective, b.best.trace[k].objective);
    }
    const MultiRestartResult c = multi_restart({3, 1}, sched, cfg, more, 2);
    EXPECT_GE(c.best.metrics.quality, a.best.metrics.quality);
    EXPECT_THROW(multi_restart({3, 1}, sched, cfg, std::span<const std::uint64_t>{}), ParameterError);
}

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
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qstq/errors.h"
#include "qstq/optimizer.h"

namespace qstq {

namespace {

constexpr double kGoldenSection = 0.3819660112501051;  // 2 - phi

// NaN compares false against everything; treat it as +infinity so the search moves away from it.
double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

struct Sample {
    double t;
    double f;
};

// Brent's minimizer on [lo, hi] starting from an interior point with a known value.
LineSearchResult brent(const LineObjective &f, double lo, double hi, Sample start, int budget,
                       const PowellConfig &cfg) {
    LineSearchResult out;
    double a = std::min(lo, hi), b = std::max(lo, hi);
    double x = start.t, w = start.t, v = start.t;
    double fx = start.f, fw = start.f, fv = start.f;
    double d = 0, e = 0;
    while (out.evaluations < budget) {
        const double xm = 0.5 * (a + b);
        const double tol1 = cfg.x_tol * (1.0 + std::abs(x));
        const double tol2 = 2 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
            break;
        }
        bool golden = true;
        if (std::abs(e) > tol1) {
            // Parabola through x, w, v.
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2 * (q - r);
            if (q > 0) {
                p = -p;
            }
            q = std::abs(q);
            const double e_prev = e;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                e = d;
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = xm >= x ? tol1 : -tol1;
                }
                golden = false;
            }
        }
        if (golden) {
            e = x >= xm ? a - x : b - x;
            d = kGoldenSection * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0 ? tol1 : -tol1);
        const double fu = sanitize(f(u));
        ++out.evaluations;
        if (fu <= fx) {
            (u >= x ? a : b) = x;
            v = w, fv = fw;
            w = x, fw = fx;
            x = u, fx = fu;
        } else {
            (u < x ? a : b) = u;
            if (fu <= fw || w == x) {
                v = w, fv = fw;
                w = u, fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u, fv = fu;
            }
        }
    }
    out.t = x;
    out.value = fx;
    return out;
}

}  // namespace

void PowellConfig::validate() const {
    if (max_iterations <= 0 || !(f_tol > 0) || !(x_tol > 0) || !(bracket_growth > 0) || max_line_evaluations <= 0 ||
        !(initial_step > 0)) {
        throw ParameterError("Powell configuration values must all be positive");
    }
}

LineSearchResult line_minimize(const LineObjective &f, double t0, const PowellConfig &cfg) {
    const double f0 = sanitize(f(0.0));
    if (!std::isfinite(f0)) {
        throw ParameterError("line objective is not finite at t = 0");
    }
    LineSearchResult r = line_minimize(f, t0, cfg, f0);
    ++r.evaluations;
    return r;
}

LineSearchResult line_minimize(const LineObjective &f, double t0, const PowellConfig &cfg, double f_at_zero) {
    const int cap = cfg.max_line_evaluations;
    int evaluations = 0;
    Sample a{0.0, sanitize(f_at_zero)};
    Sample b{t0, sanitize(f(t0))};
    ++evaluations;
    if (b.f > a.f) {
        std::swap(a, b);
    }
    // Downhill from a through b; expand until the function turns up.
    Sample c{b.t + cfg.bracket_growth * (b.t - a.t), 0};
    c.f = sanitize(f(c.t));
    ++evaluations;
    while (c.f < b.f && evaluations < cap) {
        a = b;
        b = c;
        c.t = b.t + cfg.bracket_growth * (b.t - a.t);
        c.f = sanitize(f(c.t));
        ++evaluations;
    }
    if (c.f < b.f) {
        LineSearchResult r;
        r.t = c.t;
        r.value = c.f;
        r.evaluations = evaluations;
        r.bracketed = false;
        return r;
    }
    LineSearchResult r = brent(f, a.t, c.t, b, cap - evaluations, cfg);
    r.evaluations += evaluations;
    return r;
}

PowellResult powell_minimize(const Objective &f, std::vector<double> x0, const PowellConfig &cfg,
                             const SweepCallback &on_sweep) {
    cfg.validate();
    const auto dim = static_cast<Eigen::Index>(x0.size());
    PowellResult result;
    result.x = std::move(x0);
    result.value = sanitize(f(result.x));
    result.evaluations = 1;
    if (!std::isfinite(result.value)) {
        throw ParameterError("objective is not finite at the starting point");
    }
    result.trace.push_back({0, result.value, result.evaluations});
    if (dim == 0 || (on_sweep && !on_sweep(result.trace.back(), result.x))) {
        return result;
    }

    Eigen::MatrixXd directions = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::Map<Eigen::VectorXd> x(result.x.data(), dim);
    Eigen::VectorXd trial(dim);
    int replacements = 0;

    // Minimizes along `dir` from the current point; moves there unless the line search failed.
    auto search = [&](const Eigen::VectorXd &dir) {
        const LineObjective along = [&](double t) {
            trial = x + t * dir;
            return f(std::span<const double>(trial.data(), static_cast<std::size_t>(dim)));
        };
        const LineSearchResult ls = line_minimize(along, cfg.initial_step, cfg, result.value);
        result.evaluations += ls.evaluations;
        if (ls.bracketed && ls.value <= result.value) {
            x += ls.t * dir;
            result.value = ls.value;
        }
        return ls.bracketed;
    };

    for (int sweep = 1; sweep <= cfg.max_iterations; ++sweep) {
        const double f_start = result.value;
        const Eigen::VectorXd x_start = x;
        double biggest_drop = 0;
        Eigen::Index biggest = 0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double before = result.value;
            if (!search(directions.col(i))) {
                directions.col(i) = Eigen::VectorXd::Unit(dim, i);
            }
            if (before - result.value > biggest_drop) {
                biggest_drop = before - result.value;
                biggest = i;
            }
        }
        result.sweeps = sweep;

        const bool converged = 2.0 * (f_start - result.value) <=
                               cfg.f_tol * (std::abs(f_start) + std::abs(result.value)) + 1e-300;
        if (!converged) {
            // Acceptance test on the extrapolated point decides whether the mean
            // displacement replaces the direction of largest decrease.
            const Eigen::VectorXd shift = x - x_start;
            trial = x + shift;
            const double f_ext = sanitize(f(std::span<const double>(trial.data(), static_cast<std::size_t>(dim))));
            ++result.evaluations;
            if (f_ext < f_start) {
                const double lhs = 2.0 * (f_start - 2.0 * result.value + f_ext) *
                                   std::pow(f_start - result.value - biggest_drop, 2);
                const double rhs = biggest_drop * std::pow(f_start - f_ext, 2);
                if (lhs < rhs && shift.squaredNorm() > 0) {
                    search(shift);
                    directions.col(biggest) = directions.col(dim - 1);
                    directions.col(dim - 1) = shift;
                    // After dim replacements the set may have lost rank; restart from the axes.
                    if (++replacements >= dim) {
                        directions.setIdentity();
                        replacements = 0;
                    }
                }
            }
        }

        result.trace.push_back({sweep, result.value, result.evaluations});
        if (converged) {
            result.converged = true;
            break;
        }
        if (on_sweep && !on_sweep(result.trace.back(), result.x)) {
            break;
        }
    }
    if (result.converged && on_sweep) {
        on_sweep(result.trace.back(), result.x);
    }
    return result;
}

}  // namespace qstq

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

#include <cstdint>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qstq/chart_io.h"
#include "qstq/errors.h"
#include "qstq/hilbert.h"
#include "qstq/metrics.h"
#include "qstq/optimizer.h"
#include "qstq/reference.h"

namespace py = pybind11;
using namespace qstq;

namespace {

std::vector<CMatrix> matrices(const std::vector<Projector> &projectors) {
    std::vector<CMatrix> out;
    out.reserve(projectors.size());
    for (const auto &p : projectors) {
        out.push_back(p.matrix());
    }
    return out;
}

Quorum quorum_from_matrices(const std::vector<CMatrix> &mats, int rank) {
    std::vector<Projector> projectors;
    projectors.reserve(mats.size());
    for (const auto &m : mats) {
        projectors.push_back(Projector::from_matrix(m, rank));
    }
    return make_quorum(std::move(projectors));
}

py::dict metrics_dict(const MetricsReport &m) {
    py::dict d;
    d["n"] = m.n;
    d["l"] = m.l;
    d["quality"] = m.quality;
    d["log_quality"] = m.log_quality;
    d["degenerate"] = m.degenerate;
    d["upper_bound"] = m.upper_bound;
    d["relative_deviation"] = m.relative_deviation;
    d["non_orthogonality"] = m.non_orthogonality;
    d["ln_L"] = m.ln_L;
    d["min_chordal_sq"] = m.min_chordal_sq;
    d["max_chordal_sq"] = m.max_chordal_sq;
    d["repetition_overhead"] = m.repetition_overhead;
    return d;
}

PowellConfig powell_config(int max_iterations, double f_tol, double x_tol) {
    PowellConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.f_tol = f_tol;
    cfg.x_tol = x_tol;
    return cfg;
}

ScheduleConfig schedule_config(int phase_length, int total_phases, double max_seconds) {
    ScheduleConfig s;
    s.phase_length = phase_length;
    s.total_phases = total_phases;
    s.max_seconds = max_seconds;
    return s;
}

py::dict optimization_dict(const OptimizationResult &r) {
    py::dict d;
    d["angles"] = r.chart.angles;
    d["n"] = r.chart.dims.n;
    d["l"] = r.chart.dims.l;
    d["seed"] = r.seed;
    d["evaluations"] = r.evaluations;
    d["metrics"] = metrics_dict(r.metrics);
    py::list trace;
    for (const auto &t : r.trace) {
        trace.append(py::make_tuple(t.phase, t.iteration, std::string(to_string(t.kind)), t.objective, t.quality,
                                    t.ln_L, t.elapsed_s));
    }
    d["trace"] = trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum-state-tomography quorum design: chart, metrics, Powell optimizer, reference constructions";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.def("param_count", [](int n, int l) {
        const ChartDims d{n, l};
        d.validate();
        return d.param_count();
    });
    m.def("vector_from_angles", [](const std::vector<double> &angles) { return CVector(vector_from_angles(angles)); },
          py::arg("angles"));
    m.def("embed_orthonormal_frame",
          [](const std::vector<double> &angles, int n, int l) { return embed_orthonormal_frame(angles, {n, l}); },
          py::arg("angles"), py::arg("n") = 6, py::arg("l") = 3);
    m.def("quorum_from_chart",
          [](const std::vector<double> &angles, int n, int l) {
              return matrices(quorum_from_chart(ParamChart({n, l}, angles)).projectors);
          },
          py::arg("angles"), py::arg("n") = 6, py::arg("l") = 3);
    m.def("random_chart", [](int n, int l, std::uint64_t seed) { return random_chart({n, l}, seed).angles; },
          py::arg("n") = 6, py::arg("l") = 3, py::arg("seed") = 0);

    m.def("gram_matrix",
          [](const std::vector<CMatrix> &projectors, int rank) {
              return Eigen::MatrixXd(gram_matrix(quorum_from_matrices(projectors, rank)));
          },
          py::arg("projectors"), py::arg("rank"));
    m.def("quality_measure",
          [](const std::vector<CMatrix> &projectors, int rank) {
              const QualityValue v = quality_measure(quorum_from_matrices(projectors, rank));
              return py::make_tuple(v.quality, v.log_quality, v.degenerate);
          },
          py::arg("projectors"), py::arg("rank"));
    m.def("non_orthogonality",
          [](const std::vector<CMatrix> &projectors, int rank) {
              const NonOrthogonality v = non_orthogonality(quorum_from_matrices(projectors, rank));
              return py::make_tuple(v.L, v.ln_L);
          },
          py::arg("projectors"), py::arg("rank"));
    m.def("metrics",
          [](const std::vector<double> &angles, int n, int l) {
              return metrics_dict(compute_metrics(quorum_from_chart(ParamChart({n, l}, angles))));
          },
          py::arg("angles"), py::arg("n") = 6, py::arg("l") = 3);
    m.def("upper_bound", &upper_bound, py::arg("n"), py::arg("l"));
    m.def("chordal_distance_sq",
          [](const CMatrix &a, const CMatrix &b, int rank) {
              return chordal_distance_sq(Projector::from_matrix(a, rank), Projector::from_matrix(b, rank));
          },
          py::arg("a"), py::arg("b"), py::arg("rank"));
    m.def("extend_to_maximal",
          [](const std::vector<CMatrix> &projectors, int rank) {
              return matrices(extend_to_maximal(quorum_from_matrices(projectors, rank)).projectors);
          },
          py::arg("projectors"), py::arg("rank"));
    m.def("repetition_overhead", &repetition_overhead, py::arg("relative_deviation"), py::arg("n"));

    m.def("powell_minimize",
          [](const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0, int max_iterations,
             double f_tol, double x_tol) {
              const Objective objective = [&f](std::span<const double> x) {
                  return f(std::vector<double>(x.begin(), x.end()));
              };
              const PowellResult r = powell_minimize(objective, std::move(x0), powell_config(max_iterations, f_tol, x_tol));
              return py::make_tuple(r.x, r.value, r.sweeps, r.converged);
          },
          py::arg("f"), py::arg("x0"), py::arg("max_iterations") = 1000, py::arg("f_tol") = 1e-10,
          py::arg("x_tol") = 1e-10);
    m.def("alternating_optimize",
          [](const std::vector<double> &angles, int n, int l, int phase_length, int total_phases, double max_seconds,
             double f_tol, double x_tol) {
              OptimizationResult r;
              {
                  py::gil_scoped_release release;
                  r = alternating_optimize(ParamChart({n, l}, angles),
                                           schedule_config(phase_length, total_phases, max_seconds),
                                           powell_config(1000, f_tol, x_tol));
              }
              return optimization_dict(r);
          },
          py::arg("angles"), py::arg("n") = 6, py::arg("l") = 3, py::arg("phase_length") = 200,
          py::arg("total_phases") = 20, py::arg("max_seconds") = 0.0, py::arg("f_tol") = 1e-10,
          py::arg("x_tol") = 1e-10);
    m.def("multi_restart",
          [](int n, int l, const std::vector<std::uint64_t> &seeds, int phase_length, int total_phases,
             double max_seconds, double f_tol, double x_tol, unsigned threads) {
              MultiRestartResult r;
              {
                  py::gil_scoped_release release;
                  r = multi_restart({n, l}, schedule_config(phase_length, total_phases, max_seconds),
                                    powell_config(1000, f_tol, x_tol), seeds, threads);
              }
              py::dict d = optimization_dict(r.best);
              d["run_qualities"] = r.run_qualities;
              return d;
          },
          py::arg("n"), py::arg("l"), py::arg("seeds"), py::arg("phase_length") = 200, py::arg("total_phases") = 20,
          py::arg("max_seconds") = 0.0, py::arg("f_tol") = 1e-10, py::arg("x_tol") = 1e-10, py::arg("threads") = 0);

    m.def("mub_family", [](int n) { return mub_family(n).bases; }, py::arg("n"));
    m.def("rank1_optimal_quorum_n2", [] { return matrices(rank1_optimal_quorum_n2().projectors); });
    m.def("halfdim_optimal_quorum_n4", [] { return matrices(halfdim_optimal_quorum_n4().projectors); });
    m.def("rank1_optimal_chart_n2", [] { return rank1_optimal_chart_n2().angles; });

    m.def("chart_to_json",
          [](const std::vector<double> &angles, int n, int l, std::uint64_t seed) {
              return chart_to_json(ChartFile{ParamChart({n, l}, angles), {seed, utc_timestamp(), QSTQ_VERSION}});
          },
          py::arg("angles"), py::arg("n") = 6, py::arg("l") = 3, py::arg("seed") = 0);
    m.def("chart_from_json", [](const std::string &text) {
        const ChartFile f = chart_from_json(text);
        return py::make_tuple(f.chart.angles, f.chart.dims.n, f.chart.dims.l);
    });

    m.attr("__version__") = QSTQ_VERSION;
}

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

// qstq: design, evaluate and extend quantum-state-tomography quorums.
//
//   qstq optimize  --n 6 --l 3 --seed 1 --restarts 8 --out runs/
//   qstq evaluate  runs/chart.json
//   qstq extend    runs/chart.json --out maximal.json
//   qstq reference n4-rank2
//
// Exit codes: 0 success, 2 bad flags or input, 3 unwritable output, 1 failed verification.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qstq/chart_io.h"
#include "qstq/errors.h"
#include "qstq/hilbert.h"
#include "qstq/metrics.h"
#include "qstq/optimizer.h"
#include "qstq/reference.h"

namespace fs = std::filesystem;
using namespace qstq;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUnwritable = 3;

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
        throw OutputError("cannot write " + path.string());
    }
}

void require_writable_dir(const fs::path &dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw OutputError("output directory does not exist: " + dir.string());
    }
    const fs::path probe = dir / ".qstq-write-probe";
    {
        std::ofstream out(probe);
        if (!out) {
            throw OutputError("output directory is not writable: " + dir.string());
        }
    }
    fs::remove(probe, ec);
}

// Writes to `path`, or to stdout when path is empty.
void emit(const std::string &path, const std::string &content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

void print_summary(const MetricsReport &m) {
    std::printf("quality             %.17g\n", m.quality);
    std::printf("upper_bound         %.17g\n", m.upper_bound);
    std::printf("relative_deviation  %.6e\n", m.relative_deviation);
    std::printf("ln_L                %.10g\n", m.ln_L);
    std::printf("min_chordal_sq      %.17g\n", m.min_chordal_sq);
    std::printf("max_chordal_sq      %.17g\n", m.max_chordal_sq);
    std::printf("repetition_overhead %.6e\n", m.repetition_overhead);
    if (m.degenerate) {
        std::printf("degenerate          yes (Gram matrix numerically singular)\n");
    }
}

struct OptimizeArgs {
    int n = 6;
    int l = 3;
    std::uint64_t seed = 0;
    int restarts = 1;
    int phases = 20;
    int sweeps = 200;
    double f_tol = 1e-10;
    double x_tol = 1e-10;
    double max_seconds = 0;
    unsigned threads = 0;
    std::string out;
    std::string resume;
};

int cmd_optimize(const OptimizeArgs &args) {
    const fs::path out_dir(args.out);
    require_writable_dir(out_dir);

    const ChartDims dims{args.n, args.l};
    dims.validate();
    ScheduleConfig sched;
    sched.phase_length = args.sweeps;
    sched.total_phases = args.phases;
    sched.restart_count = args.restarts;
    sched.rng_seed = args.seed;
    sched.max_seconds = args.max_seconds;
    sched.validate();
    PowellConfig cfg;
    cfg.f_tol = args.f_tol;
    cfg.x_tol = args.x_tol;
    cfg.validate();

    std::optional<ParamChart> start;
    if (!args.resume.empty()) {
        start = read_chart_file(args.resume).chart;
        if (!(start->dims == dims)) {
            throw FormatError("resume chart has n=" + std::to_string(start->dims.n) + ", l=" +
                              std::to_string(start->dims.l) + " but --n/--l ask for n=" + std::to_string(args.n) +
                              ", l=" + std::to_string(args.l));
        }
    }
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(args.restarts));
    std::iota(seeds.begin(), seeds.end(), args.seed);

    const MultiRestartResult result =
        multi_restart(dims, sched, cfg, seeds, args.threads, start ? &*start : nullptr);
    const OptimizationResult &best = result.best;

    ChartFile file{best.chart, {best.seed, utc_timestamp(), QSTQ_VERSION}};
    const Eigen::MatrixXd gram = gram_matrix(quorum_from_chart(best.chart));
    write_file(out_dir / "chart.json", chart_to_json(file));
    write_file(out_dir / "report.json", report_to_json(best.metrics, worst_pairs(gram)));
    write_file(out_dir / "trace.csv", trace_to_csv(best.trace));

    for (std::size_t k = 0; k < result.seeds.size(); ++k) {
        std::fprintf(stderr, "seed %llu: quality %.12g\n", static_cast<unsigned long long>(result.seeds[k]),
                     result.run_qualities[k]);
    }
    std::printf("best seed           %llu\n", static_cast<unsigned long long>(best.seed));
    print_summary(best.metrics);
    return 0;
}

int cmd_evaluate(const std::string &chart_path, const std::string &format) {
    const ChartFile file = read_chart_file(chart_path);
    const Quorum q = quorum_from_chart(file.chart);
    const MetricsReport metrics = compute_metrics(q);
    if (format == "text") {
        print_summary(metrics);
    } else {
        std::cout << report_to_json(metrics, worst_pairs(gram_matrix(q)));
    }
    return 0;
}

int cmd_extend(const std::string &chart_path, const std::string &reference, const std::string &out) {
    Quorum q;
    if (!reference.empty()) {
        if (reference != "n4") {
            throw ParameterError("unknown reference '" + reference + "' (expected n4)");
        }
        q = halfdim_optimal_quorum_n4();
    } else if (!chart_path.empty()) {
        q = quorum_from_chart(read_chart_file(chart_path).chart);
    } else {
        throw ParameterError("extend needs a chart file or --reference n4");
    }
    const MaximalSet set = extend_to_maximal(q);
    const MaximalSetReport report = verify_maximal_set(set);
    emit(out, maximal_set_to_json(set, report));
    std::fprintf(stderr, "%zu projectors; cross-pair d2 in [%.12g, %.12g] (bound %.12g), %zu/%zu within 1e-6\n",
                 report.size, report.cross.min_d2, report.cross.max_d2, report.cross.bound,
                 report.cross.unbiased_pairs, report.cross.pairs);
    return 0;
}

int cmd_reference(const std::string &name, const std::string &out) {
    if (name.rfind("mub", 0) == 0 && name.size() == 4) {
        const int n = name[3] - '0';
        if (n < 2 || n > 4) {
            throw ParameterError("unknown reference '" + name + "'");
        }
        const MubFamily family = mub_family(n);
        const MubCheck check = check_mub_family(family);
        std::printf("bases                %zu\n", family.bases.size());
        std::printf("overlap_sq           %.17g\n", 1.0 / n);
        std::printf("orthonormality_error %.3e\n", check.orthonormality_error);
        std::printf("unbiasedness_error   %.3e\n", check.unbiasedness_error);
        if (!out.empty()) {
            std::vector<Projector> rank1;
            for (const CMatrix &basis : family.bases) {
                for (Eigen::Index c = 0; c < basis.cols(); ++c) {
                    const CVector v = basis.col(c);
                    rank1.push_back(Projector::from_vectors(std::span<const CVector>(&v, 1)));
                }
            }
            write_file(out, projector_set_to_json(rank1, orthoplex_report(rank1)));
        }
        std::printf("verified             %s\n", check.passed() ? "yes" : "no");
        return check.passed() ? 0 : kExitVerification;
    }

    Quorum q;
    bool passed = false;
    if (name == "n2-rank1") {
        q = rank1_optimal_quorum_n2();
    } else if (name == "n4-rank2") {
        q = halfdim_optimal_quorum_n4();
    } else {
        throw ParameterError("unknown reference '" + name + "' (expected mub2, mub3, mub4, n2-rank1, n4-rank2)");
    }
    const MetricsReport m = compute_metrics(q);
    passed = std::abs(m.quality - m.upper_bound) <= kComposedTol * m.upper_bound && m.non_orthogonality <= kComposedTol;
    print_summary(m);
    if (name == "n4-rank2") {
        const ReferenceVerification v = extend_and_verify_n4();
        std::printf("maximal_set_size    %zu\n", v.maximal.size);
        std::printf("cross_d2_range      [%.17g, %.17g]\n", v.maximal.cross.min_d2, v.maximal.cross.max_d2);
        passed = passed && v.passed;
    }
    if (!out.empty()) {
        write_file(out, projector_set_to_json(q.projectors, orthoplex_report(q.projectors)));
    }
    std::printf("verified            %s\n", passed ? "yes" : "no");
    return passed ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Design and verify quantum-state-tomography quorums of rank-l projectors"};
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto *optimize = app.add_subcommand("optimize", "Run the alternating Powell optimization");
    optimize->add_option("--n", opt.n, "Hilbert space dimension")->capture_default_str();
    optimize->add_option("--l", opt.l, "Projector rank")->capture_default_str();
    optimize->add_option("--seed", opt.seed, "First RNG seed; restart k uses seed + k")->capture_default_str();
    optimize->add_option("--restarts", opt.restarts, "Independent random starts")->capture_default_str();
    optimize->add_option("--phases", opt.phases, "Alternating objective phases")->capture_default_str();
    optimize->add_option("--sweeps-per-phase", opt.sweeps, "Powell sweeps per phase")->capture_default_str();
    optimize->add_option("--f-tol", opt.f_tol, "Relative objective tolerance per sweep")->capture_default_str();
    optimize->add_option("--x-tol", opt.x_tol, "Line-search tolerance")->capture_default_str();
    optimize->add_option("--max-seconds", opt.max_seconds, "Wall-clock budget per restart (0 = none)")
        ->capture_default_str();
    optimize->add_option("--threads", opt.threads, "Worker threads for restarts (0 = all cores)")
        ->capture_default_str();
    optimize->add_option("--out", opt.out, "Output directory for chart.json, report.json, trace.csv")->required();
    optimize->add_option("--resume", opt.resume, "Start the first restart from this chart file");

    std::string eval_chart, eval_format = "json";
    auto *evaluate = app.add_subcommand("evaluate", "Print the metrics report of a chart file");
    evaluate->add_option("chart", eval_chart, "Chart file")->required();
    evaluate->add_option("--format", eval_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::string ext_chart, ext_reference, ext_out;
    auto *extend = app.add_subcommand("extend", "Extend a half-dimensional quorum by complements");
    extend->add_option("chart", ext_chart, "Chart file");
    extend->add_option("--reference", ext_reference, "Use a built-in quorum instead of a chart (n4)");
    extend->add_option("--out", ext_out, "Output file (default stdout)");

    std::string ref_name, ref_out;
    auto *reference = app.add_subcommand("reference", "Build and verify an analytic construction");
    reference->add_option("name", ref_name, "mub2, mub3, mub4, n2-rank1 or n4-rank2")->required();
    reference->add_option("--out", ref_out, "Write the projector dump to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*optimize) {
            return cmd_optimize(opt);
        }
        if (*evaluate) {
            return cmd_evaluate(eval_chart, eval_format);
        }
        if (*extend) {
            return cmd_extend(ext_chart, ext_reference, ext_out);
        }
        return cmd_reference(ref_name, ref_out);
    } catch (const OutputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnwritable;
    } catch (const FormatError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

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

#include "qstq/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qstq/errors.h"

namespace qstq {

Eigen::MatrixXd gram_matrix(const Quorum &q) {
    const auto m = static_cast<Eigen::Index>(q.size());
    if (m == 0) {
        return Eigen::MatrixXd(0, 0);
    }
    // Row k holds Q_k as 2n^2 reals (re, im interleaved); Tr(Q_i^dag Q_j) is then a real dot product
    // because the imaginary part vanishes for Hermitian Q.
    const Eigen::Index width = 2 * static_cast<Eigen::Index>(q.n) * q.n;
    Eigen::MatrixXd rows(m, width);
    for (Eigen::Index k = 0; k < m; ++k) {
        const TracelessPart t = traceless_part(q.projectors[static_cast<std::size_t>(k)]);
        rows.row(k) = Eigen::Map<const Eigen::VectorXd>(reinterpret_cast<const double *>(t.matrix.data()), width);
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(rows);
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    return gram;
}

QualityValue quality_from_gram(const Eigen::MatrixXd &gram) {
    QualityValue v;
    if (gram.rows() == 0) {
        v.quality = 1.0;
        return v;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) {
        const auto diag = llt.matrixLLT().diagonal();
        if ((diag.array() * diag.array()).minCoeff() > 1e3 * kGramEigenFloor) {
            v.log_quality = diag.array().log().sum();
            v.quality = std::exp(v.log_quality);
            return v;
        }
    }
    // Near-singular: fall back to the spectrum and clamp.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    double half_logdet = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        double lambda = eig.eigenvalues()[k];
        if (!(lambda >= kGramEigenFloor)) {
            lambda = kGramEigenFloor;
            v.degenerate = true;
        }
        half_logdet += 0.5 * std::log(lambda);
    }
    v.log_quality = half_logdet;
    v.quality = v.degenerate ? 0.0 : std::exp(half_logdet);
    return v;
}

QualityValue quality_measure(const Quorum &q) { return quality_from_gram(gram_matrix(q)); }

double direct_quality(const Eigen::MatrixXd &gram) {
    const double det = gram.rows() == 0 ? 1.0 : gram.partialPivLu().determinant();
    return std::sqrt(std::max(det, 0.0));
}

namespace {

void require_dims(int n, int l) { ChartDims{n, l}.validate(); }

}  // namespace

double log_upper_bound(int n, int l) {
    require_dims(n, l);
    const double length_sq = l * (1.0 - static_cast<double>(l) / n);
    return 0.5 * (n * n - 1) * std::log(length_sq);
}

double upper_bound(int n, int l) {
    require_dims(n, l);
    const double length_sq = l * (1.0 - static_cast<double>(l) / n);
    return std::pow(length_sq, 0.5 * (n * n - 1));
}

double orthoplex_distance_sq(int n, int l) {
    require_dims(n, l);
    return static_cast<double>(l) * (n - l) / n;
}

NonOrthogonality non_orthogonality_from_gram(const Eigen::MatrixXd &gram) {
    NonOrthogonality r;
    const Eigen::Index m = gram.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i != j) {
                r.L += std::abs(gram(i, j));
            }
        }
    }
    r.ln_L = r.L > 0 ? std::log(r.L) : -std::numeric_limits<double>::infinity();
    return r;
}

NonOrthogonality non_orthogonality(const Quorum &q) { return non_orthogonality_from_gram(gram_matrix(q)); }

double chordal_distance_sq(const Projector &a, const Projector &b) {
    if (a.dim() != b.dim() || a.rank() != b.rank()) {
        throw ParameterError("chordal distance needs projectors of equal dimension and rank");
    }
    // Tr(A^dag B) as an elementwise product.
    const Complex overlap = (a.matrix().conjugate().array() * b.matrix().array()).sum();
    return a.rank() - overlap.real();
}

OrthoplexReport orthoplex_report(std::span<const Projector> set, double tol) {
    if (set.size() < 2) {
        throw ShapeError("orthoplex report needs at least two projectors");
    }
    const int n = set.front().dim();
    const int l = set.front().rank();
    OrthoplexReport r;
    r.bound = orthoplex_distance_sq(n, l);
    r.min_d2 = std::numeric_limits<double>::infinity();
    r.max_d2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const double d2 = chordal_distance_sq(set[i], set[j]);
            ++r.pairs;
            r.min_d2 = std::min(r.min_d2, d2);
            r.max_d2 = std::max(r.max_d2, d2);
            const double miss = std::abs(d2 - r.bound);
            r.unbiased_pairs += miss <= tol ? 1 : 0;
            r.strict_unbiased_pairs += miss <= kComposedTol ? 1 : 0;
        }
    }
    r.all_unbiased = r.unbiased_pairs == r.pairs;
    return r;
}

MaximalSet extend_to_maximal(const Quorum &q) {
    if (2 * q.l != q.n) {
        throw UnsupportedConfiguration("complement extension needs l = n/2, got n=" + std::to_string(q.n) +
                                       ", l=" + std::to_string(q.l));
    }
    MaximalSet set{q.n, q.l, {}};
    set.projectors.reserve(2 * q.size());
    set.projectors = q.projectors;
    for (const auto &p : q.projectors) {
        set.projectors.push_back(p.complement());
    }
    return set;
}

MaximalSetReport verify_maximal_set(const MaximalSet &set, double tol) {
    MaximalSetReport r;
    r.size = set.projectors.size();
    const std::size_t half = r.size / 2;
    if (half == 0 || r.size % 2 != 0) {
        throw ShapeError("maximal set must have an even, non-zero number of projectors");
    }
    r.complements_exact = true;
    for (std::size_t j = 0; j < half; ++j) {
        const Projector &p = set.projectors[j];
        const Projector &c = set.projectors[j + half];
        const CMatrix expected = p.complement().matrix();
        r.complements_exact = r.complements_exact && (c.matrix().array() == expected.array()).all();
        r.complement_deviation = std::max(r.complement_deviation, std::abs(chordal_distance_sq(p, c) - p.rank()));
    }
    r.cross.bound = orthoplex_distance_sq(set.n, set.l);
    r.cross.min_d2 = std::numeric_limits<double>::infinity();
    r.cross.max_d2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size; ++i) {
        for (std::size_t j = i + 1; j < r.size; ++j) {
            if (j == i + half) {
                continue;
            }
            const double d2 = chordal_distance_sq(set.projectors[i], set.projectors[j]);
            const double miss = std::abs(d2 - r.cross.bound);
            ++r.cross.pairs;
            r.cross.min_d2 = std::min(r.cross.min_d2, d2);
            r.cross.max_d2 = std::max(r.cross.max_d2, d2);
            r.cross.unbiased_pairs += miss <= tol ? 1 : 0;
            r.cross.strict_unbiased_pairs += miss <= kComposedTol ? 1 : 0;
        }
    }
    r.cross.all_unbiased = r.cross.unbiased_pairs == r.cross.pairs;
    return r;
}

double repetition_overhead(double relative_deviation, int n) {
    if (n < 2) {
        throw ParameterError("repetition overhead needs n >= 2");
    }
    if (!(relative_deviation < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 / (n * n - 1) * relative_deviation / (1.0 - relative_deviation);
}

MetricsReport compute_metrics(const Quorum &q) {
    const Eigen::MatrixXd gram = gram_matrix(q);
    const QualityValue qv = quality_from_gram(gram);
    const NonOrthogonality no = non_orthogonality_from_gram(gram);

    MetricsReport r;
    r.n = q.n;
    r.l = q.l;
    r.quality = qv.quality;
    r.log_quality = qv.log_quality;
    r.degenerate = qv.degenerate;
    r.upper_bound = upper_bound(q.n, q.l);
    r.relative_deviation = (r.upper_bound - r.quality) / r.upper_bound;
    r.non_orthogonality = no.L;
    r.ln_L = no.ln_L;
    r.repetition_overhead = repetition_overhead(r.relative_deviation, q.n);

    // d^2 = l - Tr(P_i P_j) = l - l^2/n - G_ij.
    const double length_sq = q.l - static_cast<double>(q.l) * q.l / q.n;
    r.min_chordal_sq = std::numeric_limits<double>::infinity();
    r.max_chordal_sq = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
            const double d2 = length_sq - gram(i, j);
            r.min_chordal_sq = std::min(r.min_chordal_sq, d2);
            r.max_chordal_sq = std::max(r.max_chordal_sq, d2);
        }
    }
    return r;
}

std::vector<PairOverlap> worst_pairs(const Eigen::MatrixXd &gram, std::size_t count) {
    std::vector<PairOverlap> pairs;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
            pairs.push_back({static_cast<int>(i), static_cast<int>(j), gram(i, j)});
        }
    }
    const std::size_t keep = std::min(count, pairs.size());
    std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(keep), pairs.end(),
                      [](const PairOverlap &a, const PairOverlap &b) {
                          const double ma = std::abs(a.overlap), mb = std::abs(b.overlap);
                          return ma != mb ? ma > mb : (a.i != b.i ? a.i < b.i : a.j < b.j);
                      });
    pairs.resize(keep);
    return pairs;
}

}  // namespace qstq

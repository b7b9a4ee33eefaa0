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

#ifndef QSTQ_METRICS_H
#define QSTQ_METRICS_H

// Scalar figures of merit for a quorum: the Gram volume and its bound, the
// non-orthogonality sum, chordal distances, orthoplex checks, the complement
// extension and the repetition overhead.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qstq/hilbert.h"

namespace qstq {

/// Eigenvalues of the Gram matrix below this are clamped and flag degeneracy.
inline constexpr double kGramEigenFloor = 1e-14;
/// Default tolerance on d^2 when counting orthoplex-bound pairs.
inline constexpr double kOrthoplexTol = 1e-6;

/// G_ij = Tr(Q_i^dag Q_j), real symmetric (exactly symmetric in floating point).
Eigen::MatrixXd gram_matrix(const Quorum &q);

struct QualityValue {
    /// sqrt(det G); reported as 0 when the Gram matrix is degenerate.
    double quality = 0;
    /// (1/2) log det G, with eigenvalues clamped at kGramEigenFloor. Always finite.
    double log_quality = 0;
    bool degenerate = false;
};

QualityValue quality_from_gram(const Eigen::MatrixXd &gram);
QualityValue quality_measure(const Quorum &q);

/// sqrt(det G) through a plain LU determinant. Cross-validation path for small m.
double direct_quality(const Eigen::MatrixXd &gram);

/// (l (1 - l/n))^((n^2 - 1)/2). Throws ParameterError unless 1 <= l < n.
double upper_bound(int n, int l);
double log_upper_bound(int n, int l);

/// The chordal distance every pair of mutually unbiased subspaces has: l(n - l)/n.
double orthoplex_distance_sq(int n, int l);

struct NonOrthogonality {
    /// Sum of |G_ij| over ordered pairs i != j.
    double L = 0;
    /// ln L, or -infinity when L == 0.
    double ln_L = 0;
};

NonOrthogonality non_orthogonality_from_gram(const Eigen::MatrixXd &gram);
NonOrthogonality non_orthogonality(const Quorum &q);

/// l - Tr(P_i^dag P_j). Throws ParameterError on mismatched dimension or rank.
double chordal_distance_sq(const Projector &a, const Projector &b);

struct OrthoplexReport {
    std::size_t pairs = 0;
    double min_d2 = 0;
    double max_d2 = 0;
    double bound = 0;
    /// Pairs with |d^2 - bound| <= tol.
    std::size_t unbiased_pairs = 0;
    /// Pairs with |d^2 - bound| <= kComposedTol.
    std::size_t strict_unbiased_pairs = 0;
    bool all_unbiased = false;
};

OrthoplexReport orthoplex_report(std::span<const Projector> set, double tol = kOrthoplexTol);

/// 2(n^2 - 1) projectors; element j + n^2 - 1 is 1 - element j.
struct MaximalSet {
    int n = 0;
    int l = 0;
    std::vector<Projector> projectors;
};

/// Throws UnsupportedConfiguration unless l = n/2.
MaximalSet extend_to_maximal(const Quorum &q);

struct MaximalSetReport {
    std::size_t size = 0;
    /// max |d^2(P_j, 1 - P_j) - l| over complementary pairs.
    double complement_deviation = 0;
    /// Whether element j + m equals 1 - element j bit for bit.
    bool complements_exact = false;
    /// Distances of every pair not related by complement.
    OrthoplexReport cross;
};

MaximalSetReport verify_maximal_set(const MaximalSet &set, double tol = kOrthoplexTol);

/// First-order relative increase of the repetition count, (2/(n^2-1)) dev / (1 - dev).
double repetition_overhead(double relative_deviation, int n);

struct MetricsReport {
    int n = 0;
    int l = 0;
    double quality = 0;
    double log_quality = 0;
    bool degenerate = false;
    double upper_bound = 0;
    double relative_deviation = 0;
    double non_orthogonality = 0;
    double ln_L = 0;
    double min_chordal_sq = 0;
    double max_chordal_sq = 0;
    double repetition_overhead = 0;
};

MetricsReport compute_metrics(const Quorum &q);

struct PairOverlap {
    int i = 0;
    int j = 0;
    double overlap = 0;  // Tr(Q_i Q_j)
};

/// The `count` unordered pairs with the largest |G_ij|, largest first.
std::vector<PairOverlap> worst_pairs(const Eigen::MatrixXd &gram, std::size_t count = 10);

}  // namespace qstq

#endif

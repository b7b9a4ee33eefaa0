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

#include "qstq/reference.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qstq/errors.h"

using namespace qstq;

TEST(mub_family, sizes_and_invariants) {
    for (int n : {2, 3, 4}) {
        const MubFamily f = mub_family(n);
        EXPECT_EQ(f.bases.size(), static_cast<std::size_t>(n + 1));
        const MubCheck check = check_mub_family(f);
        EXPECT_LE(check.orthonormality_error, 1e-12) << n;
        EXPECT_LE(check.unbiasedness_error, 1e-12) << n;
        EXPECT_TRUE(check.passed());
    }
}

TEST(mub_family, qubit_bases_are_textbook) {
    const MubFamily f = mub_family(2);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_EQ(f.bases[0], CMatrix::Identity(2, 2));
    EXPECT_NEAR(std::abs(f.bases[1](0, 0) - h), 0, 1e-15);
    EXPECT_NEAR(std::abs(f.bases[1](1, 1) + h), 0, 1e-15);
    EXPECT_NEAR(std::abs(f.bases[2](1, 0) - Complex(0, h)), 0, 1e-15);
}

TEST(mub_family, unsupported_dimension) {
    EXPECT_THROW(mub_family(5), UnsupportedConfiguration);
    EXPECT_THROW(mub_family(6), UnsupportedConfiguration);
    EXPECT_THROW(mub_family(1), UnsupportedConfiguration);
}

TEST(rank1_optimal_quorum_n2, reaches_bound) {
    const Quorum q = rank1_optimal_quorum_n2();
    ASSERT_EQ(q.size(), 3u);
    const MetricsReport m = compute_metrics(q);
    EXPECT_NEAR(m.quality, 0.35355339059327373, 1e-12);
    EXPECT_NEAR(m.non_orthogonality, 0.0, 1e-12);
    EXPECT_NEAR(m.quality, upper_bound(2, 1), 1e-12);
}

TEST(rank1_optimal_chart_n2, reproduces_the_quorum) {
    const Quorum from_chart = quorum_from_chart(rank1_optimal_chart_n2());
    const Quorum direct = rank1_optimal_quorum_n2();
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_LT((from_chart.projectors[k].matrix() - direct.projectors[k].matrix()).norm(), 1e-15);
    }
}

TEST(halfdim_optimal_quorum_n4, overlaps_within_and_across_bases) {
    const Quorum q = halfdim_optimal_quorum_n4();
    ASSERT_EQ(q.size(), 15u);
    for (std::size_t a = 0; a < q.size(); ++a) {
        for (std::size_t b = a + 1; b < q.size(); ++b) {
            const double overlap = (q.projectors[a].matrix() * q.projectors[b].matrix()).trace().real();
            EXPECT_NEAR(overlap, 1.0, 1e-12) << a << "," << b;
        }
    }
}

TEST(halfdim_optimal_quorum_n4, reaches_bound) {
    const Quorum q = halfdim_optimal_quorum_n4();
    const MetricsReport m = compute_metrics(q);
    EXPECT_NEAR(m.quality, 1.0, 1e-10);
    EXPECT_LE(m.non_orthogonality, 1e-10);
    const OrthoplexReport r = orthoplex_report(q.projectors, 1e-10);
    EXPECT_TRUE(r.all_unbiased);
    EXPECT_NEAR(r.min_d2, 1.0, 1e-10);
    EXPECT_NEAR(r.max_d2, 1.0, 1e-10);
}

TEST(extend_and_verify_n4, maximal_set) {
    const ReferenceVerification v = extend_and_verify_n4();
    EXPECT_TRUE(v.passed);
    EXPECT_EQ(v.maximal.size, 30u);
    EXPECT_TRUE(v.maximal.complements_exact);
    EXPECT_LE(v.maximal.complement_deviation, 1e-12);
    EXPECT_NEAR(v.maximal.cross.min_d2, 1.0, 1e-10);
    EXPECT_NEAR(v.maximal.cross.max_d2, 1.0, 1e-10);
    EXPECT_EQ(v.maximal.cross.pairs, 30u * 29u / 2u - 15u);
}

TEST(extend_and_verify_n4, cross_identity_on_oracle) {
    const Quorum q = halfdim_optimal_quorum_n4();
    for (const auto &a : q.projectors) {
        for (const auto &b : q.projectors) {
            const double overlap = (a.matrix() * b.matrix()).trace().real();
            EXPECT_NEAR(chordal_distance_sq(a, b.complement()), overlap, 1e-12);
        }
    }
}

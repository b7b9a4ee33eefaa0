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

#ifndef QSTQ_TESTS_TEST_SUPPORT_H
#define QSTQ_TESTS_TEST_SUPPORT_H

// Helpers shared by the test binaries: random unitaries, brute-force
// determinants and projector checks that do not go through the library code.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qstq/hilbert.h"

namespace qstq::oracle {

/// Haar-ish random unitary: QR of a complex Gaussian matrix with phase-fixed R diagonal.
inline CMatrix random_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CMatrix z(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            z(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        q.col(j) *= r(j, j) / std::abs(r(j, j));
    }
    return q;
}

/// Laplace cofactor expansion along the first row. Exponential cost; m <= 8 only.
inline double cofactor_determinant(const Eigen::MatrixXd &a) {
    const Eigen::Index m = a.rows();
    if (m == 1) {
        return a(0, 0);
    }
    double det = 0;
    for (Eigen::Index c = 0; c < m; ++c) {
        Eigen::MatrixXd minor(m - 1, m - 1);
        for (Eigen::Index r = 1; r < m; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index k = 0; k < m; ++k) {
                if (k != c) {
                    minor(r - 1, cc++) = a(r, k);
                }
            }
        }
        det += (c % 2 == 0 ? 1.0 : -1.0) * a(0, c) * cofactor_determinant(minor);
    }
    return det;
}

/// Gram entries Tr(Q_i Q_j) by explicit matrix products.
inline Eigen::MatrixXd brute_force_gram(const std::vector<CMatrix> &projectors, int rank) {
    const auto m = static_cast<Eigen::Index>(projectors.size());
    Eigen::MatrixXd g(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto n = projectors[0].rows();
            const CMatrix qi = projectors[i] - CMatrix::Identity(n, n) * (static_cast<double>(rank) / n);
            const CMatrix qj = projectors[j] - CMatrix::Identity(n, n) * (static_cast<double>(rank) / n);
            g(i, j) = (qi.adjoint() * qj).trace().real();
        }
    }
    return g;
}

inline std::vector<double> random_angles(std::size_t count, std::mt19937_64 &rng, double scale = 6.283185307179586) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> a(count);
    for (auto &x : a) {
        x = u(rng);
    }
    return a;
}

}  // namespace qstq::oracle

#endif

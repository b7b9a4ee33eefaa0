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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qstq/errors.h"

namespace qstq {

namespace {

using Matrix2c = Eigen::Matrix2cd;

const Complex kI(0.0, 1.0);

Matrix2c pauli(char name) {
    Matrix2c m;
    switch (name) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -kI, kI, 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

CMatrix kron(const Matrix2c &a, const Matrix2c &b) {
    CMatrix out(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
        }
    }
    return out;
}

// Fixes the phase of every column so its first non-negligible entry is real positive.
void normalize_phases(CMatrix &basis) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            const double mag = std::abs(basis(r, c));
            if (mag > 1e-8) {
                basis.col(c) *= std::conj(basis(r, c)) / mag;
                break;
            }
        }
    }
}

// Joint eigenbasis of two commuting two-qubit Pauli strings. A + 2B has the
// non-degenerate spectrum {+-1 +-2}, so its eigenvectors are unique up to phase.
CMatrix pauli_class_basis(const char *first, const char *second) {
    const CMatrix a = kron(pauli(first[0]), pauli(first[1]));
    const CMatrix b = kron(pauli(second[0]), pauli(second[1]));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a + 2.0 * b);
    CMatrix basis = eig.eigenvectors();
    normalize_phases(basis);
    return basis;
}

Projector frame_projector(const CMatrix &basis, std::initializer_list<Eigen::Index> columns) {
    std::vector<CVector> frame;
    for (const Eigen::Index c : columns) {
        frame.push_back(basis.col(c));
    }
    return Projector::from_vectors(frame);
}

}  // namespace

MubFamily mub_family(int n) {
    MubFamily family{n, {}};
    const double pi = std::numbers::pi;
    switch (n) {
        case 2: {
            const double h = 1.0 / std::numbers::sqrt2;
            CMatrix z = CMatrix::Identity(2, 2);
            CMatrix x(2, 2), y(2, 2);
            x << h, h, h, -h;
            y << h, h, h * kI, -h * kI;
            family.bases = {z, x, y};
            break;
        }
        case 3: {
            // Computational basis plus (1/sqrt3) sum_x w^(k x^2 + j x) |x> for k = 0, 1, 2.
            family.bases.push_back(CMatrix::Identity(3, 3));
            for (int k = 0; k < 3; ++k) {
                CMatrix b(3, 3);
                for (int j = 0; j < 3; ++j) {
                    for (int x = 0; x < 3; ++x) {
                        b(x, j) = std::polar(1.0 / std::sqrt(3.0), 2 * pi * ((k * x * x + j * x) % 3) / 3.0);
                    }
                }
                family.bases.push_back(b);
            }
            break;
        }
        case 4: {
            // Eigenbases of the five maximal commuting classes of two-qubit Pauli strings.
            family.bases = {
                pauli_class_basis("ZI", "IZ"), pauli_class_basis("XI", "IX"), pauli_class_basis("YI", "IY"),
                pauli_class_basis("XZ", "ZY"), pauli_class_basis("XY", "YZ"),
            };
            break;
        }
        default:
            throw UnsupportedConfiguration("mutually unbiased bases are implemented for n = 2, 3, 4 only, got " +
                                           std::to_string(n));
    }
    return family;
}

MubCheck check_mub_family(const MubFamily &family) {
    MubCheck check;
    const auto count = family.bases.size();
    for (std::size_t a = 0; a < count; ++a) {
        const CMatrix &ba = family.bases[a];
        const CMatrix gram = ba.adjoint() * ba;
        check.orthonormality_error = std::max(
            check.orthonormality_error, (gram - CMatrix::Identity(family.n, family.n)).cwiseAbs().maxCoeff());
        for (std::size_t b = a + 1; b < count; ++b) {
            const CMatrix overlaps = ba.adjoint() * family.bases[b];
            const double err = (overlaps.cwiseAbs2().array() - 1.0 / family.n).abs().maxCoeff();
            check.unbiasedness_error = std::max(check.unbiasedness_error, err);
        }
    }
    return check;
}

Quorum rank1_optimal_quorum_n2() {
    const MubFamily family = mub_family(2);
    std::vector<Projector> projectors;
    for (const CMatrix &basis : family.bases) {
        projectors.push_back(frame_projector(basis, {0}));
    }
    return make_quorum(std::move(projectors));
}

ParamChart rank1_optimal_chart_n2() {
    const double quarter = std::numbers::pi / 4;
    return ParamChart(ChartDims{2, 1}, {quarter, 0.0, quarter, std::numbers::pi / 2});
}

Quorum halfdim_optimal_quorum_n4() {
    const MubFamily family = mub_family(4);
    std::vector<Projector> projectors;
    for (const CMatrix &basis : family.bases) {
        projectors.push_back(frame_projector(basis, {0, 1}));
        projectors.push_back(frame_projector(basis, {0, 2}));
        projectors.push_back(frame_projector(basis, {0, 3}));
    }
    Quorum q = make_quorum(std::move(projectors));
    const Eigen::MatrixXd gram = gram_matrix(q);
    const double off_diagonal = (gram - Eigen::MatrixXd(gram.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off_diagonal > kComposedTol) {
        throw std::logic_error("n = 4 half-dimensional construction is not orthogonal: max |G_ij| = " +
                               std::to_string(off_diagonal));
    }
    return q;
}

ReferenceVerification extend_and_verify_n4() {
    const Quorum q = halfdim_optimal_quorum_n4();
    ReferenceVerification v;
    v.metrics = compute_metrics(q);
    v.orthoplex = orthoplex_report(q.projectors, kComposedTol);
    v.maximal = verify_maximal_set(extend_to_maximal(q), kComposedTol);
    v.passed = std::abs(v.metrics.quality - 1.0) <= kComposedTol && v.metrics.non_orthogonality <= kComposedTol &&
               v.orthoplex.all_unbiased && v.maximal.size == 30 && v.maximal.complements_exact &&
               v.maximal.complement_deviation <= kExactTol && v.maximal.cross.all_unbiased;
    return v;
}

}  // namespace qstq

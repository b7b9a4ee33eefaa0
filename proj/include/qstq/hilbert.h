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

#ifndef QSTQ_HILBERT_H
#define QSTQ_HILBERT_H

// Small-dimension complex linear algebra and the angle chart that maps real
// parameters to orthonormal frames and rank-l projectors.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qstq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for identities that pass through several floating point operations.
inline constexpr double kComposedTol = 1e-10;

/// Hilbert space dimension n and projector rank l, with 1 <= l < n.
///
/// Each of the l frame vectors of a projector is a unit vector of the
/// (n - l + 1)-dimensional chart space, parametrized by 2(n - l) angles:
/// first the n - l polar angles, then the n - l relative phases. For n = 6,
/// l = 3 this is the (theta1, theta2, theta3, phi2, phi3, phi4) sextet.
struct ChartDims {
    int n = 6;
    int l = 3;

    constexpr int vector_dim() const { return n - l + 1; }
    constexpr int params_per_vector() const { return 2 * (n - l); }
    constexpr int params_per_projector() const { return l * params_per_vector(); }
    /// The first projector is fixed, so only n^2 - 2 projectors are charted.
    constexpr int charted_projectors() const { return n * n - 2; }
    constexpr int quorum_size() const { return n * n - 1; }
    constexpr std::size_t param_count() const {
        return static_cast<std::size_t>(charted_projectors()) * static_cast<std::size_t>(params_per_projector());
    }

    /// Throws ParameterError unless 1 <= l < n.
    void validate() const;

    bool operator==(const ChartDims &) const = default;
};

static_assert(ChartDims{6, 3}.param_count() == 34 * 3 * 6 && ChartDims{6, 3}.param_count() == 612);

struct AngleSextet {
    double theta1 = 0, theta2 = 0, theta3 = 0;
    double phi2 = 0, phi3 = 0, phi4 = 0;
};

/// Hyperspherical chart: angles = (theta_1..theta_{k-1}, phi_2..phi_k) -> unit vector of C^k.
///
///   x_1 = cos t1
///   x_j = sin t1 ... sin t_{j-1} cos t_j e^{i phi_j}
///   x_k = sin t1 ... sin t_{k-1} e^{i phi_k}
///
/// Angles are not reduced; any finite real is accepted.
CVector vector_from_angles(std::span<const double> angles);
Eigen::Vector4cd vector_from_angles(const AngleSextet &a);

/// Orthonormal basis (as columns) of the orthogonal complement of the unit vector v.
///
/// Columns 2..d of the Householder reflection H = 1 - 2 w w^dag / |w|^2 with
/// w = v + s e_1, where s = +-v_1/|v_1| is the phase of v_1 folded into the
/// half plane Re(s) >= 0 (s = 1 when v_1 = 0). The sign flips only when v is
/// within 1e-3 of -s e_1. For real v_1 this keeps s = 1 and the map smooth in v.
CMatrix complement_basis(const CVector &v);

/// Sequential embedding of l chart vectors into C^n. The first vector occupies
/// coordinates 1..k; each following vector lives in the first k columns of the
/// complement basis of everything embedded before it.
std::vector<CVector> embed_orthonormal_frame(std::span<const double> angles, ChartDims dims);

/// n = 6, l = 3 specialization of embed_orthonormal_frame (18 angles).
std::array<CVector, 3> embed_orthonormal_triple(std::span<const double> angles18);

struct ProjectorDefects {
    double hermiticity = 0;  // |M - M^dag|_F
    double idempotency = 0;  // |M^2 - M|_F
    double trace = 0;        // |Tr M - l|
};

ProjectorDefects projector_defects(const CMatrix &m, int rank);

/// Hermitian idempotent n x n matrix of rank l.
class Projector {
   public:
    /// P = sum_k |v_k><v_k|. Throws PreconditionError if the vectors are not orthonormal within 1e-10.
    static Projector from_vectors(std::span<const CVector> frame);
    /// Validates Hermiticity, idempotency and trace against kComposedTol.
    static Projector from_matrix(CMatrix m, int rank);
    /// Projector onto the coordinate span e_first .. e_{first+rank-1}.
    static Projector coordinate(int n, int first, int rank);

    const CMatrix &matrix() const { return matrix_; }
    int rank() const { return rank_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    /// 1 - P, computed entrywise.
    Projector complement() const;

   private:
    Projector(CMatrix m, int rank) : matrix_(std::move(m)), rank_(rank) {}

    CMatrix matrix_;
    int rank_ = 0;
};

/// Q = P - (l/n) 1. Its Frobenius norm is sqrt(l - l^2/n).
struct TracelessPart {
    CMatrix matrix;
};

TracelessPart traceless_part(const Projector &p);

/// Flat list of chart angles, projector-major (blocks of params_per_projector()).
struct ParamChart {
    ChartDims dims;
    std::vector<double> angles;

    ParamChart() = default;
    /// Throws ShapeError if angles.size() != dims.param_count().
    ParamChart(ChartDims dims, std::vector<double> angles);

    /// All-zero chart of the right length.
    static ParamChart zeros(ChartDims dims);

    std::span<const double> projector_block(int index) const;
};

/// Ordered set of n^2 - 1 rank-l projectors.
struct Quorum {
    int n = 0;
    int l = 0;
    std::vector<Projector> projectors;

    std::size_t size() const { return projectors.size(); }
};

/// Element 1 is diag(1..1, 0..0); elements 2..n^2-1 come from consecutive angle blocks.
Quorum quorum_from_chart(const ParamChart &chart);

/// Builds a quorum from explicit projectors, checking the count and common (n, l).
Quorum make_quorum(std::vector<Projector> projectors);

}  // namespace qstq

#endif

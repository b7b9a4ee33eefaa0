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

#include "qstq/hilbert.h"

#include <cmath>
#include <sstream>
#include <string>

#include "qstq/errors.h"

namespace qstq {

namespace {

void require_finite(std::span<const double> values) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw ParameterError("non-finite angle at index " + std::to_string(k));
        }
    }
}

}  // namespace

void ChartDims::validate() const {
    if (l < 1 || l >= n) {
        std::ostringstream msg;
        msg << "invalid dimensions n=" << n << ", l=" << l << " (need 1 <= l < n)";
        throw ParameterError(msg.str());
    }
}

CVector vector_from_angles(std::span<const double> angles) {
    if (angles.empty() || angles.size() % 2 != 0) {
        throw ShapeError("chart vector needs an even, non-zero number of angles, got " +
                         std::to_string(angles.size()));
    }
    require_finite(angles);
    const std::size_t polar = angles.size() / 2;
    const auto thetas = angles.first(polar);
    const auto phis = angles.last(polar);

    CVector x(static_cast<Eigen::Index>(polar + 1));
    double radius = 1.0;  // product of the sines so far
    for (std::size_t j = 0; j <= polar; ++j) {
        const double amplitude = j < polar ? radius * std::cos(thetas[j]) : radius;
        const Complex phase = j == 0 ? Complex(1.0) : std::polar(1.0, phis[j - 1]);
        x[static_cast<Eigen::Index>(j)] = amplitude * phase;
        if (j < polar) {
            radius *= std::sin(thetas[j]);
        }
    }
    return x;
}

Eigen::Vector4cd vector_from_angles(const AngleSextet &a) {
    const std::array<double, 6> flat{a.theta1, a.theta2, a.theta3, a.phi2, a.phi3, a.phi4};
    return vector_from_angles(std::span<const double>(flat));
}

CMatrix complement_basis(const CVector &v) {
    const Eigen::Index d = v.size();
    if (d < 2) {
        throw ShapeError("complement basis needs dimension >= 2");
    }
    Complex s(1.0);
    const double lead = std::abs(v[0]);
    if (lead > 0) {
        s = v[0] / lead;
        if (s.real() < 0) {
            s = -s;
        }
    }
    CVector w = v;
    w[0] += s;
    double wnorm2 = w.squaredNorm();
    if (wnorm2 < 1e-6) {
        w[0] = v[0] - s;
        wnorm2 = w.squaredNorm();
    }
    // Columns 2..d of 1 - 2 w w^dag / |w|^2.
    CMatrix basis = -(2.0 / wnorm2) * w * w.tail(d - 1).adjoint();
    basis.bottomRows(d - 1).diagonal().array() += 1.0;
    return basis;
}

std::vector<CVector> embed_orthonormal_frame(std::span<const double> angles, ChartDims dims) {
    dims.validate();
    if (angles.size() != static_cast<std::size_t>(dims.params_per_projector())) {
        throw ShapeError("frame needs " + std::to_string(dims.params_per_projector()) + " angles, got " +
                         std::to_string(angles.size()));
    }
    const int k = dims.vector_dim();
    const auto per_vector = static_cast<std::size_t>(dims.params_per_vector());

    std::vector<CVector> frame;
    frame.reserve(static_cast<std::size_t>(dims.l));
    CMatrix basis = CMatrix::Identity(dims.n, dims.n);
    for (int j = 0; j < dims.l; ++j) {
        const CVector local = vector_from_angles(angles.subspan(static_cast<std::size_t>(j) * per_vector, per_vector));
        CVector padded = CVector::Zero(basis.cols());
        padded.head(k) = local;
        frame.push_back(basis * padded);
        if (j + 1 < dims.l) {
            basis = basis * complement_basis(padded);
        }
    }
    return frame;
}

std::array<CVector, 3> embed_orthonormal_triple(std::span<const double> angles18) {
    if (angles18.size() != 18) {
        throw ShapeError("orthonormal triple needs 18 angles, got " + std::to_string(angles18.size()));
    }
    auto frame = embed_orthonormal_frame(angles18, ChartDims{6, 3});
    return {std::move(frame[0]), std::move(frame[1]), std::move(frame[2])};
}

ProjectorDefects projector_defects(const CMatrix &m, int rank) {
    ProjectorDefects d;
    d.hermiticity = (m - m.adjoint()).norm();
    d.idempotency = (m * m - m).norm();
    d.trace = std::abs(m.trace() - Complex(rank));
    return d;
}

Projector Projector::from_vectors(std::span<const CVector> frame) {
    if (frame.empty()) {
        throw ShapeError("projector needs at least one vector");
    }
    const Eigen::Index n = frame[0].size();
    const auto rank = static_cast<Eigen::Index>(frame.size());
    if (rank > n) {
        throw ShapeError("more frame vectors than the space dimension");
    }
    CMatrix v(n, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        if (frame[static_cast<std::size_t>(j)].size() != n) {
            throw ShapeError("frame vectors have mismatched dimensions");
        }
        v.col(j) = frame[static_cast<std::size_t>(j)];
    }
    const CMatrix overlaps = v.adjoint() * v;
    const double violation = (overlaps - CMatrix::Identity(rank, rank)).cwiseAbs().maxCoeff();
    if (violation > kComposedTol) {
        std::ostringstream msg;
        msg << "frame is not orthonormal: max overlap violation " << violation;
        throw PreconditionError(msg.str());
    }
    return Projector(v * v.adjoint(), static_cast<int>(rank));
}

Projector Projector::from_matrix(CMatrix m, int rank) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ShapeError("projector matrix must be square and non-empty");
    }
    if (rank < 0 || rank > m.rows()) {
        throw ParameterError("projector rank out of range");
    }
    const ProjectorDefects d = projector_defects(m, rank);
    if (d.hermiticity > kComposedTol || d.idempotency > kComposedTol || d.trace > kComposedTol) {
        std::ostringstream msg;
        msg << "not a rank-" << rank << " projector: hermiticity " << d.hermiticity << ", idempotency "
            << d.idempotency << ", trace " << d.trace;
        throw PreconditionError(msg.str());
    }
    return Projector(std::move(m), rank);
}

Projector Projector::coordinate(int n, int first, int rank) {
    if (n < 1 || first < 0 || rank < 0 || first + rank > n) {
        throw ParameterError("coordinate projector out of range");
    }
    CMatrix m = CMatrix::Zero(n, n);
    m.diagonal().segment(first, rank).setOnes();
    return Projector(std::move(m), rank);
}

Projector Projector::complement() const {
    CMatrix m = -matrix_;
    m.diagonal().array() += 1.0;
    return Projector(std::move(m), dim() - rank_);
}

TracelessPart traceless_part(const Projector &p) {
    TracelessPart q{p.matrix()};
    q.matrix.diagonal().array() -= static_cast<double>(p.rank()) / p.dim();
    return q;
}

ParamChart::ParamChart(ChartDims d, std::vector<double> a) : dims(d), angles(std::move(a)) {
    dims.validate();
    if (angles.size() != dims.param_count()) {
        throw ShapeError("chart for n=" + std::to_string(dims.n) + ", l=" + std::to_string(dims.l) + " needs " +
                         std::to_string(dims.param_count()) + " angles, got " + std::to_string(angles.size()));
    }
}

ParamChart ParamChart::zeros(ChartDims d) {
    d.validate();
    return ParamChart(d, std::vector<double>(d.param_count(), 0.0));
}

std::span<const double> ParamChart::projector_block(int index) const {
    const auto width = static_cast<std::size_t>(dims.params_per_projector());
    return std::span<const double>(angles).subspan(static_cast<std::size_t>(index) * width, width);
}

Quorum quorum_from_chart(const ParamChart &chart) {
    const ChartDims dims = chart.dims;
    dims.validate();
    if (chart.angles.size() != dims.param_count()) {
        throw ShapeError("chart length " + std::to_string(chart.angles.size()) + " does not match n=" +
                         std::to_string(dims.n) + ", l=" + std::to_string(dims.l));
    }
    Quorum q{dims.n, dims.l, {}};
    q.projectors.reserve(static_cast<std::size_t>(dims.quorum_size()));
    q.projectors.push_back(Projector::coordinate(dims.n, 0, dims.l));
    for (int j = 0; j < dims.charted_projectors(); ++j) {
        const auto frame = embed_orthonormal_frame(chart.projector_block(j), dims);
        q.projectors.push_back(Projector::from_vectors(frame));
    }
    return q;
}

Quorum make_quorum(std::vector<Projector> projectors) {
    if (projectors.empty()) {
        throw ShapeError("empty quorum");
    }
    const int n = projectors.front().dim();
    const int l = projectors.front().rank();
    ChartDims{n, l}.validate();
    if (projectors.size() != static_cast<std::size_t>(n * n - 1)) {
        throw ShapeError("quorum in dimension " + std::to_string(n) + " needs " + std::to_string(n * n - 1) +
                         " projectors, got " + std::to_string(projectors.size()));
    }
    for (const auto &p : projectors) {
        if (p.dim() != n || p.rank() != l) {
            throw ShapeError("quorum projectors must share dimension and rank");
        }
    }
    return Quorum{n, l, std::move(projectors)};
}

}  // namespace qstq

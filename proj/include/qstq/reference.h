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

#ifndef QSTQ_REFERENCE_H
#define QSTQ_REFERENCE_H

// Analytic constructions that reach the quality bound: mutually unbiased bases
// for n = 2, 3, 4 and the quorums built from them.

#include <vector>

#include "qstq/hilbert.h"
#include "qstq/metrics.h"

namespace qstq {

/// n + 1 orthonormal bases of C^n (columns of each matrix), pairwise unbiased.
struct MubFamily {
    int n = 0;
    std::vector<CMatrix> bases;
};

struct MubCheck {
    /// max |<e_i|e_j> - delta_ij| within any basis.
    double orthonormality_error = 0;
    /// max ||<e_i|f_j>|^2 - 1/n| across distinct bases.
    double unbiasedness_error = 0;
    bool passed(double tol = kExactTol) const { return orthonormality_error <= tol && unbiasedness_error <= tol; }
};

/// n in {2, 3, 4}; throws UnsupportedConfiguration otherwise.
MubFamily mub_family(int n);
MubCheck check_mub_family(const MubFamily &family);

/// Projectors onto |0>, |+>, |+i>: n = 2, l = 1, three elements, L = 0.
Quorum rank1_optimal_quorum_n2();

/// The chart angles (theta, phi) = (pi/4, 0), (pi/4, pi/2) that reproduce rank1_optimal_quorum_n2().
ParamChart rank1_optimal_chart_n2();

/// For each of the 5 MUBs of C^4 with vectors e1..e4, the rank-2 projectors onto
/// span{e1,e2}, span{e1,e3}, span{e1,e4}. 15 projectors with pairwise orthogonal traceless parts.
/// Throws std::logic_error if the construction fails its own Gram check.
Quorum halfdim_optimal_quorum_n4();

struct ReferenceVerification {
    MetricsReport metrics;
    OrthoplexReport orthoplex;
    MaximalSetReport maximal;
    bool passed = false;
};

/// Metrics of halfdim_optimal_quorum_n4() and of its 30-element complement extension.
ReferenceVerification extend_and_verify_n4();

}  // namespace qstq

#endif

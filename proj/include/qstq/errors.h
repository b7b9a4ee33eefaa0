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

#ifndef QSTQ_ERRORS_H
#define QSTQ_ERRORS_H

#include <stdexcept>
#include <string>

namespace qstq {

/// Non-finite angles, invalid (n, l) pairs and similar bad inputs.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A container has the wrong length for the requested dimensions.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation's input violates a numerical precondition (e.g. non-orthogonal frame).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The operation is defined only for a subset of (n, l) configurations.
struct UnsupportedConfiguration : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qstq

#endif

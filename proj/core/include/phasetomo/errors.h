// Copyright 2026 The phasetomo Authors
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

#ifndef PHASETOMO_ERRORS_H
#define PHASETOMO_ERRORS_H

#include <stdexcept>
#include <string>

namespace phasetomo {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// A state failed validation where a valid state was required.
struct ValidationError : Error {
    using Error::Error;
};

/// Input data does not cover what a reconstruction needs (missing (s, l) profile, ...).
struct CoverageError : Error {
    using Error::Error;
};

/// Not enough data, or a fit that does not describe its data.
struct EstimationError : Error {
    using Error::Error;
};

/// A polynomial fit whose residual exceeds its noise budget.
struct FitError : EstimationError {
    using EstimationError::EstimationError;
};

/// An upper-triangular system has a zero (or numerically zero) diagonal entry.
struct SingularSystemError : Error {
    SingularSystemError(const std::string &what, long long row) : Error(what), row(row) {
    }
    long long row;
};

/// A file could not be read, parsed or written.
struct IoError : Error {
    using Error::Error;
};

/// An internal identity that must hold numerically did not.
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace phasetomo

#endif

// Copyright 2026 The SetPush Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SETPUSH_ERRORS_HPP_
#define SETPUSH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setpush {

/// Input failed a documented precondition (bad graph, bad parameter).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list line. Carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string &what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Estimator configuration is unusable (e.g. non-positive threshold).
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Dense reference computation requested on a graph above the size gate.
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Node id outside [0, n).
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant was broken. Indicates a bug, never bad input.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace setpush

#endif // SETPUSH_ERRORS_HPP_

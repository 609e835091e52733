// Copyright 2026 The cveao Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cveao {

/// Rejected input: dimension mismatches, malformed shapes, invalid parameters.
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Text-format parse failure. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

/// A row list that was required to be linearly independent was not.
class DependentRowsError : public InputError {
   public:
    DependentRowsError(const std::string &what, std::size_t row)
        : InputError(what + " (row " + std::to_string(row) + ")"), row_(row) {}
    /// 0-based index of the first row lying in the span of its predecessors.
    std::size_t row() const noexcept { return row_; }

   private:
    std::size_t row_;
};

class NotSymplecticError : public InputError {
   public:
    NotSymplecticError(const std::string &what, double residual)
        : InputError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    /// max-abs entry of M J M^T - J.
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

/// Floating-point routine could not meet its postcondition.
class NumericalError : public std::runtime_error {
   public:
    NumericalError(const std::string &what, double condition)
        : std::runtime_error(what + " (condition estimate " + std::to_string(condition) + ")"),
          condition_(condition) {}
    double condition() const noexcept { return condition_; }

   private:
    double condition_;
};

/// Sign search for a lifted discrete code found no assignment.
class SearchExhaustedError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace cveao

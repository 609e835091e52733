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

#include <string>
#include <string_view>
#include <vector>

#include "cveao/code.hpp"
#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

// Matrix text: one row per line, whitespace-separated entries ("p/q" or
// decimal), blank lines separate blocks, '#' starts a comment.

std::vector<Matrix<Rational>> parse_matrix_blocks(std::string_view text);
/// Exactly one block; throws ParseError otherwise.
Matrix<Rational> parse_matrix(std::string_view text);
std::string format_matrix(const Matrix<Rational> &m);
std::string format_matrix(const Matrix<double> &m);

/// A single phase vector: 2m entries separated by whitespace or commas.
PhaseVector<Rational> parse_vector(std::string_view text);

// Code files:
//
//   params n=<int> k=<int> l=<int> r=<int> c=<int>
//   roles info:<i,...> ancilla:<...> gauge:<...> ebit:<...>   (1-based)
//   F
//   <kind> <2n Alice entries> ; <2c Bob entries>
//   G
//   <2n entries>
//   UPSILON            (optional)
//   <2n rows of 2n entries>

Code<Rational> parse_code(std::string_view text);
/// `timestamp` adds a "# written ..." comment line.
std::string format_code(const Code<Rational> &code, bool timestamp = false);

/// Whole-file helpers; throw InputError when the file cannot be opened.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view text);

}  // namespace cveao

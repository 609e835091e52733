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
#include <cstdint>
#include <vector>

#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

struct BarnesOptions {
    /// Sign counts up to this size are enumerated exhaustively.
    std::size_t exhaustive_limit = 20;
    std::uint64_t seed = 1;
    std::size_t restarts = 500;
    std::size_t steps_per_restart = 2000;
};

/// Turns a binary check matrix into a {-1, 0, 1} matrix with prescribed
/// symplectic products by choosing a sign for every nonzero entry.
///
/// `target` is an antisymmetric rows x rows matrix with entries in {-1, 0, 1};
/// only its strict upper triangle is consulted after the antisymmetry check.
/// Rows that already meet the target are returned unchanged. Sign choices are
/// enumerated in a fixed order (first with each row's leading entry kept at
/// +1, then fully free), so the result is deterministic. Throws InputError on
/// malformed input and SearchExhaustedError when no assignment is found.
std::vector<PhaseVector<Rational>> barnes_lift(const std::vector<PhaseVector<Rational>> &binary_rows,
                                               const Matrix<Rational> &target, const BarnesOptions &options = {});

/// Integer product table <row_i, row_j> of the given rows.
Matrix<Rational> product_table(const std::vector<PhaseVector<Rational>> &rows);

}  // namespace cveao

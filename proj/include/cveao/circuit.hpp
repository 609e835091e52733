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
#include <string>
#include <string_view>
#include <vector>

#include "cveao/matrix.hpp"

namespace cveao {

/// upsilon = post * diag(1/d_1..1/d_n | d_1..d_n) * pre, with pre and post
/// orthogonal symplectic (passive) and gains d_i sorted in descending order.
/// `pre` acts first on the input modes.
struct CircuitDecomposition {
    Matrix<double> pre;
    std::vector<double> gains;
    Matrix<double> post;

    std::size_t modes() const noexcept { return gains.size(); }
    Matrix<double> squeeze_matrix() const;
    Matrix<double> reconstruct() const;
};

/// Orthogonal and symplectic within tol.
bool is_passive(const Matrix<double> &m, double tol);

/// Bloch-Messiah decomposition through the polar decomposition of upsilon.
/// Each mode's quadrature orientation is the quarter turn that keeps its pre
/// and post blocks closest to the identity, so pure squeezers and passive
/// inputs come back with identity stages. Throws NotSymplecticError for
/// non-symplectic input and NumericalError when the reconstruction or
/// passivity check misses tol.
CircuitDecomposition bloch_messiah(const Matrix<double> &upsilon, double tol = 1e-9);

/// Text form: PASSIVE (pre) / SQUEEZE ("mode i: <dB> dB (gain d)", dB = 20 log10 d) / PASSIVE (post).
/// The reader accepts lines without the gain annotation and then derives d from the dB value.
std::string emit_circuit(const CircuitDecomposition &d);

/// Reads emit_circuit output. Throws ParseError on malformed text.
CircuitDecomposition parse_circuit(std::string_view text);

}  // namespace cveao

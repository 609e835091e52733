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
#include <optional>
#include <utility>
#include <vector>

#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

// Pairings ----------------------------------------------------------------

/// <u, v> = u_p . v_x - u_x . v_p. Vanishes exactly when the quadrature
/// observables (or displacements) described by u and v commute.
template <Scalar T>
T symplectic_product(const PhaseVector<T> &u, const PhaseVector<T> &v);

/// Shift of the observable f_p . x^ + f_x . p^ under the displacement e:
/// s(f, e) = f_p . e_x + f_x . e_p.
template <Scalar T>
T syndrome_pairing(const PhaseVector<T> &f, const PhaseVector<T> &e);

/// Maps an observable row f to the displacement generated by it,
/// (f_p | -f_x). Satisfies s(f, e) = <displacement_image(f), e>.
template <Scalar T>
PhaseVector<T> displacement_image(const PhaseVector<T> &f);

// Symplectic matrices -----------------------------------------------------

/// max |(M J M^T - J)_ij|. Throws InputError for non-square or odd-sized M.
template <Scalar T>
double symplectic_residual(const Matrix<T> &m);

/// Exact in rational mode (tol ignored); residual <= tol in float mode.
template <Scalar T>
bool is_symplectic(const Matrix<T> &m, double tol);

/// M^{-1} = J^T M^T J. Only valid for symplectic M; not checked.
template <Scalar T>
Matrix<T> symplectic_inverse(const Matrix<T> &m);

/// The matrix W with e' = e W carrying displacement errors along with rows
/// that transform as f' = f Upsilon^T, so that s(f', e') = s(f, e).
/// W = Q Upsilon^T Q with Q = diag(I, -I).
template <Scalar T>
Matrix<T> error_image_map(const Matrix<T> &upsilon);

/// Assembles the matrix whose rows are (u_1..u_n, v_1..v_n) from n hyperbolic
/// pairs; it is symplectic when the pairs form a symplectic basis.
template <Scalar T>
Matrix<T> matrix_from_pairs(const std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> &pairs);

// Linear algebra ----------------------------------------------------------

/// Incrementally maintained span of a set of vectors.
///
/// Rational mode keeps an echelon basis and tests membership exactly. Float
/// mode keeps a Euclidean-orthonormal basis; membership means the
/// least-squares residual has 2-norm <= tol.
template <Scalar T>
class SpanBuilder {
   public:
    SpanBuilder(std::size_t dim, double tol) : dim_(dim), tol_(tol) {}

    /// Adds v; returns false (and leaves the span unchanged) if v is already in it.
    bool add(const PhaseVector<T> &v);
    bool contains(const PhaseVector<T> &v) const;
    PhaseVector<T> residual(const PhaseVector<T> &v) const;
    std::size_t rank() const noexcept { return basis_.size(); }

   private:
    std::size_t dim_;
    double tol_;
    std::vector<PhaseVector<T>> basis_;
    std::vector<std::size_t> pivots_;
};

template <Scalar T>
std::size_t rank(const std::vector<PhaseVector<T>> &rows, double tol);

/// Index of the first row that lies in the span of the rows before it.
template <Scalar T>
std::optional<std::size_t> first_dependent_row(const std::vector<PhaseVector<T>> &rows, double tol);

/// Basis of {x : A x = 0}, one vector of length A.cols() per free column.
template <Scalar T>
std::vector<std::vector<T>> nullspace(const Matrix<T> &a, double tol);

/// Gauss-Jordan inverse. Throws InputError when A is singular.
template <Scalar T>
Matrix<T> inverse(const Matrix<T> &a, double tol);

// Subspaces ---------------------------------------------------------------

/// Row span of linearly independent phase vectors over `modes` modes.
template <Scalar T>
class Subspace {
   public:
    /// Throws DependentRowsError if the basis is not independent.
    Subspace(std::size_t modes, std::vector<PhaseVector<T>> basis, double tol = kDefaultTol);

    std::size_t modes() const noexcept { return modes_; }
    std::size_t ambient_dim() const noexcept { return 2 * modes_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<PhaseVector<T>> &basis() const noexcept { return basis_; }

   private:
    std::size_t modes_;
    std::vector<PhaseVector<T>> basis_;
};

/// Builds a subspace from a spanning list, dropping dependent rows.
template <Scalar T>
Subspace<T> span_of(std::size_t modes, const std::vector<PhaseVector<T>> &rows, double tol = kDefaultTol);

template <Scalar T>
bool rowspace_contains(const Subspace<T> &s, const PhaseVector<T> &v, double tol);

/// True iff <v, b> vanishes for every basis row b of s.
template <Scalar T>
bool symplectic_dual_contains(const Subspace<T> &s, const PhaseVector<T> &v, double tol);

// Symplectic Gram-Schmidt -------------------------------------------------

template <Scalar T>
struct GramSchmidtResult {
    /// Each pair (u, v) has <u, v> = 1.
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> pairs;
    std::vector<PhaseVector<T>> isotropic;
};

/// Splits span(rows) into hyperbolic pairs and an isotropic remainder, all
/// mutually orthogonal except within a pair.
///
/// The partner of the leading remaining row is the first row with a nonzero
/// product (rational) or the row with the largest |product| (float); ties go to
/// the lowest index. Throws DependentRowsError if the rows are dependent.
template <Scalar T>
GramSchmidtResult<T> symplectic_gram_schmidt(const std::vector<PhaseVector<T>> &rows, double tol);

}  // namespace cveao

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

#include "cveao/symplectic.hpp"

#include <cmath>
#include <string>

#include "cveao/errors.hpp"

namespace cveao {

namespace {

template <Scalar T>
T dot(const PhaseVector<T> &a, const PhaseVector<T> &b) {
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double norm2(const PhaseVector<double> &v) { return std::sqrt(dot(v, v)); }

/// Index of the pivot row for column `col` among rows [from, rows): first
/// nonzero (exact) or largest magnitude above tol (float).
template <Scalar T>
std::optional<std::size_t> pick_pivot(const Matrix<T> &m, std::size_t from, std::size_t col, double tol) {
    std::optional<std::size_t> best;
    double best_mag = 0.0;
    for (std::size_t r = from; r < m.rows(); ++r) {
        if (is_zero(m(r, col), tol)) {
            continue;
        }
        if constexpr (is_exact_v<T>) {
            return r;
        } else {
            double mag = std::abs(m(r, col));
            if (!best || mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
    }
    return best;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <Scalar T>
std::vector<std::size_t> rref(Matrix<T> &m, double tol) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        auto piv = pick_pivot(m, row, col, tol);
        if (!piv) {
            if constexpr (!is_exact_v<T>) {
                for (std::size_t r = row; r < m.rows(); ++r) {
                    m(r, col) = 0.0;
                }
            }
            continue;
        }
        if (*piv != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::swap(m(row, c), m(*piv, c));
            }
        }
        T inv = T(1) / m(row, col);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m(row, c) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == T(0)) {
                continue;
            }
            T factor = m(r, col);
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m(r, c) -= factor * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

template <Scalar T>
T symplectic_product(const PhaseVector<T> &u, const PhaseVector<T> &v) {
    u.check_same(v);
    T acc(0);
    for (std::size_t i = 0; i < u.modes(); ++i) {
        acc += u.p(i) * v.x(i) - u.x(i) * v.p(i);
    }
    return acc;
}

template <Scalar T>
T syndrome_pairing(const PhaseVector<T> &f, const PhaseVector<T> &e) {
    f.check_same(e);
    T acc(0);
    for (std::size_t i = 0; i < f.modes(); ++i) {
        acc += f.p(i) * e.x(i) + f.x(i) * e.p(i);
    }
    return acc;
}

template <Scalar T>
PhaseVector<T> displacement_image(const PhaseVector<T> &f) {
    PhaseVector<T> out = f;
    for (std::size_t i = 0; i < f.modes(); ++i) {
        out.x(i) = -f.x(i);
    }
    return out;
}

template <Scalar T>
double symplectic_residual(const Matrix<T> &m) {
    if (!m.is_square() || m.rows() % 2 != 0) {
        throw InputError("symplectic check needs a square even-dimensional matrix, got " + m.shape());
    }
    std::size_t modes = m.rows() / 2;
    Matrix<T> j = Matrix<T>::symplectic_form(modes);
    return (m * j * m.transpose() - j).max_abs();
}

template <Scalar T>
bool is_symplectic(const Matrix<T> &m, double tol) {
    if constexpr (is_exact_v<T>) {
        (void)tol;
        if (!m.is_square() || m.rows() % 2 != 0) {
            throw InputError("symplectic check needs a square even-dimensional matrix, got " + m.shape());
        }
        Matrix<T> j = Matrix<T>::symplectic_form(m.rows() / 2);
        return m * j * m.transpose() == j;
    } else {
        return symplectic_residual(m) <= tol;
    }
}

template <Scalar T>
Matrix<T> symplectic_inverse(const Matrix<T> &m) {
    if (!m.is_square() || m.rows() % 2 != 0) {
        throw InputError("symplectic inverse needs a square even-dimensional matrix, got " + m.shape());
    }
    Matrix<T> j = Matrix<T>::symplectic_form(m.rows() / 2);
    return j.transpose() * m.transpose() * j;
}

template <Scalar T>
Matrix<T> error_image_map(const Matrix<T> &upsilon) {
    if (!upsilon.is_square() || upsilon.rows() % 2 != 0) {
        throw InputError("error image needs a square even-dimensional matrix, got " + upsilon.shape());
    }
    std::size_t modes = upsilon.rows() / 2;
    Matrix<T> w = upsilon.transpose();
    // Conjugating by Q flips the sign of the mixed (p,x) and (x,p) blocks.
    for (std::size_t r = 0; r < 2 * modes; ++r) {
        for (std::size_t c = 0; c < 2 * modes; ++c) {
            if ((r < modes) != (c < modes)) {
                w(r, c) = -w(r, c);
            }
        }
    }
    return w;
}

template <Scalar T>
Matrix<T> matrix_from_pairs(const std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> &pairs) {
    std::size_t n = pairs.size();
    Matrix<T> m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &[u, v] = pairs[i];
        if (u.size() != 2 * n || v.size() != 2 * n) {
            throw InputError("pair " + std::to_string(i) + " does not live in dimension " + std::to_string(2 * n));
        }
        for (std::size_t c = 0; c < 2 * n; ++c) {
            m(i, c) = u[c];
            m(n + i, c) = v[c];
        }
    }
    return m;
}

// SpanBuilder -------------------------------------------------------------

template <Scalar T>
PhaseVector<T> SpanBuilder<T>::residual(const PhaseVector<T> &v) const {
    if (v.size() != dim_) {
        throw InputError("vector of length " + std::to_string(v.size()) + " tested against span in dimension " +
                         std::to_string(dim_));
    }
    PhaseVector<T> r = v;
    if constexpr (is_exact_v<T>) {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            T coeff = r[pivots_[i]];
            if (coeff != 0) {
                r.add_scaled(-coeff, basis_[i]);
            }
        }
    } else {
        // Two passes of modified Gram-Schmidt keep the residual orthogonal.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : basis_) {
                r.add_scaled(-dot(q, r), q);
            }
        }
    }
    return r;
}

template <Scalar T>
bool SpanBuilder<T>::contains(const PhaseVector<T> &v) const {
    PhaseVector<T> r = residual(v);
    if constexpr (is_exact_v<T>) {
        return r.is_zero(0.0);
    } else {
        return norm2(r) <= tol_;
    }
}

template <Scalar T>
bool SpanBuilder<T>::add(const PhaseVector<T> &v) {
    PhaseVector<T> r = residual(v);
    if constexpr (is_exact_v<T>) {
        std::size_t pivot = 0;
        while (pivot < r.size() && r[pivot] == 0) {
            ++pivot;
        }
        if (pivot == r.size()) {
            return false;
        }
        r *= T(1) / r[pivot];
        basis_.push_back(std::move(r));
        pivots_.push_back(pivot);
    } else {
        double nrm = norm2(r);
        if (nrm <= tol_) {
            return false;
        }
        r *= 1.0 / nrm;
        basis_.push_back(std::move(r));
    }
    return true;
}

template <Scalar T>
std::size_t rank(const std::vector<PhaseVector<T>> &rows, double tol) {
    if (rows.empty()) {
        return 0;
    }
    SpanBuilder<T> span(rows.front().size(), tol);
    for (const auto &row : rows) {
        span.add(row);
    }
    return span.rank();
}

template <Scalar T>
std::optional<std::size_t> first_dependent_row(const std::vector<PhaseVector<T>> &rows, double tol) {
    if (rows.empty()) {
        return std::nullopt;
    }
    SpanBuilder<T> span(rows.front().size(), tol);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!span.add(rows[i])) {
            return i;
        }
    }
    return std::nullopt;
}

template <Scalar T>
std::vector<std::vector<T>> nullspace(const Matrix<T> &a, double tol) {
    Matrix<T> m = a;
    std::vector<std::size_t> pivots = rref(m, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<T>> out;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<T> x(a.cols(), T(0));
        x[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            x[pivots[r]] = -m(r, free);
        }
        out.push_back(std::move(x));
    }
    return out;
}

template <Scalar T>
Matrix<T> inverse(const Matrix<T> &a, double tol) {
    if (!a.is_square()) {
        throw InputError("inverse of non-square matrix " + a.shape());
    }
    std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = a(r, c);
        }
        aug(r, n + r) = T(1);
    }
    std::vector<std::size_t> pivots = rref(aug, tol);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        throw InputError("matrix is singular");
    }
    Matrix<T> inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv(r, c) = aug(r, n + c);
        }
    }
    return inv;
}

// Subspace ----------------------------------------------------------------

template <Scalar T>
Subspace<T>::Subspace(std::size_t modes, std::vector<PhaseVector<T>> basis, double tol)
    : modes_(modes), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].modes() != modes_) {
            throw InputError("subspace basis row " + std::to_string(i) + " has " +
                             std::to_string(basis_[i].modes()) + " modes, expected " + std::to_string(modes_));
        }
    }
    if (auto dep = first_dependent_row(basis_, tol)) {
        throw DependentRowsError("subspace basis is linearly dependent", *dep);
    }
}

template <Scalar T>
Subspace<T> span_of(std::size_t modes, const std::vector<PhaseVector<T>> &rows, double tol) {
    SpanBuilder<T> span(2 * modes, tol);
    std::vector<PhaseVector<T>> basis;
    for (const auto &row : rows) {
        if (span.add(row)) {
            basis.push_back(row);
        }
    }
    return Subspace<T>(modes, std::move(basis), tol);
}

template <Scalar T>
bool rowspace_contains(const Subspace<T> &s, const PhaseVector<T> &v, double tol) {
    if (v.modes() != s.modes()) {
        throw InputError("vector over " + std::to_string(v.modes()) + " modes tested against subspace over " +
                         std::to_string(s.modes()));
    }
    SpanBuilder<T> span(s.ambient_dim(), tol);
    for (const auto &b : s.basis()) {
        span.add(b);
    }
    return span.contains(v);
}

template <Scalar T>
bool symplectic_dual_contains(const Subspace<T> &s, const PhaseVector<T> &v, double tol) {
    if (v.modes() != s.modes()) {
        throw InputError("vector over " + std::to_string(v.modes()) + " modes tested against subspace over " +
                         std::to_string(s.modes()));
    }
    for (const auto &b : s.basis()) {
        if (!is_zero(symplectic_product(v, b), tol)) {
            return false;
        }
    }
    return true;
}

// Gram-Schmidt ------------------------------------------------------------

template <Scalar T>
GramSchmidtResult<T> symplectic_gram_schmidt(const std::vector<PhaseVector<T>> &rows, double tol) {
    if (auto dep = first_dependent_row(rows, tol)) {
        throw DependentRowsError("symplectic Gram-Schmidt input is linearly dependent", *dep);
    }
    GramSchmidtResult<T> out;
    std::vector<PhaseVector<T>> pending = rows;
    while (!pending.empty()) {
        PhaseVector<T> u = pending.front();
        std::optional<std::size_t> partner;
        double best = 0.0;
        T best_product(0);
        for (std::size_t i = 1; i < pending.size(); ++i) {
            T prod = symplectic_product(u, pending[i]);
            if (is_zero(prod, tol)) {
                continue;
            }
            if constexpr (is_exact_v<T>) {
                partner = i;
                best_product = prod;
                break;
            } else {
                if (!partner || std::abs(prod) > best) {
                    partner = i;
                    best = std::abs(prod);
                    best_product = prod;
                }
            }
        }
        if (!partner) {
            out.isotropic.push_back(std::move(u));
            pending.erase(pending.begin());
            continue;
        }
        PhaseVector<T> v = pending[*partner] * (T(1) / best_product);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*partner));
        pending.erase(pending.begin());
        // w <- w - <w,v> u + <w,u> v removes the (u, v) plane from w.
        for (auto &w : pending) {
            T wv = symplectic_product(w, v);
            T wu = symplectic_product(w, u);
            if (wv != T(0)) {
                w.add_scaled(-wv, u);
            }
            if (wu != T(0)) {
                w.add_scaled(wu, v);
            }
        }
        out.pairs.emplace_back(std::move(u), std::move(v));
    }
    return out;
}

#define CVEAO_INSTANTIATE(T)                                                                                  \
    template T symplectic_product<T>(const PhaseVector<T> &, const PhaseVector<T> &);                        \
    template T syndrome_pairing<T>(const PhaseVector<T> &, const PhaseVector<T> &);                          \
    template PhaseVector<T> displacement_image<T>(const PhaseVector<T> &);                                   \
    template double symplectic_residual<T>(const Matrix<T> &);                                              \
    template bool is_symplectic<T>(const Matrix<T> &, double);                                              \
    template Matrix<T> symplectic_inverse<T>(const Matrix<T> &);                                            \
    template Matrix<T> error_image_map<T>(const Matrix<T> &);                                               \
    template Matrix<T> matrix_from_pairs<T>(const std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> &); \
    template class SpanBuilder<T>;                                                                          \
    template std::size_t rank<T>(const std::vector<PhaseVector<T>> &, double);                              \
    template std::optional<std::size_t> first_dependent_row<T>(const std::vector<PhaseVector<T>> &, double); \
    template std::vector<std::vector<T>> nullspace<T>(const Matrix<T> &, double);                           \
    template Matrix<T> inverse<T>(const Matrix<T> &, double);                                               \
    template class Subspace<T>;                                                                             \
    template Subspace<T> span_of<T>(std::size_t, const std::vector<PhaseVector<T>> &, double);              \
    template bool rowspace_contains<T>(const Subspace<T> &, const PhaseVector<T> &, double);                \
    template bool symplectic_dual_contains<T>(const Subspace<T> &, const PhaseVector<T> &, double);         \
    template GramSchmidtResult<T> symplectic_gram_schmidt<T>(const std::vector<PhaseVector<T>> &, double);

CVEAO_INSTANTIATE(Rational)
CVEAO_INSTANTIATE(double)

#undef CVEAO_INSTANTIATE

}  // namespace cveao

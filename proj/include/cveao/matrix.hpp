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

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cveao/errors.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

/// Dense row-major matrix. Square 2n x 2n instances use (p|x) block ordering.
template <Scalar T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    /// J = [[0, I], [-I, 0]] over `modes` modes.
    static Matrix symplectic_form(std::size_t modes) {
        Matrix j(2 * modes, 2 * modes);
        for (std::size_t i = 0; i < modes; ++i) {
            j(i, modes + i) = T(1);
            j(modes + i, i) = T(-1);
        }
        return j;
    }

    static Matrix from_rows(const std::vector<PhaseVector<T>> &rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) {
                throw InputError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                 " entries, expected " + std::to_string(cols));
            }
            for (std::size_t c = 0; c < cols; ++c) {
                m(r, c) = rows[r][c];
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Row r as a phase vector (requires an even column count).
    PhaseVector<T> row(std::size_t r) const {
        std::vector<T> v(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
        return PhaseVector<T>::from_flat(std::move(v));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    template <Scalar U>
    Matrix<U> cast() const {
        Matrix<U> m(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                m(r, c) = scalar_cast<U>((*this)(r, c));
            }
        }
        return m;
    }

    /// Largest absolute entry, as a double.
    double max_abs() const {
        double best = 0.0;
        for (const T &v : data_) {
            best = std::max(best, std::abs(to_double(v)));
        }
        return best;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw InputError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T &aik = a(i, k);
                if (aik == T(0)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix &b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] += b.data_[i];
        }
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] -= b.data_[i];
        }
        return a;
    }
    friend Matrix operator*(const T &s, Matrix a) {
        for (T &v : a.data_) {
            v *= s;
        }
        return a;
    }
    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Row-vector product v * M.
    friend PhaseVector<T> operator*(const PhaseVector<T> &v, const Matrix &m) {
        if (v.size() != m.rows_) {
            throw InputError("vector of length " + std::to_string(v.size()) + " times matrix " + m.shape());
        }
        std::vector<T> out(m.cols_, T(0));
        for (std::size_t k = 0; k < m.rows_; ++k) {
            const T &vk = v[k];
            if (vk == T(0)) {
                continue;
            }
            for (std::size_t j = 0; j < m.cols_; ++j) {
                out[j] += vk * m(k, j);
            }
        }
        return PhaseVector<T>::from_flat(std::move(out));
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

   private:
    void check_shape(const Matrix &b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) {
            throw InputError("matrix shape mismatch: " + shape() + " vs " + b.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

}  // namespace cveao

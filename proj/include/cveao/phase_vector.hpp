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
#include <span>
#include <string>
#include <vector>

#include "cveao/errors.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

/// A real phase-space vector over m modes, stored as (p_1..p_m | x_1..x_m).
///
/// The same type carries displacement errors, check rows and gauge rows; which
/// interpretation applies is decided by the operation that consumes it.
template <Scalar T>
class PhaseVector {
   public:
    PhaseVector() = default;
    explicit PhaseVector(std::size_t modes) : modes_(modes), data_(2 * modes, T(0)) {}
    PhaseVector(std::size_t modes, std::vector<T> data) : modes_(modes), data_(std::move(data)) {
        if (data_.size() != 2 * modes_) {
            throw InputError("phase vector over " + std::to_string(modes_) + " modes needs " +
                             std::to_string(2 * modes_) + " entries, got " + std::to_string(data_.size()));
        }
    }

    /// Builds from a flat (p | x) entry list of even length.
    static PhaseVector from_flat(std::vector<T> data) {
        if (data.size() % 2 != 0) {
            throw InputError("phase vector needs an even number of entries, got " + std::to_string(data.size()));
        }
        std::size_t modes = data.size() / 2;
        return PhaseVector(modes, std::move(data));
    }

    static PhaseVector from_parts(std::span<const T> p, std::span<const T> x) {
        if (p.size() != x.size()) {
            throw InputError("p and x parts differ in length");
        }
        std::vector<T> data(p.begin(), p.end());
        data.insert(data.end(), x.begin(), x.end());
        return PhaseVector(p.size(), std::move(data));
    }

    static PhaseVector unit_p(std::size_t modes, std::size_t mode) {
        PhaseVector v(modes);
        v.p(mode) = T(1);
        return v;
    }
    static PhaseVector unit_x(std::size_t modes, std::size_t mode) {
        PhaseVector v(modes);
        v.x(mode) = T(1);
        return v;
    }

    std::size_t modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return data_.size(); }

    T &operator[](std::size_t i) { return data_[i]; }
    const T &operator[](std::size_t i) const { return data_[i]; }
    T &p(std::size_t mode) { return data_[mode]; }
    const T &p(std::size_t mode) const { return data_[mode]; }
    T &x(std::size_t mode) { return data_[modes_ + mode]; }
    const T &x(std::size_t mode) const { return data_[modes_ + mode]; }

    std::span<const T> p_part() const { return {data_.data(), modes_}; }
    std::span<const T> x_part() const { return {data_.data() + modes_, modes_}; }
    const std::vector<T> &data() const noexcept { return data_; }

    bool is_zero(double tol) const {
        for (const T &v : data_) {
            if (!cveao::is_zero(v, tol)) {
                return false;
            }
        }
        return true;
    }

    /// Joins two vectors mode-wise: (p_a, p_b | x_a, x_b).
    PhaseVector concat(const PhaseVector &other) const {
        std::vector<T> data;
        data.reserve(size() + other.size());
        data.insert(data.end(), p_part().begin(), p_part().end());
        data.insert(data.end(), other.p_part().begin(), other.p_part().end());
        data.insert(data.end(), x_part().begin(), x_part().end());
        data.insert(data.end(), other.x_part().begin(), other.x_part().end());
        return PhaseVector(modes_ + other.modes_, std::move(data));
    }

    template <Scalar U>
    PhaseVector<U> cast() const {
        std::vector<U> data;
        data.reserve(data_.size());
        for (const T &v : data_) {
            data.push_back(scalar_cast<U>(v));
        }
        return PhaseVector<U>(modes_, std::move(data));
    }

    PhaseVector &operator+=(const PhaseVector &o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    PhaseVector &operator-=(const PhaseVector &o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    PhaseVector &operator*=(const T &s) {
        for (T &v : data_) {
            v *= s;
        }
        return *this;
    }
    /// this += s * o, without a temporary.
    PhaseVector &add_scaled(const T &s, const PhaseVector &o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += s * o.data_[i];
        }
        return *this;
    }

    friend PhaseVector operator+(PhaseVector a, const PhaseVector &b) { return a += b; }
    friend PhaseVector operator-(PhaseVector a, const PhaseVector &b) { return a -= b; }
    friend PhaseVector operator*(const T &s, PhaseVector a) { return a *= s; }
    friend PhaseVector operator*(PhaseVector a, const T &s) { return a *= s; }
    friend PhaseVector operator-(PhaseVector a) { return a *= T(-1); }
    friend bool operator==(const PhaseVector &a, const PhaseVector &b) {
        return a.modes_ == b.modes_ && a.data_ == b.data_;
    }

    void check_same(const PhaseVector &o) const {
        if (o.modes_ != modes_) {
            throw InputError("phase vector dimension mismatch: " + std::to_string(modes_) + " vs " +
                             std::to_string(o.modes_) + " modes");
        }
    }

   private:
    std::size_t modes_ = 0;
    std::vector<T> data_;
};

template <Scalar T>
std::string to_string(const PhaseVector<T> &v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == v.modes() && i != 0) {
            out += " |";
        }
        if (i != 0) {
            out += ' ';
        }
        out += format_scalar(v[i]);
    }
    return out + ")";
}

}  // namespace cveao

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


// Shared helpers for the test binaries: random generators and oracles that
// are written independently of the library's own linear algebra.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "cveao/code.hpp"
#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"

namespace cveao::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Plain-vector oracles ------------------------------------------------------

using RVec = std::vector<Rational>;

inline RVec flat(const PhaseVector<Rational> &v) {
    RVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i];
    }
    return out;
}

/// Rank by textbook Gaussian elimination on a copy.
inline std::size_t oracle_rank(std::vector<RVec> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][c] != 0) {
                Rational f = rows[r][c] / rows[rank][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    rows[r][j] -= f * rows[rank][j];
                }
            }
        }
        ++rank;
    }
    return rank;
}

inline bool oracle_in_span(const std::vector<RVec> &rows, const RVec &v) {
    std::vector<RVec> with = rows;
    with.push_back(v);
    return oracle_rank(rows) == oracle_rank(with);
}

/// f_p . e_x + f_x . e_p, computed by index arithmetic on flat (p|x) vectors.
inline Rational oracle_shift(const RVec &f, const RVec &e) {
    const std::size_t n = f.size() / 2;
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s += f[i] * e[n + i] + f[n + i] * e[i];
    }
    return s;
}

inline RVec oracle_q(RVec f) {
    for (std::size_t i = f.size() / 2; i < f.size(); ++i) {
        f[i] = -f[i];
    }
    return f;
}

/// Distinguish-or-absorb test for a pair of errors, by brute force.
inline bool oracle_correctable(const Code<Rational> &code, const PhaseVector<Rational> &e,
                               const PhaseVector<Rational> &e2) {
    RVec d = flat(e);
    RVec b = flat(e2);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] -= b[i];
    }
    for (const auto &row : code.checks) {
        if (oracle_shift(flat(row.alice), d) != 0) {
            return true;
        }
    }
    std::vector<RVec> absorbed;
    for (const auto &row : code.checks) {
        if (row.kind == RowKind::ancilla) {
            absorbed.push_back(oracle_q(flat(row.alice)));
        }
    }
    for (const auto &g : code.gauge) {
        absorbed.push_back(oracle_q(flat(g)));
    }
    if (absorbed.empty()) {
        return std::all_of(d.begin(), d.end(), [](const Rational &x) { return x == 0; });
    }
    return oracle_in_span(absorbed, d);
}

// Random objects ------------------------------------------------------------

inline PhaseVector<Rational> random_rational_vector(std::size_t modes, Rng &rng, int range = 3) {
    PhaseVector<Rational> v(modes);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = Rational(uniform_int(rng, -range, range), uniform_int(rng, 1, 2));
    }
    return v;
}

inline PhaseVector<double> random_double_vector(std::size_t modes, Rng &rng, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    PhaseVector<double> v(modes);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = dist(rng);
    }
    return v;
}

/// Product of `steps` random elementary symplectic matrices with small
/// rational entries: shears, unimodular mode mixes and quarter turns.
inline Matrix<Rational> random_rational_symplectic(std::size_t modes, Rng &rng, int steps = 6) {
    const std::size_t n = modes;
    Matrix<Rational> m = Matrix<Rational>::identity(2 * n);
    for (int s = 0; s < steps; ++s) {
        Matrix<Rational> g = Matrix<Rational>::identity(2 * n);
        const std::size_t i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
        const std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
        Rational a(uniform_int(rng, -2, 2), uniform_int(rng, 1, 2));
        switch (uniform_int(rng, 0, 3)) {
            case 0:  // upper shear with symmetric block
                g(i, n + j) += a;
                if (i != j) {
                    g(j, n + i) += a;
                }
                break;
            case 1:  // lower shear
                g(n + i, j) += a;
                if (i != j) {
                    g(n + j, i) += a;
                }
                break;
            case 2:  // diag(A, A^-T) with A = I + a e_ij
                if (i != j) {
                    g(i, j) = a;
                    g(n + j, n + i) = -a;
                }
                break;
            default:  // quarter turn of mode i
                g(i, i) = 0;
                g(n + i, n + i) = 0;
                g(i, n + i) = 1;
                g(n + i, i) = -1;
                break;
        }
        m = g * m;
    }
    return m;
}

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::size_t n, Rng &rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            z(r, c) = {dist(rng), dist(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

/// Orthogonal symplectic [[X, -Y], [Y, X]] from U = X + iY.
inline Eigen::MatrixXd passive_from_unitary(const Eigen::MatrixXcd &u) {
    const auto n = u.rows();
    Eigen::MatrixXd o(2 * n, 2 * n);
    o << u.real(), -u.imag(), u.imag(), u.real();
    return o;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd &e) {
    Matrix<double> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
        }
    }
    return m;
}

inline Eigen::MatrixXd to_eigen(const Matrix<double> &m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return e;
}

/// O1 diag(1/d, d) O2 with gains drawn from [1/max_gain, max_gain].
inline Matrix<double> random_double_symplectic(std::size_t modes, Rng &rng, double max_gain = 3.0) {
    std::uniform_real_distribution<double> log_gain(-std::log(max_gain), std::log(max_gain));
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (std::size_t i = 0; i < modes; ++i) {
        double d = std::exp(log_gain(rng));
        s(i, i) = 1.0 / d;
        s(modes + i, modes + i) = d;
    }
    Eigen::MatrixXd m = passive_from_unitary(random_unitary(modes, rng)) * s *
                        passive_from_unitary(random_unitary(modes, rng));
    return from_eigen(m);
}

/// Independent J-form check: max |M J M^T - J|.
inline double oracle_symplectic_residual(const Matrix<double> &m) {
    Eigen::MatrixXd e = to_eigen(m);
    const auto n = e.rows() / 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return (e * j * e.transpose() - j).cwiseAbs().maxCoeff();
}

struct RandomParams {
    std::size_t k, l, r, c;
    std::size_t n() const { return k + l + r + c; }
};

/// Random (k, l, r, c) with k >= 1 and k + l + r + c <= max_n.
inline RandomParams random_params(Rng &rng, std::size_t max_n) {
    for (;;) {
        RandomParams p{static_cast<std::size_t>(uniform_int(rng, 1, 3)), static_cast<std::size_t>(uniform_int(rng, 0, 4)),
                       static_cast<std::size_t>(uniform_int(rng, 0, 2)), static_cast<std::size_t>(uniform_int(rng, 0, 3))};
        if (p.n() <= max_n) {
            return p;
        }
    }
}

inline Matrix<Rational> random_rational_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = Rational(uniform_int(rng, -3, 3), uniform_int(rng, 1, 3));
        }
    }
    return m;
}

}  // namespace cveao::testing

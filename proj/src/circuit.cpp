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


#include "cveao/circuit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "cveao/errors.hpp"
#include "cveao/scalar.hpp"
#include "cveao/symplectic.hpp"

namespace cveao {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat to_eigen(const Matrix<double> &m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

Matrix<double> from_eigen(const Mat &m) {
    Matrix<double> out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

Mat form(Eigen::Index n) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Mat::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return j;
}

/// Quarter turn by k * 90 degrees in the (p_i, x_i) plane.
Mat quarter_turn(Eigen::Index n, Eigen::Index i, int k) {
    static constexpr int c[4] = {1, 0, -1, 0};
    static constexpr int s[4] = {0, 1, 0, -1};
    Mat r = Mat::Identity(2 * n, 2 * n);
    r(i, i) = c[k];
    r(i, n + i) = s[k];
    r(n + i, i) = -s[k];
    r(n + i, n + i) = c[k];
    return r;
}

double block_trace(const Mat &m, Eigen::Index n, Eigen::Index i) { return m(i, i) + m(n + i, n + i); }

std::string format_db(double gain) {
    char buf[64];
    double db = 20.0 * std::log10(gain);
    if (std::abs(db) < 5e-5) {
        db = 0.0;  // avoid "-0.0000"
    }
    std::snprintf(buf, sizeof buf, "%.4f", db);
    return buf;
}

}  // namespace

Matrix<double> CircuitDecomposition::squeeze_matrix() const {
    const std::size_t n = gains.size();
    Matrix<double> s(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0 / gains[i];
        s(n + i, n + i) = gains[i];
    }
    return s;
}

Matrix<double> CircuitDecomposition::reconstruct() const { return post * squeeze_matrix() * pre; }

bool is_passive(const Matrix<double> &m, double tol) {
    if (!m.is_square() || m.rows() % 2 != 0) {
        return false;
    }
    Mat e = to_eigen(m);
    double orth = (e.transpose() * e - Mat::Identity(e.rows(), e.cols())).cwiseAbs().maxCoeff();
    return orth <= tol && symplectic_residual(m) <= tol;
}

CircuitDecomposition bloch_messiah(const Matrix<double> &upsilon, double tol) {
    double residual = symplectic_residual(upsilon);
    if (!(residual <= tol)) {
        throw NotSymplecticError("input is not symplectic", residual);
    }
    const Eigen::Index n = static_cast<Eigen::Index>(upsilon.rows() / 2);
    const Mat y = to_eigen(upsilon);
    const Mat j = form(n);

    Eigen::JacobiSVD<Mat> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    const double condition = sv(0) / sv(sv.size() - 1);
    const Mat o = svd.matrixU() * svd.matrixV().transpose();
    const Mat p = svd.matrixV() * sv.asDiagonal() * svd.matrixV().transpose();

    Eigen::SelfAdjointEigenSolver<Mat> eig(p);
    const Vec lambda = eig.eigenvalues();  // ascending
    const Mat vecs = eig.eigenvectors();
    const double delta = std::max(1e-9, 1e3 * std::numeric_limits<double>::epsilon() * lambda.maxCoeff());

    std::vector<Vec> v;
    std::vector<double> d;
    std::vector<Eigen::Index> unit_cluster;
    Eigen::Index below = 0;
    for (Eigen::Index i = 2 * n - 1; i >= 0; --i) {
        if (lambda(i) > 1.0 + delta) {
            v.push_back(vecs.col(i));
            d.push_back(lambda(i));
        } else if (lambda(i) >= 1.0 - delta) {
            unit_cluster.push_back(i);
        } else {
            ++below;
        }
    }
    if (static_cast<Eigen::Index>(v.size()) != below || unit_cluster.size() % 2 != 0) {
        throw NumericalError("eigenvalues of the positive polar factor do not pair up", condition);
    }

    // Inside the unit eigenspace any J-compatible orthonormal frame works;
    // build one from the coordinate axes, x before p, largest residual first.
    if (!unit_cluster.empty()) {
        Mat basis(2 * n, static_cast<Eigen::Index>(unit_cluster.size()));
        for (std::size_t c = 0; c < unit_cluster.size(); ++c) {
            basis.col(static_cast<Eigen::Index>(c)) = vecs.col(unit_cluster[c]);
        }
        const Mat proj = basis * basis.transpose();
        std::vector<Vec> chosen;
        for (std::size_t round = 0; round < unit_cluster.size() / 2; ++round) {
            Vec best;
            double best_norm = 0.0;
            for (Eigen::Index t = 0; t < 2 * n; ++t) {
                Eigen::Index axis = t < n ? n + t : t - n;
                Vec r = proj.col(axis);
                for (const Vec &w : chosen) {
                    Vec jw = j * w;
                    r -= w.dot(r) * w + jw.dot(r) * jw;
                }
                double norm = r.norm();
                if (norm > best_norm + 1e-12) {
                    best_norm = norm;
                    best = r;
                }
            }
            if (best_norm < 1e-6) {
                throw NumericalError("could not complete the unit eigenspace frame", condition);
            }
            chosen.push_back(best / best_norm);
        }
        for (const Vec &w : chosen) {
            v.push_back(w);
            d.push_back(1.0);
        }
    }

    Mat vm(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vm.col(i) = j * v[static_cast<std::size_t>(i)];
        vm.col(n + i) = v[static_cast<std::size_t>(i)];
    }
    Mat post = o * vm;
    Mat pre = vm.transpose();

    for (Eigen::Index i = 0; i < n; ++i) {
        int best_k = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 4; ++k) {
            Mat r = quarter_turn(n, i, k);
            double score = block_trace(r.transpose() * pre, n, i) + block_trace(post * r, n, i);
            if (score > best_score + 1e-12) {
                best_score = score;
                best_k = k;
            }
        }
        if (best_k != 0) {
            Mat r = quarter_turn(n, i, best_k);
            pre = r.transpose() * pre;
            post = post * r;
            if (best_k % 2 == 1) {
                d[static_cast<std::size_t>(i)] = 1.0 / d[static_cast<std::size_t>(i)];
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return d[static_cast<std::size_t>(a)] > d[static_cast<std::size_t>(b)];
    });
    Mat perm = Mat::Zero(2 * n, 2 * n);  // new mode i <- old mode order[i]
    CircuitDecomposition out;
    for (Eigen::Index i = 0; i < n; ++i) {
        perm(i, order[static_cast<std::size_t>(i)]) = 1.0;
        perm(n + i, n + order[static_cast<std::size_t>(i)]) = 1.0;
        out.gains.push_back(d[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    }
    out.pre = from_eigen(perm * pre);
    out.post = from_eigen(post * perm.transpose());

    double err = (to_eigen(out.reconstruct()) - y).cwiseAbs().maxCoeff();
    if (!(err <= tol)) {
        throw NumericalError("reconstruction error " + format_scalar(err) + " exceeds tolerance", condition);
    }
    if (!is_passive(out.pre, tol) || !is_passive(out.post, tol)) {
        throw NumericalError("passive stages miss the orthogonality or symplecticity tolerance", condition);
    }
    return out;
}

std::string emit_circuit(const CircuitDecomposition &d) {
    std::string out = "# pre acts first, then the squeezers, then post\n";
    auto passive = [&out](const Matrix<double> &m) {
        out += "PASSIVE\n";
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                out += (c ? " " : "") + format_scalar(m(r, c));
            }
            out += '\n';
        }
    };
    passive(d.pre);
    out += "SQUEEZE\n";
    for (std::size_t i = 0; i < d.gains.size(); ++i) {
        out += "mode " + std::to_string(i + 1) + ": " + format_db(d.gains[i]) + " dB (gain " + format_scalar(d.gains[i]) + ")\n";
    }
    passive(d.post);
    return out;
}

CircuitDecomposition parse_circuit(std::string_view text) {
    enum class Sec { none, pre, squeeze, post } sec = Sec::none;
    std::vector<std::vector<double>> pre_rows, post_rows;
    std::vector<double> gains;
    int passive_seen = 0;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto h = line.find('#'); h != std::string_view::npos) {
            line = line.substr(0, h);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
            line.remove_prefix(1);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (line == "PASSIVE") {
            if (++passive_seen > 2) {
                throw ParseError("more than two PASSIVE sections", lineno);
            }
            sec = passive_seen == 1 ? Sec::pre : Sec::post;
            continue;
        }
        if (line == "SQUEEZE") {
            if (passive_seen != 1) {
                throw ParseError("SQUEEZE must follow the first PASSIVE section", lineno);
            }
            sec = Sec::squeeze;
            continue;
        }
        switch (sec) {
            case Sec::none:
                throw ParseError("data before any section", lineno);
            case Sec::pre:
            case Sec::post: {
                std::vector<double> row;
                std::size_t i = 0;
                while (i < line.size()) {
                    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
                        ++i;
                    }
                    std::size_t j = i;
                    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
                        ++j;
                    }
                    if (j > i) {
                        try {
                            row.push_back(parse_scalar<double>(line.substr(i, j - i)));
                        } catch (const InputError &e) {
                            throw ParseError(e.what(), lineno);
                        }
                    }
                    i = j;
                }
                (sec == Sec::pre ? pre_rows : post_rows).push_back(std::move(row));
                break;
            }
            case Sec::squeeze: {
                // mode <i>: <dB> dB [(gain <d>)]; the exact gain wins when present.
                std::istringstream in{std::string(line)};
                std::string mode_word, index, db_text, unit, gain_word, gain_text, extra;
                in >> mode_word >> index >> db_text >> unit;
                const std::string expected = "mode " + std::to_string(gains.size() + 1) + ":";
                if (mode_word != "mode" || mode_word + " " + index != expected || unit != "dB") {
                    throw ParseError("expected '" + expected + " <value> dB'", lineno);
                }
                bool has_gain = static_cast<bool>(in >> gain_word);
                if (has_gain && (gain_word != "(gain" || !(in >> gain_text) || gain_text.size() < 2 ||
                                 gain_text.back() != ')' || (in >> extra))) {
                    throw ParseError("expected '(gain <value>)' after the dB value", lineno);
                }
                try {
                    if (has_gain) {
                        gain_text.pop_back();
                        gains.push_back(parse_scalar<double>(gain_text));
                        if (!(gains.back() > 0.0)) {
                            throw InputError("gain must be positive");
                        }
                    } else {
                        gains.push_back(std::pow(10.0, parse_scalar<double>(db_text) / 20.0));
                    }
                } catch (const InputError &e) {
                    throw ParseError(e.what(), lineno);
                }
                break;
            }
        }
    }
    if (passive_seen != 2) {
        throw ParseError("expected two PASSIVE sections", 0);
    }
    const std::size_t dim = 2 * gains.size();
    auto build = [dim](const std::vector<std::vector<double>> &rows, const char *what) {
        if (rows.size() != dim) {
            throw ParseError(std::string(what) + " has " + std::to_string(rows.size()) + " rows, expected " +
                                 std::to_string(dim),
                             0);
        }
        Matrix<double> m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (rows[r].size() != dim) {
                throw ParseError(std::string(what) + " row " + std::to_string(r + 1) + " has wrong length", 0);
            }
            for (std::size_t c = 0; c < dim; ++c) {
                m(r, c) = rows[r][c];
            }
        }
        return m;
    };
    CircuitDecomposition d;
    d.pre = build(pre_rows, "first PASSIVE");
    d.gains = std::move(gains);
    d.post = build(post_rows, "second PASSIVE");
    return d;
}

}  // namespace cveao

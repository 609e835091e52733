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

#include "cveao/code.hpp"

#include <cmath>
#include <map>
#include <string>

#include "cveao/errors.hpp"

namespace cveao {

std::string_view to_string(ModeRole role) {
    switch (role) {
        case ModeRole::information:
            return "info";
        case ModeRole::ancilla:
            return "ancilla";
        case ModeRole::gauge:
            return "gauge";
        case ModeRole::ebit:
            return "ebit";
    }
    return "?";
}

std::string_view to_string(RowKind kind) {
    switch (kind) {
        case RowKind::ancilla:
            return "ancilla";
        case RowKind::ebit_z:
            return "ebit_z";
        case RowKind::ebit_x:
            return "ebit_x";
    }
    return "?";
}

RowKind parse_row_kind(std::string_view name) {
    if (name == "ancilla") {
        return RowKind::ancilla;
    }
    if (name == "ebit_z") {
        return RowKind::ebit_z;
    }
    if (name == "ebit_x") {
        return RowKind::ebit_x;
    }
    throw InputError("unknown row kind '" + std::string(name) + "'");
}

std::string to_string(const CodeParams &p) {
    return "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " l=" + std::to_string(p.l) +
           " r=" + std::to_string(p.r) + " c=" + std::to_string(p.c);
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto &e : entries) {
        out += e.passed ? "PASS " : "FAIL ";
        out += e.invariant;
        if (!e.detail.empty()) {
            out += ": " + e.detail;
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

template <Scalar T>
bool is_unit_magnitude(const T &v, double tol) {
    if constexpr (is_exact_v<T>) {
        return v == 1 || v == -1;
    } else {
        return std::abs(std::abs(v) - 1.0) <= tol;
    }
}

/// The single nonzero position of `part`, if there is exactly one.
template <Scalar T>
std::optional<std::size_t> sole_nonzero(std::span<const T> part, double tol) {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < part.size(); ++i) {
        if (!is_zero(part[i], tol)) {
            if (at) {
                return std::nullopt;
            }
            at = i;
        }
    }
    return at;
}

template <Scalar T>
PhaseVector<T> remove_pair(PhaseVector<T> w, const PhaseVector<T> &a, const PhaseVector<T> &b) {
    T wb = symplectic_product(w, b);
    T wa = symplectic_product(w, a);
    w.add_scaled(-wb, a);
    w.add_scaled(wa, b);
    return w;
}

template <Scalar T>
T euclid(const PhaseVector<T> &a, const PhaseVector<T> &b) {
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

/// Structural checks; returns false when later checks cannot run.
template <Scalar T>
bool check_structure(const Code<T> &code, ValidationReport &report) {
    const CodeParams &p = code.params;
    ValidationEntry params{"parameters", true, {}, {}};
    if (!p.consistent()) {
        params.passed = false;
        params.detail = "n != k + l + r + c (" + to_string(p) + ")";
    }
    report.entries.push_back(params);

    ValidationEntry roles{"roles", true, {}, {}};
    if (code.roles.size() != p.n) {
        roles.passed = false;
        roles.detail = std::to_string(code.roles.size()) + " roles for " + std::to_string(p.n) + " modes";
    } else {
        std::size_t counts[4] = {0, 0, 0, 0};
        for (ModeRole r : code.roles) {
            ++counts[static_cast<int>(r)];
        }
        if (counts[0] != p.k || counts[1] != p.l || counts[2] != p.r || counts[3] != p.c) {
            roles.passed = false;
            roles.detail = "role counts (" + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
                           std::to_string(counts[2]) + "," + std::to_string(counts[3]) +
                           ") do not match (k,l,r,c)";
        }
    }
    report.entries.push_back(roles);

    ValidationEntry shapes{"shapes", true, {}, {}};
    std::size_t kinds[3] = {0, 0, 0};
    for (std::size_t i = 0; i < code.checks.size(); ++i) {
        const auto &row = code.checks[i];
        ++kinds[static_cast<int>(row.kind)];
        if (row.alice.modes() != p.n || row.bob.modes() != p.c) {
            shapes.passed = false;
            shapes.rows.push_back(i);
        }
    }
    if (!shapes.passed) {
        shapes.detail = "F rows with wrong Alice/Bob width";
    } else if (kinds[0] != p.l || kinds[1] != p.c || kinds[2] != p.c) {
        shapes.passed = false;
        shapes.detail = "F has " + std::to_string(kinds[0]) + " ancilla, " + std::to_string(kinds[1]) +
                        " ebit_z, " + std::to_string(kinds[2]) + " ebit_x rows; expected " + std::to_string(p.l) +
                        ", " + std::to_string(p.c) + ", " + std::to_string(p.c);
    }
    for (std::size_t i = 0; shapes.passed && i < code.gauge.size(); ++i) {
        if (code.gauge[i].modes() != p.n) {
            shapes.passed = false;
            shapes.rows.push_back(i);
            shapes.detail = "G row " + one_based(i) + " has wrong width";
        }
    }
    if (shapes.passed && code.gauge.size() != 2 * p.r) {
        shapes.passed = false;
        shapes.detail = "G has " + std::to_string(code.gauge.size()) + " rows, expected " + std::to_string(2 * p.r);
    }
    if (shapes.passed && code.upsilon &&
        (code.upsilon->rows() != 2 * p.n || code.upsilon->cols() != 2 * p.n)) {
        shapes.passed = false;
        shapes.detail = "upsilon is " + code.upsilon->shape();
    }
    report.entries.push_back(shapes);
    return params.passed && roles.passed && shapes.passed;
}

template <Scalar T>
void check_bob_blocks(const Code<T> &code, double tol, ValidationReport &report) {
    ValidationEntry e{"bob_blocks", true, {}, {}};
    std::vector<int> z_uses(code.params.c, 0);
    std::vector<int> x_uses(code.params.c, 0);
    for (std::size_t i = 0; i < code.checks.size(); ++i) {
        const auto &row = code.checks[i];
        bool ok = true;
        switch (row.kind) {
            case RowKind::ancilla:
                ok = row.bob.is_zero(tol);
                break;
            case RowKind::ebit_z:
            case RowKind::ebit_x: {
                bool z = row.kind == RowKind::ebit_z;
                auto used = z ? row.bob.p_part() : row.bob.x_part();
                auto other = z ? row.bob.x_part() : row.bob.p_part();
                auto at = sole_nonzero(used, tol);
                ok = at && is_unit_magnitude(used[*at], tol);
                for (const T &v : other) {
                    ok = ok && is_zero(v, tol);
                }
                if (ok) {
                    ++(z ? z_uses : x_uses)[*at];
                }
                break;
            }
        }
        if (!ok) {
            e.passed = false;
            e.rows.push_back(i);
        }
    }
    if (!e.passed) {
        std::string rows;
        for (std::size_t r : e.rows) {
            rows += (rows.empty() ? "" : ",") + one_based(r);
        }
        e.detail = "rows " + rows + " do not match the Bob pattern of their kind";
    } else {
        for (std::size_t j = 0; j < code.params.c; ++j) {
            if (z_uses[j] != 1 || x_uses[j] != 1) {
                e.passed = false;
                e.detail = "Bob mode " + one_based(j) + " is read by " + std::to_string(z_uses[j]) +
                           " ebit_z and " + std::to_string(x_uses[j]) + " ebit_x rows";
                break;
            }
        }
    }
    report.entries.push_back(e);
}

}  // namespace

// Construction ------------------------------------------------------------

template <Scalar T>
Code<T> canonical_code(const std::vector<ModeRole> &roles) {
    Code<T> code;
    code.roles = roles;
    code.params.n = roles.size();
    for (ModeRole r : roles) {
        switch (r) {
            case ModeRole::information:
                ++code.params.k;
                break;
            case ModeRole::ancilla:
                ++code.params.l;
                break;
            case ModeRole::gauge:
                ++code.params.r;
                break;
            case ModeRole::ebit:
                ++code.params.c;
                break;
        }
    }
    const std::size_t n = code.params.n;
    const std::size_t c = code.params.c;
    for (std::size_t m : code.modes_with_role(ModeRole::ancilla)) {
        code.checks.push_back({RowKind::ancilla, PhaseVector<T>::unit_p(n, m), PhaseVector<T>(c)});
    }
    auto ebits = code.modes_with_role(ModeRole::ebit);
    for (std::size_t j = 0; j < ebits.size(); ++j) {
        // x_A - x_B
        code.checks.push_back({RowKind::ebit_z, PhaseVector<T>::unit_p(n, ebits[j]), -PhaseVector<T>::unit_p(c, j)});
    }
    for (std::size_t j = 0; j < ebits.size(); ++j) {
        // p_A + p_B
        code.checks.push_back({RowKind::ebit_x, PhaseVector<T>::unit_x(n, ebits[j]), PhaseVector<T>::unit_x(c, j)});
    }
    for (std::size_t m : code.modes_with_role(ModeRole::gauge)) {
        code.gauge.push_back(PhaseVector<T>::unit_p(n, m));
        code.gauge.push_back(PhaseVector<T>::unit_x(n, m));
    }
    code.upsilon = Matrix<T>::identity(2 * n);
    return code;
}

template <Scalar T>
Code<T> canonical_code(std::size_t k, std::size_t l, std::size_t r, std::size_t c) {
    std::vector<ModeRole> roles;
    roles.insert(roles.end(), k, ModeRole::information);
    roles.insert(roles.end(), l, ModeRole::ancilla);
    roles.insert(roles.end(), r, ModeRole::gauge);
    roles.insert(roles.end(), c, ModeRole::ebit);
    return canonical_code<T>(roles);
}

namespace {

constexpr std::size_t kExampleModes = 8;

std::vector<ModeRole> example_roles() {
    using R = ModeRole;
    return {R::ancilla, R::ancilla, R::ancilla, R::ebit, R::ancilla, R::gauge, R::gauge, R::information};
}

PhaseVector<Rational> int_row(const int (&p)[kExampleModes], const int (&x)[kExampleModes]) {
    std::vector<Rational> data;
    for (int v : p) {
        data.emplace_back(v);
    }
    for (int v : x) {
        data.emplace_back(v);
    }
    return PhaseVector<Rational>(kExampleModes, std::move(data));
}

PhaseVector<Rational> bob_row(int p, int x) { return PhaseVector<Rational>(1, {Rational(p), Rational(x)}); }

Code<Rational> example_unencoded() {
    Code<Rational> code;
    code.params = {kExampleModes, 1, 4, 2, 1};
    code.roles = example_roles();
    const std::size_t n = kExampleModes;
    using V = PhaseVector<Rational>;
    code.checks = {
        {RowKind::ancilla, V::unit_p(n, 0), bob_row(0, 0)},
        {RowKind::ancilla, V::unit_p(n, 1), bob_row(0, 0)},
        {RowKind::ancilla, V::unit_p(n, 2), bob_row(0, 0)},
        {RowKind::ebit_z, V::unit_p(n, 3), bob_row(-1, 0)},
        {RowKind::ebit_x, V::unit_x(n, 3), bob_row(0, 1)},
        {RowKind::ancilla, V::unit_p(n, 4), bob_row(0, 0)},
    };
    code.gauge = {V::unit_p(n, 5), V::unit_x(n, 5), V::unit_p(n, 6), V::unit_x(n, 6)};
    code.upsilon = Matrix<Rational>::identity(2 * n);
    return code;
}

Code<Rational> example_encoded() {
    static constexpr int fz[6][kExampleModes] = {
        {1, -1, 0, 1, -1, 0, 0, 0}, {1, 0, -1, 1, 0, -1, 0, 0}, {0, 0, 0, 0, 0, 0, 1, -1},
        {0, 0, 0, 0, 0, 0, 0, 0},   {0, 0, 0, 0, 0, 0, 0, 1},   {0, 0, 0, 0, 0, 0, 0, 0},
    };
    static constexpr int fx[6][kExampleModes] = {
        {0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0},     {0, 0, 0, 0, 0, 0, 0, 0},
        {1, 1, 1, 0, 0, 0, -1, -1}, {0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, -1, -1, -1, 0, 0},
    };
    static constexpr int gz[4][kExampleModes] = {
        {0, 0, 0, 0, 0, 0, 0, 0},
        {1, -1, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 0, -1, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
    };
    static constexpr int gx[4][kExampleModes] = {
        {0, 1, 0, 0, -1, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, -1, 0, 0},
    };
    static constexpr RowKind kinds[6] = {RowKind::ancilla, RowKind::ancilla, RowKind::ancilla,
                                         RowKind::ebit_x,  RowKind::ebit_z,  RowKind::ancilla};
    static constexpr int bob[6][2] = {{0, 0}, {0, 0}, {0, 0}, {0, 1}, {1, 0}, {0, 0}};

    Code<Rational> code;
    code.params = {kExampleModes, 1, 4, 2, 1};
    code.roles = example_roles();
    for (std::size_t i = 0; i < 6; ++i) {
        code.checks.push_back({kinds[i], int_row(fz[i], fx[i]), bob_row(bob[i][0], bob[i][1])});
    }
    for (std::size_t i = 0; i < 4; ++i) {
        code.gauge.push_back(int_row(gz[i], gx[i]));
    }
    return code;
}

}  // namespace

template <Scalar T>
Code<T> example_unencoded_code() {
    return example_unencoded().cast<T>();
}

template <Scalar T>
Code<T> example_code() {
    static const Code<Rational> cached = [] {
        Code<Rational> code = example_encoded();
        code.upsilon = encoding_between(example_unencoded(), code);
        return code;
    }();
    return cached.cast<T>();
}

template <Scalar T>
Code<T> apply_symplectic(const Code<T> &code, const Matrix<T> &upsilon, double tol) {
    const std::size_t dim = 2 * code.params.n;
    if (upsilon.rows() != dim || upsilon.cols() != dim) {
        throw InputError("upsilon is " + upsilon.shape() + ", code needs " + std::to_string(dim) + "x" +
                         std::to_string(dim));
    }
    if (!is_symplectic(upsilon, tol)) {
        throw NotSymplecticError("upsilon is not symplectic", symplectic_residual(upsilon));
    }
    Matrix<T> ut = upsilon.transpose();
    Code<T> out = code;
    for (auto &row : out.checks) {
        row.alice = row.alice * ut;
    }
    for (auto &g : out.gauge) {
        g = g * ut;
    }
    out.upsilon = code.upsilon ? upsilon * *code.upsilon : upsilon;
    return out;
}

template <Scalar T>
ValidationReport validate(const Code<T> &code, double tol) {
    ValidationReport report;
    if (!check_structure(code, report)) {
        return report;
    }
    check_bob_blocks(code, tol, report);

    std::vector<PhaseVector<T>> full;
    for (const auto &row : code.checks) {
        full.push_back(row.full());
    }

    ValidationEntry comm{"check_commutation", true, {}, {}};
    for (std::size_t i = 0; i < full.size(); ++i) {
        for (std::size_t j = i + 1; j < full.size(); ++j) {
            T prod = symplectic_product(full[i], full[j]);
            if (!is_zero(prod, tol)) {
                if (comm.passed) {
                    comm.detail = "rows " + one_based(i) + "," + one_based(j) + " have product " + format_scalar(prod);
                }
                comm.passed = false;
                comm.rows.push_back(i);
                comm.rows.push_back(j);
            }
        }
    }
    report.entries.push_back(comm);

    ValidationEntry indep{"check_rank", true, {}, {}};
    if (auto dep = first_dependent_row(full, tol)) {
        indep.passed = false;
        indep.rows.push_back(*dep);
        indep.detail = "row " + one_based(*dep) + " depends on earlier rows";
    }
    report.entries.push_back(indep);

    ValidationEntry pairing{"gauge_pairing", true, {}, {}};
    for (std::size_t i = 0; i < code.gauge.size(); ++i) {
        for (std::size_t j = i + 1; j < code.gauge.size(); ++j) {
            T want = (i % 2 == 0 && j == i + 1) ? T(1) : T(0);
            T prod = symplectic_product(code.gauge[i], code.gauge[j]);
            if (!is_zero(T(prod - want), tol)) {
                if (pairing.passed) {
                    pairing.detail = "G rows " + one_based(i) + "," + one_based(j) + " have product " +
                                     format_scalar(prod) + ", expected " + format_scalar(want);
                }
                pairing.passed = false;
                pairing.rows.push_back(i);
                pairing.rows.push_back(j);
            }
        }
    }
    report.entries.push_back(pairing);

    ValidationEntry mixed{"gauge_check_commutation", true, {}, {}};
    for (std::size_t g = 0; g < code.gauge.size(); ++g) {
        for (std::size_t f = 0; f < code.checks.size(); ++f) {
            T prod = symplectic_product(code.gauge[g], code.checks[f].alice);
            if (!is_zero(prod, tol)) {
                if (mixed.passed) {
                    mixed.detail = "G row " + one_based(g) + " and F row " + one_based(f) + " have product " +
                                   format_scalar(prod);
                }
                mixed.passed = false;
                mixed.rows.push_back(g);
            }
        }
    }
    report.entries.push_back(mixed);
    return report;
}

// Analysis ----------------------------------------------------------------

template <Scalar T>
std::size_t SymplecticBasis<T>::modes() const {
    return stabilizers.size() + ebit_pairs.size() + gauge_pairs.size() + logical_pairs.size();
}

template <Scalar T>
Matrix<T> SymplecticBasis<T>::as_matrix() const {
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> pairs;
    for (std::size_t i = 0; i < stabilizers.size(); ++i) {
        pairs.emplace_back(stabilizers[i], destabilizers[i]);
    }
    pairs.insert(pairs.end(), ebit_pairs.begin(), ebit_pairs.end());
    pairs.insert(pairs.end(), gauge_pairs.begin(), gauge_pairs.end());
    pairs.insert(pairs.end(), logical_pairs.begin(), logical_pairs.end());
    return matrix_from_pairs(pairs);
}

template <Scalar T>
SymplecticBasis<T> build_symplectic_basis(const Code<T> &code, double tol) {
    ValidationReport report = validate(code, tol);
    if (!report.all_passed()) {
        throw InputError("code is not valid:\n" + report.to_string());
    }
    const std::size_t n = code.params.n;
    SymplecticBasis<T> basis;

    for (std::size_t i = 0; i < code.checks.size(); ++i) {
        if (code.checks[i].kind == RowKind::ancilla) {
            basis.stabilizer_rows.push_back(i);
            basis.stabilizers.push_back(code.checks[i].alice);
        }
    }

    // Group ebit rows by the Bob mode they read.
    std::map<std::size_t, std::vector<std::size_t>> by_bob;
    for (std::size_t i = 0; i < code.checks.size(); ++i) {
        const auto &row = code.checks[i];
        if (row.kind == RowKind::ancilla) {
            continue;
        }
        auto part = row.kind == RowKind::ebit_z ? row.bob.p_part() : row.bob.x_part();
        by_bob[*sole_nonzero(part, tol)].push_back(i);
    }
    for (const auto &[mode, rows] : by_bob) {
        const auto &first = code.checks[rows[0]].alice;
        const auto &second = code.checks[rows[1]].alice;
        T scale = T(1) / symplectic_product(first, second);
        basis.ebit_rows.emplace_back(rows[0], rows[1]);
        basis.ebit_second_scale.push_back(scale);
        basis.ebit_pairs.emplace_back(first, second * scale);
    }

    for (std::size_t i = 0; i + 1 < code.gauge.size(); i += 2) {
        basis.gauge_pairs.emplace_back(code.gauge[i], code.gauge[i + 1]);
    }

    // Destabilizers: D = Gram^{-1} (S J) gives <S_j, D_i> = delta_ij.
    const std::size_t l = basis.stabilizers.size();
    if (l > 0) {
        Matrix<T> gram(l, l);
        for (std::size_t a = 0; a < l; ++a) {
            for (std::size_t b = 0; b < l; ++b) {
                gram(a, b) = euclid(basis.stabilizers[a], basis.stabilizers[b]);
            }
        }
        Matrix<T> ginv = inverse(gram, tol);
        std::vector<PhaseVector<T>> sj;
        for (const auto &s : basis.stabilizers) {
            std::vector<T> data(s.x_part().begin(), s.x_part().end());
            for (T &v : data) {
                v = -v;
            }
            data.insert(data.end(), s.p_part().begin(), s.p_part().end());
            sj.emplace_back(n, std::move(data));
        }
        for (std::size_t i = 0; i < l; ++i) {
            PhaseVector<T> d(n);
            for (std::size_t k = 0; k < l; ++k) {
                d.add_scaled(ginv(i, k), sj[k]);
            }
            for (const auto &[a, b] : basis.ebit_pairs) {
                d = remove_pair(std::move(d), a, b);
            }
            for (const auto &[a, b] : basis.gauge_pairs) {
                d = remove_pair(std::move(d), a, b);
            }
            basis.destabilizers.push_back(std::move(d));
        }
        std::vector<PhaseVector<T>> raw = basis.destabilizers;
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t k = i + 1; k < l; ++k) {
                basis.destabilizers[i].add_scaled(-symplectic_product(raw[i], raw[k]), basis.stabilizers[k]);
            }
        }
    }

    // Logical pairs span what remains after removing every other pair.
    SpanBuilder<T> span(2 * n, tol);
    std::vector<PhaseVector<T>> candidates;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        PhaseVector<T> w(n);
        w[i] = T(1);
        for (std::size_t s = 0; s < l; ++s) {
            w = remove_pair(std::move(w), basis.stabilizers[s], basis.destabilizers[s]);
        }
        for (const auto &[a, b] : basis.ebit_pairs) {
            w = remove_pair(std::move(w), a, b);
        }
        for (const auto &[a, b] : basis.gauge_pairs) {
            w = remove_pair(std::move(w), a, b);
        }
        if (span.add(w)) {
            candidates.push_back(std::move(w));
        }
    }
    auto gs = symplectic_gram_schmidt(candidates, tol);
    if (gs.pairs.size() != code.params.k || !gs.isotropic.empty()) {
        throw NumericalError("logical subspace has " + std::to_string(gs.pairs.size()) + " pairs, expected " +
                                 std::to_string(code.params.k),
                             0.0);
    }
    basis.logical_pairs = std::move(gs.pairs);
    return basis;
}

template <Scalar T>
Matrix<T> encoding_between(const Code<T> &from, const Code<T> &to, double tol) {
    if (!(from.params == to.params)) {
        throw InputError("codes have different parameters: " + to_string(from.params) + " vs " +
                         to_string(to.params));
    }
    Matrix<T> a = build_symplectic_basis(from, tol).as_matrix();
    Matrix<T> b = build_symplectic_basis(to, tol).as_matrix();
    return (symplectic_inverse(a) * b).transpose();
}

template <Scalar T>
std::vector<PhaseVector<T>> stabilizer_displacements(const Code<T> &code) {
    std::vector<PhaseVector<T>> out;
    for (const auto &row : code.checks) {
        if (row.kind == RowKind::ancilla) {
            out.push_back(displacement_image(row.alice));
        }
    }
    return out;
}

template <Scalar T>
std::vector<PhaseVector<T>> gauge_displacements(const Code<T> &code) {
    std::vector<PhaseVector<T>> out;
    for (const auto &g : code.gauge) {
        out.push_back(displacement_image(g));
    }
    return out;
}

template <Scalar T>
std::vector<PhaseVector<T>> detection_rows(const Code<T> &code) {
    std::vector<PhaseVector<T>> out;
    for (const auto &row : code.checks) {
        out.push_back(row.alice);
    }
    return out;
}

namespace {

template <Scalar T>
SpanBuilder<T> absorbed_span(const Code<T> &code, double tol) {
    SpanBuilder<T> span(2 * code.params.n, tol);
    for (const auto &v : stabilizer_displacements(code)) {
        span.add(v);
    }
    for (const auto &v : gauge_displacements(code)) {
        span.add(v);
    }
    return span;
}

}  // namespace

template <Scalar T>
bool correctable_pair(const Code<T> &code, const PhaseVector<T> &e, const PhaseVector<T> &e2, double tol) {
    if (e.modes() != code.params.n || e2.modes() != code.params.n) {
        throw InputError("error vectors must have " + std::to_string(code.params.n) + " modes");
    }
    PhaseVector<T> diff = e - e2;
    for (const auto &f : detection_rows(code)) {
        if (!is_zero(syndrome_pairing(f, diff), tol)) {
            return true;
        }
    }
    return absorbed_span(code, tol).contains(diff);
}

template <Scalar T>
std::vector<std::pair<std::size_t, std::size_t>> uncorrectable_mode_pairs(const Code<T> &code, double tol) {
    const std::size_t n = code.params.n;
    const auto rows = detection_rows(code);
    const SpanBuilder<T> absorbed = absorbed_span(code, tol);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::vector<PhaseVector<T>> w = {PhaseVector<T>::unit_p(n, i), PhaseVector<T>::unit_x(n, i)};
            if (j != i) {
                w.push_back(PhaseVector<T>::unit_p(n, j));
                w.push_back(PhaseVector<T>::unit_x(n, j));
            }
            Matrix<T> a(rows.size(), w.size());
            for (std::size_t f = 0; f < rows.size(); ++f) {
                for (std::size_t t = 0; t < w.size(); ++t) {
                    a(f, t) = syndrome_pairing(rows[f], w[t]);
                }
            }
            for (const auto &coeffs : nullspace(a, tol)) {
                PhaseVector<T> v(n);
                for (std::size_t t = 0; t < w.size(); ++t) {
                    v.add_scaled(coeffs[t], w[t]);
                }
                if (!absorbed.contains(v)) {
                    out.emplace_back(i, j);
                    break;
                }
            }
        }
    }
    return out;
}

template <Scalar T>
bool single_mode_correctability(const Code<T> &code, double tol) {
    return uncorrectable_mode_pairs(code, tol).empty();
}

#define CVEAO_INSTANTIATE(T)                                                                                   \
    template Code<T> canonical_code<T>(std::size_t, std::size_t, std::size_t, std::size_t);                    \
    template Code<T> canonical_code<T>(const std::vector<ModeRole> &);                                         \
    template Code<T> example_code<T>();                                                                        \
    template Code<T> example_unencoded_code<T>();                                                              \
    template Code<T> apply_symplectic<T>(const Code<T> &, const Matrix<T> &, double);                          \
    template ValidationReport validate<T>(const Code<T> &, double);                                            \
    template struct SymplecticBasis<T>;                                                                        \
    template SymplecticBasis<T> build_symplectic_basis<T>(const Code<T> &, double);                            \
    template Matrix<T> encoding_between<T>(const Code<T> &, const Code<T> &, double);                          \
    template std::vector<PhaseVector<T>> stabilizer_displacements<T>(const Code<T> &);                         \
    template std::vector<PhaseVector<T>> gauge_displacements<T>(const Code<T> &);                              \
    template std::vector<PhaseVector<T>> detection_rows<T>(const Code<T> &);                                   \
    template bool correctable_pair<T>(const Code<T> &, const PhaseVector<T> &, const PhaseVector<T> &, double); \
    template std::vector<std::pair<std::size_t, std::size_t>> uncorrectable_mode_pairs<T>(const Code<T> &,     \
                                                                                          double);             \
    template bool single_mode_correctability<T>(const Code<T> &, double);

CVEAO_INSTANTIATE(Rational)
CVEAO_INSTANTIATE(double)

#undef CVEAO_INSTANTIATE

}  // namespace cveao

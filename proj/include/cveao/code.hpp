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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/scalar.hpp"
#include "cveao/symplectic.hpp"

namespace cveao {

enum class ModeRole { information, ancilla, gauge, ebit };

/// ancilla: position-type observable on Alice's side only.
/// ebit_z / ebit_x: observable that also reads Bob's half of an entangled
/// pair through his p- (resp. x-) column.
enum class RowKind { ancilla, ebit_z, ebit_x };

std::string_view to_string(ModeRole role);
std::string_view to_string(RowKind kind);
/// Throws InputError on unknown names.
RowKind parse_row_kind(std::string_view name);

/// n Alice modes split into k information, l ancilla, r gauge and c ebit modes.
struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t r = 0;
    std::size_t c = 0;

    bool consistent() const noexcept { return n == k + l + r + c; }
    friend bool operator==(const CodeParams &, const CodeParams &) = default;
};

std::string to_string(const CodeParams &params);

template <Scalar T>
struct CheckRow {
    RowKind kind = RowKind::ancilla;
    PhaseVector<T> alice;  // n modes
    PhaseVector<T> bob;    // c modes

    /// Alice and Bob parts joined into one vector over n + c modes.
    PhaseVector<T> full() const { return alice.concat(bob); }

    template <Scalar U>
    CheckRow<U> cast() const {
        return CheckRow<U>{kind, alice.template cast<U>(), bob.template cast<U>()};
    }
    friend bool operator==(const CheckRow &, const CheckRow &) = default;
};

/// An entanglement-assisted operator code in the Heisenberg picture.
///
/// `checks` are the measured observables (the check matrix F, one row per
/// observable). `gauge` holds the gauge matrix G as consecutive conjugate
/// pairs (rows 2i, 2i+1). All invariants are checked by validate(), not by
/// construction, so malformed codes can be represented and reported on.
template <Scalar T>
struct Code {
    CodeParams params;
    std::vector<ModeRole> roles;
    std::vector<CheckRow<T>> checks;
    std::vector<PhaseVector<T>> gauge;
    std::optional<Matrix<T>> upsilon;

    std::vector<std::size_t> rows_of_kind(RowKind kind) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < checks.size(); ++i) {
            if (checks[i].kind == kind) {
                out.push_back(i);
            }
        }
        return out;
    }

    std::vector<std::size_t> modes_with_role(ModeRole role) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < roles.size(); ++i) {
            if (roles[i] == role) {
                out.push_back(i);
            }
        }
        return out;
    }

    template <Scalar U>
    Code<U> cast() const {
        Code<U> out{params, roles, {}, {}, std::nullopt};
        for (const auto &row : checks) {
            out.checks.push_back(row.template cast<U>());
        }
        for (const auto &g : gauge) {
            out.gauge.push_back(g.template cast<U>());
        }
        if (upsilon) {
            out.upsilon = upsilon->template cast<U>();
        }
        return out;
    }
};

struct ValidationEntry {
    std::string invariant;
    bool passed = true;
    std::string detail;
    std::vector<std::size_t> rows;  // 0-based offending row indices, if any
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool all_passed() const {
        for (const auto &e : entries) {
            if (!e.passed) {
                return false;
            }
        }
        return true;
    }
    const ValidationEntry *find(std::string_view invariant) const {
        for (const auto &e : entries) {
            if (e.invariant == invariant) {
                return &e;
            }
        }
        return nullptr;
    }
    /// One "PASS name" / "FAIL name: detail" line per invariant.
    std::string to_string() const;
};

// Construction ------------------------------------------------------------

/// The trivial encoder: modes ordered (information, ancilla, gauge, ebit);
/// F = l ancilla position rows, c relative-position rows and c total-momentum
/// rows; G = a (p, x) pair per gauge mode; upsilon = identity.
template <Scalar T>
Code<T> canonical_code(std::size_t k, std::size_t l, std::size_t r, std::size_t c);

/// Same construction with an explicit per-mode role assignment. Rows are
/// grouped by kind (ancilla, ebit_z, ebit_x), each group in mode order.
template <Scalar T>
Code<T> canonical_code(const std::vector<ModeRole> &roles);

/// The eight-mode code with one information mode, four ancillas, two gauge
/// modes and one ebit, in encoded form (F, G and Bob's augmented columns).
/// Its upsilon maps example_unencoded_code() onto it.
template <Scalar T>
Code<T> example_code();

/// The unencoded counterpart of example_code(), rows in the same order as the
/// encoded ones. Bob columns follow the canonical convention.
template <Scalar T>
Code<T> example_unencoded_code();

/// Alice parts of F and all of G become (row) Upsilon^T; Bob columns, kinds and
/// roles are untouched; upsilon composes as Upsilon * old.
/// Throws NotSymplecticError (carrying the residual) when Upsilon fails the check.
template <Scalar T>
Code<T> apply_symplectic(const Code<T> &code, const Matrix<T> &upsilon, double tol = kDefaultTol);

template <Scalar T>
ValidationReport validate(const Code<T> &code, double tol = kDefaultTol);

// Analysis ----------------------------------------------------------------

/// A symplectic basis of Alice's 2n-dimensional space adapted to a code.
/// Every pair (u, v) has <u, v> = 1; all other products vanish.
template <Scalar T>
struct SymplecticBasis {
    std::vector<PhaseVector<T>> stabilizers;    // Alice parts of ancilla rows, F order
    std::vector<PhaseVector<T>> destabilizers;  // <stabilizers[i], destabilizers[i]> = 1
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> ebit_pairs;
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> gauge_pairs;
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> logical_pairs;

    std::vector<std::size_t> stabilizer_rows;
    /// F rows behind each ebit pair: first = alice(rows.first),
    /// second = alice(rows.second) * second_scale.
    std::vector<std::pair<std::size_t, std::size_t>> ebit_rows;
    std::vector<T> ebit_second_scale;

    std::size_t modes() const;
    /// Rows (u_1..u_n | v_1..v_n) in the order stabilizer, ebit, gauge,
    /// logical; symplectic by construction.
    Matrix<T> as_matrix() const;
};

/// Throws InputError when the code fails validation.
template <Scalar T>
SymplecticBasis<T> build_symplectic_basis(const Code<T> &code, double tol = kDefaultTol);

/// A symplectic Upsilon with apply_symplectic(from, Upsilon) reproducing the
/// Alice parts of `to` (ebit second rows up to sign). Both codes must be valid
/// with equal parameters.
template <Scalar T>
Matrix<T> encoding_between(const Code<T> &from, const Code<T> &to, double tol = kDefaultTol);

/// Displacement directions the ancillas absorb: images of the ancilla rows.
template <Scalar T>
std::vector<PhaseVector<T>> stabilizer_displacements(const Code<T> &code);

/// Displacement directions acting only on the gauge subsystem.
template <Scalar T>
std::vector<PhaseVector<T>> gauge_displacements(const Code<T> &code);

/// Alice parts of the ancilla and ebit rows, i.e. what Bob's syndrome sees.
template <Scalar T>
std::vector<PhaseVector<T>> detection_rows(const Code<T> &code);

/// Whether the code distinguishes or identifies the errors e and e2: either
/// e - e2 shifts some measured observable, or e - e2 lies in the span of the
/// ancilla-absorbed and gauge displacements.
template <Scalar T>
bool correctable_pair(const Code<T> &code, const PhaseVector<T> &e, const PhaseVector<T> &e2,
                      double tol = kDefaultTol);

/// Mode pairs (i <= j, 0-based) for which some undetectable difference of
/// errors supported on modes i and j is not absorbed.
template <Scalar T>
std::vector<std::pair<std::size_t, std::size_t>> uncorrectable_mode_pairs(const Code<T> &code,
                                                                          double tol = kDefaultTol);

/// True iff every pair of single-mode errors is correctable.
template <Scalar T>
bool single_mode_correctability(const Code<T> &code, double tol = kDefaultTol);

}  // namespace cveao

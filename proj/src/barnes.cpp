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


#include "cveao/barnes.hpp"

#include <optional>
#include <string>

#include "cveao/errors.hpp"
#include "cveao/rng.hpp"
#include "cveao/symplectic.hpp"

namespace cveao {

namespace {

struct Slot {
    std::size_t row;
    std::size_t col;
};

class SignSearch {
   public:
    SignSearch(const std::vector<PhaseVector<Rational>> &rows, const Matrix<Rational> &target)
        : m_(rows.size()), modes_(rows.empty() ? 0 : rows[0].modes()), rows_(m_), target_(m_, std::vector<int>(m_)) {
        for (std::size_t i = 0; i < m_; ++i) {
            rows_[i].assign(2 * modes_, 0);
            for (std::size_t c = 0; c < 2 * modes_; ++c) {
                if (rows[i][c] != 0) {
                    rows_[i][c] = 1;
                    slots_.push_back({i, c});
                }
            }
            for (std::size_t j = 0; j < m_; ++j) {
                target_[i][j] = target(i, j).convert_to<int>();
            }
        }
    }

    /// Slots excluding each row's leading entry when `fix_leading`.
    std::vector<std::size_t> free_slots(bool fix_leading) const {
        std::vector<std::size_t> out;
        std::vector<bool> seen(m_, false);
        for (std::size_t s = 0; s < slots_.size(); ++s) {
            if (fix_leading && !seen[slots_[s].row]) {
                seen[slots_[s].row] = true;
                continue;
            }
            out.push_back(s);
        }
        return out;
    }

    void reset() {
        for (const Slot &s : slots_) {
            rows_[s.row][s.col] = 1;
        }
    }
    void set(std::size_t slot, int sign) { rows_[slots_[slot].row][slots_[slot].col] = sign; }
    void flip(std::size_t slot) { rows_[slots_[slot].row][slots_[slot].col] *= -1; }
    std::size_t row_of(std::size_t slot) const { return slots_[slot].row; }

    int product(std::size_t i, std::size_t j) const {
        int acc = 0;
        const auto &u = rows_[i];
        const auto &v = rows_[j];
        for (std::size_t a = 0; a < modes_; ++a) {
            acc += u[a] * v[modes_ + a] - u[modes_ + a] * v[a];
        }
        return acc;
    }

    bool satisfied() const {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = i + 1; j < m_; ++j) {
                if (product(i, j) != target_[i][j]) {
                    return false;
                }
            }
        }
        return true;
    }

    std::size_t violations() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = i + 1; j < m_; ++j) {
                n += product(i, j) != target_[i][j];
            }
        }
        return n;
    }

    /// Violations involving row i.
    std::size_t row_violations(std::size_t i) const {
        std::size_t n = 0;
        for (std::size_t j = 0; j < m_; ++j) {
            if (j != i) {
                n += product(i, j) != target_[i][j];
            }
        }
        return n;
    }

    std::vector<PhaseVector<Rational>> result() const {
        std::vector<PhaseVector<Rational>> out;
        for (const auto &r : rows_) {
            std::vector<Rational> data(r.begin(), r.end());
            out.emplace_back(modes_, std::move(data));
        }
        return out;
    }

   private:
    std::size_t m_;
    std::size_t modes_;
    std::vector<std::vector<int>> rows_;
    std::vector<std::vector<int>> target_;
    std::vector<Slot> slots_;
};

bool exhaustive(SignSearch &search, const std::vector<std::size_t> &free) {
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        search.reset();
        for (std::size_t b = 0; b < free.size(); ++b) {
            if (mask >> b & 1) {
                search.set(free[b], -1);
            }
        }
        if (search.satisfied()) {
            return true;
        }
    }
    return false;
}

bool hill_climb(SignSearch &search, const std::vector<std::size_t> &free, const BarnesOptions &options,
                std::uint64_t stream) {
    if (free.empty()) {
        search.reset();
        return search.satisfied();
    }
    SplitMix64 rng = trial_stream(options.seed, stream);
    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        search.reset();
        for (std::size_t s : free) {
            if (rng() & 1) {
                search.set(s, -1);
            }
        }
        std::size_t cost = search.violations();
        for (std::size_t step = 0; step < options.steps_per_restart && cost > 0; ++step) {
            std::optional<std::size_t> best;
            std::size_t best_cost = cost;
            for (std::size_t s : free) {
                std::size_t row = search.row_of(s);
                std::size_t before = search.row_violations(row);
                search.flip(s);
                std::size_t after = cost - before + search.row_violations(row);
                search.flip(s);
                if (after < best_cost) {
                    best_cost = after;
                    best = s;
                }
            }
            if (!best) {
                best = free[rng() % free.size()];
                std::size_t row = search.row_of(*best);
                std::size_t before = search.row_violations(row);
                search.flip(*best);
                cost = cost - before + search.row_violations(row);
                continue;
            }
            search.flip(*best);
            cost = best_cost;
        }
        if (cost == 0) {
            return true;
        }
    }
    return false;
}

void check_input(const std::vector<PhaseVector<Rational>> &rows, const Matrix<Rational> &target) {
    if (rows.empty()) {
        throw InputError("no rows to lift");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].check_same(rows[0]);
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            if (rows[i][c] != 0 && rows[i][c] != 1) {
                throw InputError("row " + std::to_string(i + 1) + " has a non-binary entry " +
                                 format_scalar(rows[i][c]));
            }
        }
    }
    if (target.rows() != rows.size() || target.cols() != rows.size()) {
        throw InputError("target is " + target.shape() + ", expected " + std::to_string(rows.size()) + "x" +
                         std::to_string(rows.size()));
    }
    for (std::size_t i = 0; i < target.rows(); ++i) {
        for (std::size_t j = 0; j < target.cols(); ++j) {
            const Rational &t = target(i, j);
            if (t != 0 && t != 1 && t != -1) {
                throw InputError("target entries must be -1, 0 or 1");
            }
            if (t != -target(j, i)) {
                throw InputError("target is not antisymmetric at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
            }
        }
    }
}

}  // namespace

Matrix<Rational> product_table(const std::vector<PhaseVector<Rational>> &rows) {
    Matrix<Rational> t(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            t(i, j) = symplectic_product(rows[i], rows[j]);
        }
    }
    return t;
}

std::vector<PhaseVector<Rational>> barnes_lift(const std::vector<PhaseVector<Rational>> &binary_rows,
                                               const Matrix<Rational> &target, const BarnesOptions &options) {
    check_input(binary_rows, target);
    if (product_table(binary_rows) == target) {
        return binary_rows;
    }
    SignSearch search(binary_rows, target);
    std::uint64_t stream = 0;
    for (bool fix_leading : {true, false}) {
        auto free = search.free_slots(fix_leading);
        bool found = free.size() <= options.exhaustive_limit ? exhaustive(search, free)
                                                             : hill_climb(search, free, options, stream++);
        if (found) {
            return search.result();
        }
    }
    throw SearchExhaustedError("no sign assignment meets the target product pattern");
}

}  // namespace cveao

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


#include <gtest/gtest.h>

#include "cveao/code.hpp"
#include "cveao/errors.hpp"
#include "test_util.hpp"

namespace cveao {
namespace {

using testing::Rng;

const ValidationEntry &entry(const ValidationReport &report, std::string_view name) {
    const ValidationEntry *e = report.find(name);
    EXPECT_NE(e, nullptr) << name;
    static const ValidationEntry missing{};
    return e ? *e : missing;
}

TEST(Canonical, SmallestEntanglementAssistedOperatorCode) {
    auto code = canonical_code<Rational>(1, 1, 1, 1);
    EXPECT_EQ(code.params, (CodeParams{4, 1, 1, 1, 1}));
    ASSERT_EQ(code.checks.size(), 3u);
    ASSERT_EQ(code.gauge.size(), 2u);
    EXPECT_EQ(code.checks[0].kind, RowKind::ancilla);
    EXPECT_EQ(code.checks[0].alice, PhaseVector<Rational>::unit_p(4, 1));
    EXPECT_EQ(code.checks[1].kind, RowKind::ebit_z);
    EXPECT_EQ(code.checks[1].alice, PhaseVector<Rational>::unit_p(4, 3));
    EXPECT_EQ(code.checks[1].bob, -PhaseVector<Rational>::unit_p(1, 0));
    EXPECT_EQ(code.checks[2].kind, RowKind::ebit_x);
    EXPECT_EQ(code.checks[2].alice, PhaseVector<Rational>::unit_x(4, 3));
    EXPECT_EQ(code.checks[2].bob, PhaseVector<Rational>::unit_x(1, 0));
    EXPECT_EQ(code.gauge[0], PhaseVector<Rational>::unit_p(4, 2));
    EXPECT_EQ(code.gauge[1], PhaseVector<Rational>::unit_x(4, 2));
    EXPECT_TRUE(validate(code).all_passed()) << validate(code).to_string();
}

TEST(Canonical, InformationOnly) {
    auto code = canonical_code<Rational>(1, 0, 0, 0);
    EXPECT_TRUE(code.checks.empty());
    EXPECT_TRUE(code.gauge.empty());
    EXPECT_TRUE(validate(code).all_passed());
}

TEST(Canonical, RandomParamsValidate) {
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
        auto p = testing::random_params(rng, 10);
        auto code = canonical_code<double>(p.k, p.l, p.r, p.c);
        EXPECT_EQ(code.checks.size(), p.l + 2 * p.c);
        EXPECT_EQ(code.gauge.size(), 2 * p.r);
        EXPECT_TRUE(validate(code).all_passed());
    }
}

TEST(Canonical, ExplicitRoles) {
    using R = ModeRole;
    auto code = canonical_code<Rational>({R::ebit, R::information, R::gauge, R::ancilla});
    EXPECT_EQ(code.params, (CodeParams{4, 1, 1, 1, 1}));
    ASSERT_EQ(code.checks.size(), 3u);
    EXPECT_EQ(code.checks[0].alice, PhaseVector<Rational>::unit_p(4, 3));
    EXPECT_EQ(code.checks[1].alice, PhaseVector<Rational>::unit_p(4, 0));
    EXPECT_EQ(code.gauge[0], PhaseVector<Rational>::unit_p(4, 2));
    EXPECT_TRUE(validate(code).all_passed());
}

TEST(Example, ValidatesAndHasUpsilon) {
    auto code = example_code<Rational>();
    EXPECT_TRUE(validate(code).all_passed()) << validate(code).to_string();
    ASSERT_TRUE(code.upsilon.has_value());
    EXPECT_TRUE(is_symplectic(*code.upsilon, 0.0));
    EXPECT_EQ(code.modes_with_role(ModeRole::information), std::vector<std::size_t>{7});
    EXPECT_EQ(code.rows_of_kind(RowKind::ebit_x), std::vector<std::size_t>{3});
    EXPECT_EQ(code.rows_of_kind(RowKind::ebit_z), std::vector<std::size_t>{4});
    EXPECT_TRUE(validate(example_unencoded_code<Rational>()).all_passed());
    EXPECT_TRUE(validate(example_code<double>()).all_passed());
}

TEST(Example, UpsilonMapsUnencodedRows) {
    auto from = example_unencoded_code<Rational>();
    auto to = example_code<Rational>();
    auto mapped = apply_symplectic(from, *to.upsilon);
    for (std::size_t r = 0; r < to.checks.size(); ++r) {
        EXPECT_EQ(mapped.checks[r].alice, to.checks[r].alice) << "row " << r;
    }
    for (std::size_t r = 0; r < to.gauge.size(); ++r) {
        EXPECT_EQ(mapped.gauge[r], to.gauge[r]) << "gauge row " << r;
    }
}

TEST(Validate, CorruptedBobSignNamesRowPair) {
    auto code = example_code<Rational>();
    code.checks[3].bob.x(0) = -1;
    auto report = validate(code);
    EXPECT_FALSE(report.all_passed());
    const auto &comm = entry(report, "check_commutation");
    EXPECT_FALSE(comm.passed);
    EXPECT_NE(comm.detail.find("rows 4,5"), std::string::npos) << comm.detail;
    EXPECT_EQ(comm.rows, (std::vector<std::size_t>{3, 4}));
}

TEST(Validate, CorruptedAliceEntry) {
    auto code = example_code<Rational>();
    code.checks[0].alice.p(1) = 1;
    EXPECT_FALSE(entry(validate(code), "check_commutation").passed);
}

TEST(Validate, InconsistentParameters) {
    auto code = canonical_code<Rational>(1, 1, 0, 0);
    code.params.k = 2;
    auto report = validate(code);
    EXPECT_FALSE(entry(report, "parameters").passed);
    EXPECT_NE(report.to_string().find("FAIL parameters"), std::string::npos);
}

TEST(Validate, DependentRows) {
    auto code = canonical_code<Rational>(1, 2, 0, 0);
    code.checks[1].alice = code.checks[0].alice + code.checks[0].alice;
    auto report = validate(code);
    EXPECT_TRUE(entry(report, "check_commutation").passed);
    EXPECT_FALSE(entry(report, "check_rank").passed);
}

TEST(Validate, GaugePairing) {
    auto code = canonical_code<Rational>(1, 0, 1, 0);
    code.gauge[1] = PhaseVector<Rational>::unit_p(2, 1);
    EXPECT_FALSE(entry(validate(code), "gauge_pairing").passed);
}

TEST(Validate, GaugeMustCommuteWithChecks) {
    auto code = canonical_code<Rational>(1, 1, 1, 0);
    code.gauge[1] = code.gauge[1] + PhaseVector<Rational>::unit_x(3, 1);
    EXPECT_FALSE(entry(validate(code), "gauge_check_commutation").passed);
}

TEST(Validate, BobPattern) {
    auto code = canonical_code<Rational>(1, 0, 0, 1);
    code.checks[0].bob = PhaseVector<Rational>::unit_x(1, 0);
    EXPECT_FALSE(entry(validate(code), "bob_blocks").passed);
}

TEST(Validate, WrongShapes) {
    auto code = canonical_code<Rational>(1, 1, 0, 0);
    code.checks[0].alice = PhaseVector<Rational>(3);
    EXPECT_FALSE(entry(validate(code), "shapes").passed);
}

TEST(Transform, RoundTripExact) {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        auto p = testing::random_params(rng, 6);
        auto code = canonical_code<Rational>(p.k, p.l, p.r, p.c);
        auto u = testing::random_rational_symplectic(p.n(), rng);
        auto moved = apply_symplectic(code, u);
        EXPECT_TRUE(validate(moved).all_passed());
        EXPECT_EQ(*moved.upsilon, u);
        auto back = apply_symplectic(moved, symplectic_inverse(u));
        EXPECT_EQ(back.checks, code.checks);
        EXPECT_EQ(back.gauge, code.gauge);
        EXPECT_EQ(*back.upsilon, Matrix<Rational>::identity(2 * p.n()));
    }
}

TEST(Transform, RejectsBadMatrices) {
    auto code = canonical_code<Rational>(1, 1, 0, 0);
    EXPECT_THROW(apply_symplectic(code, Matrix<Rational>::identity(2)), InputError);
    Matrix<Rational> bad = Matrix<Rational>::identity(4);
    bad(0, 1) = 1;
    try {
        apply_symplectic(code, bad);
        FAIL() << "expected NotSymplecticError";
    } catch (const NotSymplecticError &e) {
        EXPECT_GT(e.residual(), 0.5);
    }
}

TEST(Basis, SymplecticForRandomCodes) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto p = testing::random_params(rng, 7);
        auto code = apply_symplectic(canonical_code<Rational>(p.k, p.l, p.r, p.c),
                                     testing::random_rational_symplectic(p.n(), rng));
        auto basis = build_symplectic_basis(code);
        EXPECT_EQ(basis.modes(), p.n());
        EXPECT_EQ(basis.stabilizers.size(), p.l);
        EXPECT_EQ(basis.ebit_pairs.size(), p.c);
        EXPECT_EQ(basis.gauge_pairs.size(), p.r);
        EXPECT_EQ(basis.logical_pairs.size(), p.k);
        EXPECT_TRUE(is_symplectic(basis.as_matrix(), 0.0));
    }
}

TEST(Basis, ExampleExactAndFloat) {
    EXPECT_TRUE(is_symplectic(build_symplectic_basis(example_code<Rational>()).as_matrix(), 0.0));
    EXPECT_LT(symplectic_residual(build_symplectic_basis(example_code<double>()).as_matrix()), 1e-12);
}

TEST(Basis, InvalidCodeThrows) {
    auto code = example_code<Rational>();
    code.checks[3].bob.x(0) = -1;
    EXPECT_THROW(build_symplectic_basis(code), InputError);
}

TEST(Encoding, BetweenRandomCodes) {
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        auto p = testing::random_params(rng, 6);
        auto from = canonical_code<Rational>(p.k, p.l, p.r, p.c);
        auto to = apply_symplectic(from, testing::random_rational_symplectic(p.n(), rng));
        auto u = encoding_between(from, to);
        ASSERT_TRUE(is_symplectic(u, 0.0));
        auto mapped = apply_symplectic(from, u);
        for (std::size_t r = 0; r < to.checks.size(); ++r) {
            if (to.checks[r].kind == RowKind::ebit_x) {
                EXPECT_TRUE(mapped.checks[r].alice == to.checks[r].alice ||
                            mapped.checks[r].alice == -to.checks[r].alice);
            } else {
                EXPECT_EQ(mapped.checks[r].alice, to.checks[r].alice);
            }
        }
        EXPECT_EQ(mapped.gauge, to.gauge);
    }
}

TEST(Correctability, ExampleCorrectsSingleModeErrors) {
    EXPECT_TRUE(single_mode_correctability(example_code<Rational>()));
    EXPECT_TRUE(single_mode_correctability(example_code<double>()));
}

TEST(Correctability, ExampleNeedsItsGaugeFreedom) {
    auto code = example_code<Rational>();
    code.gauge.clear();
    EXPECT_FALSE(single_mode_correctability(code));
}

TEST(Correctability, UnprotectedInformationModeFails) {
    auto code = canonical_code<Rational>(1, 1, 0, 0);
    auto pairs = uncorrectable_mode_pairs(code);
    ASSERT_FALSE(pairs.empty());
    EXPECT_EQ(pairs.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Correctability, PairPredicate) {
    auto code = canonical_code<Rational>(1, 1, 1, 0);
    const std::size_t n = 3;
    auto zero = PhaseVector<Rational>(n);
    EXPECT_TRUE(correctable_pair(code, zero, zero));
    EXPECT_TRUE(correctable_pair(code, PhaseVector<Rational>::unit_x(n, 1), zero));   // detected
    EXPECT_TRUE(correctable_pair(code, PhaseVector<Rational>::unit_p(n, 1), zero));   // absorbed by the ancilla
    EXPECT_TRUE(correctable_pair(code, PhaseVector<Rational>::unit_x(n, 2), zero));   // gauge
    EXPECT_FALSE(correctable_pair(code, PhaseVector<Rational>::unit_p(n, 0), zero));  // logical
    EXPECT_THROW(correctable_pair(code, PhaseVector<Rational>(2), zero), InputError);
}

TEST(Correctability, AgreesWithOracle) {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        auto p = testing::random_params(rng, 5);
        auto code = apply_symplectic(canonical_code<Rational>(p.k, p.l, p.r, p.c),
                                     testing::random_rational_symplectic(p.n(), rng));
        auto e = testing::random_rational_vector(p.n(), rng);
        PhaseVector<Rational> e2 = e;
        if (t % 2 == 0 && !code.gauge.empty()) {
            e2 = e + displacement_image(code.gauge[0]);
        } else if (t % 3 == 0) {
            e2 = testing::random_rational_vector(p.n(), rng);
        }
        EXPECT_EQ(correctable_pair(code, e, e2), testing::oracle_correctable(code, e, e2));
    }
}

TEST(Displacements, ImagesOfRows) {
    auto code = example_code<Rational>();
    auto stab = stabilizer_displacements(code);
    ASSERT_EQ(stab.size(), 4u);
    EXPECT_EQ(stab[0], displacement_image(code.checks[0].alice));
    EXPECT_EQ(gauge_displacements(code).size(), 4u);
    EXPECT_EQ(detection_rows(code).size(), 6u);
}

TEST(Names, RoundTrip) {
    for (RowKind k : {RowKind::ancilla, RowKind::ebit_z, RowKind::ebit_x}) {
        EXPECT_EQ(parse_row_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_row_kind("bogus"), InputError);
    EXPECT_EQ(to_string(ModeRole::gauge), "gauge");
}

}  // namespace
}  // namespace cveao

// Copyright 2026 The stabtel Authors
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

#include "stabtel/zd_linalg.h"

#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace stabtel;

namespace {

ResidueMatrix matrix_of(std::vector<std::vector<int64_t>> rows, int64_t m) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::vector<ResidueVector> vs;
    for (auto &r : rows) {
        vs.emplace_back(r, m);
    }
    return ResidueMatrix::from_rows(vs, cols, m);
}

// Every vector reachable as a Z_m combination of the rows.
std::set<std::vector<int64_t>> brute_force_span(const ResidueMatrix &a) {
    int64_t m = a.modulus();
    std::set<std::vector<int64_t>> out;
    std::vector<int64_t> coeffs(a.rows(), 0);
    while (true) {
        std::vector<int64_t> v(a.cols(), 0);
        for (std::size_t r = 0; r < a.rows(); r++) {
            for (std::size_t c = 0; c < a.cols(); c++) {
                v[c] = mod_reduce(v[c] + coeffs[r] * a.at(r, c), m);
            }
        }
        out.insert(v);
        std::size_t k = 0;
        while (k < coeffs.size() && ++coeffs[k] == m) {
            coeffs[k++] = 0;
        }
        if (k == coeffs.size()) {
            break;
        }
    }
    return out;
}

ResidueMatrix random_matrix(std::mt19937 &rng, std::size_t rows, std::size_t cols, int64_t m) {
    ResidueMatrix a(rows, cols, m);
    std::uniform_int_distribution<int64_t> dist(0, m - 1);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            a.set(r, c, dist(rng));
        }
    }
    return a;
}

// Applies random elementary operations that preserve the row span.
ResidueMatrix scramble_rows(std::mt19937 &rng, const ResidueMatrix &a) {
    int64_t m = a.modulus();
    std::vector<ResidueVector> rows;
    for (std::size_t r = 0; r < a.rows(); r++) {
        rows.push_back(a.row(r));
    }
    if (rows.empty()) {
        return a;
    }
    std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
    std::uniform_int_distribution<int64_t> coef(0, m - 1);
    for (int step = 0; step < 8; step++) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i != j) {
            rows[i] = rows[i] + rows[j].scaled(coef(rng));
        }
        int64_t u = coef(rng);
        if (mod_inverse(u, m)) {
            rows[i] = rows[i].scaled(u);
        }
    }
    auto extra = ResidueVector::zeros(a.cols(), m);
    for (auto &r : rows) {
        extra = extra + r.scaled(coef(rng));
    }
    rows.push_back(extra);
    return ResidueMatrix::from_rows(rows, a.cols(), m);
}

}  // namespace

TEST(zd_linalg, mod_helpers) {
    EXPECT_EQ(mod_reduce(-1, 6), 5);
    EXPECT_EQ(mod_reduce(13, 6), 1);
    EXPECT_EQ(mod_inverse(5, 6), 5);
    EXPECT_EQ(mod_inverse(2, 6), std::nullopt);
    for (int64_t m : {2, 3, 4, 6, 8, 12}) {
        for (int64_t a = 0; a < m; a++) {
            int64_t u = normalizing_unit(a, m);
            ASSERT_TRUE(mod_inverse(u, m).has_value());
            EXPECT_EQ(mod_reduce(u * a, m), a == 0 ? 0 : std::gcd(a, m));
        }
    }
}

TEST(zd_linalg, solve_trivial_zero_solution) {
    auto x = solve_linear_mod(matrix_of({{1}}, 3), ResidueVector({0}, 3));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, ResidueVector({0}, 3));
}

TEST(zd_linalg, solve_zero_divisor_unsolvable) {
    EXPECT_EQ(solve_linear_mod(matrix_of({{2}}, 4), ResidueVector({1}, 4)), std::nullopt);
}

TEST(zd_linalg, solve_composite_two_by_two) {
    auto a = matrix_of({{2, 3}, {1, 1}}, 6);
    ResidueVector b({1, 0}, 6);
    // Brute force over all 36 pairs: (5, 1) is the unique solution.
    std::vector<std::pair<int64_t, int64_t>> solutions;
    for (int64_t x1 = 0; x1 < 6; x1++) {
        for (int64_t x2 = 0; x2 < 6; x2++) {
            if (mod_reduce(2 * x1 + 3 * x2, 6) == 1 && mod_reduce(x1 + x2, 6) == 0) {
                solutions.emplace_back(x1, x2);
            }
        }
    }
    ASSERT_EQ(solutions.size(), 1u);
    auto x = solve_linear_mod(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a.multiply(*x), b);
    EXPECT_EQ((*x)[0], solutions[0].first);
    EXPECT_EQ((*x)[1], solutions[0].second);
}

TEST(zd_linalg, solve_rejects_mismatches) {
    EXPECT_THROW(solve_linear_mod(matrix_of({{1}}, 3), ResidueVector({1}, 4)), std::invalid_argument);
    EXPECT_THROW(solve_linear_mod(matrix_of({{1, 2}}, 3), ResidueVector({1, 1}, 3)), std::invalid_argument);
}

TEST(zd_linalg, canonical_identity_mod3) {
    auto id = matrix_of({{1, 0}, {0, 1}}, 3);
    EXPECT_EQ(row_span_rank_profile(id).canonical, id);
}

TEST(zd_linalg, canonical_zero_divisor_rows_mod4) {
    auto a = matrix_of({{2, 0}, {1, 0}}, 4);
    auto profile = row_span_rank_profile(a);
    auto span = brute_force_span(profile.canonical);
    std::set<std::vector<int64_t>> expected{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    EXPECT_EQ(span, expected);
    EXPECT_EQ(profile.canonical, matrix_of({{1, 0}}, 4));
    EXPECT_EQ(profile.span_size(), 4u);
}

TEST(zd_linalg, canonical_dependent_rows_mod3) {
    auto profile = row_span_rank_profile(matrix_of({{1, 1}, {2, 2}}, 3));
    EXPECT_EQ(profile.canonical, matrix_of({{1, 1}}, 3));
}

TEST(zd_linalg, howell_property_needs_annihilator_rows) {
    // Span of (2, 1) mod 4 contains (0, 2); a plain echelon form would miss it.
    auto profile = row_span_rank_profile(matrix_of({{2, 1}}, 4));
    EXPECT_EQ(profile.canonical, matrix_of({{2, 1}, {0, 2}}, 4));
    EXPECT_TRUE(profile.contains(ResidueVector({0, 2}, 4)));
    EXPECT_FALSE(profile.contains(ResidueVector({0, 1}, 4)));
}

TEST(zd_linalg, canonical_form_matches_brute_force_spans) {
    std::mt19937 rng(20260301);
    for (int64_t m : {2, 3, 4, 6}) {
        for (int trial = 0; trial < 150; trial++) {
            std::size_t rows = 1 + rng() % 4;
            std::size_t cols = 1 + rng() % 4;
            auto a = random_matrix(rng, rows, cols, m);
            auto b = (trial % 2 == 0) ? scramble_rows(rng, a) : random_matrix(rng, 1 + rng() % 4, cols, m);
            if (b.rows() > 4) {
                b = ResidueMatrix::from_rows({b.row(0), b.row(1), b.row(2), b.row(4)}, cols, m);
            }
            auto pa = row_span_rank_profile(a);
            auto pb = row_span_rank_profile(b);
            auto span_a = brute_force_span(a);
            bool same_span = span_a == brute_force_span(b);
            ASSERT_EQ(pa.canonical == pb.canonical, same_span) << a.str() << "vs\n" << b.str();
            ASSERT_EQ(brute_force_span(pa.canonical), span_a);
            ASSERT_EQ(pa.span_size(), span_a.size());
            ASSERT_EQ(row_span_rank_profile(pa.canonical).canonical, pa.canonical);
            for (const auto &v : brute_force_span(b)) {
                ASSERT_EQ(pa.contains(ResidueVector(v, m)), span_a.count(v) == 1);
            }
        }
    }
}

TEST(zd_linalg, solve_matches_brute_force_solvability) {
    std::mt19937 rng(7);
    for (int64_t m : {2, 3, 4, 6}) {
        for (int trial = 0; trial < 120; trial++) {
            std::size_t rows = 1 + rng() % 4;
            std::size_t cols = 1 + rng() % 4;
            auto a = random_matrix(rng, rows, cols, m);
            auto column_span = brute_force_span(a.transposed());
            auto b = ResidueVector::zeros(rows, m);
            for (std::size_t r = 0; r < rows; r++) {
                b.set(r, static_cast<int64_t>(rng() % m));
            }
            auto x = solve_linear_mod(a, b);
            std::vector<int64_t> target(b.entries().begin(), b.entries().end());
            ASSERT_EQ(x.has_value(), column_span.count(target) == 1);
            if (x) {
                ASSERT_EQ(a.multiply(*x), b);
            }
        }
    }
}

TEST(zd_linalg, left_kernel_matches_brute_force) {
    std::mt19937 rng(99);
    for (int64_t m : {2, 4, 6}) {
        for (int trial = 0; trial < 60; trial++) {
            std::size_t rows = 1 + rng() % 4;
            std::size_t cols = 1 + rng() % 3;
            auto a = random_matrix(rng, rows, cols, m);
            auto kernel = left_kernel(a);
            std::set<std::vector<int64_t>> expected;
            ResidueMatrix id(rows, rows, m);
            for (std::size_t r = 0; r < rows; r++) {
                id.set(r, r, 1);
            }
            for (const auto &y : brute_force_span(id)) {
                if (a.transposed().multiply(ResidueVector(y, m)).is_zero()) {
                    expected.insert(y);
                }
            }
            std::set<std::vector<int64_t>> got{std::vector<int64_t>(rows, 0)};
            if (!kernel.empty()) {
                got = brute_force_span(ResidueMatrix::from_rows(kernel, rows, m));
            }
            ASSERT_EQ(got, expected);
        }
    }
}

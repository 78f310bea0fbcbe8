// Copyright 2026 The stilde Authors
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

#include "stilde/ringlinalg.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace stilde;

namespace {

IntMatrix random_matrix(size_t r, size_t c, std::mt19937_64 &rng, int range) {
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; i++) {
        for (size_t j = 0; j < c; j++) {
            m(i, j) = (long)((int64_t)(rng() % (2 * range + 1)) - range);
        }
    }
    return m;
}

void expect_valid_smith(const IntMatrix &a, const SmithDecomposition &s) {
    EXPECT_EQ(s.U * a * s.V, s.D);
    EXPECT_TRUE(s.D.is_diagonal());
    EXPECT_EQ(abs(s.U.determinant()), 1);
    EXPECT_EQ(abs(s.V.determinant()), 1);
    auto diag = s.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); i++) {
        EXPECT_GE(diag[i], 0);
        if (diag[i] == 0) {
            EXPECT_EQ(diag[i + 1], 0);
        } else {
            EXPECT_EQ(diag[i + 1] % diag[i], 0) << "divisibility chain broken at " << i;
        }
    }
}

/// Number of v in prod Z_{m_j} with A v = 0 (row i mod row_moduli[i]), by enumeration.
int64_t brute_kernel_size(const std::vector<std::vector<int64_t>> &a, const std::vector<int64_t> &cm, const std::vector<int64_t> &rm) {
    int64_t total = 1;
    for (int64_t m : cm) {
        total *= m;
    }
    int64_t count = 0;
    std::vector<int64_t> v(cm.size());
    for (int64_t k = 0; k < total; k++) {
        int64_t x = k;
        for (size_t j = 0; j < cm.size(); j++) {
            v[j] = x % cm[j];
            x /= cm[j];
        }
        bool ok = true;
        for (size_t i = 0; i < a.size() && ok; i++) {
            int64_t acc = 0;
            for (size_t j = 0; j < cm.size(); j++) {
                acc += a[i][j] * v[j];
            }
            ok = mod64(acc, rm[i]) == 0;
        }
        count += ok;
    }
    return count;
}

}  // namespace

TEST(ringlinalg, smith_textbook_example) {
    IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto s = smith_normal_form(a);
    expect_valid_smith(a, s);
    auto d = s.diagonal();
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d[0], 2);
    EXPECT_EQ(d[1], 6);
    EXPECT_EQ(d[2], 12);
}

TEST(ringlinalg, smith_zero_and_rectangular) {
    IntMatrix z(2, 3);
    auto s = smith_normal_form(z);
    expect_valid_smith(z, s);
    for (const auto &v : s.diagonal()) {
        EXPECT_EQ(v, 0);
    }
    IntMatrix r{{4, 6}, {6, 9}, {2, 3}};
    auto t = smith_normal_form(r);
    expect_valid_smith(r, t);
    EXPECT_EQ(t.diagonal()[0], 1);
    EXPECT_EQ(t.diagonal()[1], 0);
}

TEST(ringlinalg, smith_random_property) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; trial++) {
        size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMatrix a = random_matrix(r, c, rng, 9);
        auto s = smith_normal_form(a);
        expect_valid_smith(a, s);
        if (r == c) {
            BigInt prod = 1;
            for (const auto &v : s.diagonal()) {
                prod *= v;
            }
            EXPECT_EQ(prod, abs(a.determinant()));
        }
    }
}

TEST(ringlinalg, modular_helpers) {
    EXPECT_EQ(gcd64(12, 18), 6);
    EXPECT_EQ(lcm64(4, 6), 12);
    EXPECT_EQ(lcm_of({2, 3, 4}), 12);
    EXPECT_EQ(mod64(-1, 5), 4);
    int64_t s, t;
    int64_t g = xgcd64(240, 46, s, t);
    EXPECT_EQ(g, 2);
    EXPECT_EQ(240 * s + 46 * t, 2);
    for (int64_t m : {5, 7, 12, 97}) {
        for (int64_t a = 1; a < m; a++) {
            if (gcd64(a, m) == 1) {
                EXPECT_EQ(mod64(a * inverse_mod(a, m), m), 1);
            }
        }
    }
    Zmod z(7);
    EXPECT_EQ(z.mul(5, 6), 2);
    EXPECT_EQ(z.sub(2, 5), 4);
    EXPECT_EQ(z.neg(3), 4);
}

TEST(ringlinalg, zmod_large_modulus) {
    int64_t m = (int64_t(1) << 40) + 15;
    Zmod z(m);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; k++) {
        int64_t a = (int64_t)(rng() % m), b = (int64_t)(rng() % m);
        EXPECT_EQ(z.mul(a, b), (int64_t)(((__int128)a * b) % m));
    }
}

TEST(ringlinalg, kernel_mod_matches_enumeration) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; trial++) {
        size_t cols = 1 + rng() % 4, rows = rng() % 4;
        std::vector<int64_t> cm, rm;
        for (size_t j = 0; j < cols; j++) {
            cm.push_back(std::vector<int64_t>{2, 3, 4, 6}[rng() % 4]);
        }
        int64_t L = lcm_of(cm);
        std::vector<std::vector<int64_t>> a;
        for (size_t i = 0; i < rows; i++) {
            // A row is well defined on prod Z_{m_j} when m_row divides a_ij * m_j.
            int64_t m = std::vector<int64_t>{2, 3, 4, 6, 12}[rng() % 5];
            std::vector<int64_t> row(cols);
            for (size_t j = 0; j < cols; j++) {
                int64_t unit = m / gcd64(m, cm[j]);
                row[j] = unit * (int64_t)(rng() % m) % m;
            }
            a.push_back(row);
            rm.push_back(m);
        }
        (void)L;
        auto k = kernel_mod(a, cm, rm);
        EXPECT_EQ(k.order(), brute_kernel_size(a, cm, rm));
        for (const auto &g : k.generators) {
            for (size_t i = 0; i < a.size(); i++) {
                int64_t acc = 0;
                for (size_t j = 0; j < cols; j++) {
                    acc += a[i][j] * g[j];
                }
                EXPECT_EQ(mod64(acc, rm[i]), 0);
            }
        }
    }
}

TEST(ringlinalg, coordinates_round_trip) {
    std::vector<std::vector<int64_t>> a{{1, 1, 0}, {0, 2, 2}};
    auto k = kernel_mod(a, {4, 4, 4}, {4, 4});
    for (int64_t c = 0; c < 4; c++) {
        std::vector<int64_t> coords(k.generators.size(), 0);
        if (!coords.empty()) {
            coords[0] = c;
        }
        auto v = k.element(coords);
        auto back = k.coordinates(v);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(k.element(*back), v);
    }
    EXPECT_FALSE(k.contains({1, 0, 0}));
}

TEST(ringlinalg, quotient_structure_small_groups) {
    // Z_4 / <2> = Z_2.
    auto q = quotient_structure({{1}}, {{2}}, {4});
    EXPECT_EQ(q.invariant_factors, std::vector<int64_t>({2}));
    // Z_2 x Z_4 / <(1, 2)> has order 4 and is cyclic: (0, 1) has order 4.
    auto r = quotient_structure({{1, 0}, {0, 1}}, {{1, 2}}, {2, 4});
    EXPECT_EQ(r.order(), 4);
    EXPECT_EQ(r.invariant_factors, std::vector<int64_t>({4}));
    // Z_6 / trivial = Z_6.
    auto s = quotient_structure({{1}}, {}, {6});
    EXPECT_EQ(s.order(), 6);
}

TEST(ringlinalg, smith_mod_diagonalizes) {
    std::mt19937_64 rng(11);
    for (int64_t m : {4, 6, 12}) {
        ModMatrix a(3, 4);
        for (auto &v : a.data) {
            v = (int64_t)(rng() % m);
        }
        ModSmith s = smith_normal_form_mod(a, m, SmithTracking{true, true, true});
        // U A V is diagonal mod m.
        for (size_t i = 0; i < 3; i++) {
            for (size_t j = 0; j < 4; j++) {
                int64_t acc = 0;
                for (size_t k = 0; k < 3; k++) {
                    for (size_t l = 0; l < 4; l++) {
                        acc = mod64(acc + s.U.at(i, k) * a.at(k, l) % m * s.V.at(l, j), m);
                    }
                }
                int64_t expect = (i == j && i < s.diagonal.size()) ? mod64(s.diagonal[i], m) : 0;
                EXPECT_EQ(acc, expect) << "entry " << i << "," << j << " mod " << m;
            }
        }
    }
}

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

#include "stilde/cyclo.h"

#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace stilde;

namespace {

Cyclo random_cyclo(std::mt19937_64 &rng, int64_t n) {
    Cyclo c;
    for (int k = 0; k < 3; k++) {
        Rational q((long)(rng() % 7) - 3, (long)(rng() % 4) + 1);
        q.canonicalize();
        c += Cyclo::root_of_unity((int64_t)(rng() % n), n).scaled(q);
    }
    return c;
}

}  // namespace

TEST(cyclo, sum_of_roots_vanishes) {
    for (int64_t n = 2; n <= 12; n++) {
        Cyclo s;
        for (int64_t k = 0; k < n; k++) {
            s += Cyclo::root_of_unity(k, n);
        }
        EXPECT_TRUE(s.is_zero()) << "n = " << n;
    }
}

TEST(cyclo, roots_multiply_by_adding_exponents) {
    for (int64_t n : {3, 4, 6, 10}) {
        for (int64_t a = 0; a < n; a++) {
            for (int64_t b = 0; b < n; b++) {
                EXPECT_EQ(Cyclo::root_of_unity(a, n) * Cyclo::root_of_unity(b, n), Cyclo::root_of_unity(a + b, n));
            }
        }
    }
    EXPECT_EQ(Cyclo::root_of_unity(1, 2), Cyclo(-1));
    EXPECT_EQ(Cyclo::root_of_unity(2, 4), Cyclo(-1));
    EXPECT_EQ(Cyclo::root_of_unity(3, 6), Cyclo(-1));
}

TEST(cyclo, mixed_orders_combine) {
    // zeta_3 = zeta_6^2, and i * i = -1 through zeta_12.
    EXPECT_EQ(Cyclo::root_of_unity(1, 3), Cyclo::root_of_unity(2, 6));
    EXPECT_EQ(Cyclo::root_of_unity(1, 4) * Cyclo::root_of_unity(1, 4), Cyclo(-1));
    Cyclo x = Cyclo::root_of_unity(1, 4) + Cyclo::root_of_unity(1, 3);
    EXPECT_NEAR(std::abs(x.to_complex() - (std::complex<double>(0, 1) + std::polar(1.0, 2 * std::numbers::pi / 3))), 0, 1e-12);
}

TEST(cyclo, matches_complex_arithmetic) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; trial++) {
        int64_t n = std::vector<int64_t>{2, 3, 4, 5, 6, 8, 12}[rng() % 7];
        Cyclo a = random_cyclo(rng, n), b = random_cyclo(rng, 2 * n);
        auto za = a.to_complex(), zb = b.to_complex();
        EXPECT_NEAR(std::abs((a * b).to_complex() - za * zb), 0, 1e-9);
        EXPECT_NEAR(std::abs((a + b).to_complex() - (za + zb)), 0, 1e-9);
        EXPECT_NEAR(std::abs((a - b).to_complex() - (za - zb)), 0, 1e-9);
        EXPECT_NEAR(std::abs(a.conj().to_complex() - std::conj(za)), 0, 1e-9);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) - b, a);
    }
}

TEST(cyclo, rational_detection) {
    Cyclo r = Cyclo::root_of_unity(1, 3) + Cyclo::root_of_unity(2, 3);
    ASSERT_TRUE(r.as_rational().has_value());
    EXPECT_EQ(*r.as_rational(), Rational(-1));
    EXPECT_FALSE(Cyclo::root_of_unity(1, 3).as_rational().has_value());
    EXPECT_EQ((Cyclo::root_of_unity(1, 5) * Cyclo::root_of_unity(1, 5).conj()), Cyclo(1));
}

TEST(cyclo, galois_and_order_changes) {
    Cyclo z = Cyclo::root_of_unity(1, 5);
    EXPECT_EQ(z.galois(2), Cyclo::root_of_unity(2, 5));
    EXPECT_EQ(z.galois(4), z.conj());
    Cyclo w = z.with_order(10);
    EXPECT_EQ(w, z);
    EXPECT_EQ(w.order(), 10);
}

TEST(cyclo, from_root_counts_and_powers) {
    // 1 + 2 zeta_4 + zeta_4^3 scaled by 1/2.
    Cyclo c = Cyclo::from_root_counts({1, 2, 0, 1}, Rational(1, 2));
    Cyclo expect = (Cyclo(1) + Cyclo::root_of_unity(1, 4).scaled(2) + Cyclo::root_of_unity(3, 4)).scaled(Rational(1, 2));
    EXPECT_EQ(c, expect);
    Cyclo p = Cyclo::from_powers({Rational(1), Rational(0), Rational(-1, 3)}, 3);
    EXPECT_EQ(p, Cyclo(1) - Cyclo::root_of_unity(2, 3).scaled(Rational(1, 3)));
}

TEST(cyclo, euler_phi_and_cyclotomic_degrees) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(12), 4);
    EXPECT_EQ(euler_phi(7), 6);
    for (int64_t n = 1; n <= 30; n++) {
        EXPECT_EQ((int64_t)cyclotomic_polynomial(n).size() - 1, euler_phi(n)) << n;
    }
    // Phi_6 = x^2 - x + 1.
    EXPECT_EQ(cyclotomic_polynomial(6), std::vector<int64_t>({1, -1, 1}));
}

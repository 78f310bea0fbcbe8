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

#include "stilde/twist.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace stilde;

namespace {

struct Setup {
    ModelPtr model;
    std::shared_ptr<StabilizerState> state;
    AnnulusPair pair;
    LogicalAlgebra left;
    LogicalAlgebra right;
};

/// L = 12 torus, annuli of radius 4 and thickness 0.5 with centers 2 apart (diamonds 5 apart).
Setup setup(ModelPtr model) {
    Setup s;
    s.model = model;
    s.state = std::make_shared<StabilizerState>(model);
    s.pair = model->lift(make_annulus_pair(model->lattice, 4, 0.5, 2));
    s.left = logical_quotient(*s.state, s.pair.left_spec);
    s.right = logical_quotient(*s.state, s.pair.right_spec);
    return s;
}

ModelPtr toric(uint32_t d) {
    return build_toric_code(std::make_shared<const TorusLattice>(12), d);
}

STilde stilde_for(const Setup &s) {
    return stilde_matrix(*s.state, s.left, s.right, s.pair);
}

/// Loops on both annuli, oriented so that X_L oo Z_R = omega^-1 X_L Z_R and
/// Z_L oo X_R = omega^-1 Z_L X_R. The orientation of X relative to Z is a lattice convention.
std::pair<test::DiskLoops, test::DiskLoops> oriented_loops(const Setup &s, uint32_t d) {
    auto ll = test::disk_loops(*s.model, s.pair.left_spec.center, s.pair.left_spec.r2);
    auto rl = test::disk_loops(*s.model, s.pair.right_spec.center, s.pair.right_spec.r2);
    auto ratio = [&](const WeylOp &p, const WeylOp &q) {
        WeylOp t = twist_product(p, q, s.pair);
        WeylOp plain = p * q;
        EXPECT_TRUE(t.same_pauli(plain));
        return t.phase() - plain.phase();
    };
    if (ratio(ll.x_loop, rl.z_loop) != Phase(-1, d)) {
        ll.x_loop = inverse(ll.x_loop);
        rl.x_loop = inverse(rl.x_loop);
    }
    EXPECT_EQ(ratio(ll.x_loop, rl.z_loop), Phase(-1, d));
    EXPECT_EQ(ratio(ll.z_loop, rl.x_loop), Phase(-1, d));
    return {ll, rl};
}

}  // namespace

TEST(twist, product_matches_definition) {
    std::mt19937_64 rng(3);
    auto s = setup(toric(3));
    for (int trial = 0; trial < 50; trial++) {
        WeylOp p = test::random_weyl_on(s.model->system, s.pair.left, rng);
        WeylOp q = test::random_weyl_on(s.model->system, s.pair.right, rng);
        auto [pm, pmp] = split(p, s.pair.m);
        auto [qm, qmp] = split(q, s.pair.m);
        WeylOp expect = (pm * qm) * (qmp * pmp);
        EXPECT_EQ(twist_product(p, q, s.pair), expect);
    }
    WeylOp outside = WeylOp::x(s.model->system, s.pair.left.complement().sites()[0]);
    EXPECT_THROW(twist_product(outside, WeylOp::identity(s.model->system), s.pair), ValidationError);
}

TEST(twist, closed_form_for_toric_codes) {
    for (uint32_t d : {2u, 3u, 4u}) {
        auto s = setup(toric(d));
        STilde st = stilde_for(s);
        ASSERT_EQ(st.rows(), (size_t)(d * d));
        ASSERT_EQ(st.cols(), (size_t)(d * d));
        EXPECT_TRUE(st.invariants_hold());
        auto [ll, rl] = oriented_loops(s, d);
        for (size_t a = 0; a < st.rows(); a++) {
            auto [ax, az] = test::label_exponents(s.left, a, ll, d);
            for (size_t b = 0; b < st.cols(); b++) {
                auto [bx, bz] = test::label_exponents(s.right, b, rl, d);
                Cyclo expect = Cyclo::root_of_unity(az * bx + ax * bz, d).scaled(Rational(1, (long)(d * d)));
                EXPECT_EQ(st.entries[a][b], expect) << "d = " << d << " a = " << a << " b = " << b;
            }
        }
        EXPECT_EQ(st.entries[st.left_vacuum][st.right_vacuum], Cyclo(Rational(1, (long)(d * d))));
    }
}

TEST(twist, fast_and_direct_agree) {
    for (uint32_t d : {2u, 3u}) {
        auto s = setup(toric(d));
        STilde fast = stilde_for(s);
        STilde direct = stilde_matrix_direct(*s.state, s.left, s.right, s.pair);
        EXPECT_EQ(fast.entries, direct.entries);
    }
}

TEST(twist, representatives_are_independent_of_null_choices) {
    auto s = setup(toric(2));
    EXPECT_TRUE(representatives_independent(*s.state, s.left, s.right, s.pair));
}

TEST(twist, s_matrix_view_is_unitary) {
    for (uint32_t d : {2u, 3u}) {
        auto s = setup(toric(d));
        auto view = s_matrix_view(stilde_for(s));
        size_t n = view.size();
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                Cyclo acc;
                for (size_t c = 0; c < n; c++) {
                    acc += view[a][c] * view[b][c].conj();
                }
                EXPECT_EQ(acc, Cyclo(a == b ? 1 : 0));
            }
        }
    }
}

TEST(twist, verlinde_fusion_is_group_like) {
    auto s = setup(toric(3));
    STilde st = stilde_for(s);
    FusionTensor f = verlinde_fusion(st);
    size_t n = f.n;
    ASSERT_EQ(n, 9u);
    // Labels fuse like Z_3 x Z_3: the loop exponents add.
    auto ll = test::disk_loops(*s.model, s.pair.left_spec.center, s.pair.left_spec.r2);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            size_t c = f.product(a, b);
            auto ea = test::label_exponents(s.left, a, ll, 3);
            auto eb = test::label_exponents(s.left, b, ll, 3);
            auto ec = test::label_exponents(s.left, c, ll, 3);
            EXPECT_EQ(ec.first, (ea.first + eb.first) % 3);
            EXPECT_EQ(ec.second, (ea.second + eb.second) % 3);
        }
        EXPECT_EQ(f.product(st.left_vacuum, a), a);
    }
}

TEST(twist, reconstruction_distinguishes_groups) {
    auto l12 = std::make_shared<const TorusLattice>(12);
    auto z4 = setup(build_toric_code(l12, 4));
    auto z2 = build_toric_code(l12, 2);
    auto z2z2 = setup(stack_models(*z2, *z2));
    auto z2z3 = setup(stack_models(*z2, *build_toric_code(l12, 3)));
    STilde s4 = stilde_for(z4), s22 = stilde_for(z2z2), s23 = stilde_for(z2z3);
    EXPECT_EQ(reconstruct_group(s4).invariant_factors, std::vector<int64_t>({4}));
    EXPECT_EQ(reconstruct_group(s22).invariant_factors, std::vector<int64_t>({2, 2}));
    EXPECT_EQ(reconstruct_group(s23).invariant_factors, std::vector<int64_t>({6}));
    EXPECT_FALSE(stilde_equivalent(s4, s22));
    auto z6 = setup(build_toric_code(l12, 6));
    EXPECT_TRUE(stilde_equivalent(stilde_for(z6), s23));
}

TEST(twist, equivalence_ignores_label_order) {
    std::mt19937_64 rng(5);
    auto s = setup(toric(3));
    STilde st = stilde_for(s);
    for (int trial = 0; trial < 5; trial++) {
        std::vector<size_t> rp(st.rows()), cp(st.cols());
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        STilde shuffled = st.permuted(rp, cp);
        EXPECT_TRUE(stilde_equivalent(st, shuffled));
        EXPECT_TRUE(shuffled.invariants_hold());
    }
    // Changing one entry breaks the equivalence.
    STilde broken = st;
    broken.entries[1][1] = broken.entries[1][1].conj().scaled(Rational(1, 2));
    EXPECT_FALSE(stilde_equivalent(st, broken));
}

TEST(twist, non_group_like_matrix_is_rejected) {
    STilde s;
    s.entries = {{Cyclo(Rational(1, 2)), Cyclo(Rational(1, 2))}, {Cyclo(Rational(1, 2)), Cyclo(Rational(1, 3))}};
    EXPECT_THROW(verlinde_fusion(s), NonGroupLikeFusion);
}

TEST(twist, pairing_of_unit_is_one) {
    auto s = setup(toric(2));
    WeylOp one = WeylOp::identity(s.model->system);
    EXPECT_EQ(twist_pairing(*s.state, one, one, s.pair), Cyclo(1));
}

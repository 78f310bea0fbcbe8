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

#include "stilde/stabilizer_group.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "stilde/model.h"
#include "test_util.h"

using namespace stilde;

namespace {

/// Random product of the generators with a tracked phase.
WeylOp random_element(const std::vector<WeylOp> &gens, std::mt19937_64 &rng) {
    WeylOp acc = WeylOp::identity(gens[0].system());
    for (const auto &g : gens) {
        acc = acc * power(g, (int64_t)(rng() % 6));
    }
    return acc;
}

}  // namespace

TEST(stabilizer_group, toric_code_order_is_full) {
    for (uint32_t d : {2u, 3u}) {
        auto m = build_toric_code(std::make_shared<const TorusLattice>(3), d);
        StabilizerGroup g(m->system, m->stabilizer_generators());
        BigInt full = 1;
        for (size_t k = 0; k < m->num_sites(); k++) {
            full *= (long)d;
        }
        EXPECT_EQ(g.order(), full);
        EXPECT_FALSE(g.frustrated());
        StabilizerGroup terms_only(m->system, m->term_generators());
        EXPECT_EQ(terms_only.order() * (long)(d * d), full);
    }
}

TEST(stabilizer_group, phase_of_products) {
    std::mt19937_64 rng(3);
    auto m = build_toric_code(std::make_shared<const TorusLattice>(3), 3, {1, 2});
    auto gens = m->stabilizer_generators();
    StabilizerGroup g(m->system, gens);
    for (int trial = 0; trial < 30; trial++) {
        WeylOp e = random_element(gens, rng);
        Phase extra((int64_t)(rng() % 3), 3);
        auto ph = g.phase_of(e.with_phase(e.phase() + extra));
        ASSERT_TRUE(ph.has_value());
        EXPECT_EQ(*ph, extra);
    }
    EXPECT_FALSE(g.phase_of(WeylOp::x(m->system, 0)).has_value());
}

TEST(stabilizer_group, reduce_is_a_coset_invariant) {
    std::mt19937_64 rng(4);
    auto sys = SiteSystem::make({2, 3, 4, 6});
    std::vector<WeylOp> gens{WeylOp::z(sys, 0) * WeylOp::z(sys, 3, 3), WeylOp::x(sys, 2, 2), WeylOp::z(sys, 1)};
    StabilizerGroup g(sys, gens);
    for (int trial = 0; trial < 40; trial++) {
        WeylOp v = test::random_weyl(sys, rng);
        WeylOp e = random_element(gens, rng);
        EXPECT_TRUE(g.reduce(v * e).same_pauli(g.reduce(v)));
        EXPECT_TRUE(g.contains_up_to_phase(e));
    }
}

TEST(stabilizer_group, order_matches_enumeration) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; trial++) {
        auto sys = SiteSystem::make({2, 3, 2});
        std::vector<WeylOp> gens;
        for (int k = 0; k < 2; k++) {
            gens.push_back(test::random_weyl(sys, rng, false));
        }
        // Make the generators commute by keeping only compatible ones.
        if (!commutes(gens[0], gens[1])) {
            gens.pop_back();
        }
        std::set<std::vector<int64_t>> seen;
        std::vector<WeylOp> frontier{WeylOp::identity(sys)};
        seen.insert(frontier[0].to_vector());
        while (!frontier.empty()) {
            WeylOp cur = frontier.back();
            frontier.pop_back();
            for (const auto &gen : gens) {
                WeylOp nxt = cur * gen;
                if (seen.insert(nxt.to_vector()).second) {
                    frontier.push_back(nxt);
                }
            }
        }
        StabilizerGroup g(sys, gens);
        EXPECT_EQ(g.order(), BigInt((long)seen.size()));
    }
}

TEST(stabilizer_group, detects_frustration) {
    auto sys = SiteSystem::uniform(2, 2);
    WeylOp z = WeylOp::z(sys, 0) * WeylOp::z(sys, 1);
    StabilizerGroup g(sys, {z, z.with_phase(Phase(1, 2))});
    EXPECT_TRUE(g.frustrated());
    EXPECT_EQ(g.scalar_order(), 2);
}

TEST(stabilizer_group, rows_from_column_span_the_region_subgroup) {
    auto m = build_toric_code(std::make_shared<const TorusLattice>(4), 2);
    // Sites 0..7 last, all others first.
    std::vector<uint32_t> order;
    Region disk(m->num_sites(), {0, 1, 2, 3, 4, 5, 6, 7});
    for (uint32_t s = 0; s < m->num_sites(); s++) {
        if (!disk.contains(s)) {
            order.push_back(s);
        }
    }
    size_t outside = order.size();
    order.insert(order.end(), disk.sites().begin(), disk.sites().end());
    StabilizerGroup g(m->system, m->stabilizer_generators(), order);
    auto rows = g.rows_from_column(2 * outside);
    for (const auto &r : rows) {
        for (uint32_t s : r.support()) {
            EXPECT_TRUE(disk.contains(s));
        }
    }
    // Brute force: every product of generators supported in the disk lies in the span.
    StabilizerGroup sub(m->system, rows.empty() ? std::vector<WeylOp>{WeylOp::identity(m->system)} : rows);
    for (size_t k : m->terms_inside(disk)) {
        EXPECT_TRUE(sub.contains_up_to_phase(m->terms[k].generator));
    }
}

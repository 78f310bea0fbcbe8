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

#include "stilde/commutant.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace stilde;
using test::classes_mod_null;

namespace {

const Point2 kCenter{12, 12};

AnnulusSpec spec(int64_t r2, int64_t t2) {
    return AnnulusSpec{kCenter, r2, t2};
}

ModelPtr toric(int64_t L, uint32_t d) {
    return build_toric_code(std::make_shared<const TorusLattice>(L), d);
}

/// 1/4 (1 + sx X) (1 + sz Z) for loop operators X, Z.
WeylSum z2_projector(const test::DiskLoops &loops, int sx, int sz) {
    WeylSum one = WeylSum::scalar(loops.x_loop.system(), Cyclo(1));
    WeylSum a = one + WeylSum(loops.x_loop, Cyclo(sx));
    WeylSum b = one + WeylSum(loops.z_loop, Cyclo(sz));
    return (a * b).scaled(Cyclo(Rational(1, 4)));
}

}  // namespace

TEST(commutant, commutant_elements_commute_with_terms) {
    auto m = toric(6, 3);
    Region r = m->lift(spec(6, 1).region(*m->lattice));
    CommutantGroup c = commutant_on_region(*m, r);
    for (const auto &g : c.generators) {
        for (uint32_t s : g.support()) {
            EXPECT_TRUE(r.contains(s));
        }
        for (const auto &t : m->terms) {
            EXPECT_TRUE(commutes(g, t.generator));
        }
        EXPECT_TRUE(c.contains(g));
    }
    EXPECT_FALSE(c.contains(WeylOp::z(m->system, r.sites()[0])));
}

TEST(commutant, z2_projectors_match_closed_form) {
    auto m = toric(12, 2);
    StabilizerState st(m);
    LogicalAlgebra alg = logical_quotient(st, spec(8, 1));
    ASSERT_EQ(alg.size(), 4);
    auto pis = alg.projectors();
    auto loops = test::disk_loops(*m, kCenter, 8);

    // Each closed-form projector matches exactly one computed projector modulo null elements.
    std::set<size_t> matched;
    for (int sx : {1, -1}) {
        for (int sz : {1, -1}) {
            auto oracle = classes_mod_null(alg, z2_projector(loops, sx, sz));
            int hits = 0;
            for (size_t a = 0; a < pis.size(); a++) {
                if (classes_mod_null(alg, pis[a]) == oracle) {
                    hits++;
                    matched.insert(a);
                    if (sx == 1 && sz == 1) {
                        EXPECT_EQ(a, alg.vacuum) << "the ground state has X = Z = +1 on contractible loops";
                    }
                }
            }
            EXPECT_EQ(hits, 1) << "signs " << sx << ", " << sz;
        }
    }
    EXPECT_EQ(matched.size(), 4u);
}

TEST(commutant, projectors_are_a_resolution_of_identity) {
    for (uint32_t d : {2u, 3u, 4u}) {
        auto m = toric(12, d);
        StabilizerState st(m);
        LogicalAlgebra alg = logical_quotient(st, spec(8, 1));
        ASSERT_EQ(alg.size(), (int64_t)(d * d));
        auto pis = alg.projectors();
        WeylSum total(m->system);
        for (const auto &p : pis) {
            total = total + p;
        }
        EXPECT_EQ(total, WeylSum::scalar(m->system, Cyclo(1)));
        for (size_t a = 0; a < pis.size(); a++) {
            EXPECT_EQ(classes_mod_null(alg, pis[a].adjoint()), classes_mod_null(alg, pis[a]));
            for (size_t b = 0; b < pis.size(); b++) {
                auto prod = classes_mod_null(alg, pis[a] * pis[b]);
                if (a == b) {
                    EXPECT_EQ(prod, classes_mod_null(alg, pis[a]));
                } else {
                    EXPECT_TRUE(prod.empty()) << a << " " << b;
                }
            }
        }
        // Vacuum: <pi_0> = 1, every other projector has zero expectation.
        EXPECT_EQ(expectation(st, pis[alg.vacuum]), Cyclo(1));
        for (size_t a = 1; a < pis.size(); a++) {
            EXPECT_EQ(expectation(st, pis[a]), Cyclo());
        }
    }
}

TEST(commutant, flipped_plaquette_moves_the_vacuum) {
    auto base = toric(12, 2);
    auto flipped = std::make_shared<StabilizerModel>(*base);
    // Flip the sign of one plaquette inside the disk and one far outside (the product of all
    // plaquettes is the identity). The Z loop around the disk then has eigenvalue -1.
    for (size_t k : {size_t(12 * 12 + 5 * 12 + 5), size_t(12 * 12)}) {
        flipped->terms[k] = ProjectorTerm::from_generator(base->terms[k].generator.with_phase(Phase(1, 2)));
    }
    StabilizerState st(flipped);
    LogicalAlgebra alg = logical_quotient(st, spec(8, 1));
    auto loops = test::disk_loops(*base, kCenter, 8);
    EXPECT_EQ(expectation(st, loops.z_loop), Cyclo(-1));
    auto vac = classes_mod_null(alg, alg.projectors()[alg.vacuum]);
    EXPECT_EQ(vac, classes_mod_null(alg, z2_projector(loops, 1, -1)));
}

TEST(commutant, classify_recovers_elements) {
    std::mt19937_64 rng(7);
    auto m = toric(12, 3);
    StabilizerState st(m);
    LogicalAlgebra alg = logical_quotient(st, spec(8, 1));
    for (int trial = 0; trial < 20; trial++) {
        std::vector<int64_t> g(alg.orders.size());
        for (size_t i = 0; i < g.size(); i++) {
            g[i] = (int64_t)(rng() % alg.orders[i]);
        }
        WeylOp u = alg.element(g);
        // Multiply by a random null element.
        for (const auto &n : alg.null_generators) {
            if (rng() % 2) {
                u = u * n;
            }
        }
        auto cl = alg.classify(u);
        ASSERT_TRUE(cl.has_value());
        EXPECT_EQ(cl->coords, g);
    }
    // Representatives raised to their orders are exact null elements.
    for (size_t i = 0; i < alg.reps.size(); i++) {
        auto ph = alg.null_group->phase_of(power(alg.reps[i], alg.orders[i]));
        ASSERT_TRUE(ph.has_value());
        EXPECT_TRUE(ph->is_zero());
    }
}

TEST(commutant, stability_under_thickening) {
    for (uint32_t d : {2u, 3u}) {
        auto m = toric(12, d);
        StabilizerState st(m);
        StabilityReport rep = check_stability(st, spec(8, 1), 0.5, 1);
        EXPECT_TRUE(rep.isomorphism()) << rep.detail;
        EXPECT_EQ(rep.orders_t1, rep.orders_t2);
    }
}

TEST(commutant, ancillas_do_not_change_the_algebra) {
    auto m = toric(12, 2);
    auto anc = add_trivial_ancillas(*m, 40);
    StabilizerState a(m), b(anc);
    LogicalAlgebra la = logical_quotient(a, spec(8, 1));
    LogicalAlgebra lb = logical_quotient(b, spec(8, 1));
    EXPECT_EQ(la.orders, lb.orders);
    EXPECT_EQ(expectation(b, lb.projectors()[lb.vacuum]), Cyclo(1));
}

TEST(commutant, product_state_algebra_is_trivial) {
    auto m = build_product_state(SiteSystem::make({2, 3, 2, 5, 3}));
    StabilizerState st(m);
    Region r(5, {1, 2, 3});
    LogicalAlgebra alg = logical_quotient(st, r, Region::all(5));
    EXPECT_EQ(alg.size(), 1);
    EXPECT_EQ(alg.projectors()[0], WeylSum::scalar(m->system, Cyclo(1)));
}

TEST(commutant, annulus_touching_itself_is_rejected) {
    auto m = toric(12, 2);
    StabilizerState st(m);
    EXPECT_THROW(logical_quotient(st, spec(8, 3)), ValidationError);
    EXPECT_NO_THROW(logical_quotient(st, spec(8, 2)));
}

TEST(commutant, thick_region_must_contain_annulus) {
    auto m = build_product_state(SiteSystem::uniform(4, 2));
    StabilizerState st(m);
    EXPECT_THROW(logical_quotient(st, Region(4, {0, 1}), Region(4, {0})), ValidationError);
}

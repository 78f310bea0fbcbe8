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

#include "stilde/lattice.h"

#include <random>

#include "gtest/gtest.h"
#include "stilde/errors.h"
#include "test_util.h"

using namespace stilde;

namespace {

std::shared_ptr<const TorusLattice> torus(int64_t L) {
    return std::make_shared<const TorusLattice>(L);
}

}  // namespace

TEST(lattice, edge_positions) {
    TorusLattice lat(5);
    EXPECT_EQ(lat.num_sites(), 50u);
    EXPECT_EQ(lat.position(lat.horizontal_edge(2, 3)), (Point2{5, 6}));
    EXPECT_EQ(lat.position(lat.vertical_edge(2, 3)), (Point2{4, 7}));
    EXPECT_EQ(lat.horizontal_edge(-1, 0), lat.horizontal_edge(4, 0));
    EXPECT_EQ(lat.vertical_edge(0, 5), lat.vertical_edge(0, 0));
    for (uint32_t s = 0; s < lat.num_sites(); s++) {
        Point2 p = lat.position(s);
        EXPECT_EQ((p.x + p.y) % 2, 1) << "edges sit at odd doubled coordinates";
    }
}

TEST(lattice, vertex_and_plaquette_edges_are_adjacent) {
    TorusLattice lat(6);
    for (int64_t x = 0; x < 6; x++) {
        for (int64_t y = 0; y < 6; y++) {
            Point2 v{2 * x, 2 * y};
            for (uint32_t e : lat.vertex_edges(x, y)) {
                EXPECT_EQ(lat.distance2(lat.position(e), v), 1);
            }
            Point2 c{2 * x + 1, 2 * y + 1};
            for (uint32_t e : lat.plaquette_edges(x, y)) {
                EXPECT_EQ(lat.distance2(lat.position(e), c), 1);
            }
        }
    }
}

TEST(lattice, distance_is_a_periodic_metric) {
    TorusLattice lat(7);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; trial++) {
        uint32_t a = (uint32_t)(rng() % lat.num_sites());
        uint32_t b = (uint32_t)(rng() % lat.num_sites());
        uint32_t c = (uint32_t)(rng() % lat.num_sites());
        EXPECT_EQ(lat.site_distance2(a, b), lat.site_distance2(b, a));
        EXPECT_LE(lat.site_distance2(a, c), lat.site_distance2(a, b) + lat.site_distance2(b, c));
        EXPECT_EQ(lat.site_distance2(a, a), 0);
        EXPECT_LE(lat.site_distance2(a, b), 2 * 7);
    }
    EXPECT_EQ(lat.distance2(Point2{1, 0}, Point2{13, 0}), 2);
}

TEST(lattice, shell_matches_enumeration) {
    TorusLattice lat(8);
    Point2 c{8, 8};
    Region shell = lat.shell(c, 3, 7);
    size_t count = 0;
    for (uint32_t s = 0; s < lat.num_sites(); s++) {
        int64_t d = lat.distance2(lat.position(s), c);
        bool in = 3 <= d && d <= 7;
        EXPECT_EQ(shell.contains(s), in);
        count += in;
    }
    EXPECT_EQ(shell.size(), count);
    // Taxicab circles of odd doubled radius k around a vertex hold 4k edges.
    EXPECT_EQ(lat.shell(c, 5, 5).size(), 20u);
}

TEST(lattice, components_and_fatten) {
    TorusLattice lat(8);
    Region a = lat.shell(Point2{4, 4}, 0, 1);
    Region b = lat.shell(Point2{12, 12}, 0, 1);
    auto comps = lat.components(a | b);
    EXPECT_EQ(comps.size(), 2u);
    EXPECT_EQ(lat.region_distance2(a, b), 14);
    Region f = lat.fatten(a, 2);
    EXPECT_TRUE(a.is_subset_of(f));
    EXPECT_EQ(lat.components(f).size(), 1u);
    EXPECT_EQ(lat.diameter2(a), 2);
}

TEST(lattice, small_and_large_tori_rejected) {
    EXPECT_THROW(TorusLattice(2), ValidationError);
    EXPECT_NO_THROW(TorusLattice(3));
}

TEST(lattice, default_pair_geometry) {
    auto p = make_annulus_pair(torus(24), 7, 2, 4);
    EXPECT_EQ(p.left_spec.r2, 14);
    EXPECT_EQ(p.left_spec.t2, 4);
    EXPECT_EQ(p.right_spec.center.x - p.left_spec.center.x, 8);
    EXPECT_EQ((p.left & p.right), (p.c_u | p.c_d));
    EXPECT_FALSE(p.c_u.intersects(p.c_d));
    EXPECT_TRUE(p.c_u.is_subset_of(p.m));
    EXPECT_FALSE(p.c_d.intersects(p.m));
    EXPECT_EQ(p.diamond_distance(), 7);
    EXPECT_EQ(p.diamond_distance2, p.lattice->region_distance2(p.c_u, p.c_d));
    // Moving the cut inside the gap keeps the diamonds on their sides.
    auto [lo, hi] = p.cut_range();
    auto q = p.with_cut((lo + hi) / 2 + 0.5);
    EXPECT_TRUE(q.c_u.is_subset_of(q.m));
    EXPECT_THROW(p.with_cut(hi + 1), ValidationError);
}

TEST(lattice, pair_rejects_bad_geometry) {
    auto lat = torus(24);
    // Centers 7 apart: the annuli of radius 7 and thickness 2 overlap in more than two pieces.
    EXPECT_THROW(make_annulus_pair(lat, 7, 2, 7), ValidationError);
    EXPECT_THROW(make_annulus_pair(lat, 7, 0, 4), ValidationError);
    EXPECT_THROW(make_annulus_pair(lat, 2, 2, 1), ValidationError);
    EXPECT_THROW(make_annulus_pair(lat, 7.25, 2, 4), ValidationError);
    EXPECT_THROW(make_annulus_pair(lat, 11, 2, 4), ValidationError);
    EXPECT_THROW(make_annulus_pair(lat, 7, 2, 14), ValidationError);
}

TEST(lattice, every_accepted_pair_is_well_formed) {
    auto lat = torus(12);
    int accepted = 0;
    for (int r2 = 2; r2 < 24; r2++) {
        for (int t2 = 1; t2 < r2; t2++) {
            for (int s2 = 1; s2 < 24; s2++) {
                AnnulusPair p;
                try {
                    p = make_annulus_pair(lat, r2 / 2.0, t2 / 2.0, s2 / 2.0);
                } catch (const ValidationError &) {
                    continue;
                }
                accepted++;
                EXPECT_EQ(lat->components(p.left & p.right).size(), 2u);
                EXPECT_TRUE(p.c_u.is_subset_of(p.m));
                EXPECT_FALSE(p.c_d.intersects(p.m));
                EXPECT_GT(p.diamond_distance2, 0);
            }
        }
    }
    EXPECT_GT(accepted, 0);
}

TEST(lattice, geometry_report_desk_and_strict) {
    auto p = make_annulus_pair(torus(24), 6.5, 1.5, 5.5);
    auto rep = validate_geometry(p, 1, 1);
    EXPECT_TRUE(rep.desk_ok()) << rep.str();
    EXPECT_FALSE(rep.strict_ok()) << "literal constants need far larger tori";
    auto bad = validate_geometry(p, 2, 1);
    EXPECT_FALSE(bad.desk_ok()) << bad.str();
}

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

#ifndef STILDE_LATTICE_H
#define STILDE_LATTICE_H

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stilde/region.h"

namespace stilde {

/// Point in doubled integer coordinates. Vertex (x, y) sits at (2x, 2y); the horizontal edge
/// leaving it to the right at (2x+1, 2y); the vertical edge leaving it upward at (2x, 2y+1).
struct Point2 {
    int64_t x = 0;
    int64_t y = 0;
    bool operator==(const Point2 &o) const {
        return x == o.x && y == o.y;
    }
};

/// Periodic L x L square lattice with one site per edge (2 L^2 sites).
class TorusLattice {
   public:
    explicit TorusLattice(int64_t L);

    int64_t size() const {
        return L_;
    }
    size_t num_sites() const {
        return (size_t)(2 * L_ * L_);
    }
    uint32_t horizontal_edge(int64_t x, int64_t y) const;
    uint32_t vertical_edge(int64_t x, int64_t y) const;
    Point2 position(uint32_t site) const;

    /// Edges of vertex (x, y) in the order right, up, left, down.
    std::array<uint32_t, 4> vertex_edges(int64_t x, int64_t y) const;
    /// Edges of the plaquette whose lower-left corner is (x, y): bottom, right, top, left.
    std::array<uint32_t, 4> plaquette_edges(int64_t x, int64_t y) const;

    /// Periodic taxicab distance in doubled units.
    int64_t distance2(Point2 a, Point2 b) const;
    int64_t site_distance2(uint32_t a, uint32_t b) const {
        return distance2(position(a), position(b));
    }
    /// Smallest doubled distance between sites of two nonempty regions.
    int64_t region_distance2(const Region &a, const Region &b) const;
    /// Largest doubled distance between two sites of a region.
    int64_t diameter2(const Region &r) const;
    /// Offset of y from y0 wrapped into (-L, L].
    int64_t wrapped_dy2(int64_t y, int64_t y0) const;

    /// Sites whose doubled distance to `center` lies in [lo2, hi2].
    Region shell(Point2 center, int64_t lo2, int64_t hi2) const;
    /// Sites within doubled distance radius2 of some site of `r`.
    Region fatten(const Region &r, int64_t radius2) const;
    /// Connected components under "doubled distance <= 2" adjacency.
    std::vector<Region> components(const Region &r) const;

   private:
    int64_t L_;
};

/// Annulus of sites at distance [r_ann - t, r_ann + t] from a center. Radii may be half
/// integers, so they are stored doubled.
struct AnnulusSpec {
    Point2 center;
    int64_t r2 = 0;
    int64_t t2 = 0;

    double r_ann() const {
        return r2 / 2.0;
    }
    double t() const {
        return t2 / 2.0;
    }
    /// Same center and radius, thickness t + extra.
    AnnulusSpec thickened(int64_t extra2) const {
        return AnnulusSpec{center, r2, t2 + extra2};
    }
    Region region(const TorusLattice &lattice) const;
};

/// Two overlapping annuli meeting in an upper and a lower diamond, with a horizontal cut
/// separating the diamonds. M is the side above the cut.
struct AnnulusPair {
    std::shared_ptr<const TorusLattice> lattice;  // null for hand-built geometries
    AnnulusSpec left_spec;
    AnnulusSpec right_spec;
    Region left;
    Region right;
    Region c_u;
    Region c_d;
    Region m;
    /// Doubled y of the cut line, measured relative to the centers' row.
    double cut_y2 = 0;
    /// dist(C_u, C_d) in doubled units.
    int64_t diamond_distance2 = 0;

    double diamond_distance() const {
        return diamond_distance2 / 2.0;
    }
    Region m_prime() const {
        return m.complement();
    }
    /// Same pair with the cut moved to doubled height y2; the cut must still separate the diamonds.
    AnnulusPair with_cut(double y2) const;
    /// Same centers with thickness increased by extra2 (doubled units) on both annuli.
    AnnulusPair thickened(int64_t extra2) const;
    /// Smallest and largest admissible doubled cut heights (exclusive bounds).
    std::pair<double, double> cut_range() const;
};

/// Builds the pair with centers (cx -/+ separation, cy) where (cx, cy) defaults to the middle of
/// the torus. All lengths in lattice units, possibly half integers.
AnnulusPair make_annulus_pair(
    std::shared_ptr<const TorusLattice> lattice, double r_ann, double t, double separation);
AnnulusPair make_annulus_pair(
    std::shared_ptr<const TorusLattice> lattice, double r_ann, double t, double separation, Point2 mid);

/// Pair assembled from explicit regions (used for non-lattice scenarios).
AnnulusPair make_custom_pair(const Region &left, const Region &right, const Region &c_u, const Region &c_d, const Region &m);

struct GeometryCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    /// Strict checks use the literal constants; desk checks the relaxed containment conditions.
    bool strict = false;
};

struct GeometryReport {
    std::vector<GeometryCheck> checks;
    bool desk_ok() const;
    bool strict_ok() const;
    std::string str() const;
};

/// Checks the range and thickness inequalities for a circuit of range R applied to a model of
/// interaction range w.
GeometryReport validate_geometry(const AnnulusPair &pair, double circuit_range, double interaction_range);

}  // namespace stilde

#endif

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stilde/errors.h"
#include "stilde/ringlinalg.h"

namespace stilde {

TorusLattice::TorusLattice(int64_t L) : L_(L) {
    if (L < 3) {
        throw ValidationError("TorusLattice: L must be at least 3");
    }
    if (L > 2048) {
        throw ValidationError("TorusLattice: L too large");
    }
}

uint32_t TorusLattice::horizontal_edge(int64_t x, int64_t y) const {
    return (uint32_t)(2 * (mod64(y, L_) * L_ + mod64(x, L_)));
}

uint32_t TorusLattice::vertical_edge(int64_t x, int64_t y) const {
    return horizontal_edge(x, y) + 1;
}

Point2 TorusLattice::position(uint32_t site) const {
    int64_t v = site / 2;
    int64_t x = v % L_;
    int64_t y = v / L_;
    if (site % 2 == 0) {
        return Point2{2 * x + 1, 2 * y};
    }
    return Point2{2 * x, 2 * y + 1};
}

std::array<uint32_t, 4> TorusLattice::vertex_edges(int64_t x, int64_t y) const {
    return {horizontal_edge(x, y), vertical_edge(x, y), horizontal_edge(x - 1, y), vertical_edge(x, y - 1)};
}

std::array<uint32_t, 4> TorusLattice::plaquette_edges(int64_t x, int64_t y) const {
    return {horizontal_edge(x, y), vertical_edge(x + 1, y), horizontal_edge(x, y + 1), vertical_edge(x, y)};
}

int64_t TorusLattice::distance2(Point2 a, Point2 b) const {
    int64_t P = 2 * L_;
    int64_t dx = mod64(a.x - b.x, P);
    int64_t dy = mod64(a.y - b.y, P);
    return std::min(dx, P - dx) + std::min(dy, P - dy);
}

int64_t TorusLattice::wrapped_dy2(int64_t y, int64_t y0) const {
    int64_t P = 2 * L_;
    int64_t d = mod64(y - y0, P);
    return d > L_ ? d - P : d;
}

int64_t TorusLattice::region_distance2(const Region &a, const Region &b) const {
    int64_t best = std::numeric_limits<int64_t>::max();
    for (uint32_t s : a.sites()) {
        Point2 p = position(s);
        for (uint32_t q : b.sites()) {
            best = std::min(best, distance2(p, position(q)));
        }
    }
    return best;
}

int64_t TorusLattice::diameter2(const Region &r) const {
    int64_t best = 0;
    for (uint32_t s : r.sites()) {
        for (uint32_t q : r.sites()) {
            best = std::max(best, site_distance2(s, q));
        }
    }
    return best;
}

Region TorusLattice::shell(Point2 center, int64_t lo2, int64_t hi2) const {
    return Region::from_predicate(num_sites(), [&](uint32_t s) {
        int64_t d = distance2(position(s), center);
        return lo2 <= d && d <= hi2;
    });
}

Region TorusLattice::fatten(const Region &r, int64_t radius2) const {
    return Region::from_predicate(num_sites(), [&](uint32_t s) {
        Point2 p = position(s);
        for (uint32_t q : r.sites()) {
            if (distance2(p, position(q)) <= radius2) {
                return true;
            }
        }
        return false;
    });
}

std::vector<Region> TorusLattice::components(const Region &r) const {
    std::vector<Region> out;
    std::vector<bool> seen(num_sites(), false);
    for (uint32_t s : r.sites()) {
        if (seen[s]) {
            continue;
        }
        std::vector<uint32_t> comp;
        std::vector<uint32_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (uint32_t v : r.sites()) {
                if (!seen[v] && site_distance2(u, v) <= 2) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        out.emplace_back(num_sites(), std::move(comp));
    }
    return out;
}

Region AnnulusSpec::region(const TorusLattice &lattice) const {
    return lattice.shell(center, r2 - t2, r2 + t2);
}

// ---------------------------------------------------------------------------------------------

namespace {

int64_t doubled(double v, const char *what) {
    double d = 2 * v;
    int64_t r = (int64_t)std::llround(d);
    if (std::abs(d - (double)r) > 1e-9) {
        throw ValidationError(std::string("geometry: ") + what + " must be a multiple of 1/2");
    }
    return r;
}

AnnulusPair assemble_pair(std::shared_ptr<const TorusLattice> lattice, AnnulusSpec ls, AnnulusSpec rs) {
    const TorusLattice &lat = *lattice;
    int64_t L = lat.size();
    if (ls.t2 <= 0) {
        throw ValidationError("make_annulus_pair: thickness must be positive");
    }
    if (ls.t2 >= ls.r2) {
        throw ValidationError("make_annulus_pair: thickness must be smaller than the radius");
    }
    if (ls.r2 + ls.t2 >= L - 1) {
        throw ValidationError("make_annulus_pair: annulus touches itself around the torus (2(r_ann + t) >= L - 1/2)");
    }
    int64_t sep2 = rs.center.x - ls.center.x;
    if (sep2 <= 0 || sep2 + 2 * (ls.r2 + ls.t2) >= 2 * L) {
        throw ValidationError("make_annulus_pair: the pair does not fit in the torus without wrapping");
    }

    AnnulusPair p;
    p.lattice = lattice;
    p.left_spec = ls;
    p.right_spec = rs;
    p.left = ls.region(lat);
    p.right = rs.region(lat);
    std::vector<Region> comps = lat.components(p.left & p.right);
    if (comps.size() != 2) {
        throw ValidationError(
            "make_annulus_pair: annuli intersect in " + std::to_string(comps.size()) + " components, expected 2");
    }
    int64_t y0 = ls.center.y;
    auto dy_range = [&](const Region &r) {
        int64_t lo = std::numeric_limits<int64_t>::max(), hi = std::numeric_limits<int64_t>::min();
        for (uint32_t s : r.sites()) {
            int64_t dy = lat.wrapped_dy2(lat.position(s).y, y0);
            lo = std::min(lo, dy);
            hi = std::max(hi, dy);
        }
        return std::make_pair(lo, hi);
    };
    auto r0 = dy_range(comps[0]);
    auto r1 = dy_range(comps[1]);
    if (r0.first < r1.first) {
        std::swap(comps[0], comps[1]);
        std::swap(r0, r1);
    }
    if (r1.second >= r0.first) {
        throw ValidationError("make_annulus_pair: diamonds are not separated by a horizontal line");
    }
    p.c_u = comps[0];
    p.c_d = comps[1];
    p.diamond_distance2 = lat.region_distance2(p.c_u, p.c_d);
    return p.with_cut((r0.first + r1.second) / 2.0);
}

}  // namespace

std::pair<double, double> AnnulusPair::cut_range() const {
    if (!lattice) {
        return {cut_y2, cut_y2};
    }
    int64_t y0 = left_spec.center.y;
    int64_t lo = std::numeric_limits<int64_t>::min(), hi = std::numeric_limits<int64_t>::max();
    for (uint32_t s : c_d.sites()) {
        lo = std::max(lo, lattice->wrapped_dy2(lattice->position(s).y, y0));
    }
    for (uint32_t s : c_u.sites()) {
        hi = std::min(hi, lattice->wrapped_dy2(lattice->position(s).y, y0));
    }
    return {(double)lo, (double)hi};
}

AnnulusPair AnnulusPair::with_cut(double y2) const {
    if (!lattice) {
        throw ValidationError("with_cut: hand-built pairs have a fixed cut");
    }
    AnnulusPair p = *this;
    auto [lo, hi] = cut_range();
    if (!(lo < y2 && y2 < hi)) {
        throw ValidationError("with_cut: the cut must lie strictly between the diamonds");
    }
    const TorusLattice &lat = *lattice;
    int64_t y0 = left_spec.center.y;
    p.cut_y2 = y2;
    p.m = Region::from_predicate(lat.num_sites(), [&](uint32_t s) {
        return (double)lat.wrapped_dy2(lat.position(s).y, y0) > y2;
    });
    return p;
}

AnnulusPair AnnulusPair::thickened(int64_t extra2) const {
    if (!lattice) {
        throw ValidationError("thickened: hand-built pairs carry no metric");
    }
    return assemble_pair(lattice, left_spec.thickened(extra2), right_spec.thickened(extra2));
}

AnnulusPair make_annulus_pair(
    std::shared_ptr<const TorusLattice> lattice, double r_ann, double t, double separation, Point2 mid) {
    if (!lattice) {
        throw ValidationError("make_annulus_pair: missing lattice");
    }
    int64_t r2 = doubled(r_ann, "r_ann");
    int64_t t2 = doubled(t, "t");
    int64_t s2 = doubled(separation, "separation");
    AnnulusSpec ls{Point2{mid.x - s2 / 2, mid.y}, r2, t2};
    AnnulusSpec rs{Point2{mid.x - s2 / 2 + s2, mid.y}, r2, t2};
    return assemble_pair(std::move(lattice), ls, rs);
}

AnnulusPair make_annulus_pair(
    std::shared_ptr<const TorusLattice> lattice, double r_ann, double t, double separation) {
    int64_t L = lattice ? lattice->size() : 0;
    return make_annulus_pair(std::move(lattice), r_ann, t, separation, Point2{L, L});
}

AnnulusPair make_custom_pair(const Region &left, const Region &right, const Region &c_u, const Region &c_d, const Region &m) {
    if ((left & right) != (c_u | c_d) || c_u.intersects(c_d)) {
        throw ValidationError("make_custom_pair: diamonds must partition the intersection of the annuli");
    }
    if (!c_u.is_subset_of(m) || c_d.intersects(m)) {
        throw ValidationError("make_custom_pair: the cut must separate the diamonds");
    }
    AnnulusPair p;
    p.left = left;
    p.right = right;
    p.c_u = c_u;
    p.c_d = c_d;
    p.m = m;
    return p;
}

// ---------------------------------------------------------------------------------------------

bool GeometryReport::desk_ok() const {
    for (const auto &c : checks) {
        if (!c.strict && !c.pass) {
            return false;
        }
    }
    return true;
}

bool GeometryReport::strict_ok() const {
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

std::string GeometryReport::str() const {
    std::stringstream out;
    for (const auto &c : checks) {
        out << (c.pass ? "pass " : "FAIL ") << (c.strict ? "[strict] " : "[desk]   ") << c.name << ": " << c.detail
            << "\n";
    }
    return out.str();
}

GeometryReport validate_geometry(const AnnulusPair &pair, double circuit_range, double interaction_range) {
    GeometryReport rep;
    auto add = [&](std::string name, bool pass, std::string detail, bool strict) {
        rep.checks.push_back(GeometryCheck{std::move(name), pass, std::move(detail), strict});
    };
    auto fmt = [](double v) {
        std::stringstream s;
        s << v;
        return s.str();
    };
    double R = circuit_range;
    double w = interaction_range;
    if (!pair.lattice) {
        add("metric", false, "hand-built pair carries no lattice metric", false);
        return rep;
    }
    double dist = pair.diamond_distance();
    double t = pair.left_spec.t();
    double r = pair.left_spec.r_ann();
    double L = (double)pair.lattice->size();

    add("range_restriction", R < dist / 10,
        "R = " + fmt(R) + " < dist(C_u, C_d) / 10 = " + fmt(dist / 10), true);
    add("thickness_constants", 1200 * w < 60 * t && 60 * t < r && r < L,
        "1200 w = " + fmt(1200 * w) + ", 60 t = " + fmt(60 * t) + ", r_ann = " + fmt(r) + ", L = " + fmt(L), true);

    add("range_below_thickness", R < t, "R = " + fmt(R) + " < t = " + fmt(t), false);
    add("operator_meets_one_diamond", w + 2 * R < dist,
        "w + 2R = " + fmt(w + 2 * R) + " < dist(C_u, C_d) = " + fmt(dist), false);
    bool fattened_ok = true;
    std::string detail = "annuli thickened by R still meet in two separated diamonds";
    try {
        AnnulusPair f = pair.thickened((int64_t)std::llround(2 * R));
        detail += " (dist " + fmt(f.diamond_distance()) + ")";
    } catch (const ValidationError &e) {
        fattened_ok = false;
        detail = e.what();
    }
    add("fattened_pair", fattened_ok, detail, false);
    return rep;
}

}  // namespace stilde

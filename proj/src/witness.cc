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

#include "stilde/witness.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "stilde/errors.h"

namespace stilde {

const char *certificate_method_name(CertificateMethod m) {
    switch (m) {
        case CertificateMethod::CommutantSufficient:
            return "commutant-sufficient";
        case CertificateMethod::DenseVerified:
            return "dense-verified";
        case CertificateMethod::Refused:
            return "refused";
    }
    return "refused";
}

namespace {

Region support_region(const WeylSum &op, size_t n) {
    return Region(n, op.support());
}

std::vector<size_t> terms_touching(const StabilizerModel &model, const WeylSum &op) {
    Region sup = support_region(op, model.num_sites());
    if (sup.empty()) {
        return {};
    }
    return model.terms_meeting(sup);
}

}  // namespace

bool commutes_with_terms(const StabilizerModel &model, const WeylSum &op) {
    for (size_t j : terms_touching(model, op)) {
        WeylSum h = model.terms[j].projector();
        if (!(op * h - h * op).is_zero()) {
            return false;
        }
    }
    return true;
}

InvisibilityCertificate certify_invisible(const StabilizerState &state, const WeylSum &op, double r, double t, const WitnessOptions &options) {
    const StabilizerModel &model = *state.model();
    InvisibilityCertificate cert;
    cert.op = op;
    cert.r = r;
    cert.t = t;
    std::stringstream d;
    bool commuting = commutes_with_terms(model, op);
    if (commuting && !options.force_dense) {
        cert.method = CertificateMethod::CommutantSufficient;
        d << "commutes with all " << terms_touching(model, op).size() << " terms meeting its support";
        cert.details = d.str();
        return cert;
    }
    if (!commuting) {
        d << "does not commute with every term; ";
    }
    if (!(options.allow_dense || options.force_dense)) {
        cert.details = d.str() + "dense check disabled";
        return cert;
    }
    if (dense_dimension(*model.system) > options.cap) {
        cert.method = commuting ? CertificateMethod::CommutantSufficient : CertificateMethod::Refused;
        cert.details = d.str() + "instance above the dense cap";
        return cert;
    }
    DenseInvisibilityReport rep;
    try {
        DenseState psi = dense_ground_state(model, options.cap, options.seed);
        rep = dense_invisibility_check(psi, op, disk_pairs(model, r, t), options.samples, options.seed, options.tolerance);
    } catch (const CapExceeded &e) {
        cert.method = commuting ? CertificateMethod::CommutantSufficient : CertificateMethod::Refused;
        cert.details = d.str() + e.what();
        return cert;
    }
    d << "dense: " << rep.detail << " (seed " << rep.seed << ", " << options.samples << " sampled unitaries per disk)";
    cert.details = d.str();
    if (rep.pass) {
        cert.method = CertificateMethod::DenseVerified;
    } else {
        cert.method = commuting ? CertificateMethod::CommutantSufficient : CertificateMethod::Refused;
    }
    return cert;
}

// ---------------------------------------------------------------------------------------------

StabilizerGroup disk_stabilizers(const StabilizerState &state, const Region &disk) {
    const StabilizerModel &model = *state.model();
    std::vector<uint32_t> order = disk.complement().sites();
    size_t first = 2 * order.size();
    order.insert(order.end(), disk.sites().begin(), disk.sites().end());
    StabilizerGroup all(model.system, model.stabilizer_generators(), order);
    return StabilizerGroup(model.system, all.rows_from_column(first));
}

bool annihilated_by_disk(const StabilizerGroup &group, const WeylSum &x) {
    for (int side = 0; side < 2; side++) {
        std::map<WeylOp, Cyclo> sums;
        for (const auto &[c, w] : x.terms()) {
            WeylOp rep = group.reduce(w).with_phase(Phase());
            WeylOp u = side == 0 ? w * inverse(rep) : inverse(rep) * w;
            auto lam = group.phase_of(u);
            if (!lam) {
                throw PropertyViolation("annihilated_by_disk: coset representative is inconsistent");
            }
            sums[rep] += c * lam->to_cyclo();
        }
        for (const auto &[rep, c] : sums) {
            if (!c.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

namespace {

/// A disk of radius s containing `sites` and meeting the annulus.
std::optional<Region> covering_disk(const StabilizerModel &model, const std::vector<uint32_t> &sites, double s, const Region &annulus) {
    int64_t s2 = (int64_t)std::floor(2 * s + 1e-9);
    if (sites.empty()) {
        return std::nullopt;
    }
    if (model.lattice) {
        const TorusLattice &lat = *model.lattice;
        Point2 p0 = lat.position(model.positions[sites[0]]);
        int64_t best = -1;
        Point2 best_c;
        for (int64_t dx = -s2; dx <= s2; dx++) {
            for (int64_t dy = -s2 + std::abs(dx); dy <= s2 - std::abs(dx); dy++) {
                Point2 c{p0.x + dx, p0.y + dy};
                int64_t far = 0;
                for (uint32_t q : sites) {
                    far = std::max(far, lat.distance2(c, lat.position(model.positions[q])));
                }
                if (far <= s2 && (best < 0 || far < best)) {
                    Region d = model.lift(lat.shell(c, 0, s2));
                    if (d.intersects(annulus)) {
                        best = far;
                        best_c = c;
                    }
                }
            }
        }
        if (best < 0) {
            return std::nullopt;
        }
        return model.lift(lat.shell(best_c, 0, s2));
    }
    int64_t lo = model.positions[sites[0]], hi = lo;
    for (uint32_t q : sites) {
        lo = std::min<int64_t>(lo, model.positions[q]);
        hi = std::max<int64_t>(hi, model.positions[q]);
    }
    if (hi - lo > s2) {
        return std::nullopt;
    }
    int64_t c2 = lo + hi;
    Region d = Region::from_predicate(model.num_sites(), [&](uint32_t q) {
        return std::abs(2 * (int64_t)model.positions[q] - c2) <= s2;
    });
    if (!d.intersects(annulus)) {
        return std::nullopt;
    }
    return d;
}

}  // namespace

namespace {

/// O = O h_1 ... h_{i-1} (1 - h_i) summed over i, for terms h_1, ..., h_m with O h_1 ... h_m = 0.
/// Each piece is checked against the projector of a disk holding its h_i.
std::optional<LocallyNullReport> null_by_term_projectors(const StabilizerState &state, const WeylSum &op, const Region &annulus, double s) {
    const StabilizerModel &model = *state.model();
    // Terms that fail to commute with a Weyl term of op come first: they are the likely annihilators.
    std::vector<size_t> first, second;
    for (size_t j : terms_touching(model, op)) {
        bool commuting = true;
        for (const auto &[c, w] : op.terms()) {
            commuting = commuting && commutes(w, model.terms[j].generator);
        }
        (commuting ? second : first).push_back(j);
    }
    first.insert(first.end(), second.begin(), second.end());

    std::vector<size_t> chosen;
    std::vector<Region> disks;
    std::vector<WeylOp> gens;
    bool annihilated = false;
    for (size_t j : first) {
        auto disk = covering_disk(model, model.terms[j].support, s, annulus);
        if (!disk) {
            continue;
        }
        chosen.push_back(j);
        disks.push_back(*disk);
        gens.push_back(model.terms[j].generator);
        if (annihilated_by_disk(StabilizerGroup(model.system, gens), op)) {
            annihilated = true;
            break;
        }
    }
    if (!annihilated) {
        return std::nullopt;
    }
    // Drop terms that are not needed.
    for (size_t k = chosen.size(); k-- > 0;) {
        if (chosen.size() == 1) {
            break;
        }
        std::vector<WeylOp> fewer;
        for (size_t i = 0; i < chosen.size(); i++) {
            if (i != k) {
                fewer.push_back(model.terms[chosen[i]].generator);
            }
        }
        if (annihilated_by_disk(StabilizerGroup(model.system, fewer), op)) {
            chosen.erase(chosen.begin() + (ptrdiff_t)k);
            disks.erase(disks.begin() + (ptrdiff_t)k);
        }
    }
    LocallyNullReport rep;
    WeylSum one = WeylSum::scalar(model.system, Cyclo(1));
    WeylSum prefix = op;
    for (size_t i = 0; i < chosen.size(); i++) {
        WeylSum h = model.terms[chosen[i]].projector();
        WeylSum piece = prefix * (one - h);
        prefix = prefix * h;
        if (piece.is_zero()) {
            continue;
        }
        if (!annihilated_by_disk(disk_stabilizers(state, disks[i]), piece)) {
            return std::nullopt;
        }
        rep.pieces.push_back(NullPiece{piece, disks[i]});
    }
    rep.null = true;
    rep.detail = std::to_string(rep.pieces.size()) + " pieces O h_1 ... h_(i-1) (1 - h_i), each annihilated by a disk projector";
    return rep;
}

}  // namespace

LocallyNullReport is_locally_null(const StabilizerState &state, const WeylSum &op, const Region &annulus, double s) {
    LocallyNullReport rep;
    if (op.is_zero()) {
        rep.null = true;
        rep.detail = "zero operator";
        return rep;
    }
    if (auto by_terms = null_by_term_projectors(state, op, annulus, s)) {
        return *by_terms;
    }
    const StabilizerGroup &group = state.group();
    struct Entry {
        Cyclo coeff;
        WeylOp op;
        WeylOp stabilizer;
        Cyclo lambda;
    };
    std::map<WeylOp, std::vector<Entry>> cosets;
    for (const auto &[c, w] : op.terms()) {
        WeylOp rep_op = group.reduce(w).with_phase(Phase());
        WeylOp u = w * inverse(rep_op);
        auto lam = group.phase_of(u);
        if (!lam) {
            throw PropertyViolation("is_locally_null: coset representative is inconsistent");
        }
        // w = exp(2 pi i lam) s rep with s a stabilizer of the state.
        WeylOp st = u.with_phase(u.phase() - *lam);
        cosets[rep_op].push_back(Entry{c, w, st, lam->to_cyclo()});
    }
    for (const auto &[rep_op, entries] : cosets) {
        Cyclo total;
        for (const auto &e : entries) {
            total += e.coeff * e.lambda;
        }
        if (!total.is_zero()) {
            rep.detail = "the state does not annihilate the coset of " + rep_op.str();
            return rep;
        }
        for (const auto &e : entries) {
            if (e.stabilizer.is_identity()) {
                continue;
            }
            WeylSum piece(rep_op.system());
            piece.add(e.coeff, e.op);
            piece.add(-(e.coeff * e.lambda), rep_op);
            auto disk = covering_disk(*state.model(), e.stabilizer.support(), s, annulus);
            if (!disk) {
                rep.detail = "stabilizer " + e.stabilizer.str() + " does not fit in a disk of radius " + std::to_string(s) + " meeting the annulus";
                rep.pieces.clear();
                return rep;
            }
            if (!annihilated_by_disk(disk_stabilizers(state, *disk), piece)) {
                rep.detail = "piece " + piece.str() + " is not annihilated on both sides by its disk projector";
                rep.pieces.clear();
                return rep;
            }
            rep.pieces.push_back(NullPiece{piece, *disk});
        }
    }
    rep.null = true;
    rep.detail = std::to_string(rep.pieces.size()) + " pieces, each annihilated by a disk projector";
    return rep;
}

WeylSum symmetrize(const StabilizerModel &model, const WeylSum &op) {
    WeylSum cur = op;
    for (size_t j : terms_touching(model, op)) {
        const WeylOp &g = model.terms[j].generator;
        WeylSum next(op.system());
        for (const auto &[c, w] : cur.terms()) {
            // (1/n) sum_k g^k w g^-k = w (1/n) sum_k exp(2 pi i k c), which is w or 0.
            if (commutation_exponent(g, w).is_zero()) {
                next.add(c, w);
            }
        }
        cur = next;
    }
    return cur;
}

// ---------------------------------------------------------------------------------------------

std::string WitnessReport::str() const {
    std::stringstream out;
    out << scenario << ": pairing = " << pairing.str() << ", <P><Q> = " << product.str() << ", "
        << (violated ? "violated" : "factorizes");
    if (violated) {
        out << "; any preparing circuit from a product state has range >= " << depth_bound;
    }
    out << " [P: " << certificate_method_name(certificate_p.method) << ", Q: " << certificate_method_name(certificate_q.method) << "]";
    return out.str();
}

WitnessReport evaluate_witness(const StabilizerState &state, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair, double r, double t, const WitnessOptions &options) {
    WitnessReport rep;
    if (pair.lattice) {
        rep.geometry_ok = pair.diamond_distance() > 2 * (r + t);
        std::stringstream g;
        g << "dist(C_u, C_d) = " << pair.diamond_distance() << " vs 2 (r + t) = " << 2 * (r + t);
        rep.geometry = g.str();
        if (!rep.geometry_ok) {
            throw ValidationError("evaluate_witness: diamonds too close: " + rep.geometry);
        }
    } else {
        rep.geometry_ok = true;
        rep.geometry = "hand-built regions; the diamond separation condition is not evaluated";
    }
    rep.certificate_p = certify_invisible(state, p, r, t, options);
    rep.certificate_q = certify_invisible(state, q, r, t, options);
    if (!rep.certificate_p.certified() || !rep.certificate_q.certified()) {
        throw ValidationError("evaluate_witness: missing invisibility certificate (" + rep.certificate_p.details + "; " + rep.certificate_q.details + ")");
    }
    rep.pairing = twist_pairing(state, p, q, pair);
    rep.expectation_p = expectation(state, p);
    rep.expectation_q = expectation(state, q);
    rep.product = rep.expectation_p * rep.expectation_q;
    rep.violated = rep.pairing != rep.product;
    rep.depth_bound = rep.violated ? r / 10 : 0;
    return rep;
}

// ---------------------------------------------------------------------------------------------

WitnessScenario ghz_scenario(size_t n) {
    if (n < 4) {
        throw ValidationError("ghz_scenario: need at least 4 qubits");
    }
    WitnessScenario s;
    s.name = "ghz";
    ModelPtr m = build_ghz(n);
    s.state = make_state(m);
    size_t i = n / 4, j = n - 1 - n / 4;
    s.description = "GHZ(" + std::to_string(n) + "): P = X^n on all sites, Q = Z_" + std::to_string(i) + " Z_" + std::to_string(j);
    s.p = WeylSum(m->logicals[0]);
    s.q = WeylSum(WeylOp::z(m->system, (uint32_t)i) * WeylOp::z(m->system, (uint32_t)j));
    Region all = Region::all(n);
    Region right(n, {(uint32_t)i, (uint32_t)j});
    Region m_side = Region::from_predicate(n, [&](uint32_t k) {
        return k >= n / 2;
    });
    s.pair = make_custom_pair(all, right, Region(n, {(uint32_t)j}), Region(n, {(uint32_t)i}), m_side);
    s.r = (double)(j - i) / 2;
    s.t = 0.5;
    return s;
}

WitnessScenario bell_poles_scenario() {
    // Sites: N, S, L1u, L1d, L2u, L2d, R1u, R1d, R2u, R2d.
    WitnessScenario s;
    s.name = "bell-poles";
    s.description = "Bell pair at the poles; P = X_N X_S on the left loop, Q = Z_N Z_S on the right loop";
    auto m = std::make_shared<StabilizerModel>();
    m->name = "bell_poles";
    m->system = SiteSystem::uniform(10, 2);
    for (uint32_t k = 0; k < 10; k++) {
        m->positions.push_back(k);
    }
    for (uint32_t k = 2; k < 10; k++) {
        m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(m->system, k)));
    }
    WeylOp xx = WeylOp::x(m->system, 0) * WeylOp::x(m->system, 1);
    WeylOp zz = WeylOp::z(m->system, 0) * WeylOp::z(m->system, 1);
    m->logicals = {xx, zz};
    s.state = make_state(m);
    s.p = WeylSum(xx);
    s.q = WeylSum(zz);
    s.pair = make_custom_pair(Region(10, {0, 1, 2, 3, 4, 5}), Region(10, {0, 1, 6, 7, 8, 9}), Region(10, {0}), Region(10, {1}), Region(10, {0, 2, 4, 6, 8}));
    s.r = 1;
    s.t = 0.5;
    return s;
}

WitnessScenario toric_scenario(int64_t L, uint32_t d) {
    auto lat = std::make_shared<const TorusLattice>(L);
    ModelPtr m = build_toric_code(lat, d);
    WitnessScenario s;
    s.name = "toric";
    s.state = make_state(m);
    // Annuli of radius 4 and thickness 0.5 with centers 2 apart (diamonds 5 apart at L = 12);
    // the loops run along the middle of the annuli.
    double r_ann = 4, t = 0.5, sep = 2;
    s.pair = m->lift(make_annulus_pair(lat, r_ann, t, sep));
    Point2 cl = s.pair.left_spec.center, cr = s.pair.right_spec.center;
    int64_t r2 = s.pair.left_spec.r2;
    WeylOp xbar = WeylOp::identity(m->system), zbar = WeylOp::identity(m->system);
    for (int64_t y = 0; y < L; y++) {
        for (int64_t x = 0; x < L; x++) {
            if (lat->distance2(Point2{2 * x, 2 * y}, cl) < r2) {
                xbar = xbar * m->terms[(size_t)(y * L + x)].generator;
            }
            if (lat->distance2(Point2{2 * x + 1, 2 * y + 1}, cr) < r2) {
                zbar = zbar * m->terms[(size_t)(L * L + y * L + x)].generator;
            }
        }
    }
    s.p = WeylSum(xbar);
    s.q = WeylSum(zbar);
    for (uint32_t q : xbar.support()) {
        if (!s.pair.left.contains(q)) {
            throw PropertyViolation("toric_scenario: X loop leaves the left annulus");
        }
    }
    for (uint32_t q : zbar.support()) {
        if (!s.pair.right.contains(q)) {
            throw PropertyViolation("toric_scenario: Z loop leaves the right annulus");
        }
    }
    s.r = 1;
    s.t = 0.5;
    std::stringstream desc;
    desc << "Z_" << d << " toric code on L = " << L << ": contractible X loop (vertex terms) and Z loop (plaquette terms), r_ann = "
         << r_ann << ", t = " << t << ", separation = " << sep;
    s.description = desc.str();
    return s;
}

WitnessScenario planar_patch_scenario(uint32_t d) {
    const int64_t nx = 3, ny = 4, nh = (nx - 1) * ny;
    ModelPtr m = build_planar_patch(nx, ny, d);
    size_t n = m->num_sites();
    auto h = [&](int64_t x, int64_t y) {
        return (uint32_t)(y * (nx - 1) + x);
    };
    auto v = [&](int64_t x, int64_t y) {
        return (uint32_t)(nh + y * nx + x);
    };
    WitnessScenario s;
    s.name = "planar-patch";
    s.description = "planar Z_" + std::to_string(d) + " patch of 3 x 4 vertices: X loop A_(1,1) A_(1,2), Z loop B_(0,1)";
    s.state = make_state(m);
    WeylOp xbar = m->terms[(size_t)(1 * nx + 1)].generator * m->terms[(size_t)(2 * nx + 1)].generator;
    WeylOp zbar = m->terms[(size_t)(nx * ny + 1 * (nx - 1) + 0)].generator;
    s.p = WeylSum(xbar);
    s.q = WeylSum(zbar);
    Region left(n, xbar.support()), right(n, zbar.support());
    Region m_side = Region::from_predicate(n, [&](uint32_t q) {
        if (q < nh) {
            return (int64_t)q / (nx - 1) >= 2;
        }
        return ((int64_t)q - nh) / nx >= 2;
    });
    s.pair = make_custom_pair(left, right, Region(n, {h(0, 2)}), Region(n, {h(0, 1)}), m_side);
    (void)v;
    s.r = 1;
    s.t = 0.5;
    return s;
}

WitnessScenario product_state_scenario(uint64_t seed) {
    const uint32_t d = 3;
    auto sys = SiteSystem::uniform(10, d);
    ModelPtr base = build_product_state(sys);
    std::mt19937_64 rng(seed);
    Circuit w;
    w.system = sys;
    w.seed = seed;
    std::vector<CliffordGate> layer;
    for (uint32_t k = 0; k < 10; k++) {
        switch (rng() % 3) {
            case 0:
                layer.push_back(CliffordGate::fourier(sys, k));
                break;
            case 1:
                layer.push_back(CliffordGate::phase(sys, k));
                break;
            default:
                layer.push_back(CliffordGate::multiply(sys, k, 2));
                break;
        }
    }
    w.layers.push_back(layer);
    ModelPtr m = evolve_model(w, *base);
    WitnessScenario s;
    s.name = "product-state";
    s.description = "qutrit product state dressed by single-site Cliffords (seed " + std::to_string(seed) + ")";
    s.state = make_state(m);
    const std::vector<uint32_t> left_sites{0, 1, 2, 3, 4, 5}, right_sites{0, 1, 6, 7, 8, 9};
    auto sample = [&](const std::vector<uint32_t> &sites) {
        WeylSum out(sys);
        for (int k = 0; k < 3; k++) {
            WeylOp op = WeylOp::identity(sys);
            for (uint32_t q : sites) {
                op = op * power(m->terms[q].generator, (int64_t)(rng() % d));
            }
            Rational scale((long)(rng() % 5 + 1), 3);
            scale.canonicalize();
            Cyclo c = Cyclo::root_of_unity((int64_t)(rng() % 6), 6).scaled(scale);
            out.add(c, op);
        }
        return out;
    };
    s.p = sample(left_sites);
    s.q = sample(right_sites);
    s.pair = make_custom_pair(Region(10, left_sites), Region(10, right_sites), Region(10, {0}), Region(10, {1}), Region(10, {0, 2, 4, 6, 8}));
    s.r = 1;
    s.t = 0.5;
    return s;
}

std::vector<std::string> builtin_names() {
    return {"ghz", "bell-poles", "toric", "planar-patch", "product-state"};
}

WitnessScenario builtin_scenario(const std::string &name, uint64_t seed) {
    if (name == "ghz") {
        return ghz_scenario(10);
    }
    if (name == "bell-poles") {
        return bell_poles_scenario();
    }
    if (name == "toric") {
        return toric_scenario();
    }
    if (name == "planar-patch") {
        return planar_patch_scenario();
    }
    if (name == "product-state") {
        return product_state_scenario(seed);
    }
    throw ValidationError("unknown witness scenario '" + name + "'");
}

std::vector<WitnessScenario> builtin_examples() {
    std::vector<WitnessScenario> out;
    for (const auto &name : builtin_names()) {
        out.push_back(builtin_scenario(name));
    }
    return out;
}

WitnessReport run_scenario(const WitnessScenario &s, const WitnessOptions &options) {
    WitnessReport rep = evaluate_witness(*s.state, s.p, s.q, s.pair, s.r, s.t, options);
    rep.scenario = s.name;
    return rep;
}

}  // namespace stilde

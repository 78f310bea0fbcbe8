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

#include "stilde/model.h"

#include <numeric>
#include <sstream>

#include "stilde/errors.h"
#include "stilde/oracle.h"

namespace stilde {

ProjectorTerm ProjectorTerm::from_generator(const WeylOp &g) {
    OrderResult o = order_of(g);
    if (!o.residual.is_zero()) {
        throw ValidationError("ProjectorTerm: generator power is a nontrivial scalar, not a projector: " + g.str());
    }
    ProjectorTerm t;
    t.generator = g;
    t.order = o.order;
    t.support = g.support();
    return t;
}

WeylSum ProjectorTerm::projector() const {
    WeylSum s(generator.system());
    Rational w(1, order);
    WeylOp p = WeylOp::identity(generator.system());
    for (int64_t k = 0; k < order; k++) {
        s.add(Cyclo(w), p);
        p = p * generator;
    }
    return s;
}

std::vector<WeylOp> StabilizerModel::term_generators() const {
    std::vector<WeylOp> out;
    out.reserve(terms.size());
    for (const auto &t : terms) {
        out.push_back(t.generator);
    }
    return out;
}

std::vector<WeylOp> StabilizerModel::stabilizer_generators() const {
    std::vector<WeylOp> out = term_generators();
    out.insert(out.end(), logicals.begin(), logicals.end());
    return out;
}

Region StabilizerModel::lift(const Region &lattice_region) const {
    if (!lattice) {
        if (lattice_region.universe() != num_sites()) {
            throw ValidationError("lift: region does not match the model sites");
        }
        return lattice_region;
    }
    if (lattice_region.universe() != lattice->num_sites()) {
        throw ValidationError("lift: region does not match the lattice");
    }
    return Region::from_predicate(num_sites(), [&](uint32_t s) {
        return lattice_region.contains(positions[s]);
    });
}

AnnulusPair StabilizerModel::lift(const AnnulusPair &pair) const {
    if (!lattice && pair.left.universe() == num_sites()) {
        return pair;
    }
    AnnulusPair p = pair;
    p.left = lift(pair.left);
    p.right = lift(pair.right);
    p.c_u = lift(pair.c_u);
    p.c_d = lift(pair.c_d);
    p.m = lift(pair.m);
    return p;
}

std::vector<size_t> StabilizerModel::terms_meeting(const Region &r) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < terms.size(); k++) {
        for (uint32_t s : terms[k].support) {
            if (r.contains(s)) {
                out.push_back(k);
                break;
            }
        }
    }
    return out;
}

std::vector<size_t> StabilizerModel::terms_inside(const Region &r) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < terms.size(); k++) {
        bool inside = true;
        for (uint32_t s : terms[k].support) {
            if (!r.contains(s)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            out.push_back(k);
        }
    }
    return out;
}

void StabilizerModel::recompute_interaction_range() {
    interaction_range = 0;
    if (!lattice) {
        return;
    }
    int64_t best = 0;
    for (const auto &t : terms) {
        for (uint32_t a : t.support) {
            for (uint32_t b : t.support) {
                best = std::max(best, lattice->site_distance2(positions[a], positions[b]));
            }
        }
    }
    interaction_range = best / 2.0;
}

// ---------------------------------------------------------------------------------------------

StabilizerState::StabilizerState(ModelPtr model)
    : model_(std::move(model)), group_(model_->system, model_->stabilizer_generators()) {
    if (group_.frustrated()) {
        throw PropertyViolation("StabilizerState: stabilizers contain a nontrivial scalar (frustrated model)");
    }
}

bool StabilizerState::complete() const {
    BigInt dim = 1;
    for (uint32_t d : model_->system->dims()) {
        dim *= BigInt((long)d);
    }
    return group_.order() == dim;
}

StatePtr make_state(ModelPtr model) {
    return std::make_shared<const StabilizerState>(std::move(model));
}

Cyclo expectation(const StabilizerState &state, const WeylOp &op) {
    auto ph = state.group().phase_of(op);
    if (!ph) {
        return Cyclo();
    }
    return ph->to_cyclo();
}

Cyclo expectation(const StabilizerState &state, const WeylSum &op) {
    Cyclo acc;
    for (const auto &[c, p] : op.terms()) {
        auto ph = state.group().phase_of(p);
        if (ph) {
            acc += c * ph->to_cyclo();
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------------------------

namespace {

std::vector<uint32_t> identity_positions(size_t n) {
    std::vector<uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

WeylOp signed_product(const SiteSystemPtr &sys, const std::array<uint32_t, 4> &edges, bool z_type) {
    WeylOp g = WeylOp::identity(sys);
    const int exps[4] = {1, 1, -1, -1};
    for (int k = 0; k < 4; k++) {
        if (z_type) {
            g.set_z(edges[k], g.z_exp(edges[k]) + exps[k]);
        } else {
            g.set_x(edges[k], g.x_exp(edges[k]) + exps[k]);
        }
    }
    return g;
}

}  // namespace

ModelPtr build_toric_code(std::shared_ptr<const TorusLattice> lattice, uint32_t d, std::pair<int64_t, int64_t> logical_phase) {
    if (!lattice) {
        throw ValidationError("build_toric_code: missing lattice");
    }
    if (d < 2) {
        throw ValidationError("build_toric_code: d must be at least 2");
    }
    auto m = std::make_shared<StabilizerModel>();
    int64_t L = lattice->size();
    m->name = "toric_code_Z" + std::to_string(d);
    m->system = SiteSystem::uniform(lattice->num_sites(), d);
    m->lattice = lattice;
    m->positions = identity_positions(lattice->num_sites());
    for (int64_t y = 0; y < L; y++) {
        for (int64_t x = 0; x < L; x++) {
            m->terms.push_back(ProjectorTerm::from_generator(signed_product(m->system, lattice->vertex_edges(x, y), false)));
        }
    }
    for (int64_t y = 0; y < L; y++) {
        for (int64_t x = 0; x < L; x++) {
            m->terms.push_back(ProjectorTerm::from_generator(signed_product(m->system, lattice->plaquette_edges(x, y), true)));
        }
    }
    WeylOp zh = WeylOp::scalar(m->system, Phase(logical_phase.first, d));
    WeylOp zv = WeylOp::scalar(m->system, Phase(logical_phase.second, d));
    for (int64_t k = 0; k < L; k++) {
        zh.set_z(lattice->horizontal_edge(k, 0), 1);
        zv.set_z(lattice->vertical_edge(0, k), 1);
    }
    m->logicals = {zh, zv};
    m->group_label = {(int64_t)d};
    m->recompute_interaction_range();
    return m;
}

ModelPtr stack_models(const StabilizerModel &a, const StabilizerModel &b) {
    if ((a.lattice == nullptr) != (b.lattice == nullptr) ||
        (a.lattice && a.lattice->size() != b.lattice->size())) {
        throw ValidationError("stack_models: mismatched lattices");
    }
    size_t na = a.num_sites();
    std::vector<uint32_t> dims = a.system->dims();
    dims.insert(dims.end(), b.system->dims().begin(), b.system->dims().end());
    auto m = std::make_shared<StabilizerModel>();
    m->name = a.name + "+" + b.name;
    m->system = SiteSystem::make(dims);
    m->lattice = a.lattice;
    m->positions = a.positions;
    m->positions.insert(m->positions.end(), b.positions.begin(), b.positions.end());
    auto embed = [&](const WeylOp &op, size_t offset) {
        WeylOp r = WeylOp::scalar(m->system, op.phase());
        for (uint32_t s : op.support()) {
            r.set_x(s + offset, op.x_exp(s));
            r.set_z(s + offset, op.z_exp(s));
        }
        return r;
    };
    for (const auto &t : a.terms) {
        m->terms.push_back(ProjectorTerm::from_generator(embed(t.generator, 0)));
    }
    for (const auto &t : b.terms) {
        m->terms.push_back(ProjectorTerm::from_generator(embed(t.generator, na)));
    }
    for (const auto &l : a.logicals) {
        m->logicals.push_back(embed(l, 0));
    }
    for (const auto &l : b.logicals) {
        m->logicals.push_back(embed(l, na));
    }
    m->group_label = a.group_label;
    m->group_label.insert(m->group_label.end(), b.group_label.begin(), b.group_label.end());
    m->recompute_interaction_range();
    return m;
}

ModelPtr add_trivial_ancillas(const StabilizerModel &src, size_t count, uint32_t d) {
    auto m = std::make_shared<StabilizerModel>(src);
    if (count == 0) {
        return m;
    }
    size_t n = src.num_sites();
    std::vector<uint32_t> dims = src.system->dims();
    for (size_t k = 0; k < count; k++) {
        dims.push_back(d);
    }
    m->system = SiteSystem::make(dims);
    size_t universe = src.lattice ? src.lattice->num_sites() : n + count;
    if (!src.lattice) {
        // Without a lattice the ancillas simply become new sites.
        m->positions = identity_positions(n + count);
    } else {
        for (size_t k = 0; k < count; k++) {
            // Spread the ancillas over the lattice so that some land inside any large region.
            m->positions.push_back((uint32_t)((k * 7919) % universe));
        }
    }
    auto widen = [&](const WeylOp &op) {
        WeylOp r = WeylOp::scalar(m->system, op.phase());
        for (uint32_t s : op.support()) {
            r.set_x(s, op.x_exp(s));
            r.set_z(s, op.z_exp(s));
        }
        return r;
    };
    for (auto &t : m->terms) {
        t = ProjectorTerm::from_generator(widen(t.generator));
    }
    for (auto &l : m->logicals) {
        l = widen(l);
    }
    for (size_t k = 0; k < count; k++) {
        m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(m->system, (uint32_t)(n + k))));
    }
    m->name = src.name + "+ancillas" + std::to_string(count);
    m->recompute_interaction_range();
    return m;
}

ModelPtr add_redundant_plaquette_pairs(const StabilizerModel &src) {
    if (!src.lattice || src.num_sites() != src.lattice->num_sites()) {
        throw ValidationError("add_redundant_plaquette_pairs: needs a single-layer lattice model");
    }
    auto m = std::make_shared<StabilizerModel>(src);
    const TorusLattice &lat = *src.lattice;
    for (int64_t y = 0; y < lat.size(); y++) {
        for (int64_t x = 0; x < lat.size(); x++) {
            WeylOp a = signed_product(m->system, lat.plaquette_edges(x, y), true);
            WeylOp b = signed_product(m->system, lat.plaquette_edges(x + 1, y), true);
            m->terms.push_back(ProjectorTerm::from_generator(a * b));
        }
    }
    m->name = src.name + "+redundant";
    m->recompute_interaction_range();
    return m;
}

ModelPtr build_ghz(size_t n) {
    if (n < 2) {
        throw ValidationError("build_ghz: need at least 2 qubits");
    }
    auto m = std::make_shared<StabilizerModel>();
    m->name = "ghz" + std::to_string(n);
    m->system = SiteSystem::uniform(n, 2);
    m->positions = identity_positions(n);
    for (uint32_t i = 0; i + 1 < n; i++) {
        m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(m->system, i) * WeylOp::z(m->system, i + 1)));
    }
    WeylOp xs = WeylOp::identity(m->system);
    for (uint32_t i = 0; i < n; i++) {
        xs.set_x(i, 1);
    }
    m->logicals = {xs};
    return m;
}

ModelPtr build_ising_with_field(size_t n, size_t field_site) {
    if (n < 2 || field_site >= n) {
        throw ValidationError("build_ising_with_field: bad chain");
    }
    auto m = std::make_shared<StabilizerModel>();
    m->name = "ising_field" + std::to_string(n);
    m->system = SiteSystem::uniform(n, 2);
    m->positions = identity_positions(n);
    for (uint32_t i = 0; i + 1 < n; i++) {
        m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(m->system, i) * WeylOp::z(m->system, i + 1)));
    }
    m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(m->system, (uint32_t)field_site)));
    return m;
}

ModelPtr build_product_state(SiteSystemPtr sys) {
    auto m = std::make_shared<StabilizerModel>();
    m->name = "product" + std::to_string(sys->size());
    m->system = sys;
    m->positions = identity_positions(sys->size());
    for (uint32_t i = 0; i < sys->size(); i++) {
        m->terms.push_back(ProjectorTerm::from_generator(WeylOp::z(sys, i)));
    }
    return m;
}

ModelPtr build_planar_patch(int64_t nx, int64_t ny, uint32_t d) {
    if (nx < 2 || ny < 2) {
        throw ValidationError("build_planar_patch: need at least 2 x 2 vertices");
    }
    int64_t nh = (nx - 1) * ny, nv = nx * (ny - 1);
    auto m = std::make_shared<StabilizerModel>();
    m->name = "planar_patch_Z" + std::to_string(d);
    m->system = SiteSystem::uniform((size_t)(nh + nv), d);
    // Embedded in a torus with a margin of two lattice units so that disks see a planar patch.
    m->lattice = std::make_shared<const TorusLattice>(std::max(nx, ny) + 2);
    for (int64_t y = 0; y < ny; y++) {
        for (int64_t x = 0; x + 1 < nx; x++) {
            m->positions.push_back(m->lattice->horizontal_edge(x, y));
        }
    }
    for (int64_t y = 0; y + 1 < ny; y++) {
        for (int64_t x = 0; x < nx; x++) {
            m->positions.push_back(m->lattice->vertical_edge(x, y));
        }
    }
    auto h = [&](int64_t x, int64_t y) -> int64_t {
        return (x >= 0 && x < nx - 1 && y >= 0 && y < ny) ? y * (nx - 1) + x : -1;
    };
    auto v = [&](int64_t x, int64_t y) -> int64_t {
        return (x >= 0 && x < nx && y >= 0 && y < ny - 1) ? nh + y * nx + x : -1;
    };
    auto build = [&](std::array<int64_t, 4> edges, bool z_type) {
        WeylOp g = WeylOp::identity(m->system);
        const int exps[4] = {1, 1, -1, -1};
        for (int k = 0; k < 4; k++) {
            if (edges[k] < 0) {
                continue;
            }
            if (z_type) {
                g.set_z(edges[k], exps[k]);
            } else {
                g.set_x(edges[k], exps[k]);
            }
        }
        return g;
    };
    for (int64_t y = 0; y < ny; y++) {
        for (int64_t x = 0; x < nx; x++) {
            m->terms.push_back(ProjectorTerm::from_generator(build({h(x, y), v(x, y), h(x - 1, y), v(x, y - 1)}, false)));
        }
    }
    for (int64_t y = 0; y + 1 < ny; y++) {
        for (int64_t x = 0; x + 1 < nx; x++) {
            m->terms.push_back(ProjectorTerm::from_generator(build({h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)}, true)));
        }
    }
    m->recompute_interaction_range();
    m->group_label = {(int64_t)d};
    return m;
}

// ---------------------------------------------------------------------------------------------

std::string ModelReport::str() const {
    std::stringstream out;
    out << "commuting=" << (commuting ? "pass" : "FAIL") << " frustration_free=" << (frustration_free ? "pass" : "FAIL")
        << " projectors_exact=" << (projectors_exact ? "pass" : "FAIL") << " lto=";
    if (lto_small_instance) {
        out << (*lto_small_instance ? "pass" : "FAIL");
    } else {
        out << "skipped";
    }
    if (!lto_detail.empty()) {
        out << " (" << lto_detail << ")";
    }
    return out.str();
}

ModelReport check_model(const StabilizerModel &m, bool run_dense, size_t dense_cap) {
    ModelReport rep;
    rep.commuting = true;
    std::vector<WeylOp> gens = m.stabilizer_generators();
    for (size_t i = 0; i < gens.size() && rep.commuting; i++) {
        for (size_t j = i + 1; j < gens.size(); j++) {
            if (!commutes(gens[i], gens[j])) {
                rep.commuting = false;
                break;
            }
        }
    }
    rep.projectors_exact = true;
    for (const auto &t : m.terms) {
        OrderResult o = order_of(t.generator);
        if (o.order != t.order || !o.residual.is_zero()) {
            rep.projectors_exact = false;
        }
    }
    if (rep.commuting) {
        StabilizerGroup g(m.system, gens);
        rep.frustration_free = !g.frustrated();
    }
    if (run_dense && rep.commuting && rep.frustration_free) {
        if (dense_dimension(*m.system) <= dense_cap) {
            DenseLtoReport lto = dense_lto_check(m, dense_cap);
            rep.lto_small_instance = lto.pass;
            rep.lto_detail = lto.detail;
        } else {
            rep.lto_detail = "instance above the dense cap";
        }
    }
    return rep;
}

}  // namespace stilde

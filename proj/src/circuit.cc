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

#include "stilde/circuit.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "stilde/errors.h"

namespace stilde {

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Fourier:
            return "fourier";
        case GateKind::Phase:
            return "phase";
        case GateKind::Multiply:
            return "multiply";
        case GateKind::Sum:
            return "sum";
        case GateKind::Swap:
            return "swap";
        case GateKind::Custom:
            return "custom";
    }
    return "custom";
}

GateKind gate_kind_from_name(const std::string &name) {
    for (GateKind k : {GateKind::Fourier, GateKind::Phase, GateKind::Multiply, GateKind::Sum, GateKind::Swap, GateKind::Custom}) {
        if (name == gate_kind_name(k)) {
            return k;
        }
    }
    throw ScopeError("unknown gate '" + name + "' (only Clifford gates from the library or custom symplectic data)");
}

namespace {

void check_site(const SiteSystemPtr &sys, uint32_t s) {
    if (!sys || s >= sys->size()) {
        throw ValidationError("CliffordGate: site " + std::to_string(s) + " out of range");
    }
}

CliffordGate library_gate(GateKind kind, const SiteSystemPtr &sys, std::vector<uint32_t> sites, int64_t param, std::vector<WeylOp> xi, std::vector<WeylOp> zi) {
    CliffordGate g = CliffordGate::custom(sys, std::move(sites), std::move(xi), std::move(zi));
    g.kind = kind;
    g.param = param;
    return g;
}

}  // namespace

CliffordGate CliffordGate::fourier(const SiteSystemPtr &sys, uint32_t s) {
    check_site(sys, s);
    return library_gate(GateKind::Fourier, sys, {s}, 0, {WeylOp::z(sys, s)}, {WeylOp::x(sys, s, -1)});
}

CliffordGate CliffordGate::phase(const SiteSystemPtr &sys, uint32_t s) {
    check_site(sys, s);
    int64_t d = sys->dim(s);
    WeylOp xi = WeylOp::x(sys, s) * WeylOp::z(sys, s);
    xi.set_phase(d % 2 == 0 ? Phase(1, 2 * d) : Phase());
    return library_gate(GateKind::Phase, sys, {s}, 0, {xi}, {WeylOp::z(sys, s)});
}

CliffordGate CliffordGate::multiply(const SiteSystemPtr &sys, uint32_t s, int64_t a) {
    check_site(sys, s);
    int64_t d = sys->dim(s);
    a = mod64(a, d);
    if (gcd64(a, d) != 1) {
        throw ValidationError("CliffordGate::multiply: factor must be a unit modulo the dimension");
    }
    return library_gate(GateKind::Multiply, sys, {s}, a, {WeylOp::x(sys, s, a)}, {WeylOp::z(sys, s, inverse_mod(a, d))});
}

CliffordGate CliffordGate::sum(const SiteSystemPtr &sys, uint32_t c, uint32_t t) {
    check_site(sys, c);
    check_site(sys, t);
    if (c == t || sys->dim(c) != sys->dim(t)) {
        throw ValidationError("CliffordGate::sum: needs two distinct sites of equal dimension");
    }
    return library_gate(GateKind::Sum, sys, {c, t}, 0,
                        {WeylOp::x(sys, c) * WeylOp::x(sys, t), WeylOp::x(sys, t)},
                        {WeylOp::z(sys, c), WeylOp::z(sys, c, -1) * WeylOp::z(sys, t)});
}

CliffordGate CliffordGate::swap(const SiteSystemPtr &sys, uint32_t a, uint32_t b) {
    check_site(sys, a);
    check_site(sys, b);
    if (a == b || sys->dim(a) != sys->dim(b)) {
        throw ValidationError("CliffordGate::swap: needs two distinct sites of equal dimension");
    }
    return library_gate(GateKind::Swap, sys, {a, b}, 0, {WeylOp::x(sys, b), WeylOp::x(sys, a)}, {WeylOp::z(sys, b), WeylOp::z(sys, a)});
}

CliffordGate CliffordGate::custom(const SiteSystemPtr &sys, std::vector<uint32_t> sites, std::vector<WeylOp> xi, std::vector<WeylOp> zi) {
    if (sites.empty() || sites.size() > 2) {
        throw ValidationError("CliffordGate: a gate acts on one or two sites");
    }
    if (xi.size() != sites.size() || zi.size() != sites.size()) {
        throw ValidationError("CliffordGate: one X image and one Z image per site");
    }
    if (sites.size() == 2 && sites[0] == sites[1]) {
        throw ValidationError("CliffordGate: repeated site");
    }
    std::vector<WeylOp> before, after;
    for (size_t k = 0; k < sites.size(); k++) {
        check_site(sys, sites[k]);
        before.push_back(WeylOp::x(sys, sites[k]));
        before.push_back(WeylOp::z(sys, sites[k]));
        after.push_back(xi[k]);
        after.push_back(zi[k]);
    }
    for (size_t i = 0; i < after.size(); i++) {
        if (!(*after[i].system() == *sys)) {
            throw ValidationError("CliffordGate: image on a different site system");
        }
        for (uint32_t s : after[i].support()) {
            if (std::find(sites.begin(), sites.end(), s) == sites.end()) {
                throw ValidationError("CliffordGate: image leaves the gate support");
            }
        }
        if (!power(after[i], sys->dim(sites[i / 2])).is_identity()) {
            throw ValidationError("CliffordGate: image does not have the order of the local dimension");
        }
        for (size_t j = i + 1; j < after.size(); j++) {
            if (commutation_exponent(after[i], after[j]) != commutation_exponent(before[i], before[j])) {
                throw ValidationError("CliffordGate: images do not preserve the commutation relations");
            }
        }
    }
    CliffordGate g;
    g.kind = GateKind::Custom;
    g.sites = std::move(sites);
    g.x_images = std::move(xi);
    g.z_images = std::move(zi);
    return g;
}

WeylOp CliffordGate::conjugate(const WeylOp &p) const {
    WeylOp out = p;
    for (uint32_t s : sites) {
        out.set_x(s, 0);
        out.set_z(s, 0);
    }
    for (size_t k = 0; k < sites.size(); k++) {
        uint32_t x = p.x_exp(sites[k]), z = p.z_exp(sites[k]);
        if (x) {
            out = out * power(x_images[k], x);
        }
        if (z) {
            out = out * power(z_images[k], z);
        }
    }
    return out;
}

std::string CliffordGate::str() const {
    std::stringstream out;
    out << gate_kind_name(kind) << "(";
    for (size_t k = 0; k < sites.size(); k++) {
        out << (k ? ", " : "") << sites[k];
    }
    if (kind == GateKind::Multiply) {
        out << "; a=" << param;
    }
    out << ")";
    return out.str();
}

void Circuit::validate() const {
    for (size_t l = 0; l < layers.size(); l++) {
        std::vector<bool> busy(system ? system->size() : 0, false);
        for (const auto &g : layers[l]) {
            for (uint32_t s : g.sites) {
                if (s >= busy.size()) {
                    throw ValidationError("Circuit: gate site out of range");
                }
                if (busy[s]) {
                    throw ValidationError("Circuit: overlapping gates in layer " + std::to_string(l));
                }
                busy[s] = true;
            }
        }
    }
}

size_t Circuit::gate_count() const {
    size_t n = 0;
    for (const auto &layer : layers) {
        n += layer.size();
    }
    return n;
}

WeylOp conjugate_op(const Circuit &w, const WeylOp &p) {
    WeylOp out = p;
    for (const auto &layer : w.layers) {
        for (const auto &g : layer) {
            bool touched = false;
            for (uint32_t s : g.sites) {
                touched = touched || out.acts_on(s);
            }
            if (touched) {
                out = g.conjugate(out);
            }
        }
    }
    return out;
}

WeylSum conjugate_op(const Circuit &w, const WeylSum &p) {
    WeylSum out(p.system());
    for (const auto &[c, op] : p.terms()) {
        out.add(c, conjugate_op(w, op));
    }
    return out;
}

std::vector<std::pair<uint32_t, uint32_t>> neighbor_pairs(const StabilizerModel &model) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    const SiteSystem &sys = *model.system;
    size_t n = model.num_sites();
    if (model.lattice) {
        const TorusLattice &lat = *model.lattice;
        std::vector<std::vector<uint32_t>> at(lat.num_sites());
        for (uint32_t s = 0; s < n; s++) {
            at[model.positions[s]].push_back(s);
        }
        for (uint32_t s = 0; s < n; s++) {
            Point2 p = lat.position(model.positions[s]);
            for (int64_t dx = -2; dx <= 2; dx++) {
                for (int64_t dy = -2; dy <= 2; dy++) {
                    int64_t m = std::abs(dx) + std::abs(dy);
                    if (m != 0 && m != 2) {
                        continue;
                    }
                    int64_t qx = p.x + dx, qy = p.y + dy;
                    if (mod64(qx + qy, 2) != 1) {
                        continue;
                    }
                    uint32_t e = mod64(qx, 2) ? lat.horizontal_edge((qx - 1) / 2, qy / 2) : lat.vertical_edge(qx / 2, (qy - 1) / 2);
                    for (uint32_t t : at[e]) {
                        if (t > s && sys.dim(s) == sys.dim(t)) {
                            out.emplace_back(s, t);
                        }
                    }
                }
            }
        }
    } else {
        for (uint32_t s = 0; s < n; s++) {
            for (uint32_t t = s + 1; t < n; t++) {
                int64_t gap = (int64_t)model.positions[t] - (int64_t)model.positions[s];
                if (std::abs(gap) <= 1 && sys.dim(s) == sys.dim(t)) {
                    out.emplace_back(s, t);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Circuit random_circuit(const StabilizerModel &model, int64_t depth, uint64_t seed, double two_site_fraction) {
    if (depth < 0) {
        throw ValidationError("random_circuit: negative depth");
    }
    Circuit c;
    c.system = model.system;
    c.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0, 1);
    auto pairs = neighbor_pairs(model);
    size_t n = model.num_sites();
    for (int64_t l = 0; l < depth; l++) {
        std::vector<CliffordGate> layer;
        std::vector<bool> busy(n, false);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (auto [a, b] : pairs) {
            if (busy[a] || busy[b] || coin(rng) >= two_site_fraction) {
                continue;
            }
            busy[a] = busy[b] = true;
            double u = coin(rng);
            if (u < 0.4) {
                layer.push_back(CliffordGate::sum(c.system, a, b));
            } else if (u < 0.8) {
                layer.push_back(CliffordGate::sum(c.system, b, a));
            } else {
                layer.push_back(CliffordGate::swap(c.system, a, b));
            }
        }
        for (uint32_t s = 0; s < n; s++) {
            if (busy[s]) {
                continue;
            }
            int64_t d = model.system->dim(s);
            switch (rng() % 4) {
                case 0:
                    layer.push_back(CliffordGate::fourier(c.system, s));
                    break;
                case 1:
                    layer.push_back(CliffordGate::phase(c.system, s));
                    break;
                case 2: {
                    std::vector<int64_t> units;
                    for (int64_t a = 2; a < d; a++) {
                        if (gcd64(a, d) == 1) {
                            units.push_back(a);
                        }
                    }
                    if (!units.empty()) {
                        layer.push_back(CliffordGate::multiply(c.system, s, units[rng() % units.size()]));
                    }
                    break;
                }
                default:
                    break;
            }
        }
        std::sort(layer.begin(), layer.end(), [](const CliffordGate &x, const CliffordGate &y) {
            return x.sites < y.sites;
        });
        c.layers.push_back(std::move(layer));
    }
    return c;
}

ModelPtr evolve_model(const Circuit &w, const StabilizerModel &model) {
    if (!w.system || !(*w.system == *model.system)) {
        throw ValidationError("evolve_model: circuit and model act on different sites");
    }
    w.validate();
    auto m = std::make_shared<StabilizerModel>(model);
    for (auto &t : m->terms) {
        t = ProjectorTerm::from_generator(conjugate_op(w, t.generator));
    }
    for (auto &l : m->logicals) {
        l = conjugate_op(w, l);
    }
    m->interaction_range = model.interaction_range + 2 * w.range();
    m->name = model.name + "+circuit(depth " + std::to_string(w.depth()) + ", seed " + std::to_string(w.seed) + ")";
    return m;
}

std::string InvarianceReport::str() const {
    std::stringstream out;
    out << "equivalent=" << (equivalent ? "yes" : "NO") << " certified=" << (certified ? "yes" : "no (bound not met)")
        << " lemma=" << (lemma_samples - lemma_failures) << "/" << lemma_samples << " seed=" << seed;
    if (!detail.empty()) {
        out << " (" << detail << ")";
    }
    return out.str();
}

namespace {

WeylOp random_op_on(const Region &r, const SiteSystemPtr &sys, std::mt19937_64 &rng) {
    WeylOp op = WeylOp::identity(sys);
    for (uint32_t s : r.sites()) {
        op.set_x(s, (int64_t)(rng() % sys->dim(s)));
        op.set_z(s, (int64_t)(rng() % sys->dim(s)));
    }
    op.set_phase(Phase((int64_t)(rng() % sys->lcm()), sys->lcm()));
    return op;
}

}  // namespace

InvarianceReport invariance_experiment(const StabilizerModel &model, const AnnulusPair &pair, const Circuit &w, int64_t lemma_samples, uint64_t seed, bool strict) {
    if (!model.lattice || !pair.lattice) {
        throw ValidationError("invariance_experiment: needs a lattice model and a lattice pair");
    }
    InvarianceReport rep;
    rep.seed = seed;
    double R = w.range();
    rep.geometry = validate_geometry(pair, R, model.interaction_range);
    rep.certified = strict ? rep.geometry.strict_ok() && rep.geometry.desk_ok() : rep.geometry.desk_ok();

    auto state0 = std::make_shared<StabilizerState>(std::make_shared<StabilizerModel>(model));
    AnnulusPair p0 = model.lift(pair);
    LogicalAlgebra l0 = logical_quotient(*state0, pair.left_spec);
    LogicalAlgebra r0 = logical_quotient(*state0, pair.right_spec);
    rep.before = stilde_matrix(*state0, l0, r0, p0);

    ModelPtr evolved = evolve_model(w, model);
    StabilizerState state1(evolved);
    AnnulusPair thick = pair.thickened((int64_t)std::llround(2 * R));
    AnnulusPair p1 = evolved->lift(thick);
    LogicalAlgebra l1 = logical_quotient(state1, thick.left_spec);
    LogicalAlgebra r1 = logical_quotient(state1, thick.right_spec);
    rep.after = stilde_matrix(state1, l1, r1, p1);
    rep.equivalent = stilde_equivalent(rep.before, rep.after);

    std::mt19937_64 rng(seed);
    for (int64_t k = 0; k < lemma_samples; k++) {
        WeylOp p = random_op_on(p0.left, model.system, rng);
        WeylOp q = random_op_on(p0.right, model.system, rng);
        WeylOp lhs = conjugate_op(w, twist_product(p, q, p0));
        WeylOp rhs = twist_product(conjugate_op(w, p), conjugate_op(w, q), p1);
        rep.lemma_samples++;
        if (lhs != rhs) {
            rep.lemma_failures++;
        }
    }
    std::stringstream d;
    d << "t = " << pair.left_spec.t() << " -> " << thick.left_spec.t() << ", R = " << R << ", w = " << model.interaction_range
      << " -> " << evolved->interaction_range << ", |S~| = " << rep.before.rows();
    rep.detail = d.str();
    return rep;
}

}  // namespace stilde

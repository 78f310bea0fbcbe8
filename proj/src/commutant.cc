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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "stilde/errors.h"

namespace stilde {

std::vector<int64_t> CommutantGroup::vector_of(const WeylOp &op) const {
    std::vector<int64_t> v(2 * region.size());
    size_t k = 0;
    for (uint32_t s : region.sites()) {
        v[2 * k] = op.x_exp(s);
        v[2 * k + 1] = op.z_exp(s);
        k++;
    }
    return v;
}

WeylOp CommutantGroup::op_of(const std::vector<int64_t> &v) const {
    WeylOp op = WeylOp::identity(system);
    size_t k = 0;
    for (uint32_t s : region.sites()) {
        op.set_x(s, v[2 * k]);
        op.set_z(s, v[2 * k + 1]);
        k++;
    }
    return op;
}

bool CommutantGroup::contains(const WeylOp &op) const {
    for (uint32_t s : op.support()) {
        if (!region.contains(s)) {
            return false;
        }
    }
    return structure.contains(vector_of(op));
}

CommutantGroup commutant_on_region(const StabilizerModel &model, const Region &region) {
    if (region.empty()) {
        throw ValidationError("commutant_on_region: empty region");
    }
    if (region.universe() != model.num_sites()) {
        throw ValidationError("commutant_on_region: region does not match the model sites");
    }
    const SiteSystem &sys = *model.system;
    CommutantGroup out;
    out.region = region;
    out.system = model.system;

    std::vector<int64_t> col_moduli;
    std::vector<int64_t> index_of(model.num_sites(), -1);
    for (uint32_t s : region.sites()) {
        index_of[s] = (int64_t)col_moduli.size() / 2;
        col_moduli.push_back(sys.dim(s));
        col_moduli.push_back(sys.dim(s));
    }
    std::vector<std::vector<int64_t>> rows;
    std::vector<int64_t> row_moduli;
    for (size_t k : model.terms_meeting(region)) {
        const WeylOp &g = model.terms[k].generator;
        int64_t m = 1;
        for (uint32_t s : g.support()) {
            if (index_of[s] >= 0) {
                m = lcm64(m, sys.dim(s));
            }
        }
        // comm(O, g) = sum_s (z_O x_g - x_O z_g) / d_s, written over the common modulus m.
        std::vector<int64_t> row(col_moduli.size(), 0);
        bool nonzero = false;
        for (uint32_t s : g.support()) {
            int64_t i = index_of[s];
            if (i < 0) {
                continue;
            }
            int64_t scale = m / sys.dim(s);
            row[2 * i] = mod64(-(int64_t)g.z_exp(s) * scale, m);
            row[2 * i + 1] = mod64((int64_t)g.x_exp(s) * scale, m);
            nonzero = nonzero || row[2 * i] || row[2 * i + 1];
        }
        if (nonzero) {
            rows.push_back(std::move(row));
            row_moduli.push_back(m);
        }
    }
    out.structure = kernel_mod(rows, col_moduli, row_moduli);
    for (const auto &v : out.structure.generators) {
        out.generators.push_back(out.op_of(v));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------

int64_t LogicalAlgebra::size() const {
    int64_t n = 1;
    for (int64_t o : orders) {
        n *= o;
    }
    return n;
}

std::vector<int64_t> LogicalAlgebra::element_coords(int64_t k) const {
    std::vector<int64_t> g(orders.size());
    for (size_t i = orders.size(); i-- > 0;) {
        g[i] = k % orders[i];
        k /= orders[i];
    }
    return g;
}

WeylOp LogicalAlgebra::element(const std::vector<int64_t> &g) const {
    WeylOp op = WeylOp::identity(commutant.system);
    for (size_t i = 0; i < reps.size(); i++) {
        int64_t e = mod64(g[i], orders[i]);
        if (e) {
            op = op * power(reps[i], e);
        }
    }
    return op;
}

std::optional<LogicalAlgebra::Classified> LogicalAlgebra::classify(const WeylOp &op) const {
    for (uint32_t s : op.support()) {
        if (!region.contains(s)) {
            return std::nullopt;
        }
    }
    auto c = commutant.structure.coordinates(commutant.vector_of(op));
    if (!c) {
        return std::nullopt;
    }
    auto q = quotient.coordinates(*c);
    if (!q) {
        throw PropertyViolation("LogicalAlgebra::classify: commutant element outside the quotient ambient");
    }
    WeylOp rest = inverse(element(*q)) * op;
    auto ph = null_group->phase_of(rest);
    if (!ph) {
        throw PropertyViolation("LogicalAlgebra::classify: residual is not a null element");
    }
    return Classified{*q, *ph};
}

Phase LogicalAlgebra::character(const std::vector<int64_t> &a, const std::vector<int64_t> &g) const {
    Phase p;
    for (size_t i = 0; i < orders.size(); i++) {
        p = p + Phase(a[i] * g[i], orders[i]);
    }
    return p;
}

WeylSum LogicalAlgebra::projector(size_t label_index) const {
    const auto &a = labels.at(label_index);
    WeylSum s(commutant.system);
    Rational w(1, size());
    for (int64_t k = 0; k < size(); k++) {
        auto g = element_coords(k);
        s.add((-character(a, g)).to_cyclo().scaled(w), element(g));
    }
    return s;
}

std::vector<WeylSum> LogicalAlgebra::projectors() const {
    std::vector<WeylSum> out;
    for (size_t k = 0; k < labels.size(); k++) {
        out.push_back(projector(k));
    }
    return out;
}

std::string LogicalAlgebra::str() const {
    std::stringstream out;
    out << "LogicalAlgebra(|Q| = " << size() << ", factors = [";
    for (size_t i = 0; i < orders.size(); i++) {
        out << (i ? ", " : "") << orders[i];
    }
    out << "], commutant generators = " << commutant.generators.size()
        << ", null generators = " << null_generators.size() << ")";
    return out.str();
}

namespace {

std::vector<Cyclo> element_expectations(const StabilizerState &state, const LogicalAlgebra &alg) {
    std::vector<Cyclo> out;
    for (int64_t k = 0; k < alg.size(); k++) {
        out.push_back(expectation(state, alg.element(alg.element_coords(k))));
    }
    return out;
}

std::vector<Cyclo> projector_expectations(const LogicalAlgebra &alg, const std::vector<std::vector<int64_t>> &labels, const std::vector<Cyclo> &ev) {
    std::vector<Cyclo> out;
    Rational w(1, alg.size());
    for (const auto &a : labels) {
        Cyclo acc;
        for (int64_t k = 0; k < alg.size(); k++) {
            if (ev[k].is_zero()) {
                continue;
            }
            acc += (-alg.character(a, alg.element_coords(k))).to_cyclo() * ev[k];
        }
        out.push_back(acc.scaled(w));
    }
    return out;
}

size_t find_vacuum(const std::vector<Cyclo> &pe) {
    std::vector<size_t> hits;
    for (size_t k = 0; k < pe.size(); k++) {
        if (pe[k] == Cyclo(1)) {
            hits.push_back(k);
        }
    }
    if (hits.empty()) {
        throw PropertyViolation("vacuum_label: no character has <pi> = 1 (NoVacuum)");
    }
    if (hits.size() > 1) {
        throw PropertyViolation("vacuum_label: several characters have <pi> = 1 (MultipleVacua)");
    }
    return hits[0];
}

}  // namespace

LogicalAlgebra logical_quotient(const StabilizerState &state, const Region &annulus, const Region &thick) {
    const StabilizerModel &model = *state.model();
    if (!annulus.is_subset_of(thick)) {
        throw ValidationError("logical_quotient: the thick region must contain the annulus");
    }
    LogicalAlgebra alg;
    alg.region = annulus;
    alg.thick = thick;
    alg.commutant = commutant_on_region(model, annulus);

    // Terms inside the thick region, eliminated with the sites outside the annulus first so the
    // trailing rows generate the part supported on the annulus.
    std::vector<WeylOp> gens;
    for (size_t k : model.terms_inside(thick)) {
        gens.push_back(model.terms[k].generator);
    }
    std::vector<uint32_t> order;
    for (uint32_t s = 0; s < model.num_sites(); s++) {
        if (!annulus.contains(s)) {
            order.push_back(s);
        }
    }
    size_t first = 2 * order.size();
    order.insert(order.end(), annulus.sites().begin(), annulus.sites().end());
    alg.null_group = std::make_shared<const StabilizerGroup>(model.system, gens, order);
    if (alg.null_group->frustrated()) {
        throw PropertyViolation("logical_quotient: terms near the annulus are frustrated");
    }
    alg.null_generators = alg.null_group->rows_from_column(first);

    const auto &cf = alg.commutant.structure.invariant_factors;
    std::vector<std::vector<int64_t>> unit;
    for (size_t i = 0; i < cf.size(); i++) {
        std::vector<int64_t> e(cf.size(), 0);
        e[i] = 1;
        unit.push_back(e);
    }
    std::vector<std::vector<int64_t>> sub;
    for (const auto &n : alg.null_generators) {
        auto c = alg.commutant.structure.coordinates(alg.commutant.vector_of(n));
        if (!c) {
            throw PropertyViolation("logical_quotient: null generator outside the commutant");
        }
        sub.push_back(*c);
    }
    alg.quotient = quotient_structure(unit, sub, cf);
    alg.orders = alg.quotient.invariant_factors;

    for (size_t i = 0; i < alg.orders.size(); i++) {
        std::vector<int64_t> coords = alg.commutant.structure.element(alg.quotient.generators[i]);
        WeylOp u = alg.commutant.op_of(coords);
        int64_t o = alg.orders[i];
        auto lam = alg.null_group->phase_of(power(u, o));
        if (!lam) {
            throw PhaseIncoherence("logical_quotient: representative power is not a null element");
        }
        // Rescale by mu with mu^o exp(2 pi i lam) = 1.
        Phase mu = (-*lam).divided(o);
        u.set_phase(mu);
        auto check = alg.null_group->phase_of(power(u, o));
        if (!check || !check->is_zero()) {
            throw PhaseIncoherence("logical_quotient: rescaling did not make the section exact");
        }
        alg.reps.push_back(u);
    }
    for (size_t i = 0; i < alg.reps.size(); i++) {
        for (size_t j = i + 1; j < alg.reps.size(); j++) {
            if (!commutes(alg.reps[i], alg.reps[j])) {
                throw NonCommutativeQuotient(
                    "logical_quotient: representatives " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not commute; the logical algebra is not commutative");
            }
        }
    }

    std::vector<std::vector<int64_t>> all;
    for (int64_t k = 0; k < alg.size(); k++) {
        all.push_back(alg.element_coords(k));
    }
    std::vector<Cyclo> pe = projector_expectations(alg, all, element_expectations(state, alg));
    size_t vac = find_vacuum(pe);
    alg.labels.push_back(all[vac]);
    for (size_t k = 0; k < all.size(); k++) {
        if (k != vac) {
            alg.labels.push_back(all[k]);
        }
    }
    alg.vacuum = 0;
    return alg;
}

LogicalAlgebra logical_quotient(const StabilizerState &state, const AnnulusSpec &spec) {
    const StabilizerModel &model = *state.model();
    if (!model.lattice) {
        throw ValidationError("logical_quotient: the model has no lattice");
    }
    if (spec.t2 <= 0) {
        throw ValidationError("logical_quotient: thickness must be positive");
    }
    if (spec.r2 + spec.t2 >= model.lattice->size() - 1) {
        throw ValidationError("logical_quotient: annulus touches itself around the torus (2(r_ann + t) >= L - 1/2)");
    }
    int64_t w2 = (int64_t)std::ceil(2 * model.interaction_range - 1e-9);
    Region a = model.lift(spec.region(*model.lattice));
    Region thick = model.lift(spec.thickened(w2).region(*model.lattice));
    return logical_quotient(state, a, thick);
}

size_t vacuum_label(const StabilizerState &state, const LogicalAlgebra &algebra) {
    return find_vacuum(projector_expectations(algebra, algebra.labels, element_expectations(state, algebra)));
}

StabilityReport check_stability(const StabilizerState &state, const AnnulusSpec &base, double t1, double t2) {
    if (t1 > t2) {
        throw ValidationError("check_stability: need t1 <= t2");
    }
    AnnulusSpec s1{base.center, base.r2, (int64_t)std::llround(2 * t1)};
    AnnulusSpec s2{base.center, base.r2, (int64_t)std::llround(2 * t2)};
    LogicalAlgebra a1 = logical_quotient(state, s1);
    LogicalAlgebra a2 = t1 == t2 ? a1 : logical_quotient(state, s2);
    StabilityReport rep;
    rep.orders_t1 = a1.orders;
    rep.orders_t2 = a2.orders;
    std::stringstream detail;

    // Images of the generators determine the homomorphism.
    std::vector<std::vector<int64_t>> images;
    for (size_t i = 0; i < a1.reps.size(); i++) {
        auto c = a2.classify(a1.reps[i]);
        if (!c) {
            detail << "generator " << i << " is not in the thicker commutant; ";
            rep.detail = detail.str();
            return rep;
        }
        images.push_back(c->coords);
    }
    std::map<std::vector<int64_t>, int64_t> seen;
    bool injective = true;
    for (int64_t k = 0; k < a1.size(); k++) {
        auto g = a1.element_coords(k);
        std::vector<int64_t> img(a2.orders.size(), 0);
        for (size_t i = 0; i < g.size(); i++) {
            for (size_t j = 0; j < img.size(); j++) {
                img[j] = mod64(img[j] + g[i] * images[i][j], a2.orders[j]);
            }
        }
        auto [it, fresh] = seen.emplace(img, k);
        if (!fresh && injective) {
            injective = false;
            detail << "elements " << it->second << " and " << k << " have the same image; ";
        }
    }
    rep.injective = injective;
    rep.surjective = (int64_t)seen.size() == a2.size();
    if (!rep.surjective) {
        detail << "image has " << seen.size() << " of " << a2.size() << " classes; ";
    }
    detail << "|Q_t1| = " << a1.size() << ", |Q_t2| = " << a2.size();
    rep.detail = detail.str();
    return rep;
}

}  // namespace stilde

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

#ifndef STILDE_TESTS_TEST_UTIL_H
#define STILDE_TESTS_TEST_UTIL_H

#include <complex>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Dense>

#include "stilde/commutant.h"
#include "stilde/witness.h"

namespace stilde {

/// Readable failure messages for exact values.
inline void PrintTo(const Cyclo &c, std::ostream *os) {
    *os << c.str();
}
inline void PrintTo(const WeylOp &op, std::ostream *os) {
    *os << op.str();
}
inline void PrintTo(const Phase &p, std::ostream *os) {
    *os << p.str();
}

}  // namespace stilde

namespace stilde::test {

/// Single-site shift and clock matrices built from their definitions.
inline Eigen::MatrixXcd shift_matrix(uint32_t d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (uint32_t k = 0; k < d; k++) {
        m((k + 1) % d, k) = 1;
    }
    return m;
}

inline Eigen::MatrixXcd clock_matrix(uint32_t d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (uint32_t k = 0; k < d; k++) {
        m(k, k) = std::polar(1.0, 2 * std::numbers::pi * k / d);
    }
    return m;
}

inline Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd &m, int64_t e) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    for (int64_t k = 0; k < e; k++) {
        r = r * m;
    }
    return r;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

/// Dense matrix with site 0 least significant: kron(site n-1, ..., site 0).
inline Eigen::MatrixXcd weyl_matrix(const WeylOp &op) {
    const SiteSystem &sys = *op.system();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t s = 0; s < sys.size(); s++) {
        uint32_t d = sys.dim(s);
        Eigen::MatrixXcd local = matrix_power(shift_matrix(d), op.x_exp(s)) * matrix_power(clock_matrix(d), op.z_exp(s));
        m = kron(local, m);
    }
    return std::polar(1.0, 2 * std::numbers::pi * op.phase().num / op.phase().den) * m;
}

inline Eigen::MatrixXcd weyl_matrix(const WeylSum &op) {
    size_t dim = 1;
    for (uint32_t d : op.system()->dims()) {
        dim *= d;
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[c, w] : op.terms()) {
        m += c.to_complex() * weyl_matrix(w);
    }
    return m;
}

inline WeylOp random_weyl(const SiteSystemPtr &sys, std::mt19937_64 &rng, bool with_phase = true) {
    WeylOp op = WeylOp::identity(sys);
    for (uint32_t s = 0; s < sys->size(); s++) {
        op.set_x(s, (int64_t)(rng() % sys->dim(s)));
        op.set_z(s, (int64_t)(rng() % sys->dim(s)));
    }
    if (with_phase) {
        int64_t den = 2 * sys->lcm();
        op.set_phase(Phase((int64_t)(rng() % den), den));
    }
    return op;
}

inline WeylOp random_weyl_on(const SiteSystemPtr &sys, const Region &r, std::mt19937_64 &rng) {
    WeylOp op = WeylOp::identity(sys);
    for (uint32_t s : r.sites()) {
        op.set_x(s, (int64_t)(rng() % sys->dim(s)));
        op.set_z(s, (int64_t)(rng() % sys->dim(s)));
    }
    return op;
}

/// Classes of a Weyl sum in A / N: quotient coordinates -> total coefficient.
inline std::map<std::vector<int64_t>, Cyclo> classes_mod_null(const LogicalAlgebra &alg, const WeylSum &s) {
    std::map<std::vector<int64_t>, Cyclo> out;
    for (const auto &[c, w] : s.terms()) {
        auto cl = alg.classify(w);
        if (!cl) {
            throw std::runtime_error("operator outside the commutant");
        }
        out[cl->coords] += c * cl->phase.to_cyclo();
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

/// Loop operators around a disk in a single-layer toric code, built from the terms: the product
/// of vertex terms (x loop) and of plaquette terms (z loop) whose centers lie within doubled
/// distance < r2 of `center`.
struct DiskLoops {
    WeylOp x_loop;
    WeylOp z_loop;
};

inline DiskLoops disk_loops(const StabilizerModel &m, Point2 center, int64_t r2) {
    const TorusLattice &lat = *m.lattice;
    int64_t L = lat.size();
    DiskLoops out{WeylOp::identity(m.system), WeylOp::identity(m.system)};
    for (int64_t y = 0; y < L; y++) {
        for (int64_t x = 0; x < L; x++) {
            if (lat.distance2(Point2{2 * x, 2 * y}, center) < r2) {
                out.x_loop = out.x_loop * m.terms[(size_t)(y * L + x)].generator;
            }
            if (lat.distance2(Point2{2 * x + 1, 2 * y + 1}, center) < r2) {
                out.z_loop = out.z_loop * m.terms[(size_t)(L * L + y * L + x)].generator;
            }
        }
    }
    return out;
}

/// Exponents (k_x, k_z) of a label: chi_a(class of x loop) = omega^k_x, and likewise for z.
inline std::pair<int64_t, int64_t> label_exponents(const LogicalAlgebra &alg, size_t label, const DiskLoops &loops, int64_t d) {
    auto exponent = [&](const WeylOp &op) {
        auto cl = alg.classify(op);
        if (!cl) {
            throw std::runtime_error("loop outside the commutant");
        }
        Phase p = alg.character(alg.labels[label], cl->coords);
        return ((p.num * d / p.den) % d + d) % d;
    };
    return {exponent(loops.x_loop), exponent(loops.z_loop)};
}

/// One trial of the symmetrization lemma. S is a commutant element on the annulus and
/// T = U + c P W P, with U in the commutant, W a single-site operator on the annulus and
/// P = prod_k (1 - h_k) over the terms h_k that do not commute with W. P W P and its adjoint
/// vanish on any state whose reduced state on a disk holding one of the h_k is that of the ground
/// state, and keep the local ground space of every other disk, so T and T^dagger are locally
/// invisible under local topological order. P W P is nonzero only for d > 2.
/// T - phi(T) is c P W P.
struct SymmetrizationTrial {
    WeylSum s;
    WeylSum t;
    WeylSum diff;
    InvisibilityCertificate t_certificate;
    LocallyNullReport left;
    LocallyNullReport right;
};

inline WeylOp random_commutant_product(const StabilizerModel &m, const Region &annulus, std::mt19937_64 &rng) {
    WeylOp out = WeylOp::identity(m.system);
    for (size_t j : m.terms_inside(annulus)) {
        out = out * power(m.terms[j].generator, (int64_t)(rng() % m.terms[j].order));
    }
    return out;
}

inline SymmetrizationTrial symmetrization_trial(
    const StabilizerState &state, const Region &annulus, double r, double t, double s_radius, std::mt19937_64 &rng, const WitnessOptions &options) {
    const StabilizerModel &m = *state.model();
    SymmetrizationTrial out;
    out.s = WeylSum(random_commutant_product(m, annulus, rng));
    std::vector<uint32_t> sites = annulus.sites();
    WeylSum one = WeylSum::scalar(m.system, Cyclo(1));
    for (int attempt = 0;; attempt++) {
        if (attempt == 1000) {
            throw std::runtime_error("symmetrization_trial: no single-site operator with P W P != 0");
        }
        uint32_t q = sites[rng() % sites.size()];
        WeylOp w = WeylOp::identity(m.system);
        w.set_x(q, (int64_t)(rng() % m.system->dim(q)));
        w.set_z(q, (int64_t)(rng() % m.system->dim(q)));
        WeylSum p = one;
        for (const auto &h : m.terms) {
            if (!commutes(w, h.generator)) {
                p = p * (one - h.projector());
            }
        }
        WeylSum excited = p * WeylSum(w) * p;
        if (excited.terms().size() <= 1) {
            continue;
        }
        out.t = WeylSum(random_commutant_product(m, annulus, rng)) + excited.scaled(Cyclo::root_of_unity((int64_t)(rng() % 4), 4));
        break;
    }
    out.diff = out.t - symmetrize(m, out.t);
    out.t_certificate = certify_invisible(state, out.t, r, t, options);
    out.left = is_locally_null(state, out.s * out.diff, annulus, s_radius);
    out.right = is_locally_null(state, out.diff * out.s, annulus, s_radius);
    return out;
}

}  // namespace stilde::test

#endif

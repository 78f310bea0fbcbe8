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

#include "stilde/twist.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "stilde/errors.h"

namespace stilde {

namespace {

void require_inside(const WeylOp &op, const Region &r, const char *what) {
    if (r.universe() != op.num_sites()) {
        throw ValidationError(std::string("twist_product: ") + what + " region does not match the operator sites");
    }
    for (uint32_t s : op.support()) {
        if (!r.contains(s)) {
            throw ValidationError(std::string("twist_product: operator not supported on the ") + what + " annulus");
        }
    }
}

}  // namespace

WeylOp twist_product(const WeylOp &p, const WeylOp &q, const AnnulusPair &pair) {
    require_inside(p, pair.left, "left");
    require_inside(q, pair.right, "right");
    Region mp = pair.m_prime();
    Phase c = commutation_exponent(restrict_without_phase(p, mp), restrict_without_phase(q, mp));
    WeylOp r = p * q;
    r.set_phase(r.phase() - c);
    return r;
}

WeylSum twist_product(const WeylSum &p, const WeylSum &q, const AnnulusPair &pair) {
    if (!p.system() || !q.system()) {
        throw ValidationError("twist_product: empty operator system");
    }
    WeylSum out(p.system());
    for (const auto &[cp, op] : p.terms()) {
        for (const auto &[cq, oq] : q.terms()) {
            out.add(cp * cq, twist_product(op, oq, pair));
        }
    }
    return out;
}

Cyclo twist_pairing(const StabilizerState &state, const WeylOp &p, const WeylOp &q, const AnnulusPair &pair) {
    return expectation(state, twist_product(p, q, pair));
}

Cyclo twist_pairing(const StabilizerState &state, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair) {
    return expectation(state, twist_product(p, q, pair));
}

// ---------------------------------------------------------------------------------------------

std::vector<std::vector<std::complex<double>>> STilde::to_complex() const {
    std::vector<std::vector<std::complex<double>>> out(rows());
    for (size_t a = 0; a < rows(); a++) {
        for (const auto &e : entries[a]) {
            out[a].push_back(e.to_complex());
        }
    }
    return out;
}

bool STilde::invariants_hold() const {
    if (rows() == 0) {
        return false;
    }
    auto v = entries[left_vacuum][right_vacuum].as_rational();
    if (!v || *v <= 0) {
        return false;
    }
    for (const auto &row : entries) {
        for (const auto &e : row) {
            if (std::abs(e.to_complex()) > 1 + 1e-12) {
                return false;
            }
        }
    }
    return true;
}

STilde STilde::permuted(const std::vector<size_t> &row_perm, const std::vector<size_t> &col_perm) const {
    if (row_perm.size() != rows() || col_perm.size() != cols()) {
        throw ValidationError("STilde::permuted: permutation size mismatch");
    }
    STilde out;
    out.provenance = provenance;
    out.entries.resize(rows());
    for (size_t i = 0; i < rows(); i++) {
        out.left_labels.push_back(left_labels.empty() ? std::vector<int64_t>{} : left_labels[row_perm[i]]);
        if (row_perm[i] == left_vacuum) {
            out.left_vacuum = i;
        }
        for (size_t j = 0; j < cols(); j++) {
            out.entries[i].push_back(entries[row_perm[i]][col_perm[j]]);
        }
    }
    for (size_t j = 0; j < cols(); j++) {
        out.right_labels.push_back(right_labels.empty() ? std::vector<int64_t>{} : right_labels[col_perm[j]]);
        if (col_perm[j] == right_vacuum) {
            out.right_vacuum = j;
        }
    }
    return out;
}

std::string STilde::str() const {
    std::stringstream out;
    out << "STilde " << rows() << "x" << cols() << " (vacuum " << left_vacuum << ", " << right_vacuum << ")\n";
    for (const auto &row : entries) {
        for (size_t j = 0; j < row.size(); j++) {
            out << (j ? "  " : "") << row[j].str();
        }
        out << "\n";
    }
    return out.str();
}

namespace {

void require_algebra_on(const LogicalAlgebra &alg, const Region &annulus, const char *side) {
    if (!alg.region.is_subset_of(annulus)) {
        throw ValidationError(std::string("stilde_matrix: the ") + side + " algebra is not supported on the " + side + " annulus");
    }
}

int64_t phase_exponent(const Phase &p, int64_t n) {
    return p.num * (n / p.den);
}

}  // namespace

STilde stilde_matrix(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair) {
    require_algebra_on(left, pair.left, "left");
    require_algebra_on(right, pair.right, "right");
    const StabilizerGroup &group = state.group();
    int64_t nl = left.size(), nr = right.size();
    Region mp = pair.m_prime();

    std::vector<WeylOp> ul, ur;
    std::vector<std::optional<Phase>> el, er;
    for (int64_t g = 0; g < nl; g++) {
        ul.push_back(left.element(left.element_coords(g)));
        el.push_back(group.phase_of(ul.back()));
    }
    for (int64_t h = 0; h < nr; h++) {
        ur.push_back(right.element(right.element_coords(h)));
        er.push_back(group.phase_of(ur.back()));
    }
    // Crossing phases are bilinear in the quotient coordinates.
    std::vector<std::vector<Phase>> cross(left.reps.size(), std::vector<Phase>(right.reps.size()));
    for (size_t i = 0; i < left.reps.size(); i++) {
        for (size_t j = 0; j < right.reps.size(); j++) {
            cross[i][j] = commutation_exponent(restrict_without_phase(left.reps[i], mp), restrict_without_phase(right.reps[j], mp));
        }
    }

    // T(g, h) = <U_g oo U_h>, or nullopt when zero.
    std::vector<std::optional<Phase>> table((size_t)(nl * nr));
    int64_t denom = 1;
    for (int64_t o : left.orders) {
        denom = lcm64(denom, o);
    }
    for (int64_t o : right.orders) {
        denom = lcm64(denom, o);
    }
    for (int64_t g = 0; g < nl; g++) {
        auto gc = left.element_coords(g);
        for (int64_t h = 0; h < nr; h++) {
            std::optional<Phase> pr;
            if (el[g]) {
                if (er[h]) {
                    pr = *el[g] + *er[h];
                }
            } else if (!er[h]) {
                pr = group.phase_of(ul[g] * ur[h]);
            }
            if (!pr) {
                continue;
            }
            auto hc = right.element_coords(h);
            Phase c;
            for (size_t i = 0; i < gc.size(); i++) {
                for (size_t j = 0; j < hc.size(); j++) {
                    if (gc[i] && hc[j]) {
                        c = c + cross[i][j] * (gc[i] * hc[j]);
                    }
                }
            }
            Phase t = *pr - c;
            denom = lcm64(denom, t.den);
            table[(size_t)(g * nr + h)] = t;
        }
    }

    auto characters = [&](const LogicalAlgebra &alg, int64_t n) {
        std::vector<std::vector<int64_t>> chi(alg.labels.size(), std::vector<int64_t>((size_t)n));
        for (size_t a = 0; a < alg.labels.size(); a++) {
            for (int64_t g = 0; g < n; g++) {
                chi[a][g] = phase_exponent(alg.character(alg.labels[a], alg.element_coords(g)), denom);
            }
        }
        return chi;
    };
    auto chl = characters(left, nl);
    auto chr = characters(right, nr);
    std::vector<int64_t> texp(table.size(), -1);
    for (size_t k = 0; k < table.size(); k++) {
        if (table[k]) {
            texp[k] = phase_exponent(*table[k], denom);
        }
    }

    STilde s;
    s.left_labels = left.labels;
    s.right_labels = right.labels;
    s.left_vacuum = left.vacuum;
    s.right_vacuum = right.vacuum;
    s.entries.assign(left.labels.size(), std::vector<Cyclo>(right.labels.size()));
    Rational scale(1, 1);
    scale /= Rational(nl) * Rational(nr);
    std::vector<int64_t> counts((size_t)denom);
    for (size_t a = 0; a < left.labels.size(); a++) {
        for (size_t b = 0; b < right.labels.size(); b++) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int64_t g = 0; g < nl; g++) {
                for (int64_t h = 0; h < nr; h++) {
                    int64_t t = texp[(size_t)(g * nr + h)];
                    if (t < 0) {
                        continue;
                    }
                    int64_t e = mod64(t - chl[a][g] - chr[b][h], denom);
                    counts[(size_t)e]++;
                }
            }
            s.entries[a][b] = Cyclo::from_root_counts(counts, scale);
        }
    }
    std::stringstream prov;
    prov << state.model()->name << "; |Q_L| = " << nl << ", |Q_R| = " << nr << "; dist(C_u, C_d) = " << pair.diamond_distance();
    s.provenance = prov.str();
    return s;
}

STilde stilde_matrix_direct(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair) {
    require_algebra_on(left, pair.left, "left");
    require_algebra_on(right, pair.right, "right");
    STilde s;
    s.left_labels = left.labels;
    s.right_labels = right.labels;
    s.left_vacuum = left.vacuum;
    s.right_vacuum = right.vacuum;
    auto pl = left.projectors();
    auto pr = right.projectors();
    s.entries.assign(pl.size(), std::vector<Cyclo>(pr.size()));
    for (size_t a = 0; a < pl.size(); a++) {
        for (size_t b = 0; b < pr.size(); b++) {
            s.entries[a][b] = twist_pairing(state, pl[a], pr[b], pair);
        }
    }
    s.provenance = state.model()->name + "; direct projector sums";
    return s;
}

bool representatives_independent(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair) {
    const StabilizerGroup &group = state.group();
    auto null_terms = [&](const LogicalAlgebra &alg) {
        std::vector<WeylSum> out;
        for (const auto &n : alg.null_generators) {
            auto lam = group.phase_of(n);
            if (!lam) {
                throw PropertyViolation("representatives_independent: null generator is not a stabilizer");
            }
            // n - <n> annihilates the ground space.
            WeylSum s(n);
            s.add(-lam->to_cyclo(), WeylOp::identity(n.system()));
            out.push_back(s);
        }
        return out;
    };
    auto nl = null_terms(left);
    auto nr = null_terms(right);
    for (int64_t h = 0; h < right.size(); h++) {
        WeylSum u(right.element(right.element_coords(h)));
        for (const auto &n : nl) {
            if (!twist_pairing(state, n, u, pair).is_zero()) {
                return false;
            }
        }
    }
    for (int64_t g = 0; g < left.size(); g++) {
        WeylSum u(left.element(left.element_coords(g)));
        for (const auto &n : nr) {
            if (!twist_pairing(state, u, n, pair).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------------------------

size_t FusionTensor::product(size_t a, size_t b) const {
    for (size_t c = 0; c < n; c++) {
        if (at(c, a, b) == 1) {
            return c;
        }
    }
    throw NonGroupLikeFusion("FusionTensor::product: no fusion outcome");
}

namespace {

struct Monomial {
    Rational magnitude;  // zero means the entry vanishes
    int64_t exponent = 0;
};

bool perfect_square(const BigInt &v, BigInt &root) {
    if (v < 0) {
        return false;
    }
    root = sqrt(v);
    return root * root == v;
}

/// Writes every entry as q zeta_n^k when possible.
std::optional<std::vector<std::vector<Monomial>>> as_monomials(const STilde &s, int64_t n) {
    std::vector<std::vector<Monomial>> out(s.rows(), std::vector<Monomial>(s.cols()));
    for (size_t a = 0; a < s.rows(); a++) {
        for (size_t b = 0; b < s.cols(); b++) {
            const Cyclo &x = s.entries[a][b];
            if (x.is_zero()) {
                continue;
            }
            auto q2 = (x * x.conj()).as_rational();
            if (!q2) {
                return std::nullopt;
            }
            BigInt rn, rd;
            if (!perfect_square(q2->get_num(), rn) || !perfect_square(q2->get_den(), rd)) {
                return std::nullopt;
            }
            Rational q(rn, rd);
            std::complex<double> z = x.to_complex();
            double turns = std::arg(z) / (2 * M_PI);
            int64_t k = mod64((int64_t)std::llround(turns * (double)n), n);
            if (Cyclo::root_of_unity(k, n).scaled(q) != x) {
                return std::nullopt;
            }
            out[a][b] = Monomial{q, k};
        }
    }
    return out;
}

}  // namespace

FusionTensor verlinde_fusion(const STilde &s) {
    size_t n = s.rows();
    if (n == 0 || s.cols() != n) {
        throw ValidationError("verlinde_fusion: S~ must be square and nonempty");
    }
    int64_t order = 2;
    for (const auto &row : s.entries) {
        for (const auto &e : row) {
            order = lcm64(order, e.order());
        }
    }
    Rational norm = Rational((long)n) * Rational((long)n);
    FusionTensor f;
    f.n = n;
    f.values.assign(n * n * n, Rational(0));
    auto mono = as_monomials(s, order);
    for (size_t c = 0; c < n; c++) {
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                Cyclo v;
                if (mono) {
                    std::vector<Rational> powers((size_t)order, Rational(0));
                    for (size_t p = 0; p < n; p++) {
                        const Monomial &x = (*mono)[a][p], &y = (*mono)[b][p], &z = (*mono)[c][p];
                        if (x.magnitude == 0 || y.magnitude == 0 || z.magnitude == 0) {
                            continue;
                        }
                        int64_t e = mod64(x.exponent + y.exponent - z.exponent, order);
                        powers[(size_t)e] += x.magnitude * y.magnitude * z.magnitude;
                    }
                    v = Cyclo::from_powers(powers, order);
                } else {
                    for (size_t p = 0; p < n; p++) {
                        v += s.entries[a][p] * s.entries[b][p] * s.entries[c][p].conj();
                    }
                }
                v = v.scaled(norm);
                auto r = v.as_rational();
                if (!r) {
                    throw NonGroupLikeFusion("verlinde_fusion: irrational fusion coefficient");
                }
                if (*r != 0 && *r != 1) {
                    throw NonGroupLikeFusion("verlinde_fusion: fusion coefficient " + r->get_str() + " is not 0 or 1");
                }
                f.values[(c * n + a) * n + b] = *r;
            }
        }
    }
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            Rational total = 0;
            for (size_t c = 0; c < n; c++) {
                total += f.at(c, a, b);
            }
            if (total != 1) {
                throw NonGroupLikeFusion("verlinde_fusion: labels do not fuse to a unique outcome");
            }
        }
    }
    return f;
}

AbelianGroupStructure reconstruct_group(const STilde &s) {
    FusionTensor f = verlinde_fusion(s);
    size_t n = f.n;
    std::vector<size_t> mul(n * n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            mul[a * n + b] = f.product(a, b);
        }
    }
    size_t e = s.left_vacuum;
    for (size_t a = 0; a < n; a++) {
        if (mul[e * n + a] != a || mul[a * n + e] != a) {
            throw NonGroupLikeFusion("reconstruct_group: the vacuum is not a fusion identity");
        }
        bool has_inverse = false;
        for (size_t b = 0; b < n; b++) {
            if (mul[a * n + b] != mul[b * n + a]) {
                throw NonGroupLikeFusion("reconstruct_group: fusion is not commutative");
            }
            has_inverse = has_inverse || mul[a * n + b] == e;
            for (size_t c = 0; c < n; c++) {
                if (mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]]) {
                    throw NonGroupLikeFusion("reconstruct_group: fusion is not associative");
                }
            }
        }
        if (!has_inverse) {
            throw NonGroupLikeFusion("reconstruct_group: a label has no inverse");
        }
    }
    // Presentation: generators e_a, relations e_a + e_b = e_ab and e_vac = 0.
    IntMatrix rel(n * n + 1, n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            size_t r = a * n + b;
            rel(r, a) += 1;
            rel(r, b) += 1;
            rel(r, mul[a * n + b]) -= 1;
        }
    }
    rel(n * n, e) = 1;
    std::vector<BigInt> diag = smith_normal_form(rel).diagonal();
    std::vector<int64_t> factors;
    BigInt order = 1;
    for (const auto &v : diag) {
        BigInt a = abs(v);
        if (a == 0) {
            throw NonGroupLikeFusion("reconstruct_group: infinite label group");
        }
        if (a != 1) {
            factors.push_back(a.get_si());
            order *= a;
        }
    }
    if (order != (long)n) {
        throw NonGroupLikeFusion("reconstruct_group: label group order does not match the number of labels");
    }
    if (factors.size() % 2 != 0) {
        throw ValidationError("reconstruct_group: odd multiplicity in the invariant factors of G x G");
    }
    AbelianGroupStructure g;
    for (size_t i = 0; i < factors.size(); i += 2) {
        if (factors[i] != factors[i + 1]) {
            throw ValidationError("reconstruct_group: invariant factors of G x G do not pair up");
        }
        g.invariant_factors.push_back(factors[i]);
    }
    g.moduli = g.invariant_factors;
    for (size_t i = 0; i < g.moduli.size(); i++) {
        std::vector<int64_t> u(g.moduli.size(), 0);
        u[i] = 1;
        g.generators.push_back(u);
    }
    return g;
}

namespace {

class Matcher {
   public:
    Matcher(const std::vector<std::vector<int>> &a, const std::vector<std::vector<int>> &b, size_t rv1, size_t cv1, size_t rv2, size_t cv2)
        : a_(a), b_(b), n_(a.size()), m_(a[0].size()), used_(n_, false), cols_a_(m_), cols_b_(m_) {
        // The vacuum columns carry a marker so that they can only match each other.
        cols_a_[cv1].push_back(-1);
        cols_b_[cv2].push_back(-1);
        order_.push_back(rv1);
        for (size_t i = 0; i < n_; i++) {
            if (i != rv1) {
                order_.push_back(i);
            }
        }
        fixed_row_ = rv2;
    }

    bool run() {
        return step(0);
    }

   private:
    static std::vector<int> sorted(std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    }

    bool consistent() const {
        std::vector<std::vector<int>> x = cols_a_, y = cols_b_;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }

    bool step(size_t k) {
        if (k == n_) {
            return true;
        }
        size_t i = order_[k];
        std::vector<int> row_sig = sorted(a_[i]);
        for (size_t j = 0; j < n_; j++) {
            if (used_[j] || (k == 0 && j != fixed_row_) || (k > 0 && j == fixed_row_)) {
                continue;
            }
            if (sorted(b_[j]) != row_sig) {
                continue;
            }
            used_[j] = true;
            for (size_t c = 0; c < m_; c++) {
                cols_a_[c].push_back(a_[i][c]);
                cols_b_[c].push_back(b_[j][c]);
            }
            if (consistent() && step(k + 1)) {
                return true;
            }
            for (size_t c = 0; c < m_; c++) {
                cols_a_[c].pop_back();
                cols_b_[c].pop_back();
            }
            used_[j] = false;
        }
        return false;
    }

    const std::vector<std::vector<int>> &a_;
    const std::vector<std::vector<int>> &b_;
    size_t n_, m_;
    std::vector<bool> used_;
    std::vector<std::vector<int>> cols_a_, cols_b_;
    std::vector<size_t> order_;
    size_t fixed_row_ = 0;
};

}  // namespace

bool stilde_equivalent(const STilde &s1, const STilde &s2) {
    if (s1.rows() != s2.rows() || s1.cols() != s2.cols()) {
        return false;
    }
    if (s1.rows() == 0) {
        return true;
    }
    int64_t order = 1;
    for (const STilde *s : {&s1, &s2}) {
        for (const auto &row : s->entries) {
            for (const auto &e : row) {
                order = lcm64(order, e.order());
            }
        }
    }
    std::map<std::string, int> ids;
    auto encode = [&](const STilde &s) {
        std::vector<std::vector<int>> out(s.rows());
        for (size_t a = 0; a < s.rows(); a++) {
            for (const auto &e : s.entries[a]) {
                auto key = e.with_order(order).str();
                auto it = ids.emplace(key, (int)ids.size()).first;
                out[a].push_back(it->second);
            }
        }
        return out;
    };
    auto a = encode(s1);
    auto b = encode(s2);
    if (a[s1.left_vacuum][s1.right_vacuum] != b[s2.left_vacuum][s2.right_vacuum]) {
        return false;
    }
    Matcher m(a, b, s1.left_vacuum, s1.right_vacuum, s2.left_vacuum, s2.right_vacuum);
    return m.run();
}

std::vector<std::vector<Cyclo>> s_matrix_view(const STilde &s) {
    size_t n = s.rows();
    if (n == 0 || s.cols() != n) {
        throw ScopeError("s_matrix_view: needs a square matrix");
    }
    Rational inv(1, (long)n);
    for (size_t b = 0; b < n; b++) {
        if (s.entries[s.left_vacuum][b] != Cyclo(inv)) {
            throw ScopeError("s_matrix_view: nontrivial quantum dimensions are not supported");
        }
    }
    BigInt root;
    if (!perfect_square(BigInt((long)n), root)) {
        throw ScopeError("s_matrix_view: total quantum dimension is irrational");
    }
    std::vector<std::vector<Cyclo>> out(n);
    for (size_t a = 0; a < n; a++) {
        for (const auto &e : s.entries[a]) {
            out[a].push_back(e.scaled(Rational(root)));
        }
    }
    return out;
}

}  // namespace stilde

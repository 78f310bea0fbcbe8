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

#include "stilde/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "stilde/errors.h"

namespace stilde {

using cd = std::complex<double>;

size_t dense_dimension(const SiteSystem &sys) {
    size_t n = 1;
    for (uint32_t d : sys.dims()) {
        if (n > std::numeric_limits<size_t>::max() / d) {
            return std::numeric_limits<size_t>::max();
        }
        n *= d;
    }
    return n;
}

DenseState::DenseState(SiteSystemPtr sys, size_t cap) : sys_(std::move(sys)) {
    size_t n = dense_dimension(*sys_);
    if (n > cap) {
        throw CapExceeded("dense oracle: dimension exceeds the cap of " + std::to_string(cap) + " amplitudes");
    }
    size_t s = 1;
    for (uint32_t d : sys_->dims()) {
        strides_.push_back(s);
        s *= d;
    }
    amp_.assign(n, cd(0, 0));
}

DenseState DenseState::basis_state(SiteSystemPtr sys, const std::vector<uint32_t> &digits, size_t cap) {
    DenseState v(sys, cap);
    if (digits.size() != sys->size()) {
        throw ValidationError("DenseState::basis_state: one digit per site");
    }
    size_t i = 0;
    for (size_t s = 0; s < digits.size(); s++) {
        i += (digits[s] % sys->dim(s)) * v.strides_[s];
    }
    v.amp_[i] = 1;
    return v;
}

DenseState DenseState::random(SiteSystemPtr sys, std::mt19937_64 &rng, size_t cap) {
    DenseState v(sys, cap);
    std::normal_distribution<double> g(0, 1);
    for (auto &a : v.amp_) {
        a = cd(g(rng), g(rng));
    }
    v.normalize();
    return v;
}

double DenseState::norm() const {
    double s = 0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

double DenseState::normalize() {
    double n = norm();
    if (n > 0) {
        for (auto &a : amp_) {
            a /= n;
        }
    }
    return n;
}

DenseState &DenseState::operator+=(const DenseState &o) {
    for (size_t i = 0; i < amp_.size(); i++) {
        amp_[i] += o.amp_[i];
    }
    return *this;
}

DenseState &DenseState::operator*=(cd c) {
    for (auto &a : amp_) {
        a *= c;
    }
    return *this;
}

cd inner(const DenseState &a, const DenseState &b) {
    cd s = 0;
    for (size_t i = 0; i < a.dimension(); i++) {
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return s;
}

namespace {

cd root(int64_t num, int64_t den) {
    double a = 2 * M_PI * (double)num / (double)den;
    return cd(std::cos(a), std::sin(a));
}

/// Connected components of the sites outside `removed`, two sites being adjacent when a term acts
/// on both. Sites in `removed` get label -1.
std::vector<int64_t> term_components(const StabilizerModel &model, const Region &removed) {
    std::vector<int64_t> parent(model.num_sites());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int64_t s) {
        while (parent[s] != s) {
            s = parent[s] = parent[parent[s]];
        }
        return s;
    };
    for (const auto &t : model.terms) {
        int64_t first = -1;
        for (uint32_t q : t.support) {
            if (removed.contains(q)) {
                continue;
            }
            if (first < 0) {
                first = q;
            } else {
                parent[find(q)] = find(first);
            }
        }
    }
    std::vector<int64_t> out(model.num_sites());
    for (uint32_t q = 0; q < model.num_sites(); q++) {
        out[q] = removed.contains(q) ? -1 : find(q);
    }
    return out;
}

/// True when removing the disk splits a connected piece of the system, e.g. a disk reaching from
/// one boundary of a patch to another.
bool disk_cuts_system(const StabilizerModel &model, const Region &disk, const std::vector<int64_t> &whole) {
    std::vector<int64_t> rest = term_components(model, disk);
    std::map<int64_t, int64_t> piece_of;
    for (uint32_t q = 0; q < model.num_sites(); q++) {
        if (rest[q] < 0) {
            continue;
        }
        auto [it, fresh] = piece_of.emplace(whole[q], rest[q]);
        if (!fresh && it->second != rest[q]) {
            return true;
        }
    }
    return false;
}

}  // namespace

DenseState apply(const WeylOp &op, const DenseState &v) {
    const SiteSystem &sys = *v.system();
    DenseState out = v;
    std::fill(out.amplitudes().begin(), out.amplitudes().end(), cd(0, 0));
    std::vector<uint32_t> sup = op.support();
    int64_t m = sys.lcm();
    bool table_ok = m <= (1 << 20);
    std::vector<cd> table;
    if (table_ok) {
        for (int64_t k = 0; k < m; k++) {
            table.push_back(root(k, m));
        }
    }
    cd global = root(op.phase().num, op.phase().den);
    const auto &in = v.amplitudes();
    auto &res = out.amplitudes();
    for (size_t i = 0; i < in.size(); i++) {
        if (in[i] == cd(0, 0)) {
            continue;
        }
        size_t j = i;
        int64_t e = 0;
        for (uint32_t s : sup) {
            int64_t d = sys.dim(s);
            int64_t k = (int64_t)((i / v.stride(s)) % (size_t)d);
            int64_t kk = (k + op.x_exp(s)) % d;
            j = j + (size_t)kk * v.stride(s) - (size_t)k * v.stride(s);
            e = (e + (int64_t)op.z_exp(s) * k % d * sys.scale(s)) % m;
        }
        res[j] += global * (table_ok ? table[(size_t)e] : root(e, m)) * in[i];
    }
    return out;
}

DenseState apply(const WeylSum &op, const DenseState &v) {
    DenseState out = v;
    out *= 0;
    for (const auto &[c, w] : op.terms()) {
        DenseState t = apply(w, v);
        t *= c.to_complex();
        out += t;
    }
    return out;
}

DenseState apply_projector(const WeylOp &g, const DenseState &v) {
    OrderResult o = order_of(g);
    if (!o.residual.is_zero()) {
        throw ValidationError("apply_projector: generator power is not the identity");
    }
    DenseState out = v;
    DenseState cur = v;
    for (int64_t k = 1; k < o.order; k++) {
        cur = apply(g, cur);
        out += cur;
    }
    out *= cd(1.0 / (double)o.order, 0);
    return out;
}

cd dense_expectation(const DenseState &psi, const WeylOp &op) {
    return inner(psi, apply(op, psi));
}

cd dense_expectation(const DenseState &psi, const WeylSum &op) {
    return inner(psi, apply(op, psi));
}

DenseState dense_ground_state(const StabilizerModel &model, size_t cap, uint64_t seed) {
    std::mt19937_64 rng(seed);
    DenseState v = DenseState::random(model.system, rng, cap);
    for (const auto &g : model.stabilizer_generators()) {
        v = apply_projector(g, v);
    }
    double n = v.normalize();
    if (n < 1e-8) {
        throw PropertyViolation("dense_ground_state: the terms have no common +1 eigenvector (frustrated)");
    }
    return v;
}

cd dense_twist_pairing(const DenseState &psi, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair) {
    cd total = 0;
    for (const auto &[cp, op] : p.terms()) {
        for (const auto &[cq, oq] : q.terms()) {
            for (uint32_t s : op.support()) {
                if (!pair.left.contains(s)) {
                    throw ValidationError("dense_twist_pairing: left operator leaves the left annulus");
                }
            }
            for (uint32_t s : oq.support()) {
                if (!pair.right.contains(s)) {
                    throw ValidationError("dense_twist_pairing: right operator leaves the right annulus");
                }
            }
            auto [pm, pmp] = split(op, pair.m);
            auto [qm, qmp] = split(oq, pair.m);
            DenseState v = apply(pmp, psi);
            v = apply(qmp, v);
            v = apply(qm, v);
            v = apply(pm, v);
            total += cp.to_complex() * cq.to_complex() * inner(psi, v);
        }
    }
    return total;
}

namespace {

/// Amplitudes as a (region) x (rest) matrix.
Eigen::MatrixXcd bipartite_matrix(const DenseState &psi, const Region &region) {
    const SiteSystem &sys = *psi.system();
    size_t da = 1;
    for (uint32_t s : region.sites()) {
        da *= sys.dim(s);
    }
    size_t dr = psi.dimension() / da;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero((Eigen::Index)da, (Eigen::Index)dr);
    // Odometer over all sites, tracking both indices.
    std::vector<uint32_t> digit(sys.size(), 0);
    std::vector<size_t> sa(sys.size()), sr(sys.size());
    size_t pa = 1, pr = 1;
    for (size_t s = 0; s < sys.size(); s++) {
        if (region.contains((uint32_t)s)) {
            sa[s] = pa;
            sr[s] = 0;
            pa *= sys.dim(s);
        } else {
            sr[s] = pr;
            sa[s] = 0;
            pr *= sys.dim(s);
        }
    }
    size_t ia = 0, ir = 0;
    const auto &amp = psi.amplitudes();
    for (size_t i = 0; i < amp.size(); i++) {
        m((Eigen::Index)ia, (Eigen::Index)ir) = amp[i];
        for (size_t s = 0; s < sys.size(); s++) {
            if (++digit[s] < sys.dim(s)) {
                ia += sa[s];
                ir += sr[s];
                break;
            }
            digit[s] = 0;
            ia -= sa[s] * (sys.dim(s) - 1);
            ir -= sr[s] * (sys.dim(s) - 1);
        }
    }
    return m;
}

size_t region_dimension(const SiteSystem &sys, const Region &region) {
    size_t d = 1;
    for (uint32_t s : region.sites()) {
        d *= sys.dim(s);
    }
    return d;
}

/// Trace norm of a Hermitian matrix, or the cheaper upper bound sqrt(n) |m|_F when that is
/// already at most `enough`.
double trace_norm(const Eigen::MatrixXcd &m, double enough) {
    double bound = std::sqrt((double)m.rows()) * m.norm();
    if (bound <= enough) {
        return bound;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

Eigen::MatrixXcd reduced_density_matrix(const DenseState &psi, const Region &region) {
    size_t da = region_dimension(*psi.system(), region);
    if (da > kMaxReducedDimension) {
        throw CapExceeded("reduced_density_matrix: region of dimension " + std::to_string(da) + " exceeds " + std::to_string(kMaxReducedDimension));
    }
    Eigen::MatrixXcd m = bipartite_matrix(psi, region);
    return m * m.adjoint();
}

double reduced_state_distance(const DenseState &a, const DenseState &b, const Region &region, double scale, double enough) {
    size_t da = region_dimension(*a.system(), region);
    size_t dr = a.dimension() / da;
    if (std::min(da, dr) > kMaxReducedDimension) {
        throw CapExceeded("reduced_state_distance: both sides of the cut exceed dimension " + std::to_string(kMaxReducedDimension));
    }
    Eigen::MatrixXcd ma = bipartite_matrix(a, region);
    Eigen::MatrixXcd mb = std::sqrt(scale) * bipartite_matrix(b, region);
    if (da <= dr) {
        return 0.5 * trace_norm(ma * ma.adjoint() - mb * mb.adjoint(), enough);
    }
    // ma ma^dagger - mb mb^dagger = M J M^dagger with M = [ma mb] = Q R and J = diag(1, -1), so its
    // spectrum is that of R J R^dagger, a matrix of size at most 2 dr.
    Eigen::Index n = (Eigen::Index)dr;
    Eigen::MatrixXcd m(ma.rows(), 2 * n);
    m << ma, mb;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::Index k = std::min(m.rows(), m.cols());
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Eigen::MatrixXcd rj = r;
    rj.rightCols(n) *= -1;
    return 0.5 * trace_norm(rj * r.adjoint(), enough);
}

void apply_unitary(const Eigen::MatrixXcd &u, const std::vector<uint32_t> &sites, DenseState &v) {
    const SiteSystem &sys = *v.system();
    size_t dl = 1;
    std::vector<size_t> offsets{0};
    for (uint32_t s : sites) {
        size_t d = sys.dim(s);
        std::vector<size_t> next;
        for (size_t k = 0; k < d; k++) {
            for (size_t o : offsets) {
                next.push_back(o + k * v.stride(s));
            }
        }
        // Local index: first site least significant.
        offsets = next;
        dl *= d;
    }
    if ((size_t)u.rows() != dl || (size_t)u.cols() != dl) {
        throw ValidationError("apply_unitary: matrix size does not match the sites");
    }
    auto &amp = v.amplitudes();
    Eigen::VectorXcd local((Eigen::Index)dl);
    for (size_t i = 0; i < amp.size(); i++) {
        bool base = true;
        for (uint32_t s : sites) {
            if ((i / v.stride(s)) % sys.dim(s) != 0) {
                base = false;
                break;
            }
        }
        if (!base) {
            continue;
        }
        for (size_t k = 0; k < dl; k++) {
            local((Eigen::Index)k) = amp[i + offsets[k]];
        }
        Eigen::VectorXcd out = u * local;
        for (size_t k = 0; k < dl; k++) {
            amp[i + offsets[k]] = out((Eigen::Index)k);
        }
    }
}

Eigen::MatrixXcd gate_matrix(const CliffordGate &g, const SiteSystem &sys) {
    int64_t d = sys.dim(g.sites[0]);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(1, 1);
    switch (g.kind) {
        case GateKind::Fourier:
            u = Eigen::MatrixXcd::Zero(d, d);
            for (int64_t j = 0; j < d; j++) {
                for (int64_t k = 0; k < d; k++) {
                    u(k, j) = root(j * k, d) / std::sqrt((double)d);
                }
            }
            break;
        case GateKind::Phase:
            u = Eigen::MatrixXcd::Zero(d, d);
            for (int64_t k = 0; k < d; k++) {
                u(k, k) = d % 2 ? root(k * (k - 1) / 2, d) : root(k * k, 2 * d);
            }
            break;
        case GateKind::Multiply:
            u = Eigen::MatrixXcd::Zero(d, d);
            for (int64_t k = 0; k < d; k++) {
                u(mod64(g.param * k, d), k) = 1;
            }
            break;
        case GateKind::Sum:
            u = Eigen::MatrixXcd::Zero(d * d, d * d);
            for (int64_t j = 0; j < d; j++) {
                for (int64_t k = 0; k < d; k++) {
                    u(j + d * ((j + k) % d), j + d * k) = 1;
                }
            }
            break;
        case GateKind::Swap:
            u = Eigen::MatrixXcd::Zero(d * d, d * d);
            for (int64_t j = 0; j < d; j++) {
                for (int64_t k = 0; k < d; k++) {
                    u(k + d * j, j + d * k) = 1;
                }
            }
            break;
        case GateKind::Custom:
            throw ScopeError("gate_matrix: custom symplectic gates carry no dense unitary");
    }
    return u;
}

void apply_circuit(const Circuit &w, DenseState &v) {
    for (const auto &layer : w.layers) {
        for (const auto &g : layer) {
            apply_unitary(gate_matrix(g, *v.system()), g.sites, v);
        }
    }
}

Eigen::MatrixXcd haar_unitary(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    Eigen::MatrixXcd z((Eigen::Index)n, (Eigen::Index)n);
    for (Eigen::Index i = 0; i < z.rows(); i++) {
        for (Eigen::Index j = 0; j < z.cols(); j++) {
            z(i, j) = cd(g(rng), g(rng)) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); j++) {
        cd diag = r(j, j);
        cd ph = std::abs(diag) > 0 ? diag / std::abs(diag) : cd(1, 0);
        q.col(j) *= ph;
    }
    return q;
}

std::vector<Region> dense_disks(const StabilizerModel &model, double radius) {
    std::vector<Region> out;
    int64_t r2 = (int64_t)std::llround(2 * radius);
    if (model.lattice) {
        const TorusLattice &lat = *model.lattice;
        // From r2 = L - 1 on, a disk row covers a whole noncontractible cycle of edges.
        if (r2 >= lat.size() - 1) {
            return out;
        }
        for (int64_t y = 0; y < 2 * lat.size(); y++) {
            for (int64_t x = 0; x < 2 * lat.size(); x++) {
                Region d = model.lift(lat.shell(Point2{x, y}, 0, r2));
                if (!d.empty()) {
                    out.push_back(d);
                }
            }
        }
    } else {
        int64_t n = 0;
        for (uint32_t p : model.positions) {
            n = std::max<int64_t>(n, (int64_t)p + 1);
        }
        if (r2 >= n) {
            return out;
        }
        for (int64_t c2 = 0; c2 < 2 * n; c2++) {
            Region d = Region::from_predicate(model.num_sites(), [&](uint32_t s) {
                return std::abs(2 * (int64_t)model.positions[s] - c2) <= r2;
            });
            if (!d.empty()) {
                out.push_back(d);
            }
        }
    }
    std::vector<int64_t> whole = term_components(model, Region(model.num_sites(), {}));
    std::erase_if(out, [&](const Region &d) {
        return disk_cuts_system(model, d, whole);
    });
    std::sort(out.begin(), out.end(), [](const Region &a, const Region &b) {
        return a.sites() < b.sites();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<DiskPair> disk_pairs(const StabilizerModel &model, double r, double t) {
    std::vector<DiskPair> out;
    int64_t r2 = (int64_t)std::llround(2 * r), t2 = (int64_t)std::llround(2 * t);
    if (model.lattice) {
        const TorusLattice &lat = *model.lattice;
        for (int64_t y = 0; y < 2 * lat.size(); y++) {
            for (int64_t x = 0; x < 2 * lat.size(); x++) {
                Region a = model.lift(lat.shell(Point2{x, y}, 0, r2));
                Region b = model.lift(lat.shell(Point2{x, y}, 0, r2 + t2));
                if (!a.empty()) {
                    out.push_back(DiskPair{a, b});
                }
            }
        }
    } else {
        int64_t n = 0;
        for (uint32_t p : model.positions) {
            n = std::max<int64_t>(n, (int64_t)p + 1);
        }
        for (int64_t c2 = 0; c2 < 2 * n; c2++) {
            auto ball = [&](int64_t rad2) {
                return Region::from_predicate(model.num_sites(), [&](uint32_t s) {
                    return std::abs(2 * (int64_t)model.positions[s] - c2) <= rad2;
                });
            };
            Region a = ball(r2);
            if (!a.empty()) {
                out.push_back(DiskPair{a, ball(r2 + t2)});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const DiskPair &x, const DiskPair &y) {
        return std::make_pair(x.a.sites(), x.b.sites()) < std::make_pair(y.a.sites(), y.b.sites());
    });
    out.erase(std::unique(out.begin(), out.end(), [](const DiskPair &x, const DiskPair &y) {
        return x.a == y.a && x.b == y.b;
    }), out.end());
    return out;
}

namespace {

/// Brickwork of Haar gates over the listed sites: single-site gates, then two layers of pairs.
void scramble(DenseState &v, const std::vector<uint32_t> &sites, std::mt19937_64 &rng) {
    const SiteSystem &sys = *v.system();
    for (uint32_t s : sites) {
        apply_unitary(haar_unitary(sys.dim(s), rng), {s}, v);
    }
    for (size_t offset = 0; offset < 2; offset++) {
        for (size_t k = offset; k + 1 < sites.size(); k += 2) {
            size_t d = (size_t)sys.dim(sites[k]) * sys.dim(sites[k + 1]);
            apply_unitary(haar_unitary(d, rng), {sites[k], sites[k + 1]}, v);
        }
    }
}

}  // namespace

DenseInvisibilityReport dense_invisibility_check(
    const DenseState &psi, const WeylSum &op, const std::vector<DiskPair> &disks, int samples, uint64_t seed, double tolerance) {
    DenseInvisibilityReport rep;
    rep.seed = seed;
    rep.pass = true;
    std::mt19937_64 rng(seed);
    for (const auto &dp : disks) {
        if (!dp.a.is_subset_of(dp.b)) {
            throw ValidationError("dense_invisibility_check: A must lie inside B");
        }
        std::vector<uint32_t> outside = dp.b.complement().sites();
        for (int k = 0; k <= samples; k++) {
            DenseState phi = psi;
            if (k > 0) {
                if (outside.empty()) {
                    break;
                }
                scramble(phi, outside, rng);
            }
            DenseState v = apply(op, phi);
            double c = std::norm(v.norm());
            double dev = reduced_state_distance(v, psi, dp.a, c, tolerance);
            rep.samples++;
            if (dev > rep.worst_deviation) {
                rep.worst_deviation = dev;
            }
            if (dev > tolerance && rep.pass) {
                rep.pass = false;
                std::stringstream d;
                d << "disk of " << dp.a.size() << " sites (first site " << (dp.a.empty() ? 0 : dp.a.sites()[0]) << ") reveals the operator: deviation " << dev;
                rep.detail = d.str();
            }
        }
        rep.disks_checked++;
    }
    if (rep.pass) {
        std::stringstream d;
        d << rep.disks_checked << " disk pairs, " << rep.samples << " states, worst deviation " << rep.worst_deviation;
        rep.detail = d.str();
    }
    return rep;
}

DenseLtoReport dense_lto_check(const StabilizerModel &model, size_t cap, double radius, uint64_t seed, double tolerance) {
    DenseLtoReport rep;
    rep.pass = true;
    if (model.lattice) {
        radius = std::min(radius, (double)(model.lattice->size() - 2) / 2);
    }
    DenseState psi = dense_ground_state(model, cap, seed);
    std::mt19937_64 rng(seed + 1);
    for (const Region &d : dense_disks(model, radius)) {
        for (int k = 0; k < 2; k++) {
            DenseState v = DenseState::random(model.system, rng, cap);
            for (size_t j : model.terms_meeting(d)) {
                v = apply_projector(model.terms[j].generator, v);
            }
            if (v.normalize() < 1e-8) {
                rep.pass = false;
                rep.violating_disk = d;
                rep.detail = "empty local ground space";
                return rep;
            }
            double dev = reduced_state_distance(v, psi, d, 1, tolerance);
            rep.worst_deviation = std::max(rep.worst_deviation, dev);
            if (dev > tolerance) {
                rep.pass = false;
                rep.violating_disk = d;
                std::stringstream s;
                s << "disk {";
                for (size_t i = 0; i < d.sites().size(); i++) {
                    s << (i ? "," : "") << d.sites()[i];
                }
                s << "}: reduced state differs from the ground state by " << dev;
                rep.detail = s.str();
                rep.disks_checked++;
                return rep;
            }
        }
        rep.disks_checked++;
    }
    std::stringstream s;
    s << rep.disks_checked << " disks, worst deviation " << rep.worst_deviation;
    rep.detail = s.str();
    return rep;
}

}  // namespace stilde

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

#include "stilde/weyl.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "stilde/errors.h"
#include "stilde/ringlinalg.h"

namespace stilde {

SiteSystem::SiteSystem(std::vector<uint32_t> dims) : dims_(std::move(dims)), lcm_(1) {
    for (uint32_t d : dims_) {
        if (d < 2 || d > 65535) {
            throw ValidationError("SiteSystem: local dimensions must lie in [2, 65535]");
        }
        lcm_ = lcm64(lcm_, d);
        if (lcm_ > (int64_t(1) << 31)) {
            throw ValidationError("SiteSystem: lcm of local dimensions too large");
        }
    }
    for (uint32_t d : dims_) {
        scales_.push_back(lcm_ / d);
    }
}

std::shared_ptr<const SiteSystem> SiteSystem::make(std::vector<uint32_t> dims) {
    return std::make_shared<const SiteSystem>(std::move(dims));
}

std::shared_ptr<const SiteSystem> SiteSystem::uniform(size_t n, uint32_t d) {
    return make(std::vector<uint32_t>(n, d));
}

// ---------------------------------------------------------------------------------------------

Phase::Phase(int64_t n, int64_t d) {
    if (d == 0) {
        throw ValidationError("Phase: zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    n = mod64(n, d);
    int64_t g = gcd64(n, d);
    if (g == 0) {
        g = d;
    }
    num = n / g;
    den = d / g;
}

Phase Phase::operator+(const Phase &o) const {
    int64_t d = lcm64(den, o.den);
    __int128 n = (__int128)num * (d / den) + (__int128)o.num * (d / o.den);
    return Phase((int64_t)(n % d), d);
}

Phase Phase::operator-() const {
    return Phase(-num, den);
}

Phase Phase::operator-(const Phase &o) const {
    return *this + (-o);
}

Phase Phase::operator*(int64_t k) const {
    return Phase((int64_t)((__int128)num * mod64(k, den) % den), den);
}

Phase Phase::divided(int64_t k) const {
    if (k == 0) {
        throw ValidationError("Phase::divided: division by zero");
    }
    if (k < 0) {
        return Phase(-num, -k * den);
    }
    return Phase(num, k * den);
}

std::string Phase::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------------------------

void require_same_system(const WeylOp &a, const WeylOp &b) {
    if (a.system() == b.system()) {
        return;
    }
    if (!a.system() || !b.system() || !(*a.system() == *b.system())) {
        throw ValidationError("Weyl operators on mismatched site systems");
    }
}

WeylOp::WeylOp(SiteSystemPtr sys) : sys_(std::move(sys)) {
    x_.assign(sys_->size(), 0);
    z_.assign(sys_->size(), 0);
}

WeylOp WeylOp::identity(SiteSystemPtr sys) {
    return WeylOp(std::move(sys));
}

WeylOp WeylOp::x(SiteSystemPtr sys, uint32_t site, int64_t power) {
    WeylOp r(std::move(sys));
    r.set_x(site, power);
    return r;
}

WeylOp WeylOp::z(SiteSystemPtr sys, uint32_t site, int64_t power) {
    WeylOp r(std::move(sys));
    r.set_z(site, power);
    return r;
}

WeylOp WeylOp::scalar(SiteSystemPtr sys, Phase phase) {
    WeylOp r(std::move(sys));
    r.phase_ = phase;
    return r;
}

WeylOp WeylOp::from_vector(SiteSystemPtr sys, const std::vector<int64_t> &v, Phase phase) {
    WeylOp r(std::move(sys));
    if (v.size() != 2 * r.num_sites()) {
        throw ValidationError("WeylOp::from_vector: length mismatch");
    }
    for (size_t i = 0; i < r.num_sites(); i++) {
        r.set_x(i, v[2 * i]);
        r.set_z(i, v[2 * i + 1]);
    }
    r.phase_ = phase;
    return r;
}

void WeylOp::set_x(size_t site, int64_t e) {
    if (site >= x_.size()) {
        throw ValidationError("WeylOp: site out of range");
    }
    x_[site] = (uint16_t)mod64(e, sys_->dim(site));
}

void WeylOp::set_z(size_t site, int64_t e) {
    if (site >= z_.size()) {
        throw ValidationError("WeylOp: site out of range");
    }
    z_[site] = (uint16_t)mod64(e, sys_->dim(site));
}

std::vector<int64_t> WeylOp::to_vector() const {
    std::vector<int64_t> v(2 * x_.size());
    for (size_t i = 0; i < x_.size(); i++) {
        v[2 * i] = x_[i];
        v[2 * i + 1] = z_[i];
    }
    return v;
}

std::vector<uint32_t> WeylOp::support() const {
    std::vector<uint32_t> s;
    for (size_t i = 0; i < x_.size(); i++) {
        if (x_[i] || z_[i]) {
            s.push_back((uint32_t)i);
        }
    }
    return s;
}

bool WeylOp::is_scalar() const {
    for (size_t i = 0; i < x_.size(); i++) {
        if (x_[i] || z_[i]) {
            return false;
        }
    }
    return true;
}

bool WeylOp::operator<(const WeylOp &o) const {
    if (x_ != o.x_) {
        return x_ < o.x_;
    }
    if (z_ != o.z_) {
        return z_ < o.z_;
    }
    return phase_ < o.phase_;
}

std::string WeylOp::str() const {
    std::stringstream out;
    out << "w^" << phase_.str();
    bool any = false;
    for (size_t i = 0; i < x_.size(); i++) {
        if (x_[i]) {
            out << (any ? " " : " X[") << i << "^" << x_[i];
            any = true;
        }
    }
    if (any) {
        out << "]";
    }
    any = false;
    for (size_t i = 0; i < z_.size(); i++) {
        if (z_[i]) {
            out << (any ? " " : " Z[") << i << "^" << z_[i];
            any = true;
        }
    }
    if (any) {
        out << "]";
    }
    return out.str();
}

WeylOp WeylOp::parse(SiteSystemPtr sys, const std::string &text) {
    WeylOp r(std::move(sys));
    std::string s = text;
    for (char &c : s) {
        if (c == '[' || c == ']') {
            c = ' ';
        }
    }
    std::stringstream in(s);
    std::string tok;
    char mode = 0;
    while (in >> tok) {
        if (tok.rfind("w^", 0) == 0) {
            auto slash = tok.find('/');
            if (slash == std::string::npos) {
                throw ValidationError("WeylOp::parse: bad phase '" + tok + "'");
            }
            r.phase_ = Phase(std::stoll(tok.substr(2, slash - 2)), std::stoll(tok.substr(slash + 1)));
        } else if (tok == "X" || tok == "Z") {
            mode = tok[0];
        } else {
            auto caret = tok.find('^');
            if (mode == 0 || caret == std::string::npos) {
                throw ValidationError("WeylOp::parse: bad token '" + tok + "'");
            }
            uint32_t site = (uint32_t)std::stoul(tok.substr(0, caret));
            int64_t e = std::stoll(tok.substr(caret + 1));
            if (mode == 'X') {
                r.set_x(site, r.x_exp(site) + e);
            } else {
                r.set_z(site, r.z_exp(site) + e);
            }
        }
    }
    return r;
}

WeylOp compose(const WeylOp &a, const WeylOp &b) {
    require_same_system(a, b);
    const SiteSystem &sys = *a.sys_;
    int64_t D = sys.lcm();
    WeylOp r(a.sys_);
    __int128 acc = 0;
    for (size_t i = 0; i < a.x_.size(); i++) {
        uint32_t d = sys.dim(i);
        // Z^{z_a} X^{x_b} = w^{z_a x_b} X^{x_b} Z^{z_a}.
        if (a.z_[i] && b.x_[i]) {
            acc += (int64_t)a.z_[i] * b.x_[i] * sys.scale(i);
        }
        uint32_t x = a.x_[i] + b.x_[i];
        uint32_t z = a.z_[i] + b.z_[i];
        r.x_[i] = (uint16_t)(x >= d ? x - d : x);
        r.z_[i] = (uint16_t)(z >= d ? z - d : z);
    }
    r.phase_ = a.phase_ + b.phase_ + Phase((int64_t)(acc % D), D);
    return r;
}

WeylOp operator*(const WeylOp &a, const WeylOp &b) {
    return compose(a, b);
}

WeylOp inverse(const WeylOp &a) {
    const SiteSystem &sys = *a.sys_;
    int64_t D = sys.lcm();
    WeylOp r(a.sys_);
    __int128 acc = 0;
    for (size_t i = 0; i < a.x_.size(); i++) {
        uint32_t d = sys.dim(i);
        // Z^{-z} X^{-x} = w^{xz} X^{-x} Z^{-z}.
        if (a.x_[i] && a.z_[i]) {
            acc += (int64_t)a.x_[i] * a.z_[i] * sys.scale(i);
        }
        r.x_[i] = (uint16_t)(a.x_[i] ? d - a.x_[i] : 0);
        r.z_[i] = (uint16_t)(a.z_[i] ? d - a.z_[i] : 0);
    }
    r.phase_ = -a.phase_ + Phase((int64_t)(acc % D), D);
    return r;
}

WeylOp power(const WeylOp &a, int64_t m) {
    if (m < 0) {
        return power(inverse(a), -m);
    }
    const SiteSystem &sys = *a.sys_;
    int64_t D = sys.lcm();
    WeylOp r(a.sys_);
    __int128 acc = 0;
    for (size_t i = 0; i < a.x_.size(); i++) {
        int64_t d = sys.dim(i);
        if (a.x_[i] && a.z_[i]) {
            // (X^x Z^z)^m = w^{x z m (m - 1) / 2} X^{m x} Z^{m z}.
            int64_t tri = (int64_t)(((__int128)m * (m - 1) / 2) % d);
            int64_t e = (int64_t)a.x_[i] * a.z_[i] % d * tri % d;
            acc += (__int128)e * sys.scale(i);
        }
        r.x_[i] = (uint16_t)((__int128)a.x_[i] * m % d);
        r.z_[i] = (uint16_t)((__int128)a.z_[i] * m % d);
    }
    r.phase_ = a.phase_ * m + Phase((int64_t)(acc % D), D);
    return r;
}

Phase commutation_exponent(const WeylOp &a, const WeylOp &b) {
    require_same_system(a, b);
    const SiteSystem &sys = *a.system();
    int64_t D = sys.lcm();
    __int128 acc = 0;
    for (size_t i = 0; i < a.num_sites(); i++) {
        int64_t t = (int64_t)a.z_exp(i) * b.x_exp(i) - (int64_t)a.x_exp(i) * b.z_exp(i);
        if (t) {
            acc += (__int128)t * sys.scale(i);
        }
    }
    int64_t v = (int64_t)(acc % D);
    return Phase(v, D);
}

bool commutes(const WeylOp &a, const WeylOp &b) {
    return commutation_exponent(a, b).is_zero();
}

WeylOp restrict_without_phase(const WeylOp &a, const Region &region) {
    if (region.universe() != a.num_sites()) {
        throw ValidationError("restrict: region universe does not match the site system");
    }
    WeylOp r(a.system());
    for (uint32_t s : region.sites()) {
        r.set_x(s, a.x_exp(s));
        r.set_z(s, a.z_exp(s));
    }
    return r;
}

WeylOp restrict(const WeylOp &a, const Region &region) {
    WeylOp r = restrict_without_phase(a, region);
    r.set_phase(a.phase());
    return r;
}

std::pair<WeylOp, WeylOp> split(const WeylOp &a, const Region &m) {
    return {restrict(a, m), restrict_without_phase(a, m.complement())};
}

OrderResult order_of(const WeylOp &a) {
    int64_t n = 1;
    const SiteSystem &sys = *a.system();
    for (size_t i = 0; i < a.num_sites(); i++) {
        int64_t d = sys.dim(i);
        int64_t g = gcd64(gcd64(a.x_exp(i), a.z_exp(i)), d);
        n = lcm64(n, d / g);
    }
    WeylOp p = power(a, n);
    return OrderResult{n, p.phase()};
}

// ---------------------------------------------------------------------------------------------

namespace {

bool pauli_less(const WeylOp &a, const WeylOp &b) {
    return a.with_phase(Phase()) < b.with_phase(Phase());
}

}  // namespace

WeylSum::WeylSum(const WeylOp &op, const Cyclo &coeff) : sys_(op.system()) {
    add(coeff, op);
}

WeylSum WeylSum::scalar(SiteSystemPtr sys, const Cyclo &c) {
    WeylSum s(sys);
    s.add(c, WeylOp::identity(sys));
    return s;
}

void WeylSum::add(const Cyclo &coeff, const WeylOp &op) {
    if (!sys_) {
        sys_ = op.system();
    } else if (sys_ != op.system() && !(*sys_ == *op.system())) {
        throw ValidationError("WeylSum: mismatched site systems");
    }
    if (coeff.is_zero()) {
        return;
    }
    Cyclo c = op.phase().is_zero() ? coeff : coeff * op.phase().to_cyclo();
    WeylOp key = op.with_phase(Phase());
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const auto &t, const WeylOp &k) {
        return pauli_less(t.second, k);
    });
    if (it != terms_.end() && it->second.same_pauli(key)) {
        it->first += c;
        if (it->first.is_zero()) {
            terms_.erase(it);
        }
        return;
    }
    terms_.insert(it, {c, key});
}

WeylSum WeylSum::operator+(const WeylSum &o) const {
    WeylSum r = *this;
    if (!r.sys_) {
        r.sys_ = o.sys_;
    }
    for (const auto &[c, op] : o.terms_) {
        r.add(c, op);
    }
    return r;
}

WeylSum WeylSum::operator-(const WeylSum &o) const {
    return *this + o.scaled(Cyclo(-1));
}

WeylSum WeylSum::operator*(const WeylSum &o) const {
    std::map<WeylOp, Cyclo> acc;
    for (const auto &[c1, p1] : terms_) {
        for (const auto &[c2, p2] : o.terms_) {
            WeylOp p = compose(p1, p2);
            Cyclo c = c1 * c2;
            if (!p.phase().is_zero()) {
                c *= p.phase().to_cyclo();
            }
            auto key = p.with_phase(Phase());
            auto it = acc.find(key);
            if (it == acc.end()) {
                acc.emplace(key, c);
            } else {
                it->second += c;
            }
        }
    }
    WeylSum r(sys_ ? sys_ : o.sys_);
    for (auto &[op, c] : acc) {
        if (!c.is_zero()) {
            r.terms_.emplace_back(c, op);
        }
    }
    return r;
}

WeylSum WeylSum::scaled(const Cyclo &c) const {
    WeylSum r(sys_);
    if (c.is_zero()) {
        return r;
    }
    for (const auto &[k, op] : terms_) {
        r.terms_.emplace_back(k * c, op);
    }
    return r;
}

WeylSum WeylSum::adjoint() const {
    WeylSum r(sys_);
    for (const auto &[c, op] : terms_) {
        r.add(c.conj(), inverse(op));
    }
    return r;
}

Cyclo WeylSum::coefficient(const WeylOp &op) const {
    WeylOp key = op.with_phase(Phase());
    for (const auto &[c, p] : terms_) {
        if (p.same_pauli(key)) {
            return op.phase().is_zero() ? c : c * (-op.phase()).to_cyclo();
        }
    }
    return Cyclo();
}

std::vector<uint32_t> WeylSum::support() const {
    if (!sys_) {
        return {};
    }
    std::vector<bool> mask(sys_->size(), false);
    for (const auto &t : terms_) {
        for (uint32_t s : t.second.support()) {
            mask[s] = true;
        }
    }
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < mask.size(); s++) {
        if (mask[s]) {
            out.push_back(s);
        }
    }
    return out;
}

bool WeylSum::operator==(const WeylSum &o) const {
    if (terms_.size() != o.terms_.size()) {
        return false;
    }
    for (size_t k = 0; k < terms_.size(); k++) {
        if (!terms_[k].second.same_pauli(o.terms_[k].second) || terms_[k].first != o.terms_[k].first) {
            return false;
        }
    }
    return true;
}

std::string WeylSum::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::stringstream out;
    for (size_t k = 0; k < terms_.size(); k++) {
        out << (k ? " + " : "") << "(" << terms_[k].first.str() << ") " << terms_[k].second.str();
    }
    return out.str();
}

}  // namespace stilde

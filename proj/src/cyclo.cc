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

#include "stilde/cyclo.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "stilde/errors.h"
#include "stilde/ringlinalg.h"

namespace stilde {

namespace {

std::vector<int64_t> compute_cyclotomic(int64_t n) {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<int64_t> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int64_t d = 1; d < n; d++) {
        if (n % d != 0) {
            continue;
        }
        const std::vector<int64_t> &den = cyclotomic_polynomial(d);
        size_t dd = den.size() - 1;
        std::vector<int64_t> q(num.size() - dd, 0);
        for (size_t k = num.size(); k-- > dd;) {
            int64_t c = num[k];
            q[k - dd] = c;
            if (c != 0) {
                for (size_t i = 0; i <= dd; i++) {
                    num[k - dd + i] -= c * den[i];
                }
            }
        }
        num = q;
    }
    return num;
}

}  // namespace

const std::vector<int64_t> &cyclotomic_polynomial(int64_t n) {
    if (n < 1) {
        throw ValidationError("cyclotomic_polynomial: order must be positive");
    }
    static std::mutex mu;
    static std::map<int64_t, std::vector<int64_t>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) {
            return it->second;
        }
    }
    std::vector<int64_t> poly = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(poly)).first->second;
}

int64_t euler_phi(int64_t n) {
    int64_t result = n;
    for (int64_t p = 2; p * p <= n; p++) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            result -= result / p;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

Cyclo::Cyclo() : n_(1), c_(1, Rational(0)) {
}

Cyclo::Cyclo(long value) : n_(1), c_(1, Rational(value)) {
}

Cyclo::Cyclo(const Rational &value) : n_(1), c_(1, value) {
}

Cyclo Cyclo::from_powers(std::vector<Rational> powers, int64_t n) {
    const std::vector<int64_t> &phi = cyclotomic_polynomial(n);
    size_t deg = phi.size() - 1;
    for (size_t k = powers.size(); k-- > deg;) {
        if (powers[k] == 0) {
            continue;
        }
        Rational c = powers[k];
        for (size_t i = 0; i < deg; i++) {
            if (phi[i] != 0) {
                powers[k - deg + i] -= c * phi[i];
            }
        }
        powers[k] = 0;
    }
    powers.resize(deg, Rational(0));
    Cyclo out;
    out.n_ = n;
    out.c_ = std::move(powers);
    return out;
}

Cyclo Cyclo::root_of_unity(int64_t k, int64_t n) {
    if (n < 1) {
        throw ValidationError("root_of_unity: order must be positive");
    }
    std::vector<Rational> p(n, Rational(0));
    p[mod64(k, n)] = 1;
    return from_powers(std::move(p), n);
}

Cyclo Cyclo::from_root_counts(const std::vector<int64_t> &counts, const Rational &scale) {
    int64_t n = (int64_t)counts.size();
    std::vector<Rational> p(n);
    for (int64_t k = 0; k < n; k++) {
        p[k] = scale * counts[k];
    }
    return from_powers(std::move(p), n);
}

Cyclo Cyclo::with_order(int64_t m) const {
    if (m == n_) {
        return *this;
    }
    if (m % n_ != 0) {
        throw ValidationError("Cyclo::with_order: target order must be a multiple");
    }
    int64_t step = m / n_;
    std::vector<Rational> p(m, Rational(0));
    for (size_t k = 0; k < c_.size(); k++) {
        p[k * step] = c_[k];
    }
    return from_powers(std::move(p), m);
}

bool Cyclo::is_zero() const {
    for (const auto &c : c_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

std::optional<Rational> Cyclo::as_rational() const {
    for (size_t k = 1; k < c_.size(); k++) {
        if (c_[k] != 0) {
            return std::nullopt;
        }
    }
    return c_[0];
}

Cyclo Cyclo::operator+(const Cyclo &o) const {
    Cyclo r = *this;
    r += o;
    return r;
}

Cyclo Cyclo::operator-(const Cyclo &o) const {
    Cyclo r = *this;
    r -= o;
    return r;
}

Cyclo &Cyclo::operator+=(const Cyclo &o) {
    if (o.n_ != n_) {
        int64_t m = lcm64(n_, o.n_);
        *this = with_order(m);
        Cyclo other = o.with_order(m);
        for (size_t k = 0; k < c_.size(); k++) {
            c_[k] += other.c_[k];
        }
        return *this;
    }
    for (size_t k = 0; k < c_.size(); k++) {
        c_[k] += o.c_[k];
    }
    return *this;
}

Cyclo &Cyclo::operator-=(const Cyclo &o) {
    *this += -o;
    return *this;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto &c : r.c_) {
        c = -c;
    }
    return r;
}

Cyclo Cyclo::operator*(const Cyclo &o) const {
    int64_t m = lcm64(n_, o.n_);
    Cyclo a = with_order(m), b = o.with_order(m);
    if (a.is_zero() || b.is_zero()) {
        Cyclo z;
        return z;
    }
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); i++) {
        if (a.c_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < b.c_.size(); j++) {
            if (b.c_[j] != 0) {
                p[i + j] += a.c_[i] * b.c_[j];
            }
        }
    }
    return from_powers(std::move(p), m);
}

Cyclo &Cyclo::operator*=(const Cyclo &o) {
    *this = *this * o;
    return *this;
}

Cyclo Cyclo::scaled(const Rational &q) const {
    Cyclo r = *this;
    for (auto &c : r.c_) {
        c *= q;
    }
    return r;
}

Cyclo Cyclo::galois(int64_t a) const {
    if (gcd64(a, n_) != 1) {
        throw ValidationError("Cyclo::galois: exponent not coprime to the order");
    }
    std::vector<Rational> p(n_, Rational(0));
    for (size_t k = 0; k < c_.size(); k++) {
        if (c_[k] != 0) {
            p[mod64((int64_t)k * a, n_)] += c_[k];
        }
    }
    return from_powers(std::move(p), n_);
}

Cyclo Cyclo::conj() const {
    return galois(-1);
}

bool Cyclo::operator==(const Cyclo &o) const {
    if (n_ == o.n_) {
        return c_ == o.c_;
    }
    int64_t m = lcm64(n_, o.n_);
    return with_order(m).c_ == o.with_order(m).c_;
}

std::complex<double> Cyclo::to_complex() const {
    std::complex<double> r = 0;
    for (size_t k = 0; k < c_.size(); k++) {
        if (c_[k] != 0) {
            double angle = 2 * std::numbers::pi * (double)k / (double)n_;
            r += c_[k].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
        }
    }
    return r;
}

std::vector<Cyclo::Term> Cyclo::terms() const {
    std::vector<Term> out;
    if (auto q = as_rational()) {
        if (*q != 0) {
            out.push_back(Term{*q, 0, 1});
        }
        return out;
    }
    for (size_t k = 0; k < c_.size(); k++) {
        if (c_[k] != 0) {
            out.push_back(Term{c_[k], (int64_t)k, n_});
        }
    }
    return out;
}

std::string Cyclo::str() const {
    auto ts = terms();
    if (ts.empty()) {
        return "0";
    }
    std::stringstream out;
    for (size_t i = 0; i < ts.size(); i++) {
        if (i) {
            out << " + ";
        }
        out << ts[i].coeff.get_str();
        if (ts[i].exponent != 0) {
            out << "*z" << ts[i].order << "^" << ts[i].exponent;
        }
    }
    return out.str();
}

}  // namespace stilde

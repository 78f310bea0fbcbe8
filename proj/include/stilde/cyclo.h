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

#ifndef STILDE_CYCLO_H
#define STILDE_CYCLO_H

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stilde {

using Rational = mpq_class;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<int64_t> &cyclotomic_polynomial(int64_t n);
int64_t euler_phi(int64_t n);

/// Exact element of Q(zeta_n), stored in the power basis 1, zeta, ..., zeta^{phi(n)-1}
/// after reduction modulo the n-th cyclotomic polynomial.
class Cyclo {
   public:
    struct Term {
        Rational coeff;
        int64_t exponent;
        int64_t order;
    };

    Cyclo();
    Cyclo(long value);  // NOLINT(google-explicit-constructor)
    Cyclo(const Rational &value);  // NOLINT(google-explicit-constructor)

    /// exp(2 pi i k / n).
    static Cyclo root_of_unity(int64_t k, int64_t n);
    /// sum_k counts[k] zeta_n^k for k in [0, n), scaled by `scale`.
    static Cyclo from_root_counts(const std::vector<int64_t> &counts, const Rational &scale = 1);
    /// Builds from power-basis coefficients of any length, reducing modulo Phi_n.
    static Cyclo from_powers(std::vector<Rational> powers, int64_t n);

    int64_t order() const {
        return n_;
    }
    const std::vector<Rational> &coeffs() const {
        return c_;
    }

    Cyclo with_order(int64_t m) const;
    bool is_zero() const;
    std::optional<Rational> as_rational() const;

    Cyclo operator+(const Cyclo &o) const;
    Cyclo operator-(const Cyclo &o) const;
    Cyclo operator*(const Cyclo &o) const;
    Cyclo operator-() const;
    Cyclo &operator+=(const Cyclo &o);
    Cyclo &operator-=(const Cyclo &o);
    Cyclo &operator*=(const Cyclo &o);
    Cyclo scaled(const Rational &q) const;
    Cyclo conj() const;
    /// Galois automorphism zeta -> zeta^a (gcd(a, n) = 1).
    Cyclo galois(int64_t a) const;

    bool operator==(const Cyclo &o) const;
    bool operator!=(const Cyclo &o) const {
        return !(*this == o);
    }

    std::complex<double> to_complex() const;
    /// Nonzero power-basis terms at this element's order (order 1 when rational).
    std::vector<Term> terms() const;
    std::string str() const;

   private:
    int64_t n_;
    std::vector<Rational> c_;
};

}  // namespace stilde

#endif

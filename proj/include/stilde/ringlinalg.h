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

#ifndef STILDE_RINGLINALG_H
#define STILDE_RINGLINALG_H

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stilde/errors.h"

namespace stilde {

using BigInt = mpz_class;

/// Dense matrix of arbitrary precision integers.
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    BigInt &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const BigInt &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }

    IntMatrix operator*(const IntMatrix &other) const;
    bool operator==(const IntMatrix &other) const;
    bool operator!=(const IntMatrix &other) const {
        return !(*this == other);
    }
    IntMatrix transpose() const;
    bool is_diagonal() const;
    /// Fraction-free Bareiss elimination. Requires a square matrix.
    BigInt determinant() const;
    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    /// Diagonal entries of D (length min(rows, cols)).
    std::vector<BigInt> diagonal() const;
};

/// U * A * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal (all >= 0).
SmithDecomposition smith_normal_form(const IntMatrix &a);

/// Integer helpers (operate on plain int64).
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
int64_t lcm_of(const std::vector<int64_t> &values);
int64_t mod64(int64_t a, int64_t m);
/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
int64_t xgcd64(int64_t a, int64_t b, int64_t &s, int64_t &t);
/// Inverse of a modulo m; throws if gcd(a, m) != 1.
int64_t inverse_mod(int64_t a, int64_t m);
/// A unit u of Z_m with u*a = gcd(a, m) (mod m). Makes no primality assumption.
int64_t normalizing_unit(int64_t a, int64_t m);

/// Arithmetic in Z_m on residues kept in [0, m).
class Zmod {
   public:
    explicit Zmod(int64_t modulus);
    int64_t modulus() const {
        return m_;
    }
    int64_t reduce(int64_t a) const {
        return mod64(a, m_);
    }
    int64_t add(int64_t a, int64_t b) const {
        int64_t r = a + b;
        return r >= m_ ? r - m_ : r;
    }
    int64_t sub(int64_t a, int64_t b) const {
        int64_t r = a - b;
        return r < 0 ? r + m_ : r;
    }
    int64_t neg(int64_t a) const {
        return a == 0 ? 0 : m_ - a;
    }
    int64_t mul(int64_t a, int64_t b) const {
        if (small_) {
            uint64_t low = magic_ * (uint64_t)(a * b);
            return (int64_t)(((__uint128_t)low * (uint64_t)m_) >> 64);
        }
        return (int64_t)(((__int128)a * b) % m_);
    }
    /// s*a + t*b.
    int64_t lin(int64_t s, int64_t a, int64_t t, int64_t b) const {
        return add(mul(s, a), mul(t, b));
    }

   private:
    int64_t m_;
    uint64_t magic_ = 0;
    bool small_ = false;
};

/// Dense row-major matrix of residues.
struct ModMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<int64_t> data;

    ModMatrix() = default;
    ModMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0) {
    }
    static ModMatrix identity(size_t n);
    int64_t &at(size_t r, size_t c) {
        return data[r * cols + c];
    }
    int64_t at(size_t r, size_t c) const {
        return data[r * cols + c];
    }
    int64_t *row(size_t r) {
        return data.data() + r * cols;
    }
    const int64_t *row(size_t r) const {
        return data.data() + r * cols;
    }
};

/// Smith form over Z_D: U * A * V = diag(delta) (mod D). Each delta_i is a divisor of D, with
/// 0 standing for D, in a divisibility chain. V_inv is the inverse of V.
struct ModSmith {
    int64_t modulus = 1;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<int64_t> diagonal;
    ModMatrix U;
    ModMatrix V;
    ModMatrix V_inv;
};

struct SmithTracking {
    bool u = false;
    bool v = false;
    bool v_inv = false;
};

ModSmith smith_normal_form_mod(ModMatrix a, int64_t modulus, SmithTracking tracking);

/// Finite abelian group described by invariant factors, with representatives in ambient
/// coordinates (the ambient group is the direct sum of Z_{moduli[j]}).
class AbelianGroupStructure {
   public:
    class Classifier {
       public:
        virtual ~Classifier() = default;
        virtual std::optional<std::vector<int64_t>> coordinates(const std::vector<int64_t> &v) const = 0;
    };

    std::vector<int64_t> moduli;
    std::vector<int64_t> invariant_factors;
    std::vector<std::vector<int64_t>> generators;

    BigInt order() const;
    /// Coordinates of v with respect to `generators`, each reduced modulo its invariant factor.
    /// Returns nullopt if v is not an element of the group.
    std::optional<std::vector<int64_t>> coordinates(const std::vector<int64_t> &v) const;
    bool contains(const std::vector<int64_t> &v) const {
        return coordinates(v).has_value();
    }
    /// Ambient element for the given coordinates.
    std::vector<int64_t> element(const std::vector<int64_t> &coords) const;

    std::shared_ptr<const Classifier> classifier;
};

/// Structure of <group_gens> / <subgroup_gens> inside the direct sum of Z_{moduli[j]}.
/// Throws ValidationError when a subgroup generator is not in the group.
AbelianGroupStructure quotient_structure(
    const std::vector<std::vector<int64_t>> &group_gens,
    const std::vector<std::vector<int64_t>> &subgroup_gens,
    const std::vector<int64_t> &moduli);

/// Solutions x (x_j in Z_{col_moduli[j]}) of sum_j A_ij x_j = 0 (mod row_moduli[i]), as an
/// independent generating set with invariant factors.
AbelianGroupStructure kernel_mod(
    const std::vector<std::vector<int64_t>> &a,
    const std::vector<int64_t> &col_moduli,
    const std::vector<int64_t> &row_moduli);
AbelianGroupStructure kernel_mod(const IntMatrix &a, const std::vector<int64_t> &moduli);

}  // namespace stilde

#endif

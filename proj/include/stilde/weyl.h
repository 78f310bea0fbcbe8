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

#ifndef STILDE_WEYL_H
#define STILDE_WEYL_H

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stilde/cyclo.h"
#include "stilde/region.h"

namespace stilde {

/// Local dimensions of every site.
class SiteSystem {
   public:
    explicit SiteSystem(std::vector<uint32_t> dims);
    static std::shared_ptr<const SiteSystem> make(std::vector<uint32_t> dims);
    static std::shared_ptr<const SiteSystem> uniform(size_t n, uint32_t d);

    size_t size() const {
        return dims_.size();
    }
    uint32_t dim(size_t site) const {
        return dims_[site];
    }
    const std::vector<uint32_t> &dims() const {
        return dims_;
    }
    /// lcm of all local dimensions.
    int64_t lcm() const {
        return lcm_;
    }
    /// lcm() / dim(site).
    int64_t scale(size_t site) const {
        return scales_[site];
    }
    bool operator==(const SiteSystem &o) const {
        return dims_ == o.dims_;
    }

   private:
    std::vector<uint32_t> dims_;
    std::vector<int64_t> scales_;
    int64_t lcm_;
};
using SiteSystemPtr = std::shared_ptr<const SiteSystem>;

/// exp(2 pi i num / den), kept reduced with 0 <= num < den.
struct Phase {
    int64_t num = 0;
    int64_t den = 1;

    Phase() = default;
    Phase(int64_t num, int64_t den);
    static Phase zero() {
        return Phase();
    }
    bool is_zero() const {
        return num == 0;
    }
    Phase operator+(const Phase &o) const;
    Phase operator-(const Phase &o) const;
    Phase operator-() const;
    Phase operator*(int64_t k) const;
    /// Some phase p with p * k = *this (k != 0), choosing num / (k * den).
    Phase divided(int64_t k) const;
    bool operator==(const Phase &o) const {
        return num == o.num && den == o.den;
    }
    bool operator!=(const Phase &o) const {
        return !(*this == o);
    }
    bool operator<(const Phase &o) const {
        return std::make_pair(num, den) < std::make_pair(o.num, o.den);
    }
    Cyclo to_cyclo() const {
        return Cyclo::root_of_unity(num, den);
    }
    std::string str() const;
};

/// phase * prod_i X_i^{x_i} Z_i^{z_i}, X left of Z on every site.
class WeylOp {
   public:
    WeylOp() = default;
    explicit WeylOp(SiteSystemPtr sys);
    static WeylOp identity(SiteSystemPtr sys);
    static WeylOp x(SiteSystemPtr sys, uint32_t site, int64_t power = 1);
    static WeylOp z(SiteSystemPtr sys, uint32_t site, int64_t power = 1);
    static WeylOp scalar(SiteSystemPtr sys, Phase phase);
    /// Interleaved exponents (x_0, z_0, x_1, z_1, ...).
    static WeylOp from_vector(SiteSystemPtr sys, const std::vector<int64_t> &v, Phase phase = Phase());
    /// Parses the text form produced by str().
    static WeylOp parse(SiteSystemPtr sys, const std::string &text);

    const SiteSystemPtr &system() const {
        return sys_;
    }
    size_t num_sites() const {
        return x_.size();
    }
    const Phase &phase() const {
        return phase_;
    }
    int64_t x_exp(size_t site) const {
        return x_[site];
    }
    int64_t z_exp(size_t site) const {
        return z_[site];
    }
    void set_x(size_t site, int64_t e);
    void set_z(size_t site, int64_t e);
    void set_phase(Phase p) {
        phase_ = p;
    }
    WeylOp with_phase(Phase p) const {
        WeylOp r = *this;
        r.phase_ = p;
        return r;
    }

    std::vector<int64_t> to_vector() const;
    std::vector<uint32_t> support() const;
    bool acts_on(size_t site) const {
        return x_[site] != 0 || z_[site] != 0;
    }
    /// True when all exponents vanish (phase ignored).
    bool is_scalar() const;
    bool is_identity() const {
        return is_scalar() && phase_.is_zero();
    }
    /// Same operator part, ignoring the phase.
    bool same_pauli(const WeylOp &o) const {
        return x_ == o.x_ && z_ == o.z_;
    }

    bool operator==(const WeylOp &o) const {
        return phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
    }
    bool operator!=(const WeylOp &o) const {
        return !(*this == o);
    }
    /// Orders by exponents (then phase); used for canonical sums.
    bool operator<(const WeylOp &o) const;

    std::string str() const;

   private:
    friend WeylOp compose(const WeylOp &a, const WeylOp &b);
    friend WeylOp inverse(const WeylOp &a);
    friend WeylOp power(const WeylOp &a, int64_t m);

    SiteSystemPtr sys_;
    Phase phase_;
    std::vector<uint16_t> x_;
    std::vector<uint16_t> z_;
};

void require_same_system(const WeylOp &a, const WeylOp &b);

/// Canonical form of a * b.
WeylOp compose(const WeylOp &a, const WeylOp &b);
WeylOp operator*(const WeylOp &a, const WeylOp &b);
WeylOp inverse(const WeylOp &a);
/// a^m for any integer m.
WeylOp power(const WeylOp &a, int64_t m);
/// c with a * b = exp(2 pi i c) * b * a. With Z X = w X Z this is
/// sum_i (z_a x_b - x_a z_b)_i / d_i.
Phase commutation_exponent(const WeylOp &a, const WeylOp &b);
bool commutes(const WeylOp &a, const WeylOp &b);
/// The factor of a on `region`, carrying the full phase of a.
WeylOp restrict(const WeylOp &a, const Region &region);
/// The factor of a on `region` with trivial phase.
WeylOp restrict_without_phase(const WeylOp &a, const Region &region);
/// (factor on m with the phase, factor on the complement without it); their product is a.
std::pair<WeylOp, WeylOp> split(const WeylOp &a, const Region &m);

struct OrderResult {
    int64_t order;
    Phase residual;
};
/// Smallest n >= 1 with a^n = phase * I.
OrderResult order_of(const WeylOp &a);

/// Finite linear combination of Weyl operators with cyclotomic coefficients. Operator parts are
/// stored with trivial phase, sorted, pairwise distinct, with nonzero coefficients.
class WeylSum {
   public:
    WeylSum() = default;
    explicit WeylSum(SiteSystemPtr sys) : sys_(std::move(sys)) {
    }
    explicit WeylSum(const WeylOp &op, const Cyclo &coeff = Cyclo(1));
    static WeylSum scalar(SiteSystemPtr sys, const Cyclo &c);

    const SiteSystemPtr &system() const {
        return sys_;
    }
    const std::vector<std::pair<Cyclo, WeylOp>> &terms() const {
        return terms_;
    }
    size_t size() const {
        return terms_.size();
    }
    bool is_zero() const {
        return terms_.empty();
    }

    void add(const Cyclo &coeff, const WeylOp &op);
    WeylSum operator+(const WeylSum &o) const;
    WeylSum operator-(const WeylSum &o) const;
    WeylSum operator*(const WeylSum &o) const;
    WeylSum scaled(const Cyclo &c) const;
    WeylSum adjoint() const;
    /// Coefficient of the operator part of `op` (phase of op divided out).
    Cyclo coefficient(const WeylOp &op) const;
    std::vector<uint32_t> support() const;
    bool operator==(const WeylSum &o) const;
    bool operator!=(const WeylSum &o) const {
        return !(*this == o);
    }
    std::string str() const;

   private:
    SiteSystemPtr sys_;
    std::vector<std::pair<Cyclo, WeylOp>> terms_;
};

}  // namespace stilde

#endif

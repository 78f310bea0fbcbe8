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

#ifndef STILDE_STABILIZER_GROUP_H
#define STILDE_STABILIZER_GROUP_H

#include <optional>
#include <vector>

#include "stilde/ringlinalg.h"
#include "stilde/weyl.h"

namespace stilde {

/// The group generated by a set of Weyl operators, kept as an echelon basis of Weyl rows with
/// exact phases (a Howell form over the per-site moduli). Columns are the interleaved (x, z)
/// exponents of the sites in `site_order`.
///
/// Phases are meaningful when the generators commute: then every element is
/// exp(2 pi i phase) times a product of rows, and phase_of() reads the phase.
class StabilizerGroup {
   public:
    struct Pivot {
        size_t column;
        int64_t value;  // divides the column modulus
        size_t row;
    };

    StabilizerGroup() = default;
    StabilizerGroup(SiteSystemPtr sys, const std::vector<WeylOp> &generators, std::vector<uint32_t> site_order = {});

    const SiteSystemPtr &system() const {
        return sys_;
    }
    const std::vector<WeylOp> &rows() const {
        return rows_;
    }
    const std::vector<Pivot> &pivots() const {
        return pivots_;
    }
    const std::vector<uint32_t> &site_order() const {
        return order_;
    }
    /// True if the group contains a scalar other than the identity.
    bool frustrated() const {
        return scalar_order_ > 1;
    }
    /// Order of the subgroup of scalars.
    int64_t scalar_order() const {
        return scalar_order_;
    }
    /// Order of the group modulo scalars (product of pivot orders).
    BigInt order() const;

    /// The phase c with v = exp(2 pi i c) g for some product g of rows, or nullopt if the
    /// operator part of v is not in the group.
    std::optional<Phase> phase_of(const WeylOp &v) const;
    bool contains_up_to_phase(const WeylOp &v) const {
        return phase_of(v).has_value();
    }
    /// Canonical representative of the coset v * G (operator part is unique per coset).
    WeylOp reduce(const WeylOp &v) const;
    /// Rows whose pivot column lies at or after `first_column`; when the site order lists the
    /// other sites first, these generate the subgroup supported on the remaining sites.
    std::vector<WeylOp> rows_from_column(size_t first_column) const;

    /// Exponent at a column.
    uint32_t entry(const WeylOp &v, size_t column) const {
        uint32_t s = order_[column >> 1];
        return (column & 1) ? v.z_exp(s) : v.x_exp(s);
    }
    int64_t column_modulus(size_t column) const {
        return sys_->dim(order_[column >> 1]);
    }

   private:
    void note_scalar(const WeylOp &s);

    SiteSystemPtr sys_;
    std::vector<uint32_t> order_;
    std::vector<WeylOp> rows_;
    std::vector<Pivot> pivots_;
    int64_t scalar_order_ = 1;
};

}  // namespace stilde

#endif

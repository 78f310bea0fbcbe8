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

#ifndef STILDE_COMMUTANT_H
#define STILDE_COMMUTANT_H

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stilde/model.h"
#include "stilde/ringlinalg.h"

namespace stilde {

/// Weyl operators supported on a region that commute with every term of a model (phases
/// ignored). Vectors are interleaved (x, z) exponents over region.sites().
struct CommutantGroup {
    Region region;
    SiteSystemPtr system;
    AbelianGroupStructure structure;
    std::vector<WeylOp> generators;

    std::vector<int64_t> vector_of(const WeylOp &op) const;
    WeylOp op_of(const std::vector<int64_t> &v) const;
    bool contains(const WeylOp &op) const;
};

CommutantGroup commutant_on_region(const StabilizerModel &model, const Region &region);

/// The logical algebra A_t / N_t of an annulus, as an abelian group with a phase-coherent section.
struct LogicalAlgebra {
    struct Classified {
        std::vector<int64_t> coords;
        Phase phase;
    };

    Region region;
    Region thick;
    CommutantGroup commutant;
    /// Group generated by the terms inside the thick region (with phases).
    std::shared_ptr<const StabilizerGroup> null_group;
    /// Generators of the null subgroup supported on the region.
    std::vector<WeylOp> null_generators;
    /// Quotient in coordinates of the commutant generators.
    AbelianGroupStructure quotient;
    /// Invariant factors of the quotient (orders of the representatives).
    std::vector<int64_t> orders;
    /// reps[i]^orders[i] equals a null element with trivial phase.
    std::vector<WeylOp> reps;
    /// Character labels; labels[vacuum] comes first.
    std::vector<std::vector<int64_t>> labels;
    size_t vacuum = 0;

    int64_t size() const;
    /// Quotient element with mixed-radix index k.
    std::vector<int64_t> element_coords(int64_t k) const;
    /// U_g = prod_i reps[i]^{g_i}.
    WeylOp element(const std::vector<int64_t> &g) const;
    /// Writes op = exp(2 pi i phase) U_g n with n null, or nullopt if op is not in the commutant.
    std::optional<Classified> classify(const WeylOp &op) const;
    /// chi_a(g) = exp(2 pi i sum_i a_i g_i / orders[i]).
    Phase character(const std::vector<int64_t> &a, const std::vector<int64_t> &g) const;
    /// pi_a = (1 / |Q|) sum_g conj(chi_a(g)) U_g.
    WeylSum projector(size_t label_index) const;
    std::vector<WeylSum> projectors() const;
    std::string str() const;
};

LogicalAlgebra logical_quotient(const StabilizerState &state, const Region &annulus, const Region &thick);
/// Annulus given on the model's lattice; N_t uses the annulus thickened by the interaction range.
LogicalAlgebra logical_quotient(const StabilizerState &state, const AnnulusSpec &spec);

/// Index into algebra.labels of the unique character with <pi_a> = 1. Throws PropertyViolation
/// when no or several characters qualify.
size_t vacuum_label(const StabilizerState &state, const LogicalAlgebra &algebra);

struct StabilityReport {
    bool injective = false;
    bool surjective = false;
    std::vector<int64_t> orders_t1;
    std::vector<int64_t> orders_t2;
    std::string detail;
    bool isomorphism() const {
        return injective && surjective;
    }
};

/// Compares the algebras at thicknesses t1 <= t2 through the inclusion map.
StabilityReport check_stability(const StabilizerState &state, const AnnulusSpec &base, double t1, double t2);

}  // namespace stilde

#endif

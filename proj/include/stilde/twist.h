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

#ifndef STILDE_TWIST_H
#define STILDE_TWIST_H

#include <complex>
#include <string>
#include <vector>

#include "stilde/commutant.h"

namespace stilde {

/// p oo q: the product p q with the multiplication order reversed on M' (the side of the cut
/// not containing C_u). For Weyl operators this is exp(-2 pi i c) p q with
/// c = commutation_exponent(p|M', q|M').
WeylOp twist_product(const WeylOp &p, const WeylOp &q, const AnnulusPair &pair);
/// Bilinear extension.
WeylSum twist_product(const WeylSum &p, const WeylSum &q, const AnnulusPair &pair);

/// <psi| p oo q |psi>, exact.
Cyclo twist_pairing(const StabilizerState &state, const WeylOp &p, const WeylOp &q, const AnnulusPair &pair);
Cyclo twist_pairing(const StabilizerState &state, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair);

/// Matrix of twist pairings of the fundamental projectors of two logical algebras.
struct STilde {
    std::vector<std::vector<int64_t>> left_labels;
    std::vector<std::vector<int64_t>> right_labels;
    size_t left_vacuum = 0;
    size_t right_vacuum = 0;
    /// entries[a][b] = <pi_a oo pi_b>.
    std::vector<std::vector<Cyclo>> entries;
    std::string provenance;

    size_t rows() const {
        return entries.size();
    }
    size_t cols() const {
        return entries.empty() ? 0 : entries[0].size();
    }
    std::vector<std::vector<std::complex<double>>> to_complex() const;
    /// Vacuum entry real positive and every |entry| <= 1.
    bool invariants_hold() const;
    /// Same matrix with rows and columns reordered (vacuum indices follow).
    STilde permuted(const std::vector<size_t> &row_perm, const std::vector<size_t> &col_perm) const;
    std::string str() const;
};

/// Assembles the matrix from the two algebras computed on pair.left and pair.right.
STilde stilde_matrix(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair);
/// Same matrix evaluated term by term from the projector sums (slow; for cross-checks).
STilde stilde_matrix_direct(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair);

/// Checks that shifting the representatives by null elements leaves every pairing unchanged:
/// <n oo U> = 0 for null combinations n = g - <g> coming from the null generators.
bool representatives_independent(const StabilizerState &state, const LogicalAlgebra &left, const LogicalAlgebra &right, const AnnulusPair &pair);

/// N[c][a][b] as exact rationals.
struct FusionTensor {
    size_t n = 0;
    std::vector<Rational> values;  // index (c * n + a) * n + b

    const Rational &at(size_t c, size_t a, size_t b) const {
        return values[(c * n + a) * n + b];
    }
    /// The unique c with N^c_ab = 1.
    size_t product(size_t a, size_t b) const;
};

/// N^c_ab = n^2 sum_p S_ap S_bp conj(S_cp) with n the number of rows. Throws NonGroupLikeFusion
/// unless every entry is 0 or 1 with exactly one 1 per (a, b).
FusionTensor verlinde_fusion(const STilde &s);

/// The group G whose double G x G is the fusion group of the labels. Only the matrix is read.
AbelianGroupStructure reconstruct_group(const STilde &s);

/// True iff a row and a column permutation fixing the vacua map s1 onto s2 exactly.
bool stilde_equivalent(const STilde &s1, const STilde &s2);

/// S_ab = (D / (d_a d_b)) S~_ab with d_a = sqrt(|Q| S~_vac,a) and D^2 = |Q|. Only defined when
/// every d_a = 1 and |Q| is a perfect square; otherwise throws ScopeError.
std::vector<std::vector<Cyclo>> s_matrix_view(const STilde &s);

}  // namespace stilde

#endif

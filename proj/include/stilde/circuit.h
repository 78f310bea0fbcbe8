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

#ifndef STILDE_CIRCUIT_H
#define STILDE_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

#include "stilde/twist.h"

namespace stilde {

enum class GateKind { Fourier, Phase, Multiply, Sum, Swap, Custom };

const char *gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

/// Clifford gate on one or two sites, stored through the images of X_s and Z_s.
///
/// Fourier: X -> Z, Z -> X^-1.
/// Phase: X -> tau X Z, Z -> Z, with tau = 1 for odd d and exp(i pi / d) for even d
///     (the gate diag(w^{k(k-1)/2}) or diag(exp(i pi k^2 / d))).
/// Multiply(a): X -> X^a, Z -> Z^{a^-1} (the permutation |k> -> |a k>).
/// Sum: |j, k> -> |j, j + k>, so X1 -> X1 X2, Z2 -> Z1^-1 Z2.
/// Swap: exchanges the two sites.
struct CliffordGate {
    GateKind kind = GateKind::Custom;
    std::vector<uint32_t> sites;
    int64_t param = 0;
    /// x_images[k], z_images[k] are the images of X and Z on sites[k].
    std::vector<WeylOp> x_images;
    std::vector<WeylOp> z_images;

    static CliffordGate fourier(const SiteSystemPtr &sys, uint32_t site);
    static CliffordGate phase(const SiteSystemPtr &sys, uint32_t site);
    static CliffordGate multiply(const SiteSystemPtr &sys, uint32_t site, int64_t a);
    static CliffordGate sum(const SiteSystemPtr &sys, uint32_t control, uint32_t target);
    static CliffordGate swap(const SiteSystemPtr &sys, uint32_t a, uint32_t b);
    /// Explicit symplectic data. Throws ValidationError unless the images are supported on the
    /// gate sites, have the right orders and preserve every commutation exponent.
    static CliffordGate custom(const SiteSystemPtr &sys, std::vector<uint32_t> sites, std::vector<WeylOp> x_images, std::vector<WeylOp> z_images);

    /// g p g^dagger.
    WeylOp conjugate(const WeylOp &p) const;
    std::string str() const;
};

struct Circuit {
    SiteSystemPtr system;
    std::vector<std::vector<CliffordGate>> layers;
    uint64_t seed = 0;

    int64_t depth() const {
        return (int64_t)layers.size();
    }
    /// Declared range: nearest-neighbor layers grow supports by at most one lattice unit each.
    double range() const {
        return (double)depth();
    }
    /// Throws ValidationError when two gates of a layer overlap.
    void validate() const;
    size_t gate_count() const;
};

/// W p W^dagger, applying the first layer first.
WeylOp conjugate_op(const Circuit &w, const WeylOp &p);
WeylSum conjugate_op(const Circuit &w, const WeylSum &p);

/// Nearest-neighbor site pairs of a model: lattice distance at most one lattice unit on the torus,
/// consecutive indices otherwise. Only pairs of equal dimension are returned.
std::vector<std::pair<uint32_t, uint32_t>> neighbor_pairs(const StabilizerModel &model);

/// Seeded layered circuit of the given depth built from the gate library.
Circuit random_circuit(const StabilizerModel &model, int64_t depth, uint64_t seed, double two_site_fraction = 0.5);

/// Conjugated terms and logicals. The interaction range becomes w + 2R.
ModelPtr evolve_model(const Circuit &w, const StabilizerModel &model);

struct InvarianceReport {
    GeometryReport geometry;
    /// The geometry inequalities hold, so the equivalence is covered by the invariance theorem.
    bool certified = false;
    STilde before;
    STilde after;
    bool equivalent = false;
    int64_t lemma_samples = 0;
    int64_t lemma_failures = 0;
    uint64_t seed = 0;
    std::string detail;
    std::string str() const;
};

/// Compares S~ of the model at thickness t with S~ of the evolved model at thickness t + R, and
/// samples W (P oo Q) W^dagger == (W P W^dagger) oo (W Q W^dagger) for random Weyl P, Q.
/// The pair is given on the lattice of the model.
InvarianceReport invariance_experiment(const StabilizerModel &model, const AnnulusPair &pair, const Circuit &w, int64_t lemma_samples, uint64_t seed, bool strict = false);

}  // namespace stilde

#endif

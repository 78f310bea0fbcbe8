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

#ifndef STILDE_MODEL_H
#define STILDE_MODEL_H

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stilde/cyclo.h"
#include "stilde/lattice.h"
#include "stilde/stabilizer_group.h"
#include "stilde/weyl.h"

namespace stilde {

/// h = (1/n) sum_{k<n} g^k for a Weyl generator g with g^n = +I.
struct ProjectorTerm {
    WeylOp generator;
    int64_t order = 1;
    std::vector<uint32_t> support;

    static ProjectorTerm from_generator(const WeylOp &g);
    /// h as a Weyl sum.
    WeylSum projector() const;
};

/// Commuting projector Hamiltonian H = -sum_j h_j plus the extra stabilizers (logical signs on
/// the torus, nonlocal stabilizers for hand-built states) that select one ground state.
struct StabilizerModel {
    std::string name;
    SiteSystemPtr system;
    /// Optional geometry. positions[s] is the lattice edge hosting site s.
    std::shared_ptr<const TorusLattice> lattice;
    std::vector<uint32_t> positions;
    std::vector<ProjectorTerm> terms;
    std::vector<WeylOp> logicals;
    /// Largest term diameter in lattice units (0 when no lattice is attached).
    double interaction_range = 0;
    /// Metadata for tests only: cyclic factors of the gauge group per layer.
    std::vector<int64_t> group_label;

    size_t num_sites() const {
        return system->size();
    }
    std::vector<WeylOp> term_generators() const;
    /// Terms followed by logicals.
    std::vector<WeylOp> stabilizer_generators() const;
    /// Model sites whose position lies in a lattice region (identity when no lattice).
    Region lift(const Region &lattice_region) const;
    /// The pair with every region lifted to model sites.
    AnnulusPair lift(const AnnulusPair &pair) const;
    /// Indices of terms whose support meets the region (model sites).
    std::vector<size_t> terms_meeting(const Region &r) const;
    /// Indices of terms supported inside the region (model sites).
    std::vector<size_t> terms_inside(const Region &r) const;
    void recompute_interaction_range();
};
using ModelPtr = std::shared_ptr<const StabilizerModel>;

/// A model together with the stabilizer group of its selected ground state.
class StabilizerState {
   public:
    explicit StabilizerState(ModelPtr model);

    const ModelPtr &model() const {
        return model_;
    }
    const StabilizerGroup &group() const {
        return group_;
    }
    /// The group fixes a unique state (its order equals the Hilbert space dimension).
    bool complete() const;

   private:
    ModelPtr model_;
    StabilizerGroup group_;
};
using StatePtr = std::shared_ptr<const StabilizerState>;
StatePtr make_state(ModelPtr model);

/// <psi| op |psi>: the stabilizer phase when op is a stabilizer up to phase, else 0.
Cyclo expectation(const StabilizerState &state, const WeylOp &op);
Cyclo expectation(const StabilizerState &state, const WeylSum &op);

/// Z_d toric code. Vertex terms X_right X_up X_left^-1 X_down^-1, plaquette terms
/// Z_bottom Z_right Z_top^-1 Z_left^-1. The state is fixed by Z loops around both cycles with
/// phases exp(2 pi i k / d) for logical_phase = (k_horizontal, k_vertical).
ModelPtr build_toric_code(std::shared_ptr<const TorusLattice> lattice, uint32_t d, std::pair<int64_t, int64_t> logical_phase = {0, 0});
/// Disjoint union of two models on the same lattice (each edge hosts a qudit of each layer).
ModelPtr stack_models(const StabilizerModel &a, const StabilizerModel &b);
/// Appends `count` qudits of dimension d in state |0>, each with the term (1/d) sum_k Z^k.
ModelPtr add_trivial_ancillas(const StabilizerModel &m, size_t count, uint32_t d = 2);
/// Same ground state with redundant extra generators: products of horizontally adjacent plaquettes.
ModelPtr add_redundant_plaquette_pairs(const StabilizerModel &m);
/// n-qubit GHZ state: local terms Z_i Z_{i+1}, nonlocal stabilizer X^{(x)n}.
ModelPtr build_ghz(size_t n);
/// Open Ising chain with terms Z_i Z_{i+1} and a single field term Z_field.
ModelPtr build_ising_with_field(size_t n, size_t field_site);
/// Product state |0...0> with single-site Z terms.
ModelPtr build_product_state(SiteSystemPtr sys);
/// Toric code on an nx x ny grid of vertices with smooth boundaries (unique ground state).
/// Sites: horizontal edges (x, y), x < nx - 1, at index y (nx - 1) + x, followed by vertical
/// edges (x, y), y < ny - 1, at index ny (nx - 1) + y nx + x. The patch sits on the edges of a
/// torus of size max(nx, ny) + 2 with vertex (x, y) at (x, y).
ModelPtr build_planar_patch(int64_t nx, int64_t ny, uint32_t d);

struct ModelReport {
    bool commuting = false;
    bool frustration_free = false;
    bool projectors_exact = false;
    /// Filled when a dense check ran.
    std::optional<bool> lto_small_instance;
    std::string lto_detail;
    std::string str() const;
};

/// Exact commutation / frustration checks, plus the dense LTO check when the instance is small
/// enough and run_dense is set.
ModelReport check_model(const StabilizerModel &m, bool run_dense = true, size_t dense_cap = size_t(1) << 20);

}  // namespace stilde

#endif

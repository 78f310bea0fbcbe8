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

#ifndef STILDE_WITNESS_H
#define STILDE_WITNESS_H

#include <string>
#include <vector>

#include "stilde/oracle.h"

namespace stilde {

enum class CertificateMethod { CommutantSufficient, DenseVerified, Refused };
const char *certificate_method_name(CertificateMethod m);

/// Evidence that an operator is (r, t)-locally invisible. A refusal only means that neither
/// check applied; it is not a proof of visibility.
struct InvisibilityCertificate {
    WeylSum op;
    double r = 0;
    double t = 0;
    CertificateMethod method = CertificateMethod::Refused;
    std::string details;

    bool certified() const {
        return method != CertificateMethod::Refused;
    }
};

struct WitnessOptions {
    /// Fall back to the dense check when the commutant check fails.
    bool allow_dense = true;
    /// Run the dense check even when the commutant check passes.
    bool force_dense = false;
    size_t cap = kDefaultDenseCap;
    int samples = 3;
    uint64_t seed = 11;
    double tolerance = 1e-10;
};

/// Commutant path: op commutes with every term meeting its support. Dense path: the oracle's
/// check over all disk pairs of radii r and r + t.
InvisibilityCertificate certify_invisible(const StabilizerState &state, const WeylSum &op, double r, double t, const WitnessOptions &options = {});

struct NullPiece {
    WeylSum op;
    Region disk;
};

struct LocallyNullReport {
    bool null = false;
    std::vector<NullPiece> pieces;
    std::string detail;
};

/// Projector onto the support of rho_D of a stabilizer state: the stabilizers supported on D.
StabilizerGroup disk_stabilizers(const StabilizerState &state, const Region &disk);
/// Pi_D x == 0 and x Pi_D == 0, decided exactly from the cosets of the disk stabilizers.
bool annihilated_by_disk(const StabilizerGroup &disk_group, const WeylSum &x);

/// Tries to write op = sum O_i with Pi_{D_i} O_i = O_i Pi_{D_i} = 0 for disks D_i of radius at
/// most s meeting the annulus. First rewrite: O = sum_i O h_1 ... h_{i-1} (1 - h_i) for terms
/// with O h_1 ... h_m = 0. Second rewrite: pieces pairing Weyl terms that differ by a stabilizer.
/// Every piece is checked with annihilated_by_disk. False means "not certified".
LocallyNullReport is_locally_null(const StabilizerState &state, const WeylSum &op, const Region &annulus, double s);

/// phi = prod_j phi_j with phi_j(O) = (1/n) sum_k g_j^k O g_j^-k.
WeylSum symmetrize(const StabilizerModel &model, const WeylSum &op);
/// [op, h_j] == 0 for every term.
bool commutes_with_terms(const StabilizerModel &model, const WeylSum &op);

struct WitnessReport {
    std::string scenario;
    Cyclo pairing;
    Cyclo expectation_p;
    Cyclo expectation_q;
    Cyclo product;
    bool violated = false;
    /// Lower bound r / 10 on the range of any circuit preparing the state from a product state
    /// (set when violated).
    double depth_bound = 0;
    bool geometry_ok = false;
    std::string geometry;
    InvisibilityCertificate certificate_p;
    InvisibilityCertificate certificate_q;
    std::string str() const;
};

/// Pairing versus product of expectations. Throws ValidationError when a certificate is refused
/// or (on lattices) when the diamonds are closer than 2 (r + t).
WitnessReport evaluate_witness(const StabilizerState &state, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair, double r, double t, const WitnessOptions &options = {});

struct WitnessScenario {
    std::string name;
    std::string description;
    StatePtr state;
    WeylSum p;
    WeylSum q;
    /// Regions on model sites.
    AnnulusPair pair;
    double r = 0;
    double t = 0;
};

WitnessScenario ghz_scenario(size_t n);
/// Ten qubits on a sphere: a Bell pair at the poles N, S and unentangled qubits on both loops.
WitnessScenario bell_poles_scenario();
/// Contractible X and Z loops (products of vertex and plaquette terms) on the Z_d torus.
WitnessScenario toric_scenario(int64_t L = 12, uint32_t d = 2);
/// Two crossing loops on a planar patch of 3 x 4 vertices (17 qudits).
WitnessScenario planar_patch_scenario(uint32_t d = 2);
/// Product state dressed by seeded single-site Cliffords; P, Q random commutant combinations.
WitnessScenario product_state_scenario(uint64_t seed);

std::vector<std::string> builtin_names();
WitnessScenario builtin_scenario(const std::string &name, uint64_t seed = 1);
std::vector<WitnessScenario> builtin_examples();
WitnessReport run_scenario(const WitnessScenario &s, const WitnessOptions &options = {});

}  // namespace stilde

#endif

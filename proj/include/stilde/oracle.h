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

#ifndef STILDE_ORACLE_H
#define STILDE_ORACLE_H

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stilde/circuit.h"

namespace stilde {

/// Dense reference implementation. Amplitudes are indexed in mixed radix with site 0 least
/// significant. Weyl operators act as permutation + phase maps, so only states are stored.

constexpr size_t kDefaultDenseCap = size_t(1) << 20;

/// prod_i d_i, saturating at SIZE_MAX.
size_t dense_dimension(const SiteSystem &sys);

class DenseState {
   public:
    DenseState() = default;
    /// The all-zero vector. Throws CapExceeded above the cap.
    DenseState(SiteSystemPtr sys, size_t cap = kDefaultDenseCap);
    static DenseState basis_state(SiteSystemPtr sys, const std::vector<uint32_t> &digits, size_t cap = kDefaultDenseCap);
    static DenseState random(SiteSystemPtr sys, std::mt19937_64 &rng, size_t cap = kDefaultDenseCap);

    const SiteSystemPtr &system() const {
        return sys_;
    }
    size_t dimension() const {
        return amp_.size();
    }
    size_t stride(size_t site) const {
        return strides_[site];
    }
    std::vector<std::complex<double>> &amplitudes() {
        return amp_;
    }
    const std::vector<std::complex<double>> &amplitudes() const {
        return amp_;
    }
    double norm() const;
    /// Returns the norm before normalizing.
    double normalize();
    DenseState &operator+=(const DenseState &o);
    DenseState &operator*=(std::complex<double> c);

   private:
    SiteSystemPtr sys_;
    std::vector<size_t> strides_;
    std::vector<std::complex<double>> amp_;
};

std::complex<double> inner(const DenseState &a, const DenseState &b);
DenseState apply(const WeylOp &op, const DenseState &v);
DenseState apply(const WeylSum &op, const DenseState &v);
/// Applies (1/n) sum_k g^k for a generator of order n.
DenseState apply_projector(const WeylOp &g, const DenseState &v);

std::complex<double> dense_expectation(const DenseState &psi, const WeylOp &op);
std::complex<double> dense_expectation(const DenseState &psi, const WeylSum &op);

/// Joint +1 eigenvector of the term projectors and logicals, from a seeded random vector.
/// Throws PropertyViolation when the common eigenspace is empty.
DenseState dense_ground_state(const StabilizerModel &model, size_t cap = kDefaultDenseCap, uint64_t seed = 1);

/// sum c_p c_q <psi| (p_M q_M)(q_M' p_M') |psi>, applying the four factors in turn.
std::complex<double> dense_twist_pairing(const DenseState &psi, const WeylSum &p, const WeylSum &q, const AnnulusPair &pair);

/// Largest region dimension for reduced density matrices (a 4096 x 4096 complex matrix is 256 MiB).
constexpr size_t kMaxReducedDimension = 4096;
/// Throws CapExceeded above kMaxReducedDimension.
Eigen::MatrixXcd reduced_density_matrix(const DenseState &psi, const Region &region);
/// Trace distance between rho_region(a) and scale * rho_region(b), computed on the smaller side of
/// the cut. Values at most `enough` may be the upper bound sqrt(n) |Delta|_F / 2 instead.
/// Throws CapExceeded when both sides exceed kMaxReducedDimension.
double reduced_state_distance(const DenseState &a, const DenseState &b, const Region &region, double scale = 1, double enough = 0);

/// Applies a unitary on the listed sites (first site least significant in the local index).
void apply_unitary(const Eigen::MatrixXcd &u, const std::vector<uint32_t> &sites, DenseState &v);
/// Matrix of a library gate on its sites. Throws ScopeError for custom gates.
Eigen::MatrixXcd gate_matrix(const CliffordGate &g, const SiteSystem &sys);
void apply_circuit(const Circuit &w, DenseState &v);
/// Haar-random unitary (QR of a complex Gaussian matrix with the phases fixed).
Eigen::MatrixXcd haar_unitary(size_t n, std::mt19937_64 &rng);

/// Disk A and its enlargement B.
struct DiskPair {
    Region a;
    Region b;
};
/// Disks of the given radius (lattice units) around every vertex, edge midpoint and plaquette
/// center of the torus, or around every integer and half-integer point of a chain model.
/// Returns no disks when they would wrap around the system, and drops disks whose removal splits
/// a connected piece of the system (such as a disk reaching across an open patch).
std::vector<Region> dense_disks(const StabilizerModel &model, double radius);
std::vector<DiskPair> disk_pairs(const StabilizerModel &model, double r, double t);

struct DenseInvisibilityReport {
    bool pass = false;
    double worst_deviation = 0;
    size_t disks_checked = 0;
    size_t samples = 0;
    uint64_t seed = 0;
    std::string detail;
};

/// For every (A, B) and every sampled unitary U on the complement of B (the identity first):
/// phi = U psi, compares rho_A(op phi) with <phi|op^dagger op|phi> rho_A(psi) in trace distance.
/// Purifications of rho_B(psi) are realized as (I_B (x) U) psi; U is a brickwork of Haar
/// two-site gates over the complement of B.
DenseInvisibilityReport dense_invisibility_check(
    const DenseState &psi, const WeylSum &op, const std::vector<DiskPair> &disks, int samples, uint64_t seed, double tolerance = 1e-10);

struct DenseLtoReport {
    bool pass = false;
    double worst_deviation = 0;
    size_t disks_checked = 0;
    std::optional<Region> violating_disk;
    std::string detail;
};

/// For every disk D: random vectors in the image of the product of the terms meeting D must have
/// the same rho_D as the ground state. A generic vector of the image detects any violation.
/// On a torus the radius is capped at (L - 2) / 2 so that every disk is contractible.
DenseLtoReport dense_lto_check(const StabilizerModel &model, size_t cap = kDefaultDenseCap, double radius = 1, uint64_t seed = 7, double tolerance = 1e-10);

}  // namespace stilde

#endif

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

#include "stilde/oracle.h"

#include <random>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"
#include "stilde/witness.h"
#include "test_util.h"

using namespace stilde;

namespace {

Eigen::VectorXcd to_vector(const DenseState &v) {
    Eigen::VectorXcd out(v.dimension());
    for (size_t k = 0; k < v.dimension(); k++) {
        out[k] = v.amplitudes()[k];
    }
    return out;
}

}  // namespace

TEST(oracle, apply_matches_matrices) {
    std::mt19937_64 rng(1);
    auto sys = SiteSystem::make({2, 3, 4});
    for (int trial = 0; trial < 20; trial++) {
        DenseState v = DenseState::random(sys, rng);
        WeylOp op = test::random_weyl(sys, rng);
        Eigen::VectorXcd expect = test::weyl_matrix(op) * to_vector(v);
        EXPECT_LT((to_vector(apply(op, v)) - expect).norm(), 1e-10) << op.str();
        WeylSum s(op, Cyclo::root_of_unity(1, 3));
        s.add(Cyclo(Rational(1, 2)), test::random_weyl(sys, rng));
        Eigen::VectorXcd expect_sum = test::weyl_matrix(s) * to_vector(v);
        EXPECT_LT((to_vector(apply(s, v)) - expect_sum).norm(), 1e-10);
    }
}

TEST(oracle, basis_states_and_strides) {
    auto sys = SiteSystem::make({2, 3, 5});
    DenseState v = DenseState::basis_state(sys, {1, 2, 3});
    EXPECT_EQ(v.dimension(), 30u);
    EXPECT_EQ(v.stride(0), 1u);
    EXPECT_EQ(v.stride(1), 2u);
    EXPECT_EQ(v.stride(2), 6u);
    EXPECT_EQ(v.amplitudes()[1 + 2 * 2 + 3 * 6], std::complex<double>(1));
    EXPECT_NEAR(v.norm(), 1, 1e-12);
    EXPECT_EQ(dense_dimension(*SiteSystem::uniform(70, 2)), SIZE_MAX);
}

TEST(oracle, cap_is_enforced) {
    auto sys = SiteSystem::uniform(21, 2);
    EXPECT_THROW(DenseState(sys, kDefaultDenseCap), CapExceeded);
    EXPECT_NO_THROW(DenseState(SiteSystem::uniform(20, 2), kDefaultDenseCap));
    auto m = build_toric_code(std::make_shared<const TorusLattice>(3), 2);
    EXPECT_THROW(dense_ground_state(*m, 1000), CapExceeded);
}

TEST(oracle, ground_state_matches_symbolic_expectations) {
    std::mt19937_64 rng(2);
    auto m = build_toric_code(std::make_shared<const TorusLattice>(3), 2, {1, 0});
    StabilizerState st(m);
    DenseState psi = dense_ground_state(*m);
    EXPECT_NEAR(psi.norm(), 1, 1e-10);
    for (const auto &g : m->stabilizer_generators()) {
        EXPECT_NEAR(std::abs(dense_expectation(psi, g) - expectation(st, g).to_complex()), 0, 1e-10);
    }
    for (int trial = 0; trial < 40; trial++) {
        WeylOp op = test::random_weyl(m->system, rng);
        if (trial % 2) {
            op = m->terms[rng() % m->terms.size()].generator * m->logicals[rng() % m->logicals.size()];
        }
        EXPECT_NEAR(std::abs(dense_expectation(psi, op) - expectation(st, op).to_complex()), 0, 1e-10) << op.str();
    }
}

TEST(oracle, frustrated_model_has_no_ground_state) {
    auto sys = SiteSystem::uniform(2, 2);
    auto m = std::make_shared<StabilizerModel>();
    m->system = sys;
    m->terms = {ProjectorTerm::from_generator(WeylOp::z(sys, 0)), ProjectorTerm::from_generator(WeylOp::z(sys, 0).with_phase(Phase(1, 2)))};
    EXPECT_THROW(dense_ground_state(*m), PropertyViolation);
}

TEST(oracle, twist_pairings_match_on_witness_instances) {
    std::mt19937_64 rng(3);
    for (const auto &s : builtin_examples()) {
        if (dense_dimension(*s.state->model()->system) > kDefaultDenseCap) {
            continue;
        }
        DenseState psi = dense_ground_state(*s.state->model());
        auto sym = twist_pairing(*s.state, s.p, s.q, s.pair).to_complex();
        auto den = dense_twist_pairing(psi, s.p, s.q, s.pair);
        EXPECT_NEAR(std::abs(sym - den), 0, 1e-10) << s.name;
        for (int trial = 0; trial < 5; trial++) {
            WeylOp p = test::random_weyl_on(s.state->model()->system, s.pair.left, rng);
            WeylOp q = test::random_weyl_on(s.state->model()->system, s.pair.right, rng);
            auto a = twist_pairing(*s.state, p, q, s.pair).to_complex();
            auto b = dense_twist_pairing(psi, WeylSum(p), WeylSum(q), s.pair);
            EXPECT_NEAR(std::abs(a - b), 0, 1e-10) << s.name;
        }
    }
}

TEST(oracle, circuits_match_conjugation) {
    std::mt19937_64 rng(4);
    auto m = build_ghz(8);
    DenseState psi = dense_ground_state(*m);
    Circuit w = random_circuit(*m, 3, 12, 0.7);
    DenseState phi = psi;
    apply_circuit(w, phi);
    for (int trial = 0; trial < 20; trial++) {
        WeylOp op = test::random_weyl(m->system, rng);
        if (trial % 2) {
            op = m->terms[rng() % m->terms.size()].generator * m->logicals[0];
        }
        // <W psi| W P W^dagger |W psi> = <psi|P|psi>.
        EXPECT_NEAR(std::abs(dense_expectation(phi, conjugate_op(w, op)) - dense_expectation(psi, op)), 0, 1e-10);
    }
    // The library gate matrices agree with the symplectic images.
    for (const auto &layer : w.layers) {
        for (const auto &g : layer) {
            for (int trial = 0; trial < 3; trial++) {
                DenseState v = DenseState::random(m->system, rng);
                WeylOp p = test::random_weyl(m->system, rng);
                DenseState lhs = apply(p, v);
                apply_unitary(gate_matrix(g, *m->system), g.sites, lhs);
                DenseState rhs = v;
                apply_unitary(gate_matrix(g, *m->system), g.sites, rhs);
                rhs = apply(g.conjugate(p), rhs);
                EXPECT_LT((to_vector(lhs) - to_vector(rhs)).norm(), 1e-10) << g.str();
            }
        }
    }
}

TEST(oracle, haar_unitaries_are_unitary) {
    std::mt19937_64 rng(5);
    for (size_t n : {2u, 4u, 9u}) {
        Eigen::MatrixXcd u = haar_unitary(n, rng);
        EXPECT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-10);
    }
}

TEST(oracle, reduced_density_matrices) {
    std::mt19937_64 rng(6);
    auto m = build_ghz(6);
    DenseState psi = dense_ground_state(*m);
    Eigen::MatrixXcd rho = reduced_density_matrix(psi, Region(6, {1, 4}));
    ASSERT_EQ(rho.rows(), 4);
    // GHZ marginals are (|00><00| + |11><11|) / 2.
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    EXPECT_LT((rho - expect).norm(), 1e-10);
    DenseState v = DenseState::random(SiteSystem::make({2, 3, 2}), rng);
    Eigen::MatrixXcd r = reduced_density_matrix(v, Region(3, {1}));
    EXPECT_NEAR(r.trace().real(), 1, 1e-10);
    EXPECT_LT((r - r.adjoint()).norm(), 1e-12);
}

TEST(oracle, reduced_state_distance_on_either_side) {
    std::mt19937_64 rng(13);
    auto sys = SiteSystem::make({2, 3, 2, 2, 3});
    for (const Region &r : {Region(5, {1}), Region(5, {0, 1, 2, 3}), Region(5, {0, 2, 4})}) {
        DenseState a = DenseState::random(sys, rng), b = DenseState::random(sys, rng);
        Eigen::MatrixXcd diff = reduced_density_matrix(a, r) - 0.7 * reduced_density_matrix(b, r);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
        double expect = 0.5 * es.eigenvalues().cwiseAbs().sum();
        EXPECT_NEAR(reduced_state_distance(a, b, r, 0.7), expect, 1e-10);
        EXPECT_NEAR(reduced_state_distance(a, a, r), 0, 1e-10);
    }
}

TEST(oracle, invisibility_check) {
    auto m = build_ghz(6);
    DenseState psi = dense_ground_state(*m);
    auto disks = disk_pairs(*m, 1, 0.5);
    ASSERT_FALSE(disks.empty());
    WeylSum zz(WeylOp::z(m->system, 2) * WeylOp::z(m->system, 3));
    EXPECT_TRUE(dense_invisibility_check(psi, zz, disks, 2, 1).pass);
    // X on one site flips the parity seen by a disk around it.
    WeylSum x(WeylOp::x(m->system, 2));
    auto rep = dense_invisibility_check(psi, x, disks, 2, 1);
    EXPECT_FALSE(rep.pass);
    EXPECT_GT(rep.worst_deviation, 0.1);
}

TEST(oracle, disks_do_not_wrap) {
    auto toric = build_toric_code(std::make_shared<const TorusLattice>(3), 2);
    EXPECT_TRUE(dense_disks(*toric, 1).empty());
    auto small = dense_disks(*toric, 0.5);
    ASSERT_FALSE(small.empty());
    for (const auto &d : small) {
        EXPECT_LE(d.size(), 4u);
    }
}

TEST(oracle, local_topological_order) {
    auto toric = build_toric_code(std::make_shared<const TorusLattice>(3), 2);
    auto lto = dense_lto_check(*toric);
    EXPECT_TRUE(lto.pass) << lto.detail;
    EXPECT_GT(lto.disks_checked, 0u);
    EXPECT_TRUE(dense_lto_check(*build_planar_patch(3, 3, 3)).pass);
    // Disks reaching across the patch are skipped; the rest still see the same reduced state.
    auto patch = build_planar_patch(3, 4, 2);
    auto disks = dense_disks(*patch, 1);
    EXPECT_LT(disks.size(), dense_disks(*build_toric_code(std::make_shared<const TorusLattice>(6), 2), 1).size());
    auto patch_lto = dense_lto_check(*patch);
    EXPECT_TRUE(patch_lto.pass) << patch_lto.detail;
    EXPECT_GT(patch_lto.disks_checked, 0u);
    auto ising = dense_lto_check(*build_ising_with_field(8, 0));
    EXPECT_FALSE(ising.pass) << ising.detail;
    EXPECT_TRUE(ising.violating_disk.has_value());
}

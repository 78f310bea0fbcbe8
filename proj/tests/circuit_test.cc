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

#include "stilde/circuit.h"

#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace stilde;
using test::weyl_matrix;

namespace {

using Cd = std::complex<double>;

/// Dense unitary of a gate given by its action on basis states: |k> -> amp(k) |image(k)>.
Eigen::MatrixXcd basis_map(const std::vector<uint32_t> &dims, const std::function<std::pair<size_t, Cd>(const std::vector<uint32_t> &)> &f) {
    size_t dim = 1;
    for (uint32_t d : dims) {
        dim *= d;
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<uint32_t> digits(dims.size());
    for (size_t k = 0; k < dim; k++) {
        size_t x = k;
        for (size_t s = 0; s < dims.size(); s++) {
            digits[s] = (uint32_t)(x % dims[s]);
            x /= dims[s];
        }
        auto [img, amp] = f(digits);
        u(img, k) = amp;
    }
    return u;
}

size_t index_of(const std::vector<uint32_t> &dims, const std::vector<uint32_t> &digits) {
    size_t idx = 0, stride = 1;
    for (size_t s = 0; s < dims.size(); s++) {
        idx += digits[s] * stride;
        stride *= dims[s];
    }
    return idx;
}

/// Discrete Fourier transform on one site, identity elsewhere.
Eigen::MatrixXcd fourier_matrix(const std::vector<uint32_t> &dims, uint32_t site) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t s = 0; s < dims.size(); s++) {
        uint32_t d = dims[s];
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(d, d);
        if (s == site) {
            for (uint32_t j = 0; j < d; j++) {
                for (uint32_t k = 0; k < d; k++) {
                    local(j, k) = std::polar(1.0 / std::sqrt((double)d), 2 * std::numbers::pi * j * k / d);
                }
            }
        }
        m = test::kron(local, m);
    }
    return m;
}

Eigen::MatrixXcd gate_matrix(const CliffordGate &g, const std::vector<uint32_t> &dims) {
    uint32_t s0 = g.sites[0];
    uint32_t d = dims[s0];
    switch (g.kind) {
        case GateKind::Fourier:
            return fourier_matrix(dims, s0);
        case GateKind::Phase:
            return basis_map(dims, [&](const std::vector<uint32_t> &k) {
                double e = d % 2 ? (double)k[s0] * ((double)k[s0] - 1) / (2.0 * d) : (double)k[s0] * k[s0] / (2.0 * d);
                return std::make_pair(index_of(dims, k), std::polar(1.0, 2 * std::numbers::pi * e));
            });
        case GateKind::Multiply:
            return basis_map(dims, [&](std::vector<uint32_t> k) {
                k[s0] = (uint32_t)((k[s0] * g.param) % d);
                return std::make_pair(index_of(dims, k), Cd(1));
            });
        case GateKind::Sum:
            return basis_map(dims, [&](std::vector<uint32_t> k) {
                k[g.sites[1]] = (k[g.sites[1]] + k[s0]) % d;
                return std::make_pair(index_of(dims, k), Cd(1));
            });
        case GateKind::Swap:
            return basis_map(dims, [&](std::vector<uint32_t> k) {
                std::swap(k[g.sites[0]], k[g.sites[1]]);
                return std::make_pair(index_of(dims, k), Cd(1));
            });
        default:
            throw std::runtime_error("no matrix for custom gates");
    }
}

double dist(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(circuit, library_gates_match_unitaries) {
    std::mt19937_64 rng(1);
    for (uint32_t d : {2u, 3u, 4u, 5u}) {
        std::vector<uint32_t> dims{d, d, 2};
        auto sys = SiteSystem::make(dims);
        std::vector<CliffordGate> gates{CliffordGate::fourier(sys, 0), CliffordGate::phase(sys, 1), CliffordGate::sum(sys, 0, 1),
                                        CliffordGate::sum(sys, 1, 0), CliffordGate::swap(sys, 0, 1), CliffordGate::phase(sys, 2)};
        if (d > 2) {
            gates.push_back(CliffordGate::multiply(sys, 1, d - 1));
        }
        for (const auto &g : gates) {
            Eigen::MatrixXcd u = gate_matrix(g, dims);
            EXPECT_LT(dist(u * u.adjoint(), Eigen::MatrixXcd::Identity(u.rows(), u.cols())), 1e-9);
            for (int trial = 0; trial < 10; trial++) {
                WeylOp p = test::random_weyl(sys, rng);
                EXPECT_LT(dist(weyl_matrix(g.conjugate(p)), u * weyl_matrix(p) * u.adjoint()), 1e-9) << g.str() << " on " << p.str();
            }
        }
    }
}

TEST(circuit, custom_gate_validation) {
    auto sys = SiteSystem::uniform(2, 3);
    // A valid custom gate: the Fourier transform written out by hand.
    EXPECT_NO_THROW(CliffordGate::custom(sys, {0}, {WeylOp::z(sys, 0)}, {WeylOp::x(sys, 0, 2)}));
    // X -> Z, Z -> Z breaks the commutation relation.
    EXPECT_THROW(CliffordGate::custom(sys, {0}, {WeylOp::z(sys, 0)}, {WeylOp::z(sys, 0)}), ValidationError);
    // Images must stay on the gate sites.
    EXPECT_THROW(CliffordGate::custom(sys, {0}, {WeylOp::z(sys, 1)}, {WeylOp::x(sys, 1, 2)}), ValidationError);
    EXPECT_THROW(CliffordGate::multiply(SiteSystem::uniform(1, 4), 0, 2), ValidationError);
    EXPECT_THROW(CliffordGate::sum(SiteSystem::make({2, 3}), 0, 1), ValidationError);
    EXPECT_THROW(gate_kind_from_name("toffoli"), ScopeError);
    EXPECT_EQ(gate_kind_from_name("sum"), GateKind::Sum);
}

TEST(circuit, overlapping_layer_is_rejected) {
    auto sys = SiteSystem::uniform(3, 2);
    Circuit c;
    c.system = sys;
    c.layers = {{CliffordGate::sum(sys, 0, 1), CliffordGate::fourier(sys, 1)}};
    EXPECT_THROW(c.validate(), ValidationError);
    c.layers = {{CliffordGate::sum(sys, 0, 1), CliffordGate::fourier(sys, 2)}};
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.gate_count(), 2u);
}

TEST(circuit, random_circuit_is_nearest_neighbor) {
    auto m = build_toric_code(std::make_shared<const TorusLattice>(6), 3);
    Circuit c = random_circuit(*m, 2, 7);
    EXPECT_EQ(c.depth(), 2);
    EXPECT_EQ(c.range(), 2);
    EXPECT_NO_THROW(c.validate());
    for (const auto &layer : c.layers) {
        for (const auto &g : layer) {
            if (g.sites.size() == 2) {
                EXPECT_LE(m->lattice->site_distance2(g.sites[0], g.sites[1]), 2);
            }
        }
    }
    // Seeds make circuits reproducible.
    Circuit again = random_circuit(*m, 2, 7);
    ASSERT_EQ(again.gate_count(), c.gate_count());
    WeylOp probe = WeylOp::x(m->system, 5) * WeylOp::z(m->system, 17);
    EXPECT_EQ(conjugate_op(c, probe), conjugate_op(again, probe));
}

TEST(circuit, evolution_preserves_expectations) {
    std::mt19937_64 rng(9);
    auto m = build_toric_code(std::make_shared<const TorusLattice>(5), 3);
    for (int64_t depth : {1, 2}) {
        Circuit c = random_circuit(*m, depth, 100 + depth);
        ModelPtr evolved = evolve_model(c, *m);
        auto rep = check_model(*evolved, false);
        EXPECT_TRUE(rep.commuting);
        EXPECT_TRUE(rep.frustration_free);
        EXPECT_LE(evolved->interaction_range, m->interaction_range + 2 * c.range());
        StabilizerState before(m), after(evolved);
        EXPECT_TRUE(after.complete());
        for (int trial = 0; trial < 30; trial++) {
            WeylOp op = test::random_weyl(m->system, rng);
            // Mix in stabilizers so that some expectations are nonzero.
            if (trial % 2 == 0) {
                op = m->terms[rng() % m->terms.size()].generator * m->terms[rng() % m->terms.size()].generator;
            }
            EXPECT_EQ(expectation(after, conjugate_op(c, op)), expectation(before, op));
        }
    }
}

TEST(circuit, conjugation_is_linear_and_multiplicative) {
    std::mt19937_64 rng(10);
    auto m = build_toric_code(std::make_shared<const TorusLattice>(4), 2);
    Circuit c = random_circuit(*m, 2, 3);
    for (int trial = 0; trial < 20; trial++) {
        WeylOp a = test::random_weyl(m->system, rng), b = test::random_weyl(m->system, rng);
        EXPECT_EQ(conjugate_op(c, a * b), conjugate_op(c, a) * conjugate_op(c, b));
        WeylSum s(a, Cyclo::root_of_unity(1, 4));
        s.add(Cyclo(3), b);
        WeylSum expect(conjugate_op(c, a), Cyclo::root_of_unity(1, 4));
        expect.add(Cyclo(3), conjugate_op(c, b));
        EXPECT_EQ(conjugate_op(c, s), expect);
    }
}

TEST(circuit, invariance_on_small_torus) {
    // L = 18 is the smallest torus that holds a depth-1 experiment: the evolved null region
    // (thickness t + 3R + w) must leave a hole inside the annulus.
    auto lat = std::make_shared<const TorusLattice>(18);
    for (uint32_t d : {2u, 3u}) {
        auto m = build_toric_code(lat, d);
        auto pair = make_annulus_pair(lat, 5.5, 0.5, 3.5);
        Circuit c = random_circuit(*m, 1, 40 + d);
        InvarianceReport rep = invariance_experiment(*m, pair, c, 20, 50 + d);
        EXPECT_TRUE(rep.equivalent) << rep.str();
        EXPECT_EQ(rep.lemma_samples, 20);
        EXPECT_EQ(rep.lemma_failures, 0) << rep.str();
        EXPECT_EQ(rep.before.rows(), (size_t)(d * d));
        EXPECT_FALSE(rep.certified) << "R = 1 is not below t = 0.5";
    }
    // A depth-2 circuit needs a pair that still fits after thickening by 2.
    auto m = build_toric_code(lat, 2);
    auto pair = make_annulus_pair(lat, 5.5, 0.5, 3.5);
    EXPECT_THROW(invariance_experiment(*m, pair, random_circuit(*m, 2, 1), 5, 1), ValidationError);
}

TEST(circuit, depth_two_geometry_needs_a_larger_torus) {
    // Conditions for a depth-R experiment with w = 1: the pair fits, the pair thickened by R
    // fits, and the evolved null region of thickness t + R + (w + 2R) leaves a hole of at least
    // one lattice unit inside the annulus.
    auto feasible = [](int64_t L, int64_t R) {
        auto lat = std::make_shared<const TorusLattice>(L);
        std::vector<std::array<int64_t, 3>> out;
        for (int64_t r2 = 2; r2 < L; r2++) {
            for (int64_t t2 = 1; r2 + t2 < L - 1; t2++) {
                if (r2 - (t2 + 2 * R + 2 * (1 + 2 * R)) < 2) {
                    continue;
                }
                for (int64_t s2 = 1; s2 < L; s2++) {
                    try {
                        make_annulus_pair(lat, r2 / 2.0, t2 / 2.0, s2 / 2.0).thickened(2 * R);
                        out.push_back({r2, t2, s2});
                    } catch (const ValidationError &) {
                    }
                }
            }
        }
        return out;
    };
    EXPECT_TRUE(feasible(24, 2).empty());
    auto at28 = feasible(28, 2);
    ASSERT_EQ(at28.size(), 1u);
    EXPECT_EQ(at28[0], (std::array<int64_t, 3>{17, 1, 11}));
    EXPECT_FALSE(feasible(24, 1).empty());
}

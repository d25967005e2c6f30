// Copyright 2026 The locc Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "locc/schmidt.hpp"
#include "locc/state.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace locc {
namespace {

using testing::brute_reduced;
using testing::kind_of;

const Register kAbc = Register::linear("ABC");

TEST(Register, LinearAssignsPartiesAndLabels) {
    const auto reg = Register::linear("ABC", 4);
    EXPECT_EQ(reg.labels(), (std::vector<SiteLabel>{4, 5, 6}));
    EXPECT_EQ(reg.party_of(5), "B");
    EXPECT_EQ(reg.dimension(), 8u);
}

TEST(Register, RejectsDuplicateLabels) {
    EXPECT_EQ(kind_of([] { Register r({{1, "A"}, {1, "B"}}); }), ErrorKind::LabelCollision);
}

TEST(PureState, RejectsUnnormalizedAmplitudes) {
    Vector v = Vector::Zero(8);
    v[0] = 1.1;
    EXPECT_EQ(kind_of([&] { PureState s(kAbc, v); }), ErrorKind::ConstraintViolation);
}

TEST(PureState, RejectsWrongLength) {
    EXPECT_EQ(kind_of([] { PureState s(kAbc, Vector::Ones(4) / 2.0); }), ErrorKind::ConstraintViolation);
}

TEST(PureState, NormalizingZeroIsDegenerate) {
    EXPECT_EQ(kind_of([] { PureState::normalized(kAbc, Vector::Zero(8)); }), ErrorKind::DegenerateState);
}

TEST(WFamily, AmplitudesFollowSiteOrder) {
    const auto s = w_family(0.4, 0.3, 0.2, 0.1, kAbc);
    EXPECT_DOUBLE_EQ(s.amplitude(0b100).real(), std::sqrt(0.4));
    EXPECT_DOUBLE_EQ(s.amplitude(0b010).real(), std::sqrt(0.3));
    EXPECT_DOUBLE_EQ(s.amplitude(0b001).real(), std::sqrt(0.2));
    EXPECT_DOUBLE_EQ(s.amplitude(0b000).real(), std::sqrt(0.1));
}

TEST(WFamily, ConstraintViolations) {
    EXPECT_EQ(kind_of([] { w_family(0.4, 0.4, 0.3, 0, kAbc); }), ErrorKind::ConstraintViolation);
    EXPECT_EQ(kind_of([] { w_family(0.5, 0.5, 0, 0, kAbc); }), ErrorKind::ConstraintViolation);
    EXPECT_EQ(kind_of([] { w_family(1.0 / 3, 1.0 / 3, 1.0 / 3, 0, Register::linear("AB")); }), ErrorKind::WrongArity);
}

TEST(Ghz, Amplitudes) {
    const auto s = ghz(kAbc);
    for (std::size_t i = 0; i < 8; ++i) {
        const double expect = (i == 0 || i == 7) ? 1 / std::numbers::sqrt2 : 0.0;
        EXPECT_NEAR(std::abs(s.amplitude(i) - expect), 0.0, 1e-15) << i;
    }
    EXPECT_NEAR(overlap(s, s), 1.0, 1e-15);
}

TEST(Epr, Amplitudes) {
    const auto s = epr(Register::linear("AB"));
    EXPECT_NEAR(s.amplitude(0).real(), 1 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(s.amplitude(3).real(), 1 / std::numbers::sqrt2, 1e-15);
    EXPECT_EQ(s.amplitude(1), cplx(0));
    EXPECT_EQ(kind_of([] { epr(kAbc); }), ErrorKind::WrongArity);
}

TEST(GhzClass, RightAnglesGiveGhz) {
    const double h = std::numbers::pi / 2;
    const auto s = ghz_class({std::numbers::pi / 4, 0, h, h, h}, kAbc);
    EXPECT_NEAR(overlap(s, ghz(kAbc)), 1.0, 1e-12);
}

TEST(GhzClass, ZeroDeltaIsProductWithUnitK) {
    const auto s = ghz_class({0, 0.3, 0.2, 0.1, 0.5}, kAbc);
    EXPECT_DOUBLE_EQ(ghz_class_squared_norm({0, 0.3, 0.2, 0.1, 0.5}), 1.0);
    EXPECT_NEAR(std::abs(s.amplitude(0)), 1.0, 1e-15);
}

// K from the Gram formula against the norm of the explicitly summed vector.
TEST(GhzClass, NormalizationMatchesExplicitNorm) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        GhzClassAngles t{ang(rng), ang(rng), ang(rng), ang(rng), ang(rng)};
        Vector raw = Vector::Zero(8);
        raw[0] = std::cos(t.delta);
        for (int i = 0; i < 8; ++i) {
            const double a = (i & 4) ? std::sin(t.alpha) : std::cos(t.alpha);
            const double b = (i & 2) ? std::sin(t.beta) : std::cos(t.beta);
            const double c = (i & 1) ? std::sin(t.gamma) : std::cos(t.gamma);
            raw[i] += std::sin(t.delta) * std::polar(1.0, t.phi) * a * b * c;
        }
        EXPECT_NEAR(ghz_class_squared_norm(t), raw.squaredNorm(), 1e-12);
        const auto s = ghz_class(t, kAbc);
        EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-9);
        EXPECT_NEAR(std::abs(s.amplitudes().dot(raw)) / raw.norm(), 1.0, 1e-12);
    }
    const double q = std::numbers::pi / 4;
    EXPECT_NEAR(ghz_class({q, 0, q, q, q}, kAbc).amplitudes().norm(), 1.0, 1e-9);
}

TEST(GhzClass, DestructiveInterferenceIsDegenerate) {
    // cos(d)|000> - cos(d)|000> with alpha = beta = gamma = 0.
    EXPECT_EQ(kind_of([] { ghz_class({std::numbers::pi / 4, std::numbers::pi, 0, 0, 0}, kAbc); }),
              ErrorKind::DegenerateState);
}

TEST(Tensor, BasisStatesConcatenate) {
    const auto s = tensor(computational(Register{{1, "A"}}, "0"), computational(Register{{2, "B"}}, "1"));
    EXPECT_EQ(s.amplitude(0b01), cplx(1));
    EXPECT_EQ(s.reg().labels(), (std::vector<SiteLabel>{1, 2}));
}

TEST(Tensor, WTimesEprMatchesHandWrittenAmplitudes) {
    const auto s = tensor(w_state(kAbc), epr(Register{{4, "B"}, {5, "C"}}));
    const double v = 1 / std::sqrt(6.0);
    for (int w : {0b100, 0b010, 0b001}) {
        for (int e : {0b00, 0b11}) EXPECT_NEAR(s.amplitude(static_cast<std::size_t>((w << 2) | e)).real(), v, 1e-15);
    }
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
}

TEST(Tensor, LabelCollision) {
    EXPECT_EQ(kind_of([] { tensor(ghz(kAbc), epr(Register{{3, "A"}, {4, "B"}})); }), ErrorKind::LabelCollision);
}

TEST(Tensor, AssociativeEntrywise) {
    std::mt19937_64 rng(3);
    const auto a = PureState(Register{{1, "A"}}, testing::random_state(rng, 1));
    const auto b = PureState(Register{{2, "B"}, {3, "B"}}, testing::random_state(rng, 2));
    const auto c = PureState(Register{{4, "C"}}, testing::random_state(rng, 1));
    const auto left = tensor(tensor(a, b), c);
    const auto right = tensor(a, tensor(b, c));
    EXPECT_EQ(left.reg().labels(), right.reg().labels());
    EXPECT_LT((left.amplitudes() - right.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ReducedDensity, GhzSinglePartyIsMaximallyMixed) {
    const auto rho = reduced_density(ghz(kAbc), {"A"});
    EXPECT_LT((rho.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(numeric_rank(rho), 2);
}

TEST(ReducedDensity, ProductStateIsRankOne) {
    const auto s = computational(kAbc, "000");
    for (const auto& parties : {std::vector<Party>{"A"}, {"B", "C"}, {"A", "C"}}) {
        EXPECT_EQ(numeric_rank(reduced_density(s, parties)), 1);
    }
}

TEST(ReducedDensity, CatalysedWRanks) {
    const auto src = tensor(w_state(kAbc), epr(Register{{4, "B"}, {5, "C"}}));
    const auto dst = tensor(ghz(kAbc), epr(Register{{4, "B"}, {5, "C"}}));
    for (const auto* s : {&src, &dst}) {
        EXPECT_EQ(numeric_rank(reduced_density(*s, {"A"})), 2);
        const auto rho_b = reduced_density(*s, {"B"});
        EXPECT_EQ(rho_b.matrix().rows(), 4);
        EXPECT_EQ(numeric_rank(rho_b), 4);
        EXPECT_EQ(numeric_rank(reduced_density(*s, {"C"})), 4);
    }
}

TEST(ReducedDensity, EmptyOrFullSubsetRejected) {
    const auto s = ghz(kAbc);
    EXPECT_EQ(kind_of([&] { reduced_density(s, std::vector<Party>{}); }), ErrorKind::EmptySubset);
    EXPECT_EQ(kind_of([&] { reduced_density(s, {"A", "B", "C"}); }), ErrorKind::EmptySubset);
}

TEST(ReducedDensity, MatchesBruteForcePartialTrace) {
    std::mt19937_64 rng(11);
    const Register reg{{1, "A"}, {2, "B"}, {3, "A"}, {4, "C"}};
    for (int trial = 0; trial < 20; ++trial) {
        const PureState s(reg, testing::random_state(rng, 4));
        const auto rho = reduced_density(s, {"A"});
        EXPECT_EQ(rho.sites(), (std::vector<SiteLabel>{1, 3}));
        EXPECT_LT((rho.matrix() - brute_reduced(s.amplitudes(), 4, {0, 2})).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(ReducedDensity, MaximallyMixedQubitRankTwo) {
    const auto rho = reduced_density(epr(Register::linear("AB")), {"A"});
    EXPECT_EQ(numeric_rank(rho), 2);
    EXPECT_NEAR(rho.purity(), 0.5, 1e-15);
}

TEST(ReducedDensity, InvariantUnderUnitariesOnTracedParties) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const PureState s(kAbc, testing::random_state(rng, 3));
        const std::vector<SiteLabel> bc{2, 3};
        const Matrix u = testing::random_unitary(rng, 4);
        const PureState moved(kAbc, apply_on_sites(s, bc, u));
        const auto before = reduced_density(s, {"A"}).matrix();
        const auto after = reduced_density(moved, {"A"}).matrix();
        EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ReducedDensity, SchmidtSymmetryOfRanks) {
    std::mt19937_64 rng(9);
    const Register reg{{1, "A"}, {2, "B"}, {3, "B"}, {4, "C"}};
    for (int trial = 0; trial < 30; ++trial) {
        // Mix generic and low-rank states.
        Vector v = testing::random_state(rng, 4);
        if (trial % 3 == 0) {
            v = tensor(PureState(Register{{1, "A"}}, testing::random_state(rng, 1)),
                       PureState(Register{{2, "B"}, {3, "B"}, {4, "C"}}, testing::random_state(rng, 3)))
                    .amplitudes();
        }
        const PureState s(reg, v);
        for (const auto& p : {std::vector<Party>{"A"}, {"B"}, {"C"}}) {
            std::vector<Party> rest;
            for (const auto& q : reg.parties()) {
                if (q != p.front()) rest.push_back(q);
            }
            EXPECT_EQ(numeric_rank(reduced_density(s, p)), numeric_rank(reduced_density(s, rest)));
        }
    }
}

TEST(Schmidt, ProductStateHasOneCoefficient) {
    const auto sp = schmidt(computational(kAbc, "000"), {"A"});
    EXPECT_EQ(sp.schmidt_rank(), 1u);
    EXPECT_DOUBLE_EQ(sp.coeffs.front(), 1.0);
}

TEST(Schmidt, Prop3StateSpectra) {
    const auto phi = tensor(w_family(0.4, 0.4, 0.2, 0, kAbc), epr(Register{{4, "B"}, {5, "C"}}));
    const auto a_bc = schmidt(phi, {"A"});
    ASSERT_EQ(a_bc.coeffs.size(), 2u);
    EXPECT_NEAR(a_bc.coeffs[0], 0.6, 1e-12);
    EXPECT_NEAR(a_bc.coeffs[1], 0.4, 1e-12);
    const auto ab_c = schmidt(phi, {"A", "B"});
    ASSERT_EQ(ab_c.coeffs.size(), 4u);
    const std::vector<double> expect{0.4, 0.4, 0.1, 0.1};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ab_c.coeffs[i], expect[i], 1e-12);
}

TEST(Schmidt, PadsWithZerosToSmallerDimension) {
    const auto s = tensor(ghz(kAbc), computational(Register{{4, "C"}}, "0"));
    const auto sp = schmidt(s, {"A", "B"});
    EXPECT_EQ(sp.coeffs.size(), 4u);
    EXPECT_EQ(sp.schmidt_rank(), 2u);
    EXPECT_EQ(sp.coeffs[3], 0.0);
}

TEST(Schmidt, EmptySubset) {
    EXPECT_EQ(kind_of([] { schmidt(ghz(kAbc), std::vector<Party>{}); }), ErrorKind::EmptySubset);
}

// Coefficients sum to one, reconstruct the amplitudes, and agree with the
// eigenvalues of the brute-force reduced state.
TEST(Schmidt, RandomStatesEveryCut) {
    std::mt19937_64 rng(13);
    const Register reg{{1, "A"}, {2, "B"}, {3, "C"}, {4, "B"}};
    const std::vector<std::pair<std::vector<Party>, std::vector<int>>> cuts{
        {{"A"}, {0}}, {{"B"}, {1, 3}}, {{"C"}, {2}}, {{"A", "B"}, {0, 1, 3}}};
    for (int trial = 0; trial < 25; ++trial) {
        const PureState s(reg, testing::random_state(rng, 4));
        for (const auto& [parties, positions] : cuts) {
            const auto sp = schmidt(s, parties);
            double sum = 0;
            for (double c : sp.coeffs) sum += c;
            EXPECT_NEAR(sum, 1.0, 1e-9);
            const auto labels = sp.left_sites;
            EXPECT_LT((sp.reconstruct() - amplitude_matrix(s, labels)).cwiseAbs().maxCoeff(), 1e-9);
            const auto oracle = testing::spectrum_by_eigen(s.amplitudes(), 4, positions);
            ASSERT_EQ(oracle.size(), sp.coeffs.size());
            for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(sp.coeffs[i], oracle[i], 1e-12);
        }
    }
}

TEST(Normalization, ConstructorsProduceUnitNorm) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 1);
    for (int trial = 0; trial < 100; ++trial) {
        double w[4] = {u(rng), u(rng), u(rng), trial % 2 ? u(rng) : 0.0};
        const double sum = w[0] + w[1] + w[2] + w[3];
        for (double& x : w) x /= sum;
        EXPECT_NEAR(w_family(w[0], w[1], w[2], w[3], kAbc).amplitudes().norm(), 1.0, 1e-9);
        GhzClassAngles t{u(rng) * 3, u(rng) * 6, u(rng) * 3, u(rng) * 3, u(rng) * 3};
        EXPECT_NEAR(ghz_class(t, kAbc).amplitudes().norm(), 1.0, 1e-9);
    }
}

TEST(Permuted, ReordersAmplitudes) {
    const auto s = computational(kAbc, "100");
    const std::vector<SiteLabel> order{3, 1, 2};
    const auto p = permuted(s, order);
    EXPECT_EQ(p.reg().labels(), order);
    EXPECT_EQ(p.amplitude(0b010), cplx(1));
}

}  // namespace
}  // namespace locc

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

#include <random>

#include "locc/slocc.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace locc {
namespace {

using Label = SloccClass::Label;
using testing::kind_of;

const Register kAbc = Register::linear("ABC");

PureState locally_transformed(const PureState& s, const Matrix& a, const Matrix& b, const Matrix& c) {
    PureState out = s;
    const Matrix* ops[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
        const SiteLabel site[1] = {s.reg().sites()[static_cast<std::size_t>(i)].label};
        out = PureState::normalized(s.reg(), apply_on_sites(out, site, *ops[i]));
    }
    return out;
}

TEST(FlatteningRanks, Examples) {
    EXPECT_EQ(flattening_ranks(PartyTensor::from_state(ghz(kAbc))), (std::vector<int>{2, 2, 2}));
    EXPECT_EQ(flattening_ranks(PartyTensor::from_state(computational(kAbc, "000"))), (std::vector<int>{1, 1, 1}));
    const auto t = PartyTensor::from_state(tensor(w_state(kAbc), epr(Register{{4, "B"}, {5, "C"}})));
    EXPECT_EQ(t.dims(), (std::vector<int>{2, 4, 4}));
    EXPECT_EQ(flattening_ranks(t), (std::vector<int>{2, 4, 4}));
}

TEST(FlatteningRanks, AgreeWithReducedDensityRanks) {
    std::mt19937_64 rng(31);
    const Register reg{{1, "A"}, {2, "B"}, {3, "C"}, {4, "B"}};
    for (int trial = 0; trial < 20; ++trial) {
        Vector v = testing::random_state(rng, 4);
        if (trial % 2) v = tensor(PureState(Register{{1, "A"}, {2, "B"}}, testing::random_state(rng, 2)),
                                  PureState(Register{{3, "C"}, {4, "B"}}, testing::random_state(rng, 2)))
                               .amplitudes();
        const PureState s(reg, v);
        const auto ranks = flattening_ranks(PartyTensor::from_state(s));
        const auto parties = reg.parties();
        for (std::size_t i = 0; i < parties.size(); ++i) {
            EXPECT_EQ(ranks[i], numeric_rank(reduced_density(s, {parties[i]})));
        }
    }
}

TEST(PartyTensor, GroupsSitesByParty) {
    // Site order 1A 2B 3A: grouping puts site 3 next to site 1.
    const auto s = computational(Register{{1, "A"}, {2, "B"}, {3, "A"}}, "001");
    const auto t = PartyTensor::from_state(s);
    EXPECT_EQ(t.dims(), (std::vector<int>{4, 2}));
    EXPECT_EQ(t.data()[0b010], cplx(1));
}

TEST(ThreeTangle, Examples) {
    EXPECT_NEAR(three_tangle(ghz(kAbc)), 1.0, 1e-15);
    EXPECT_NEAR(three_tangle(w_state(kAbc)), 0.0, 1e-15);
    EXPECT_EQ(three_tangle(computational(kAbc, "000")), 0.0);
}

TEST(ThreeTangle, WrongArity) {
    EXPECT_EQ(kind_of([] { three_tangle(epr(Register::linear("AB"))); }), ErrorKind::WrongArity);
    EXPECT_EQ(kind_of([] { three_tangle(ghz(Register::linear("AAB"))); }), ErrorKind::WrongArity);
}

// The hyperdeterminant against the monogamy identity built from concurrences.
TEST(ThreeTangle, MatchesConcurrenceOracle) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        const PureState s(kAbc, testing::random_state(rng, 3));
        EXPECT_NEAR(three_tangle(s), testing::tangle_by_concurrences(s.amplitudes()), 1e-9);
    }
    EXPECT_NEAR(testing::tangle_by_concurrences(ghz(kAbc).amplitudes()), 1.0, 1e-12);
    EXPECT_NEAR(testing::tangle_by_concurrences(w_state(kAbc).amplitudes()), 0.0, 1e-12);
}

TEST(ThreeTangle, InvariantUnderLocalUnitaries) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState s(kAbc, testing::random_state(rng, 3));
        const auto moved = locally_transformed(s, testing::random_unitary(rng), testing::random_unitary(rng),
                                               testing::random_unitary(rng));
        EXPECT_NEAR(three_tangle(moved), three_tangle(s), 1e-10);
    }
}

TEST(SloccClass, Examples) {
    EXPECT_EQ(slocc_class(ghz(kAbc)).label, Label::GhzClass);
    EXPECT_EQ(slocc_class(w_state(kAbc)).label, Label::WClass);
    EXPECT_EQ(slocc_class(computational(kAbc, "101")).label, Label::Product);
    const auto bisep = slocc_class(tensor(epr(Register::linear("AB")), computational(Register{{3, "C"}}, "0")));
    EXPECT_EQ(bisep.label, Label::Biseparable);
    EXPECT_EQ(bisep.name(), "Biseparable-C");
    EXPECT_EQ(slocc_class(ghz_class({0.4, 0.3, 0.9, 1.2, 2.0}, kAbc)).label, Label::GhzClass);
}

TEST(SloccClass, WFamilyHasZeroTangleAndFullRanks) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.01, 1);
    for (int trial = 0; trial < 200; ++trial) {
        double w[4] = {u(rng), u(rng), u(rng), trial % 2 ? u(rng) : 0.0};
        const double sum = w[0] + w[1] + w[2] + w[3];
        for (double& x : w) x /= sum;
        const auto c = slocc_class(w_family(w[0], w[1], w[2], w[3], kAbc));
        EXPECT_LT(c.tangle, 1e-10);
        EXPECT_EQ(c.ranks, (std::vector<int>{2, 2, 2}));
        EXPECT_EQ(c.label, Label::WClass);
    }
}

TEST(SloccClass, InvariantUnderInvertibleLocalOperators) {
    std::mt19937_64 rng(47);
    const auto w = w_state(kAbc), g = ghz(kAbc);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix a = testing::random_invertible(rng), b = testing::random_invertible(rng),
                     c = testing::random_invertible(rng);
        EXPECT_EQ(slocc_class(locally_transformed(w, a, b, c)).label, Label::WClass);
        EXPECT_EQ(slocc_class(locally_transformed(g, a, b, c)).label, Label::GhzClass);
    }
}

}  // namespace
}  // namespace locc

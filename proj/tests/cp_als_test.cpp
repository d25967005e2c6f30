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

#include "locc/cp_als.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace locc {
namespace {

const Register kAbc = Register::linear("ABC");

PartyTensor grouped(const PureState& s) { return PartyTensor::from_state(s); }

PartyTensor w_epr() { return grouped(tensor(w_state(kAbc), epr(Register{{4, "B"}, {5, "C"}}))); }
PartyTensor ghz_epr() { return grouped(tensor(ghz(kAbc), epr(Register{{4, "B"}, {5, "C"}}))); }

TEST(CpRankProbe, Ghz) {
    const auto t = grouped(ghz(kAbc));
    EXPECT_TRUE(cp_rank_probe(t, 2).converged);
    const auto r1 = cp_rank_probe(t, 1);
    EXPECT_FALSE(r1.converged);
    // Best rank-1 fit keeps one branch: residual sqrt(1/2).
    EXPECT_NEAR(r1.best_residual, std::sqrt(0.5), 1e-6);
}

TEST(CpRankProbe, W) {
    const auto t = grouped(w_state(kAbc));
    EXPECT_TRUE(cp_rank_probe(t, 3).converged);
    EXPECT_FALSE(cp_rank_probe(t, 2).converged);
}

TEST(CpRankProbe, CatalysedStates) {
    EXPECT_TRUE(cp_rank_probe(ghz_epr(), 4).converged);
    EXPECT_FALSE(cp_rank_probe(ghz_epr(), 3).converged);
    EXPECT_TRUE(cp_rank_probe(w_epr(), 6).converged);
    const auto r5 = cp_rank_probe(w_epr(), 5);
    EXPECT_FALSE(r5.converged);
    EXPECT_EQ(r5.restarts, 32);
    EXPECT_EQ(r5.converged_restarts, 0);
}

TEST(CpRankProbe, ConvergedFlagMatchesResidual) {
    for (int r = 1; r <= 4; ++r) {
        const auto p = cp_rank_probe(grouped(w_state(kAbc)), r);
        EXPECT_GE(p.best_residual, 0.0);
        EXPECT_EQ(p.converged, p.best_residual < p.config.fit_tol);
        EXPECT_EQ(p.seed, AlsConfig{}.seed);
    }
}

TEST(CpRankProbe, FactorsReconstructTheTensor) {
    const auto t = ghz_epr();
    const auto p = cp_rank_probe(t, 4);
    ASSERT_TRUE(p.converged);
    ASSERT_EQ(p.factors.size(), 3u);
    Vector model = Vector::Zero(static_cast<Eigen::Index>(t.size()));
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto idx = t.multi_index(k);
        for (int r = 0; r < 4; ++r) {
            cplx term = 1;
            for (std::size_t n = 0; n < 3; ++n) term *= p.factors[n](idx[n], r);
            model[static_cast<Eigen::Index>(k)] += term;
        }
    }
    EXPECT_LT((model - t.data()).norm(), 1e-8);
}

TEST(CpRankProbe, DeterministicAndThreadIndependent) {
    AlsConfig one;
    one.threads = 1;
    one.restarts = 8;
    AlsConfig many = one;
    many.threads = 4;
    const auto a = cp_rank_probe(w_epr(), 5, one);
    const auto b = cp_rank_probe(w_epr(), 5, many);
    const auto c = cp_rank_probe(w_epr(), 5, one);
    EXPECT_EQ(a.best_residual, b.best_residual);
    EXPECT_EQ(a.best_residual, c.best_residual);
    EXPECT_EQ(a.best_restart, b.best_restart);
    AlsConfig other = one;
    other.seed = 1234;
    EXPECT_NE(cp_rank_probe(w_epr(), 5, other).best_residual, a.best_residual);
}

// A rank-(r+1) model contains every rank-r model, so the best residual should
// not go up with r. ALS is a local search, so allow fit_tol of slack.
TEST(CpRankProbe, ResidualNonIncreasingInRank) {
    std::mt19937_64 rng(53);
    std::vector<PartyTensor> cases{grouped(w_state(kAbc)), grouped(ghz(kAbc)), w_epr(), ghz_epr(),
                                   grouped(PureState(kAbc, testing::random_state(rng, 3)))};
    for (const auto& t : cases) {
        double prev = std::numeric_limits<double>::infinity();
        for (int r = 1; r <= 7; ++r) {
            const double res = cp_rank_probe(t, r).best_residual;
            EXPECT_LE(res, prev + AlsConfig{}.fit_tol) << "rank " << r;
            prev = res;
        }
    }
}

TEST(ProductTermEstimate, Examples) {
    EXPECT_EQ(product_term_estimate(grouped(w_state(kAbc))).terms, 3);
    EXPECT_EQ(product_term_estimate(grouped(ghz(kAbc))).terms, 2);
    EXPECT_EQ(product_term_estimate(ghz_epr()).terms, 4);
    const auto e = product_term_estimate(w_epr());
    EXPECT_EQ(e.terms, 6);
    EXPECT_EQ(e.lower_bound, 4);
    EXPECT_TRUE(e.heuristic);
    ASSERT_EQ(e.probes.size(), 3u);
    EXPECT_FALSE(e.probes[0].converged);
    EXPECT_FALSE(e.probes[1].converged);
    EXPECT_TRUE(e.probes[2].converged);
}

TEST(ProductTermEstimate, AtLeastTheFlatteningBound) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        const PureState s(Register::linear("ABCA"), testing::random_state(rng, 4));
        const auto t = grouped(s);
        const auto ranks = flattening_ranks(t);
        const auto e = product_term_estimate(t);
        EXPECT_EQ(e.lower_bound, *std::max_element(ranks.begin(), ranks.end()));
        EXPECT_GE(e.terms, e.lower_bound);
    }
}

TEST(ProductTermEstimate, CapExceeded) {
    EXPECT_EQ(testing::kind_of([] { product_term_estimate(grouped(w_state(kAbc)), {}, 2); }), ErrorKind::CapExceeded);
}

}  // namespace
}  // namespace locc

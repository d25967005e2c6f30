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

#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locc/cp_als.hpp"
#include "locc/schmidt.hpp"

namespace locc {

/// Optimal single-copy LOCC probability of turning a bipartite state with
/// Schmidt coefficients `alpha` into one with coefficients `beta`:
///   min_l  sum_{i>=l} alpha_i / sum_{i>=l} beta_i
/// over nonincreasing, zero-padded spectra. Tails that are both (numerically)
/// empty are skipped and an empty target tail never binds.
inline double vidal_probability(std::span<const double> alpha, std::span<const double> beta) {
    const auto check = [](std::span<const double> v, const char* name) {
        double sum = 0;
        for (double x : v) {
            if (!(x >= -1e-12)) throw Error(ErrorKind::NotAProbabilityVector, std::string(name) + " has a negative entry");
            sum += x;
        }
        if (v.empty() || !(std::abs(sum - 1.0) <= kNormTol)) {
            throw Error(ErrorKind::NotAProbabilityVector, std::string(name) + " does not sum to 1");
        }
    };
    check(alpha, "alpha");
    check(beta, "beta");

    const std::size_t n = std::max(alpha.size(), beta.size());
    std::vector<double> a(alpha.begin(), alpha.end()), b(beta.begin(), beta.end());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());

    double best = std::numeric_limits<double>::infinity();
    double tail_a = 0, tail_b = 0;
    for (std::size_t l = n; l-- > 0;) {
        tail_a += std::max(a[l], 0.0);
        tail_b += std::max(b[l], 0.0);
        if (tail_b < 1e-12) continue;  // zero denominator: +inf, or 0/0 when both vanish
        best = std::min(best, tail_a / tail_b);
    }
    return std::clamp(best, 0.0, 1.0);
}

/// A split of the parties into two groups. `left` always holds the smallest party.
struct Bipartition {
    std::vector<Party> left;
    std::vector<Party> right;

    std::string name() const {
        const auto group = [](const std::vector<Party>& g) {
            std::string s;
            for (const auto& p : g) s += p;
            return g.size() > 1 ? "(" + s + ")" : s;
        };
        return group(left) + "|" + group(right);
    }
};

/// One representative per complementary pair of nonempty proper party subsets.
inline std::vector<Bipartition> bipartitions(const Register& reg) {
    const auto parties = reg.parties();
    const std::size_t m = parties.size();
    std::vector<Bipartition> out;
    if (m < 2) return out;
    const std::size_t full = (std::size_t{1} << m) - 1;
    for (std::size_t mask = 1; mask < full; mask += 2) {  // odd masks contain parties[0]
        Bipartition b;
        for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1U ? b.left : b.right).push_back(parties[i]);
        out.push_back(std::move(b));
    }
    return out;
}

struct CutProbability {
    Bipartition cut;
    double probability = 0;
    std::vector<double> source_coeffs;
    std::vector<double> target_coeffs;
};

/// Upper bound on the LOCC conversion probability: the minimum of the optimal
/// bipartite probabilities over every bipartite splitting.
struct ConversionBound {
    std::string source_id;
    std::string target_id;
    std::vector<CutProbability> per_cut;
    double bound = 1.0;

    const CutProbability* find(const std::string& cut_name) const {
        for (const auto& c : per_cut) {
            if (c.cut.name() == cut_name) return &c;
        }
        return nullptr;
    }
};

inline void require_same_layout(const Register& a, const Register& b) {
    const auto pa = a.parties();
    if (pa != b.parties()) throw Error(ErrorKind::RegisterMismatch, "states belong to different parties");
    for (const auto& p : pa) {
        if (a.sites_of(p).size() != b.sites_of(p).size()) {
            throw Error(ErrorKind::RegisterMismatch, "party " + p + " holds a different number of sites");
        }
    }
}

inline ConversionBound splitting_bound(const PureState& source, const PureState& target,
                                       std::string source_id = "source", std::string target_id = "target") {
    require_same_layout(source.reg(), target.reg());
    ConversionBound out{std::move(source_id), std::move(target_id), {}, 1.0};
    for (auto& cut : bipartitions(source.reg())) {
        CutProbability c;
        c.source_coeffs = schmidt(source, cut.left).coeffs;
        c.target_coeffs = schmidt(target, cut.left).coeffs;
        c.probability = vidal_probability(c.source_coeffs, c.target_coeffs);
        c.cut = std::move(cut);
        out.bound = std::min(out.bound, c.probability);
        out.per_cut.push_back(std::move(c));
    }
    return out;
}

enum class Feasibility { Impossible, Undetermined };

inline std::string_view to_string(Feasibility f) {
    return f == Feasibility::Impossible ? "Impossible" : "Undetermined";
}

struct PartyRanks {
    Party party;
    int source_rank = 0;
    int target_rank = 0;
};

struct RankObstruction {
    enum class Kind {
        TargetRankExceedsSource,        // no local operator at all can raise a reduced rank
        EqualRanksExcludeNonInvertible  // a singular local operator would lower some rank
    };
    Kind kind;
    std::vector<PartyRanks> ranks;
};

struct ProductTermObstruction {
    int source_estimate = 0;
    int target_estimate = 0;
    bool heuristic = true;
};

struct CatalysisVerdict {
    Feasibility feasible = Feasibility::Undetermined;
    std::vector<PartyRanks> ranks;
    std::optional<RankObstruction> rank_obstruction;
    std::optional<ProductTermObstruction> product_term_obstruction;
    std::optional<ProductTermEstimate> source_terms;
    std::optional<ProductTermEstimate> target_terms;
    std::string reason;
};

using RankProbe = std::function<ProductTermEstimate(const PartyTensor&)>;

inline RankProbe default_rank_probe(AlsConfig config = {}) {
    return [config](const PartyTensor& t) { return product_term_estimate(t, config); };
}

/// Checks whether `source` can reach `target` by local operators A (x) B (x) ...,
/// the setting of a catalysed transformation psi (x) phi -> psi' (x) phi.
///
/// Reduced ranks cannot increase under local operators, and stay fixed only
/// under invertible ones; the minimal number of product terms is fixed under
/// invertible ones. Either mismatch proves impossibility, except that the
/// product-term count is only estimated.
inline CatalysisVerdict catalysis_verdict(const PureState& source, const PureState& target,
                                          const RankProbe& probe = default_rank_probe()) {
    require_same_layout(source.reg(), target.reg());
    const auto parties = source.reg().parties();
    if (parties.size() < 2) throw Error(ErrorKind::RegisterMismatch, "need at least two parties");

    CatalysisVerdict v;
    bool all_equal = true;
    std::vector<PartyRanks> raised;
    for (const auto& p : parties) {
        const std::vector<Party> one{p};
        PartyRanks r{p, numeric_rank(reduced_density(source, one)), numeric_rank(reduced_density(target, one))};
        if (r.target_rank != r.source_rank) all_equal = false;
        if (r.target_rank > r.source_rank) raised.push_back(r);
        v.ranks.push_back(r);
    }

    if (!raised.empty()) {
        v.feasible = Feasibility::Impossible;
        v.rank_obstruction = RankObstruction{RankObstruction::Kind::TargetRankExceedsSource, raised};
        v.reason = "target raises the reduced rank of party " + raised.front().party;
        return v;
    }
    if (!all_equal) {
        v.reason = "target lowers some reduced rank; singular local operators are not excluded";
        return v;
    }

    v.rank_obstruction = RankObstruction{RankObstruction::Kind::EqualRanksExcludeNonInvertible, v.ranks};
    try {
        v.source_terms = probe(PartyTensor::from_state(source));
        v.target_terms = probe(PartyTensor::from_state(target));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        v.reason = "equal reduced ranks; product-term probe did not converge";
        return v;
    }
    if (v.source_terms->terms != v.target_terms->terms) {
        v.feasible = Feasibility::Impossible;
        v.product_term_obstruction = ProductTermObstruction{
            v.source_terms->terms, v.target_terms->terms, v.source_terms->heuristic || v.target_terms->heuristic};
        v.reason = "equal reduced ranks exclude singular operators; differing product-term counts exclude invertible ones";
    } else {
        v.reason = "no obstruction found";
    }
    return v;
}

}  // namespace locc

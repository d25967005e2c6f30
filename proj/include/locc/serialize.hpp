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

#include <cstdio>
#include <string>

#include "json.hpp"
#include "locc/convert.hpp"
#include "locc/cp_als.hpp"
#include "locc/protocol.hpp"
#include "locc/slocc.hpp"
#include "locc/state.hpp"

namespace locc {

using json = nlohmann::json;

/// Rounds to 12 significant digits, the precision used for reported probabilities.
inline double round12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::stod(buf);
}

inline json to_json(const Register& reg) {
    json sites = json::array();
    for (const auto& s : reg.sites()) sites.push_back({{"label", s.label}, {"party", s.party}});
    return sites;
}

/// {sites: [{label, party}], amplitudes: [[re, im], ...]}, full precision.
inline json to_json(const PureState& s) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
        amps.push_back({s.amplitudes()[i].real(), s.amplitudes()[i].imag()});
    }
    return {{"sites", to_json(s.reg())}, {"amplitudes", std::move(amps)}};
}

inline PureState state_from_json(const json& j) {
    try {
        std::vector<Site> sites;
        for (const auto& s : j.at("sites")) sites.push_back({s.at("label").get<int>(), s.at("party").get<std::string>()});
        const auto& a = j.at("amplitudes");
        Vector v(static_cast<Eigen::Index>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] = cplx(a[i].at(0).get<double>(), a[i].at(1).get<double>());
        }
        return PureState(Register(std::move(sites)), std::move(v));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed state document: ") + e.what());
    }
}

inline json to_json(const std::vector<double>& v, bool rounded) {
    json out = json::array();
    for (double x : v) out.push_back(rounded ? round12(x) : x);
    return out;
}

inline json to_json(const ConversionBound& b) {
    json cuts = json::array();
    for (const auto& c : b.per_cut) {
        cuts.push_back({{"cut", c.cut.name()},
                        {"left", c.cut.left},
                        {"right", c.cut.right},
                        {"probability", round12(c.probability)},
                        {"source_coeffs", to_json(c.source_coeffs, true)},
                        {"target_coeffs", to_json(c.target_coeffs, true)}});
    }
    return {{"source_id", b.source_id}, {"target_id", b.target_id}, {"per_cut", std::move(cuts)}, {"bound", round12(b.bound)}};
}

inline json to_json(const AlsConfig& c) {
    return {{"restarts", c.restarts},
            {"max_iters", c.max_iters},
            {"fit_tol", c.fit_tol},
            {"seed", c.seed},
            {"regularization", c.regularization},
            {"stall_stop", c.stall_stop}};
}

inline json to_json(const RankProbeResult& r) {
    return {{"tested_rank", r.tested_rank},
            {"best_residual", r.best_residual},
            {"converged", r.converged},
            {"restarts", r.restarts},
            {"converged_restarts", r.converged_restarts},
            {"best_restart", r.best_restart},
            {"seed", r.seed},
            {"config", to_json(r.config)}};
}

inline json to_json(const ProductTermEstimate& e) {
    json probes = json::array();
    for (const auto& p : e.probes) probes.push_back(to_json(p));
    return {{"terms", e.terms}, {"lower_bound", e.lower_bound}, {"heuristic", e.heuristic}, {"probes", std::move(probes)}};
}

inline json to_json(const SloccClass& c) {
    return {{"label", c.name()}, {"parties", c.parties}, {"ranks", c.ranks}, {"tangle", c.tangle}};
}

inline json to_json(const CatalysisVerdict& v) {
    const auto ranks_json = [](const std::vector<PartyRanks>& rs) {
        json out = json::array();
        for (const auto& r : rs) out.push_back({{"party", r.party}, {"source_rank", r.source_rank}, {"target_rank", r.target_rank}});
        return out;
    };
    json j{{"feasible", std::string(to_string(v.feasible))}, {"ranks", ranks_json(v.ranks)}, {"reason", v.reason}};
    if (v.rank_obstruction) {
        j["rank_obstruction"] = {
            {"kind", v.rank_obstruction->kind == RankObstruction::Kind::TargetRankExceedsSource ? "target-rank-exceeds-source"
                                                                                                  : "equal-ranks-exclude-singular"},
            {"ranks", ranks_json(v.rank_obstruction->ranks)}};
    } else {
        j["rank_obstruction"] = nullptr;
    }
    if (v.product_term_obstruction) {
        j["product_term_obstruction"] = {{"source_estimate", v.product_term_obstruction->source_estimate},
                                         {"target_estimate", v.product_term_obstruction->target_estimate},
                                         {"heuristic", v.product_term_obstruction->heuristic}};
    } else {
        j["product_term_obstruction"] = nullptr;
    }
    if (v.source_terms) j["source_terms"] = to_json(*v.source_terms);
    if (v.target_terms) j["target_terms"] = to_json(*v.target_terms);
    return j;
}

/// {record, prob, success, children[]}
inline json to_json(const BranchNode& n) {
    json children = json::array();
    for (const auto& c : n.children) children.push_back(to_json(c));
    json j{{"record", n.record},
           {"step", n.step},
           {"prob", round12(n.probability)},
           {"success", n.status == NodeStatus::Success},
           {"status", std::string(to_string(n.status))},
           {"children", std::move(children)}};
    if (n.is_leaf()) j["state"] = to_json(n.state);
    return j;
}

inline json to_json(const RunResult& r) {
    return {{"success_probability", round12(r.success_probability)},
            {"failure_probability", round12(r.failure_probability)},
            {"aborted_probability", round12(r.aborted_probability)},
            {"tree", to_json(r.root)}};
}

}  // namespace locc

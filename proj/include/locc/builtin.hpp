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
#include <vector>

#include "locc/protocol.hpp"

namespace locc {

/// A named starting state together with the protocol meant to run on it.
struct Scenario {
    std::string name;
    PureState initial;
    Protocol protocol;
};

enum class EprPlacement { BC, AC };

namespace detail {

inline std::string param_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline void require_family_parameter(double a, const char* name) {
    if (!(a >= 1.0 / 3 - 1e-12 && a < 0.5)) {
        throw Error(ErrorKind::ParameterOutOfRange, std::string(name) + " must lie in [1/3, 1/2)");
    }
}

inline MeasureStep measure_z(Party party, SiteLabel site, std::vector<int> accept = {}) {
    return {std::move(party), site, MeasurementBasis::z(), std::move(accept)};
}

inline UnitaryStep gate(Party party, std::vector<SiteLabel> sites, Matrix m, std::string name,
                        std::optional<Condition> when = std::nullopt) {
    return {std::move(party), std::move(sites), std::move(m), std::move(name), when};
}

}  // namespace detail

/// sqrt(a)|100> + sqrt(a)|010> + sqrt(1-2a)|001> on sites 1 (A), 2 (B), 3 (C),
/// with an EPR pair on sites 4, 5 handed to Bob and Charlie (BC) or to Alice
/// and Charlie (AC).
///
/// (a) Charlie measures site 3 in Z; outcome 1 aborts.
/// (b) The EPR holder among Alice/Bob applies CNOT from their W qubit onto site 4.
/// (c) That party measures site 4 in Z; both outcomes leave sites 1, 2, 5 in a
///     state local-unitarily equivalent to GHZ. Success probability 2a.
inline Scenario prop3(double a, EprPlacement placement = EprPlacement::BC) {
    detail::require_family_parameter(a, "a");
    const Party holder = placement == EprPlacement::BC ? "B" : "A";
    const SiteLabel control = placement == EprPlacement::BC ? 2 : 1;
    const PureState initial = tensor(w_family(a, a, 1 - 2 * a, 0, Register::linear("ABC")),
                                     epr(Register{{4, holder}, {5, "C"}}));
    Protocol p;
    p.name = placement == EprPlacement::BC ? "prop3" : "prop3-ac";
    p.steps = {detail::measure_z("C", 3, {0}), detail::gate(holder, {control, 4}, gates::cnot(), "CNOT"),
               detail::measure_z(holder, 4)};
    p.target = Target::lu_ghz(1, 2, 5);
    if (placement == EprPlacement::AC) {
        p.notes.push_back("reconstructed by exchanging the roles of particles 1 and 2");
    }
    return {p.name + "(" + detail::param_text(a) + ")", initial, std::move(p)};
}

/// sqrt(1-2b)|100> + sqrt(b)|010> + sqrt(b)|001>: Alice measures, Bob and Alice share the EPR pair.
inline Scenario prop3_b(double b) {
    detail::require_family_parameter(b, "b");
    const PureState initial = tensor(w_family(1 - 2 * b, b, b, 0, Register::linear("ABC")),
                                     epr(Register{{4, "B"}, {5, "A"}}));
    Protocol p;
    p.name = "prop3-b";
    p.steps = {detail::measure_z("A", 1, {0}), detail::gate("B", {2, 4}, gates::cnot(), "CNOT"), detail::measure_z("B", 4)};
    p.target = Target::lu_ghz(2, 3, 5);
    return {p.name + "(" + detail::param_text(b) + ")", initial, std::move(p)};
}

/// sqrt(c)|100> + sqrt(1-2c)|010> + sqrt(c)|001>: Bob measures, Charlie and Bob share the EPR pair.
inline Scenario prop3_c(double c) {
    detail::require_family_parameter(c, "c");
    const PureState initial = tensor(w_family(c, 1 - 2 * c, c, 0, Register::linear("ABC")),
                                     epr(Register{{4, "C"}, {5, "B"}}));
    Protocol p;
    p.name = "prop3-c";
    p.steps = {detail::measure_z("B", 2, {0}), detail::gate("C", {3, 4}, gates::cnot(), "CNOT"), detail::measure_z("C", 4)};
    p.target = Target::lu_ghz(1, 3, 5);
    return {p.name + "(" + detail::param_text(c) + ")", initial, std::move(p)};
}

/// GHZ on sites 1, 2, 5 with sites 3, 4 in |00>: the exact end state of the
/// W + EPR -> GHZ conversion on the prop3 (BC) register.
inline PureState prop3_exact_target() {
    const Register reg{{1, "A"}, {2, "B"}, {3, "C"}, {4, "B"}, {5, "C"}};
    Vector v = Vector::Zero(32);
    v[0] = v[0b11001] = std::numbers::sqrt2 / 2;
    return PureState(reg, std::move(v));
}

/// prop3 (BC) followed by the Pauli corrections that turn both success leaves
/// into prop3_exact_target() exactly.
inline Scenario prop3_corrected(double a) {
    Scenario s = prop3(a);
    s.name = "prop3-exact(" + detail::param_text(a) + ")";
    s.protocol.name = "prop3-exact";
    const Condition bob_one{4, 1};
    s.protocol.steps.push_back(detail::gate("A", {1}, gates::x(), "X"));
    s.protocol.steps.push_back(detail::gate("C", {5}, gates::x(), "X", bob_one));
    s.protocol.steps.push_back(detail::gate("B", {4}, gates::x(), "X", bob_one));
    s.protocol.target = Target::exact(prop3_exact_target());
    return s;
}

namespace detail {

/// Bob prepares `local` (3 qubits) on fresh sites 6, 7, 8 and teleports site 6
/// to Alice through EPR (5 -> 4) and site 8 to Charlie through EPR (2 -> 3).
inline void prepare_and_distribute(Protocol& p, const PureState& local) {
    if (local.num_sites() != 3) throw Error(ErrorKind::WrongArity, "the distributed state must have 3 qubits");
    p.steps.push_back(PrepareStep{"B", PureState(Register{{6, "B"}, {7, "B"}, {8, "B"}}, local.amplitudes())});
    p.steps.push_back(TeleportStep{6, 5, 4});
    p.steps.push_back(TeleportStep{8, 2, 3});
    p.target = Target::exact(PureState(Register{{4, "A"}, {7, "B"}, {3, "C"}}, local.amplitudes()));
}

}  // namespace detail

/// W on 1, 2, 3 plus EPR(A: 4, B: 5). Alice measures site 1; on outcome 0 Bob
/// and Charlie hold (|01>+|10>)/sqrt2, which Charlie flips to an EPR pair. Bob
/// then prepares GHZ and teleports two of its qubits out. Probability 2/3.
inline Scenario intro_teleport() {
    const PureState initial = tensor(w_state(Register::linear("ABC")), epr(Register{{4, "A"}, {5, "B"}}));
    Protocol p;
    p.name = "intro";
    p.steps = {detail::measure_z("A", 1, {0}), detail::gate("C", {3}, gates::x(), "X")};
    detail::prepare_and_distribute(p, ghz(Register::linear("BBB", 6)));
    return {"intro", initial, std::move(p)};
}

/// Alice measures GHZ in the X basis; Bob and Charlie keep (|00> +- |11>)/sqrt2.
inline Scenario ghz_to_epr() {
    Protocol p;
    p.name = "ghz2epr";
    p.steps = {MeasureStep{"A", 1, MeasurementBasis::x(), {}}};
    p.target = Target::lu_epr(2, 3);
    return {"ghz2epr", ghz(Register::linear("ABC")), std::move(p)};
}

/// GHZ plus EPR(A: 4, B: 5) to any three-qubit state, with certainty: the X
/// measurement yields an EPR pair on Bob-Charlie (after Charlie's Z on outcome
/// 1), then Bob prepares `local` and teleports it out.
inline Scenario ghz_plus_epr_to_any(const PureState& local) {
    const PureState initial = tensor(ghz(Register::linear("ABC")), epr(Register{{4, "A"}, {5, "B"}}));
    Protocol p;
    p.name = "ghz+epr";
    p.steps = {MeasureStep{"A", 1, MeasurementBasis::x(), {}},
               detail::gate("C", {3}, gates::z(), "Z", Condition{1, 1})};
    detail::prepare_and_distribute(p, local);
    return {"ghz+epr", initial, std::move(p)};
}

/// A source/target pair for the catalysis checks.
struct ConversionPair {
    std::string name;
    PureState source;
    PureState target;
};

/// W -> GHZ with an EPR catalyst on Bob and Charlie (sites 4, 5) on both sides.
inline ConversionPair catalysed_w_to_ghz() {
    const PureState cat = epr(Register{{4, "B"}, {5, "C"}});
    const Register abc = Register::linear("ABC");
    return {"W x EPR(B4,C5) -> GHZ x EPR(B4,C5)", tensor(w_state(abc), cat), tensor(ghz(abc), cat)};
}

/// W -> GHZ with a tripartite catalyst on sites 4 (A), 5 (B), 6 (C): first W,
/// then GHZ.
inline std::vector<ConversionPair> tripartite_catalyst_pairs() {
    const Register first = Register::linear("ABC");
    const Register second = Register::linear("ABC", 4);
    const PureState w1 = w_state(first), g1 = ghz(first), w2 = w_state(second), g2 = ghz(second);
    return {{"W x W -> GHZ x W", tensor(w1, w2), tensor(g1, w2)},
            {"W x GHZ -> GHZ x GHZ", tensor(w1, g2), tensor(g1, g2)}};
}

inline std::vector<std::string> builtin_protocol_names() {
    return {"prop3", "prop3-ac", "prop3-b", "prop3-c", "prop3-exact", "intro", "ghz2epr", "ghz+epr"};
}

}  // namespace locc

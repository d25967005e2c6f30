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

#include <string>
#include <vector>

#include "locc/party_tensor.hpp"

namespace locc {

inline constexpr double kClassTol = 1e-8;

namespace detail {

inline PartyTensor three_qubit_tensor(const PureState& s) {
    PartyTensor t = PartyTensor::from_state(s);
    if (t.modes() != 3 || t.dims() != std::vector<int>{2, 2, 2}) {
        throw Error(ErrorKind::WrongArity, "expected three parties holding one qubit each");
    }
    return t;
}

}  // namespace detail

/// Cayley hyperdeterminant of the 2x2x2 amplitude tensor.
inline cplx hyperdeterminant(const Vector& a) {
    const auto p = [&](int i) { return a[i]; };
    const cplx d1 = p(0) * p(0) * p(7) * p(7) + p(1) * p(1) * p(6) * p(6) + p(2) * p(2) * p(5) * p(5) +
                    p(4) * p(4) * p(3) * p(3);
    const cplx d2 = p(0) * p(7) * p(3) * p(4) + p(0) * p(7) * p(5) * p(2) + p(0) * p(7) * p(6) * p(1) +
                    p(3) * p(4) * p(5) * p(2) + p(3) * p(4) * p(6) * p(1) + p(5) * p(2) * p(6) * p(1);
    const cplx d3 = p(0) * p(6) * p(5) * p(3) + p(7) * p(1) * p(2) * p(4);
    return d1 - 2.0 * d2 + 4.0 * d3;
}

/// Three-tangle 4|Det|, equal to 1 on GHZ and 0 on the W class.
inline double three_tangle(const PureState& s) {
    const PartyTensor t = detail::three_qubit_tensor(s);
    return 4.0 * std::abs(hyperdeterminant(t.data()));
}

struct SloccClass {
    enum class Label { Product, Biseparable, WClass, GhzClass };

    Label label = Label::Product;
    Party separated;          // the rank-1 party when Biseparable
    std::vector<Party> parties;
    std::vector<int> ranks;   // single-party flattening ranks, in `parties` order
    double tangle = 0;

    std::string name() const {
        switch (label) {
            case Label::Product: return "Product";
            case Label::Biseparable: return "Biseparable-" + separated;
            case Label::WClass: return "W-class";
            case Label::GhzClass: return "GHZ-class";
        }
        return "?";
    }
};

inline SloccClass slocc_class(const PureState& s, double class_tol = kClassTol, double rank_tol = kDefaultRankTol) {
    const PartyTensor t = detail::three_qubit_tensor(s);
    SloccClass out;
    out.parties = t.parties();
    out.ranks = flattening_ranks(t, rank_tol);
    out.tangle = 4.0 * std::abs(hyperdeterminant(t.data()));

    int ones = 0;
    for (std::size_t i = 0; i < out.ranks.size(); ++i) {
        if (out.ranks[i] == 1) {
            ++ones;
            out.separated = out.parties[i];
        }
    }
    if (ones == 3) {
        out.label = SloccClass::Label::Product;
        out.separated.clear();
    } else if (ones >= 1) {
        out.label = SloccClass::Label::Biseparable;
    } else {
        out.label = out.tangle > class_tol ? SloccClass::Label::GhzClass : SloccClass::Label::WClass;
    }
    return out;
}

}  // namespace locc

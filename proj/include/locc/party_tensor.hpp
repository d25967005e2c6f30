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

#include <Eigen/SVD>

#include <cstddef>
#include <vector>

#include "locc/state.hpp"

namespace locc {

/// A pure state's amplitudes regrouped as an N-way tensor with one mode per
/// party (parties sorted, a party's sites kept in register order). Data is
/// row-major: the first party's index is the most significant.
class PartyTensor {
public:
    PartyTensor(std::vector<Party> parties, std::vector<int> dims, Vector data)
        : parties_(std::move(parties)), dims_(std::move(dims)), data_(std::move(data)) {
        if (parties_.size() != dims_.size() || dims_.empty()) {
            throw Error(ErrorKind::ConstraintViolation, "party tensor needs one dimension per party");
        }
        std::size_t total = 1;
        for (int d : dims_) total *= static_cast<std::size_t>(d);
        if (total != static_cast<std::size_t>(data_.size())) {
            throw Error(ErrorKind::ConstraintViolation, "party tensor size does not match its shape");
        }
        if (!(std::abs(data_.norm() - 1.0) <= kNormTol)) {
            throw Error(ErrorKind::ConstraintViolation, "party tensor is not normalized");
        }
    }

    static PartyTensor from_state(const PureState& s) {
        const auto& reg = s.reg();
        std::vector<Party> parties = reg.parties();
        std::vector<int> dims;
        std::vector<SiteLabel> order;
        for (const auto& p : parties) {
            const auto sites = reg.sites_of(p);
            dims.push_back(1 << sites.size());
            order.insert(order.end(), sites.begin(), sites.end());
        }
        return PartyTensor(std::move(parties), std::move(dims), permuted(s, order).amplitudes());
    }

    const std::vector<Party>& parties() const noexcept { return parties_; }
    const std::vector<int>& dims() const noexcept { return dims_; }
    const Vector& data() const noexcept { return data_; }
    std::size_t modes() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(data_.size()); }

    /// Multi-index of flat entry k.
    std::vector<int> multi_index(std::size_t k) const {
        std::vector<int> idx(dims_.size());
        for (std::size_t n = dims_.size(); n-- > 0;) {
            idx[n] = static_cast<int>(k % static_cast<std::size_t>(dims_[n]));
            k /= static_cast<std::size_t>(dims_[n]);
        }
        return idx;
    }

    /// Mode-n matricization: rows index mode n, columns the other modes in
    /// order (last fastest).
    Matrix unfold(std::size_t n) const {
        const Eigen::Index rows = dims_[n];
        const Eigen::Index cols = data_.size() / rows;
        Matrix m(rows, cols);
        for (std::size_t k = 0; k < size(); ++k) {
            const auto idx = multi_index(k);
            Eigen::Index c = 0;
            for (std::size_t m2 = 0; m2 < dims_.size(); ++m2) {
                if (m2 != n) c = c * dims_[m2] + idx[m2];
            }
            m(idx[n], c) = data_[static_cast<Eigen::Index>(k)];
        }
        return m;
    }

private:
    std::vector<Party> parties_;
    std::vector<int> dims_;
    Vector data_;
};

/// Numeric rank of every single-party matricization (squared singular values
/// against `tol` times the largest, matching numeric_rank of the reduced state).
inline std::vector<int> flattening_ranks(const PartyTensor& t, double tol = kDefaultRankTol) {
    std::vector<int> ranks;
    for (std::size_t n = 0; n < t.modes(); ++n) {
        const Eigen::JacobiSVD<Matrix> svd(t.unfold(n));
        const auto& sv = svd.singularValues();
        const double top = sv[0] * sv[0];
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv[i] * sv[i] > tol * top) ++r;
        }
        ranks.push_back(std::max(r, 1));
    }
    return ranks;
}

}  // namespace locc

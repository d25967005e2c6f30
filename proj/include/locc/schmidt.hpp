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

#include <span>
#include <vector>

#include "locc/state.hpp"

namespace locc {

/// Schmidt form of a pure state across one cut:
///   |psi> = sum_i sqrt(coeffs[i]) |left_i> |right_i>.
/// Coefficients are nonincreasing and zero-padded to min(d_left, d_right).
struct SchmidtSpectrum {
    std::vector<SiteLabel> left_sites;
    std::vector<SiteLabel> right_sites;
    std::vector<double> coeffs;
    Matrix left_basis;   // columns, d_left x k
    Matrix right_basis;  // columns, d_right x k

    std::size_t schmidt_rank(double tol = kDefaultRankTol) const {
        std::size_t r = 0;
        for (double c : coeffs) {
            if (c > tol * coeffs.front()) ++r;
        }
        return r;
    }

    /// sum_i sqrt(c_i) |left_i> (x) |right_i> as a d_left x d_right matrix.
    Matrix reconstruct() const {
        Matrix m = Matrix::Zero(left_basis.rows(), right_basis.rows());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            m += std::sqrt(coeffs[i]) * left_basis.col(k) * right_basis.col(k).transpose();
        }
        return m;
    }
};

inline SchmidtSpectrum schmidt_of_sites(const PureState& s, std::span<const SiteLabel> left) {
    if (left.empty() || left.size() >= s.num_sites()) {
        throw Error(ErrorKind::EmptySubset, "a Schmidt cut needs sites on both sides");
    }
    const auto pos = detail::sorted_positions(s.reg(), left);
    SchmidtSpectrum out;
    out.left_sites = detail::labels_at(s.reg(), pos);
    for (const auto& site : s.reg().sites()) {
        if (std::find(out.left_sites.begin(), out.left_sites.end(), site.label) == out.left_sites.end()) {
            out.right_sites.push_back(site.label);
        }
    }

    const Matrix m = amplitude_matrix(s, left);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // nonincreasing
    const Eigen::Index k = sv.size();        // min(d_left, d_right)
    out.coeffs.resize(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) out.coeffs[static_cast<std::size_t>(i)] = sv[i] * sv[i];
    out.left_basis = svd.matrixU().leftCols(k);
    // M = U S V^dagger, so the right Schmidt vectors are the conjugated columns of V.
    out.right_basis = svd.matrixV().leftCols(k).conjugate();
    return out;
}

/// Schmidt decomposition across (left parties) | (everyone else).
inline SchmidtSpectrum schmidt(const PureState& s, std::span<const Party> left) {
    check_proper_party_subset(s.reg(), left);
    const auto labels = detail::labels_of_parties(s.reg(), left);
    return schmidt_of_sites(s, labels);
}

inline SchmidtSpectrum schmidt(const PureState& s, std::initializer_list<Party> left) {
    return schmidt(s, std::span<const Party>(left.begin(), left.size()));
}

}  // namespace locc

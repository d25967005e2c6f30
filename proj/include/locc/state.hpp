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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locc/error.hpp"

namespace locc {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

using Party = std::string;
using SiteLabel = int;

inline constexpr double kNormTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-10;

struct Site {
    SiteLabel label;
    Party party;

    bool operator==(const Site&) const = default;
};

/// An ordered list of qubit sites, each owned by exactly one party.
///
/// Site order fixes the amplitude indexing: the first site is the most
/// significant bit of the computational-basis index, so kets read
/// left-to-right in register order.
class Register {
public:
    Register(std::initializer_list<Site> sites) : Register(std::vector<Site>(sites)) {}

    explicit Register(std::vector<Site> sites) : sites_(std::move(sites)) {
        if (sites_.empty()) {
            throw Error(ErrorKind::ConstraintViolation, "a register needs at least one site");
        }
        std::set<SiteLabel> seen;
        for (const auto& s : sites_) {
            if (s.party.empty()) {
                throw Error(ErrorKind::ConstraintViolation, "site " + std::to_string(s.label) + " has no party");
            }
            if (!seen.insert(s.label).second) {
                throw Error(ErrorKind::LabelCollision, "duplicate site label " + std::to_string(s.label));
            }
        }
    }

    /// Sites labelled 1..n, site i owned by the i-th character of `parties`.
    static Register linear(std::string_view parties, SiteLabel first_label = 1) {
        std::vector<Site> sites;
        for (std::size_t i = 0; i < parties.size(); ++i) {
            sites.push_back({first_label + static_cast<SiteLabel>(i), Party(1, parties[i])});
        }
        return Register(std::move(sites));
    }

    const std::vector<Site>& sites() const noexcept { return sites_; }
    std::size_t size() const noexcept { return sites_.size(); }
    std::size_t dimension() const noexcept { return std::size_t{1} << sites_.size(); }

    std::optional<std::size_t> find(SiteLabel label) const {
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            if (sites_[i].label == label) return i;
        }
        return std::nullopt;
    }

    bool contains(SiteLabel label) const { return find(label).has_value(); }

    std::size_t index_of(SiteLabel label) const {
        auto i = find(label);
        if (!i) throw Error(ErrorKind::SemanticError, "unknown site " + std::to_string(label));
        return *i;
    }

    const Party& party_of(SiteLabel label) const { return sites_[index_of(label)].party; }

    /// Distinct parties, sorted.
    std::vector<Party> parties() const {
        std::set<Party> ps;
        for (const auto& s : sites_) ps.insert(s.party);
        return {ps.begin(), ps.end()};
    }

    bool has_party(const Party& p) const {
        return std::any_of(sites_.begin(), sites_.end(), [&](const Site& s) { return s.party == p; });
    }

    /// Labels owned by `p`, in register order.
    std::vector<SiteLabel> sites_of(const Party& p) const {
        std::vector<SiteLabel> out;
        for (const auto& s : sites_) {
            if (s.party == p) out.push_back(s.label);
        }
        return out;
    }

    std::vector<SiteLabel> labels() const {
        std::vector<SiteLabel> out;
        for (const auto& s : sites_) out.push_back(s.label);
        return out;
    }

    bool operator==(const Register&) const = default;

private:
    std::vector<Site> sites_;
};

/// A normalized pure state on a qubit register.
class PureState {
public:
    PureState(Register reg, Vector amplitudes) : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != reg_.dimension()) {
            throw Error(ErrorKind::ConstraintViolation,
                        "amplitude vector has length " + std::to_string(amps_.size()) + ", expected " +
                            std::to_string(reg_.dimension()));
        }
        const double n2 = amps_.squaredNorm();
        if (!(std::abs(n2 - 1.0) <= kNormTol)) {
            throw Error(ErrorKind::ConstraintViolation, "state is not normalized (squared norm " + std::to_string(n2) + ")");
        }
    }

    /// Rescales `amplitudes` to unit norm. Throws DegenerateState for a (numerically) zero vector.
    static PureState normalized(Register reg, Vector amplitudes) {
        const double n = amplitudes.norm();
        if (!(n >= 1e-12)) {
            throw Error(ErrorKind::DegenerateState, "cannot normalize a zero vector");
        }
        amplitudes /= n;
        return PureState(std::move(reg), std::move(amplitudes));
    }

    const Register& reg() const noexcept { return reg_; }
    const Vector& amplitudes() const noexcept { return amps_; }
    cplx amplitude(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
    std::size_t num_sites() const noexcept { return reg_.size(); }

private:
    Register reg_;
    Vector amps_;
};

namespace detail {

inline std::size_t bit_of(std::size_t index, std::size_t position, std::size_t num_sites) {
    return (index >> (num_sites - 1 - position)) & 1U;
}

inline std::vector<std::size_t> positions_of(const Register& reg, std::span<const SiteLabel> labels) {
    std::vector<std::size_t> pos;
    pos.reserve(labels.size());
    for (auto l : labels) pos.push_back(reg.index_of(l));
    return pos;
}

/// Positions of `labels` in register order (not in the order given).
inline std::vector<std::size_t> sorted_positions(const Register& reg, std::span<const SiteLabel> labels) {
    auto pos = positions_of(reg, labels);
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
        throw Error(ErrorKind::SemanticError, "repeated site in subset");
    }
    return pos;
}

inline std::vector<SiteLabel> labels_at(const Register& reg, std::span<const std::size_t> positions) {
    std::vector<SiteLabel> out;
    for (auto p : positions) out.push_back(reg.sites()[p].label);
    return out;
}

inline std::vector<SiteLabel> labels_of_parties(const Register& reg, std::span<const Party> parties) {
    std::vector<SiteLabel> out;
    for (const auto& s : reg.sites()) {
        if (std::find(parties.begin(), parties.end(), s.party) != parties.end()) out.push_back(s.label);
    }
    return out;
}

}  // namespace detail

/// Computational basis state, e.g. computational(reg, "010").
inline PureState computational(const Register& reg, std::string_view bits) {
    if (bits.size() != reg.size()) {
        throw Error(ErrorKind::WrongArity, "bit string length does not match register size");
    }
    std::size_t index = 0;
    for (char b : bits) {
        if (b != '0' && b != '1') throw Error(ErrorKind::ConstraintViolation, "bit string must be 0/1");
        index = (index << 1) | static_cast<std::size_t>(b - '0');
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(reg.dimension()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(reg, std::move(v));
}

/// sqrt(a)|100> + sqrt(b)|010> + sqrt(c)|001> + sqrt(d)|000>.
inline PureState w_family(double a, double b, double c, double d, const Register& reg) {
    if (reg.size() != 3) throw Error(ErrorKind::WrongArity, "W-class states live on 3 sites");
    if (!(a > 0 && b > 0 && c > 0 && d >= 0)) {
        throw Error(ErrorKind::ConstraintViolation, "W-class weights need a,b,c > 0 and d >= 0");
    }
    if (!(std::abs(a + b + c + d - 1.0) <= kNormTol)) {
        throw Error(ErrorKind::ConstraintViolation, "W-class weights must sum to 1");
    }
    Vector v = Vector::Zero(8);
    v[4] = std::sqrt(a);
    v[2] = std::sqrt(b);
    v[1] = std::sqrt(c);
    v[0] = std::sqrt(d);
    return PureState(reg, std::move(v));
}

inline PureState w_state(const Register& reg) { return w_family(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0, reg); }

inline PureState ghz(const Register& reg) {
    if (reg.size() != 3) throw Error(ErrorKind::WrongArity, "GHZ lives on 3 sites");
    Vector v = Vector::Zero(8);
    v[0] = v[7] = std::numbers::sqrt2 / 2;
    return PureState(reg, std::move(v));
}

inline PureState epr(const Register& reg) {
    if (reg.size() != 2) throw Error(ErrorKind::WrongArity, "an EPR pair lives on 2 sites");
    Vector v = Vector::Zero(4);
    v[0] = v[3] = std::numbers::sqrt2 / 2;
    return PureState(reg, std::move(v));
}

/// sqrt(alpha)|00> + sqrt(beta)|11>, the non-maximal bipartite catalyst.
inline PureState schmidt_pair(double alpha, double beta, const Register& reg) {
    if (reg.size() != 2) throw Error(ErrorKind::WrongArity, "a Schmidt pair lives on 2 sites");
    if (!(alpha >= 0 && beta >= 0) || !(std::abs(alpha + beta - 1.0) <= kNormTol)) {
        throw Error(ErrorKind::ConstraintViolation, "Schmidt weights must be nonnegative and sum to 1");
    }
    Vector v = Vector::Zero(4);
    v[0] = std::sqrt(alpha);
    v[3] = std::sqrt(beta);
    return PureState(reg, std::move(v));
}

struct GhzClassAngles {
    double delta = 0;
    double phi = 0;
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
};

/// Squared norm of cos(d)|000> + sin(d) e^{i phi}|a>|b>|c>, from the Gram
/// overlap <000|abc> = cos(alpha) cos(beta) cos(gamma). K is its inverse.
inline double ghz_class_squared_norm(const GhzClassAngles& t) {
    const double overlap = std::cos(t.alpha) * std::cos(t.beta) * std::cos(t.gamma);
    const double cd = std::cos(t.delta), sd = std::sin(t.delta);
    return cd * cd + sd * sd + 2.0 * cd * sd * std::cos(t.phi) * overlap;
}

inline PureState ghz_class(const GhzClassAngles& t, const Register& reg) {
    if (reg.size() != 3) throw Error(ErrorKind::WrongArity, "GHZ-class states live on 3 sites");
    const double n2 = ghz_class_squared_norm(t);
    if (!(n2 >= 1e-24)) throw Error(ErrorKind::DegenerateState, "GHZ-class parameters give a zero vector");
    const double k = 1.0 / n2;

    const std::array<double, 2> va{std::cos(t.alpha), std::sin(t.alpha)};
    const std::array<double, 2> vb{std::cos(t.beta), std::sin(t.beta)};
    const std::array<double, 2> vc{std::cos(t.gamma), std::sin(t.gamma)};
    const cplx branch = std::sin(t.delta) * std::polar(1.0, t.phi);

    Vector v(8);
    for (int i = 0; i < 8; ++i) {
        v[i] = branch * va[(i >> 2) & 1] * vb[(i >> 1) & 1] * vc[i & 1];
    }
    v[0] += std::cos(t.delta);
    v *= std::sqrt(k);
    // Re-normalize to absorb rounding in the Gram formula.
    return PureState::normalized(reg, std::move(v));
}

/// Kronecker product; registers are concatenated, party maps merged.
inline PureState tensor(const PureState& s1, const PureState& s2) {
    std::vector<Site> sites = s1.reg().sites();
    for (const auto& s : s2.reg().sites()) {
        if (s1.reg().contains(s.label)) {
            throw Error(ErrorKind::LabelCollision, "site " + std::to_string(s.label) + " appears in both states");
        }
        sites.push_back(s);
    }
    const auto& a = s1.amplitudes();
    const auto& b = s2.amplitudes();
    Vector v(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        v.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return PureState(Register(std::move(sites)), std::move(v));
}

/// The same state with its register reordered to `order` (a permutation of the labels).
inline PureState permuted(const PureState& s, std::span<const SiteLabel> order) {
    const auto& reg = s.reg();
    if (order.size() != reg.size()) throw Error(ErrorKind::RegisterMismatch, "permutation has the wrong length");
    const auto pos = detail::positions_of(reg, order);
    std::vector<Site> sites;
    for (auto p : pos) sites.push_back(reg.sites()[p]);
    Register out_reg(std::move(sites));

    const std::size_t n = reg.size();
    Vector v(static_cast<Eigen::Index>(reg.dimension()));
    for (std::size_t k = 0; k < reg.dimension(); ++k) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i) j = (j << 1) | detail::bit_of(k, pos[i], n);
        v[static_cast<Eigen::Index>(j)] = s.amplitudes()[static_cast<Eigen::Index>(k)];
    }
    return PureState(std::move(out_reg), std::move(v));
}

/// Applies `op` (2^k x 2^k, first listed site most significant) to the listed
/// sites. The result is not renormalized.
inline Vector apply_on_sites(const PureState& s, std::span<const SiteLabel> sites, const Matrix& op) {
    const auto& reg = s.reg();
    const std::size_t n = reg.size();
    const auto pos = detail::positions_of(reg, sites);
    {
        auto sorted = pos;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorKind::SemanticError, "operator acts twice on one site");
        }
    }
    const std::size_t k = pos.size();
    const auto sub = static_cast<Eigen::Index>(std::size_t{1} << k);
    if (op.rows() != sub || op.cols() != sub) {
        throw Error(ErrorKind::WrongArity, "operator dimension does not match the number of sites");
    }
    std::size_t mask = 0;
    for (auto p : pos) mask |= std::size_t{1} << (n - 1 - p);

    const auto& in = s.amplitudes();
    Vector out = Vector::Zero(in.size());
    for (std::size_t base = 0; base < reg.dimension(); ++base) {
        if (base & mask) continue;
        // Gather the 2^k amplitudes of this block, apply op, scatter.
        std::vector<std::size_t> idx(static_cast<std::size_t>(sub));
        for (std::size_t local = 0; local < idx.size(); ++local) {
            std::size_t g = base;
            for (std::size_t j = 0; j < k; ++j) {
                if ((local >> (k - 1 - j)) & 1U) g |= std::size_t{1} << (n - 1 - pos[j]);
            }
            idx[local] = g;
        }
        for (Eigen::Index r = 0; r < sub; ++r) {
            cplx acc = 0;
            for (Eigen::Index c = 0; c < sub; ++c) acc += op(r, c) * in[static_cast<Eigen::Index>(idx[c])];
            out[static_cast<Eigen::Index>(idx[r])] = acc;
        }
    }
    return out;
}

/// Amplitudes reshaped into a matrix: rows index the `row_sites`, columns the
/// remaining sites, both in register order.
inline Matrix amplitude_matrix(const PureState& s, std::span<const SiteLabel> row_sites) {
    const auto& reg = s.reg();
    const std::size_t n = reg.size();
    const auto rows = detail::sorted_positions(reg, row_sites);
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::binary_search(rows.begin(), rows.end(), i)) cols.push_back(i);
    }
    Matrix m = Matrix::Zero(Eigen::Index{1} << rows.size(), Eigen::Index{1} << cols.size());
    for (std::size_t k = 0; k < reg.dimension(); ++k) {
        std::size_t r = 0, c = 0;
        for (auto p : rows) r = (r << 1) | detail::bit_of(k, p, n);
        for (auto p : cols) c = (c << 1) | detail::bit_of(k, p, n);
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amplitudes()[static_cast<Eigen::Index>(k)];
    }
    return m;
}

/// Reduced state of a subset of sites.
class DensityMatrix {
public:
    DensityMatrix(std::vector<Party> parties, std::vector<SiteLabel> sites, Matrix matrix)
        : parties_(std::move(parties)), sites_(std::move(sites)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() != (Eigen::Index{1} << sites_.size())) {
            throw Error(ErrorKind::ConstraintViolation, "density matrix has the wrong dimension");
        }
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw Error(ErrorKind::ConstraintViolation, "density matrix is not Hermitian");
        }
        if (std::abs(matrix_.trace() - 1.0) > kNormTol) {
            throw Error(ErrorKind::ConstraintViolation, "density matrix trace is not 1");
        }
        if (eigenvalues().minCoeff() <= -1e-10) {
            throw Error(ErrorKind::ConstraintViolation, "density matrix is not positive semidefinite");
        }
    }

    const std::vector<Party>& parties() const noexcept { return parties_; }
    const std::vector<SiteLabel>& sites() const noexcept { return sites_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    /// Ascending eigenvalues.
    Eigen::VectorXd eigenvalues() const {
        return Eigen::SelfAdjointEigenSolver<Matrix>(matrix_, Eigen::EigenvaluesOnly).eigenvalues();
    }

    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    std::vector<Party> parties_;
    std::vector<SiteLabel> sites_;
    Matrix matrix_;
};

/// Partial trace over everything except `sites`; retained sites keep register order.
inline DensityMatrix reduced_density_of_sites(const PureState& s, std::span<const SiteLabel> sites) {
    if (sites.empty()) throw Error(ErrorKind::EmptySubset, "no sites retained");
    const auto pos = detail::sorted_positions(s.reg(), sites);
    const Matrix m = amplitude_matrix(s, sites);
    Matrix rho = m * m.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();

    std::set<Party> parties;
    for (auto p : pos) parties.insert(s.reg().sites()[p].party);
    return DensityMatrix({parties.begin(), parties.end()}, detail::labels_at(s.reg(), pos), std::move(rho));
}

inline void check_proper_party_subset(const Register& reg, std::span<const Party> parties) {
    if (parties.empty()) throw Error(ErrorKind::EmptySubset, "party subset is empty");
    std::set<Party> uniq(parties.begin(), parties.end());
    for (const auto& p : uniq) {
        if (!reg.has_party(p)) throw Error(ErrorKind::SemanticError, "unknown party " + p);
    }
    if (uniq.size() == reg.parties().size()) {
        throw Error(ErrorKind::EmptySubset, "party subset leaves nothing to trace out");
    }
}

/// Reduced density matrix of a proper, nonempty subset of parties.
inline DensityMatrix reduced_density(const PureState& s, std::span<const Party> parties) {
    check_proper_party_subset(s.reg(), parties);
    const auto labels = detail::labels_of_parties(s.reg(), parties);
    return reduced_density_of_sites(s, labels);
}

inline DensityMatrix reduced_density(const PureState& s, std::initializer_list<Party> parties) {
    return reduced_density(s, std::span<const Party>(parties.begin(), parties.size()));
}

/// Number of eigenvalues above `tol` times the largest.
inline int numeric_rank(const DensityMatrix& rho, double tol = kDefaultRankTol) {
    const auto ev = rho.eigenvalues();
    const double top = ev.maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] > tol * top) ++rank;
    }
    return std::max(rank, 1);
}

/// |<a|b>| for states on the same sites (register order may differ).
inline double overlap(const PureState& a, const PureState& b) {
    const auto order = a.reg().labels();
    const PureState bb = permuted(b, order);
    return std::abs(a.amplitudes().dot(bb.amplitudes()));
}

}  // namespace locc

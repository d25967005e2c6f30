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
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "locc/gates.hpp"
#include "locc/slocc.hpp"
#include "locc/state.hpp"

namespace locc {

inline constexpr double kDropProbability = 1e-14;
inline constexpr double kMatchTol = 1e-9;

/// Single-qubit projective measurement. Row k holds the components of the
/// k-th basis ket; outcome k is recorded as the integer k.
struct MeasurementBasis {
    std::string name;
    Matrix rows;

    static MeasurementBasis z() { return {"Z", gates::identity()}; }
    static MeasurementBasis x() { return {"X", gates::h()}; }
    static MeasurementBasis custom(Matrix rows) { return {"custom", std::move(rows)}; }
};

struct Branch {
    int outcome = 0;
    double probability = 0;
    PureState state;
};

namespace detail {

inline void require_owner(const Register& reg, const Party& party, SiteLabel site) {
    if (!reg.contains(site)) throw Error(ErrorKind::SiteOwnership, "site " + std::to_string(site) + " is not in the register");
    if (reg.party_of(site) != party) {
        throw Error(ErrorKind::SiteOwnership,
                    "site " + std::to_string(site) + " belongs to " + reg.party_of(site) + ", not " + party);
    }
}

/// Drops a site known to be in computational state |bit>.
inline PureState remove_definite_site(const PureState& s, SiteLabel label, int bit) {
    const auto& reg = s.reg();
    const std::size_t n = reg.size();
    const std::size_t p = reg.index_of(label);
    std::vector<Site> sites;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != p) sites.push_back(reg.sites()[i]);
    }
    Vector v(static_cast<Eigen::Index>(std::size_t{1} << (n - 1)));
    const std::size_t low_bits = n - 1 - p;
    for (std::size_t j = 0; j < static_cast<std::size_t>(v.size()); ++j) {
        const std::size_t high = j >> low_bits;
        const std::size_t low = j & ((std::size_t{1} << low_bits) - 1);
        const std::size_t k = (((high << 1) | static_cast<std::size_t>(bit)) << low_bits) | low;
        v[static_cast<Eigen::Index>(j)] = s.amplitudes()[static_cast<Eigen::Index>(k)];
    }
    return PureState::normalized(Register(std::move(sites)), std::move(v));
}

inline Matrix phi_plus_projector() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

}  // namespace detail

/// Born-rule branches of measuring `site` in `basis`. Post-states keep the
/// measured site (now in the outcome's basis ket) and are renormalized;
/// branches below 1e-14 are dropped.
inline std::vector<Branch> measure(const PureState& s, const Party& party, SiteLabel site, const MeasurementBasis& basis) {
    detail::require_owner(s.reg(), party, site);
    if (basis.rows.rows() != 2 || !gates::is_unitary(basis.rows)) {
        throw Error(ErrorKind::NotUnitary, "measurement basis rows are not orthonormal");
    }
    std::vector<Branch> out;
    const SiteLabel sites[] = {site};
    for (int k = 0; k < 2; ++k) {
        const Vector ket = basis.rows.row(k).transpose();
        const Matrix projector = ket * ket.adjoint();
        Vector post = apply_on_sites(s, sites, projector);
        const double p = post.squaredNorm();
        if (p < kDropProbability) continue;
        out.push_back({k, p, PureState::normalized(s.reg(), std::move(post))});
    }
    return out;
}

/// Applies a local unitary on sites all owned by `party`.
inline PureState apply_unitary(const PureState& s, const Party& party, std::span<const SiteLabel> sites, const Matrix& u) {
    if (!gates::is_unitary(u)) throw Error(ErrorKind::NotUnitary, "operator is not unitary");
    for (auto site : sites) detail::require_owner(s.reg(), party, site);
    return PureState(s.reg(), apply_on_sites(s, sites, u));
}

inline PureState apply_unitary(const PureState& s, const Party& party, std::initializer_list<SiteLabel> sites,
                               const Matrix& u) {
    return apply_unitary(s, party, std::span<const SiteLabel>(sites.begin(), sites.size()), u);
}

namespace detail {

inline void check_teleport(const PureState& s, SiteLabel source, SiteLabel near, SiteLabel far) {
    const auto& reg = s.reg();
    for (auto l : {source, near, far}) {
        if (!reg.contains(l)) throw Error(ErrorKind::SiteOwnership, "site " + std::to_string(l) + " is not in the register");
    }
    if (source == near || source == far || near == far) {
        throw Error(ErrorKind::MalformedProtocol, "teleportation needs three distinct sites");
    }
    if (reg.party_of(source) != reg.party_of(near)) {
        throw Error(ErrorKind::SiteOwnership, "source and near EPR half must belong to one party");
    }
    const SiteLabel pair[] = {near, far};
    const DensityMatrix rho = reduced_density_of_sites(s, pair);
    if ((rho.matrix() - phi_plus_projector()).cwiseAbs().maxCoeff() > kNormTol) {
        throw Error(ErrorKind::NotAnEprResource, "sites " + std::to_string(near) + "," + std::to_string(far) +
                                                     " do not hold (|00>+|11>)/sqrt2 in product with the rest");
    }
}

}  // namespace detail

/// Ideal teleportation of `source` through the EPR pair (near, far): all four
/// Bell outcomes are merged since their corrections give the same state. The
/// source and near sites leave the register; `far` takes over the source's role.
inline PureState teleport(const PureState& s, SiteLabel source, SiteLabel near, SiteLabel far) {
    detail::check_teleport(s, source, near, far);
    const auto& reg = s.reg();
    const std::size_t n = reg.size();
    const std::size_t ps = reg.index_of(source), pn = reg.index_of(near), pf = reg.index_of(far);

    std::vector<Site> sites;
    std::vector<std::size_t> kept;  // old positions of surviving sites
    for (std::size_t i = 0; i < n; ++i) {
        if (i == ps || i == pn) continue;
        sites.push_back(reg.sites()[i]);
        kept.push_back(i);
    }
    const std::size_t m = kept.size();
    Vector v(static_cast<Eigen::Index>(std::size_t{1} << m));
    const auto bit = [n](std::size_t pos) { return std::size_t{1} << (n - 1 - pos); };
    for (std::size_t j = 0; j < static_cast<std::size_t>(v.size()); ++j) {
        std::size_t k = 0;
        std::size_t src_value = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t b = (j >> (m - 1 - i)) & 1U;
            if (kept[i] == pf) {
                src_value = b;
            } else if (b) {
                k |= bit(kept[i]);
            }
        }
        if (src_value) k |= bit(ps);
        const cplx both0 = s.amplitudes()[static_cast<Eigen::Index>(k)];
        const cplx both1 = s.amplitudes()[static_cast<Eigen::Index>(k | bit(pn) | bit(pf))];
        v[static_cast<Eigen::Index>(j)] = (both0 + both1) / std::numbers::sqrt2;
    }
    return PureState::normalized(Register(std::move(sites)), std::move(v));
}

/// Teleportation with the Bell measurement kept explicit: outcome 2*m_source + m_near,
/// each branch already Pauli-corrected on `far`.
inline std::vector<Branch> teleport_branches(const PureState& s, SiteLabel source, SiteLabel near, SiteLabel far) {
    detail::check_teleport(s, source, near, far);
    const SiteLabel bell_pair[] = {source, near};
    const SiteLabel src_only[] = {source};
    const SiteLabel far_only[] = {far};
    PureState rotated(s.reg(), apply_on_sites(s, bell_pair, gates::cnot()));
    rotated = PureState(rotated.reg(), apply_on_sites(rotated, src_only, gates::h()));

    std::vector<Branch> out;
    const auto& owner = s.reg().party_of(source);
    for (auto& b1 : measure(rotated, owner, source, MeasurementBasis::z())) {
        for (auto& b2 : measure(b1.state, owner, near, MeasurementBasis::z())) {
            PureState st = b2.state;
            if (b2.outcome) st = PureState(st.reg(), apply_on_sites(st, far_only, gates::x()));
            if (b1.outcome) st = PureState(st.reg(), apply_on_sites(st, far_only, gates::z()));
            st = detail::remove_definite_site(st, source, b1.outcome);
            st = detail::remove_definite_site(st, near, b2.outcome);
            out.push_back({2 * b1.outcome + b2.outcome, b1.probability * b2.probability, std::move(st)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Protocols

/// Matches when the most recent measurement of `site` gave `outcome`.
struct Condition {
    SiteLabel site = 0;
    int outcome = 0;
};

struct MeasureStep {
    Party party;
    SiteLabel site = 0;
    MeasurementBasis basis = MeasurementBasis::z();
    std::vector<int> accept;  // empty: every outcome continues
};

struct UnitaryStep {
    Party party;
    std::vector<SiteLabel> sites;
    Matrix matrix;
    std::string name = "U";
    std::optional<Condition> when;
};

struct TeleportStep {
    SiteLabel source = 0;
    SiteLabel near = 0;
    SiteLabel far = 0;
    bool verbose = false;
};

/// A party brings in fresh qubits in a locally prepared state.
struct PrepareStep {
    Party party;
    PureState state;
};

/// Branches that do not satisfy every condition are aborted.
struct AcceptStep {
    std::vector<Condition> require;
};

/// Branches that satisfy every condition are aborted.
struct AbortStep {
    std::vector<Condition> when;
};

using Step = std::variant<MeasureStep, UnitaryStep, TeleportStep, PrepareStep, AcceptStep, AbortStep>;

enum class Equivalence { Exact, LuGhz, LuEpr };

inline std::string_view to_string(Equivalence e) {
    switch (e) {
        case Equivalence::Exact: return "exact";
        case Equivalence::LuGhz: return "ghz-lu";
        case Equivalence::LuEpr: return "epr-lu";
    }
    return "?";
}

struct Target {
    Equivalence mode = Equivalence::Exact;
    std::vector<SiteLabel> sites;   // designated sites (exact: the target state's sites)
    std::optional<PureState> state; // exact mode only

    static Target exact(PureState s) {
        Target t;
        t.mode = Equivalence::Exact;
        t.sites = s.reg().labels();
        t.state = std::move(s);
        return t;
    }
    static Target lu_ghz(SiteLabel a, SiteLabel b, SiteLabel c) { return {Equivalence::LuGhz, {a, b, c}, std::nullopt}; }
    static Target lu_epr(SiteLabel a, SiteLabel b) { return {Equivalence::LuEpr, {a, b}, std::nullopt}; }
};

struct Protocol {
    std::string name;
    std::vector<Step> steps;
    Target target;
    std::vector<std::string> notes;
};

namespace detail {

inline std::string sites_text(std::span<const SiteLabel> sites) {
    std::string s;
    for (std::size_t i = 0; i < sites.size(); ++i) s += (i ? "," : "") + std::to_string(sites[i]);
    return s;
}

inline std::string conditions_text(std::span<const Condition> cs) {
    std::string s;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        s += (i ? " and " : "") + std::to_string(cs[i].site) + "=" + std::to_string(cs[i].outcome);
    }
    return s;
}

}  // namespace detail

inline std::string describe(const Step& step) {
    struct Visitor {
        std::string operator()(const MeasureStep& m) const {
            std::string s = "Measure(" + m.party + ", site " + std::to_string(m.site) + ", " + m.basis.name + ")";
            if (m.accept.empty()) return s + " accept-all";
            s += " accept-on-";
            for (std::size_t i = 0; i < m.accept.size(); ++i) s += (i ? "," : "") + std::to_string(m.accept[i]);
            return s;
        }
        std::string operator()(const UnitaryStep& u) const {
            std::string s = "Unitary(" + u.party + ", (" + detail::sites_text(u.sites) + "), " + u.name + ")";
            if (u.when) s += " if " + std::to_string(u.when->site) + "=" + std::to_string(u.when->outcome);
            return s;
        }
        std::string operator()(const TeleportStep& t) const {
            return "Teleport(source " + std::to_string(t.source) + ", via " + std::to_string(t.near) + "->" +
                   std::to_string(t.far) + ")";
        }
        std::string operator()(const PrepareStep& p) const {
            return "Prepare(" + p.party + ", sites " + detail::sites_text(p.state.reg().labels()) + ")";
        }
        std::string operator()(const AcceptStep& a) const { return "Accept(" + detail::conditions_text(a.require) + ")"; }
        std::string operator()(const AbortStep& a) const { return "Abort(" + detail::conditions_text(a.when) + ")"; }
    };
    return std::visit(Visitor{}, step);
}

enum class NodeStatus { Interior, Success, Failure, Aborted };

inline std::string_view to_string(NodeStatus s) {
    switch (s) {
        case NodeStatus::Interior: return "interior";
        case NodeStatus::Success: return "success";
        case NodeStatus::Failure: return "failure";
        case NodeStatus::Aborted: return "aborted";
    }
    return "?";
}

/// One segment of a protocol run between branchings. `state` is the state at
/// the end of the segment: right before the children split off, or the final
/// state of a leaf.
struct BranchNode {
    std::string record;  // classical record so far, e.g. "C3=0 B4=1"
    std::string step;    // the step that created this node
    double probability = 1.0;
    NodeStatus status = NodeStatus::Interior;
    PureState state;
    std::vector<BranchNode> children;

    bool is_leaf() const noexcept { return children.empty(); }
};

struct RunResult {
    BranchNode root;
    double success_probability = 0;
    double failure_probability = 0;  // leaves that ran to the end but missed the target
    double aborted_probability = 0;

    std::vector<const BranchNode*> leaves() const {
        std::vector<const BranchNode*> out;
        collect(root, out);
        return out;
    }

private:
    static void collect(const BranchNode& n, std::vector<const BranchNode*>& out) {
        if (n.is_leaf()) out.push_back(&n);
        for (const auto& c : n.children) collect(c, out);
    }
};

namespace detail {

inline Register synthetic_register(std::span<const SiteLabel> labels) {
    std::vector<Site> sites;
    for (auto l : labels) sites.push_back({l, "s" + std::to_string(l)});
    return Register(std::move(sites));
}

/// The designated sites' reduced state, if it is pure; nullopt otherwise.
inline std::optional<PureState> pure_reduction(const PureState& s, std::span<const SiteLabel> sites) {
    const DensityMatrix rho = reduced_density_of_sites(s, sites);
    if (!(rho.purity() > 1 - kMatchTol)) return std::nullopt;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
    const Eigen::Index top = eig.eigenvalues().size() - 1;
    return PureState::normalized(synthetic_register(rho.sites()), eig.eigenvectors().col(top));
}

inline bool maximally_mixed_qubits(const PureState& s) {
    for (const auto& site : s.reg().sites()) {
        const SiteLabel one[] = {site.label};
        const auto ev = reduced_density_of_sites(s, one).eigenvalues();
        if (std::abs(ev[0] - 0.5) > kMatchTol || std::abs(ev[1] - 0.5) > kMatchTol) return false;
    }
    return true;
}

}  // namespace detail

/// Exact-mode fidelity |<target|leaf>| on the target's sites (squared-root of
/// <t|rho|t> so that it equals the overlap when the rest factors out).
inline double target_overlap(const PureState& leaf, const PureState& target) {
    const auto labels = target.reg().labels();
    const DensityMatrix rho = reduced_density_of_sites(leaf, labels);
    const PureState t = permuted(target, rho.sites());
    const double fid = t.amplitudes().dot(rho.matrix() * t.amplitudes()).real();
    return std::sqrt(std::max(fid, 0.0));
}

inline bool matches_target(const PureState& leaf, const Target& target) {
    for (auto l : target.sites) {
        if (!leaf.reg().contains(l)) return false;
    }
    switch (target.mode) {
        case Equivalence::Exact:
            return target.state && target_overlap(leaf, *target.state) > 1 - kMatchTol;
        case Equivalence::LuGhz: {
            if (target.sites.size() != 3) return false;
            const auto sub = detail::pure_reduction(leaf, target.sites);
            return sub && detail::maximally_mixed_qubits(*sub) && std::abs(three_tangle(*sub) - 1.0) <= kMatchTol;
        }
        case Equivalence::LuEpr: {
            if (target.sites.size() != 2) return false;
            const auto sub = detail::pure_reduction(leaf, target.sites);
            return sub && detail::maximally_mixed_qubits(*sub);
        }
    }
    return false;
}

namespace detail {

inline Error malformed_at(std::size_t i, const std::string& what) {
    return Error(ErrorKind::MalformedProtocol, "step " + std::to_string(i + 1) + ": " + what);
}

/// Walks the steps over the evolving register without simulating amplitudes.
inline void validate_protocol(const Register& initial, const Protocol& p) {
    std::vector<Site> sites = initial.sites();
    std::vector<SiteLabel> measured;
    const auto find = [&](SiteLabel l) {
        return std::find_if(sites.begin(), sites.end(), [l](const Site& s) { return s.label == l; });
    };
    const auto owned = [&](std::size_t i, const Party& party, SiteLabel l) {
        auto it = find(l);
        if (it == sites.end()) throw malformed_at(i, "site " + std::to_string(l) + " is not in the register");
        if (it->party != party) throw malformed_at(i, "site " + std::to_string(l) + " is not owned by " + party);
    };
    const auto known = [&](std::size_t i, const Condition& c) {
        if (std::find(measured.begin(), measured.end(), c.site) == measured.end()) {
            throw malformed_at(i, "condition on site " + std::to_string(c.site) + ", which was never measured");
        }
    };

    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const Step& step = p.steps[i];
        if (const auto* m = std::get_if<MeasureStep>(&step)) {
            owned(i, m->party, m->site);
            if (m->basis.rows.rows() != 2 || !gates::is_unitary(m->basis.rows)) {
                throw Error(ErrorKind::NotUnitary, "step " + std::to_string(i + 1) + ": basis is not orthonormal");
            }
            for (int a : m->accept) {
                if (a != 0 && a != 1) throw malformed_at(i, "accepted outcomes must be 0 or 1");
            }
            measured.push_back(m->site);
        } else if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            for (auto l : u->sites) owned(i, u->party, l);
            if (u->matrix.rows() != (Eigen::Index{1} << u->sites.size())) throw malformed_at(i, "operator dimension mismatch");
            if (!gates::is_unitary(u->matrix)) {
                throw Error(ErrorKind::NotUnitary, "step " + std::to_string(i + 1) + ": operator is not unitary");
            }
            if (u->when) known(i, *u->when);
        } else if (const auto* t = std::get_if<TeleportStep>(&step)) {
            auto s = find(t->source), n = find(t->near), f = find(t->far);
            if (s == sites.end() || n == sites.end() || f == sites.end()) throw malformed_at(i, "teleport site missing");
            if (t->source == t->near || t->source == t->far || t->near == t->far) {
                throw malformed_at(i, "teleport sites must be distinct");
            }
            if (s->party != n->party) throw malformed_at(i, "source and near EPR half have different owners");
            const SiteLabel src = t->source, nr = t->near;
            std::erase_if(sites, [&](const Site& x) { return x.label == src || x.label == nr; });
        } else if (const auto* pr = std::get_if<PrepareStep>(&step)) {
            for (const auto& site : pr->state.reg().sites()) {
                if (find(site.label) != sites.end()) throw malformed_at(i, "prepared site " + std::to_string(site.label) + " already exists");
                if (site.party != pr->party) throw malformed_at(i, "prepared sites must belong to " + pr->party);
                sites.push_back(site);
            }
        } else if (const auto* a = std::get_if<AcceptStep>(&step)) {
            for (const auto& c : a->require) known(i, c);
        } else if (const auto* ab = std::get_if<AbortStep>(&step)) {
            for (const auto& c : ab->when) known(i, c);
        }
    }
    for (auto l : p.target.sites) {
        if (find(l) == sites.end()) {
            throw Error(ErrorKind::MalformedProtocol, "target site " + std::to_string(l) + " is not in the final register");
        }
    }
    if (p.target.mode == Equivalence::Exact && !p.target.state) {
        throw Error(ErrorKind::MalformedProtocol, "exact target needs a state");
    }
}

using Record = std::vector<std::pair<SiteLabel, int>>;

inline bool holds(const Record& record, const Condition& c) {
    for (auto it = record.rbegin(); it != record.rend(); ++it) {
        if (it->first == c.site) return it->second == c.outcome;
    }
    return false;
}

inline std::string extend_record(const std::string& record, const std::string& entry) {
    return record.empty() ? entry : record + " " + entry;
}

class Runner {
public:
    Runner(const Protocol& p, RunResult& result) : p_(p), result_(result) {}

    void expand(BranchNode& node, PureState state, std::size_t from, Record record) {
        for (std::size_t i = from; i < p_.steps.size(); ++i) {
            const Step& step = p_.steps[i];
            if (const auto* m = std::get_if<MeasureStep>(&step)) {
                node.state = state;
                for (auto& b : measure(state, m->party, m->site, m->basis)) {
                    BranchNode child{extend_record(node.record, m->party + std::to_string(m->site) + "=" + std::to_string(b.outcome)),
                                     describe(step), node.probability * b.probability, NodeStatus::Interior, b.state, {}};
                    Record r = record;
                    r.emplace_back(m->site, b.outcome);
                    const bool accepted = m->accept.empty() ||
                                          std::find(m->accept.begin(), m->accept.end(), b.outcome) != m->accept.end();
                    if (accepted) {
                        expand(child, std::move(b.state), i + 1, std::move(r));
                    } else {
                        finish(child, NodeStatus::Aborted);
                    }
                    node.children.push_back(std::move(child));
                }
                return;
            }
            if (const auto* t = std::get_if<TeleportStep>(&step); t && t->verbose) {
                node.state = state;
                for (auto& b : teleport_branches(state, t->source, t->near, t->far)) {
                    BranchNode child{extend_record(node.record, "T" + std::to_string(t->source) + "=" +
                                                                    std::to_string(b.outcome >> 1) + std::to_string(b.outcome & 1)),
                                     describe(step), node.probability * b.probability, NodeStatus::Interior, b.state, {}};
                    expand(child, std::move(b.state), i + 1, record);
                    node.children.push_back(std::move(child));
                }
                return;
            }
            if (const auto* t = std::get_if<TeleportStep>(&step)) {
                state = teleport(state, t->source, t->near, t->far);
            } else if (const auto* u = std::get_if<UnitaryStep>(&step)) {
                if (!u->when || holds(record, *u->when)) state = apply_unitary(state, u->party, u->sites, u->matrix);
            } else if (const auto* pr = std::get_if<PrepareStep>(&step)) {
                state = tensor(state, pr->state);
            } else if (const auto* a = std::get_if<AcceptStep>(&step)) {
                const bool ok = std::all_of(a->require.begin(), a->require.end(), [&](const Condition& c) { return holds(record, c); });
                if (!ok) {
                    node.state = std::move(state);
                    finish(node, NodeStatus::Aborted);
                    return;
                }
            } else if (const auto* ab = std::get_if<AbortStep>(&step)) {
                const bool hit = std::all_of(ab->when.begin(), ab->when.end(), [&](const Condition& c) { return holds(record, c); });
                if (hit) {
                    node.state = std::move(state);
                    finish(node, NodeStatus::Aborted);
                    return;
                }
            }
        }
        node.state = std::move(state);
        finish(node, matches_target(node.state, p_.target) ? NodeStatus::Success : NodeStatus::Failure);
    }

private:
    void finish(BranchNode& node, NodeStatus status) {
        node.status = status;
        switch (status) {
            case NodeStatus::Success: result_.success_probability += node.probability; break;
            case NodeStatus::Failure: result_.failure_probability += node.probability; break;
            case NodeStatus::Aborted: result_.aborted_probability += node.probability; break;
            case NodeStatus::Interior: break;
        }
    }

    const Protocol& p_;
    RunResult& result_;
};

}  // namespace detail

/// Expands every measurement branch depth-first (outcome 0 before 1) and sums
/// the probability of leaves matching the protocol's target.
inline RunResult run_protocol(const PureState& s, const Protocol& p) {
    detail::validate_protocol(s.reg(), p);
    RunResult result{BranchNode{"", "start", 1.0, NodeStatus::Interior, s, {}}};
    detail::Runner(p, result).expand(result.root, s, 0, {});
    return result;
}

}  // namespace locc

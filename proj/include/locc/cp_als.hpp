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
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "locc/party_tensor.hpp"

namespace locc {

struct AlsConfig {
    int restarts = 32;
    int max_iters = 2000;
    double fit_tol = 1e-8;
    std::uint64_t seed = 0x5EED;
    // Tikhonov weight on each factor solve, scaled by the current residual so
    // it vanishes as the fit becomes exact. Keeps swamps from blowing up.
    double regularization = 1e-3;
    // Abandon a restart early once its convergence rate cannot reach fit_tol
    // within max_iters. Off means every failing restart runs all iterations.
    bool stall_stop = true;
    // 0 = std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned threads = 0;
};

/// Outcome of trying to write a tensor as a sum of `tested_rank` product terms.
struct RankProbeResult {
    int tested_rank = 0;
    double best_residual = std::numeric_limits<double>::infinity();  // relative Frobenius error
    bool converged = false;                                          // best_residual < fit_tol
    int restarts = 0;
    int converged_restarts = 0;
    int best_restart = -1;
    int best_iterations = 0;
    std::uint64_t seed = 0;
    AlsConfig config;
    std::vector<Matrix> factors;  // best fit, one dims[n] x rank matrix per mode
};

namespace detail {

inline constexpr int kStallWindow = 100;

struct AlsRun {
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    std::vector<Matrix> factors;
};

/// Index tables shared by every restart of one probe.
struct AlsLayout {
    std::vector<std::vector<int>> idx;             // multi-index per flat entry
    std::vector<Matrix> unfoldings;                // per mode
    std::vector<std::vector<std::size_t>> column_rep;  // per mode: one flat entry per unfolding column

    explicit AlsLayout(const PartyTensor& t) {
        const std::size_t modes = t.modes();
        idx.reserve(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) idx.push_back(t.multi_index(k));
        for (std::size_t n = 0; n < modes; ++n) {
            unfoldings.push_back(t.unfold(n));
            std::vector<std::size_t> rep(static_cast<std::size_t>(unfoldings.back().cols()));
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (idx[k][n] != 0) continue;
                std::size_t c = 0;
                for (std::size_t m = 0; m < modes; ++m) {
                    if (m != n) c = c * static_cast<std::size_t>(t.dims()[m]) + static_cast<std::size_t>(idx[k][m]);
                }
                rep[c] = k;
            }
            column_rep.push_back(std::move(rep));
        }
    }
};

inline Vector cp_model(const AlsLayout& layout, const std::vector<Matrix>& f, std::size_t size) {
    const Eigen::Index rank = f.front().cols();
    Vector out(static_cast<Eigen::Index>(size));
    for (std::size_t k = 0; k < size; ++k) {
        cplx sum = 0;
        for (Eigen::Index r = 0; r < rank; ++r) {
            cplx prod = 1;
            for (std::size_t m = 0; m < f.size(); ++m) prod *= f[m](layout.idx[k][m], r);
            sum += prod;
        }
        out[static_cast<Eigen::Index>(k)] = sum;
    }
    return out;
}

inline std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    return std::mt19937_64(seq);
}

inline AlsRun als_restart(const PartyTensor& t, const AlsLayout& layout, int rank, const AlsConfig& cfg, int restart) {
    auto rng = restart_rng(cfg.seed, restart);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const std::size_t modes = t.modes();

    AlsRun run;
    run.factors.resize(modes);
    for (std::size_t n = 0; n < modes; ++n) {
        Matrix& f = run.factors[n];
        f.resize(t.dims()[n], rank);
        for (Eigen::Index i = 0; i < f.rows(); ++i) {
            for (Eigen::Index r = 0; r < rank; ++r) f(i, r) = cplx(gauss(rng), gauss(rng));
        }
    }

    const double tnorm = t.data().norm();
    double residual = 1.0;
    double window_start = 0;
    std::vector<Matrix> z(modes);
    for (std::size_t n = 0; n < modes; ++n) z[n].resize(static_cast<Eigen::Index>(layout.column_rep[n].size()), rank);
    for (int it = 0; it < cfg.max_iters; ++it) {
        const double lambda = cfg.regularization * residual;
        for (std::size_t n = 0; n < modes; ++n) {
            // Khatri-Rao product of the other factors, one row per unfolding column.
            const auto& reps = layout.column_rep[n];
            Matrix& zn = z[n];
            zn.setOnes();
            for (std::size_t m = 0; m < modes; ++m) {
                if (m == n) continue;
                for (std::size_t c = 0; c < reps.size(); ++c) {
                    zn.row(static_cast<Eigen::Index>(c)).array() *= run.factors[m].row(layout.idx[reps[c]][m]).array();
                }
            }
            // Least squares for F in X ~ F Z^T:  F (Z^T conj(Z) + lambda I) = X conj(Z).
            const Matrix zc = zn.conjugate();
            Matrix gram = zn.transpose() * zc;
            gram.diagonal().array() += lambda;
            const Matrix rhs = layout.unfoldings[n] * zc;
            const Matrix gt = gram.transpose();
            Eigen::LLT<Matrix> llt(gt);
            if (lambda > 0 && llt.info() == Eigen::Success) {
                run.factors[n] = llt.solve(rhs.transpose()).transpose();
            } else {
                run.factors[n] = gt.completeOrthogonalDecomposition().solve(rhs.transpose()).transpose();
            }
        }
        // The last mode's unfolding gives the residual without rebuilding the model.
        const std::size_t last = modes - 1;
        residual = (layout.unfoldings[last] - run.factors[last] * z[last].transpose()).norm() / tnorm;
        run.iterations = it + 1;
        if (!std::isfinite(residual)) break;
        if (residual < cfg.fit_tol) break;
        // Give up on a run whose geometric rate over the last window cannot
        // reach fit_tol (with a 1000x margin) in the remaining iterations.
        if (cfg.stall_stop && (it + 1) % kStallWindow == 0) {
            if (window_start > 0 && residual > 0) {
                const double per_iter = std::log(residual / window_start) / kStallWindow;
                const double projected = std::log(residual) + per_iter * (cfg.max_iters - it - 1);
                if (projected > std::log(cfg.fit_tol * 1e3)) break;
            }
            window_start = residual;
        }
    }
    run.residual = std::isfinite(residual) ? residual : std::numeric_limits<double>::infinity();
    return run;
}

}  // namespace detail

/// Alternating least squares fit of a rank-`rank` CP decomposition with
/// complex factors, best over `config.restarts` seeded random starts.
inline RankProbeResult cp_rank_probe(const PartyTensor& t, int rank, const AlsConfig& config = {}) {
    if (rank < 1) throw Error(ErrorKind::ConstraintViolation, "candidate rank must be at least 1");
    if (config.restarts < 1) throw Error(ErrorKind::ConstraintViolation, "need at least one restart");

    const detail::AlsLayout layout(t);
    std::vector<detail::AlsRun> runs(static_cast<std::size_t>(config.restarts));

    unsigned workers = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(config.restarts));
    if (workers <= 1) {
        for (int i = 0; i < config.restarts; ++i) runs[static_cast<std::size_t>(i)] = detail::als_restart(t, layout, rank, config, i);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (int i = static_cast<int>(w); i < config.restarts; i += static_cast<int>(workers)) {
                    runs[static_cast<std::size_t>(i)] = detail::als_restart(t, layout, rank, config, i);
                }
            }));
        }
        for (auto& j : jobs) j.get();
    }

    RankProbeResult out;
    out.tested_rank = rank;
    out.restarts = config.restarts;
    out.seed = config.seed;
    out.config = config;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].residual < config.fit_tol) ++out.converged_restarts;
        if (runs[i].residual < out.best_residual) {
            out.best_residual = runs[i].residual;
            out.best_restart = static_cast<int>(i);
        }
    }
    if (out.best_restart >= 0) {
        auto& best = runs[static_cast<std::size_t>(out.best_restart)];
        out.best_iterations = best.iterations;
        out.factors = std::move(best.factors);
    }
    out.converged = out.best_residual < config.fit_tol;
    return out;
}

/// Estimated minimal number of product terms.
struct ProductTermEstimate {
    int terms = 0;
    int lower_bound = 0;      // max flattening rank: the only proven part
    bool heuristic = true;    // a failed probe below `terms` is evidence, not proof
    std::vector<RankProbeResult> probes;
};

/// Scans r upward from the largest flattening rank and returns the first r whose
/// probe converges. `cap` <= 0 means the tensor's entry count.
inline ProductTermEstimate product_term_estimate(const PartyTensor& t, const AlsConfig& config = {}, int cap = 0) {
    const auto ranks = flattening_ranks(t);
    ProductTermEstimate out;
    out.lower_bound = *std::max_element(ranks.begin(), ranks.end());
    if (cap <= 0) cap = static_cast<int>(t.size());
    for (int r = out.lower_bound; r <= cap; ++r) {
        out.probes.push_back(cp_rank_probe(t, r, config));
        if (out.probes.back().converged) {
            out.terms = r;
            return out;
        }
    }
    throw Error(ErrorKind::CapExceeded, "no rank up to " + std::to_string(cap) + " converged");
}

}  // namespace locc

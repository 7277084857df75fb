#include "vilcb/vi_lcb.hpp"

#include "vilcb/solve.hpp"
#include "vilcb/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace vilcb {

namespace {

std::vector<double> row_max(std::span<const double> q, int S, int A,
                            std::span<const std::uint8_t> valid = {}) {
    std::vector<double> v(S, 0.0);
    for (int s = 0; s < S; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < A; ++a) {
            if (!valid.empty() && !valid[static_cast<std::size_t>(s) * A + a])
                continue;
            best = std::max(best, q[static_cast<std::size_t>(s) * A + a]);
        }
        v[s] = best == -std::numeric_limits<double>::infinity() ? 0.0 : best;
    }
    return v;
}

Policy greedy_policy(std::span<const double> q, int S, int A, int steps,
                     std::span<const std::uint8_t> valid = {}) {
    std::vector<int> acts(static_cast<std::size_t>(steps) * S, 0);
    for (int h = 0; h < steps; ++h) {
        for (int s = 0; s < S; ++s) {
            const double* row = q.data() + (static_cast<std::size_t>(h) * S + s) * A;
            int best = -1;
            for (int a = 0; a < A; ++a) {
                if (!valid.empty() && !valid[static_cast<std::size_t>(s) * A + a])
                    continue;
                if (best < 0 || row[a] > row[best])
                    best = a;
            }
            acts[static_cast<std::size_t>(h) * S + s] = best < 0 ? 0 : best;
        }
    }
    return Policy::make_deterministic(S, A, std::move(acts), steps);
}

} // namespace

std::vector<double> pessimistic_operator(std::span<const double> q_in,
                                         std::span<const double> kernel,
                                         std::span<const double> reward, double gamma,
                                         const PenaltyConfig& cfg,
                                         const CountTable& counts) {
    const int S = counts.num_states, A = counts.num_actions;
    const double cap = 1.0 / (1.0 - gamma);
    for (double x : q_in)
        if (!(x >= -1e-9 && x <= cap + 1e-9))
            throw std::invalid_argument("pessimistic_operator: Q outside [0, 1/(1-gamma)]");
    const std::vector<double> v = row_max(q_in, S, A);
    const std::vector<double> b = penalty_bernstein_infinite(counts, kernel, v, cfg, gamma);
    std::vector<double> out(q_in.size(), 0.0);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const std::size_t cell = static_cast<std::size_t>(s) * A + a;
            const double* row = kernel.data() + cell * S;
            double dot = 0.0;
            for (int s2 = 0; s2 < S; ++s2)
                dot += row[s2] * v[s2];
            out[cell] = std::max(reward[cell] + gamma * dot - b[cell], 0.0);
        }
    return out;
}

int default_tau_max_infinite(std::int64_t n, double gamma) {
    const double n_eff = static_cast<double>(std::max<std::int64_t>(n, 1));
    const double tau = std::log(n_eff / (1.0 - gamma)) / std::log(1.0 / gamma);
    return std::max(1, static_cast<int>(std::ceil(tau)));
}

int default_tau_max_markov(std::int64_t t, double gamma) {
    const double t_eff = static_cast<double>(std::max<std::int64_t>(t, 1));
    const double tau = std::log(t_eff / (1.0 - gamma)) / (1.0 - gamma);
    return std::max(1, static_cast<int>(std::ceil(tau)));
}

VILCBResult vi_lcb_infinite_model(std::span<const double> kernel, const CountTable& counts,
                                  double gamma, std::span<const double> reward,
                                  PenaltyConfig cfg, int tau_max, double stop_tol,
                                  bool penalize) {
    const int S = counts.num_states, A = counts.num_actions;
    if (counts.horizon != 0)
        throw std::invalid_argument("vi_lcb_infinite_model: expected flat counts");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("vi_lcb_infinite_model: gamma must lie in [0, 1)");
    if (penalize && gamma < 0.5)
        std::cerr << "vi_lcb: warning: gamma = " << gamma
                  << " is below the [1/2, 1) range of the contraction analysis\n";
    if (tau_max < 0)
        tau_max = default_tau_max_infinite(cfg.sample_size, gamma);

    VILCBResult res;
    res.counts = counts.state_action;
    res.q.assign(static_cast<std::size_t>(S) * A, 0.0);
    res.penalty.assign(res.q.size(), 0.0);
    std::vector<double> q_next(res.q.size(), 0.0);
    std::vector<double> v(S, 0.0);
    for (int tau = 0; tau < tau_max; ++tau) {
        v = row_max(res.q, S, A);
        if (penalize)
            res.penalty = penalty_bernstein_infinite(counts, kernel, v, cfg, gamma);
        double delta = 0.0;
        for (std::size_t cell = 0; cell < res.q.size(); ++cell) {
            const double* row = kernel.data() + cell * S;
            double dot = 0.0;
            for (int s2 = 0; s2 < S; ++s2)
                dot += row[s2] * v[s2];
            const double val = std::max(reward[cell] + gamma * dot - res.penalty[cell], 0.0);
            delta = std::max(delta, std::abs(val - res.q[cell]));
            q_next[cell] = val;
        }
        res.q.swap(q_next);
        res.deltas.push_back(delta);
        ++res.iterations;
        if (stop_tol > 0.0 && delta <= stop_tol)
            break;
    }
    res.value = row_max(res.q, S, A);
    res.policy = greedy_policy(res.q, S, A, 1);
    return res;
}

VILCBResult vi_lcb_infinite(const TransitionDataset& ds, int S, int A, double gamma,
                            std::span<const double> reward, PenaltyConfig cfg, int tau_max,
                            double stop_tol) {
    const CountTable counts = count(ds, S, A);
    const std::vector<double> kernel = empirical_kernel(ds, counts);
    cfg = cfg.with_sample_size(ds.size());
    return vi_lcb_infinite_model(kernel, counts, gamma, reward, cfg, tau_max, stop_tol,
                                 /*penalize=*/true);
}

VILCBResult vi_lcb_finite_model(std::span<const double> kernel, const CountTable& counts,
                                std::span<const double> reward, PenaltyConfig cfg,
                                std::span<const std::uint8_t> valid_actions,
                                bool penalize) {
    const int S = counts.num_states, A = counts.num_actions, H = counts.horizon;
    if (H <= 0)
        throw std::invalid_argument("vi_lcb_finite_model: expected stepped counts");
    if (!valid_actions.empty() && static_cast<int>(valid_actions.size()) != S * A)
        throw std::invalid_argument("vi_lcb_finite_model: mask must have S*A entries");

    VILCBResult res;
    res.counts = counts.state_action;
    res.q.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    res.value.assign(static_cast<std::size_t>(H) * S, 0.0);
    res.penalty.assign(res.q.size(), 0.0);
    res.deltas.assign(H, 0.0);
    std::vector<double> v_next(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        const std::size_t cell0 = static_cast<std::size_t>(h) * S * A;
        std::vector<double> b(static_cast<std::size_t>(S) * A, 0.0);
        if (penalize)
            b = penalty_bernstein_finite(
                std::span<const std::int64_t>(counts.state_action.data() + cell0,
                                              static_cast<std::size_t>(S) * A),
                std::span<const double>(kernel.data() + cell0 * S,
                                        static_cast<std::size_t>(S) * A * S),
                v_next, cfg, H, S, A);
        double step_delta = 0.0;
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::size_t cell = static_cast<std::size_t>(s) * A + a;
                if (!valid_actions.empty() && !valid_actions[cell]) {
                    res.q[cell0 + cell] = 0.0;
                    continue;
                }
                const double* row = kernel.data() + (cell0 + cell) * S;
                double dot = 0.0;
                for (int s2 = 0; s2 < S; ++s2)
                    dot += row[s2] * v_next[s2];
                const double val = std::max(reward[cell0 + cell] + dot - b[cell], 0.0);
                res.q[cell0 + cell] = val;
                res.penalty[cell0 + cell] = b[cell];
                step_delta = std::max(step_delta, val);
            }
        res.deltas[h] = step_delta; // single pass: the update magnitude at step h
        const std::vector<double> vh = row_max(
            std::span<const double>(res.q.data() + cell0, static_cast<std::size_t>(S) * A),
            S, A, valid_actions);
        std::copy(vh.begin(), vh.end(), res.value.begin() + static_cast<std::size_t>(h) * S);
        v_next = vh;
    }
    res.iterations = H;
    res.policy = greedy_policy(res.q, S, A, H, valid_actions);
    return res;
}

VILCBResult vi_lcb_finite(const TransitionDataset& ds, int S, int A, int H,
                          std::span<const double> reward, PenaltyConfig cfg,
                          std::span<const std::uint8_t> valid_actions) {
    const CountTable counts = count(ds, S, A, H);
    const std::vector<double> kernel = empirical_kernel(ds, counts);
    cfg = cfg.with_sample_size(ds.size());
    return vi_lcb_finite_model(kernel, counts, reward, cfg, valid_actions,
                               /*penalize=*/true);
}

VILCBResult subsampled_vi_lcb_finite(const EpisodicDataset& ds, int S, int A,
                                     std::span<const double> reward, PenaltyConfig cfg,
                                     std::uint64_t seed, SubsampleTrace* trace) {
    auto [main_ds, aux_ds] = split_episodic(ds);
    CountTable aux_counts = count(aux_ds, S, A);
    const std::vector<std::int64_t> trim =
        trim_counts_finite(state_counts(aux_counts), cfg.delta, ds.horizon, S);
    const TransitionDataset trimmed = subsample_finite(main_ds, trim, S, seed);
    if (trace) {
        trace->main = count(main_ds, S, A);
        aux_counts.trimmed = trim;
        trace->aux = std::move(aux_counts);
    }
    return vi_lcb_finite(trimmed, S, A, ds.horizon, reward, cfg);
}

VILCBResult subsampled_vi_lcb_markov(const MarkovTrajectory& traj, int S, int A,
                                     double gamma, std::span<const double> reward,
                                     PenaltyConfig cfg, std::optional<double> t_mix,
                                     int tau_max, SubsampleTrace* trace) {
    auto [main_ds, aux_ds] = split_markov(traj);
    CountTable aux_counts = count(aux_ds, S, A);
    const CountTable main_counts = count(main_ds, S, A);
    std::vector<std::int64_t> trim(static_cast<std::size_t>(S) * A, 0);
    if (t_mix.has_value()) {
        const std::int64_t k = std::llround(665.0 * *t_mix);
        trim = trim_counts_markov(aux_counts.state_action, k, cfg.delta, S, A);
    } else {
        for (std::size_t cell = 0; cell < trim.size(); ++cell) {
            const std::int64_t k = adaptive_k(aux_counts.state_action[cell],
                                              main_counts.state_action[cell], cfg.delta, S,
                                              A);
            trim[cell] =
                trim_counts_markov(aux_counts.state_action[cell], k, cfg.delta, S, A);
        }
    }
    const TransitionDataset trimmed = subsample_markov(main_ds, trim, S, A);
    if (trace) {
        trace->main = main_counts;
        aux_counts.trimmed = trim;
        trace->aux = std::move(aux_counts);
    }
    if (tau_max < 0)
        tau_max = default_tau_max_markov(traj.num_transitions(), gamma);
    return vi_lcb_infinite(trimmed, S, A, gamma, reward, cfg, tau_max);
}

VILCBResult plain_vi_infinite(const TransitionDataset& ds, int S, int A, double gamma,
                              std::span<const double> reward, int tau_max) {
    const CountTable counts = count(ds, S, A);
    const std::vector<double> kernel = empirical_kernel(ds, counts);
    PenaltyConfig cfg;
    cfg = cfg.with_sample_size(ds.size());
    return vi_lcb_infinite_model(kernel, counts, gamma, reward, cfg, tau_max, 0.0,
                                 /*penalize=*/false);
}

VILCBResult plain_vi_finite(const TransitionDataset& ds, int S, int A, int H,
                            std::span<const double> reward,
                            std::span<const std::uint8_t> valid_actions) {
    const CountTable counts = count(ds, S, A, H);
    const std::vector<double> kernel = empirical_kernel(ds, counts);
    PenaltyConfig cfg;
    cfg = cfg.with_sample_size(ds.size());
    return vi_lcb_finite_model(kernel, counts, reward, cfg, valid_actions,
                               /*penalize=*/false);
}

} // namespace vilcb

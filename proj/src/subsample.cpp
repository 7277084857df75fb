#include "vilcb/subsample.hpp"

#include "vilcb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vilcb {

namespace {

// Comparison slack for thresholds derived from logarithms; see header.
constexpr double kThresholdSlack = 1e-9;

void check_delta(double delta, const char* what) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument(std::string(what) + ": delta must lie in (0, 1)");
}

} // namespace

std::pair<EpisodicDataset, EpisodicDataset> split_episodic(const EpisodicDataset& ds) {
    EpisodicDataset main_ds, aux_ds;
    main_ds.horizon = aux_ds.horizon = ds.horizon;
    main_ds.initial_dist = aux_ds.initial_dist = ds.initial_dist;
    main_ds.behavior = aux_ds.behavior = ds.behavior;
    const std::size_t k = ds.trajectories.size();
    const std::size_t half = (k + 1) / 2; // odd K: ceil(K/2) to main
    main_ds.trajectories.assign(ds.trajectories.begin(), ds.trajectories.begin() + half);
    aux_ds.trajectories.assign(ds.trajectories.begin() + half, ds.trajectories.end());
    return {std::move(main_ds), std::move(aux_ds)};
}

std::vector<std::int64_t> trim_counts_finite(std::span<const std::int64_t> aux_state_counts,
                                             double delta, int H, int S) {
    check_delta(delta, "trim_counts_finite");
    if (static_cast<int>(aux_state_counts.size()) != H * S)
        throw std::invalid_argument("trim_counts_finite: expected H*S counts");
    const double log_term = std::log(static_cast<double>(H) * S / delta);
    std::vector<std::int64_t> out(aux_state_counts.size(), 0);
    for (std::size_t i = 0; i < aux_state_counts.size(); ++i) {
        const double n = static_cast<double>(aux_state_counts[i]);
        const double trimmed = n - 10.0 * std::sqrt(n * log_term);
        if (trimmed > 0.0)
            out[i] = static_cast<std::int64_t>(std::floor(trimmed + kThresholdSlack));
    }
    return out;
}

TransitionDataset subsample_finite(const EpisodicDataset& main,
                                   std::span<const std::int64_t> trim, int S,
                                   std::uint64_t seed) {
    const int H = main.horizon;
    if (static_cast<int>(trim.size()) != H * S)
        throw std::invalid_argument("subsample_finite: expected H*S trim counts");

    // Group main-set transition indices by (h, s).
    struct Ref { int traj; int step; };
    std::vector<std::vector<Ref>> cells(static_cast<std::size_t>(H) * S);
    for (std::size_t k = 0; k < main.trajectories.size(); ++k) {
        const auto& traj = main.trajectories[k];
        for (int h = 0; h < H; ++h)
            cells[static_cast<std::size_t>(h) * S + traj.states[h]].push_back(
                {static_cast<int>(k), h});
    }

    TransitionDataset out;
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        auto& refs = cells[cell];
        const std::int64_t want =
            std::min<std::int64_t>(trim[cell], static_cast<std::int64_t>(refs.size()));
        if (want <= 0)
            continue;
        // Partial Fisher-Yates: after `want` swaps the prefix is a uniform
        // draw without replacement.
        Rng rng(derive_seed(seed, "subsample_finite", cell));
        for (std::int64_t i = 0; i < want; ++i) {
            const std::uint64_t j =
                i + rng.next_below(static_cast<std::uint64_t>(refs.size() - i));
            std::swap(refs[i], refs[j]);
        }
        for (std::int64_t i = 0; i < want; ++i) {
            const auto& traj = main.trajectories[refs[i].traj];
            const int h = refs[i].step;
            out.push(h, traj.states[h], traj.actions[h], traj.states[h + 1]);
        }
    }
    return out;
}

std::pair<TransitionDataset, TransitionDataset> split_markov(const MarkovTrajectory& traj) {
    TransitionDataset main_ds, aux_ds;
    const std::int64_t total = traj.num_transitions();
    const std::int64_t half = total / 2; // odd T: floor(T/2) to main
    for (std::int64_t t = 0; t < total; ++t) {
        auto& target = t < half ? main_ds : aux_ds;
        target.push(traj.states[t], traj.actions[t], traj.states[t + 1]);
    }
    return {std::move(main_ds), std::move(aux_ds)};
}

std::int64_t trim_counts_markov(std::int64_t aux_count, std::int64_t k, double delta, int S,
                                int A) {
    check_delta(delta, "trim_counts_markov");
    if (k < 0)
        throw std::invalid_argument("trim_counts_markov: k must be nonnegative");
    const double threshold =
        static_cast<double>(k) * std::log(static_cast<double>(S) * A / delta);
    if (static_cast<double>(aux_count) <= threshold + kThresholdSlack)
        return 0;
    return aux_count / 3;
}

std::vector<std::int64_t> trim_counts_markov(std::span<const std::int64_t> aux_counts,
                                             std::int64_t k, double delta, int S, int A) {
    std::vector<std::int64_t> out(aux_counts.size(), 0);
    for (std::size_t i = 0; i < aux_counts.size(); ++i)
        out[i] = trim_counts_markov(aux_counts[i], k, delta, S, A);
    return out;
}

std::int64_t adaptive_k(std::int64_t aux_count, std::int64_t main_count, double delta, int S,
                        int A) {
    for (std::int64_t k = 0;; ++k)
        if (trim_counts_markov(aux_count, k, delta, S, A) <= main_count)
            return k;
}

TransitionDataset subsample_markov(const TransitionDataset& main_in_order,
                                   std::span<const std::int64_t> trim, int S, int A) {
    if (static_cast<int>(trim.size()) != S * A)
        throw std::invalid_argument("subsample_markov: expected S*A trim counts");
    if (main_in_order.has_steps())
        throw std::invalid_argument("subsample_markov: expected a flat transition set");
    std::vector<std::int64_t> taken(static_cast<std::size_t>(S) * A, 0);
    TransitionDataset out;
    for (const auto& t : main_in_order.transitions) {
        const std::size_t cell = static_cast<std::size_t>(t.state) * A + t.action;
        if (taken[cell] < trim[cell]) {
            ++taken[cell];
            out.transitions.push_back(t);
        }
    }
    return out;
}

std::vector<int> visit_index_regroup(const MarkovTrajectory& traj, int s, int a) {
    std::vector<int> successors;
    const std::int64_t total = traj.num_transitions();
    for (std::int64_t t = 0; t < total; ++t)
        if (traj.states[t] == s && traj.actions[t] == a)
            successors.push_back(traj.states[t + 1]);
    return successors;
}

} // namespace vilcb

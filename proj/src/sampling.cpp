#include "vilcb/sampling.hpp"

#include "vilcb/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vilcb {

namespace {

void check_dist(std::span<const double> d, const char* what) {
    double sum = 0.0;
    for (double v : d) {
        if (v < 0.0)
            throw std::invalid_argument(std::string(what) + ": negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": distribution not normalized");
}

int sample_action(Rng& rng, const Policy& pi, int step, int s) {
    if (pi.deterministic())
        return pi.action(step, s);
    const std::size_t row =
        (static_cast<std::size_t>(pi.steps == 1 ? 0 : step) * pi.num_states + s) *
        pi.num_actions;
    return rng.next_categorical(
        std::span<const double>(pi.probs.data() + row, pi.num_actions));
}

} // namespace

TransitionDataset gen_iid(const DiscountedMDP& mdp, std::span<const double> d_b,
                          std::int64_t n, std::uint64_t seed) {
    const int S = mdp.num_states, A = mdp.num_actions;
    if (static_cast<int>(d_b.size()) != S * A)
        throw std::invalid_argument("gen_iid: d_b must have S*A entries");
    check_dist(d_b, "gen_iid");
    Rng rng(derive_seed(seed, "gen_iid"));
    TransitionDataset ds;
    ds.transitions.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const int cell = rng.next_categorical(d_b);
        const int s = cell / A, a = cell % A;
        const int s2 = rng.next_categorical(mdp.kernel_row(s, a));
        ds.push(s, a, s2);
    }
    return ds;
}

EpisodicDataset gen_episodic(const EpisodicMDP& mdp, std::span<const double> rho_b,
                             const Policy& pi_b, std::int64_t num_trajectories,
                             std::uint64_t seed) {
    const int S = mdp.num_states, H = mdp.horizon;
    if (static_cast<int>(rho_b.size()) != S)
        throw std::invalid_argument("gen_episodic: rho_b must have S entries");
    check_dist(rho_b, "gen_episodic");
    EpisodicDataset ds;
    ds.horizon = H;
    ds.initial_dist.assign(rho_b.begin(), rho_b.end());
    ds.behavior = pi_b;
    ds.trajectories.reserve(static_cast<std::size_t>(num_trajectories));
    for (std::int64_t k = 0; k < num_trajectories; ++k) {
        Rng rng(derive_seed(seed, "gen_episodic", static_cast<std::uint64_t>(k)));
        EpisodicTrajectory traj;
        traj.states.reserve(H + 1);
        traj.actions.reserve(H);
        int s = rng.next_categorical(rho_b);
        traj.states.push_back(s);
        for (int h = 0; h < H; ++h) {
            const int a = sample_action(rng, pi_b, h, s);
            const int s2 = rng.next_categorical(mdp.kernel_row(h, s, a));
            traj.actions.push_back(a);
            traj.states.push_back(s2);
            s = s2;
        }
        ds.trajectories.push_back(std::move(traj));
    }
    return ds;
}

MarkovTrajectory gen_markov(const DiscountedMDP& mdp, const Policy& pi_b, int start_state,
                            std::int64_t num_transitions, std::uint64_t seed) {
    if (start_state < 0 || start_state >= mdp.num_states)
        throw std::invalid_argument("gen_markov: start state out of range");
    Rng rng(derive_seed(seed, "gen_markov"));
    MarkovTrajectory traj;
    traj.behavior = pi_b;
    traj.start_state = start_state;
    traj.states.reserve(static_cast<std::size_t>(num_transitions) + 1);
    traj.actions.reserve(static_cast<std::size_t>(num_transitions) + 1);
    int s = start_state;
    for (std::int64_t t = 0; t <= num_transitions; ++t) {
        const int a = sample_action(rng, pi_b, 0, s);
        traj.states.push_back(s);
        traj.actions.push_back(a);
        if (t < num_transitions)
            s = rng.next_categorical(mdp.kernel_row(s, a));
    }
    return traj;
}

} // namespace vilcb

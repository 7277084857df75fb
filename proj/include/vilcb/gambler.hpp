#pragma once

#include "vilcb/dataset.hpp"
#include "vilcb/mdp.hpp"

#include <cstdint>
#include <vector>

namespace vilcb {

/// The coin-betting benchmark: states are balances {0..50}, the stake at
/// balance s is an action in {0..min(s, 50-s)}, the coin lands heads with
/// probability p_head, reward 1 accrues in state 50 and nowhere else, and
/// both 0 and 50 absorb. Invalid stakes are masked: encoded as self-loops
/// with zero reward so the action space stays rectangular, never optimal and
/// never sampled by the data-collection scheme.
struct GamblerSpec {
    int num_states = 51;
    int num_actions = 26; // stakes 0..25
    int horizon = 100;
    double p_head = 0.45;

    int max_stake(int s) const {
        const int cap = num_states - 1 - s;
        return s < cap ? s : cap;
    }
    bool valid(int s, int a) const { return a <= max_stake(s); }

    EpisodicMDP build_mdp() const;
    std::vector<std::uint8_t> action_mask() const; // [S*A]
    std::vector<double> uniform_rho() const;
    std::int64_t num_valid_cells() const; // per step
};

/// Empirical model from the paper-style batch: n_per_cell independent draws
/// for every valid (s, a) at every step. Equivalent to materializing the
/// transition list but samples per-cell binomials directly (each stake is a
/// coin flip), which keeps the largest grid points tractable. Deterministic
/// per seed; cell streams are derived independently of generation order.
struct GamblerEmpirical {
    std::vector<double> kernel; // [H*S*A*S]
    CountTable counts;          // stepped
    std::int64_t total_samples = 0;
};

GamblerEmpirical sample_gambler_model(const GamblerSpec& spec, std::int64_t n_per_cell,
                                      std::uint64_t seed);

/// Alternative reading of the batch size: n_total transitions spread uniformly
/// at random over the valid (s, a, h) cells.
GamblerEmpirical sample_gambler_model_total(const GamblerSpec& spec, std::int64_t n_total,
                                            std::uint64_t seed);

} // namespace vilcb

#pragma once

#include "vilcb/dataset.hpp"
#include "vilcb/mdp.hpp"

#include <cstdint>
#include <span>

namespace vilcb {

/// N independent draws (s_i, a_i) ~ d_b (a distribution over state-action
/// pairs, [S*A]) followed by s' ~ P(.|s,a). Deterministic per seed.
TransitionDataset gen_iid(const DiscountedMDP& mdp, std::span<const double> d_b,
                          std::int64_t n, std::uint64_t seed);

/// K i.i.d. trajectories rolled forward from rho_b under the behavior policy.
EpisodicDataset gen_episodic(const EpisodicMDP& mdp, std::span<const double> rho_b,
                             const Policy& pi_b, std::int64_t num_trajectories,
                             std::uint64_t seed);

/// Single Markovian rollout of T transitions starting from start_state
/// (T+1 states, T+1 actions).
MarkovTrajectory gen_markov(const DiscountedMDP& mdp, const Policy& pi_b, int start_state,
                            std::int64_t num_transitions, std::uint64_t seed);

} // namespace vilcb

#pragma once

#include "vilcb/dataset.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vilcb {

/// Splits K trajectories into halves: the first ceil(K/2) form the main set,
/// the remainder the auxiliary set.
std::pair<EpisodicDataset, EpisodicDataset> split_episodic(const EpisodicDataset& ds);

/// N^trim_h(s) = max{ N^aux_h(s) - 10*sqrt(N^aux_h(s)*ln(HS/delta)), 0 },
/// floored to an integer. aux_state_counts is [H*S] (see state_counts()).
/// Floors use a 1e-9 slack so thresholds that are exact in real arithmetic do
/// not flip on rounding of the log.
std::vector<std::int64_t> trim_counts_finite(std::span<const std::int64_t> aux_state_counts,
                                             double delta, int H, int S);

/// For each (s, h) draws min{N^trim_h(s), N^main_h(s)} transitions uniformly
/// at random without replacement from the main set's transitions at (s, h).
/// Returns a step-annotated TransitionDataset.
TransitionDataset subsample_finite(const EpisodicDataset& main,
                                   std::span<const std::int64_t> trim, int S,
                                   std::uint64_t seed);

/// Splits a rollout into the first floor(T/2) transitions (main) and the rest
/// (aux), each as flat transition sets in trajectory order.
std::pair<TransitionDataset, TransitionDataset> split_markov(const MarkovTrajectory& traj);

/// N^trim_k(s,a) = floor(N^aux(s,a)/3) * 1{N^aux(s,a) > k*ln(SA/delta)}.
/// The indicator carries the same 1e-9 comparison slack as the finite trim.
std::int64_t trim_counts_markov(std::int64_t aux_count, std::int64_t k, double delta, int S,
                                int A);
std::vector<std::int64_t> trim_counts_markov(std::span<const std::int64_t> aux_counts,
                                             std::int64_t k, double delta, int S, int A);

/// Smallest k >= 0 with trim_counts_markov(aux, k) <= main; scans upward from
/// 0 (the trim is nonincreasing in k and eventually 0, so the scan terminates).
std::int64_t adaptive_k(std::int64_t aux_count, std::int64_t main_count, double delta, int S,
                        int A);

/// Keeps, per (s,a), the FIRST trim(s,a) transitions of the main set in
/// trajectory order (all of them when the trim exceeds the count). The
/// deliberate contrast with the random episodic draw follows the source
/// procedure for Markovian data.
TransitionDataset subsample_markov(const TransitionDataset& main_in_order,
                                   std::span<const std::int64_t> trim, int S, int A);

/// Successor states at the visit times of (s, a): s_{t_i(s,a)+1} for
/// t_1 < t_2 < ... < T.
std::vector<int> visit_index_regroup(const MarkovTrajectory& traj, int s, int a);

} // namespace vilcb

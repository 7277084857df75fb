#pragma once

#include "vilcb/dataset.hpp"
#include "vilcb/mdp.hpp"
#include "vilcb/penalty.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vilcb {

/// Output of the VI-LCB solvers and of the plain-VI baseline. q/value/penalty
/// are [S*A]/[S]/[S*A] for the discounted solvers and [H*S*A]/[H*S]/[H*S*A]
/// for the episodic one; counts mirrors the penalty layout.
struct VILCBResult {
    std::vector<double> q;
    std::vector<double> value;
    std::vector<double> penalty;          // final-iteration penalties
    std::vector<std::int64_t> counts;     // N(s,a) of the dataset used
    Policy policy;                        // greedy, lowest-index ties
    int iterations = 0;
    std::vector<double> deltas;           // sup-norm change per sweep
};

/// One application of the pessimistic Bellman operator
///   T(Q)(s,a) = max{ r(s,a) + gamma Phat_{s,a} V - b(s,a;V), 0 },
/// V(s) = max_a Q(s,a), with the Bernstein penalty of penalty.hpp.
std::vector<double> pessimistic_operator(std::span<const double> q_in,
                                         std::span<const double> kernel,
                                         std::span<const double> reward, double gamma,
                                         const PenaltyConfig& cfg, const CountTable& counts);

/// tau_max = ceil(ln(N/(1-gamma)) / ln(1/gamma)), enough for 1/N accuracy of
/// the fixed point.
int default_tau_max_infinite(std::int64_t n, double gamma);
/// tau_max = ceil(ln(T/(1-gamma)) / (1-gamma)) for the Markovian pipeline.
int default_tau_max_markov(std::int64_t t, double gamma);

/// VI-LCB for discounted MDPs: builds the empirical model from the dataset and
/// iterates the pessimistic operator from Q = 0 for tau_max sweeps (default
/// from default_tau_max_infinite). Runs exactly tau_max sweeps so residual
/// logs are comparable; stop_tol > 0 enables an early exit for interactive
/// use. gamma below 1/2 is accepted with a warning (outside the contraction
/// analysis range). An empty dataset is allowed and yields the fully
/// pessimistic zero solution.
VILCBResult vi_lcb_infinite(const TransitionDataset& ds, int S, int A, double gamma,
                            std::span<const double> reward, PenaltyConfig cfg,
                            int tau_max = -1, double stop_tol = 0.0);

/// Core of vi_lcb_infinite on a prebuilt empirical model.
VILCBResult vi_lcb_infinite_model(std::span<const double> kernel, const CountTable& counts,
                                  double gamma, std::span<const double> reward,
                                  PenaltyConfig cfg, int tau_max = -1,
                                  double stop_tol = 0.0, bool penalize = true);

/// VI-LCB for episodic MDPs: a single backward pass h = H..1 with
/// V_{H+1} = 0. The optional valid-action mask ([S*A], nonzero = valid)
/// supports MDPs with state-dependent action sets encoded by masking; masked
/// cells are pinned to Q = 0 and skipped by the argmax.
VILCBResult vi_lcb_finite(const TransitionDataset& ds, int S, int A, int H,
                          std::span<const double> reward, PenaltyConfig cfg,
                          std::span<const std::uint8_t> valid_actions = {});

VILCBResult vi_lcb_finite_model(std::span<const double> kernel, const CountTable& counts,
                                std::span<const double> reward, PenaltyConfig cfg,
                                std::span<const std::uint8_t> valid_actions = {},
                                bool penalize = true);

/// Intermediate quantities of the two-fold subsampling pipelines, for callers
/// that want to inspect the trim. aux.trimmed holds the applied trim: per
/// (h, s) for the episodic pipeline, per (s, a) for the Markovian one.
struct SubsampleTrace {
    CountTable main;
    CountTable aux;
};

/// Two-fold subsampled pipeline for episodic data: split, trim via the
/// auxiliary half, random per-(s,h) subsampling of the main half, then
/// vi_lcb_finite on the trimmed set. The penalty's log factor uses the size of
/// the trimmed dataset.
VILCBResult subsampled_vi_lcb_finite(const EpisodicDataset& ds, int S, int A,
                                     std::span<const double> reward, PenaltyConfig cfg,
                                     std::uint64_t seed, SubsampleTrace* trace = nullptr);

/// Subsampled pipeline for a single Markovian rollout: split in time, trim
/// with k = 665 * t_mix when the mixing time is known and the adaptive rule
/// otherwise, keep the first trim(s,a) transitions per pair, then
/// vi_lcb_infinite. Deterministic end to end (the take-first subsampling
/// involves no randomness).
VILCBResult subsampled_vi_lcb_markov(const MarkovTrajectory& traj, int S, int A,
                                     double gamma, std::span<const double> reward,
                                     PenaltyConfig cfg,
                                     std::optional<double> t_mix = std::nullopt,
                                     int tau_max = -1, SubsampleTrace* trace = nullptr);

/// Baseline value iteration on the empirical model: identical pipelines with
/// all penalties forced to zero.
VILCBResult plain_vi_infinite(const TransitionDataset& ds, int S, int A, double gamma,
                              std::span<const double> reward, int tau_max = -1);
VILCBResult plain_vi_finite(const TransitionDataset& ds, int S, int A, int H,
                            std::span<const double> reward,
                            std::span<const std::uint8_t> valid_actions = {});

} // namespace vilcb

#pragma once

#include "vilcb/gambler.hpp"
#include "vilcb/hard_instances.hpp"
#include "vilcb/mdp.hpp"
#include "vilcb/vi_lcb.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vilcb {

// Penalty level used in the coin-betting reproduction.
inline constexpr double kGamblerCb = 0.05;

/// Shared experiment configuration: seed, algorithm, penalty knobs, the
/// sample-size grid and the trial count.
struct RunConfig {
    std::uint64_t seed = 1;
    std::string algorithm = "vi-lcb"; // "vi-lcb" or "vi"
    double c_b = kGamblerCb;
    double delta = 0.1;
    int tau_max = -1;                 // override; < 0 keeps the defaults
    std::vector<std::int64_t> grid;
    int trials = 10;
    std::string out_path;             // empty writes to stdout
    bool total_n = false;             // gambler: treat grid entries as total sizes

    void validate() const;
};

/// The sample-size grid of the reproduction: ceil(e^{4+k/2}) for k = 0..12.
std::vector<std::int64_t> default_gambler_grid();

struct ScalingRow {
    std::int64_t n = 0;
    double mean_gap = 0.0;
    double std_gap = 0.0; // sample standard deviation over trials
};

/// Reproduction of the coin-betting experiment: for every grid point and
/// trial, sample the per-cell batch, run the configured algorithm, and score
/// V*_1(rho) - V_1^pihat(rho) against the exact solver under the uniform rho.
std::vector<ScalingRow> run_gambler(const GamblerSpec& spec, const RunConfig& config);

/// Ordinary least squares of ln(y) on ln(x). Points with x <= 0 or y <= 0 are
/// dropped with a warning on stderr.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int used_points = 0;
};
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y);

enum class Pipeline { IidInfinite, SubsampledFinite, SubsampledMarkov };

/// Generic wrapper of run_gambler: dataset sizes from the grid (N transitions,
/// K trajectories, or T rollout steps depending on the pipeline), uniform
/// behavior everywhere, identical column contract.
std::vector<ScalingRow> run_scaling(const DiscountedMDP& mdp, Pipeline pipeline,
                                    const RunConfig& config);
std::vector<ScalingRow> run_scaling(const EpisodicMDP& mdp, const RunConfig& config);

struct HardDemoRow {
    std::int64_t n = 0;
    double misidentification = 0.0; // empirical P(theta_hat != theta)
};

/// Misidentification frequency of theta on the two-MDP discounted family:
/// each trial draws theta in {0,1} (alternating), samples N transitions from
/// d^b, runs the configured algorithm and estimates theta_hat = pihat(0).
std::vector<HardDemoRow> run_hard_demo_infinite(const InfiniteHardPair& pair,
                                                const RunConfig& config);

/// Episodic analogue over a family indexed by Theta: theta_hat is the family
/// member whose optimal state-0 actions are nearest (Hamming) to pihat's.
std::vector<HardDemoRow> run_hard_demo_finite(const std::vector<FiniteHardInstance>& family,
                                              const RunConfig& config);

// CSV writers: header row, comma separator, LF endings, 17 significant digits.
void write_scaling_csv(std::ostream& os, std::span<const ScalingRow> rows);
void write_hard_demo_csv(std::ostream& os, std::span<const HardDemoRow> rows);

/// Per-cell dump of a solver result: "s,a,q,b,n" (discounted) or
/// "h,s,a,q,b,n" with 1-based h (episodic).
void write_result_csv(std::ostream& os, const VILCBResult& res, int S, int A, int H = 0);

/// Plain-text run summary: final gap, iteration count and the residual log.
void write_result_summary(std::ostream& os, const VILCBResult& res, double gap);

} // namespace vilcb

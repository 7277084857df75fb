#pragma once

#include "vilcb/mdp.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vilcb {

/// Single-policy concentrability of a dataset occupancy d^b against the target
/// occupancy d*. Unbounded ratios are reported as +infinity, an explicit
/// value, not an error. argmax_h stays -1 for stationary inputs.
struct ConcentrabilityReport {
    double c_star = 0.0;
    double c_star_clipped = 0.0;
    int argmax_s = -1, argmax_a = -1, argmax_h = -1;
    int argmax_clipped_s = -1, argmax_clipped_a = -1, argmax_clipped_h = -1;
    std::vector<double> d_star, d_b; // the occupancies used
};

/// Computes C* = max d*(s,a)/d^b(s,a) and its clipped variant with the
/// numerator capped at 1/S, maximizing also over steps for per-step inputs
/// ([H*S*A]). Convention 0/0 = 0.
ConcentrabilityReport concentrability(std::span<const double> d_star,
                                      std::span<const double> d_b, int S, int A);

/// Row-stochastic chain over state-action pairs induced by a behavior policy:
/// (s,a) -> (s',a') with s' ~ P(.|s,a) and a' ~ pi_b(.|s'). Returns [SA*SA].
std::vector<double> behavior_chain(const DiscountedMDP& mdp, const Policy& pi_b);

/// Stationary distribution of a row-stochastic chain by power iteration to
/// 1e-12, capped at 1e6 sweeps. On failure a reachability scan distinguishes
/// reducible from periodic chains in the error message.
std::vector<double> stationary_distribution(std::span<const double> chain, int n);

/// t_mix(delta) = min{ t : max_{s0} d_TV(row of P^t, mu) <= delta } by exact
/// matrix powering; throws if the chain has not mixed within t_cap steps.
int mixing_time(std::span<const double> chain, int n, double delta_mix = 0.25,
                int t_cap = 100000);

/// KL and chi-square divergences of Ber(p) from Ber(q), with 0 log 0 = 0.
double kl_bernoulli(double p, double q);
double chi2_bernoulli(double p, double q);

// Theory constants entering the predictor defaults: c1 = 21000 c_b with
// c_b >= 144 (infinite horizon), c_k = 12800 c_b with c_b >= 16 (finite
// horizon), c1 = 22000 (Markovian data).
inline constexpr double kPredictorC1Infinite = 21000.0 * 144.0;
inline constexpr double kPredictorCkFinite = 12800.0 * 16.0;
inline constexpr double kPredictorC1Markov = 22000.0;

// Sample-size predictors: evaluate the sample-complexity bounds with their
// stated constants. Each bound has the sample size inside its own log factor,
// so the returned value is the fixed point of N = rhs(N). Diagnostic
// calculators, not guarantee checkers.
double sample_predictor_infinite(int S, double c_star_clipped, double eps, double delta,
                                 double gamma, double c1 = kPredictorC1Infinite);
double sample_predictor_finite(int S, double c_star_clipped, double eps, double delta,
                               int H, double c_k = kPredictorCkFinite);
double sample_predictor_markov(int S, double c_star_clipped, double eps, double delta,
                               double gamma, double t_mix, double c1 = kPredictorC1Markov);

/// Dominant term of the instance-dependent bound for the episodic pipeline:
///   12 sum_j sum_s d*_j(s) sqrt( c_b ln(NH/delta) / (K d^b_j(s, pi*_j(s)))
///                                 * Var_{P_j,s,pi*_j(s)}(V*_{j+1}) )
/// with N = K*H. Cells with d^b = 0 but d* > 0 contribute +infinity.
double instance_bound(const EpisodicMDP& mdp, std::span<const double> rho,
                      std::span<const double> rho_b, const Policy& pi_b, std::int64_t K,
                      double delta, double c_b);

} // namespace vilcb

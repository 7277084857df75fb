#pragma once

#include "vilcb/mdp.hpp"

#include <span>
#include <vector>

namespace vilcb {

/// Variance of V under a probability vector: dist·(V∘V) − (dist·V)².
/// Computed in centered two-pass form; tiny negative round-off is clamped to 0.
/// Throws if dist is not normalized (tolerance 1e-9) or sizes mismatch.
double variance_under(std::span<const double> dist, std::span<const double> v);

/// Solves V = r^pi + gamma * P^pi V. Dense direct solve for S <= 2000,
/// truncated geometric iteration to sup-norm tolerance 1e-10 beyond.
std::vector<double> policy_eval_discounted(const DiscountedMDP& mdp, const Policy& pi);

/// Backward recursion V_h = r_h^pi + P_h^pi V_{h+1} with V_{H+1} = 0.
/// Returns [H*S], step-major.
std::vector<double> policy_eval_episodic(const EpisodicMDP& mdp, const Policy& pi);

/// Exact Q-function of a policy on the true model: Q(s,a) = r + gamma P_{s,a} V^pi.
std::vector<double> policy_q_discounted(const DiscountedMDP& mdp, const Policy& pi);

struct OptimalSolution {
    Policy policy;             // deterministic, lowest-index ties
    std::vector<double> value; // [S] or [H*S]
    std::vector<double> q;     // [S*A] or [H*S*A]
};

/// Discounted: value iteration on the true model to sup-norm tolerance 1e-10,
/// greedy extraction, then an exact policy evaluation of the greedy policy.
OptimalSolution solve_optimal(const DiscountedMDP& mdp);

/// Episodic: exact backward dynamic programming.
OptimalSolution solve_optimal(const EpisodicMDP& mdp);

/// Forward recursion d_1 = rho, d_{j+1}^T = d_j^T P_j^pi.
OccupancyDistribution occupancy_episodic(const EpisodicMDP& mdp, const Policy& pi,
                                         std::span<const double> rho);

/// d^T = (1-gamma) rho^T (I - gamma P^pi)^{-1}; dense solve for S <= 2000,
/// truncated series with 1e-10 tail bound beyond.
OccupancyDistribution occupancy_discounted(const DiscountedMDP& mdp, const Policy& pi,
                                           std::span<const double> rho);

/// Suboptimality gap V*(rho) - V^pi(rho); tiny negatives (> -1e-10) clamp to 0.
double value_gap(const DiscountedMDP& mdp, std::span<const double> rho, const Policy& pi_hat);
double value_gap(const EpisodicMDP& mdp, std::span<const double> rho, const Policy& pi_hat);

/// Argmax with lowest-index tie-breaking, the library-wide convention.
int argmax_lowest(std::span<const double> values);

} // namespace vilcb

#pragma once

#include "vilcb/mdp.hpp"

#include <cstdint>
#include <vector>

namespace vilcb {

/// One member of the two-MDP family behind the discounted minimax lower
/// bound: S states {0..S-1}, two actions, a crucial distribution mu supported
/// on {0,1}, transition parameters p > q >= 1/2 split around gamma, batch
/// distribution d^b(s,a) = mu(s)/2, and test distribution delta_0.
struct InfiniteHardInstance {
    int theta = 0; // which action is favored in state 0
    int num_states = 0;
    double concentrability_driver = 0.0; // C, with C*_clipped = 2C
    double discount = 0.0;
    double accuracy = 0.0; // epsilon of the construction
    double p = 0.0, q = 0.0;
    std::vector<double> mu;
    DiscountedMDP mdp;
    std::vector<double> initial_dist_b;      // rho^b = mu
    Policy behavior;                         // uniform over the two actions
    std::vector<double> test_dist;           // rho = indicator of state 0
    std::vector<double> behavior_occupancy;  // d^b(s,a) = mu(s)/2
};

struct InfiniteHardPair {
    InfiniteHardInstance m0, m1;
};

/// Builds both MDPs of the family. Enforces 2/3 <= gamma < 1,
/// 14(1-gamma)eps/gamma <= 1/2 and 1/(CS) <= 1/(4 gamma), naming the violated
/// constraint on failure.
InfiniteHardPair build_infinite_pair(int S, double C, double gamma, double eps);

/// Episodic analogue indexed by theta in {0,1}^H, with p, q built from
/// c1 = 1/4 and c2 = 4096.
struct FiniteHardInstance {
    std::vector<int> theta;
    int num_states = 0;
    int horizon = 0;
    double concentrability_driver = 0.0;
    double accuracy = 0.0;
    double p = 0.0, q = 0.0;
    std::vector<double> mu;
    EpisodicMDP mdp;
    std::vector<double> initial_dist_b;
    Policy behavior;
    std::vector<double> test_dist;
    std::vector<double> behavior_occupancy; // per-step d^b_h(s,a) = mu(s)/2, [H*S*A]
};

/// One instance per theta vector. Enforces 1/(CS) <= 1/4 and
/// c2 eps / H^2 <= c1 / (2H); warns (stderr) below H = 32, the regime the
/// source analysis works in.
std::vector<FiniteHardInstance> build_finite_family(
    int S, double C, int H, double eps, const std::vector<std::vector<int>>& thetas);

inline constexpr double kFiniteHardC1 = 0.25;
inline constexpr double kFiniteHardC2 = 4096.0;

/// Binary code with pairwise Hamming distance >= ceil(length/8), stored as
/// bitmasks (length <= 64).
struct GVCode {
    int length = 0;
    int min_distance = 0;
    std::vector<std::uint64_t> codewords;

    std::vector<int> bits(std::size_t index) const;
};

/// Greedy Gilbert-Varshamov construction: lexicographic scan of {0,1}^length
/// for length <= 24, randomized greedy (stop after 1e7 straight rejections)
/// beyond. Stops once target_size codewords are kept; throws if the target is
/// unreachable.
GVCode gilbert_varshamov(int length, std::size_t target_size, std::uint64_t seed = 0);

/// Itemized closed-form checks of a generated instance, all at tolerance 1e-9
/// (1e-10 for the occupancy identity).
struct InstanceReport {
    bool value_identity = false;        // V*(1) closed form (and V*_1(0) lower bound)
    bool optimal_policy_matches = false;
    bool behavior_occupancy_identity = false;
    bool concentrability_identity = false; // C*_clipped = 2C
    double max_value_error = 0.0;
    double max_occupancy_error = 0.0;
    double concentrability_error = 0.0;

    bool all_pass() const {
        return value_identity && optimal_policy_matches && behavior_occupancy_identity &&
               concentrability_identity;
    }
};

InstanceReport verify_instance(const InfiniteHardInstance& inst);
/// At the final step both actions in state 0 are exactly tied (V_{H+1} = 0),
/// so the policy check is exact argmax match for h < H plus optimality of
/// theta_H within 1e-9 at the last step.
InstanceReport verify_instance(const FiniteHardInstance& inst);

} // namespace vilcb

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vilcb {

// Validation and solver tolerances shared across the library.
inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kSolveTol = 1e-10;
// Linear systems up to this many states are solved densely; larger ones fall
// back to truncated fixed-point iteration.
inline constexpr int kDenseSolveMaxStates = 2000;

/// Tabular discounted infinite-horizon MDP {S, A, P, r, gamma}.
///
/// kernel is row-major [S][A][S'] with every row a probability vector;
/// rewards are deterministic and normalized to [0, 1].
struct DiscountedMDP {
    int num_states = 0;
    int num_actions = 0;
    double discount = 0.0;
    std::vector<double> kernel; // [S*A*S]
    std::vector<double> reward; // [S*A]

    DiscountedMDP() = default;
    DiscountedMDP(int S, int A, double gamma)
        : num_states(S), num_actions(A), discount(gamma),
          kernel(static_cast<std::size_t>(S) * A * S, 0.0),
          reward(static_cast<std::size_t>(S) * A, 0.0) {}

    double& p(int s, int a, int s2) {
        return kernel[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    double p(int s, int a, int s2) const {
        return kernel[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    double& r(int s, int a) { return reward[static_cast<std::size_t>(s) * num_actions + a]; }
    double r(int s, int a) const { return reward[static_cast<std::size_t>(s) * num_actions + a]; }

    std::span<const double> kernel_row(int s, int a) const {
        return {kernel.data() + (static_cast<std::size_t>(s) * num_actions + a) * num_states,
                static_cast<std::size_t>(num_states)};
    }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Tabular episodic finite-horizon MDP {S, A, H, {P_h}, {r_h}} with
/// time-varying kernels and rewards. Steps are 0-based internally (h in
/// [0, H)); file formats use the 1-based convention.
struct EpisodicMDP {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::vector<double> kernel; // [H*S*A*S]
    std::vector<double> reward; // [H*S*A]

    EpisodicMDP() = default;
    EpisodicMDP(int S, int A, int H)
        : num_states(S), num_actions(A), horizon(H),
          kernel(static_cast<std::size_t>(H) * S * A * S, 0.0),
          reward(static_cast<std::size_t>(H) * S * A, 0.0) {}

    double& p(int h, int s, int a, int s2) {
        return kernel[((static_cast<std::size_t>(h) * num_states + s) * num_actions + a) *
                          num_states + s2];
    }
    double p(int h, int s, int a, int s2) const {
        return kernel[((static_cast<std::size_t>(h) * num_states + s) * num_actions + a) *
                          num_states + s2];
    }
    double& r(int h, int s, int a) {
        return reward[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
    }
    double r(int h, int s, int a) const {
        return reward[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
    }

    std::span<const double> kernel_row(int h, int s, int a) const {
        return {kernel.data() +
                    ((static_cast<std::size_t>(h) * num_states + s) * num_actions + a) *
                        num_states,
                static_cast<std::size_t>(num_states)};
    }

    void validate() const;
};

/// Action-selection rule, deterministic or stochastic, stationary (steps == 1)
/// or per-step (steps == H). Deterministic policies store one action index per
/// (step, state); stochastic ones a distribution over actions.
struct Policy {
    enum class Mode { Deterministic, Stochastic };

    Mode mode = Mode::Deterministic;
    int num_states = 0;
    int num_actions = 0;
    int steps = 1;
    std::vector<int> actions;   // [steps*S] when deterministic
    std::vector<double> probs;  // [steps*S*A] when stochastic

    static Policy make_deterministic(int S, int A, std::vector<int> acts, int steps = 1);
    static Policy make_stochastic(int S, int A, std::vector<double> probs, int steps = 1);
    static Policy uniform(int S, int A, int steps = 1);
    /// Stationary policy that always plays the given action.
    static Policy constant(int S, int A, int action, int steps = 1);

    bool deterministic() const { return mode == Mode::Deterministic; }

    int action(int step, int s) const {
        return actions[static_cast<std::size_t>(step_index(step)) * num_states + s];
    }
    double prob(int step, int s, int a) const {
        if (mode == Mode::Deterministic)
            return action(step, s) == a ? 1.0 : 0.0;
        return probs[(static_cast<std::size_t>(step_index(step)) * num_states + s) * num_actions +
                     a];
    }

    void validate() const;

private:
    // Stationary policies answer queries for any step.
    int step_index(int step) const { return steps == 1 ? 0 : step; }
};

/// Occupancy distributions d(s) and d(s,a) induced by a policy from an initial
/// distribution: per-step for episodic MDPs (horizon == H), discounted
/// visitation frequencies otherwise (horizon == 0).
struct OccupancyDistribution {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;                  // 0 => discounted
    std::vector<double> state;        // [S] or [H*S]
    std::vector<double> state_action; // [S*A] or [H*S*A]
    Policy policy;                    // the inducing policy
    std::vector<double> initial;      // rho
};

} // namespace vilcb

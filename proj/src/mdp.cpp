#include "vilcb/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vilcb {

namespace {

void check_rows(const std::vector<double>& kernel, std::size_t rows, int S,
                const char* what) {
    for (std::size_t row = 0; row < rows; ++row) {
        double sum = 0.0;
        for (int s2 = 0; s2 < S; ++s2) {
            const double v = kernel[row * S + s2];
            if (v < 0.0)
                throw std::invalid_argument(std::string(what) +
                                            ": negative transition probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
            throw std::invalid_argument(std::string(what) + ": kernel row " +
                                        std::to_string(row) + " sums to " +
                                        std::to_string(sum) + ", not 1");
    }
}

void check_rewards(const std::vector<double>& reward, const char* what) {
    for (double v : reward)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(what) + ": reward outside [0, 1]");
}

} // namespace

void DiscountedMDP::validate() const {
    if (num_states <= 0 || num_actions <= 0)
        throw std::invalid_argument("DiscountedMDP: state and action counts must be positive");
    if (!(discount >= 0.0 && discount < 1.0))
        throw std::invalid_argument("DiscountedMDP: discount must lie in [0, 1)");
    if (kernel.size() != static_cast<std::size_t>(num_states) * num_actions * num_states)
        throw std::invalid_argument("DiscountedMDP: kernel size mismatch");
    if (reward.size() != static_cast<std::size_t>(num_states) * num_actions)
        throw std::invalid_argument("DiscountedMDP: reward size mismatch");
    check_rows(kernel, static_cast<std::size_t>(num_states) * num_actions, num_states,
               "DiscountedMDP");
    check_rewards(reward, "DiscountedMDP");
}

void EpisodicMDP::validate() const {
    if (num_states <= 0 || num_actions <= 0 || horizon <= 0)
        throw std::invalid_argument("EpisodicMDP: S, A and H must be positive");
    if (kernel.size() !=
        static_cast<std::size_t>(horizon) * num_states * num_actions * num_states)
        throw std::invalid_argument("EpisodicMDP: kernel size mismatch");
    if (reward.size() != static_cast<std::size_t>(horizon) * num_states * num_actions)
        throw std::invalid_argument("EpisodicMDP: reward size mismatch");
    check_rows(kernel, static_cast<std::size_t>(horizon) * num_states * num_actions,
               num_states, "EpisodicMDP");
    check_rewards(reward, "EpisodicMDP");
}

Policy Policy::make_deterministic(int S, int A, std::vector<int> acts, int steps) {
    Policy p;
    p.mode = Mode::Deterministic;
    p.num_states = S;
    p.num_actions = A;
    p.steps = steps;
    p.actions = std::move(acts);
    p.validate();
    return p;
}

Policy Policy::make_stochastic(int S, int A, std::vector<double> probs, int steps) {
    Policy p;
    p.mode = Mode::Stochastic;
    p.num_states = S;
    p.num_actions = A;
    p.steps = steps;
    p.probs = std::move(probs);
    p.validate();
    return p;
}

Policy Policy::uniform(int S, int A, int steps) {
    std::vector<double> probs(static_cast<std::size_t>(steps) * S * A, 1.0 / A);
    return make_stochastic(S, A, std::move(probs), steps);
}

Policy Policy::constant(int S, int A, int action, int steps) {
    std::vector<int> acts(static_cast<std::size_t>(steps) * S, action);
    return make_deterministic(S, A, std::move(acts), steps);
}

void Policy::validate() const {
    if (num_states <= 0 || num_actions <= 0 || steps <= 0)
        throw std::invalid_argument("Policy: S, A and steps must be positive");
    if (mode == Mode::Deterministic) {
        if (actions.size() != static_cast<std::size_t>(steps) * num_states)
            throw std::invalid_argument("Policy: action table size mismatch");
        for (int a : actions)
            if (a < 0 || a >= num_actions)
                throw std::invalid_argument("Policy: action index out of range");
    } else {
        if (probs.size() != static_cast<std::size_t>(steps) * num_states * num_actions)
            throw std::invalid_argument("Policy: probability table size mismatch");
        for (std::size_t row = 0; row < static_cast<std::size_t>(steps) * num_states; ++row) {
            double sum = 0.0;
            for (int a = 0; a < num_actions; ++a) {
                const double v = probs[row * num_actions + a];
                if (v < 0.0)
                    throw std::invalid_argument("Policy: negative action probability");
                sum += v;
            }
            if (std::abs(sum - 1.0) > kRowSumTol)
                throw std::invalid_argument("Policy: action distribution does not sum to 1");
        }
    }
}

} // namespace vilcb

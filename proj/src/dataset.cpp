#include "vilcb/dataset.hpp"

#include <stdexcept>

namespace vilcb {

namespace {

void check_range(const Transition& t, int S, int A) {
    if (t.state < 0 || t.state >= S || t.next_state < 0 || t.next_state >= S ||
        t.action < 0 || t.action >= A)
        throw std::invalid_argument("count: transition index out of range");
}

} // namespace

CountTable count(const TransitionDataset& ds, int S, int A) {
    if (ds.has_steps())
        throw std::invalid_argument("count: dataset carries step annotations; pass H");
    CountTable c;
    c.num_states = S;
    c.num_actions = A;
    c.horizon = 0;
    c.state_action.assign(static_cast<std::size_t>(S) * A, 0);
    for (const auto& t : ds.transitions) {
        check_range(t, S, A);
        ++c.state_action[static_cast<std::size_t>(t.state) * A + t.action];
    }
    return c;
}

CountTable count(const TransitionDataset& ds, int S, int A, int H) {
    if (!ds.has_steps() && !ds.transitions.empty())
        throw std::invalid_argument("count: dataset lacks step annotations");
    CountTable c;
    c.num_states = S;
    c.num_actions = A;
    c.horizon = H;
    c.state_action.assign(static_cast<std::size_t>(H) * S * A, 0);
    for (std::size_t i = 0; i < ds.transitions.size(); ++i) {
        const auto& t = ds.transitions[i];
        check_range(t, S, A);
        const int h = ds.steps[i];
        if (h < 0 || h >= H)
            throw std::invalid_argument("count: step annotation out of range");
        ++c.state_action[(static_cast<std::size_t>(h) * S + t.state) * A + t.action];
    }
    return c;
}

CountTable count(const EpisodicDataset& ds, int S, int A) {
    CountTable c;
    c.num_states = S;
    c.num_actions = A;
    c.horizon = ds.horizon;
    c.state_action.assign(static_cast<std::size_t>(ds.horizon) * S * A, 0);
    for (const auto& traj : ds.trajectories) {
        if (static_cast<int>(traj.actions.size()) != ds.horizon ||
            traj.states.size() != traj.actions.size() + 1)
            throw std::invalid_argument("count: trajectory length does not match horizon");
        for (int h = 0; h < ds.horizon; ++h) {
            const int s = traj.states[h], a = traj.actions[h];
            if (s < 0 || s >= S || a < 0 || a >= A)
                throw std::invalid_argument("count: trajectory index out of range");
            ++c.state_action[(static_cast<std::size_t>(h) * S + s) * A + a];
        }
    }
    return c;
}

CountTable count(const MarkovTrajectory& traj, int S, int A) {
    CountTable c;
    c.num_states = S;
    c.num_actions = A;
    c.horizon = 0;
    c.state_action.assign(static_cast<std::size_t>(S) * A, 0);
    const std::int64_t T = traj.num_transitions();
    for (std::int64_t t = 0; t < T; ++t) {
        const int s = traj.states[t], a = traj.actions[t];
        if (s < 0 || s >= S || a < 0 || a >= A)
            throw std::invalid_argument("count: trajectory index out of range");
        ++c.state_action[static_cast<std::size_t>(s) * A + a];
    }
    return c;
}

std::vector<double> empirical_kernel(const TransitionDataset& ds, const CountTable& counts) {
    const int S = counts.num_states, A = counts.num_actions;
    const int H = counts.horizon;
    const std::size_t rows = counts.state_action.size();
    std::vector<double> kernel(rows * S, 0.0);
    for (std::size_t i = 0; i < ds.transitions.size(); ++i) {
        const auto& t = ds.transitions[i];
        std::size_t row;
        if (H > 0)
            row = (static_cast<std::size_t>(ds.steps[i]) * S + t.state) * A + t.action;
        else
            row = static_cast<std::size_t>(t.state) * A + t.action;
        kernel[row * S + t.next_state] += 1.0;
    }
    for (std::size_t row = 0; row < rows; ++row) {
        const std::int64_t n = counts.state_action[row];
        if (n > 0) {
            for (int s2 = 0; s2 < S; ++s2)
                kernel[row * S + s2] /= static_cast<double>(n);
        } else {
            for (int s2 = 0; s2 < S; ++s2)
                kernel[row * S + s2] = 1.0 / S;
        }
    }
    return kernel;
}

TransitionDataset flatten(const EpisodicDataset& ds) {
    TransitionDataset out;
    for (const auto& traj : ds.trajectories)
        for (int h = 0; h < ds.horizon; ++h)
            out.push(h, traj.states[h], traj.actions[h], traj.states[h + 1]);
    return out;
}

TransitionDataset flatten(const MarkovTrajectory& traj) {
    TransitionDataset out;
    const std::int64_t total = traj.num_transitions();
    for (std::int64_t t = 0; t < total; ++t)
        out.push(traj.states[t], traj.actions[t], traj.states[t + 1]);
    return out;
}

std::vector<std::int64_t> state_counts(const CountTable& counts) {
    if (counts.horizon <= 0)
        throw std::invalid_argument("state_counts: requires stepped counts");
    std::vector<std::int64_t> out(static_cast<std::size_t>(counts.horizon) *
                                      counts.num_states,
                                  0);
    for (int h = 0; h < counts.horizon; ++h)
        for (int s = 0; s < counts.num_states; ++s)
            out[static_cast<std::size_t>(h) * counts.num_states + s] = counts.state_total(h, s);
    return out;
}

} // namespace vilcb

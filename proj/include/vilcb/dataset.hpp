#pragma once

#include "vilcb/mdp.hpp"

#include <cstdint>
#include <vector>

namespace vilcb {

struct Transition {
    int state = 0;
    int action = 0;
    int next_state = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Offline batch of (s, a, s') transitions. For episodic-format data every
/// transition additionally carries its step in `steps` (0-based internally;
/// serialized 1-based).
struct TransitionDataset {
    std::vector<Transition> transitions;
    std::vector<int> steps; // empty, or one step per transition

    bool has_steps() const { return !steps.empty(); }
    std::int64_t size() const { return static_cast<std::int64_t>(transitions.size()); }

    void push(int s, int a, int s2) { transitions.push_back({s, a, s2}); }
    void push(int h, int s, int a, int s2) {
        transitions.push_back({s, a, s2});
        steps.push_back(h);
    }
};

/// One rollout (s_1, a_1, ..., s_H, a_H, s_{H+1}).
struct EpisodicTrajectory {
    std::vector<int> states;  // H+1
    std::vector<int> actions; // H
};

/// K i.i.d. trajectories together with the generating initial distribution and
/// behavior policy.
struct EpisodicDataset {
    int horizon = 0;
    std::vector<EpisodicTrajectory> trajectories;
    std::vector<double> initial_dist; // rho^b
    Policy behavior;                  // pi^b

    std::int64_t num_trajectories() const {
        return static_cast<std::int64_t>(trajectories.size());
    }
};

/// A single Markovian rollout {s_0, a_0, ..., s_T, a_T}: T+1 states and T+1
/// actions, hence T usable transitions (s_t, a_t, s_{t+1}).
struct MarkovTrajectory {
    std::vector<int> states;
    std::vector<int> actions;
    Policy behavior;
    int start_state = 0;

    std::int64_t num_transitions() const {
        return states.empty() ? 0 : static_cast<std::int64_t>(states.size()) - 1;
    }
};

/// Visitation counts N(s,a) (flat) or N_h(s,a) (stepped, horizon > 0).
/// `trimmed` is filled by the subsampling pipelines with the trim actually
/// applied (same layout as documented by the pipeline).
struct CountTable {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0; // 0 => flat N(s,a)
    std::vector<std::int64_t> state_action; // [S*A] or [H*S*A]
    std::vector<std::int64_t> trimmed;

    std::int64_t at(int s, int a) const {
        return state_action[static_cast<std::size_t>(s) * num_actions + a];
    }
    std::int64_t at(int h, int s, int a) const {
        return state_action[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
    }
    /// N_h(s): total transitions from state s at step h.
    std::int64_t state_total(int h, int s) const {
        std::int64_t acc = 0;
        for (int a = 0; a < num_actions; ++a)
            acc += at(h, s, a);
        return acc;
    }
    std::int64_t total() const {
        std::int64_t acc = 0;
        for (auto v : state_action)
            acc += v;
        return acc;
    }
};

/// Exact visitation counts; totals equal dataset size. The flat overload
/// rejects datasets carrying step annotations and vice versa.
CountTable count(const TransitionDataset& ds, int S, int A);
CountTable count(const TransitionDataset& ds, int S, int A, int H);
CountTable count(const EpisodicDataset& ds, int S, int A);
CountTable count(const MarkovTrajectory& traj, int S, int A);

/// Frequency estimate of the transition kernel: rows with N = 0 are uniform
/// 1/S. Returns [S*A*S] for flat counts, [H*S*A*S] for stepped ones.
std::vector<double> empirical_kernel(const TransitionDataset& ds, const CountTable& counts);

/// Per-(s,h) totals N_h(s) as a [H*S] vector, the input of trim_counts_finite.
std::vector<std::int64_t> state_counts(const CountTable& counts);

/// All transitions of the trajectories as a step-annotated dataset.
TransitionDataset flatten(const EpisodicDataset& ds);
/// All transitions of a rollout as a flat dataset, in trajectory order.
TransitionDataset flatten(const MarkovTrajectory& traj);

} // namespace vilcb

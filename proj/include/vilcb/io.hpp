#pragma once

#include "vilcb/dataset.hpp"
#include "vilcb/mdp.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace vilcb {

/// Formats a double with 17 significant digits, the interchange precision used
/// by every text format in this library.
std::string format_double(double v);

// Plain-text MDP format.
//   header line:  "S A gamma"  (discounted)  or  "S A H"  (episodic)
//   then the dense reward block, then the dense kernel blocks, row-major,
//   single-space separated. Discounted: S reward lines of A values, then S*A
//   kernel lines of S values ordered (s, a). Episodic: H reward blocks then H
//   kernel blocks in step order. The reader distinguishes the two headers by
//   whether the third token parses as an integer >= 1.
void write_mdp(std::ostream& os, const DiscountedMDP& mdp);
void write_mdp(std::ostream& os, const EpisodicMDP& mdp);
std::variant<DiscountedMDP, EpisodicMDP> read_mdp(std::istream& is);

// Dataset CSV: one transition per line, "s,a,s'" or "h,s,a,s'" with 1-based h.
void write_transitions(std::ostream& os, const TransitionDataset& ds);
TransitionDataset read_transitions(std::istream& is);

// Trajectory files: one line per trajectory, space-separated alternating
// states and actions (s_1 a_1 s_2 a_2 ... s_H a_H s_{H+1} for episodic
// trajectories; s_0 a_0 ... s_T a_T for a Markovian rollout).
void write_trajectories(std::ostream& os, const EpisodicDataset& ds);
void write_trajectory(std::ostream& os, const MarkovTrajectory& traj);

} // namespace vilcb

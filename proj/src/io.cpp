#include "vilcb/io.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vilcb {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_block(std::ostream& os, const std::vector<double>& data, std::size_t rows,
                 std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (j)
                os << ' ';
            os << format_double(data[i * cols + j]);
        }
        os << '\n';
    }
}

std::vector<double> read_block(std::istream& is, std::size_t n, const char* what) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!(is >> out[i]))
            throw std::runtime_error(std::string("read_mdp: truncated ") + what);
    return out;
}

bool is_integer_token(const std::string& tok) {
    if (tok.empty())
        return false;
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

void write_mdp(std::ostream& os, const DiscountedMDP& mdp) {
    os << mdp.num_states << ' ' << mdp.num_actions << ' ' << format_double(mdp.discount)
       << '\n';
    write_block(os, mdp.reward, mdp.num_states, mdp.num_actions);
    write_block(os, mdp.kernel, static_cast<std::size_t>(mdp.num_states) * mdp.num_actions,
                mdp.num_states);
}

void write_mdp(std::ostream& os, const EpisodicMDP& mdp) {
    os << mdp.num_states << ' ' << mdp.num_actions << ' ' << mdp.horizon << '\n';
    write_block(os, mdp.reward, static_cast<std::size_t>(mdp.horizon) * mdp.num_states,
                mdp.num_actions);
    write_block(os, mdp.kernel,
                static_cast<std::size_t>(mdp.horizon) * mdp.num_states * mdp.num_actions,
                mdp.num_states);
}

std::variant<DiscountedMDP, EpisodicMDP> read_mdp(std::istream& is) {
    int S = 0, A = 0;
    std::string third;
    if (!(is >> S >> A >> third))
        throw std::runtime_error("read_mdp: malformed header");
    if (S <= 0 || A <= 0)
        throw std::runtime_error("read_mdp: nonpositive S or A");
    if (is_integer_token(third)) {
        const int H = std::stoi(third);
        if (H < 1)
            throw std::runtime_error("read_mdp: horizon must be >= 1");
        EpisodicMDP mdp(S, A, H);
        mdp.reward = read_block(is, static_cast<std::size_t>(H) * S * A, "reward block");
        mdp.kernel = read_block(is, static_cast<std::size_t>(H) * S * A * S, "kernel block");
        mdp.validate();
        return mdp;
    }
    const double gamma = std::stod(third);
    DiscountedMDP mdp(S, A, gamma);
    mdp.reward = read_block(is, static_cast<std::size_t>(S) * A, "reward block");
    mdp.kernel = read_block(is, static_cast<std::size_t>(S) * A * S, "kernel block");
    mdp.validate();
    return mdp;
}

void write_transitions(std::ostream& os, const TransitionDataset& ds) {
    const bool stepped = ds.has_steps();
    for (std::size_t i = 0; i < ds.transitions.size(); ++i) {
        const auto& t = ds.transitions[i];
        if (stepped)
            os << ds.steps[i] + 1 << ',';
        os << t.state << ',' << t.action << ',' << t.next_state << '\n';
    }
}

TransitionDataset read_transitions(std::istream& is) {
    TransitionDataset ds;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::vector<int> fields;
        std::string tok;
        while (std::getline(ls, tok, ','))
            fields.push_back(std::stoi(tok));
        if (fields.size() == 3)
            ds.push(fields[0], fields[1], fields[2]);
        else if (fields.size() == 4)
            ds.push(fields[0] - 1, fields[1], fields[2], fields[3]);
        else
            throw std::runtime_error("read_transitions: expected 3 or 4 fields per line");
    }
    if (!ds.steps.empty() && ds.steps.size() != ds.transitions.size())
        throw std::runtime_error("read_transitions: mixed stepped and flat lines");
    return ds;
}

void write_trajectories(std::ostream& os, const EpisodicDataset& ds) {
    for (const auto& traj : ds.trajectories) {
        for (std::size_t h = 0; h < traj.actions.size(); ++h)
            os << traj.states[h] << ' ' << traj.actions[h] << ' ';
        os << traj.states.back() << '\n';
    }
}

void write_trajectory(std::ostream& os, const MarkovTrajectory& traj) {
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        if (t)
            os << ' ';
        os << traj.states[t] << ' ' << traj.actions[t];
    }
    os << '\n';
}

} // namespace vilcb

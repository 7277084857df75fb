#include "vilcb/gambler.hpp"

#include "vilcb/rng.hpp"

#include <stdexcept>

namespace vilcb {

EpisodicMDP GamblerSpec::build_mdp() const {
    const int S = num_states, A = num_actions, H = horizon;
    EpisodicMDP mdp(S, A, H);
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const double reward = s == S - 1 ? 1.0 : 0.0;
                if (!valid(s, a) || a == 0) {
                    mdp.p(h, s, a, s) = 1.0; // masked stakes and stake 0 hold the balance
                } else {
                    mdp.p(h, s, a, s + a) = p_head;
                    mdp.p(h, s, a, s - a) = 1.0 - p_head;
                }
                mdp.r(h, s, a) = valid(s, a) ? reward : 0.0;
            }
    mdp.validate();
    return mdp;
}

std::vector<std::uint8_t> GamblerSpec::action_mask() const {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(num_states) * num_actions, 0);
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a)
            mask[static_cast<std::size_t>(s) * num_actions + a] = valid(s, a) ? 1 : 0;
    return mask;
}

std::vector<double> GamblerSpec::uniform_rho() const {
    return std::vector<double>(num_states, 1.0 / num_states);
}

std::int64_t GamblerSpec::num_valid_cells() const {
    std::int64_t cells = 0;
    for (int s = 0; s < num_states; ++s)
        cells += max_stake(s) + 1;
    return cells;
}

namespace {

// Fills one empirical row from `up` heads out of `n` draws at stake a > 0.
void fill_row(double* row, int s, int a, std::int64_t up, std::int64_t n) {
    row[s + a] = static_cast<double>(up) / static_cast<double>(n);
    row[s - a] += static_cast<double>(n - up) / static_cast<double>(n);
}

} // namespace

GamblerEmpirical sample_gambler_model(const GamblerSpec& spec, std::int64_t n_per_cell,
                                      std::uint64_t seed) {
    if (n_per_cell < 0)
        throw std::invalid_argument("sample_gambler_model: negative sample count");
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    GamblerEmpirical out;
    out.counts.num_states = S;
    out.counts.num_actions = A;
    out.counts.horizon = H;
    out.counts.state_action.assign(static_cast<std::size_t>(H) * S * A, 0);
    out.kernel.assign(static_cast<std::size_t>(H) * S * A * S, 1.0 / S);

    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a <= spec.max_stake(s); ++a) {
                const std::size_t cell = (static_cast<std::size_t>(h) * S + s) * A + a;
                out.counts.state_action[cell] = n_per_cell;
                out.total_samples += n_per_cell;
                double* row = out.kernel.data() + cell * S;
                for (int s2 = 0; s2 < S; ++s2)
                    row[s2] = 0.0;
                if (n_per_cell == 0) {
                    for (int s2 = 0; s2 < S; ++s2)
                        row[s2] = 1.0 / S;
                    continue;
                }
                if (a == 0) {
                    row[s] = 1.0; // stake 0 is a deterministic hold
                    continue;
                }
                Rng rng(derive_seed(seed, "gambler_cell", cell));
                std::int64_t up = 0;
                for (std::int64_t i = 0; i < n_per_cell; ++i)
                    up += rng.next_bernoulli(spec.p_head) ? 1 : 0;
                fill_row(row, s, a, up, n_per_cell);
            }
    return out;
}

GamblerEmpirical sample_gambler_model_total(const GamblerSpec& spec, std::int64_t n_total,
                                            std::uint64_t seed) {
    if (n_total < 0)
        throw std::invalid_argument("sample_gambler_model_total: negative sample count");
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;

    // Enumerate valid (h, s, a) cells, draw a uniform cell per sample, then a
    // coin per sample.
    std::vector<std::size_t> cells;
    cells.reserve(static_cast<std::size_t>(H) * spec.num_valid_cells());
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a <= spec.max_stake(s); ++a)
                cells.push_back((static_cast<std::size_t>(h) * S + s) * A + a);

    GamblerEmpirical out;
    out.counts.num_states = S;
    out.counts.num_actions = A;
    out.counts.horizon = H;
    out.counts.state_action.assign(static_cast<std::size_t>(H) * S * A, 0);
    out.total_samples = n_total;
    std::vector<std::int64_t> ups(static_cast<std::size_t>(H) * S * A, 0);

    Rng rng(derive_seed(seed, "gambler_total"));
    for (std::int64_t i = 0; i < n_total; ++i) {
        const std::size_t cell = cells[rng.next_below(cells.size())];
        ++out.counts.state_action[cell];
        ups[cell] += rng.next_bernoulli(spec.p_head) ? 1 : 0;
    }

    out.kernel.assign(static_cast<std::size_t>(H) * S * A * S, 0.0);
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::size_t cell = (static_cast<std::size_t>(h) * S + s) * A + a;
                double* row = out.kernel.data() + cell * S;
                const std::int64_t n = out.counts.state_action[cell];
                if (n == 0) {
                    for (int s2 = 0; s2 < S; ++s2)
                        row[s2] = 1.0 / S;
                } else if (a == 0) {
                    row[s] = 1.0;
                } else {
                    fill_row(row, s, a, ups[cell], n);
                }
            }
    return out;
}

} // namespace vilcb

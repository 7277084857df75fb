#include "vilcb/penalty.hpp"

#include "vilcb/solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vilcb {

void PenaltyConfig::validate() const {
    if (!(c_b > 0.0))
        throw std::invalid_argument("PenaltyConfig: c_b must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("PenaltyConfig: delta must lie in (0, 1)");
    if (sample_size < 1)
        throw std::invalid_argument("PenaltyConfig: sample_size must be >= 1");
}

std::vector<double> penalty_bernstein_infinite(const CountTable& counts,
                                               std::span<const double> kernel,
                                               std::span<const double> v,
                                               const PenaltyConfig& cfg, double gamma) {
    cfg.validate();
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("penalty_bernstein_infinite: gamma must lie in [0, 1)");
    const int S = counts.num_states, A = counts.num_actions;
    if (counts.horizon != 0)
        throw std::invalid_argument("penalty_bernstein_infinite: expected flat counts");
    if (static_cast<int>(v.size()) != S)
        throw std::invalid_argument("penalty_bernstein_infinite: V must have S entries");
    const double cap = 1.0 / (1.0 - gamma);
    for (double x : v)
        if (!(x >= -1e-9 && x <= cap + 1e-9))
            throw std::invalid_argument(
                "penalty_bernstein_infinite: V outside [0, 1/(1-gamma)]");

    const double n_total = static_cast<double>(cfg.sample_size);
    const double log_term = std::log(n_total / ((1.0 - gamma) * cfg.delta));
    const double tail = 5.0 / n_total;

    std::vector<double> b(static_cast<std::size_t>(S) * A, 0.0);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const std::size_t cell = static_cast<std::size_t>(s) * A + a;
            const std::int64_t n_sa = counts.state_action[cell];
            double core;
            if (n_sa == 0) {
                core = cap; // 1/0 treated as +inf, the min picks the cap
            } else {
                const double var = variance_under(
                    std::span<const double>(kernel.data() + cell * S, S), v);
                const double bernstein =
                    std::sqrt(cfg.c_b * log_term / static_cast<double>(n_sa) * var);
                const double range = 2.0 * cfg.c_b * log_term /
                                     ((1.0 - gamma) * static_cast<double>(n_sa));
                core = std::min(std::max(bernstein, range), cap);
            }
            b[cell] = core + tail;
        }
    }
    return b;
}

std::vector<double> penalty_bernstein_finite(std::span<const std::int64_t> counts_h,
                                             std::span<const double> kernel_h,
                                             std::span<const double> v_next,
                                             const PenaltyConfig& cfg, int horizon, int S,
                                             int A) {
    cfg.validate();
    if (horizon < 1)
        throw std::invalid_argument("penalty_bernstein_finite: horizon must be >= 1");
    if (static_cast<int>(counts_h.size()) != S * A ||
        static_cast<int>(kernel_h.size()) != S * A * S ||
        static_cast<int>(v_next.size()) != S)
        throw std::invalid_argument("penalty_bernstein_finite: size mismatch");
    const double h_cap = static_cast<double>(horizon);
    const double log_term =
        std::log(static_cast<double>(cfg.sample_size) * horizon / cfg.delta);

    std::vector<double> b(static_cast<std::size_t>(S) * A, 0.0);
    for (std::size_t cell = 0; cell < b.size(); ++cell) {
        const std::int64_t n_sa = counts_h[cell];
        if (n_sa == 0) {
            b[cell] = h_cap;
            continue;
        }
        const double var = variance_under(
            std::span<const double>(kernel_h.data() + cell * S, S), v_next);
        const double val =
            std::sqrt(cfg.c_b * log_term / static_cast<double>(n_sa) * var) +
            cfg.c_b * h_cap * log_term / static_cast<double>(n_sa);
        b[cell] = std::min(val, h_cap);
    }
    return b;
}

} // namespace vilcb

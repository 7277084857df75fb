#pragma once

#include "vilcb/dataset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vilcb {

// Theory constants from the performance guarantees; the gambler reproduction
// uses the much smaller empirical value (see bench.hpp).
inline constexpr double kDefaultCbInfinite = 144.0;
inline constexpr double kDefaultCbFinite = 16.0;

/// Knobs of the Bernstein penalty. sample_size is the size N of the dataset
/// actually fed to the solver, entering only through the log factors.
struct PenaltyConfig {
    double c_b = kDefaultCbInfinite;
    double delta = 0.1;
    std::int64_t sample_size = 1;

    void validate() const;
    PenaltyConfig with_sample_size(std::int64_t n) const {
        PenaltyConfig c = *this;
        c.sample_size = n < 1 ? 1 : n;
        return c;
    }
};

/// Bernstein penalty for the discounted setting:
///   b(s,a;V) = min{ max{ sqrt(c_b L / N(s,a) * Var_{Phat}(V)),
///                        2 c_b L / ((1-gamma) N(s,a)) }, 1/(1-gamma) } + 5/N
/// with L = ln(N / ((1-gamma) delta)). Cells with N(s,a) = 0 hit the cap.
/// Requires ||V||_inf <= 1/(1-gamma) (slack 1e-9). Returns [S*A].
std::vector<double> penalty_bernstein_infinite(const CountTable& counts,
                                               std::span<const double> kernel,
                                               std::span<const double> v,
                                               const PenaltyConfig& cfg, double gamma);

/// Bernstein penalty for one step of the episodic setting:
///   b_h(s,a) = min{ sqrt(c_b L' / N_h(s,a) * Var_{Phat_h}(V_{h+1}))
///                   + c_b H L' / N_h(s,a), H }
/// with L' = ln(N H / delta); N_h(s,a) = 0 gives b_h = H.
/// counts_h and kernel_h are the step-h slices ([S*A] and [S*A*S]).
std::vector<double> penalty_bernstein_finite(std::span<const std::int64_t> counts_h,
                                             std::span<const double> kernel_h,
                                             std::span<const double> v_next,
                                             const PenaltyConfig& cfg, int horizon, int S,
                                             int A);

} // namespace vilcb

#include "vilcb/hard_instances.hpp"

#include "vilcb/analysis.hpp"
#include "vilcb/rng.hpp"
#include "vilcb/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace vilcb {

namespace {

std::vector<double> crucial_distribution(int S, double C) {
    std::vector<double> mu(S, 0.0);
    mu[0] = 1.0 / (C * S);
    mu[1] = 1.0 - mu[0];
    return mu;
}

// row = weight * e_target + (1 - weight) * mu
void mixture_row(double* row, int S, double weight, int target,
                 const std::vector<double>& mu) {
    for (int s2 = 0; s2 < S; ++s2)
        row[s2] = (1.0 - weight) * mu[s2];
    row[target] += weight;
}

std::vector<double> half_mu(const std::vector<double>& mu, int A, int repeat = 1) {
    const int S = static_cast<int>(mu.size());
    std::vector<double> d(static_cast<std::size_t>(repeat) * S * A, 0.0);
    for (int h = 0; h < repeat; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a)
                d[(static_cast<std::size_t>(h) * S + s) * A + a] = mu[s] / A;
    return d;
}

} // namespace

InfiniteHardPair build_infinite_pair(int S, double C, double gamma, double eps) {
    if (S < 2)
        throw std::invalid_argument("build_infinite_pair: requires S >= 2");
    if (!(gamma >= 2.0 / 3.0 && gamma < 1.0))
        throw std::invalid_argument(
            "build_infinite_pair: constraint 2/3 <= gamma < 1 violated");
    if (!(eps > 0.0) || 14.0 * (1.0 - gamma) * eps / gamma > 0.5)
        throw std::invalid_argument(
            "build_infinite_pair: constraint 14(1-gamma)eps/gamma <= 1/2 violated");
    if (!(C > 0.0) || 1.0 / (C * S) > 1.0 / (4.0 * gamma))
        throw std::invalid_argument(
            "build_infinite_pair: constraint 1/(CS) <= 1/(4 gamma) violated");

    const double shift = 14.0 * (1.0 - gamma) * (1.0 - gamma) * eps / gamma;
    const double p = gamma + shift, q = gamma - shift;
    const std::vector<double> mu = crucial_distribution(S, C);

    InfiniteHardPair pair;
    for (int theta = 0; theta < 2; ++theta) {
        InfiniteHardInstance inst;
        inst.theta = theta;
        inst.num_states = S;
        inst.concentrability_driver = C;
        inst.discount = gamma;
        inst.accuracy = eps;
        inst.p = p;
        inst.q = q;
        inst.mu = mu;

        DiscountedMDP mdp(S, 2, gamma);
        mixture_row(&mdp.p(0, theta, 0), S, p, 0, mu);
        mixture_row(&mdp.p(0, 1 - theta, 0), S, q, 0, mu);
        mdp.p(1, 0, 1) = 1.0;
        mixture_row(&mdp.p(1, 1, 0), S, 2.0 * gamma - 1.0, 1, mu);
        for (int s = 2; s < S; ++s)
            for (int a = 0; a < 2; ++a)
                mixture_row(&mdp.p(s, a, 0), S, gamma, s, mu);
        mdp.r(0, 0) = mdp.r(0, 1) = 1.0;
        mdp.r(1, 0) = 0.5;
        mdp.validate();
        inst.mdp = std::move(mdp);

        inst.initial_dist_b = mu;
        inst.behavior = Policy::uniform(S, 2);
        inst.test_dist.assign(S, 0.0);
        inst.test_dist[0] = 1.0;
        inst.behavior_occupancy = half_mu(mu, 2);
        (theta == 0 ? pair.m0 : pair.m1) = std::move(inst);
    }
    return pair;
}

std::vector<FiniteHardInstance> build_finite_family(
    int S, double C, int H, double eps, const std::vector<std::vector<int>>& thetas) {
    if (S < 2)
        throw std::invalid_argument("build_finite_family: requires S >= 2");
    if (H < 1)
        throw std::invalid_argument("build_finite_family: requires H >= 1");
    if (!(C > 0.0) || 1.0 / (C * S) > 0.25)
        throw std::invalid_argument(
            "build_finite_family: constraint 1/(CS) <= 1/4 violated");
    const double hh = static_cast<double>(H);
    if (!(eps > 0.0) || kFiniteHardC2 * eps / (hh * hh) > kFiniteHardC1 / (2.0 * hh))
        throw std::invalid_argument(
            "build_finite_family: constraint c2*eps/H^2 <= c1/(2H) violated");
    if (H < 32)
        std::cerr << "build_finite_family: warning: H = " << H
                  << " is below 32, the regime the analysis works in\n";

    const double p = 1.0 - kFiniteHardC1 / hh + kFiniteHardC2 * eps / (hh * hh);
    const double q = 1.0 - kFiniteHardC1 / hh - kFiniteHardC2 * eps / (hh * hh);
    const std::vector<double> mu = crucial_distribution(S, C);

    std::vector<FiniteHardInstance> family;
    family.reserve(thetas.size());
    for (const auto& theta : thetas) {
        if (static_cast<int>(theta.size()) != H)
            throw std::invalid_argument("build_finite_family: theta length must equal H");
        for (int bit : theta)
            if (bit != 0 && bit != 1)
                throw std::invalid_argument("build_finite_family: theta entries must be 0/1");

        FiniteHardInstance inst;
        inst.theta = theta;
        inst.num_states = S;
        inst.horizon = H;
        inst.concentrability_driver = C;
        inst.accuracy = eps;
        inst.p = p;
        inst.q = q;
        inst.mu = mu;

        EpisodicMDP mdp(S, 2, H);
        for (int h = 0; h < H; ++h) {
            mixture_row(&mdp.p(h, 0, theta[h], 0), S, p, 0, mu);
            mixture_row(&mdp.p(h, 0, 1 - theta[h], 0), S, q, 0, mu);
            mdp.p(h, 1, 0, 1) = 1.0;
            mixture_row(&mdp.p(h, 1, 1, 0), S, 1.0 - 2.0 * kFiniteHardC1 / hh, 1, mu);
            for (int s = 2; s < S; ++s)
                for (int a = 0; a < 2; ++a)
                    mixture_row(&mdp.p(h, s, a, 0), S, 1.0 - 1.0 / hh, s, mu);
            mdp.r(h, 0, 0) = mdp.r(h, 0, 1) = 1.0;
            mdp.r(h, 1, 0) = 0.5;
        }
        mdp.validate();
        inst.mdp = std::move(mdp);

        inst.initial_dist_b = mu;
        inst.behavior = Policy::uniform(S, 2, H);
        inst.test_dist.assign(S, 0.0);
        inst.test_dist[0] = 1.0;
        inst.behavior_occupancy = half_mu(mu, 2, H);
        family.push_back(std::move(inst));
    }
    return family;
}

std::vector<int> GVCode::bits(std::size_t index) const {
    std::vector<int> out(length, 0);
    for (int i = 0; i < length; ++i)
        out[i] = static_cast<int>((codewords[index] >> i) & 1u);
    return out;
}

GVCode gilbert_varshamov(int length, std::size_t target_size, std::uint64_t seed) {
    if (length < 1 || length > 64)
        throw std::invalid_argument("gilbert_varshamov: length must lie in [1, 64]");
    if (target_size == 0)
        throw std::invalid_argument("gilbert_varshamov: target size must be positive");
    GVCode code;
    code.length = length;
    code.min_distance = (length + 7) / 8; // ceil(length / 8)

    auto far_enough = [&](std::uint64_t w) {
        for (std::uint64_t kept : code.codewords)
            if (std::popcount(kept ^ w) < code.min_distance)
                return false;
        return true;
    };

    if (length <= 24) {
        const std::uint64_t limit = 1ULL << length;
        for (std::uint64_t w = 0; w < limit && code.codewords.size() < target_size; ++w)
            if (far_enough(w))
                code.codewords.push_back(w);
        if (code.codewords.size() < target_size)
            throw std::runtime_error(
                "gilbert_varshamov: exhaustive greedy reached only " +
                std::to_string(code.codewords.size()) + " codewords");
        return code;
    }

    Rng rng(derive_seed(seed, "gilbert_varshamov"));
    const std::uint64_t mask =
        length == 64 ? ~0ULL : ((1ULL << length) - 1);
    std::int64_t rejections = 0;
    while (code.codewords.size() < target_size) {
        const std::uint64_t w = rng.next_u64() & mask;
        if (far_enough(w)) {
            code.codewords.push_back(w);
            rejections = 0;
        } else if (++rejections >= 10'000'000) {
            throw std::runtime_error(
                "gilbert_varshamov: randomized greedy stalled at " +
                std::to_string(code.codewords.size()) + " codewords");
        }
    }
    return code;
}

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kOccupancyTol = 1e-10;

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

InstanceReport verify_instance(const InfiniteHardInstance& inst) {
    InstanceReport rep;
    const OptimalSolution opt = solve_optimal(inst.mdp);

    // V*(1) = 1/(2(1-gamma))
    rep.max_value_error =
        std::abs(opt.value[1] - 0.5 / (1.0 - inst.discount));
    rep.value_identity = rep.max_value_error <= kIdentityTol;

    // pi*(0) = theta, pi*(1) = 0, strict margins
    rep.optimal_policy_matches =
        opt.policy.action(0, 0) == inst.theta && opt.policy.action(0, 1) == 0;

    const OccupancyDistribution d_b =
        occupancy_discounted(inst.mdp, inst.behavior, inst.initial_dist_b);
    rep.max_occupancy_error = max_abs_diff(d_b.state_action, inst.behavior_occupancy);
    rep.behavior_occupancy_identity = rep.max_occupancy_error <= kOccupancyTol;

    const OccupancyDistribution d_star =
        occupancy_discounted(inst.mdp, opt.policy, inst.test_dist);
    const ConcentrabilityReport con =
        concentrability(d_star.state_action, d_b.state_action, inst.num_states, 2);
    rep.concentrability_error =
        std::abs(con.c_star_clipped - 2.0 * inst.concentrability_driver);
    rep.concentrability_identity = rep.concentrability_error <= kIdentityTol;
    return rep;
}

InstanceReport verify_instance(const FiniteHardInstance& inst) {
    InstanceReport rep;
    const int S = inst.num_states, H = inst.horizon;
    const OptimalSolution opt = solve_optimal(inst.mdp);

    // V*_h(1) = (H+1-h)/2 for every step, and V*_1(0) >= 2H/3.
    double verr = 0.0;
    for (int h = 0; h < H; ++h)
        verr = std::max(verr, std::abs(opt.value[static_cast<std::size_t>(h) * S + 1] -
                                       0.5 * (H - h)));
    rep.max_value_error = verr;
    rep.value_identity =
        verr <= kIdentityTol && opt.value[0] >= 2.0 / 3.0 * H - kIdentityTol;

    // pi*_h(0) = theta_h with strict margins for h < H; the last step is an
    // exact tie, so require theta_H to be optimal there within tolerance.
    bool policy_ok = true;
    for (int h = 0; h + 1 < H; ++h)
        policy_ok = policy_ok && opt.policy.action(h, 0) == inst.theta[h];
    {
        const double* last_q = opt.q.data() + (static_cast<std::size_t>(H - 1) * S + 0) * 2;
        const double best = std::max(last_q[0], last_q[1]);
        policy_ok = policy_ok && last_q[inst.theta[H - 1]] >= best - kIdentityTol;
    }
    for (int h = 0; h < H; ++h)
        policy_ok = policy_ok && opt.policy.action(h, 1) == 0;
    rep.optimal_policy_matches = policy_ok;

    const OccupancyDistribution d_b =
        occupancy_episodic(inst.mdp, inst.behavior, inst.initial_dist_b);
    rep.max_occupancy_error = max_abs_diff(d_b.state_action, inst.behavior_occupancy);
    rep.behavior_occupancy_identity = rep.max_occupancy_error <= kOccupancyTol;

    const OccupancyDistribution d_star =
        occupancy_episodic(inst.mdp, opt.policy, inst.test_dist);
    const ConcentrabilityReport con =
        concentrability(d_star.state_action, d_b.state_action, S, 2);
    rep.concentrability_error =
        std::abs(con.c_star_clipped - 2.0 * inst.concentrability_driver);
    rep.concentrability_identity = rep.concentrability_error <= kIdentityTol;
    return rep;
}

} // namespace vilcb

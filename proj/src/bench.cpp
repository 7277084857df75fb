#include "vilcb/bench.hpp"

#include "vilcb/io.hpp"
#include "vilcb/rng.hpp"
#include "vilcb/sampling.hpp"
#include "vilcb/solve.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace vilcb {

void RunConfig::validate() const {
    if (grid.empty())
        throw std::invalid_argument("RunConfig: grid must be nonempty");
    if (trials < 1)
        throw std::invalid_argument("RunConfig: trials must be >= 1");
    if (algorithm != "vi-lcb" && algorithm != "vi")
        throw std::invalid_argument("RunConfig: algorithm must be vi-lcb or vi");
    if (!(c_b > 0.0))
        throw std::invalid_argument("RunConfig: c_b must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("RunConfig: delta must lie in (0, 1)");
    for (std::int64_t n : grid)
        if (n < 0)
            throw std::invalid_argument("RunConfig: grid entries must be nonnegative");
}

std::vector<std::int64_t> default_gambler_grid() {
    std::vector<std::int64_t> grid;
    for (int k = 0; k <= 12; ++k)
        grid.push_back(static_cast<std::int64_t>(std::ceil(std::exp(4.0 + 0.5 * k))));
    return grid;
}

namespace {

ScalingRow aggregate(std::int64_t n, const std::vector<double>& gaps) {
    ScalingRow row;
    row.n = n;
    double mean = 0.0;
    for (double g : gaps)
        mean += g;
    mean /= static_cast<double>(gaps.size());
    row.mean_gap = mean;
    if (gaps.size() > 1) {
        double ss = 0.0;
        for (double g : gaps)
            ss += (g - mean) * (g - mean);
        row.std_gap = std::sqrt(ss / static_cast<double>(gaps.size() - 1));
    }
    return row;
}

double clamp_gap(double g) { return g < 0.0 && g > -1e-10 ? 0.0 : g; }

} // namespace

std::vector<ScalingRow> run_gambler(const GamblerSpec& spec, const RunConfig& config) {
    config.validate();
    const EpisodicMDP mdp = spec.build_mdp();
    const OptimalSolution opt = solve_optimal(mdp);
    const std::vector<std::uint8_t> mask = spec.action_mask();
    const std::vector<double> rho = spec.uniform_rho();
    const int S = spec.num_states;

    double v_star = 0.0;
    for (int s = 0; s < S; ++s)
        v_star += rho[s] * opt.value[s];

    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        std::vector<double> gaps;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t run_seed = derive_seed(
                config.seed, "gambler_trial",
                i * static_cast<std::uint64_t>(config.trials) + static_cast<std::uint64_t>(t));
            const GamblerEmpirical model =
                config.total_n ? sample_gambler_model_total(spec, config.grid[i], run_seed)
                               : sample_gambler_model(spec, config.grid[i], run_seed);
            PenaltyConfig cfg;
            cfg.c_b = config.c_b;
            cfg.delta = config.delta;
            cfg = cfg.with_sample_size(model.total_samples);
            const VILCBResult res =
                vi_lcb_finite_model(model.kernel, model.counts, mdp.reward, cfg, mask,
                                    /*penalize=*/config.algorithm == "vi-lcb");
            const std::vector<double> v_hat = policy_eval_episodic(mdp, res.policy);
            double v_pi = 0.0;
            for (int s = 0; s < S; ++s)
                v_pi += rho[s] * v_hat[s];
            gaps.push_back(clamp_gap(v_star - v_pi));
        }
        rows.push_back(aggregate(config.grid[i], gaps));
    }
    return rows;
}

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("fit_slope: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0) {
            std::cerr << "fit_slope: warning: dropping nonpositive point (" << x[i] << ", "
                      << y[i] << ")\n";
            continue;
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    SlopeFit fit;
    fit.used_points = static_cast<int>(lx.size());
    if (lx.size() < 2)
        throw std::invalid_argument("fit_slope: need at least two usable points");
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_slope: degenerate x values");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

std::vector<ScalingRow> run_scaling(const DiscountedMDP& mdp, Pipeline pipeline,
                                    const RunConfig& config) {
    config.validate();
    if (pipeline == Pipeline::SubsampledFinite)
        throw std::invalid_argument("run_scaling: episodic pipeline needs an EpisodicMDP");
    const int S = mdp.num_states, A = mdp.num_actions;
    const OptimalSolution opt = solve_optimal(mdp);
    const std::vector<double> rho(S, 1.0 / S);
    double v_star = 0.0;
    for (int s = 0; s < S; ++s)
        v_star += rho[s] * opt.value[s];
    const std::vector<double> d_b(static_cast<std::size_t>(S) * A,
                                  1.0 / (static_cast<double>(S) * A));
    const Policy pi_b = Policy::uniform(S, A);

    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        std::vector<double> gaps;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t run_seed = derive_seed(
                config.seed, "scaling_trial",
                i * static_cast<std::uint64_t>(config.trials) + static_cast<std::uint64_t>(t));
            PenaltyConfig cfg;
            cfg.c_b = config.c_b;
            cfg.delta = config.delta;
            VILCBResult res;
            if (pipeline == Pipeline::IidInfinite) {
                const TransitionDataset ds = gen_iid(mdp, d_b, config.grid[i], run_seed);
                res = config.algorithm == "vi-lcb"
                          ? vi_lcb_infinite(ds, S, A, mdp.discount, mdp.reward, cfg,
                                            config.tau_max)
                          : plain_vi_infinite(ds, S, A, mdp.discount, mdp.reward,
                                              config.tau_max);
            } else {
                const MarkovTrajectory traj =
                    gen_markov(mdp, pi_b, 0, config.grid[i], run_seed);
                if (config.algorithm == "vi-lcb") {
                    res = subsampled_vi_lcb_markov(traj, S, A, mdp.discount, mdp.reward,
                                                   cfg, std::nullopt, config.tau_max);
                } else {
                    res = plain_vi_infinite(flatten(traj), S, A, mdp.discount, mdp.reward,
                                            config.tau_max);
                }
            }
            const std::vector<double> v_hat = policy_eval_discounted(mdp, res.policy);
            double v_pi = 0.0;
            for (int s = 0; s < S; ++s)
                v_pi += rho[s] * v_hat[s];
            gaps.push_back(clamp_gap(v_star - v_pi));
        }
        rows.push_back(aggregate(config.grid[i], gaps));
    }
    return rows;
}

std::vector<ScalingRow> run_scaling(const EpisodicMDP& mdp, const RunConfig& config) {
    config.validate();
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    const OptimalSolution opt = solve_optimal(mdp);
    const std::vector<double> rho(S, 1.0 / S);
    double v_star = 0.0;
    for (int s = 0; s < S; ++s)
        v_star += rho[s] * opt.value[s];
    const Policy pi_b = Policy::uniform(S, A, 1);

    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        std::vector<double> gaps;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t run_seed = derive_seed(
                config.seed, "scaling_trial",
                i * static_cast<std::uint64_t>(config.trials) + static_cast<std::uint64_t>(t));
            const EpisodicDataset ds =
                gen_episodic(mdp, rho, pi_b, config.grid[i], run_seed);
            PenaltyConfig cfg;
            cfg.c_b = config.c_b;
            cfg.delta = config.delta;
            VILCBResult res;
            if (config.algorithm == "vi-lcb") {
                res = subsampled_vi_lcb_finite(ds, S, A, mdp.reward, cfg,
                                               derive_seed(run_seed, "subsample"));
            } else {
                res = plain_vi_finite(flatten(ds), S, A, H, mdp.reward);
            }
            const std::vector<double> v_hat = policy_eval_episodic(mdp, res.policy);
            double v_pi = 0.0;
            for (int s = 0; s < S; ++s)
                v_pi += rho[s] * v_hat[s];
            gaps.push_back(clamp_gap(v_star - v_pi));
        }
        rows.push_back(aggregate(config.grid[i], gaps));
    }
    return rows;
}

std::vector<HardDemoRow> run_hard_demo_infinite(const InfiniteHardPair& pair,
                                                const RunConfig& config) {
    config.validate();
    const int S = pair.m0.num_states;
    std::vector<HardDemoRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        int wrong = 0;
        for (int t = 0; t < config.trials; ++t) {
            const int theta = t % 2;
            const InfiniteHardInstance& inst = theta == 0 ? pair.m0 : pair.m1;
            const std::uint64_t run_seed = derive_seed(
                config.seed, "hard_demo",
                i * static_cast<std::uint64_t>(config.trials) + static_cast<std::uint64_t>(t));
            const TransitionDataset ds =
                gen_iid(inst.mdp, inst.behavior_occupancy, config.grid[i], run_seed);
            PenaltyConfig cfg;
            cfg.c_b = config.c_b;
            cfg.delta = config.delta;
            const VILCBResult res =
                config.algorithm == "vi-lcb"
                    ? vi_lcb_infinite(ds, S, 2, inst.discount, inst.mdp.reward, cfg,
                                      config.tau_max)
                    : plain_vi_infinite(ds, S, 2, inst.discount, inst.mdp.reward,
                                        config.tau_max);
            const int theta_hat = res.policy.action(0, 0);
            wrong += theta_hat != theta ? 1 : 0;
        }
        rows.push_back({config.grid[i],
                        static_cast<double>(wrong) / static_cast<double>(config.trials)});
    }
    return rows;
}

std::vector<HardDemoRow> run_hard_demo_finite(const std::vector<FiniteHardInstance>& family,
                                              const RunConfig& config) {
    config.validate();
    if (family.empty())
        throw std::invalid_argument("run_hard_demo_finite: empty family");
    const int S = family.front().num_states, H = family.front().horizon;

    // Nearest optimal-policy projection over the family: Hamming distance
    // between pihat's state-0 action sequence and each theta.
    auto project = [&](const Policy& pi_hat) {
        std::size_t best = 0;
        int best_dist = H + 1;
        for (std::size_t f = 0; f < family.size(); ++f) {
            int dist = 0;
            for (int h = 0; h < H; ++h)
                dist += pi_hat.action(h, 0) != family[f].theta[h] ? 1 : 0;
            if (dist < best_dist) {
                best_dist = dist;
                best = f;
            }
        }
        return best;
    };

    std::vector<HardDemoRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        int wrong = 0;
        for (int t = 0; t < config.trials; ++t) {
            const std::size_t theta_index = static_cast<std::size_t>(t) % family.size();
            const FiniteHardInstance& inst = family[theta_index];
            const std::uint64_t run_seed = derive_seed(
                config.seed, "hard_demo_finite",
                i * static_cast<std::uint64_t>(config.trials) + static_cast<std::uint64_t>(t));
            const EpisodicDataset ds = gen_episodic(inst.mdp, inst.initial_dist_b,
                                                    inst.behavior, config.grid[i], run_seed);
            PenaltyConfig cfg;
            cfg.c_b = config.c_b;
            cfg.delta = config.delta;
            VILCBResult res;
            if (config.algorithm == "vi-lcb") {
                res = subsampled_vi_lcb_finite(ds, S, 2, inst.mdp.reward, cfg,
                                               derive_seed(run_seed, "subsample"));
            } else {
                res = plain_vi_finite(flatten(ds), S, 2, H, inst.mdp.reward);
            }
            wrong += project(res.policy) != theta_index ? 1 : 0;
        }
        rows.push_back({config.grid[i],
                        static_cast<double>(wrong) / static_cast<double>(config.trials)});
    }
    return rows;
}

void write_scaling_csv(std::ostream& os, std::span<const ScalingRow> rows) {
    os << "n,mean_gap,std_gap\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_double(r.mean_gap) << ',' << format_double(r.std_gap)
           << '\n';
}

void write_hard_demo_csv(std::ostream& os, std::span<const HardDemoRow> rows) {
    os << "n,misidentification\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_double(r.misidentification) << '\n';
}

void write_result_csv(std::ostream& os, const VILCBResult& res, int S, int A, int H) {
    if (H > 0) {
        os << "h,s,a,q,b,n\n";
        for (int h = 0; h < H; ++h)
            for (int s = 0; s < S; ++s)
                for (int a = 0; a < A; ++a) {
                    const std::size_t cell = (static_cast<std::size_t>(h) * S + s) * A + a;
                    os << h + 1 << ',' << s << ',' << a << ','
                       << format_double(res.q[cell]) << ','
                       << format_double(res.penalty[cell]) << ',' << res.counts[cell]
                       << '\n';
                }
    } else {
        os << "s,a,q,b,n\n";
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::size_t cell = static_cast<std::size_t>(s) * A + a;
                os << s << ',' << a << ',' << format_double(res.q[cell]) << ','
                   << format_double(res.penalty[cell]) << ',' << res.counts[cell] << '\n';
            }
    }
}

void write_result_summary(std::ostream& os, const VILCBResult& res, double gap) {
    os << "gap " << format_double(gap) << '\n';
    os << "iterations " << res.iterations << '\n';
    os << "residuals";
    for (double d : res.deltas)
        os << ' ' << format_double(d);
    os << '\n';
}

} // namespace vilcb

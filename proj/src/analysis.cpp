#include "vilcb/analysis.hpp"

#include "vilcb/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vilcb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double num, double den) {
    if (num == 0.0)
        return 0.0; // 0/0 = 0 convention
    if (den == 0.0)
        return kInf;
    return num / den;
}

} // namespace

ConcentrabilityReport concentrability(std::span<const double> d_star,
                                      std::span<const double> d_b, int S, int A) {
    if (d_star.size() != d_b.size() || d_star.empty())
        throw std::invalid_argument("concentrability: occupancy size mismatch");
    if (d_star.size() % (static_cast<std::size_t>(S) * A) != 0)
        throw std::invalid_argument("concentrability: size not a multiple of S*A");
    const int H = static_cast<int>(d_star.size() / (static_cast<std::size_t>(S) * A));
    const bool stepped = d_star.size() > static_cast<std::size_t>(S) * A;

    ConcentrabilityReport rep;
    rep.d_star.assign(d_star.begin(), d_star.end());
    rep.d_b.assign(d_b.begin(), d_b.end());
    rep.c_star = -1.0;
    rep.c_star_clipped = -1.0;
    const double clip = 1.0 / S;
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::size_t i = (static_cast<std::size_t>(h) * S + s) * A + a;
                const double plain = ratio(d_star[i], d_b[i]);
                const double clipped = ratio(std::min(d_star[i], clip), d_b[i]);
                if (plain > rep.c_star) {
                    rep.c_star = plain;
                    rep.argmax_s = s;
                    rep.argmax_a = a;
                    rep.argmax_h = stepped ? h : -1;
                }
                if (clipped > rep.c_star_clipped) {
                    rep.c_star_clipped = clipped;
                    rep.argmax_clipped_s = s;
                    rep.argmax_clipped_a = a;
                    rep.argmax_clipped_h = stepped ? h : -1;
                }
            }
    return rep;
}

std::vector<double> behavior_chain(const DiscountedMDP& mdp, const Policy& pi_b) {
    const int S = mdp.num_states, A = mdp.num_actions;
    const int n = S * A;
    std::vector<double> chain(static_cast<std::size_t>(n) * n, 0.0);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const auto row = mdp.kernel_row(s, a);
            double* out = chain.data() + static_cast<std::size_t>(s * A + a) * n;
            for (int s2 = 0; s2 < S; ++s2) {
                if (row[s2] == 0.0)
                    continue;
                for (int a2 = 0; a2 < A; ++a2)
                    out[s2 * A + a2] = row[s2] * pi_b.prob(0, s2, a2);
            }
        }
    return chain;
}

namespace {

// True when every state can reach every other along positive-probability
// edges; used only to sharpen the non-convergence error message.
bool chain_irreducible(std::span<const double> chain, int n) {
    for (int start = 0; start < n; ++start) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (!seen[v] && chain[static_cast<std::size_t>(u) * n + v] > 0.0) {
                    seen[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
        }
        if (reached != n)
            return false;
    }
    return true;
}

} // namespace

std::vector<double> stationary_distribution(std::span<const double> chain, int n) {
    if (static_cast<int>(chain.size()) != n * n)
        throw std::invalid_argument("stationary_distribution: chain must be n*n");
    std::vector<double> mu(n, 1.0 / n), next(n, 0.0);
    const int max_iters = 1'000'000;
    for (int iter = 0; iter < max_iters; ++iter) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += mu[i] * chain[static_cast<std::size_t>(i) * n + j];
            next[j] = acc;
        }
        double delta = 0.0, total = 0.0;
        for (int j = 0; j < n; ++j) {
            delta = std::max(delta, std::abs(next[j] - mu[j]));
            total += next[j];
        }
        for (int j = 0; j < n; ++j)
            next[j] /= total;
        mu.swap(next);
        if (delta <= 1e-12) {
            // residual check ||mu^T P - mu^T||_inf
            double resid = 0.0;
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i)
                    acc += mu[i] * chain[static_cast<std::size_t>(i) * n + j];
                resid = std::max(resid, std::abs(acc - mu[j]));
            }
            if (resid <= 1e-10)
                return mu;
        }
    }
    if (!chain_irreducible(chain, n))
        throw std::runtime_error(
            "stationary_distribution: power iteration did not converge; chain is reducible");
    throw std::runtime_error(
        "stationary_distribution: power iteration did not converge; chain appears periodic");
}

int mixing_time(std::span<const double> chain, int n, double delta_mix, int t_cap) {
    if (!(delta_mix > 0.0 && delta_mix < 1.0))
        throw std::invalid_argument("mixing_time: delta must lie in (0, 1)");
    const std::vector<double> mu = stationary_distribution(chain, n);
    // power[i*n+j] = P^t(j | i)
    std::vector<double> power(chain.begin(), chain.end()), next(chain.size(), 0.0);
    for (int t = 1; t <= t_cap; ++t) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double tv = 0.0;
            for (int j = 0; j < n; ++j)
                tv += std::abs(power[static_cast<std::size_t>(i) * n + j] - mu[j]);
            worst = std::max(worst, 0.5 * tv);
        }
        if (worst <= delta_mix)
            return t;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k)
                    acc += power[static_cast<std::size_t>(i) * n + k] *
                           chain[static_cast<std::size_t>(k) * n + j];
                next[static_cast<std::size_t>(i) * n + j] = acc;
            }
        power.swap(next);
    }
    throw std::runtime_error("mixing_time: chain did not mix within the step cap");
}

double kl_bernoulli(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("kl_bernoulli: arguments must lie in [0, 1]");
    if (p == q)
        return 0.0;
    if (q == 0.0 || q == 1.0)
        return kInf;
    double acc = 0.0;
    if (p > 0.0)
        acc += p * std::log(p / q);
    if (p < 1.0)
        acc += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return acc;
}

double chi2_bernoulli(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("chi2_bernoulli: arguments must lie in [0, 1]");
    if (p == q)
        return 0.0;
    if (q == 0.0 || q == 1.0)
        return kInf;
    const double d = p - q;
    return d * d / q + d * d / (1.0 - q);
}

namespace {

// Solves n = rhs(n) by damped fixed-point iteration; the rhs is monotone and
// slowly varying in log(n), so this settles in a few dozen rounds.
template <typename Rhs> double fixed_point_size(Rhs rhs) {
    double n = std::max(rhs(10.0), 10.0);
    for (int iter = 0; iter < 200; ++iter) {
        const double next = rhs(n);
        if (std::abs(next - n) <= 1e-12 * std::max(1.0, std::abs(n)))
            return next;
        n = next;
    }
    return n;
}

} // namespace

double sample_predictor_infinite(int S, double c_star_clipped, double eps, double delta,
                                 double gamma, double c1) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("sample_predictor_infinite: bad arguments");
    const double one_minus = 1.0 - gamma;
    return fixed_point_size([&](double n) {
        const double log_term = std::log(std::max(n * S / (one_minus * delta), 2.0));
        return c1 * S * c_star_clipped * log_term /
               (one_minus * one_minus * one_minus * eps * eps);
    });
}

double sample_predictor_finite(int S, double c_star_clipped, double eps, double delta,
                               int H, double c_k) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || H < 1)
        throw std::invalid_argument("sample_predictor_finite: bad arguments");
    const double h = static_cast<double>(H);
    return fixed_point_size([&](double k) {
        const double log_term = std::log(std::max(k * h / delta, 2.0));
        return c_k * h * h * h * S * c_star_clipped * log_term / (eps * eps);
    });
}

double sample_predictor_markov(int S, double c_star_clipped, double eps, double delta,
                               double gamma, double t_mix, double c1) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || !(gamma > 0.0 && gamma < 1.0) ||
        !(t_mix >= 1.0))
        throw std::invalid_argument("sample_predictor_markov: bad arguments");
    const double one_minus = 1.0 - gamma;
    return fixed_point_size([&](double t) {
        const double log_term =
            std::log(std::max(665.0 * S * t_mix * t / (one_minus * delta), 2.0));
        const double lead = c1 * S * c_star_clipped * log_term /
                            (one_minus * one_minus * one_minus * eps * eps);
        const double mix = c1 * t_mix * S * c_star_clipped * log_term /
                           (one_minus * one_minus * eps);
        return lead + mix;
    });
}

double instance_bound(const EpisodicMDP& mdp, std::span<const double> rho,
                      std::span<const double> rho_b, const Policy& pi_b, std::int64_t K,
                      double delta, double c_b) {
    if (K < 1)
        throw std::invalid_argument("instance_bound: K must be >= 1");
    const int S = mdp.num_states, H = mdp.horizon;
    const OptimalSolution opt = solve_optimal(mdp);
    const OccupancyDistribution d_star = occupancy_episodic(mdp, opt.policy, rho);
    const OccupancyDistribution d_b = occupancy_episodic(mdp, pi_b, rho_b);
    const double n_total = static_cast<double>(K) * H;
    const double log_term = std::log(n_total * H / delta);

    double bound = 0.0;
    for (int j = 0; j < H; ++j) {
        for (int s = 0; s < S; ++s) {
            const double weight = d_star.state[static_cast<std::size_t>(j) * S + s];
            if (weight == 0.0)
                continue;
            const int a_star = opt.policy.action(j, s);
            const double den =
                d_b.state_action[(static_cast<std::size_t>(j) * S + s) * mdp.num_actions +
                                 a_star];
            if (den == 0.0)
                return kInf;
            // Var of V*_{j+1} under the true kernel row; zero at the last step.
            double var = 0.0;
            if (j + 1 < H)
                var = variance_under(
                    mdp.kernel_row(j, s, a_star),
                    std::span<const double>(opt.value.data() +
                                                static_cast<std::size_t>(j + 1) * S,
                                            S));
            bound += weight * std::sqrt(c_b * log_term / (static_cast<double>(K) * den) * var);
        }
    }
    return 12.0 * bound;
}

} // namespace vilcb

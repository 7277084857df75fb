#include "vilcb/solve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vilcb {

namespace {

constexpr double kDistTol = 1e-9;

void check_distribution(std::span<const double> dist, const char* what) {
    double sum = 0.0;
    for (double v : dist) {
        if (v < 0.0)
            throw std::invalid_argument(std::string(what) + ": negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kDistTol)
        throw std::invalid_argument(std::string(what) + ": distribution not normalized");
}

// Row-stochastic matrix of the Markov chain over states induced by pi, plus
// the policy-averaged reward vector.
void policy_matrix(const DiscountedMDP& mdp, const Policy& pi,
                   std::vector<double>& p_pi, std::vector<double>& r_pi) {
    const int S = mdp.num_states, A = mdp.num_actions;
    p_pi.assign(static_cast<std::size_t>(S) * S, 0.0);
    r_pi.assign(S, 0.0);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double w = pi.prob(0, s, a);
            if (w == 0.0)
                continue;
            r_pi[s] += w * mdp.r(s, a);
            const auto row = mdp.kernel_row(s, a);
            for (int s2 = 0; s2 < S; ++s2)
                p_pi[static_cast<std::size_t>(s) * S + s2] += w * row[s2];
        }
    }
}

void policy_matrix_step(const EpisodicMDP& mdp, const Policy& pi, int h,
                        std::vector<double>& p_pi, std::vector<double>& r_pi) {
    const int S = mdp.num_states, A = mdp.num_actions;
    p_pi.assign(static_cast<std::size_t>(S) * S, 0.0);
    r_pi.assign(S, 0.0);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double w = pi.prob(h, s, a);
            if (w == 0.0)
                continue;
            r_pi[s] += w * mdp.r(h, s, a);
            const auto row = mdp.kernel_row(h, s, a);
            for (int s2 = 0; s2 < S; ++s2)
                p_pi[static_cast<std::size_t>(s) * S + s2] += w * row[s2];
        }
    }
}

std::vector<double> solve_linear_discounted(const std::vector<double>& p_pi,
                                            const std::vector<double>& r_pi, int S,
                                            double gamma) {
    // (I - gamma P) V = r
    Eigen::MatrixXd m(S, S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            m(i, j) = (i == j ? 1.0 : 0.0) - gamma * p_pi[static_cast<std::size_t>(i) * S + j];
    Eigen::VectorXd rhs(S);
    for (int i = 0; i < S; ++i)
        rhs(i) = r_pi[i];
    Eigen::VectorXd x = m.partialPivLu().solve(rhs);
    return std::vector<double>(x.data(), x.data() + S);
}

std::vector<double> iterate_discounted(const std::vector<double>& p_pi,
                                       const std::vector<double>& r_pi, int S,
                                       double gamma) {
    std::vector<double> v(S, 0.0), next(S, 0.0);
    // sup-norm error of the fixed point is residual * gamma / (1 - gamma)
    const double target = kSolveTol * (1.0 - gamma) / std::max(gamma, 1e-12);
    for (int iter = 0; iter < 10'000'000; ++iter) {
        double delta = 0.0;
        for (int s = 0; s < S; ++s) {
            double acc = r_pi[s];
            const double* row = p_pi.data() + static_cast<std::size_t>(s) * S;
            double dot = 0.0;
            for (int s2 = 0; s2 < S; ++s2)
                dot += row[s2] * v[s2];
            acc += gamma * dot;
            delta = std::max(delta, std::abs(acc - v[s]));
            next[s] = acc;
        }
        v.swap(next);
        if (delta <= target)
            break;
    }
    return v;
}

} // namespace

int argmax_lowest(std::span<const double> values) {
    int best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = static_cast<int>(i);
    return best;
}

double variance_under(std::span<const double> dist, std::span<const double> v) {
    if (dist.size() != v.size())
        throw std::invalid_argument("variance_under: size mismatch");
    check_distribution(dist, "variance_under");
    double mean = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        mean += dist[i] * v[i];
    double var = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double d = v[i] - mean;
        var += dist[i] * d * d;
    }
    return var < 0.0 ? 0.0 : var;
}

std::vector<double> policy_eval_discounted(const DiscountedMDP& mdp, const Policy& pi) {
    std::vector<double> p_pi, r_pi;
    policy_matrix(mdp, pi, p_pi, r_pi);
    if (mdp.discount == 0.0)
        return r_pi;
    if (mdp.num_states <= kDenseSolveMaxStates)
        return solve_linear_discounted(p_pi, r_pi, mdp.num_states, mdp.discount);
    return iterate_discounted(p_pi, r_pi, mdp.num_states, mdp.discount);
}

std::vector<double> policy_eval_episodic(const EpisodicMDP& mdp, const Policy& pi) {
    const int S = mdp.num_states, H = mdp.horizon;
    std::vector<double> values(static_cast<std::size_t>(H) * S, 0.0);
    std::vector<double> v_next(S, 0.0);
    std::vector<double> p_pi, r_pi;
    for (int h = H - 1; h >= 0; --h) {
        policy_matrix_step(mdp, pi, h, p_pi, r_pi);
        for (int s = 0; s < S; ++s) {
            double acc = r_pi[s];
            const double* row = p_pi.data() + static_cast<std::size_t>(s) * S;
            for (int s2 = 0; s2 < S; ++s2)
                acc += row[s2] * v_next[s2];
            values[static_cast<std::size_t>(h) * S + s] = acc;
        }
        std::copy(values.begin() + static_cast<std::size_t>(h) * S,
                  values.begin() + static_cast<std::size_t>(h + 1) * S, v_next.begin());
    }
    return values;
}

std::vector<double> policy_q_discounted(const DiscountedMDP& mdp, const Policy& pi) {
    const int S = mdp.num_states, A = mdp.num_actions;
    const std::vector<double> v = policy_eval_discounted(mdp, pi);
    std::vector<double> q(static_cast<std::size_t>(S) * A, 0.0);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const auto row = mdp.kernel_row(s, a);
            double dot = 0.0;
            for (int s2 = 0; s2 < S; ++s2)
                dot += row[s2] * v[s2];
            q[static_cast<std::size_t>(s) * A + a] = mdp.r(s, a) + mdp.discount * dot;
        }
    return q;
}

OptimalSolution solve_optimal(const DiscountedMDP& mdp) {
    const int S = mdp.num_states, A = mdp.num_actions;
    const double gamma = mdp.discount;
    std::vector<double> v(S, 0.0), q(static_cast<std::size_t>(S) * A, 0.0);
    for (int iter = 0; iter < 10'000'000; ++iter) {
        double delta = 0.0;
        for (int s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < A; ++a) {
                const auto row = mdp.kernel_row(s, a);
                double dot = 0.0;
                for (int s2 = 0; s2 < S; ++s2)
                    dot += row[s2] * v[s2];
                const double val = mdp.r(s, a) + gamma * dot;
                q[static_cast<std::size_t>(s) * A + a] = val;
                best = std::max(best, val);
            }
            delta = std::max(delta, std::abs(best - v[s]));
            v[s] = best; // Gauss-Seidel style update is fine for contraction
        }
        if (delta <= kSolveTol)
            break;
    }
    std::vector<int> acts(S, 0);
    for (int s = 0; s < S; ++s)
        acts[s] = argmax_lowest(
            std::span<const double>(q.data() + static_cast<std::size_t>(s) * A, A));
    OptimalSolution sol;
    sol.policy = Policy::make_deterministic(S, A, std::move(acts));
    // Refine to machine precision: exact evaluation of the greedy policy.
    sol.value = policy_eval_discounted(mdp, sol.policy);
    sol.q = policy_q_discounted(mdp, sol.policy);
    return sol;
}

OptimalSolution solve_optimal(const EpisodicMDP& mdp) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    OptimalSolution sol;
    sol.value.assign(static_cast<std::size_t>(H) * S, 0.0);
    sol.q.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    std::vector<int> acts(static_cast<std::size_t>(H) * S, 0);
    std::vector<double> v_next(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        for (int s = 0; s < S; ++s) {
            double* qrow = sol.q.data() + (static_cast<std::size_t>(h) * S + s) * A;
            for (int a = 0; a < A; ++a) {
                const auto row = mdp.kernel_row(h, s, a);
                double dot = 0.0;
                for (int s2 = 0; s2 < S; ++s2)
                    dot += row[s2] * v_next[s2];
                qrow[a] = mdp.r(h, s, a) + dot;
            }
            const int best = argmax_lowest(std::span<const double>(qrow, A));
            acts[static_cast<std::size_t>(h) * S + s] = best;
            sol.value[static_cast<std::size_t>(h) * S + s] = qrow[best];
        }
        std::copy(sol.value.begin() + static_cast<std::size_t>(h) * S,
                  sol.value.begin() + static_cast<std::size_t>(h + 1) * S, v_next.begin());
    }
    sol.policy = Policy::make_deterministic(S, A, std::move(acts), H);
    return sol;
}

OccupancyDistribution occupancy_episodic(const EpisodicMDP& mdp, const Policy& pi,
                                         std::span<const double> rho) {
    check_distribution(rho, "occupancy_episodic");
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    OccupancyDistribution occ;
    occ.num_states = S;
    occ.num_actions = A;
    occ.horizon = H;
    occ.policy = pi;
    occ.initial.assign(rho.begin(), rho.end());
    occ.state.assign(static_cast<std::size_t>(H) * S, 0.0);
    occ.state_action.assign(static_cast<std::size_t>(H) * S * A, 0.0);

    std::copy(rho.begin(), rho.end(), occ.state.begin()); // d_1 = rho exactly
    std::vector<double> p_pi, r_pi;
    for (int h = 0; h < H; ++h) {
        const double* d = occ.state.data() + static_cast<std::size_t>(h) * S;
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a)
                occ.state_action[(static_cast<std::size_t>(h) * S + s) * A + a] =
                    d[s] * pi.prob(h, s, a);
        if (h + 1 < H) {
            policy_matrix_step(mdp, pi, h, p_pi, r_pi);
            double* dn = occ.state.data() + static_cast<std::size_t>(h + 1) * S;
            for (int s2 = 0; s2 < S; ++s2) {
                double acc = 0.0;
                for (int s = 0; s < S; ++s)
                    acc += d[s] * p_pi[static_cast<std::size_t>(s) * S + s2];
                dn[s2] = acc;
            }
        }
    }
    return occ;
}

OccupancyDistribution occupancy_discounted(const DiscountedMDP& mdp, const Policy& pi,
                                           std::span<const double> rho) {
    check_distribution(rho, "occupancy_discounted");
    const int S = mdp.num_states, A = mdp.num_actions;
    const double gamma = mdp.discount;
    OccupancyDistribution occ;
    occ.num_states = S;
    occ.num_actions = A;
    occ.horizon = 0;
    occ.policy = pi;
    occ.initial.assign(rho.begin(), rho.end());
    occ.state.assign(S, 0.0);

    std::vector<double> p_pi, r_pi;
    policy_matrix(mdp, pi, p_pi, r_pi);
    if (S <= kDenseSolveMaxStates) {
        // Solve (I - gamma P^T) x = rho, d = (1 - gamma) x.
        Eigen::MatrixXd m(S, S);
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j)
                m(i, j) =
                    (i == j ? 1.0 : 0.0) - gamma * p_pi[static_cast<std::size_t>(j) * S + i];
        Eigen::VectorXd rhs(S);
        for (int i = 0; i < S; ++i)
            rhs(i) = rho[i];
        Eigen::VectorXd x = m.partialPivLu().solve(rhs);
        for (int i = 0; i < S; ++i)
            occ.state[i] = (1.0 - gamma) * x(i);
    } else {
        // d^T = (1-gamma) sum_t gamma^t rho^T P^t, truncated once the tail
        // gamma^{t+1} drops below the 1e-10 bound.
        std::vector<double> cur(rho.begin(), rho.end()), next(S, 0.0);
        double scale = 1.0 - gamma;
        for (int i = 0; i < S; ++i)
            occ.state[i] = scale * cur[i];
        double tail = gamma;
        while (tail > 1e-10) {
            for (int s2 = 0; s2 < S; ++s2) {
                double acc = 0.0;
                for (int s = 0; s < S; ++s)
                    acc += cur[s] * p_pi[static_cast<std::size_t>(s) * S + s2];
                next[s2] = acc;
            }
            cur.swap(next);
            scale *= gamma;
            for (int i = 0; i < S; ++i)
                occ.state[i] += scale * cur[i];
            tail *= gamma;
        }
    }
    occ.state_action.assign(static_cast<std::size_t>(S) * A, 0.0);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            occ.state_action[static_cast<std::size_t>(s) * A + a] =
                occ.state[s] * pi.prob(0, s, a);
    return occ;
}

namespace {

double weighted(std::span<const double> rho, const std::vector<double>& v, int offset = 0) {
    double acc = 0.0;
    for (std::size_t s = 0; s < rho.size(); ++s)
        acc += rho[s] * v[offset + s];
    return acc;
}

double clamp_gap(double g) {
    if (g < 0.0 && g > -1e-10)
        return 0.0;
    return g;
}

} // namespace

double value_gap(const DiscountedMDP& mdp, std::span<const double> rho, const Policy& pi_hat) {
    const auto opt = solve_optimal(mdp);
    const auto v_hat = policy_eval_discounted(mdp, pi_hat);
    return clamp_gap(weighted(rho, opt.value) - weighted(rho, v_hat));
}

double value_gap(const EpisodicMDP& mdp, std::span<const double> rho, const Policy& pi_hat) {
    const auto opt = solve_optimal(mdp);
    const auto v_hat = policy_eval_episodic(mdp, pi_hat);
    return clamp_gap(weighted(rho, opt.value) - weighted(rho, v_hat));
}

} // namespace vilcb

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace airoas::testing {

/// Brute-force value iteration on a finite MDP given as dense tables.
/// transitions[s][a][s'] is a probability, rewards[s][a] an expected
/// immediate reward.
struct ViResult {
    std::vector<double> value;
    std::vector<int> policy;
};

inline ViResult value_iteration(const std::vector<std::vector<std::vector<double>>>& transitions,
                                const std::vector<std::vector<double>>& rewards, double gamma,
                                int sweeps = 10000, double tol = 1e-13) {
    const std::size_t n = transitions.size();
    const std::size_t actions = transitions[0].size();
    ViResult result;
    result.value.assign(n, 0.0);
    result.policy.assign(n, 0);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double delta = 0.0;
        std::vector<double> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            double best = -1e300;
            int best_action = 0;
            for (std::size_t a = 0; a < actions; ++a) {
                double q = rewards[s][a];
                for (std::size_t t = 0; t < n; ++t)
                    q += gamma * transitions[s][a][t] * result.value[t];
                if (q > best) {
                    best = q;
                    best_action = static_cast<int>(a);
                }
            }
            next[s] = best;
            result.policy[s] = best_action;
            delta = std::max(delta, std::abs(best - result.value[s]));
        }
        result.value = next;
        if (delta < tol) break;
    }
    return result;
}

/// One predict+update step of the scalar Kalman filter for
/// x' = phi x + N(0, q^2), o = x' + N(0, r^2).
struct KalmanBelief {
    double mean = 0.0;
    double var = 1.0;
};

inline KalmanBelief kalman_step(const KalmanBelief& prior, double phi, double process_std,
                                double obs_std, double obs) {
    const double pred_mean = phi * prior.mean;
    const double pred_var = phi * phi * prior.var + process_std * process_std;
    const double gain = pred_var / (pred_var + obs_std * obs_std);
    KalmanBelief post;
    post.mean = pred_mean + gain * (obs - pred_mean);
    post.var = (1.0 - gain) * pred_var;
    return post;
}

/// Product of two Gaussians: the exact posterior for a Gaussian prior and
/// Gaussian likelihood in 1D.
struct GaussianPosterior {
    double mean = 0.0;
    double var = 1.0;
};

inline GaussianPosterior gaussian_product(double prior_mean, double prior_var, double obs,
                                          double obs_var) {
    GaussianPosterior post;
    post.var = 1.0 / (1.0 / prior_var + 1.0 / obs_var);
    post.mean = post.var * (prior_mean / prior_var + obs / obs_var);
    return post;
}

/// chi-square critical values at p = 0.01, frozen from standard tables.
inline double chi_square_critical_p01(int dof) {
    switch (dof) {
        case 1: return 6.6348966010;
        case 2: return 9.2103403720;
        case 3: return 11.3448667301;
        case 4: return 13.2767041360;
        case 9: return 21.6659943335;
        default: return -1.0;
    }
}

}  // namespace airoas::testing

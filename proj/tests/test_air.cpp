#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "airoas/air.hpp"
#include "support/oracles.hpp"
#include "support/toy_models.hpp"

using namespace airoas;
using airoas::testing::DiscreteToyModel;
using airoas::testing::ScalarModel;

namespace {

WeightedParticleSet<ScalarModel::State> scalar_set(const std::vector<double>& xs,
                                                   const std::vector<double>& ws) {
    WeightedParticleSet<ScalarModel::State> b;
    for (double x : xs) b.states.push_back({x});
    b.weights = ws;
    return b;
}

}  // namespace

TEST_CASE("tempering schedule: endpoints, monotonicity, sizes") {
    CHECK_THROWS_AS(tempering_schedule(1), std::invalid_argument);

    // Sigmoid midpoint symmetry.
    CHECK(tempering_beta(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    // Direct evaluation at the first grid point x = 1e-3.
    CHECK(tempering_beta(1e-3) ==
          doctest::Approx(0.00675966051071325064).epsilon(1e-12));

    const TemperingSchedule small = tempering_schedule(2);
    REQUIRE(small.betas.size() == 3);
    CHECK(small.betas[0] == 0.0);
    CHECK(small.betas[1] == doctest::Approx(0.00675966051071325064).epsilon(1e-12));
    CHECK(small.betas[2] == 1.0);

    const TemperingSchedule schedule = tempering_schedule(100);
    REQUIRE(schedule.betas.size() == 101);
    CHECK(schedule.betas.front() == 0.0);
    CHECK(schedule.betas.back() == 1.0);
    for (std::size_t i = 1; i < schedule.betas.size(); ++i)
        CHECK(schedule.betas[i] >= schedule.betas[i - 1]);
    // Interior strictly increasing.
    for (std::size_t i = 2; i + 1 < schedule.betas.size(); ++i)
        CHECK(schedule.betas[i] > schedule.betas[i - 1]);
}

TEST_CASE("update_weights applies the tempered likelihood increment") {
    ScalarModel model;
    model.likelihood = [](double, double) { return 0.2; };
    auto b = scalar_set({1.0}, {1.0});

    SUBCASE("equal betas leave weights unchanged") {
        const auto out = update_weights(b, 0.0, 0, 0.4, 0.4, model);
        CHECK(out.weights[0] == 1.0);
    }
    SUBCASE("direct evaluation of the increment ratio") {
        const auto out = update_weights(b, 0.0, 0, 0.6, 0.4, model);
        CHECK(out.weights[0] == doctest::Approx(std::pow(0.2, 0.2)).epsilon(1e-15));
        CHECK(out.weights[0] == doctest::Approx(0.72477966367769553).epsilon(1e-12));
    }
    SUBCASE("one-step schedule collapses to the bootstrap weight") {
        const auto out = update_weights(b, 0.0, 0, 1.0, 0.0, model);
        CHECK(out.weights[0] == doctest::Approx(0.2).epsilon(1e-15));
    }
    SUBCASE("zero density for every particle raises") {
        model.likelihood = [](double, double) { return 0.0; };
        CHECK_THROWS_AS(update_weights(b, 0.0, 0, 0.5, 0.25, model), ZeroTotalWeightError);
        // ... but a zero-length increment is a no-op even then.
        const auto out = update_weights(b, 0.0, 0, 0.5, 0.5, model);
        CHECK(out.weights[0] == 1.0);
    }
    SUBCASE("states are never touched") {
        const auto out = update_weights(b, 0.0, 0, 0.9, 0.1, model);
        CHECK(out.states == b.states);
    }
}

TEST_CASE("telescoping identity: increments multiply to the bootstrap weight") {
    Rng rng(42);
    ScalarModel model;
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = rng.uniform01() * 0.999 + 1e-3;
        model.likelihood = [p](double, double) { return p; };

        const std::size_t k = 2 + rng.uniform_below(11);
        std::vector<double> betas{0.0};
        for (std::size_t i = 0; i + 2 < k; ++i) betas.push_back(rng.uniform01());
        betas.push_back(1.0);
        std::sort(betas.begin(), betas.end());

        auto b = scalar_set({0.0}, {1.0});
        for (std::size_t i = 1; i < betas.size(); ++i)
            b = update_weights(b, 0.0, 0, betas[i], betas[i - 1], model);
        CHECK(b.weights[0] == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("inefficiency matches the normalized second moment") {
    CHECK(inefficiency(std::vector<double>{1.0, 1.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // (1.5^2 + 0.75^2 + 0.75^2) / 3
    CHECK(inefficiency(std::vector<double>{2.0, 1.0, 1.0}) ==
          doctest::Approx(1.125).epsilon(1e-15));
    CHECK_THROWS_AS(inefficiency(std::vector<double>{0.0, 0.0}), ZeroTotalWeightError);
}

TEST_CASE("inefficiency is scale invariant and at least one") {
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(10);
        std::vector<double> w(n);
        for (double& x : w) x = rng.uniform01() + 1e-6;
        const double base = inefficiency(std::span<const double>(w));
        CHECK(base >= 1.0 - 1e-12);

        const double c = rng.uniform01() * 9.0 + 0.1;
        std::vector<double> scaled = w;
        for (double& x : scaled) x *= c;
        CHECK(inefficiency(std::span<const double>(scaled)) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("acceptance probability follows the tempered likelihood ratio") {
    ScalarModel model;

    SUBCASE("identical likelihoods with a symmetric proposal accept") {
        model.likelihood = [](double, double) { return 0.4; };
        CHECK(acceptance_probability(ScalarModel::State{0.0}, ScalarModel::State{1.0}, 0.3,
                                     0.3, 0.0, 0, 1.0, model) == 1.0);
    }
    SUBCASE("uphill moves cap at one") {
        model.likelihood = [](double, double x) { return x > 0.5 ? 0.9 : 0.3; };
        CHECK(acceptance_probability(ScalarModel::State{0.0}, ScalarModel::State{1.0}, 0.3,
                                     0.3, 0.0, 0, 1.0, model) == 1.0);
    }
    SUBCASE("downhill moves follow the tempered ratio") {
        model.likelihood = [](double, double x) { return x > 0.5 ? 0.3 : 0.9; };
        const double p = acceptance_probability(ScalarModel::State{0.0},
                                                ScalarModel::State{1.0}, 0.3, 0.3, 0.0, 0,
                                                0.5, model);
        CHECK(p == doctest::Approx(0.57735026918962576).epsilon(1e-12));
        CHECK(p == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
    }
    SUBCASE("0/0 rejects, x/0 accepts") {
        model.likelihood = [](double, double) { return 0.0; };
        CHECK(acceptance_probability(ScalarModel::State{0.0}, ScalarModel::State{1.0}, 0.3,
                                     0.3, 0.0, 0, 1.0, model) == 0.0);
        model.likelihood = [](double, double x) { return x > 0.5 ? 0.7 : 0.0; };
        CHECK(acceptance_probability(ScalarModel::State{0.0}, ScalarModel::State{1.0}, 0.3,
                                     0.3, 0.0, 0, 1.0, model) == 1.0);
    }
}

TEST_CASE("mutate: accept-all and reject-all regimes") {
    Rng rng(17);
    ScalarModel model;
    auto b = scalar_set({0.0, 1.0, 2.0, 3.0}, {1.0, 2.0, 3.0, 4.0});

    SUBCASE("flat likelihood with symmetric proposal replaces every particle") {
        model.likelihood = [](double, double) { return 0.5; };
        const auto out = mutate(b, 0.0, 0, 1.0, model, rng);
        for (std::size_t j = 0; j < b.size(); ++j) CHECK(out.states[j].x != b.states[j].x);
        CHECK(out.weights == b.weights);
    }
    SUBCASE("zero-likelihood candidates never replace a live particle") {
        // Candidates land away from the original grid points with
        // probability one; give mass only to the original points.
        model.likelihood = [&](double, double x) {
            for (const auto& s : b.states)
                if (x == s.x) return 1.0;
            return 0.0;
        };
        const auto out = mutate(b, 0.0, 0, 1.0, model, rng);
        for (std::size_t j = 0; j < b.size(); ++j) CHECK(out.states[j].x == b.states[j].x);
    }
    SUBCASE("beta = 0 with symmetric proposal accepts every move") {
        model.likelihood = [](double, double x) { return std::abs(x) < 0.5 ? 0.9 : 0.1; };
        const auto out = mutate(b, 0.0, 0, 0.0, model, rng);
        for (std::size_t j = 0; j < b.size(); ++j) CHECK(out.states[j].x != b.states[j].x);
    }
}

TEST_CASE("mutation kernel satisfies detailed balance on the 3-state toy model") {
    DiscreteToyModel model;
    model.likelihood = {0.2, 0.5, 0.3};

    for (const double beta : {0.0, 0.5, 1.0}) {
        // Enumerate the induced transition matrix: propose each other state
        // with probability 1/2, accept by the tempered likelihood ratio.
        std::array<std::array<double, 3>, 3> kernel{};
        for (int i = 0; i < 3; ++i) {
            double stay = 1.0;
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const double accept = acceptance_probability(
                    DiscreteToyModel::State{i}, DiscreteToyModel::State{j}, 0.5, 0.5, 0, 0,
                    beta, model);
                kernel[i][j] = 0.5 * accept;
                stay -= kernel[i][j];
            }
            kernel[i][i] = stay;
        }
        std::array<double, 3> pi{};
        double z = 0.0;
        for (int i = 0; i < 3; ++i) {
            pi[i] = std::pow(model.likelihood[static_cast<std::size_t>(i)], beta);
            z += pi[i];
        }
        for (int i = 0; i < 3; ++i) pi[i] /= z;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(pi[i] * kernel[i][j] ==
                      doctest::Approx(pi[j] * kernel[j][i]).epsilon(1e-12));
    }
}

TEST_CASE("long-run mutation reproduces a 1D tempered Gaussian target") {
    // Likelihood N(obs; x, 1), beta = 1: with a symmetric proposal the
    // kernel densities cancel and the invariant law is N(obs, 1).
    // 2000 independent chains, 200 sweeps.
    ScalarModel model;
    model.proposal_sigma = 0.8;
    const double obs = 0.0;

    Rng rng(23);
    WeightedParticleSet<ScalarModel::State> b;
    const int n = 2000;
    for (int i = 0; i < n; ++i) b.states.push_back({3.0 + rng.normal()});
    b.weights.assign(n, 1.0);

    for (int sweep = 0; sweep < 200; ++sweep) b = mutate(b, obs, 0, 1.0, model, rng);

    double mean = 0.0;
    for (const auto& s : b.states) mean += s.x;
    mean /= n;
    double var = 0.0;
    for (const auto& s : b.states) var += (s.x - mean) * (s.x - mean);
    var /= n - 1;

    const double se_mean = 1.0 / std::sqrt(static_cast<double>(n));
    const double se_var = std::sqrt(2.0 / static_cast<double>(n));
    CHECK(std::abs(mean - obs) < 3.0 * se_mean);
    CHECK(std::abs(var - 1.0) < 3.0 * se_var);
}

TEST_CASE("air: flat likelihood exits at the first tempering step") {
    ScalarModel model;
    model.likelihood = [](double, double) { return 0.5; };
    Rng rng(31);

    AirConfig cfg;
    cfg.schedule = tempering_schedule(100);
    cfg.target_inefficiency = 2.0;

    auto b = scalar_set({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
    const auto out = annealed_importance_resampling(b, 0.0, 0, cfg, model, rng);
    CHECK(out.states == b.states);  // no resample, no mutation
    CHECK(inefficiency(out) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.size() == b.size());
}

TEST_CASE("air: [0,1] schedule equals bootstrap weighting + resample + mutate") {
    ScalarModel model;
    model.likelihood = [](double o, double x) { return airoas::testing::normal_pdf(o, x, 0.7); };
    const double obs = 1.5;

    WeightedParticleSet<ScalarModel::State> b;
    Rng init(3);
    for (int i = 0; i < 64; ++i) b.states.push_back({init.normal()});
    b.weights.assign(64, 1.0);

    AirConfig cfg;
    cfg.schedule.betas = {0.0, 1.0};
    cfg.target_inefficiency = 1.0;  // nonuniform weights never break early

    Rng rng_a(77);
    const auto via_air = annealed_importance_resampling(b, obs, 0, cfg, model, rng_a);

    Rng rng_b(77);
    auto manual = update_weights(b, obs, 0, 1.0, 0.0, model);
    manual = systematic_resample(manual, rng_b);
    manual = mutate(manual, obs, 0, 1.0, model, rng_b);

    REQUIRE(via_air.size() == manual.size());
    for (std::size_t j = 0; j < manual.size(); ++j) {
        CHECK(via_air.states[j].x == manual.states[j].x);
        CHECK(via_air.weights[j] == manual.weights[j]);
    }
}

TEST_CASE("air: sharply peaked likelihood pulls the cloud toward the posterior") {
    // Gaussian prior N(0,1), Gaussian likelihood N(obs; x, 0.05), obs = 3.
    const double obs = 3.0;
    const double lik_std = 0.05;
    ScalarModel model;
    model.likelihood = [&](double o, double x) {
        return airoas::testing::normal_pdf(o, x, lik_std);
    };
    model.distance_scaled_proposal = true;

    const auto posterior = airoas::testing::gaussian_product(0.0, 1.0, obs, lik_std * lik_std);

    AirConfig cfg;
    cfg.schedule = tempering_schedule(100);
    cfg.target_inefficiency = 2.0;

    Rng rng(55);
    const int n = 500;
    WeightedParticleSet<ScalarModel::State> b;
    for (int i = 0; i < n; ++i) b.states.push_back({rng.normal()});
    b.weights.assign(n, 1.0);
    // Entering belief carries the expansion's likelihood weights.
    b = update_weights(b, obs, 0, 1.0, 0.0, model);

    const double pre_ineff = inefficiency(b);
    double pre_mean = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) pre_mean += b.weights[j] * b.states[j].x;
    pre_mean /= b.total_weight();

    const auto out = annealed_importance_resampling(b, obs, 0, cfg, model, rng);
    CHECK(out.size() == b.size());

    const double post_ineff = inefficiency(out);
    double post_mean = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) post_mean += out.weights[j] * out.states[j].x;
    post_mean /= out.total_weight();

    CHECK(post_ineff <= pre_ineff);
    CHECK(std::abs(post_mean - posterior.mean) < std::abs(pre_mean - posterior.mean));
}

TEST_CASE("air preserves particle count and propagates degeneracy") {
    ScalarModel model;
    model.likelihood = [](double, double) { return 0.0; };
    AirConfig cfg;
    cfg.schedule = tempering_schedule(4);
    Rng rng(5);
    auto b = scalar_set({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(annealed_importance_resampling(b, 0.0, 0, cfg, model, rng),
                    ZeroTotalWeightError);
}

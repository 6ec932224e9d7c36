#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lcb/errors.hpp"
#include "lcb/priors.hpp"

using namespace lcb;

namespace {

PriorConfig figure_reference_config(int N) {
    PriorConfig cfg;
    cfg.truncation = N;
    cfg.weight_model = WeightModel::stick_breaking;
    cfg.total_mass = 1.0;
    cfg.gamma1_scale = 1.0;
    cfg.gamma2_scale = 1.0;
    cfg.support.mode = SupportMode::fixed;
    cfg.support.a = 0.0;
    cfg.support.b = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("truncation_level formula values") {
    CHECK(truncation_level(1500, 1.0) == 32);
    CHECK(truncation_level(2, 1.0) == 1);
    CHECK(truncation_level(50, 1.0) == 9);
    CHECK_THROWS_AS(truncation_level(1, 1.0), validation_error);
    CHECK_THROWS_AS(truncation_level(100, 0.0), validation_error);
}

TEST_CASE("draw_prior: single stick is deterministic") {
    auto cfg = figure_reference_config(1);
    Rng rng(9);
    auto m = draw_prior(cfg, 0.0, 1.0, rng);
    REQUIRE(m.weights.size() == 1);
    CHECK(m.weights[0] == 1.0);
}

TEST_CASE("draw_prior: reference draws are concave and reproducible") {
    auto cfg = figure_reference_config(8);
    std::vector<std::vector<double>> first;
    for (int run = 0; run < 2; ++run) {
        Rng rng(20260810);
        for (int k = 0; k < 5; ++k) {
            auto m = draw_prior(cfg, 0.0, 1.0, rng);
            Plf w = mixture_to_plf(m);
            CHECK(w.is_concave(1e-12));
            if (run == 0) {
                first.push_back(m.knots);
            } else {
                for (std::size_t i = 0; i < m.knots.size(); ++i)
                    CHECK(m.knots[i] == first[static_cast<std::size_t>(k)][i]);
            }
        }
    }
}

TEST_CASE("stick-breaking first weight matches the Beta(1,1) mean") {
    auto cfg = figure_reference_config(32);
    Rng rng(44);
    const int draws = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
        auto m = draw_prior(cfg, 0.0, 1.0, rng);
        sum += m.weights[0];
        sumsq += m.weights[0] * m.weights[0];
    }
    double mean = sum / draws;
    double var = sumsq / draws - mean * mean;
    double se = std::sqrt(var / draws);
    CHECK(std::fabs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("stick weights sum to one exactly, dirichlet within 1e-12") {
    auto cfg = figure_reference_config(16);
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        auto m = draw_prior(cfg, 0.0, 1.0, rng);
        double s = 0.0;
        for (double p : m.weights) s += p;
        CHECK(s == 1.0);
    }
    cfg.weight_model = WeightModel::dirichlet;
    cfg.dirichlet_alpha = 1.0;
    for (int i = 0; i < 200; ++i) {
        auto m = draw_prior(cfg, 0.0, 1.0, rng);
        double s = 0.0;
        for (double p : m.weights) s += p;
        CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("log_prior at the reference point matches closed forms") {
    const int N = 6;
    auto cfg = figure_reference_config(N);
    MixtureLogDensity m;
    m.a = 0.0;
    m.b = 1.0;
    std::vector<double> sticks(N - 1, 0.5);
    m.weights = sticks_to_weights(sticks);
    m.knots.assign(N, 0.5);
    m.gamma1 = 0.0;
    m.gamma2 = 0.0;
    double expected = std::log(2.0 / 3.14159265358979323846) +
                      std::log(1.0 / 3.14159265358979323846);
    CHECK(log_prior(cfg, m) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_prior rejections encode the domains") {
    auto cfg = figure_reference_config(3);
    MixtureLogDensity m;
    m.a = 0.0;
    m.b = 1.0;
    m.knots = {0.2, 0.4, 0.6};
    m.weights = {0.25, 0.25, 0.5};
    m.gamma1 = -0.5;
    m.gamma2 = 0.0;
    CHECK(log_prior(cfg, m) == -std::numeric_limits<double>::infinity());
    m.gamma1 = 0.5;
    m.knots[1] = 1.5;
    CHECK(log_prior(cfg, m) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("symmetric dirichlet log prior is exchangeable") {
    auto cfg = figure_reference_config(4);
    cfg.weight_model = WeightModel::dirichlet;
    cfg.dirichlet_alpha = 0.8;
    MixtureLogDensity m;
    m.a = 0.0;
    m.b = 1.0;
    m.knots = {0.1, 0.2, 0.3, 0.4};
    m.weights = {0.1, 0.2, 0.3, 0.4};
    double base = log_prior(cfg, m);
    std::reverse(m.weights.begin(), m.weights.end());
    CHECK(log_prior(cfg, m) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("stick conversion round trips") {
    std::vector<double> v = {0.3, 0.6, 0.1, 0.9};
    auto p = sticks_to_weights(v);
    double s = 0.0;
    for (double pi : p) s += pi;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
    auto v2 = weights_to_sticks(p);
    REQUIRE(v2.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(v2[i] == doctest::Approx(v[i]).epsilon(1e-12));
}

TEST_CASE("hierarchical support factor enters log_prior") {
    auto cfg = figure_reference_config(1);
    cfg.support.mode = SupportMode::hierarchical;
    MixtureLogDensity m;
    m.a = -0.5;
    m.b = 1.5;
    m.knots = {1.0};
    m.weights = {1.0};
    m.gamma1 = 0.0;
    m.gamma2 = 0.0;
    auto cfg_fixed = cfg;
    cfg_fixed.support.mode = SupportMode::fixed;
    cfg_fixed.support.a = -0.5;
    cfg_fixed.support.b = 1.5;
    double with_h = log_prior(cfg, m);
    double without = log_prior(cfg_fixed, m);
    double extra = log_cauchy_pdf(-0.5, 1.0) + log_half_cauchy_pdf(2.0, 1.0);
    CHECK(with_h - without == doctest::Approx(extra).epsilon(1e-13));
}

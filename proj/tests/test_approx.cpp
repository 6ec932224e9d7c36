#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lcb/approx.hpp"
#include "lcb/data_gen.hpp"
#include "lcb/errors.hpp"
#include "oracles.hpp"

using namespace lcb;

namespace {

ConcaveFn analytic(std::function<double(double)> v, std::function<double(double)> d,
                   std::vector<double> kinks = {}) {
    ConcaveFn f;
    f.value = v;
    f.dleft = d;
    f.dright = d;
    f.kinks = std::move(kinks);
    return f;
}

Partition uniform_partition(double a, double b, int m) {
    Partition p;
    for (int i = 0; i <= m; ++i) p.points.push_back(a + (b - a) * i / m);
    p.red.assign(p.points.size(), false);
    return p;
}

} // namespace

TEST_CASE("midpoint_interpolant reproduces a linear function") {
    auto w = [](double t) { return 2.0 * t - 0.3; };
    Plf out = midpoint_interpolant(w, uniform_partition(0.0, 1.0, 7));
    double sup = oracle::grid_sup_abs_diff([&](double t) { return out(t); }, w, 0.0, 1.0, 5000);
    CHECK(sup <= 1e-12);
}

TEST_CASE("midpoint_interpolant: interval averages of -x^2 are exact") {
    auto w = [](double t) { return -t * t; };
    Partition p = uniform_partition(-1.0, 1.0, 10);
    Plf out = midpoint_interpolant(w, p);
    // value at first midpoint equals the closed-form average over [x0,x1]
    double x0 = p.points[0], x1 = p.points[1];
    double avg = -(x0 * x0 + x0 * x1 + x1 * x1) / 3.0;
    CHECK(out(0.5 * (x0 + x1)) == doctest::Approx(avg).epsilon(1e-12));
    CHECK(out.is_concave(1e-10));
}

TEST_CASE("midpoint_interpolant error drops ~4x when m doubles") {
    auto w = [](double t) { return -t * t; };
    auto sup_err = [&](int m) {
        Plf out = midpoint_interpolant(w, uniform_partition(-1.0, 1.0, m));
        return oracle::grid_sup_abs_diff([&](double t) { return out(t); }, w, -1.0, 1.0, 20001);
    };
    double e10 = sup_err(10);
    double e20 = sup_err(20);
    double e40 = sup_err(40);
    CHECK(e10 / e20 > 4.0 / 1.5);
    CHECK(e20 / e40 > 4.0 / 1.5);
}

TEST_CASE("midpoint_interpolant concavity on random concave inputs") {
    std::mt19937_64 gen(42);
    std::uniform_int_distribution<int> msize(2, 24);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        Plf w = oracle::random_concave_plf(gen);
        // random (not uniform) partition over the same interval
        int m = msize(gen);
        Partition p;
        p.points.push_back(w.lo());
        for (int i = 0; i < m - 1; ++i)
            p.points.push_back(w.lo() + (w.hi() - w.lo()) * u01(gen));
        p.points.push_back(w.hi());
        std::sort(p.points.begin(), p.points.end());
        p.points.erase(std::unique(p.points.begin(), p.points.end(),
                                   [](double a, double b) { return b - a < 1e-4; }),
                       p.points.end());
        if (p.points.back() != w.hi()) p.points.push_back(w.hi());
        if (p.points.size() < 2) continue;
        p.red.assign(p.points.size(), false);
        Plf out = midpoint_interpolant([&](double t) { return w(t); }, p, 1e-12);
        CHECK(out.is_concave(1e-9));
    }
}

TEST_CASE("build_partition: linear function gives the uniform grid") {
    auto w = analytic([](double t) { return -t; }, [](double) { return -1.0; });
    Partition p = build_partition(w, 0.0, 1.0, 5);
    REQUIRE(p.points.size() == 6);
    for (int i = 0; i <= 5; ++i)
        CHECK(p.points[i] == doctest::Approx(i / 5.0).epsilon(1e-14));
}

TEST_CASE("build_partition: kink isolation for -|x| before thinning") {
    auto w = analytic([](double t) { return -std::fabs(t); },
                      [](double t) { return t < 0.0 ? 1.0 : -1.0; }, {0.0});
    // dleft(0)=1, dright(0)=-1 handled via one-sided handles
    w.dleft = [](double t) { return t <= 0.0 ? 1.0 : -1.0; };
    w.dright = [](double t) { return t < 0.0 ? 1.0 : -1.0; };
    PartitionTrace trace;
    Partition p = build_partition(w, -1.0, 1.0, 8, &trace);
    double delta = 2.0 / 64.0;
    auto contains = [&](double v) {
        for (double t : trace.with_kinks)
            if (std::fabs(t - v) < 1e-14) return true;
        return false;
    };
    CHECK(contains(0.0));
    CHECK(contains(-delta));
    CHECK(contains(delta));
    // postconditions
    double span = 2.0;
    double m = static_cast<double>(p.intervals());
    CHECK(p.points.size() <= 14u * 8u + 2u);
    CHECK(p.min_gap() >= span / (2.0 * m * m) - 1e-14);
}

TEST_CASE("build_partition postconditions on a smooth strictly concave function") {
    auto w = analytic([](double t) { return -t * t; }, [](double t) { return -2.0 * t; });
    for (int r : {2, 4, 8, 16, 32}) {
        Partition p = build_partition(w, 0.0, 1.0, r);
        double m = static_cast<double>(p.intervals());
        CHECK(static_cast<int>(p.intervals()) <= 14 * r + 1);
        CHECK(p.min_gap() >= 1.0 / (2.0 * m * m) - 1e-14);
        // red points have a short right gap
        for (std::size_t i = 0; i + 1 < p.points.size(); ++i)
            if (p.red[i])
                CHECK(p.points[i + 1] - p.points[i] <= 2.0 * 15.0 * 15.0 / (m * m) + 1e-12);
    }
}

TEST_CASE("build_partition sup error contracts ~m^-2 for -x^2") {
    auto w = analytic([](double t) { return -t * t; }, [](double t) { return -2.0 * t; });
    auto err_for = [&](int r) {
        Partition p = build_partition(w, 0.0, 1.0, r);
        Plf out = midpoint_interpolant(w.value, p);
        double e = oracle::grid_sup_abs_diff([&](double t) { return out(t); }, w.value, 0.0,
                                             1.0, 20001);
        return std::pair<double, double>(e, static_cast<double>(p.intervals()));
    };
    auto [e1, m1] = err_for(8);
    auto [e2, m2] = err_for(16);
    auto [e3, m3] = err_for(32);
    // C * M (b-a) / m^2 with M = 2; fixture constant from first validated run
    const double C_fixture = 1.0;
    CHECK(e1 <= C_fixture * 2.0 / (m1 * m1));
    CHECK(e2 <= C_fixture * 2.0 / (m2 * m2));
    CHECK(e3 <= C_fixture * 2.0 / (m3 * m3));
    CHECK(e1 / e2 > 4.0 / 1.5);
    CHECK(e2 / e3 > 4.0 / 1.5);
}

TEST_CASE("build_partition rejects a non-finite endpoint derivative") {
    auto model = density_model(make_gamma(2.0, 1.0));
    CHECK_THROWS_AS(build_partition(model.logpdf, 0.0, 1.0, 4), numeric_error);
}

TEST_CASE("plf_to_mixture: linear case has gamma1 = 0") {
    Plf w({0.0, 1.0}, {0.0, -1.0});
    MixtureRep rep = plf_to_mixture(w);
    CHECK(rep.mixture.gamma1 == 0.0);
    CHECK(rep.mixture.gamma2 == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(rep.mixture.knots.size() == 1);
    CHECK(rep.mixture.weights[0] == 1.0);
    CHECK(rep.gamma3 == 0.0);
}

TEST_CASE("plf_to_mixture: two-segment ramp inverts by hand") {
    Plf w({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0});
    MixtureRep rep = plf_to_mixture(w);
    CHECK(rep.mixture.gamma2 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rep.mixture.gamma1 == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(rep.mixture.knots.size() == 1);
    CHECK(rep.mixture.knots[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.mixture.weights[0] == 1.0);
}

TEST_CASE("plf_to_mixture rejects non-concave input") {
    Plf w({0.0, 0.5, 1.0}, {0.0, -1.0, 0.5});
    CHECK_THROWS_AS(plf_to_mixture(w), validation_error);
}

TEST_CASE("mixture <-> plf round trips on random concave plfs") {
    std::mt19937_64 gen(1234);
    for (int rep = 0; rep < 1000; ++rep) {
        Plf w = oracle::random_concave_plf(gen);
        MixtureRep mr = plf_to_mixture(w);
        Plf back = mixture_to_plf(mr.mixture);
        double sup = 0.0;
        for (std::size_t j = 0; j < w.x.size(); ++j)
            sup = std::max(sup, std::fabs(back(w.x[j]) + mr.gamma3 - w.y[j]));
        CHECK(sup <= 1e-10);
        // lemma bounds
        double M = (w.slope(0) - w.slope(w.segments() - 1)) * (w.hi() - w.lo());
        CHECK(mr.mixture.gamma1 <= M + 1e-9);
        CHECK(std::fabs(mr.mixture.gamma2) <= std::fabs(w.slope(w.segments() - 1)) + 1e-12);
    }
}

TEST_CASE("reverse round trip: mixture -> plf -> mixture") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        MixtureLogDensity m;
        m.a = 0.0;
        m.b = 1.0 + u01(gen);
        int n = 1 + static_cast<int>(u01(gen) * 5);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            m.knots.push_back(0.05 + 0.9 * u01(gen) * m.width());
            m.weights.push_back(0.05 + u01(gen));
            wsum += m.weights.back();
        }
        for (double& p : m.weights) p /= wsum;
        double s = 0.0;
        for (double p : m.weights) s += p;
        m.weights.back() += 1.0 - s;
        m.gamma1 = 0.2 + 2.0 * u01(gen);
        m.gamma2 = -1.0 + 2.0 * u01(gen);
        Plf w = mixture_to_plf(m);
        MixtureRep back = plf_to_mixture(w);
        Plf w2 = mixture_to_plf(back.mixture);
        double sup = 0.0;
        for (std::size_t j = 0; j < w.x.size(); ++j)
            sup = std::max(sup, std::fabs(w2(w.x[j]) + back.gamma3 - w(w.x[j])));
        CHECK(sup <= 1e-10);
    }
}

TEST_CASE("fit_envelope finds sane constants per family") {
    Envelope g = fit_envelope(density_model(make_gaussian(0.0, 1.0)));
    CHECK(g.alpha == doctest::Approx(1.0).epsilon(0.05));
    Envelope l = fit_envelope(density_model(make_laplace(0.0, 1.0)));
    CHECK(l.alpha == doctest::Approx(1.0).epsilon(0.05));
    Envelope gm = fit_envelope(density_model(make_gamma(2.0, 1.0)));
    CHECK(gm.alpha == doctest::Approx(0.5).epsilon(0.1));
    // envelope actually dominates the density
    for (auto spec : {make_gaussian(0.0, 1.0), make_laplace(0.0, 1.0), make_gamma(2.0, 1.0)}) {
        auto model = density_model(spec);
        Envelope e = fit_envelope(model);
        for (int i = 0; i <= 2000; ++i) {
            double t = model.eff_lo + (model.eff_hi - model.eff_lo) * i / 2000.0;
            CHECK(model.pdf(t) <= std::exp(e.beta - e.alpha * std::fabs(t)) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("approximate_density: uniform truth gives a uniform body") {
    auto model = density_model(make_uniform(0.0, 1.0));
    long n = 10000;
    Envelope env = fit_envelope(model);
    double half = 1.6 / env.alpha * std::log(static_cast<double>(n));
    ApproxReport rep = approximate_density(model, -half, half, n);
    CHECK(rep.all_ok());
    // the body over [0,1] is flat up to the boundary extension
    NormalizedDensity d(rep.plf);
    double v_mid = d.pdf(0.5);
    CHECK(std::fabs(d.pdf(0.3) - v_mid) <= 1e-8 * v_mid);
    CHECK(std::fabs(d.pdf(0.7) - v_mid) <= 1e-8 * v_mid);
}

TEST_CASE("approximate_density certifies gaussian, laplace, gamma fixtures") {
    for (auto spec :
         {make_gaussian(0.0, 1.0), make_laplace(0.0, 1.0), make_gamma(2.0, 1.0)}) {
        auto model = density_model(spec);
        Envelope env = fit_envelope(model);
        for (long n : {1000L, 10000L}) {
            double half = 1.6 / env.alpha * std::log(static_cast<double>(n));
            ApproxReport rep = approximate_density(model, -half, half, n);
            INFO(spec.describe() << " n=" << n);
            CHECK(rep.ok_knot_count);
            CHECK(rep.ok_min_gap);
            CHECK(rep.ok_support);
            CHECK(rep.ok_domination);
            CHECK(rep.ok_hellinger);
            CHECK(rep.plf.is_concave(1e-8));
            // normalization flows through the core invariant
            double integral = oracle::integral_exp_plf(rep.plf);
            CHECK(std::fabs(integral - 1.0) <= 1e-8);
        }
    }
}

TEST_CASE("approximate_density rejects undersized n and interval") {
    auto model = density_model(make_gaussian(0.0, 1.0));
    CHECK_THROWS_AS(approximate_density(model, -20.0, 20.0, 10), validation_error);
    CHECK_THROWS_AS(approximate_density(model, -1.0, 1.0, 10000), validation_error);
}

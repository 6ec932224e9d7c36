#pragma once

// Test-only oracles, kept independent of the library's quadrature and
// closed-form paths: Romberg integration on a dyadic trapezoid ladder,
// dense-grid sup/argmax helpers, and a generator of random strictly
// concave piecewise-linear functions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lcb/plf.hpp"

namespace oracle {

// Romberg integration; smooth integrands on one panel. For piecewise
// integrands call once per piece.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      double rel_tol = 1e-13, int max_rows = 24) {
    std::vector<double> row(static_cast<std::size_t>(max_rows), 0.0);
    double h = b - a;
    row[0] = 0.5 * h * (f(a) + f(b));
    long pts = 1;
    for (int k = 1; k < max_rows; ++k) {
        h *= 0.5;
        double acc = 0.0;
        for (long i = 0; i < pts; ++i) acc += f(a + (2 * i + 1) * h);
        std::vector<double> next(row.size());
        next[0] = 0.5 * row[0] + h * acc;
        double p4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            p4 *= 4.0;
            next[j] = next[j - 1] + (next[j - 1] - row[j - 1]) / (p4 - 1.0);
        }
        if (k > 3 && std::fabs(next[k] - row[k - 1]) <=
                         rel_tol * std::max(1e-300, std::fabs(next[k])))
            return next[k];
        row = next;
        pts *= 2;
    }
    return row.back();
}

// integral of f over [a,b] split at the given interior cut points
inline double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                               std::vector<double> cuts, double rel_tol = 1e-13) {
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] < a || cuts[i + 1] > b || cuts[i + 1] <= cuts[i]) continue;
        total += romberg(f, cuts[i], cuts[i + 1], rel_tol);
    }
    return total;
}

// integral of exp(w) for a plf w, by Romberg per segment
inline double integral_exp_plf(const lcb::Plf& w) {
    auto f = [&](double t) { return std::exp(w(t)); };
    std::vector<double> cuts(w.x.begin() + 1, w.x.end() - 1);
    return integrate_pieces(f, w.lo(), w.hi(), cuts);
}

struct GridMax {
    double arg = 0.0;
    double val = 0.0;
};

inline GridMax grid_argmax(const std::function<double(double)>& f, double a, double b,
                           long n_points) {
    GridMax best;
    best.arg = a;
    best.val = f(a);
    for (long i = 1; i < n_points; ++i) {
        double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        double v = f(t);
        if (v > best.val) {
            best.val = v;
            best.arg = t;
        }
    }
    return best;
}

inline double grid_sup_abs_diff(const std::function<double(double)>& f,
                                const std::function<double(double)>& g, double a, double b,
                                long n_points) {
    double sup = 0.0;
    for (long i = 0; i < n_points; ++i) {
        double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        sup = std::max(sup, std::fabs(f(t) - g(t)));
    }
    return sup;
}

// random strictly concave plf: K segments, strictly decreasing slopes
inline lcb::Plf random_concave_plf(std::mt19937_64& gen, int max_segments = 20,
                                   double lo = -3.0, double hi = 3.0) {
    std::uniform_int_distribution<int> nseg(2, max_segments);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int k = nseg(gen);
    std::vector<double> x;
    x.push_back(lo);
    x.push_back(hi);
    for (int i = 0; i < k - 1; ++i) x.push_back(lo + (hi - lo) * u01(gen));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end(),
                        [](double a, double b) { return std::fabs(a - b) < 1e-6; }),
            x.end());
    std::vector<double> slopes;
    double s = 2.0 + 3.0 * u01(gen);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        slopes.push_back(s);
        s -= 0.05 + 2.0 * u01(gen);
    }
    std::vector<double> y;
    y.push_back(-1.0 + 2.0 * u01(gen));
    for (std::size_t j = 0; j + 1 < x.size(); ++j)
        y.push_back(y[j] + slopes[j] * (x[j + 1] - x[j]));
    return lcb::Plf(std::move(x), std::move(y));
}

} // namespace oracle

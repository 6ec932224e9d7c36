#pragma once

#include <cstddef>
#include <vector>

#include "lcb/rng.hpp"

namespace lcb {

// Continuous piecewise-linear function on a compact interval, stored as
// strictly increasing breakpoints (support endpoints included) with the
// function values at the breakpoints. Linear interpolation in between.
// This is the universal representation of log-densities here.
struct Plf {
    std::vector<double> x; // breakpoints, strictly increasing, size >= 2
    std::vector<double> y; // values, all finite, same size

    Plf() = default;
    Plf(std::vector<double> bx, std::vector<double> by);

    double lo() const { return x.front(); }
    double hi() const { return x.back(); }
    std::size_t segments() const { return x.size() - 1; }

    // value at t; linear continuation is NOT applied outside [lo,hi]
    // (callers decide what outside-support means).
    double operator()(double t) const;

    double slope(std::size_t seg) const;

    // slopes non-increasing within tol * max(1,|s_j|,|s_{j+1}|)
    bool is_concave(double tol = 1e-12) const;

    // throws validation_error naming the failed invariant
    void validate() const;
};

// sum of w(t) over a sorted sequence; O(n + breakpoints) merge walk.
// All points must lie in [w.lo(), w.hi()].
double plf_sum_at_sorted(const Plf& w, const std::vector<double>& sorted_pts);

// Exponentiated-mixture parameterization of a concave piecewise-linear
// log-density on [a,b]:
//   W(x) = gamma1 * sum_i p_i * min(theta_i, x-a)/theta_i - gamma2 * (x-a).
struct MixtureLogDensity {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> knots;   // theta_i in (0, b-a]
    std::vector<double> weights; // p_i >= 0, sum to 1 within 1e-12
    double gamma1 = 0.0;         // >= 0
    double gamma2 = 0.0;

    double width() const { return b - a; }
    void validate() const;

    // closed-form W at one point (direct summation)
    double evaluate(double t) const;
};

// Tabulates W at {a} u {a+theta_i} u {b}, deduplicating coincident knots
// within `dedup_tol`. Output is concave and matches evaluate() exactly at
// every kept breakpoint.
Plf mixture_to_plf(const MixtureLogDensity& m, double dedup_tol = 1e-12);

// log of int_{lo}^{hi} exp(w).  Segment-wise closed form
//   int e^{w_j + s t} dt = e^{w_j} (e^{s d} - 1)/s
// with the |s d| < 1e-8 branch replaced by the series d e^{w_j}(1 + s d/2);
// computed relative to max_j w_j so it cannot overflow.
double log_norm_const(const Plf& w);

// A piecewise log-linear probability density: log-density plf plus its
// log-normalizing constant. Density is exp(w(x) - log_norm) on [lo,hi]
// and exactly zero outside.
class NormalizedDensity {
public:
    explicit NormalizedDensity(Plf w);

    const Plf& logdensity() const { return w_; }
    double log_norm() const { return log_norm_; }
    double lo() const { return w_.lo(); }
    double hi() const { return w_.hi(); }

    double pdf(double t) const;
    double log_pdf(double t) const; // -inf outside support
    double cdf(double t) const;
    double inverse_cdf(double u) const; // u in [0,1]
    std::vector<double> sample(Rng& rng, std::size_t count) const;

private:
    Plf w_;
    double log_norm_;
    std::vector<double> seg_mass_; // per-segment mass of exp(w - wmax)
    std::vector<double> cum_;      // cumulative, cum_.back() = total
    double wmax_;
};

// argmax of a concave plf; midpoint of the flat maximal segment on ties.
// Rejects non-concave input.
double mode_of(const Plf& w, double concavity_tol = 1e-12);

} // namespace lcb

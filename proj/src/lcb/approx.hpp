#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lcb/plf.hpp"
#include "lcb/quadrature.hpp"

namespace lcb {

// Concave function with one-sided derivative handles. Closed-form for
// analytic truths, slope lookups for plf-backed ones; the partition
// construction needs exact derivative jumps at kinks, which numerical
// differentiation cannot resolve.
struct ConcaveFn {
    RealFn value;
    RealFn dleft;              // w'_-
    RealFn dright;             // w'_+
    std::vector<double> kinks; // sorted points where dleft > dright

    bool is_kink(double t, double tol) const;
};

ConcaveFn concave_from_plf(const Plf& w);

// Partition of [a,b]; a red point is the left endpoint of a short
// interval (right-gap at most 2*C0^2*(b-a)/m^2).
struct Partition {
    std::vector<double> points;
    std::vector<bool> red;

    double min_gap() const;
    double max_gap() const;
    std::size_t intervals() const { return points.size() - 1; }
};

// Intermediate stages of build_partition, exposed for tests.
struct PartitionTrace {
    std::vector<double> uniform;       // P1
    std::vector<double> with_kinks;    // P2
    std::vector<double> with_refines;  // P3
    std::vector<double> with_midsplit; // P4
};

// Piecewise-linear interpolant with knots at interval midpoints
// x_i* = (x_i + x_{i-1})/2 and values equal to the interval average of w
// (computed by adaptive quadrature, 1e-12 relative), extended linearly
// to both endpoints. Concave whenever w is.
Plf midpoint_interpolant(const RealFn& w, const Partition& partition,
                         double quad_rel_tol = 1e-12);

// Partition of [a,b] controlled by r: uniform grid, isolation of kinks
// with derivative drop >= M/r (M = w'_+(a) - w'_-(b)), slope-drop
// refinement points where more than 2M/r accumulates between neighbours,
// midpoint-differentiability splits, then a left-to-right thinning pass
// enforcing min gap >= (b-a) r^{-2}/2. Output size is at most 14r+1
// intervals, min gap >= (b-a)/(2 m^2).
Partition build_partition(const ConcaveFn& w, double a, double b, int r,
                          PartitionTrace* trace = nullptr);

struct MixtureRep {
    MixtureLogDensity mixture;
    double gamma3 = 0.0; // additive constant absorbed by normalization
};

// Inverts mixture_to_plf: the left-derivative step function shifted by
// -w'_-(b) becomes a discrete mixing measure with atoms at the interior
// breakpoints. gamma1 <= (w'_+(a)-w'_-(b))(b-a), gamma2 = -w'_-(b).
MixtureRep plf_to_mixture(const Plf& w, double concavity_tol = 1e-12);

// A density with log-concave shape, with enough handles for the
// approximation pipeline.
struct DensityModel {
    RealFn pdf;
    ConcaveFn logpdf;     // valid inside the support
    double supp_lo = 0.0; // density is zero outside [supp_lo, supp_hi]
    double supp_hi = 1.0; // may be +-inf
    double eff_lo = 0.0;  // effective range for fitting/check grids
    double eff_hi = 1.0;
};

// Envelope f(x) <= exp(beta - alpha|x|). alpha/beta are fitted on a grid
// by minimizing exp(beta(alpha))/alpha (the truncation-mass constant),
// with alpha capped by the tail slopes so the envelope holds off-grid.
struct Envelope {
    double alpha = 1.0;
    double beta = 0.0;
};

Envelope fit_envelope(const DensityModel& model, int grid_points = 4001);

// Frozen constants for the certification bounds, calibrated once against
// the fixture corpus (Gaussian, Laplace(0,1), Gamma(2,1), U(0,1) and
// Beta(2,3) at n = 1e3, 1e4, 1e5; measured extremes 1.17, 0.56, 0.020,
// 1.05) and fixed with margin.
struct ApproxConstants {
    double knot_count_C = 2.0;   // knots <= C n^{1/5} ln n
    double min_gap_c = 0.25;     // min gap >= c n^{-6/5} ln n
    double hellinger_C = 0.05;   // h^2 <= C [(ln n)^2 n^{-4/5} + (b-a)^2 n^{-8/5}]
    double domination_C = 2.0;   // f0 <= C fbar on [a_n, b_n]
    double layer_D = 1.0;        // flat-layer derivative cutoff
    long n0 = 1000;              // minimum n for the construction
};

struct ApproxReport {
    Plf plf;                 // normalized log-density of fbar
    double log_norm = 0.0;
    std::size_t knot_count = 0;
    double min_knot_gap = 0.0;
    double sup_error_on_B = 0.0;
    double hellinger_sq = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::vector<double> knots;   // mixture atoms z_i in (0, b-a]
    std::vector<double> weights; // mixture weights
    Envelope envelope;
    double bound_knot_count = 0.0;
    double bound_min_gap = 0.0;
    double bound_hellinger = 0.0;
    double domination_max_ratio = 0.0;
    bool ok_knot_count = false;
    bool ok_min_gap = false;
    bool ok_support = false;
    bool ok_domination = false;
    bool ok_hellinger = false;

    bool all_ok() const {
        return ok_knot_count && ok_min_gap && ok_support && ok_domination && ok_hellinger;
    }
};

// The full construction: truncate the truth at +-(4/5 alpha) ln n, slice
// the truncated log-density into level/derivative layers, partition each
// layer, take the midpoint interpolant, extend linearly to [a_n, b_n]
// with slopes clipped to +-n^{4/5}, and normalize. Certifies the five
// report properties against the frozen constants.
ApproxReport approximate_density(const DensityModel& model, double a_n, double b_n, long n,
                                 const ApproxConstants& constants = ApproxConstants{});

} // namespace lcb

#pragma once

#include <functional>
#include <vector>

namespace lcb {

using RealFn = std::function<double(double)>;

// Recursive adaptive Simpson with Richardson correction. Throws
// numeric_error on non-finite evaluations.
double adaptive_simpson(const RealFn& f, double a, double b, double rel_tol,
                        double abs_tol = 1e-300, int max_depth = 60);

// Quadrature specification for density functionals: composite Simpson
// over [lo,hi], panels split proportionally across the cells induced by
// `critical_points` (integrand kinks), refined by panel doubling until
// the estimate changes by at most `tol` (absolute, with a relative
// guard).
struct QuadratureSpec {
    double lo = 0.0;
    double hi = 1.0;
    int panels = 4096;
    double tol = 1e-10;
    int max_doublings = 10;
    std::vector<double> critical_points;
};

double integrate(const RealFn& f, const QuadratureSpec& spec);

// Hellinger distance sqrt(1 - int sqrt(f g)) between two densities
// evaluated on spec's interval (which must cover both supports).
// Symmetric, in [0,1], zero iff the densities agree on the grid.
double hellinger(const RealFn& f, const RealFn& g, const QuadratureSpec& spec);

} // namespace lcb

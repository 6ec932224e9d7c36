#pragma once

#include <vector>

#include "lcb/plf.hpp"
#include "lcb/quadrature.hpp"

namespace lcb {

struct MleResult {
    Plf plf;                           // normalized log-density, knots at the data
    double log_norm = 0.0;             // of the raw optimum (before re-normalization)
    std::vector<double> objective_trace;
    bool converged = false;
    double projected_gradient_norm = 0.0;
    long iterations = 0;
};

// Log-concave maximum likelihood estimate: maximizes
//   (1/n) sum_i phi(X_i) - int e^phi + 1
// over concave piecewise-linear phi with knots at the (unique) data
// points, supported on [X_(1), X_(n)]. Ascent on knot values with
// concavity restored by a pool-adjacent-violators projection of slopes
// and a backtracking line search, so the objective trace never
// decreases. Data are standardized internally, which makes the result
// affine-equivariant by construction.
MleResult logconcave_mle(const std::vector<double>& data, double tolerance = 1e-7,
                         long max_iter = 20000);

// Hellinger distance of the fitted density to an arbitrary density
// handle over the given interval.
double hellinger_to_truth(const MleResult& result, const RealFn& truth_pdf, double lo,
                          double hi);

// weighted pool-adjacent-violators: least-squares non-increasing fit
std::vector<double> pav_nonincreasing(const std::vector<double>& values,
                                      const std::vector<double>& weights);

} // namespace lcb

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lcb/approx.hpp"
#include "lcb/rng.hpp"

namespace lcb {

enum class TruthFamily { gaussian, gamma, beta, laplace, uniform, mixture2 };

// Synthetic truth used by the experiment harness: closed-form density,
// log-density with one-sided derivatives, mode and sampler.
struct TruthSpec {
    TruthFamily family = TruthFamily::gaussian;
    double p1 = 0.0; // gaussian mu | gamma shape | beta a | laplace loc | uniform a | mixture weight
    double p2 = 1.0; // gaussian sigma | gamma rate | beta b | laplace scale | uniform b
    std::shared_ptr<TruthSpec> comp1; // mixture2 only
    std::shared_ptr<TruthSpec> comp2;

    void validate() const;
    bool log_concave() const; // gamma needs shape>=1, beta needs a,b>=1; mixtures are not

    double pdf(double x) const;
    double log_pdf(double x) const; // -inf outside support
    double dlog_left(double x) const;
    double dlog_right(double x) const;
    double mode() const;
    double support_lo() const;
    double support_hi() const;
    // range that carries all but ~1e-14 of the mass; fitting/check grids
    double effective_lo() const;
    double effective_hi() const;

    double draw(Rng& rng) const;
    std::string describe() const;
};

TruthSpec make_gaussian(double mu, double sigma);
TruthSpec make_gamma(double shape, double rate);
TruthSpec make_beta(double a, double b);
TruthSpec make_laplace(double loc, double scale);
TruthSpec make_uniform(double a, double b);
TruthSpec make_mixture2(double w, TruthSpec first, TruthSpec second);

// n sorted draws, deterministic given the rng state
std::vector<double> sample_truth(const TruthSpec& spec, Rng& rng, std::size_t n);

double eval_truth(const TruthSpec& spec, double x);

// handles for the approximation pipeline; rejects non-log-concave specs
DensityModel density_model(const TruthSpec& spec);

} // namespace lcb

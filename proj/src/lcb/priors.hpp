#pragma once

#include <vector>

#include "lcb/plf.hpp"
#include "lcb/rng.hpp"

namespace lcb {

enum class WeightModel { stick_breaking, dirichlet };

enum class SupportMode { fixed, empirical, hierarchical };

struct SupportConfig {
    SupportMode mode = SupportMode::empirical;
    double a = 0.0; // fixed mode only
    double b = 1.0;
};

// Prior over MixtureLogDensity: theta_i iid uniform on [0, b-a], weights
// from a truncated stick-breaking process (V_i ~ Beta(1, total_mass)) or
// a symmetric Dirichlet(alpha/N), gamma1 ~ half-Cauchy(0, s1), gamma2 ~
// Cauchy(0, s2). Hierarchical mode puts a ~ Cauchy(0,1) and b-a ~
// half-Cauchy(0,1) on the support.
struct PriorConfig {
    int truncation = 1;                              // N >= 1
    WeightModel weight_model = WeightModel::stick_breaking;
    double dirichlet_alpha = 1.0;                    // 0 < alpha <= total_mass
    double total_mass = 1.0;                         // H(R+)
    double gamma1_scale = 1.0;                       // s1 > 0
    double gamma2_scale = 1.0;                       // s2 > 0
    SupportConfig support;

    void validate() const;
};

// ceil(C n^{1/5} ln n), the paper's knot budget
int truncation_level(long n, double C);

// One prior draw on the given support. Under stick breaking the final
// stick absorbs the residual mass so weights sum to exactly 1.
MixtureLogDensity draw_prior(const PriorConfig& cfg, double a, double b, Rng& rng);

// Log joint prior density of (theta, V or p, gamma1, gamma2[, a, b-a]).
// -inf outside the parameter domains. In stick-breaking mode the weight
// factor is the product of Beta(1, total_mass) densities of the sticks
// recovered from the weights.
double log_prior(const PriorConfig& cfg, const MixtureLogDensity& m);

// stick variables V_1..V_{N-1} <-> weights p_1..p_N; the final stick
// absorbs the residual so the left-to-right sum is exactly 1.0
std::vector<double> sticks_to_weights(const std::vector<double>& v);

// nudges the last entry until the left-to-right sum equals 1.0 exactly
void force_unit_sum(std::vector<double>& w);
std::vector<double> weights_to_sticks(const std::vector<double>& p);

double log_beta1_pdf(double v, double mass);     // Beta(1, mass) density
double log_cauchy_pdf(double x, double scale);
double log_half_cauchy_pdf(double x, double scale);
double log_dirichlet_pdf(const std::vector<double>& p, double alpha_each);

} // namespace lcb

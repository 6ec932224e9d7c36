#include "lcb/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

// J(u) = (e^u - 1)/u and its derivative, with series branches near 0
double J(double u) {
    if (std::fabs(u) < 1e-8) return 1.0 + 0.5 * u + u * u / 6.0;
    return std::expm1(u) / u;
}

double Jp(double u) {
    if (std::fabs(u) < 1e-6) return 0.5 + u / 3.0 + u * u / 8.0;
    return (u * std::exp(u) - std::expm1(u)) / (u * u);
}

struct Objective {
    const std::vector<double>& x; // unique knots
    const std::vector<double>& w; // empirical weights, sum 1

    // value and gradient of (1/n) sum phi(X_i) - int e^phi + 1
    double eval(const std::vector<double>& phi, std::vector<double>* grad) const {
        std::size_t K = phi.size();
        if (grad) grad->assign(K, 0.0);
        double lin = 0.0;
        for (std::size_t k = 0; k < K; ++k) lin += w[k] * phi[k];
        double integral = 0.0;
        for (std::size_t j = 0; j + 1 < K; ++j) {
            double d = x[j + 1] - x[j];
            double u = phi[j + 1] - phi[j];
            double e = std::exp(phi[j]);
            integral += d * e * J(u);
            if (grad) {
                (*grad)[j] -= d * e * (J(u) - Jp(u));
                (*grad)[j + 1] -= d * e * Jp(u);
            }
        }
        if (grad)
            for (std::size_t k = 0; k < K; ++k) (*grad)[k] += w[k];
        return lin - integral + 1.0;
    }
};

// project knot values onto the concave cone: PAV on slopes (weighted by
// segment lengths), values rebuilt from the first knot
std::vector<double> project_concave(const std::vector<double>& x,
                                    const std::vector<double>& phi) {
    std::size_t K = phi.size();
    if (K < 3) return phi;
    std::vector<double> slopes(K - 1), lens(K - 1);
    for (std::size_t j = 0; j + 1 < K; ++j) {
        lens[j] = x[j + 1] - x[j];
        slopes[j] = (phi[j + 1] - phi[j]) / lens[j];
    }
    auto proj = pav_nonincreasing(slopes, lens);
    std::vector<double> out(K);
    out[0] = phi[0];
    for (std::size_t j = 0; j + 1 < K; ++j) out[j + 1] = out[j] + proj[j] * lens[j];
    return out;
}

} // namespace

std::vector<double> pav_nonincreasing(const std::vector<double>& values,
                                      const std::vector<double>& weights) {
    // classic block-merge PAV on the negated sequence (non-decreasing)
    std::size_t n = values.size();
    std::vector<double> level;
    std::vector<double> wsum;
    std::vector<std::size_t> count;
    level.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        level.push_back(values[i]);
        wsum.push_back(weights[i]);
        count.push_back(1);
        while (level.size() > 1 && level[level.size() - 2] < level.back()) {
            // violator: merge the last two blocks at their weighted mean
            std::size_t m = level.size();
            double wtot = wsum[m - 2] + wsum[m - 1];
            double merged = (level[m - 2] * wsum[m - 2] + level[m - 1] * wsum[m - 1]) / wtot;
            level[m - 2] = merged;
            wsum[m - 2] = wtot;
            count[m - 2] += count[m - 1];
            level.pop_back();
            wsum.pop_back();
            count.pop_back();
        }
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t b = 0; b < level.size(); ++b)
        for (std::size_t k = 0; k < count[b]; ++k) out.push_back(level[b]);
    return out;
}

MleResult logconcave_mle(const std::vector<double>& data, double tolerance, long max_iter) {
    if (data.size() < 2) throw data_error("logconcave_mle: need at least 2 observations");
    std::vector<double> sorted = data;
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front(), hi = sorted.back();
    if (!(lo < hi)) throw data_error("logconcave_mle: all observations equal");

    // standardize to [0,1]; affine equivariance then holds by construction
    double range = hi - lo;
    std::vector<double> z, wts;
    for (double v : sorted) {
        double t = (v - lo) / range;
        if (!z.empty() && t == z.back())
            wts.back() += 1.0;
        else {
            z.push_back(t);
            wts.push_back(1.0);
        }
    }
    double n = static_cast<double>(sorted.size());
    for (double& w : wts) w /= n;
    std::size_t K = z.size();
    if (K < 2) throw data_error("logconcave_mle: need two distinct observations");

    Objective obj{z, wts};
    std::vector<double> phi(K, 0.0); // uniform density on [0,1]

    MleResult res;
    std::vector<double> grad, cand, grad_cand;
    double value = obj.eval(phi, &grad);
    res.objective_trace.push_back(value);

    double step = 1.0;
    double pg_norm = std::numeric_limits<double>::infinity();
    long it = 0;
    for (; it < max_iter; ++it) {
        // gradient mapping with unit step is the stationarity measure
        cand = phi;
        for (std::size_t k = 0; k < K; ++k) cand[k] += grad[k];
        cand = project_concave(z, cand);
        pg_norm = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            pg_norm = std::max(pg_norm, std::fabs(cand[k] - phi[k]));
        if (pg_norm <= tolerance) {
            res.converged = true;
            break;
        }

        // projected ascent step with backtracking; never accept a decrease
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt) {
            cand = phi;
            for (std::size_t k = 0; k < K; ++k) cand[k] += step * grad[k];
            cand = project_concave(z, cand);
            double cand_value = obj.eval(cand, &grad_cand);
            if (cand_value > value) {
                phi.swap(cand);
                grad.swap(grad_cand);
                value = cand_value;
                improved = true;
                step *= 1.3; // gentle growth toward the natural step size
                break;
            }
            step *= 0.5;
        }
        res.objective_trace.push_back(value);
        if (!improved) break; // line search exhausted at this precision
    }
    res.iterations = it;
    res.projected_gradient_norm = pg_norm;
    if (pg_norm <= tolerance) res.converged = true;

    // map back to data scale: density g(x) = f(z)/range
    std::vector<double> bx(K), by(K);
    for (std::size_t k = 0; k < K; ++k) {
        bx[k] = lo + z[k] * range;
        by[k] = phi[k] - std::log(range);
    }
    Plf raw(std::move(bx), std::move(by));
    res.log_norm = log_norm_const(raw);
    for (auto& v : raw.y) v -= res.log_norm; // exact renormalization
    res.plf = std::move(raw);
    return res;
}

double hellinger_to_truth(const MleResult& result, const RealFn& truth_pdf, double lo,
                          double hi) {
    NormalizedDensity d(result.plf);
    QuadratureSpec spec;
    spec.lo = std::min(lo, d.lo());
    spec.hi = std::max(hi, d.hi());
    spec.critical_points = result.plf.x;
    return hellinger([&](double t) { return d.pdf(t); }, truth_pdf, spec);
}

} // namespace lcb

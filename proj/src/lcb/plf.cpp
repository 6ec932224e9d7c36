#include "lcb/plf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

// (e^u - 1)/u with the |u| < 1e-8 series branch 1 + u/2.
double expm1_over(double u) {
    if (std::fabs(u) < 1e-8) return 1.0 + 0.5 * u;
    return std::expm1(u) / u;
}

// int_0^d exp(w0 + s t - wref) dt, anchored at the segment's high end so
// steep segments cannot produce 0 * inf. Requires w0, w1 <= wref.
double segment_mass_shifted(double w0, double w1, double d, double wref) {
    double u = w1 - w0; // s * d
    if (std::fabs(u) < 1e-8) return d * std::exp(w0 - wref) * (1.0 + 0.5 * u);
    if (u > 0.0) return d * std::exp(w1 - wref) * (-std::expm1(-u)) / u;
    return d * std::exp(w0 - wref) * std::expm1(u) / u;
}

// log(1 + e^x)
double softplus(double x) {
    if (x > 36.0) return x + std::exp(-x);
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

} // namespace

Plf::Plf(std::vector<double> bx, std::vector<double> by) : x(std::move(bx)), y(std::move(by)) {
    validate();
}

void Plf::validate() const {
    if (x.size() < 2) throw validation_error("plf: fewer than 2 breakpoints");
    if (x.size() != y.size()) throw validation_error("plf: breakpoints/values length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw validation_error("plf: non-finite breakpoint");
        if (!std::isfinite(y[i])) throw validation_error("plf: non-finite value");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw validation_error("plf: breakpoints not strictly increasing");
    }
}

double Plf::operator()(double t) const {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
    double f = (t - x[j]) / (x[j + 1] - x[j]);
    return y[j] + f * (y[j + 1] - y[j]);
}

double Plf::slope(std::size_t seg) const {
    return (y[seg + 1] - y[seg]) / (x[seg + 1] - x[seg]);
}

bool Plf::is_concave(double tol) const {
    for (std::size_t j = 0; j + 1 < segments(); ++j) {
        double s0 = slope(j);
        double s1 = slope(j + 1);
        double scale = std::max({1.0, std::fabs(s0), std::fabs(s1)});
        if (s1 - s0 > tol * scale) return false;
    }
    return true;
}

double plf_sum_at_sorted(const Plf& w, const std::vector<double>& sorted_pts) {
    double total = 0.0;
    std::size_t j = 0;
    for (double t : sorted_pts) {
        while (j + 2 < w.x.size() && w.x[j + 1] < t) ++j;
        double f = (t - w.x[j]) / (w.x[j + 1] - w.x[j]);
        total += w.y[j] + f * (w.y[j + 1] - w.y[j]);
    }
    return total;
}

void MixtureLogDensity::validate() const {
    if (!(a < b)) throw validation_error("mixture: support requires a < b");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw validation_error("mixture: non-finite support endpoint");
    if (knots.empty()) throw validation_error("mixture: N >= 1 knots required");
    if (knots.size() != weights.size())
        throw validation_error("mixture: knots/weights length mismatch");
    double span = b - a;
    double wsum = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i] > 0.0) || !(knots[i] <= span) || !std::isfinite(knots[i]))
            throw validation_error("mixture: knot outside (0, b-a]");
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw validation_error("mixture: negative or non-finite weight");
        wsum += weights[i];
    }
    if (std::fabs(wsum - 1.0) > 1e-12)
        throw validation_error("mixture: weights do not sum to 1 within 1e-12");
    if (!(gamma1 >= 0.0) || !std::isfinite(gamma1))
        throw validation_error("mixture: gamma1 must be >= 0 and finite");
    if (!std::isfinite(gamma2)) throw validation_error("mixture: gamma2 must be finite");
}

double MixtureLogDensity::evaluate(double t) const {
    double u = t - a;
    double acc = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i)
        acc += weights[i] * (std::min(knots[i], u) / knots[i]);
    return gamma1 * acc - gamma2 * u;
}

Plf mixture_to_plf(const MixtureLogDensity& m, double dedup_tol) {
    m.validate();
    std::vector<double> pts;
    pts.reserve(m.knots.size() + 2);
    for (double th : m.knots) pts.push_back(m.a + th);
    std::sort(pts.begin(), pts.end());

    std::vector<double> bx;
    bx.reserve(pts.size() + 2);
    bx.push_back(m.a);
    for (double p : pts) {
        // endpoints win collisions; interior knots merge within dedup_tol
        if (p - bx.back() <= dedup_tol) continue;
        if (m.b - p <= dedup_tol) continue;
        bx.push_back(p);
    }
    bx.push_back(m.b);

    std::vector<double> by;
    by.reserve(bx.size());
    for (double p : bx) by.push_back(m.evaluate(p));
    return Plf(std::move(bx), std::move(by));
}

double log_norm_const(const Plf& w) {
    double wmax = *std::max_element(w.y.begin(), w.y.end());
    double total = 0.0;
    for (std::size_t j = 0; j < w.segments(); ++j)
        total += segment_mass_shifted(w.y[j], w.y[j + 1], w.x[j + 1] - w.x[j], wmax);
    return wmax + std::log(total);
}

NormalizedDensity::NormalizedDensity(Plf w) : w_(std::move(w)) {
    w_.validate();
    wmax_ = *std::max_element(w_.y.begin(), w_.y.end());
    seg_mass_.resize(w_.segments());
    cum_.resize(w_.segments() + 1);
    cum_[0] = 0.0;
    for (std::size_t j = 0; j < w_.segments(); ++j) {
        seg_mass_[j] =
            segment_mass_shifted(w_.y[j], w_.y[j + 1], w_.x[j + 1] - w_.x[j], wmax_);
        cum_[j + 1] = cum_[j] + seg_mass_[j];
    }
    log_norm_ = wmax_ + std::log(cum_.back());
}

double NormalizedDensity::pdf(double t) const {
    if (t < lo() || t > hi()) return 0.0;
    return std::exp(w_(t) - log_norm_);
}

double NormalizedDensity::log_pdf(double t) const {
    if (t < lo() || t > hi()) return -std::numeric_limits<double>::infinity();
    return w_(t) - log_norm_;
}

double NormalizedDensity::cdf(double t) const {
    if (t <= lo()) return 0.0;
    if (t >= hi()) return 1.0;
    auto it = std::upper_bound(w_.x.begin(), w_.x.end(), t);
    std::size_t j = static_cast<std::size_t>(it - w_.x.begin()) - 1;
    double dt = t - w_.x[j];
    double partial = segment_mass_shifted(w_.y[j], w_(t), dt, wmax_);
    return std::min(1.0, (cum_[j] + partial) / cum_.back());
}

double NormalizedDensity::inverse_cdf(double u) const {
    if (!(u >= 0.0) || !(u <= 1.0)) throw validation_error("inverse_cdf: u outside [0,1]");
    if (u <= 0.0) return lo();
    if (u >= 1.0) return hi();
    double target = u * cum_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()) - 1,
                                          w_.segments() - 1);
    double excess = target - cum_[j];
    if (excess <= 0.0) return w_.x[j];
    double d = w_.x[j + 1] - w_.x[j];
    double s = (w_.y[j + 1] - w_.y[j]) / d;
    // solve segment_mass(w_j, w_j + s t, t) = excess for t, in log space so
    // steep segments stay finite
    double ratio_log = std::log(excess) + (wmax_ - w_.y[j]); // log(excess / e^{w_j - wmax})
    double t;
    if (std::fabs(s * d) < 1e-8) {
        double m = std::exp(ratio_log);
        t = m * (1.0 - 0.5 * s * m); // series inverse of m = t + s t^2/2
    } else if (s > 0.0) {
        t = softplus(std::log(s) + ratio_log) / s;
    } else {
        double arg = 1.0 + s * std::exp(ratio_log);
        arg = std::max(arg, std::exp(s * d));
        t = std::log(arg) / s;
    }
    t = std::min(std::max(t, 0.0), d);
    return w_.x[j] + t;
}

std::vector<double> NormalizedDensity::sample(Rng& rng, std::size_t count) const {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(inverse_cdf(rng.uniform()));
    return out;
}

double mode_of(const Plf& w, double concavity_tol) {
    w.validate();
    if (!w.is_concave(concavity_tol)) throw validation_error("mode_of: input not concave");
    std::size_t jmax = 0;
    for (std::size_t i = 1; i < w.y.size(); ++i)
        if (w.y[i] > w.y[jmax]) jmax = i;
    // extend over an exactly-flat maximal run
    std::size_t lo = jmax, hi = jmax;
    while (lo > 0 && w.y[lo - 1] == w.y[jmax]) --lo;
    while (hi + 1 < w.y.size() && w.y[hi + 1] == w.y[jmax]) ++hi;
    if (lo != hi) return 0.5 * (w.x[lo] + w.x[hi]);
    return w.x[jmax];
}

} // namespace lcb

#include "lcb/priors.hpp"

#include <cmath>
#include <limits>

#include "lcb/errors.hpp"

namespace lcb {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
} // namespace

void PriorConfig::validate() const {
    if (truncation < 1) throw validation_error("prior: truncation N must be >= 1");
    if (!(total_mass > 0.0)) throw validation_error("prior: total mass must be > 0");
    if (!(gamma1_scale > 0.0) || !(gamma2_scale > 0.0))
        throw validation_error("prior: gamma scales must be > 0");
    if (weight_model == WeightModel::dirichlet) {
        if (!(dirichlet_alpha > 0.0) || dirichlet_alpha > total_mass)
            throw validation_error("prior: dirichlet alpha must be in (0, total_mass]");
    }
    if (support.mode == SupportMode::fixed && !(support.a < support.b))
        throw validation_error("prior: fixed support requires a < b");
}

int truncation_level(long n, double C) {
    if (n < 2) throw validation_error("truncation_level: n must be >= 2");
    if (!(C > 0.0)) throw validation_error("truncation_level: C must be > 0");
    double nd = static_cast<double>(n);
    return static_cast<int>(std::ceil(C * std::pow(nd, 0.2) * std::log(nd)));
}

void force_unit_sum(std::vector<double>& w) {
    for (int round = 0; round < 4; ++round) {
        double s = 0.0;
        for (double wi : w) s += wi;
        if (s == 1.0) return;
        w.back() += 1.0 - s;
        if (w.back() < 0.0) w.back() = 0.0;
    }
}

std::vector<double> sticks_to_weights(const std::vector<double>& v) {
    std::vector<double> p;
    p.reserve(v.size() + 1);
    double stick = 1.0;
    for (double vi : v) {
        p.push_back(vi * stick);
        stick *= (1.0 - vi);
    }
    p.push_back(stick); // final stick absorbs the residual mass
    force_unit_sum(p);
    return p;
}

std::vector<double> weights_to_sticks(const std::vector<double>& p) {
    std::vector<double> v;
    if (p.empty()) return v;
    v.reserve(p.size() - 1);
    double tail = 1.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (tail <= 0.0) {
            v.push_back(0.0);
            continue;
        }
        v.push_back(p[i] / tail);
        tail -= p[i];
    }
    return v;
}

MixtureLogDensity draw_prior(const PriorConfig& cfg, double a, double b, Rng& rng) {
    cfg.validate();
    if (!(a < b)) throw validation_error("draw_prior: requires a < b");
    int N = cfg.truncation;
    MixtureLogDensity m;
    m.a = a;
    m.b = b;
    double span = b - a;
    m.knots.reserve(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        double th = rng.uniform(0.0, span);
        if (th <= 0.0) th = 0.5 * span; // uniform hits 0 with probability 0
        m.knots.push_back(th);
    }
    if (cfg.weight_model == WeightModel::stick_breaking) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(N - 1));
        for (int i = 0; i + 1 < N; ++i) v.push_back(rng.beta(1.0, cfg.total_mass));
        m.weights = sticks_to_weights(v);
    } else {
        double alpha_each = cfg.dirichlet_alpha / N;
        std::vector<double> g(static_cast<std::size_t>(N));
        double total = 0.0;
        for (auto& gi : g) {
            gi = rng.gamma(alpha_each, 1.0);
            total += gi;
        }
        m.weights.resize(g.size());
        if (total <= 0.0) {
            // all components underflowed; fall back to the uniform corner
            for (auto& w : m.weights) w = 1.0 / N;
        } else {
            for (std::size_t i = 0; i < g.size(); ++i) m.weights[i] = g[i] / total;
        }
        force_unit_sum(m.weights);
    }
    m.gamma1 = rng.half_cauchy(cfg.gamma1_scale);
    m.gamma2 = rng.cauchy(0.0, cfg.gamma2_scale);
    m.validate();
    return m;
}

double log_beta1_pdf(double v, double mass) {
    if (!(v > 0.0) || !(v < 1.0)) return kNegInf;
    return std::log(mass) + (mass - 1.0) * std::log1p(-v);
}

double log_cauchy_pdf(double x, double scale) {
    double z = x / scale;
    return -std::log(kPi * scale * (1.0 + z * z));
}

double log_half_cauchy_pdf(double x, double scale) {
    if (x < 0.0) return kNegInf;
    double z = x / scale;
    return std::log(2.0) - std::log(kPi * scale * (1.0 + z * z));
}

double log_dirichlet_pdf(const std::vector<double>& p, double alpha_each) {
    double acc = std::lgamma(alpha_each * static_cast<double>(p.size()));
    acc -= static_cast<double>(p.size()) * std::lgamma(alpha_each);
    for (double pi : p) {
        if (!(pi > 0.0)) return kNegInf;
        acc += (alpha_each - 1.0) * std::log(pi);
    }
    return acc;
}

double log_prior(const PriorConfig& cfg, const MixtureLogDensity& m) {
    double span = m.b - m.a;
    if (!(span > 0.0)) return kNegInf;
    double acc = 0.0;

    for (double th : m.knots) {
        if (!(th > 0.0) || th > span) return kNegInf;
        acc -= std::log(span); // uniform base measure on [0, b-a]
    }

    if (cfg.weight_model == WeightModel::stick_breaking) {
        auto v = weights_to_sticks(m.weights);
        for (double vi : v) {
            // the final stick is deterministic; intermediate ones must be
            // interior
            double lp = log_beta1_pdf(vi, cfg.total_mass);
            if (lp == kNegInf) return kNegInf;
            acc += lp;
        }
    } else {
        double lp = log_dirichlet_pdf(m.weights, cfg.dirichlet_alpha / m.weights.size());
        if (lp == kNegInf) return kNegInf;
        acc += lp;
    }

    if (m.gamma1 < 0.0) return kNegInf;
    acc += log_half_cauchy_pdf(m.gamma1, cfg.gamma1_scale);
    acc += log_cauchy_pdf(m.gamma2, cfg.gamma2_scale);

    if (cfg.support.mode == SupportMode::hierarchical) {
        acc += log_cauchy_pdf(m.a, 1.0);
        acc += log_half_cauchy_pdf(span, 1.0);
    }
    return acc;
}

} // namespace lcb

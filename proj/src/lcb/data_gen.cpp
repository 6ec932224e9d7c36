#include "lcb/data_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double lgamma_safe(double x) { return std::lgamma(x); }
} // namespace

void TruthSpec::validate() const {
    switch (family) {
        case TruthFamily::gaussian:
            if (!(p2 > 0.0)) throw validation_error("truth: gaussian sigma must be > 0");
            break;
        case TruthFamily::gamma:
            if (!(p1 > 0.0) || !(p2 > 0.0))
                throw validation_error("truth: gamma shape and rate must be > 0");
            break;
        case TruthFamily::beta:
            if (!(p1 > 0.0) || !(p2 > 0.0))
                throw validation_error("truth: beta parameters must be > 0");
            break;
        case TruthFamily::laplace:
            if (!(p2 > 0.0)) throw validation_error("truth: laplace scale must be > 0");
            break;
        case TruthFamily::uniform:
            if (!(p1 < p2)) throw validation_error("truth: uniform requires a < b");
            break;
        case TruthFamily::mixture2:
            if (!(p1 > 0.0) || !(p1 < 1.0))
                throw validation_error("truth: mixture weight must be in (0,1)");
            if (!comp1 || !comp2) throw validation_error("truth: mixture missing components");
            comp1->validate();
            comp2->validate();
            break;
    }
}

bool TruthSpec::log_concave() const {
    switch (family) {
        case TruthFamily::gamma: return p1 >= 1.0;
        case TruthFamily::beta: return p1 >= 1.0 && p2 >= 1.0;
        case TruthFamily::mixture2: return false;
        default: return true;
    }
}

double TruthSpec::pdf(double x) const {
    switch (family) {
        case TruthFamily::gaussian: {
            double z = (x - p1) / p2;
            return std::exp(-0.5 * z * z) / (p2 * std::sqrt(2.0 * 3.14159265358979323846));
        }
        case TruthFamily::gamma: {
            if (x <= 0.0) return 0.0;
            return std::exp(p1 * std::log(p2) + (p1 - 1.0) * std::log(x) - p2 * x -
                            lgamma_safe(p1));
        }
        case TruthFamily::beta: {
            if (x <= 0.0 || x >= 1.0) return 0.0;
            double lb = lgamma_safe(p1) + lgamma_safe(p2) - lgamma_safe(p1 + p2);
            return std::exp((p1 - 1.0) * std::log(x) + (p2 - 1.0) * std::log1p(-x) - lb);
        }
        case TruthFamily::laplace:
            return 0.5 / p2 * std::exp(-std::fabs(x - p1) / p2);
        case TruthFamily::uniform:
            return (x >= p1 && x <= p2) ? 1.0 / (p2 - p1) : 0.0;
        case TruthFamily::mixture2:
            return p1 * comp1->pdf(x) + (1.0 - p1) * comp2->pdf(x);
    }
    return 0.0;
}

double TruthSpec::log_pdf(double x) const {
    double f = pdf(x);
    return f > 0.0 ? std::log(f) : -kInf;
}

// Convention at support edges: the derivative taken from outside the
// support is +inf on the left edge and -inf on the right edge, while the
// one-sided derivative from inside is the analytic limit.
double TruthSpec::dlog_left(double x) const {
    switch (family) {
        case TruthFamily::gaussian: return -(x - p1) / (p2 * p2);
        case TruthFamily::gamma:
            if (x <= 0.0) return kInf;
            return (p1 - 1.0) / x - p2;
        case TruthFamily::beta:
            if (x <= 0.0) return kInf;
            if (x >= 1.0) return p2 > 1.0 ? -kInf : (p1 - 1.0);
            return (p1 - 1.0) / x - (p2 - 1.0) / (1.0 - x);
        case TruthFamily::laplace:
            return (x <= p1 ? 1.0 : -1.0) / p2;
        case TruthFamily::uniform:
            return x <= p1 ? kInf : 0.0;
        case TruthFamily::mixture2:
            throw validation_error("truth: mixtures have no log-concave derivative handle");
    }
    return 0.0;
}

double TruthSpec::dlog_right(double x) const {
    switch (family) {
        case TruthFamily::gaussian: return -(x - p1) / (p2 * p2);
        case TruthFamily::gamma:
            if (x < 0.0) return kInf;
            if (x == 0.0) return p1 > 1.0 ? kInf : -p2;
            return (p1 - 1.0) / x - p2;
        case TruthFamily::beta:
            if (x >= 1.0) return -kInf;
            if (x < 0.0) return kInf;
            if (x == 0.0) return p1 > 1.0 ? kInf : -(p2 - 1.0);
            return (p1 - 1.0) / x - (p2 - 1.0) / (1.0 - x);
        case TruthFamily::laplace:
            return (x < p1 ? 1.0 : -1.0) / p2;
        case TruthFamily::uniform:
            return x >= p2 ? -kInf : 0.0;
        case TruthFamily::mixture2:
            throw validation_error("truth: mixtures have no log-concave derivative handle");
    }
    return 0.0;
}

double TruthSpec::mode() const {
    switch (family) {
        case TruthFamily::gaussian: return p1;
        case TruthFamily::gamma: return p1 >= 1.0 ? (p1 - 1.0) / p2 : 0.0;
        case TruthFamily::beta:
            if (p1 > 1.0 && p2 > 1.0) return (p1 - 1.0) / (p1 + p2 - 2.0);
            if (p1 == 1.0 && p2 == 1.0) return 0.5;
            return p1 >= p2 ? 1.0 : 0.0;
        case TruthFamily::laplace: return p1;
        case TruthFamily::uniform: return 0.5 * (p1 + p2);
        case TruthFamily::mixture2: {
            // numeric argmax on a dense grid
            double lo = effective_lo(), hi = effective_hi();
            double best_x = lo, best_v = -kInf;
            for (int i = 0; i <= 20000; ++i) {
                double t = lo + (hi - lo) * i / 20000.0;
                double v = pdf(t);
                if (v > best_v) {
                    best_v = v;
                    best_x = t;
                }
            }
            return best_x;
        }
    }
    return 0.0;
}

double TruthSpec::support_lo() const {
    switch (family) {
        case TruthFamily::gamma: return 0.0;
        case TruthFamily::beta: return 0.0;
        case TruthFamily::uniform: return p1;
        case TruthFamily::mixture2:
            return std::min(comp1->support_lo(), comp2->support_lo());
        default: return -kInf;
    }
}

double TruthSpec::support_hi() const {
    switch (family) {
        case TruthFamily::beta: return 1.0;
        case TruthFamily::uniform: return p2;
        case TruthFamily::mixture2:
            return std::max(comp1->support_hi(), comp2->support_hi());
        default: return kInf;
    }
}

double TruthSpec::effective_lo() const {
    switch (family) {
        case TruthFamily::gaussian: return p1 - 10.0 * p2;
        case TruthFamily::gamma: return 0.0;
        case TruthFamily::beta: return 0.0;
        case TruthFamily::laplace: return p1 - 34.0 * p2;
        case TruthFamily::uniform: return p1;
        case TruthFamily::mixture2:
            return std::min(comp1->effective_lo(), comp2->effective_lo());
    }
    return -10.0;
}

double TruthSpec::effective_hi() const {
    switch (family) {
        case TruthFamily::gaussian: return p1 + 10.0 * p2;
        case TruthFamily::gamma: return (p1 + 34.0 * std::sqrt(p1) + 34.0) / p2;
        case TruthFamily::beta: return 1.0;
        case TruthFamily::laplace: return p1 + 34.0 * p2;
        case TruthFamily::uniform: return p2;
        case TruthFamily::mixture2:
            return std::max(comp1->effective_hi(), comp2->effective_hi());
    }
    return 10.0;
}

double TruthSpec::draw(Rng& rng) const {
    switch (family) {
        case TruthFamily::gaussian: return rng.normal(p1, p2);
        case TruthFamily::gamma: return rng.gamma(p1, p2);
        case TruthFamily::beta: return rng.beta(p1, p2);
        case TruthFamily::laplace: {
            double u = rng.uniform() - 0.5;
            return p1 - p2 * (u < 0.0 ? -1.0 : 1.0) * std::log1p(-2.0 * std::fabs(u));
        }
        case TruthFamily::uniform: return rng.uniform(p1, p2);
        case TruthFamily::mixture2:
            return rng.uniform() < p1 ? comp1->draw(rng) : comp2->draw(rng);
    }
    return 0.0;
}

std::string TruthSpec::describe() const {
    std::ostringstream os;
    switch (family) {
        case TruthFamily::gaussian: os << "gaussian(" << p1 << "," << p2 << ")"; break;
        case TruthFamily::gamma: os << "gamma(" << p1 << "," << p2 << ")"; break;
        case TruthFamily::beta: os << "beta(" << p1 << "," << p2 << ")"; break;
        case TruthFamily::laplace: os << "laplace(" << p1 << "," << p2 << ")"; break;
        case TruthFamily::uniform: os << "uniform(" << p1 << "," << p2 << ")"; break;
        case TruthFamily::mixture2:
            os << "mixture2(" << p1 << "," << comp1->describe() << "," << comp2->describe()
               << ")";
            break;
    }
    return os.str();
}

TruthSpec make_gaussian(double mu, double sigma) {
    TruthSpec s;
    s.family = TruthFamily::gaussian;
    s.p1 = mu;
    s.p2 = sigma;
    s.validate();
    return s;
}

TruthSpec make_gamma(double shape, double rate) {
    TruthSpec s;
    s.family = TruthFamily::gamma;
    s.p1 = shape;
    s.p2 = rate;
    s.validate();
    return s;
}

TruthSpec make_beta(double a, double b) {
    TruthSpec s;
    s.family = TruthFamily::beta;
    s.p1 = a;
    s.p2 = b;
    s.validate();
    return s;
}

TruthSpec make_laplace(double loc, double scale) {
    TruthSpec s;
    s.family = TruthFamily::laplace;
    s.p1 = loc;
    s.p2 = scale;
    s.validate();
    return s;
}

TruthSpec make_uniform(double a, double b) {
    TruthSpec s;
    s.family = TruthFamily::uniform;
    s.p1 = a;
    s.p2 = b;
    s.validate();
    return s;
}

TruthSpec make_mixture2(double w, TruthSpec first, TruthSpec second) {
    TruthSpec s;
    s.family = TruthFamily::mixture2;
    s.p1 = w;
    s.comp1 = std::make_shared<TruthSpec>(std::move(first));
    s.comp2 = std::make_shared<TruthSpec>(std::move(second));
    s.validate();
    return s;
}

std::vector<double> sample_truth(const TruthSpec& spec, Rng& rng, std::size_t n) {
    spec.validate();
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(spec.draw(rng));
    std::sort(out.begin(), out.end());
    return out;
}

double eval_truth(const TruthSpec& spec, double x) { return spec.pdf(x); }

DensityModel density_model(const TruthSpec& spec) {
    spec.validate();
    if (!spec.log_concave())
        throw validation_error("density_model: spec is not log-concave");
    DensityModel m;
    TruthSpec s = spec;
    m.pdf = [s](double x) { return s.pdf(x); };
    m.logpdf.value = [s](double x) { return s.log_pdf(x); };
    m.logpdf.dleft = [s](double x) { return s.dlog_left(x); };
    m.logpdf.dright = [s](double x) { return s.dlog_right(x); };
    if (spec.family == TruthFamily::laplace) m.logpdf.kinks = {spec.p1};
    m.supp_lo = spec.support_lo();
    m.supp_hi = spec.support_hi();
    m.eff_lo = spec.effective_lo();
    m.eff_hi = spec.effective_hi();
    return m;
}

} // namespace lcb

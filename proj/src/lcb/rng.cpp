#include "lcb/rng.hpp"

#include <cmath>

namespace lcb {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
    double u;
    do {
        u = uniform();
    } while (u <= 0.0);
    return u;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * kPi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

double Rng::normal(double mean, double sd) {
    return mean + sd * normal();
}

double Rng::exponential() {
    return -std::log(uniform_pos());
}

double Rng::gamma(double shape, double rate) {
    if (shape < 1.0) {
        // boost: G(a) = G(a+1) * U^{1/a}
        double g = gamma(shape + 1.0, 1.0);
        double u = uniform_pos();
        return g * std::pow(u, 1.0 / shape) / rate;
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform_pos();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double Rng::beta(double a, double b) {
    double x = gamma(a, 1.0);
    double y = gamma(b, 1.0);
    return x / (x + y);
}

double Rng::cauchy(double loc, double scale) {
    double u;
    do {
        u = uniform();
    } while (u == 0.5 || u == 0.0); // avoid tan poles
    return loc + scale * std::tan(kPi * (u - 0.5));
}

double Rng::half_cauchy(double scale) {
    return std::fabs(cauchy(0.0, scale));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51AB61F2C3D4E5F6ULL));
}

} // namespace lcb

#pragma once

#include <cstdint>
#include <random>

namespace lcb {

// Caller-owned RNG stream. All distributions are generated from raw
// mt19937_64 output through fixed algorithms (no std::*_distribution),
// so a given seed produces the same stream on every platform.
//
// Algorithms: uniform by 53-bit mantissa fill, normal by Box-Muller,
// gamma by Marsaglia-Tsang (with the shape<1 power boost), beta as a
// gamma ratio, Cauchy by inverse CDF.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform on [0,1)
    double uniform();
    // uniform on (0,1)
    double uniform_pos();
    double uniform(double lo, double hi);
    double normal();
    double normal(double mean, double sd);
    double exponential(); // rate 1
    double gamma(double shape, double rate);
    double beta(double a, double b);
    double cauchy(double loc, double scale);
    double half_cauchy(double scale); // |Cauchy(0, scale)|

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derives the stream seed for replication/chain `index` from a master
// seed (splitmix64 of master xor index), so parallel replications get
// independent streams and the mapping is stable across runs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace lcb

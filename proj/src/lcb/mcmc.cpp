#include "lcb/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double reflect_into(double x, double lo, double hi) {
    double span = hi - lo;
    if (!(span > 0.0)) return lo;
    double t = std::fmod(x - lo, 2.0 * span);
    if (t < 0.0) t += 2.0 * span;
    return t <= span ? lo + t : hi - (t - span);
}

double reflect_above(double x, double lo) {
    return x < lo ? 2.0 * lo - x : x;
}

double reflect_below(double x, double hi) {
    return x > hi ? 2.0 * hi - x : x;
}

double logit(double v) { return std::log(v) - std::log1p(-v); }

double sigmoid(double t) {
    if (t >= 0.0) {
        double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(t);
    return e / (1.0 + e);
}

} // namespace

void RunConfig::validate() const {
    prior.validate();
    if (iterations < 1) throw validation_error("run: iterations must be >= 1");
    if (burn_in < 0 || burn_in >= iterations)
        throw validation_error("run: burn_in must be in [0, iterations)");
    if (thin < 1) throw validation_error("run: thin must be >= 1");
    if (grid_size < 2) throw validation_error("run: grid_size must be >= 2");
}

double log_likelihood(const MixtureLogDensity& m, const std::vector<double>& sorted_data) {
    if (sorted_data.empty()) return 0.0;
    if (sorted_data.front() < m.a || sorted_data.back() > m.b) return kNegInf;
    Plf w = mixture_to_plf(m);
    double log_norm = log_norm_const(w);
    double s = plf_sum_at_sorted(w, sorted_data);
    return s - static_cast<double>(sorted_data.size()) * log_norm;
}

std::pair<double, double> empirical_support(const std::vector<double>& data) {
    if (data.size() < 2) throw data_error("empirical support needs at least 2 observations");
    auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (!(*lo < *hi)) throw data_error("empirical support is degenerate (all observations equal)");
    return {*lo, *hi};
}

GibbsSampler::GibbsSampler(const RunConfig& cfg, std::vector<double> sorted_data,
                           std::uint64_t seed)
    : cfg_(cfg), data_(std::move(sorted_data)), rng_(seed) {
    cfg_.validate();
    std::sort(data_.begin(), data_.end());

    double a, b;
    switch (cfg_.prior.support.mode) {
        case SupportMode::fixed: {
            a = cfg_.prior.support.a;
            b = cfg_.prior.support.b;
            std::ostringstream bad;
            int nbad = 0;
            for (double x : data_)
                if (x < a || x > b) {
                    if (nbad < 8) bad << (nbad ? ", " : "") << x;
                    ++nbad;
                }
            if (nbad > 0) {
                std::ostringstream os;
                os << "fixed support [" << a << ", " << b << "] excludes " << nbad
                   << " observation(s): " << bad.str();
                throw data_error(os.str());
            }
            break;
        }
        case SupportMode::empirical: {
            auto se = empirical_support(data_);
            a = se.first;
            b = se.second;
            break;
        }
        case SupportMode::hierarchical: {
            auto se = empirical_support(data_);
            double range = se.second - se.first;
            a = se.first - 0.25 * range;
            b = se.second + 0.25 * range;
            break;
        }
    }

    int N = cfg_.prior.truncation;
    double span = b - a;
    state_.mixture.a = a;
    state_.mixture.b = b;
    state_.mixture.knots.resize(static_cast<std::size_t>(N));
    for (auto& th : state_.mixture.knots) {
        th = rng_.uniform(0.0, span);
        if (th <= 0.0) th = 0.5 * span;
    }
    if (cfg_.prior.weight_model == WeightModel::stick_breaking) {
        state_.sticks.resize(static_cast<std::size_t>(N - 1));
        for (int i = 0; i + 1 < N; ++i)
            state_.sticks[static_cast<std::size_t>(i)] =
                1.0 / static_cast<double>(N - i); // uniform weights
        state_.mixture.weights = sticks_to_weights(state_.sticks);
    } else {
        state_.mixture.weights.assign(static_cast<std::size_t>(N), 1.0 / N);
        force_unit_sum(state_.mixture.weights);
    }
    state_.mixture.gamma1 = 1.0;
    state_.mixture.gamma2 = 0.0;
    rebuild(state_);
    build_blocks();
}

void GibbsSampler::build_blocks() {
    int N = cfg_.prior.truncation;
    double span = state_.mixture.width();
    const auto& s = cfg_.sampler;
    auto scale_or = [](double configured, double fallback) {
        return configured < 0.0 ? fallback : configured;
    };

    auto add = [&](const std::string& name, int kind, int index, double scale) {
        Block b;
        b.name = name;
        b.kind = kind;
        b.index = index;
        b.frozen = (scale == 0.0);
        b.log_scale = b.frozen ? kNegInf : std::log(scale);
        blocks_.push_back(b);
    };

    for (int i = 0; i < N; ++i) {
        std::ostringstream nm;
        nm << "theta_" << i;
        add(nm.str(), 0, i, scale_or(s.scale_theta, 0.25 * span));
    }
    if (cfg_.prior.weight_model == WeightModel::stick_breaking) {
        for (int i = 0; i + 1 < N; ++i) {
            std::ostringstream nm;
            nm << "v_" << i;
            add(nm.str(), 1, i, scale_or(s.scale_weights, 1.0));
        }
    } else if (N > 1) {
        add("weights", 2, 0, scale_or(s.scale_weights, 0.5));
    }
    add("gamma1", 3, 0, scale_or(s.scale_gamma1, 0.7));
    add("gamma2", 4, 0, scale_or(s.scale_gamma2, 1.0));
    if (cfg_.prior.support.mode == SupportMode::hierarchical) {
        add("support_a", 5, 0, scale_or(s.scale_support, 0.25 * span));
        add("support_width", 6, 0, scale_or(s.scale_support, 0.25 * span));
    }
}

void GibbsSampler::rebuild(ChainState& s) const {
    s.plf = mixture_to_plf(s.mixture);
    s.log_norm = log_norm_const(s.plf);
    if (!data_.empty() && (data_.front() < s.mixture.a || data_.back() > s.mixture.b)) {
        s.log_lik = kNegInf;
    } else {
        s.log_lik = plf_sum_at_sorted(s.plf, data_) -
                    static_cast<double>(data_.size()) * s.log_norm;
    }
    s.log_prior_val = log_prior(cfg_.prior, s.mixture);
}

void GibbsSampler::refresh_caches() { rebuild(state_); }

double GibbsSampler::cache_drift() const {
    Plf w = mixture_to_plf(state_.mixture);
    return std::fabs(log_norm_const(w) - state_.log_norm);
}

void GibbsSampler::propose_and_accept(Block& blk, bool adapt_now) {
    ++blk.proposals;
    if (blk.frozen) {
        ++blk.accepts; // identity proposal
        return;
    }
    double sigma = std::exp(blk.log_scale);
    double log_jacobian = 0.0;

    ChainState cand = state_;
    bool domain_ok = true;
    switch (blk.kind) {
        case 0: { // theta_i: reflected gaussian walk on (0, b-a]
            double span = cand.mixture.width();
            double& th = cand.mixture.knots[static_cast<std::size_t>(blk.index)];
            th = reflect_into(th + sigma * rng_.normal(), 0.0, span);
            if (th <= 0.0) domain_ok = false;
            break;
        }
        case 1: { // stick V_i: logit-scale walk, jacobian v(1-v)
            double& v = cand.sticks[static_cast<std::size_t>(blk.index)];
            double v_old = v;
            double t = logit(v_old) + sigma * rng_.normal();
            double v_new = sigmoid(t);
            if (!(v_new > 0.0) || !(v_new < 1.0)) {
                domain_ok = false;
            } else {
                v = v_new;
                cand.mixture.weights = sticks_to_weights(cand.sticks);
                log_jacobian = std::log(v_new * (1.0 - v_new)) -
                               std::log(v_old * (1.0 - v_old));
            }
            break;
        }
        case 2: { // dirichlet weights: logistic-normal walk on the simplex
            auto& p = cand.mixture.weights;
            std::size_t N = p.size();
            double pN = p.back();
            if (!(pN > 0.0)) {
                domain_ok = false;
                break;
            }
            std::vector<double> y(N - 1);
            for (std::size_t i = 0; i + 1 < N; ++i) {
                if (!(p[i] > 0.0)) {
                    domain_ok = false;
                    break;
                }
                y[i] = std::log(p[i]) - std::log(pN) + sigma * rng_.normal();
            }
            if (!domain_ok) break;
            double m = 0.0;
            for (double yi : y) m = std::max(m, yi);
            double denom = std::exp(-m);
            for (double yi : y) denom += std::exp(yi - m);
            double old_jac = 0.0, new_jac = 0.0;
            for (double pi : p) old_jac += std::log(pi);
            for (std::size_t i = 0; i + 1 < N; ++i) p[i] = std::exp(y[i] - m) / denom;
            p[N - 1] = std::exp(-m) / denom;
            force_unit_sum(p);
            for (double pi : p) {
                if (!(pi > 0.0)) domain_ok = false;
                new_jac += std::log(pi);
            }
            log_jacobian = new_jac - old_jac;
            break;
        }
        case 3: { // gamma1: log-scale walk, jacobian gamma1
            double g_old = cand.mixture.gamma1;
            if (!(g_old > 0.0)) {
                domain_ok = false;
                break;
            }
            double g_new = std::exp(std::log(g_old) + sigma * rng_.normal());
            if (!(g_new > 0.0) || !std::isfinite(g_new)) {
                domain_ok = false;
                break;
            }
            cand.mixture.gamma1 = g_new;
            log_jacobian = std::log(g_new) - std::log(g_old);
            break;
        }
        case 4: { // gamma2: plain gaussian walk
            cand.mixture.gamma2 += sigma * rng_.normal();
            break;
        }
        case 5: { // hierarchical a, width fixed: a in [X_(n) - L, X_(1)]
            double L = cand.mixture.width();
            double lo = data_.back() - L;
            double hi = data_.front();
            if (!(lo < hi)) {
                domain_ok = false;
                break;
            }
            double a_new = reflect_into(cand.mixture.a + sigma * rng_.normal(), lo, hi);
            cand.mixture.b = a_new + L;
            cand.mixture.a = a_new;
            break;
        }
        case 6: { // hierarchical width: L > X_(n) - a
            double lb = data_.back() - cand.mixture.a;
            double L_new = reflect_above(cand.mixture.width() + sigma * rng_.normal(), lb);
            if (!(L_new > 0.0) || !(L_new >= lb)) {
                domain_ok = false;
                break;
            }
            cand.mixture.b = cand.mixture.a + L_new;
            break;
        }
    }

    double log_alpha = kNegInf;
    if (domain_ok) {
        cand.log_prior_val = log_prior(cfg_.prior, cand.mixture);
        if (cand.log_prior_val == kNegInf) {
            log_alpha = kNegInf;
        } else {
            cand.plf = mixture_to_plf(cand.mixture);
            cand.log_norm = log_norm_const(cand.plf);
            if (!data_.empty() &&
                (data_.front() < cand.mixture.a || data_.back() > cand.mixture.b)) {
                cand.log_lik = kNegInf;
            } else {
                cand.log_lik = plf_sum_at_sorted(cand.plf, data_) -
                               static_cast<double>(data_.size()) * cand.log_norm;
            }
            log_alpha = cand.log_post() - state_.log_post() + log_jacobian;
        }
    }

    double alpha = log_alpha >= 0.0 ? 1.0 : std::exp(log_alpha);
    if (log_alpha > kNegInf && std::log(rng_.uniform_pos()) < log_alpha) {
        state_ = std::move(cand);
        ++blk.accepts;
    }

    if (adapt_now && cfg_.sampler.adapt) {
        ++blk.adapt_count;
        double eta = std::pow(static_cast<double>(blk.adapt_count), -cfg_.sampler.adapt_exponent);
        blk.log_scale += eta * (alpha - cfg_.sampler.target_acceptance);
        blk.log_scale = std::min(std::max(blk.log_scale, -20.0), 20.0);
    }
}

void GibbsSampler::sweep(bool adapt_now) {
    for (auto& blk : blocks_) propose_and_accept(blk, adapt_now);
}

std::vector<BlockStats> GibbsSampler::block_stats() const {
    std::vector<BlockStats> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        BlockStats s;
        s.name = b.name;
        s.scale = b.frozen ? 0.0 : std::exp(b.log_scale);
        s.proposals = b.proposals;
        s.accepts = b.accepts;
        out.push_back(s);
    }
    return out;
}

void GibbsSampler::reset_counters() {
    for (auto& b : blocks_) {
        b.proposals = 0;
        b.accepts = 0;
    }
}

Chain run_chain(const RunConfig& cfg, const std::vector<double>& data, std::uint64_t seed) {
    cfg.validate();
    if (data.empty()) throw data_error("run_chain: empty data");
    std::vector<double> sorted = data;
    std::sort(sorted.begin(), sorted.end());
    if (cfg.prior.support.mode != SupportMode::fixed) {
        empirical_support(sorted); // rejects degenerate data up front
    }

    GibbsSampler sampler(cfg, sorted, seed);

    Chain chain;
    chain.meta.seed = seed;
    chain.meta.iterations = cfg.iterations;
    chain.meta.burn_in = cfg.burn_in;
    chain.meta.thin = cfg.thin;
    chain.meta.grid_size = cfg.grid_size;
    switch (cfg.prior.support.mode) {
        case SupportMode::fixed: chain.meta.support_mode = "fixed"; break;
        case SupportMode::empirical: chain.meta.support_mode = "empirical"; break;
        case SupportMode::hierarchical: chain.meta.support_mode = "hierarchical"; break;
    }
    {
        std::ostringstream os;
        os << "robbins-monro on log proposal scale, target "
           << cfg.sampler.target_acceptance << ", step t^-" << cfg.sampler.adapt_exponent
           << ", burn-in only, frozen afterwards";
        chain.meta.adaptation = os.str();
    }

    // evaluation grid is fixed for the whole run
    double g_lo = sampler.state().mixture.a;
    double g_hi = sampler.state().mixture.b;
    if (cfg.prior.support.mode == SupportMode::hierarchical) {
        auto se = empirical_support(sorted);
        double range = se.second - se.first;
        g_lo = se.first - 0.5 * range;
        g_hi = se.second + 0.5 * range;
    }
    chain.grid.resize(static_cast<std::size_t>(cfg.grid_size));
    for (int i = 0; i < cfg.grid_size; ++i)
        chain.grid[static_cast<std::size_t>(i)] =
            g_lo + (g_hi - g_lo) * static_cast<double>(i) / (cfg.grid_size - 1);

    long kept_budget = (cfg.iterations - cfg.burn_in) / cfg.thin;
    chain.states.reserve(static_cast<std::size_t>(kept_budget));
    chain.grid_evals.reserve(static_cast<std::size_t>(kept_budget));

    for (long it = 0; it < cfg.iterations; ++it) {
        bool in_burn = it < cfg.burn_in;
        sampler.sweep(in_burn);
        if (it == cfg.burn_in - 1) sampler.reset_counters();
        if (!in_burn && (it - cfg.burn_in) % cfg.thin == 0) {
            const ChainState& s = sampler.state();
            chain.states.push_back(s);
            chain.log_posts.push_back(s.log_post());
            std::vector<double> evals(chain.grid.size());
            NormalizedDensity d(s.plf);
            for (std::size_t g = 0; g < chain.grid.size(); ++g)
                evals[g] = d.pdf(chain.grid[g]);
            chain.grid_evals.push_back(std::move(evals));
        }
    }
    chain.meta.blocks = sampler.block_stats();
    return chain;
}

} // namespace lcb

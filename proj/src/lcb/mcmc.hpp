#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcb/plf.hpp"
#include "lcb/priors.hpp"
#include "lcb/rng.hpp"

namespace lcb {

// Proposal/adaptation knobs. Scales < 0 mean "auto from the data scale";
// a scale of exactly 0 freezes that block (identity proposal, counted as
// accepted). Adaptation is Robbins-Monro on the log proposal scale,
// targeting `target_acceptance`, active during burn-in only.
struct SamplerSettings {
    double target_acceptance = 0.30;
    double adapt_exponent = 0.7;
    bool adapt = true;
    double scale_theta = -1.0;
    double scale_weights = -1.0; // logit / logistic-normal walk
    double scale_gamma1 = -1.0;  // log-scale walk
    double scale_gamma2 = -1.0;
    double scale_support = -1.0; // hierarchical (a, b-a) blocks
};

struct RunConfig {
    PriorConfig prior;
    long iterations = 10000;
    long burn_in = 5000;
    long thin = 1;
    int grid_size = 512;
    SamplerSettings sampler;

    void validate() const;
};

// Sampler state: mixture parameters plus cached derived quantities.
struct ChainState {
    MixtureLogDensity mixture;
    std::vector<double> sticks; // stick-breaking mode only, V_1..V_{N-1}
    Plf plf;
    double log_norm = 0.0;
    double log_lik = 0.0;
    double log_prior_val = 0.0;

    double log_post() const { return log_lik + log_prior_val; }
};

struct BlockStats {
    std::string name;
    double scale = 0.0;     // frozen proposal scale
    long proposals = 0;     // post-freeze
    long accepts = 0;
    double acceptance() const {
        return proposals > 0 ? static_cast<double>(accepts) / proposals : 1.0;
    }
};

struct ChainMeta {
    std::uint64_t seed = 0;
    long iterations = 0, burn_in = 0, thin = 1;
    int grid_size = 0;
    std::string support_mode;
    std::string adaptation;
    std::vector<BlockStats> blocks;
};

struct Chain {
    std::vector<ChainState> states;              // kept, post burn-in
    std::vector<double> grid;                    // fixed evaluation grid
    std::vector<std::vector<double>> grid_evals; // density per kept state
    std::vector<double> log_posts;
    ChainMeta meta;

    std::size_t kept() const { return states.size(); }
};

// sum_i W(X_i) - n log int e^W; -inf when any observation leaves [a,b]
double log_likelihood(const MixtureLogDensity& m, const std::vector<double>& sorted_data);

// [min, max] of the data; rejects n < 2 or zero width
std::pair<double, double> empirical_support(const std::vector<double>& data);

// One MH-within-Gibbs sweep over all blocks (each theta_i, each stick or
// the weight vector, gamma1, gamma2, and the support pair in hierarchical
// mode). Proposals that leave the parameter domain score -inf posterior
// and are auto-rejected.
class GibbsSampler {
public:
    GibbsSampler(const RunConfig& cfg, std::vector<double> sorted_data, std::uint64_t seed);

    void sweep(bool adapt_now);
    const ChainState& state() const { return state_; }
    ChainState& mutable_state() { return state_; }
    void refresh_caches(); // recompute all cached quantities from parameters
    double cache_drift() const; // |cached log_norm - fresh| for audits
    std::vector<BlockStats> block_stats() const;
    void reset_counters();
    const std::vector<double>& data() const { return data_; }
    const RunConfig& config() const { return cfg_; }

private:
    struct Block {
        std::string name;
        int kind = 0; // 0 theta_i, 1 stick_i, 2 weights joint, 3 g1, 4 g2, 5 a, 6 width
        int index = 0;
        double log_scale = 0.0;
        bool frozen = false;
        long adapt_count = 0;
        long proposals = 0;
        long accepts = 0;
    };

    void build_blocks();
    void propose_and_accept(Block& blk, bool adapt_now);
    void rebuild(ChainState& s) const;

    RunConfig cfg_;
    std::vector<double> data_;
    Rng rng_;
    ChainState state_;
    std::vector<Block> blocks_;
};

// Full run: init from the prior config, adapt during burn-in, then keep
// every thin-th state with density evaluations on the fixed grid.
// Deterministic given (cfg, data, seed).
Chain run_chain(const RunConfig& cfg, const std::vector<double>& data, std::uint64_t seed);

} // namespace lcb

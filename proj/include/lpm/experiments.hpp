#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpm/rng.hpp"

namespace lpm {

// Declarative description of one replicated study. `method` selects the
// sampling scheme; each experiment accepts its own subset.
struct ExperimentConfig {
    std::string experiment;      // integral | option | rare-event | rainforest
    std::string method = "lpm2"; // iid | lpm1 | lpm2 | stratified | is | is+lpm2
    std::size_t n = 100;
    std::size_t cloud_size = 10000;  // discretization size N
    std::size_t replicates = 10000;  // m
    std::uint64_t seed = 1;
    std::size_t n_prime = 10;        // local-mean variance neighborhood
};

// Mean/sd summary of the m replicate estimates of one method.
struct ExperimentReport {
    std::string experiment;
    std::string method;
    std::size_t n = 0;
    std::size_t cloud_size = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double sd = 0.0;
    bool sd_defined = false;           // false when m = 1
    std::optional<double> mean_sqrt_vhat;  // option experiment, LPM methods
    std::optional<double> param;       // grid parameter (rainforest x_crit)
    double wall_ms = 0.0;
    std::vector<double> estimates;     // per-replicate estimates, k-th from derive_seed(seed,k)
};

// Runs fn over m independent replicates; replicate k draws from a stream
// seeded with derive_seed(master_seed, k). Replicates run in parallel and
// the result is identical for any thread count.
ExperimentReport replicate(std::size_t m, std::uint64_t master_seed,
                           const std::function<double(std::uint64_t, RngStream&)>& fn);

// --- Integral study: mean of U(0,1) -------------------------------------

// One replicate estimate of E[X], X ~ U(0,1). Methods: iid, lpm1, lpm2,
// stratified (10 equal-width strata, near-equal allocation).
double integral_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                         RngStream& rng);
ExperimentReport run_integral_experiment(const ExperimentConfig& cfg);

// --- European call study -------------------------------------------------

struct OptionParams {
    double spot = 100.0;
    double strike = 120.0;
    double rate = 0.03;
    double sigma = 0.5;
    double maturity = 0.25;

    void validate() const;
};

// Closed-form Black-Scholes call price at t = 0.
double bs_price(const OptionParams& p);

// One replicate estimate of the discounted call payoff mean. Methods: iid,
// lpm1, lpm2. For LPM methods, *sqrt_vhat (when non-null) receives the
// square root of the single-sample local-mean variance estimate with the
// given neighborhood size.
double option_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                       const OptionParams& p, std::size_t n_prime, RngStream& rng,
                       double* sqrt_vhat = nullptr);
ExperimentReport run_option_experiment(const ExperimentConfig& cfg, const OptionParams& p);

// --- Rare-event study ----------------------------------------------------

// Threshold payoff: 1000*x above the 99.9th standard normal percentile,
// else 0.
double rare_event_payoff(double x);
// Closed form E[payoff] = 1000 * pdf(quantile(0.999)).
double rare_event_true_mean();

// Methods: iid, lpm2, is (proposal N(3,1)), is+lpm2.
double rare_event_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                           RngStream& rng);
ExperimentReport run_rare_event_experiment(const ExperimentConfig& cfg);

// --- Rainforest stability study ------------------------------------------

struct RainforestParams {
    double growth_rate = 1.0;   // R
    double death_rate = 0.5;    // M
    double x_crit = 0.0;        // critical cover threshold
    double epsilon = 1e-2;      // attractor neighborhood radius
    double t_max = 1e3;

    double forest_state() const { return 1.0 - death_rate / growth_rate; }
    void validate() const;
};

enum class Attractor { Forest, Savanna, Timeout };

// dx/dt for the bistable forest-cover model.
double rainforest_rhs(double x, const RainforestParams& p);

// Integrates from x0 until the trajectory enters the epsilon-neighborhood
// of the forest or savanna state, or t exceeds t_max (reported, never
// silently classified safe).
Attractor integrate_to_attractor(double x0, const RainforestParams& p);

struct StabilityReport {
    double safe_fraction = 0.0;  // P
    std::size_t n_safe = 0;
    std::size_t n_tot = 0;
    std::size_t timeouts = 0;
};

// One replicate: n perturbations z (iid from N(0,1) or an LPM thinning of
// a cloud_size cloud), initial conditions x0 = x_F - |z|, P = fraction
// reaching the forest state. Methods: iid, lpm2.
StabilityReport rainforest_stability(const std::string& method, std::size_t n,
                                     std::size_t cloud_size, const RainforestParams& p,
                                     RngStream& rng);
// One report per x_crit grid point; estimates are the replicate P values.
std::vector<ExperimentReport> run_rainforest_experiment(const ExperimentConfig& cfg,
                                                        const RainforestParams& base,
                                                        std::span<const double> x_crit_grid);

}  // namespace lpm

#include "lpm/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lpm/continuous.hpp"
#include "lpm/estimation.hpp"
#include "lpm/ode.hpp"
#include "lpm/pivotal.hpp"
#include "lpm/stats.hpp"

namespace lpm {

namespace {

void run_parallel(std::size_t m, const std::function<void(std::size_t)>& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(std::max(1u, hw), m);
    if (workers <= 1) {
        for (std::size_t k = 0; k < m; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= m) return;
                body(k);
            }
        });
    for (auto& t : pool) t.join();
}

// LPM-thins a discretized cloud down to an expected n points with equal
// inclusion probabilities n/N.
SampleResult thin_cloud(const std::string& method, const DiscretizedPopulation& pop,
                        std::size_t n, RngStream& rng) {
    const double pi = static_cast<double>(n) / static_cast<double>(pop.coords.rows());
    std::vector<double> probs(pop.coords.rows(), pi);
    const DistanceSpec dist = DistanceSpec::euclidean();
    if (method == "lpm1") return lpm1(probs, pop.coords, dist, rng);
    return lpm2(probs, pop.coords, dist, rng);
}

bool is_lpm(const std::string& method) { return method == "lpm1" || method == "lpm2"; }

}  // namespace

ExperimentReport replicate(std::size_t m, std::uint64_t master_seed,
                           const std::function<double(std::uint64_t, RngStream&)>& fn) {
    if (m < 1) throw std::invalid_argument("replicate: requires m >= 1");
    const auto start = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.replicates = m;
    report.seed = master_seed;
    report.estimates.resize(m);
    run_parallel(m, [&](std::size_t k) {
        RngStream rng(derive_seed(master_seed, k));
        report.estimates[k] = fn(k, rng);
    });

    const MeanSd stats = mean_sd(report.estimates);
    report.mean = stats.mean;
    report.sd = stats.sd;
    report.sd_defined = m >= 2;
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

// --- Integral study --------------------------------------------------------

double integral_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                         RngStream& rng) {
    if (n < 1) throw std::invalid_argument("integral_estimate: n >= 1 required");
    if (method == "iid") {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += rng.next_double();
        return sum / static_cast<double>(n);
    }
    if (method == "stratified") {
        // 10 equal-width strata; the first n mod 10 strata take one extra
        // draw. Estimate is the stratum-probability weighted mean.
        constexpr std::size_t strata = 10;
        if (n < strata) throw std::invalid_argument("stratified: n >= 10 required");
        double total = 0.0;
        for (std::size_t h = 0; h < strata; ++h) {
            const std::size_t quota = n / strata + (h < n % strata ? 1 : 0);
            double sum = 0.0;
            for (std::size_t i = 0; i < quota; ++i)
                sum += (static_cast<double>(h) + rng.next_double()) / strata;
            total += sum / static_cast<double>(quota) / strata;
        }
        return total;
    }
    if (is_lpm(method)) {
        if (cloud_size < n) throw std::invalid_argument("integral_estimate: N >= n required");
        const auto dist = DistributionSpec::uniform({0.0}, {1.0});
        const DiscretizedPopulation pop = discretize(dist, cloud_size, rng);
        const SampleResult sample = thin_cloud(method, pop, n, rng);
        std::vector<double> values, probs;
        values.reserve(sample.selected.size());
        const double pi = static_cast<double>(n) / static_cast<double>(cloud_size);
        for (std::size_t i : sample.selected) values.push_back(pop.coords(i, 0));
        probs.assign(values.size(), pi);
        return ht_estimate(values, probs, cloud_size).point;
    }
    throw std::invalid_argument("integral_estimate: unknown method " + method);
}

ExperimentReport run_integral_experiment(const ExperimentConfig& cfg) {
    ExperimentReport report = replicate(
        cfg.replicates, cfg.seed, [&](std::uint64_t, RngStream& rng) {
            return integral_estimate(cfg.method, cfg.n, cfg.cloud_size, rng);
        });
    report.experiment = "integral";
    report.method = cfg.method;
    report.n = cfg.n;
    report.cloud_size = is_lpm(cfg.method) ? cfg.cloud_size : cfg.n;
    return report;
}

// --- European call study ----------------------------------------------------

void OptionParams::validate() const {
    if (!(spot > 0.0 && strike > 0.0 && sigma > 0.0 && maturity > 0.0))
        throw std::invalid_argument("OptionParams: spot, strike, sigma, maturity must be > 0");
}

double bs_price(const OptionParams& p) {
    p.validate();
    const double st = p.sigma * std::sqrt(p.maturity);
    const double d1 =
        (std::log(p.spot / p.strike) + (p.rate + 0.5 * p.sigma * p.sigma) * p.maturity) / st;
    const double d2 = d1 - st;
    return normal_cdf(d1) * p.spot - normal_cdf(d2) * p.strike * std::exp(-p.rate * p.maturity);
}

namespace {

double discounted_payoff(double z, const OptionParams& p) {
    const double terminal =
        p.spot *
        std::exp((p.rate - 0.5 * p.sigma * p.sigma) * p.maturity + p.sigma * std::sqrt(p.maturity) * z);
    return std::exp(-p.rate * p.maturity) * std::max(0.0, terminal - p.strike);
}

}  // namespace

double option_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                       const OptionParams& p, std::size_t n_prime, RngStream& rng,
                       double* sqrt_vhat) {
    p.validate();
    if (method == "iid") {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += discounted_payoff(rng.next_normal(), p);
        return sum / static_cast<double>(n);
    }
    if (is_lpm(method)) {
        if (cloud_size < n) throw std::invalid_argument("option_estimate: N >= n required");
        const auto dist = DistributionSpec::normal({0.0}, {1.0});
        const DiscretizedPopulation pop = discretize(dist, cloud_size, rng);
        const SampleResult sample = thin_cloud(method, pop, n, rng);

        const double pi = static_cast<double>(n) / static_cast<double>(cloud_size);
        std::vector<double> values;
        Matrix coords(sample.selected.size(), 1);
        for (std::size_t k = 0; k < sample.selected.size(); ++k) {
            const std::size_t i = sample.selected[k];
            coords(k, 0) = pop.coords(i, 0);
            values.push_back(discounted_payoff(pop.coords(i, 0), p));
        }
        if (sqrt_vhat) {
            *sqrt_vhat = std::sqrt(
                local_mean_variance(values, coords, DistanceSpec::euclidean(), n_prime));
        }
        std::vector<double> probs(values.size(), pi);
        return ht_estimate(values, probs, cloud_size).point;
    }
    throw std::invalid_argument("option_estimate: unknown method " + method);
}

ExperimentReport run_option_experiment(const ExperimentConfig& cfg, const OptionParams& p) {
    std::vector<double> sqrt_vhat(cfg.replicates, 0.0);
    const bool lpm_method = is_lpm(cfg.method);
    ExperimentReport report = replicate(
        cfg.replicates, cfg.seed, [&](std::uint64_t k, RngStream& rng) {
            return option_estimate(cfg.method, cfg.n, cfg.cloud_size, p, cfg.n_prime, rng,
                                   lpm_method ? &sqrt_vhat[k] : nullptr);
        });
    report.experiment = "option";
    report.method = cfg.method;
    report.n = cfg.n;
    report.cloud_size = lpm_method ? cfg.cloud_size : cfg.n;
    if (lpm_method) report.mean_sqrt_vhat = mean_sd(sqrt_vhat).mean;
    return report;
}

// --- Rare-event study --------------------------------------------------------

namespace {

double rare_event_threshold() {
    static const double alpha = normal_quantile(0.999);
    return alpha;
}

}  // namespace

double rare_event_payoff(double x) {
    return x > rare_event_threshold() ? 1000.0 * x : 0.0;
}

double rare_event_true_mean() { return 1000.0 * normal_pdf(rare_event_threshold()); }

double rare_event_estimate(const std::string& method, std::size_t n, std::size_t cloud_size,
                           RngStream& rng) {
    if (method == "iid") {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += rare_event_payoff(rng.next_normal());
        return sum / static_cast<double>(n);
    }

    const ISSpec is_spec{DistributionSpec::normal({0.0}, {1.0}),
                         DistributionSpec::normal({3.0}, {1.0})};
    if (method == "is") {
        const DiscretizedPopulation pop = discretize_is(is_spec, n, rng);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sum += rare_event_payoff(pop.coords(i, 0)) * pop.weights[i];
        return sum / static_cast<double>(n);
    }

    const bool plain_lpm = is_lpm(method);
    const bool is_lpm_combo = method == "is+lpm2" || method == "is+lpm1";
    if (!plain_lpm && !is_lpm_combo)
        throw std::invalid_argument("rare_event_estimate: unknown method " + method);
    if (cloud_size < n) throw std::invalid_argument("rare_event_estimate: N >= n required");

    // Plain LPM thins a target cloud; IS+LPM thins the proposal cloud and
    // pushes the density-ratio weights through the estimator.
    const DiscretizedPopulation pop =
        plain_lpm ? discretize(DistributionSpec::normal({0.0}, {1.0}), cloud_size, rng)
                  : discretize_is(is_spec, cloud_size, rng);
    const std::string variant = plain_lpm ? method : method.substr(3);
    const SampleResult sample = thin_cloud(variant, pop, n, rng);

    const double pi = static_cast<double>(n) / static_cast<double>(cloud_size);
    std::vector<double> values, probs, weights;
    for (std::size_t i : sample.selected) {
        values.push_back(rare_event_payoff(pop.coords(i, 0)));
        weights.push_back(pop.weights[i]);
    }
    probs.assign(values.size(), pi);
    return ht_estimate(values, probs, cloud_size, weights).point;
}

ExperimentReport run_rare_event_experiment(const ExperimentConfig& cfg) {
    ExperimentReport report = replicate(
        cfg.replicates, cfg.seed, [&](std::uint64_t, RngStream& rng) {
            return rare_event_estimate(cfg.method, cfg.n, cfg.cloud_size, rng);
        });
    report.experiment = "rare-event";
    report.method = cfg.method;
    report.n = cfg.n;
    report.cloud_size = (cfg.method == "iid" || cfg.method == "is") ? cfg.n : cfg.cloud_size;
    return report;
}

// --- Rainforest stability study ------------------------------------------------

void RainforestParams::validate() const {
    if (!(death_rate > 0.0 && death_rate < growth_rate))
        throw std::invalid_argument("RainforestParams: requires 0 < M < R");
    if (!(x_crit >= 0.0 && x_crit < 1.0))
        throw std::invalid_argument("RainforestParams: requires 0 <= x_crit < 1");
    if (!(epsilon > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("RainforestParams: epsilon and t_max must be > 0");
}

double rainforest_rhs(double x, const RainforestParams& p) {
    const double growth = x > p.x_crit ? p.growth_rate * x * (1.0 - x) : 0.0;
    return growth - p.death_rate * x;
}

Attractor integrate_to_attractor(double x0, const RainforestParams& p) {
    p.validate();
    if (!std::isfinite(x0)) throw std::domain_error("integrate_to_attractor: non-finite x0");
    const double forest = p.forest_state();
    const double savanna = 0.0;

    const auto near_forest = [&](double x) { return std::fabs(x - forest) < p.epsilon; };
    const auto near_savanna = [&](double x) { return std::fabs(x - savanna) < p.epsilon; };

    const OdeOutcome outcome = integrate_dopri5(
        [&](double x) { return rainforest_rhs(x, p); }, x0, p.t_max,
        [&](double x) { return near_forest(x) || near_savanna(x); });

    if (!outcome.stopped) return Attractor::Timeout;
    return near_forest(outcome.x) ? Attractor::Forest : Attractor::Savanna;
}

StabilityReport rainforest_stability(const std::string& method, std::size_t n,
                                     std::size_t cloud_size, const RainforestParams& p,
                                     RngStream& rng) {
    p.validate();
    std::vector<double> zs;
    if (method == "iid") {
        zs.resize(n);
        for (auto& z : zs) z = rng.next_normal();
    } else if (is_lpm(method)) {
        if (cloud_size < n)
            throw std::invalid_argument("rainforest_stability: N >= n required");
        const DiscretizedPopulation pop =
            discretize(DistributionSpec::normal({0.0}, {1.0}), cloud_size, rng);
        const SampleResult sample = thin_cloud(method, pop, n, rng);
        for (std::size_t i : sample.selected) zs.push_back(pop.coords(i, 0));
    } else {
        throw std::invalid_argument("rainforest_stability: unknown method " + method);
    }

    StabilityReport report;
    report.n_tot = zs.size();
    const double forest = p.forest_state();
    for (double z : zs) {
        switch (integrate_to_attractor(forest - std::fabs(z), p)) {
            case Attractor::Forest: ++report.n_safe; break;
            case Attractor::Timeout: ++report.timeouts; break;
            case Attractor::Savanna: break;
        }
    }
    report.safe_fraction =
        report.n_tot ? static_cast<double>(report.n_safe) / static_cast<double>(report.n_tot)
                     : 0.0;
    return report;
}

std::vector<ExperimentReport> run_rainforest_experiment(const ExperimentConfig& cfg,
                                                        const RainforestParams& base,
                                                        std::span<const double> x_crit_grid) {
    if (x_crit_grid.empty())
        throw std::invalid_argument("run_rainforest_experiment: empty x_crit grid");
    std::vector<ExperimentReport> reports;
    reports.reserve(x_crit_grid.size());
    for (double x_crit : x_crit_grid) {
        RainforestParams p = base;
        p.x_crit = x_crit;
        p.validate();
        ExperimentReport report = replicate(
            cfg.replicates, cfg.seed, [&](std::uint64_t, RngStream& rng) {
                return rainforest_stability(cfg.method, cfg.n, cfg.cloud_size, p, rng)
                    .safe_fraction;
            });
        report.experiment = "rainforest";
        report.method = cfg.method;
        report.n = cfg.n;
        report.cloud_size = is_lpm(cfg.method) ? cfg.cloud_size : cfg.n;
        report.param = x_crit;
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace lpm

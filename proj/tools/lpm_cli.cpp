// Command-line front end: well-spread sampling, estimation, balance
// diagnostics, cloud generation, and the built-in experiment suite.
//
// Exit codes: 0 success, 2 usage/format error, 3 domain error (infeasible
// probabilities or other data outside its valid domain).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lpm/continuous.hpp"
#include "lpm/csv.hpp"
#include "lpm/estimation.hpp"
#include "lpm/experiments.hpp"
#include "lpm/pivotal.hpp"
#include "lpm/rng.hpp"
#include "lpm/stats.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

// Column names with reserved roles; everything else is a coordinate.
const std::set<std::string> kReservedColumns = {"prob", "pi", "y", "weight", "w"};

struct OutputTarget {
    std::string path = "-";

    void write(const std::string& text) const {
        if (path == "-" || path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + path);
        out << text;
    }
};

std::vector<std::size_t> coordinate_columns(const lpm::CsvTable& table) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < table.header.size(); ++j)
        if (!kReservedColumns.count(table.header[j])) cols.push_back(j);
    return cols;
}

lpm::Matrix extract_columns(const lpm::CsvTable& table, const std::vector<std::size_t>& cols) {
    lpm::Matrix out(table.rows(), cols.size());
    for (std::size_t i = 0; i < table.rows(); ++i)
        for (std::size_t c = 0; c < cols.size(); ++c) out(i, c) = table.values(i, cols[c]);
    return out;
}

json report_to_json(const lpm::ExperimentReport& r) {
    json j{{"method", r.method},
           {"n", r.n},
           {"N", r.cloud_size},
           {"m", r.replicates},
           {"mean", r.mean},
           {"sd", r.sd},
           {"sd_defined", r.sd_defined},
           {"seed", r.seed},
           {"wall_ms", r.wall_ms}};
    if (r.mean_sqrt_vhat) j["mean_sqrt_vhat"] = *r.mean_sqrt_vhat;
    if (r.param) j["param"] = *r.param;
    return j;
}

std::string reports_to_csv(const std::vector<lpm::ExperimentReport>& reports, bool with_param) {
    std::ostringstream os;
    os << "method,n,N,m,mean,sd";
    if (with_param) os << ",param";
    os << '\n';
    for (const auto& r : reports) {
        os << r.method << ',' << r.n << ',' << r.cloud_size << ',' << r.replicates << ','
           << lpm::format_double(r.mean) << ',' << lpm::format_double(r.sd);
        if (with_param) os << ',' << (r.param ? lpm::format_double(*r.param) : std::string());
        os << '\n';
    }
    return os.str();
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
    std::string input;
    std::string prob_col;
    std::size_t n = 0;
    bool n_given = false;
    std::string method = "lpm2";
    std::string distance = "euclidean";
    std::string rows_path;
    std::uint64_t seed = 1;
    OutputTarget out;
};

int cmd_sample(const SampleArgs& args) {
    const lpm::CsvTable table = lpm::read_csv_file(args.input);
    const auto coord_cols = coordinate_columns(table);
    if (coord_cols.empty()) throw std::invalid_argument("sample: no coordinate columns");
    const lpm::Matrix coords = extract_columns(table, coord_cols);
    const std::size_t population = table.rows();
    if (population == 0) throw std::invalid_argument("sample: empty population");

    int prob_idx = -1;
    if (!args.prob_col.empty()) {
        prob_idx = table.column(args.prob_col);
        if (prob_idx < 0)
            throw std::invalid_argument("sample: no column named " + args.prob_col);
        if (args.n_given)
            throw std::invalid_argument("sample: --n and --prob-col are mutually exclusive");
    } else if (!args.n_given) {
        prob_idx = table.column("prob");
        if (prob_idx < 0)
            throw std::invalid_argument("sample: need --n or a prob column");
    }

    std::vector<double> probs(population);
    if (prob_idx >= 0) {
        for (std::size_t i = 0; i < population; ++i) probs[i] = table.values(i, prob_idx);
    } else {
        if (args.n > population)
            throw std::domain_error("sample: --n exceeds the population size");
        probs.assign(population, static_cast<double>(args.n) / static_cast<double>(population));
    }
    lpm::validate_probabilities(probs);

    const lpm::DistanceSpec dist = lpm::DistanceSpec::parse(args.distance);
    lpm::RngStream rng(args.seed);
    const lpm::SampleResult result = args.method == "lpm1"
                                         ? lpm::lpm1(probs, coords, dist, rng)
                                         : lpm::lpm2(probs, coords, dist, rng);

    std::ostringstream os;
    for (std::size_t i : result.selected) os << i << '\n';
    args.out.write(os.str());

    if (!args.rows_path.empty()) {
        lpm::CsvTable rows;
        rows.header = table.header;
        rows.values = lpm::Matrix(result.selected.size(), table.header.size());
        for (std::size_t k = 0; k < result.selected.size(); ++k)
            for (std::size_t j = 0; j < table.header.size(); ++j)
                rows.values(k, j) = table.values(result.selected[k], j);
        std::ofstream out(args.rows_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open rows output: " + args.rows_path);
        lpm::write_csv(out, rows);
    }
    return 0;
}

// --- estimate ----------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::string y_col = "y";
    std::string pi_col = "pi";
    std::string weight_col;
    std::size_t n_prime = 0;
    std::size_t population = 0;  // 0: estimate as round(sum 1/pi)
    std::string distance = "euclidean";
    std::string format = "json";
    OutputTarget out;
};

int cmd_estimate(const EstimateArgs& args) {
    const lpm::CsvTable table = lpm::read_csv_file(args.input);
    const int y_idx = table.column(args.y_col);
    const int pi_idx = table.column(args.pi_col);
    if (y_idx < 0) throw std::invalid_argument("estimate: missing column " + args.y_col);
    if (pi_idx < 0) throw std::invalid_argument("estimate: missing column " + args.pi_col);
    int w_idx = -1;
    if (!args.weight_col.empty()) {
        w_idx = table.column(args.weight_col);
        if (w_idx < 0) throw std::invalid_argument("estimate: missing column " + args.weight_col);
    } else {
        w_idx = table.column("weight");
    }

    const std::size_t n = table.rows();
    if (n == 0) throw std::invalid_argument("estimate: empty sample");
    std::vector<double> values(n), probs(n), weights;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = table.values(i, y_idx);
        probs[i] = table.values(i, pi_idx);
        if (!(probs[i] > 0.0))
            throw std::domain_error("estimate: inclusion probabilities must be positive");
    }
    if (w_idx >= 0) {
        weights.resize(n);
        for (std::size_t i = 0; i < n; ++i) weights[i] = table.values(i, w_idx);
    }

    std::size_t population = args.population;
    if (population == 0) {
        double inv = 0.0;
        for (double p : probs) inv += 1.0 / p;
        population = static_cast<std::size_t>(std::llround(inv));
        if (population == 0) population = n;
    }

    lpm::EstimateReport report = lpm::ht_estimate(values, probs, population, weights);

    if (args.n_prime > 0) {
        if (args.n_prime < 2 || args.n_prime > n)
            throw std::invalid_argument("estimate: --nprime must be in [2, n]");
        const auto coord_cols = coordinate_columns(table);
        lpm::Matrix coords;
        if (coord_cols.empty()) {
            if (args.n_prime < n)
                throw std::invalid_argument(
                    "estimate: --nprime below n requires coordinate columns");
            coords = lpm::Matrix(n, 1, 0.0);  // n' = n ignores geometry
        } else {
            coords = extract_columns(table, coord_cols);
        }
        // The local-mean formula targets the equal-probability mean
        // estimate; fold unequal probabilities and weights into the values
        // so that (1/n) sum y~ equals the HT estimate.
        std::vector<double> folded(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = weights.empty() ? 1.0 : weights[i];
            folded[i] = static_cast<double>(n) * w * values[i] /
                        (static_cast<double>(population) * probs[i]);
        }
        report.variance = lpm::local_mean_variance(folded, coords,
                                                   lpm::DistanceSpec::parse(args.distance),
                                                   args.n_prime);
        report.n_prime = args.n_prime;
    }

    if (args.format == "csv") {
        std::ostringstream os;
        os << "point,variance,n,n_prime,method\n"
           << lpm::format_double(report.point) << ','
           << (report.variance ? lpm::format_double(*report.variance) : std::string()) << ','
           << report.n << ',' << report.n_prime << ',' << report.method << '\n';
        args.out.write(os.str());
    } else {
        json j{{"schema_version", kSchemaVersion},
               {"point", report.point},
               {"n", report.n},
               {"method", report.method}};
        if (report.variance) {
            j["variance"] = *report.variance;
            j["n_prime"] = report.n_prime;
        }
        args.out.write(j.dump(2) + "\n");
    }
    return 0;
}

// --- balance ----------------------------------------------------------------

struct BalanceArgs {
    std::string sample_path;
    std::string reference_path;
    std::string simulate;  // iid | lpm2 | lpm1; empty = file mode
    std::size_t n = 100;
    std::size_t cloud = 10000;
    std::size_t dim = 2;
    std::size_t replicates = 1;
    std::string distance = "euclidean";
    std::string format = "json";
    std::uint64_t seed = 1;
    OutputTarget out;
};

int cmd_balance(const BalanceArgs& args) {
    const lpm::DistanceSpec dist = lpm::DistanceSpec::parse(args.distance);

    if (args.simulate.empty()) {
        if (args.sample_path.empty() || args.reference_path.empty())
            throw std::invalid_argument("balance: need --sample and --reference, or --simulate");
        const lpm::CsvTable sample = lpm::read_csv_file(args.sample_path);
        const lpm::CsvTable reference = lpm::read_csv_file(args.reference_path);
        const lpm::Matrix s = extract_columns(sample, coordinate_columns(sample));
        const lpm::Matrix r = extract_columns(reference, coordinate_columns(reference));
        if (s.cols() != r.cols())
            throw std::invalid_argument("balance: sample/reference dimension mismatch");
        lpm::RngStream rng(args.seed);
        const lpm::BalanceReport report = lpm::spatial_balance(s, r, dist, rng);
        if (args.format == "csv") {
            std::ostringstream os;
            os << "balance,n,mc_points\n"
               << lpm::format_double(report.balance) << ',' << report.cell_masses.size() << ','
               << report.mc_points << '\n';
            args.out.write(os.str());
        } else {
            json j{{"schema_version", kSchemaVersion},
                   {"balance", report.balance},
                   {"cell_masses", report.cell_masses},
                   {"mc_points", report.mc_points}};
            args.out.write(j.dump(2) + "\n");
        }
        return 0;
    }

    // Simulation mode: per replicate draw a U(0,1)^q population, sample it
    // with the requested method, and measure balance against the cloud.
    const auto uniform =
        lpm::DistributionSpec::uniform(std::vector<double>(args.dim, 0.0),
                                       std::vector<double>(args.dim, 1.0));
    std::vector<double> balances(args.replicates);
    for (std::size_t r = 0; r < args.replicates; ++r) {
        lpm::RngStream rng(lpm::derive_seed(args.seed, r));
        if (args.simulate == "iid") {
            const auto sample = lpm::discretize(uniform, args.n, rng);
            const auto cloud = lpm::discretize(uniform, args.cloud, rng);
            balances[r] =
                lpm::spatial_balance(sample.coords, cloud.coords, dist, rng).balance;
        } else if (args.simulate == "lpm1" || args.simulate == "lpm2") {
            const auto cloud = lpm::discretize(uniform, args.cloud, rng);
            std::vector<double> probs(args.cloud,
                                      static_cast<double>(args.n) /
                                          static_cast<double>(args.cloud));
            const lpm::SampleResult sel =
                args.simulate == "lpm1" ? lpm::lpm1(probs, cloud.coords, dist, rng)
                                        : lpm::lpm2(probs, cloud.coords, dist, rng);
            lpm::Matrix s(sel.selected.size(), args.dim);
            for (std::size_t k = 0; k < sel.selected.size(); ++k)
                for (std::size_t j = 0; j < args.dim; ++j)
                    s(k, j) = cloud.coords(sel.selected[k], j);
            balances[r] = lpm::spatial_balance(s, cloud.coords, dist, rng).balance;
        } else {
            throw std::invalid_argument("balance: unknown --simulate method " + args.simulate);
        }
    }
    const lpm::MeanSd stats = lpm::mean_sd(balances);
    if (args.format == "csv") {
        std::ostringstream os;
        os << "method,n,N,replicates,mean_balance,sd_balance\n"
           << args.simulate << ',' << args.n << ',' << args.cloud << ',' << args.replicates
           << ',' << lpm::format_double(stats.mean) << ',' << lpm::format_double(stats.sd)
           << '\n';
        args.out.write(os.str());
    } else {
        json j{{"schema_version", kSchemaVersion}, {"method", args.simulate},
               {"n", args.n},       {"N", args.cloud},
               {"q", args.dim},     {"replicates", args.replicates},
               {"mean_balance", stats.mean}, {"sd_balance", stats.sd}};
        args.out.write(j.dump(2) + "\n");
    }
    return 0;
}

// --- discretize ----------------------------------------------------------------

struct DiscretizeArgs {
    std::string dist = "uniform";
    std::size_t dim = 1;
    std::size_t count = 10000;
    std::vector<double> lo, hi, mean, sd;
    std::vector<double> proposal_mean, proposal_sd;
    std::uint64_t seed = 1;
    OutputTarget out;
};

int cmd_discretize(const DiscretizeArgs& args) {
    const auto fill = [&](std::vector<double> v, double def) {
        if (v.empty()) v.assign(args.dim, def);
        if (v.size() == 1 && args.dim > 1) v.assign(args.dim, v[0]);
        if (v.size() != args.dim)
            throw std::invalid_argument("discretize: parameter length != --dim");
        return v;
    };

    lpm::DistributionSpec target;
    if (args.dist == "uniform") {
        target = lpm::DistributionSpec::uniform(fill(args.lo, 0.0), fill(args.hi, 1.0));
    } else if (args.dist == "normal") {
        target = lpm::DistributionSpec::normal(fill(args.mean, 0.0), fill(args.sd, 1.0));
    } else {
        throw std::invalid_argument("discretize: unknown --dist " + args.dist);
    }

    lpm::RngStream rng(args.seed);
    lpm::DiscretizedPopulation pop;
    if (!args.proposal_mean.empty() || !args.proposal_sd.empty()) {
        const auto proposal = lpm::DistributionSpec::normal(fill(args.proposal_mean, 0.0),
                                                            fill(args.proposal_sd, 1.0));
        pop = lpm::discretize_is({target, proposal}, args.count, rng);
    } else {
        pop = lpm::discretize(target, args.count, rng);
    }

    std::ostringstream os;
    lpm::CsvTable table = lpm::to_csv(pop);
    std::stringstream buffer;
    lpm::write_csv(buffer, table);
    args.out.write(buffer.str());
    return 0;
}

// --- demo ----------------------------------------------------------------

struct DemoArgs {
    std::string experiment;
    std::string method;  // empty: every method of the experiment
    std::size_t n = 0;   // 0: experiment default(s)
    std::size_t cloud = 10000;
    std::size_t m = 0;   // 0: experiment default
    std::size_t n_prime = 10;
    bool sweep = false;
    // option parameters
    double spot = 100.0, strike = 120.0, rate = 0.03, sigma = 0.5, maturity = 0.25;
    // rainforest parameters
    std::vector<double> x_crit;
    double growth = 1.0, death = 0.5, eps = 1e-2, t_max = 1e3;
    std::string format = "json";
    std::uint64_t seed = 1;
    OutputTarget out;
};

int cmd_demo(const DemoArgs& args) {
    std::vector<lpm::ExperimentReport> reports;
    bool with_param = false;

    const auto methods_or = [&](std::vector<std::string> defaults) {
        return args.method.empty() ? defaults : std::vector<std::string>{args.method};
    };
    const auto sizes_or = [&](std::vector<std::size_t> defaults) {
        return args.n == 0 ? defaults : std::vector<std::size_t>{args.n};
    };

    lpm::ExperimentConfig cfg;
    cfg.cloud_size = args.cloud;
    cfg.seed = args.seed;
    cfg.n_prime = args.n_prime;

    if (args.experiment == "integral") {
        cfg.replicates = args.m ? args.m : 10000;
        if (args.sweep) {
            cfg.method = args.method.empty() ? "lpm2" : args.method;
            cfg.replicates = args.m ? args.m : 1000;
            for (std::size_t n : sizes_or({100})) {
                cfg.n = n;
                for (std::size_t factor : {1, 2, 5, 10, 20, 50, 100}) {
                    cfg.cloud_size = n * factor;
                    reports.push_back(lpm::run_integral_experiment(cfg));
                }
            }
        } else {
            for (std::size_t n : sizes_or({100, 1000})) {
                cfg.n = n;
                cfg.cloud_size = args.cloud;
                for (const auto& method : methods_or({"iid", "lpm2", "stratified"})) {
                    cfg.method = method;
                    reports.push_back(lpm::run_integral_experiment(cfg));
                }
            }
        }
    } else if (args.experiment == "option") {
        lpm::OptionParams params{args.spot, args.strike, args.rate, args.sigma, args.maturity};
        cfg.replicates = args.m ? args.m : 10000;
        if (args.sweep) {
            cfg.method = args.method.empty() ? "lpm2" : args.method;
            cfg.replicates = args.m ? args.m : 1000;
            for (std::size_t n : sizes_or({100})) {
                cfg.n = n;
                for (std::size_t factor : {1, 2, 5, 10, 20, 50, 100}) {
                    cfg.cloud_size = n * factor;
                    reports.push_back(lpm::run_option_experiment(cfg, params));
                }
            }
        } else {
            for (std::size_t n : sizes_or({100, 1000})) {
                cfg.n = n;
                for (const auto& method : methods_or({"iid", "lpm2"})) {
                    cfg.method = method;
                    reports.push_back(lpm::run_option_experiment(cfg, params));
                }
            }
        }
    } else if (args.experiment == "rare-event") {
        cfg.replicates = args.m ? args.m : 10000;
        for (std::size_t n : sizes_or({100, 1000, 10000})) {
            cfg.n = n;
            for (const auto& method : methods_or({"iid", "lpm2", "is", "is+lpm2"})) {
                // LPM thinning needs n < N; mirror the table's dashes.
                if ((method == "lpm2" || method == "is+lpm2") && n >= cfg.cloud_size) continue;
                cfg.method = method;
                reports.push_back(lpm::run_rare_event_experiment(cfg));
            }
        }
    } else if (args.experiment == "rainforest") {
        with_param = true;
        cfg.n = args.n ? args.n : 50;
        cfg.replicates = args.m ? args.m : 200;
        lpm::RainforestParams base;
        base.growth_rate = args.growth;
        base.death_rate = args.death;
        base.epsilon = args.eps;
        base.t_max = args.t_max;
        std::vector<double> grid = args.x_crit;
        if (grid.empty())
            for (int k = 0; k <= 10; ++k) grid.push_back(0.05 * k);
        for (const auto& method : methods_or({"iid", "lpm2"})) {
            cfg.method = method;
            auto rows = lpm::run_rainforest_experiment(cfg, base, grid);
            reports.insert(reports.end(), rows.begin(), rows.end());
        }
    } else {
        throw std::invalid_argument("demo: unknown experiment " + args.experiment);
    }

    if (args.format == "csv") {
        args.out.write(reports_to_csv(reports, with_param));
    } else {
        json j{{"schema_version", kSchemaVersion}, {"experiment", args.experiment}};
        json rows = json::array();
        for (const auto& r : reports) rows.push_back(report_to_json(r));
        j["reports"] = rows;
        args.out.write(j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Well-spread sampling and variance-reduction toolkit"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Draw an LPM sample from a population CSV");
    sample->add_option("--input", sample_args.input, "population CSV")->required();
    auto* n_opt = sample->add_option("--n", sample_args.n, "target sample size (pi = n/N)");
    sample->add_option("--prob-col", sample_args.prob_col, "inclusion-probability column");
    sample->add_option("--method", sample_args.method, "lpm1 | lpm2")
        ->check(CLI::IsMember({"lpm1", "lpm2"}));
    sample->add_option("--distance", sample_args.distance, "euclidean | cityblock | chebyshev");
    sample->add_option("--rows", sample_args.rows_path, "also write the sampled rows here");
    sample->add_option("--seed", sample_args.seed, "random seed");
    sample->add_option("--output", sample_args.out.path, "output path or - for stdout");

    EstimateArgs est_args;
    auto* estimate = app.add_subcommand("estimate", "Horvitz-Thompson estimate from a sample CSV");
    estimate->add_option("--input", est_args.input, "sample CSV")->required();
    estimate->add_option("--y-col", est_args.y_col, "trait column (default y)");
    estimate->add_option("--pi-col", est_args.pi_col, "probability column (default pi)");
    estimate->add_option("--weight-col", est_args.weight_col, "IS weight column");
    estimate->add_option("--nprime", est_args.n_prime, "local-mean variance neighborhood");
    estimate->add_option("--N", est_args.population, "population size (default: sum 1/pi)");
    estimate->add_option("--distance", est_args.distance, "distance for the variance");
    estimate->add_option("--format", est_args.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    estimate->add_option("--output", est_args.out.path, "output path or -");

    BalanceArgs bal_args;
    auto* balance = app.add_subcommand("balance", "Spatial-balance diagnostic");
    balance->add_option("--sample", bal_args.sample_path, "sample CSV");
    balance->add_option("--reference", bal_args.reference_path, "reference cloud CSV");
    balance->add_option("--simulate", bal_args.simulate, "iid | lpm1 | lpm2 simulation mode");
    balance->add_option("--n", bal_args.n, "simulated sample size");
    balance->add_option("--N", bal_args.cloud, "simulated cloud size");
    balance->add_option("--q", bal_args.dim, "simulated dimension");
    balance->add_option("--replicates", bal_args.replicates, "simulation replicates");
    balance->add_option("--distance", bal_args.distance, "distance function");
    balance->add_option("--format", bal_args.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    balance->add_option("--seed", bal_args.seed, "random seed");
    balance->add_option("--output", bal_args.out.path, "output path or -");

    DiscretizeArgs disc_args;
    auto* discretize = app.add_subcommand("discretize", "Generate an iid cloud CSV");
    discretize->add_option("--dist", disc_args.dist, "uniform | normal");
    discretize->add_option("--dim", disc_args.dim, "dimension q");
    discretize->add_option("--N", disc_args.count, "number of points");
    discretize->add_option("--lo", disc_args.lo, "uniform lower bounds");
    discretize->add_option("--hi", disc_args.hi, "uniform upper bounds");
    discretize->add_option("--mean", disc_args.mean, "normal means");
    discretize->add_option("--sd", disc_args.sd, "normal sds");
    discretize->add_option("--proposal-mean", disc_args.proposal_mean,
                           "normal IS proposal means (enables weights)");
    discretize->add_option("--proposal-sd", disc_args.proposal_sd, "normal IS proposal sds");
    discretize->add_option("--seed", disc_args.seed, "random seed");
    discretize->add_option("--output", disc_args.out.path, "output path or -");

    DemoArgs demo_args;
    auto* demo = app.add_subcommand("demo", "Run a built-in experiment");
    demo->add_option("--experiment", demo_args.experiment,
                     "integral | option | rare-event | rainforest")
        ->required();
    demo->add_option("--method", demo_args.method, "restrict to one method");
    demo->add_option("--n", demo_args.n, "sample size (default: table settings)");
    demo->add_option("--N", demo_args.cloud, "discretization size");
    demo->add_option("--m", demo_args.m, "replicates");
    demo->add_option("--nprime", demo_args.n_prime, "variance neighborhood size");
    demo->add_flag("--sweep", demo_args.sweep, "sweep N for fixed n (integral/option)");
    demo->add_option("--spot", demo_args.spot, "option spot");
    demo->add_option("--strike", demo_args.strike, "option strike");
    demo->add_option("--rate", demo_args.rate, "option rate");
    demo->add_option("--sigma", demo_args.sigma, "option volatility");
    demo->add_option("--maturity", demo_args.maturity, "option maturity");
    demo->add_option("--xcrit", demo_args.x_crit, "rainforest x_crit grid");
    demo->add_option("--R", demo_args.growth, "rainforest growth rate");
    demo->add_option("--M", demo_args.death, "rainforest death rate");
    demo->add_option("--eps", demo_args.eps, "attractor neighborhood radius");
    demo->add_option("--tmax", demo_args.t_max, "integration time cap");
    demo->add_option("--format", demo_args.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    demo->add_option("--seed", demo_args.seed, "random seed");
    demo->add_option("--output", demo_args.out.path, "output path or -");

    try {
        app.parse(argc, argv);
        sample_args.n_given = n_opt->count() > 0;
        if (sample->parsed()) return cmd_sample(sample_args);
        if (estimate->parsed()) return cmd_estimate(est_args);
        if (balance->parsed()) return cmd_balance(bal_args);
        if (discretize->parsed()) return cmd_discretize(disc_args);
        if (demo->parsed()) return cmd_demo(demo_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

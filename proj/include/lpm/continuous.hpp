#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpm/csv.hpp"
#include "lpm/matrix.hpp"
#include "lpm/rng.hpp"

namespace lpm {

// Description of a continuous target or proposal distribution. Built-ins
// are product distributions (independent per dimension); a custom spec maps
// a block of q uniforms to a point and may carry its own log-density.
struct DistributionSpec {
    enum class Kind { Uniform, Normal, Custom };

    using Transform = std::function<void(std::span<const double>, std::span<double>)>;
    using LogDensity = std::function<double(std::span<const double>)>;

    Kind kind = Kind::Uniform;
    std::vector<double> lo, hi;      // uniform bounds per dimension
    std::vector<double> mean, sd;    // normal parameters per dimension
    std::size_t custom_dim = 0;
    Transform transform;             // custom only
    LogDensity custom_log_density;   // custom only, optional

    static DistributionSpec uniform(std::vector<double> lo, std::vector<double> hi);
    static DistributionSpec normal(std::vector<double> mean, std::vector<double> sd);
    static DistributionSpec custom(std::size_t dim, Transform transform,
                                   LogDensity log_density = nullptr);

    std::size_t dim() const;
    // Throws std::invalid_argument on malformed parameters (sd <= 0,
    // lo >= hi, mismatched lengths, missing transform).
    void validate() const;
    // Log density at x; throws std::logic_error for a custom spec without
    // one. Returns -inf outside a uniform's support.
    double log_density(std::span<const double> x) const;
    bool has_log_density() const;
};

// Importance-sampling pair: proper target density f, sampleable proposal g.
// The caller is responsible for g dominating f wherever the integrand is
// nonzero; a zero proposal density at a drawn point surfaces as a
// non-finite weight error.
struct ISSpec {
    DistributionSpec target;
    DistributionSpec proposal;
};

// Provenance of a generated cloud, enough to regenerate it exactly.
struct SeedRecord {
    std::uint64_t seed = 0;
    // Normal draws are the inverse CDF applied to one uniform each; part of
    // the reproducibility contract.
    std::string normal_transform = "inverse-cdf";
};

// N iid points ready for LPM thinning. Weights are all 1 for a plain
// discretization and the density ratio f/g under importance sampling.
struct DiscretizedPopulation {
    Matrix coords;
    std::vector<double> weights;
    SeedRecord seed;
};

// Draws N iid points from dist. Draw order: points in order, dimensions in
// order within a point, one uniform per dimension (custom specs consume
// their q uniforms per point the same way).
DiscretizedPopulation discretize(const DistributionSpec& dist, std::size_t count, RngStream& rng);

// Draws N iid points from the proposal and attaches weights f/g. Throws
// std::domain_error if any weight comes out non-finite.
DiscretizedPopulation discretize_is(const ISSpec& spec, std::size_t count, RngStream& rng);

struct StandardizeResult {
    Matrix coords;
    // Columns left unscaled because their sample variance is zero.
    std::vector<std::size_t> constant_columns;
};

// Rescales each column to unit sample standard deviation about its mean
// (the mean itself is preserved). Requires at least two rows.
StandardizeResult standardize(const Matrix& coords);

// CSV layout: coordinate columns x0..x{q-1}, then the weight column.
CsvTable to_csv(const DiscretizedPopulation& pop);
DiscretizedPopulation population_from_csv(const CsvTable& table);

}  // namespace lpm

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpm/distance.hpp"
#include "lpm/matrix.hpp"
#include "lpm/rng.hpp"

namespace lpm {

struct EstimateReport {
    double point = 0.0;
    std::optional<double> variance;
    std::size_t n = 0;        // sample size
    std::size_t n_prime = 0;  // neighborhood size used for the variance, 0 if none
    std::string method;
};

// Horvitz-Thompson estimate of the population mean:
//   point = (1/population_size) * sum_i w_i * y_i / pi_i
// with w_i = 1 when no importance weights are supplied.
//
// Throws std::invalid_argument on length mismatch and std::domain_error on
// a non-positive inclusion probability.
EstimateReport ht_estimate(std::span<const double> values, std::span<const double> probs,
                           std::size_t population_size,
                           std::span<const double> weights = {});

// Local mean variance estimator:
//   V = n'/(n^2 (n'-1)) * sum_x (y(x) - mean over S_x)^2
// where S_x holds x and its n'-1 nearest sampled neighbors. Neighbor ties
// at equal distance resolve to the lowest index, so the estimate is
// deterministic. With n' = n this reduces to the classical iid variance of
// the sample mean. Requires 2 <= n' <= n.
double local_mean_variance(std::span<const double> values, const Matrix& sampled_coords,
                           const DistanceSpec& dist, std::size_t n_prime);

struct BalanceReport {
    double balance = 0.0;
    std::vector<double> cell_masses;  // a_i, one per sample point
    std::size_t mc_points = 0;        // reference points used
};

// Spatial-balance diagnostic: every reference point is assigned to its
// nearest sample point (equidistant assignments randomized via rng); the
// cell mass is a_i = n * count_i / M and balance = (1/n) sum (a_i - 1)^2.
// Monte Carlo cell masses generalize Voronoi areas to any dimension.
BalanceReport spatial_balance(const Matrix& sampled_coords, const Matrix& reference_cloud,
                              const DistanceSpec& dist, RngStream& rng);

}  // namespace lpm

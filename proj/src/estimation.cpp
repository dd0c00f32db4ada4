#include "lpm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpm/neighbor_index.hpp"

namespace lpm {

EstimateReport ht_estimate(std::span<const double> values, std::span<const double> probs,
                           std::size_t population_size, std::span<const double> weights) {
    if (values.size() != probs.size())
        throw std::invalid_argument("ht_estimate: values/probs length mismatch");
    if (!weights.empty() && weights.size() != values.size())
        throw std::invalid_argument("ht_estimate: weights length mismatch");
    if (population_size == 0) throw std::invalid_argument("ht_estimate: empty population");

    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(probs[i] > 0.0))
            throw std::domain_error("ht_estimate: inclusion probability must be positive");
        const double w = weights.empty() ? 1.0 : weights[i];
        sum += w * values[i] / probs[i];
    }

    EstimateReport report;
    report.point = sum / static_cast<double>(population_size);
    report.n = values.size();
    report.method = weights.empty() ? "ht" : "ht+is";
    return report;
}

double local_mean_variance(std::span<const double> values, const Matrix& sampled_coords,
                           const DistanceSpec& dist, std::size_t n_prime) {
    const std::size_t n = values.size();
    if (sampled_coords.rows() != n)
        throw std::invalid_argument("local_mean_variance: values/coords length mismatch");
    if (n_prime < 2 || n_prime > n)
        throw std::invalid_argument("local_mean_variance: requires 2 <= n' <= n");

    std::vector<std::pair<double, std::size_t>> order(n);
    double accum = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < n; ++j)
            order[j] = {dist(sampled_coords.row(x), sampled_coords.row(j)), j};
        order[x].first = -1.0;  // x always belongs to its own neighborhood
        // (distance, index) ordering makes equal-distance ties resolve to
        // the lowest index.
        std::partial_sort(order.begin(), order.begin() + n_prime, order.end());
        double local_sum = 0.0;
        for (std::size_t k = 0; k < n_prime; ++k) local_sum += values[order[k].second];
        const double dev = values[x] - local_sum / static_cast<double>(n_prime);
        accum += dev * dev;
    }

    const double np = static_cast<double>(n_prime);
    const double nn = static_cast<double>(n);
    return np / (nn * nn * (np - 1.0)) * accum;
}

BalanceReport spatial_balance(const Matrix& sampled_coords, const Matrix& reference_cloud,
                              const DistanceSpec& dist, RngStream& rng) {
    const std::size_t n = sampled_coords.rows();
    const std::size_t m = reference_cloud.rows();
    if (n == 0 || m == 0) throw std::invalid_argument("spatial_balance: empty inputs");
    if (sampled_coords.cols() != reference_cloud.cols())
        throw std::invalid_argument("spatial_balance: dimension mismatch");

    NeighborIndex index(sampled_coords, dist);
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t r = 0; r < m; ++r)
        ++counts[index.nearest_to_point(reference_cloud.row(r), rng)];

    BalanceReport report;
    report.mc_points = m;
    report.cell_masses.resize(n);
    double accum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = static_cast<double>(n) * static_cast<double>(counts[i]) /
                         static_cast<double>(m);
        report.cell_masses[i] = a;
        accum += (a - 1.0) * (a - 1.0);
    }
    report.balance = accum / static_cast<double>(n);
    return report;
}

}  // namespace lpm

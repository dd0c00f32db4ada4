#pragma once

#include <cstddef>
#include <span>

namespace lpm {

// Standard normal density.
double normal_pdf(double x);

// Standard normal CDF, computed from erfc.
double normal_cdf(double x);

// Inverse standard normal CDF (Wichura's AS 241, double precision).
// Accurate to ~1e-15 over (0,1); returns +/-inf at the endpoints.
double normal_quantile(double p);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample sd, n-1 denominator; 0 when n < 2
    std::size_t n = 0;
};

MeanSd mean_sd(std::span<const double> xs);

}  // namespace lpm

#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "lpm/matrix.hpp"

namespace lpm {

// Distance between rows of the population matrix. The three built-in
// metrics admit axis-wise lower bounds, so the k-d index can prune on them;
// a custom metric forces the index into linear-scan mode.
struct DistanceSpec {
    enum class Kind { Euclidean, Cityblock, Chebyshev, Custom };

    // Custom metric: distance between row a and row b.
    using Fn = std::function<double(std::span<const double>, std::span<const double>)>;

    Kind kind = Kind::Euclidean;
    Fn custom;

    static DistanceSpec euclidean() { return {Kind::Euclidean, nullptr}; }
    static DistanceSpec cityblock() { return {Kind::Cityblock, nullptr}; }
    static DistanceSpec chebyshev() { return {Kind::Chebyshev, nullptr}; }
    static DistanceSpec custom_fn(Fn fn) { return {Kind::Custom, std::move(fn)}; }

    static DistanceSpec parse(const std::string& name) {
        if (name == "euclidean") return euclidean();
        if (name == "cityblock") return cityblock();
        if (name == "chebyshev") return chebyshev();
        throw std::invalid_argument("unknown distance: " + name);
    }

    bool prunable() const { return kind != Kind::Custom; }

    // Comparable distance value between two coordinate vectors. Euclidean
    // reports the squared distance; ordering and exact ties are preserved
    // and the square root is never needed.
    double operator()(std::span<const double> a, std::span<const double> b) const {
        switch (kind) {
            case Kind::Euclidean: {
                double s = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    const double d = a[k] - b[k];
                    s += d * d;
                }
                return s;
            }
            case Kind::Cityblock: {
                double s = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
                return s;
            }
            case Kind::Chebyshev: {
                double s = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::fabs(a[k] - b[k]));
                return s;
            }
            case Kind::Custom:
                return custom(a, b);
        }
        std::abort();
    }

    // Lower bound on the comparable value from a single-axis offset; only
    // meaningful for the prunable metrics.
    double axis_bound(double delta) const {
        const double d = std::fabs(delta);
        return kind == Kind::Euclidean ? d * d : d;
    }
};

}  // namespace lpm

#pragma once

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpm/distance.hpp"
#include "lpm/matrix.hpp"

namespace lpm::oracle {

// Exact rational arithmetic keeps branch probabilities free of round-off,
// so unbiasedness checks are exact rather than statistical.
using Rational = boost::multiprecision::cpp_rational;

enum class Variant { Lpm1, Lpm2 };

// Exact distribution of the LPM sampler on a tiny population, obtained by
// expanding every source of randomness: the uniform unit draw, the uniform
// tie-break among equidistant nearest neighbors, the two-way branch of the
// probability update, and the final Bernoulli on leftover fractional mass.
//
// For Lpm1 the accepted-pair distribution is computed in closed form: the
// redraw loop resamples until the mutual-nearest condition holds, which
// conditions the proposal distribution on the mutual pairs; enumerating
// that conditional avoids unbounded rejection paths.
struct OracleResult {
    std::vector<Rational> first_order;               // P(i in S)
    std::vector<std::vector<Rational>> second_order; // P(i in S and j in S)
    std::map<std::vector<int>, Rational> sample_distribution;
    Rational total_probability;                      // always exactly 1
};

// Walks the full randomness tree. Populations above the hard cap N = 8 are
// rejected (the tree grows too fast to be useful beyond that).
OracleResult enumerate_lpm(const std::vector<Rational>& probs, const Matrix& coords,
                           const DistanceSpec& dist, Variant variant);

// Convenience for probabilities given as numerator/denominator pairs.
Rational ratio(long long num, long long den);

// Test-support dump (sample sets with exact probabilities as strings plus
// double approximations).
std::string to_json_string(const OracleResult& result);

}  // namespace lpm::oracle

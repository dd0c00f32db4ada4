#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lpm/distance.hpp"
#include "lpm/matrix.hpp"
#include "lpm/rng.hpp"

namespace lpm {

// A probability within this distance of 0 or 1 counts as decided and is
// snapped exactly, so floating-point drift cannot stall the sampler.
inline constexpr double kDecidedTol = 1e-9;

// Outcome of one sampling run. final_probs holds the fully updated
// probabilities (every entry exactly 0 or 1); selected lists the indices
// with probability 1 in increasing order; steps counts pivotal updates.
struct SampleResult {
    std::vector<std::size_t> selected;
    std::vector<double> final_probs;
    std::size_t steps = 0;
};

// Two-unit probability update. The pair (pi_i, pi_j) moves to
//
//   sum < 1:   (0, sum)  with probability pi_j / sum,      else (sum, 0)
//   sum >= 1:  (1, sum-1) with probability (1-pi_j)/(2-sum), else (sum-1, 1)
//
// decided by comparing the uniform draw u against the first branch
// probability (u below it selects the first branch). The pair sum is
// conserved and at least one output is exactly 0 or 1.
//
// Throws std::domain_error if an input lies outside [0,1] or is already
// decided (exactly 0 or 1).
std::pair<double, double> pivotal_update(double pi_i, double pi_j, double u);

// Local pivotal method, variant 2: repeatedly draw an undecided unit
// uniformly at random, pair it with its nearest undecided neighbor, and
// apply pivotal_update, until every unit is decided.
//
// Per-step draw order on rng: unit position, tie-break (only when the
// nearest neighbor is tied), branch uniform. If a single undecided unit
// remains, it is resolved by one Bernoulli draw on its leftover mass
// (relevant only when the probabilities do not sum to an integer).
SampleResult lpm2(std::span<const double> probs, const Matrix& coords, const DistanceSpec& dist,
                  RngStream& rng);

// Variant 1: the drawn pair (i, j) is updated only when j also has i as a
// nearest neighbor (equal-distance ties qualify); otherwise i is redrawn.
// After 10*N consecutive rejected proposals the sampler falls back to the
// globally closest undecided pair, which is always mutual.
SampleResult lpm1(std::span<const double> probs, const Matrix& coords, const DistanceSpec& dist,
                  RngStream& rng);

// Throws std::domain_error when an entry is outside [0,1].
void validate_probabilities(std::span<const double> probs);

// Expected sample size n = sum of inclusion probabilities.
double expected_sample_size(std::span<const double> probs);

}  // namespace lpm

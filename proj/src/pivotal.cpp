#include "lpm/pivotal.hpp"

#include <limits>
#include <stdexcept>

#include "lpm/neighbor_index.hpp"

namespace lpm {

void validate_probabilities(std::span<const double> probs) {
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("inclusion probability outside [0,1]");
}

double expected_sample_size(std::span<const double> probs) {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

std::pair<double, double> pivotal_update(double pi_i, double pi_j, double u) {
    if (!(pi_i >= 0.0 && pi_i <= 1.0) || !(pi_j >= 0.0 && pi_j <= 1.0))
        throw std::domain_error("pivotal_update: probability outside [0,1]");
    if (pi_i == 0.0 || pi_i == 1.0 || pi_j == 0.0 || pi_j == 1.0)
        throw std::domain_error("pivotal_update: inputs must be strictly undecided");

    const double sum = pi_i + pi_j;
    if (sum < 1.0) {
        const double first = pi_j / sum;
        return (u < first) ? std::pair{0.0, sum} : std::pair{sum, 0.0};
    }
    // sum in [1,2): sum-1 is exact, so the pair sum is conserved exactly.
    const double first = (1.0 - pi_j) / (2.0 - sum);
    return (u < first) ? std::pair{1.0, sum - 1.0} : std::pair{sum - 1.0, 1.0};
}

namespace {

enum class Variant { Lpm1, Lpm2 };

// Snaps p to 0 or 1 when within kDecidedTol; returns true when decided.
bool snap(double& p) {
    if (p <= kDecidedTol) {
        p = 0.0;
        return true;
    }
    if (p >= 1.0 - kDecidedTol) {
        p = 1.0;
        return true;
    }
    return false;
}

class Sampler {
public:
    Sampler(std::span<const double> probs, const Matrix& coords, const DistanceSpec& dist,
            RngStream& rng)
        : probs_(validated(probs, coords)), index_(coords, dist), dist_(dist), coords_(coords),
          rng_(rng) {
        const std::size_t n = probs_.size();
        slot_.assign(n, -1);
        for (std::size_t i = 0; i < n; ++i) {
            if (snap(probs_[i])) {
                index_.deactivate(i);
            } else {
                slot_[i] = static_cast<std::ptrdiff_t>(undecided_.size());
                undecided_.push_back(i);
            }
        }
    }

    SampleResult run(Variant variant) {
        while (undecided_.size() >= 2) {
            const auto [i, j] = propose(variant);
            const double u = rng_.next_double();
            auto [pi, pj] = pivotal_update(probs_[i], probs_[j], u);
            probs_[i] = pi;
            probs_[j] = pj;
            ++steps_;
            settle(i);
            settle(j);
        }
        if (undecided_.size() == 1) {
            // Leftover fractional mass: one Bernoulli draw.
            const std::size_t i = undecided_[0];
            probs_[i] = (rng_.next_double() < probs_[i]) ? 1.0 : 0.0;
            retire(i);
        }

        SampleResult out;
        out.final_probs = std::move(probs_);
        out.steps = steps_;
        for (std::size_t i = 0; i < out.final_probs.size(); ++i)
            if (out.final_probs[i] == 1.0) out.selected.push_back(i);
        return out;
    }

private:
    static std::vector<double> validated(std::span<const double> probs, const Matrix& coords) {
        if (probs.size() != coords.rows())
            throw std::invalid_argument("lpm: probability/coordinate dimension mismatch");
        if (coords.rows() == 0) throw std::invalid_argument("lpm: empty population");
        validate_probabilities(probs);
        return {probs.begin(), probs.end()};
    }

    std::pair<std::size_t, std::size_t> propose(Variant variant) {
        const std::size_t cap = 10 * probs_.size();
        for (std::size_t attempt = 0; attempt < cap; ++attempt) {
            const std::size_t i = undecided_[rng_.next_index(undecided_.size())];
            const std::size_t j = index_.nearest(i, rng_);
            if (variant == Variant::Lpm2) return {i, j};
            // Mutual-nearest check: i qualifies when it ties j's minimum.
            if (dist_(coords_.row(j), coords_.row(i)) == index_.nearest_distance(j))
                return {i, j};
        }
        return closest_pair();
    }

    // Deterministic fallback: the globally closest undecided pair is always
    // mutual. Reached only with astronomically unlucky draws; kept so a
    // pathological stream cannot spin forever.
    std::pair<std::size_t, std::size_t> closest_pair() {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = undecided_[0];
        for (std::size_t i : undecided_) {
            const double d = index_.nearest_distance(i);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        return {best_i, index_.nearest(best_i, rng_)};
    }

    void settle(std::size_t i) {
        if (snap(probs_[i])) retire(i);
    }

    void retire(std::size_t i) {
        index_.deactivate(i);
        const std::ptrdiff_t pos = slot_[i];
        const std::size_t last = undecided_.back();
        undecided_[pos] = last;
        slot_[last] = pos;
        undecided_.pop_back();
        slot_[i] = -1;
    }

    std::vector<double> probs_;
    NeighborIndex index_;
    const DistanceSpec& dist_;
    const Matrix& coords_;
    RngStream& rng_;
    std::vector<std::size_t> undecided_;
    std::vector<std::ptrdiff_t> slot_;
    std::size_t steps_ = 0;
};

}  // namespace

SampleResult lpm2(std::span<const double> probs, const Matrix& coords, const DistanceSpec& dist,
                  RngStream& rng) {
    return Sampler(probs, coords, dist, rng).run(Variant::Lpm2);
}

SampleResult lpm1(std::span<const double> probs, const Matrix& coords, const DistanceSpec& dist,
                  RngStream& rng) {
    return Sampler(probs, coords, dist, rng).run(Variant::Lpm1);
}

}  // namespace lpm

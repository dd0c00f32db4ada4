#pragma once

#include <cstdint>
#include <vector>

#include "lpm/distance.hpp"
#include "lpm/matrix.hpp"
#include "lpm/rng.hpp"

namespace lpm {

// Nearest-neighbor index over the population coordinates with per-unit
// deactivation. Units are deactivated as the sampler decides them; queries
// only ever see active units and never the query unit itself.
//
// Built-in metrics use a balanced k-d tree (median split, cycling
// dimensions) whose subtrees carry active counts, so emptied regions prune
// away as the sampler progresses. A custom metric cannot support axis
// pruning and falls back to a linear scan over active units.
//
// Exact-distance ties are collected, sorted by unit index, and resolved by
// one uniform index draw; a unique minimizer consumes no randomness. The
// tie candidate set is identical for the tree and the scan path, so both
// produce the same stream of draws.
class NeighborIndex {
public:
    NeighborIndex(const Matrix& coords, DistanceSpec dist);

    std::size_t size() const { return coords_.rows(); }
    std::size_t active_count() const { return active_count_; }
    bool active(std::size_t i) const { return active_[i] != 0; }
    void deactivate(std::size_t i);

    // Nearest active unit j != i. Throws std::logic_error when no active
    // unit other than i exists.
    std::size_t nearest(std::size_t i, RngStream& rng) const;

    // Distance value (per DistanceSpec comparison convention) from unit i
    // to its nearest active unit != i, ignoring tie randomization.
    double nearest_distance(std::size_t i) const;

    // Nearest active unit to an arbitrary query point (no self-exclusion).
    std::size_t nearest_to_point(std::span<const double> q, RngStream& rng) const;

private:
    struct Node {
        std::int32_t point = -1;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::int32_t parent = -1;
        std::int32_t active_in_subtree = 0;
        std::uint16_t dim = 0;
    };

    std::int32_t build(std::vector<std::int32_t>& perm, std::int32_t lo, std::int32_t hi,
                       std::uint16_t depth, std::int32_t parent);
    void search(std::int32_t node, std::span<const double> q, std::int32_t exclude,
                double& best, std::vector<std::int32_t>& ties) const;
    void collect(std::span<const double> q, std::int32_t exclude, double& best,
                 std::vector<std::int32_t>& ties) const;

    const Matrix& coords_;
    DistanceSpec dist_;
    std::vector<Node> nodes_;
    std::vector<std::int32_t> node_of_;  // point index -> node index
    std::vector<std::uint8_t> active_;
    std::size_t active_count_ = 0;
    bool use_tree_ = false;
    mutable std::vector<std::int32_t> tie_buf_;
};

}  // namespace lpm

#include "lpm/neighbor_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lpm {

NeighborIndex::NeighborIndex(const Matrix& coords, DistanceSpec dist)
    : coords_(coords), dist_(std::move(dist)) {
    const std::size_t n = coords_.rows();
    active_.assign(n, 1);
    active_count_ = n;
    use_tree_ = dist_.prunable() && n > 0;
    if (!use_tree_) return;

    nodes_.reserve(n);
    node_of_.assign(n, -1);
    std::vector<std::int32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::int32_t>(i);
    build(perm, 0, static_cast<std::int32_t>(n), 0, -1);
}

std::int32_t NeighborIndex::build(std::vector<std::int32_t>& perm, std::int32_t lo,
                                  std::int32_t hi, std::uint16_t depth, std::int32_t parent) {
    if (lo >= hi) return -1;
    const std::uint16_t dim = static_cast<std::uint16_t>(depth % coords_.cols());
    const std::int32_t mid = lo + (hi - lo) / 2;
    std::nth_element(perm.begin() + lo, perm.begin() + mid, perm.begin() + hi,
                     [&](std::int32_t a, std::int32_t b) {
                         return coords_(a, dim) < coords_(b, dim);
                     });

    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].point = perm[mid];
    nodes_[id].dim = dim;
    nodes_[id].parent = parent;
    nodes_[id].active_in_subtree = hi - lo;
    node_of_[perm[mid]] = id;

    const std::int32_t left = build(perm, lo, mid, depth + 1, id);
    const std::int32_t right = build(perm, mid + 1, hi, depth + 1, id);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void NeighborIndex::deactivate(std::size_t i) {
    if (!active_[i]) return;
    active_[i] = 0;
    --active_count_;
    if (!use_tree_) return;
    for (std::int32_t id = node_of_[i]; id != -1; id = nodes_[id].parent)
        --nodes_[id].active_in_subtree;
}

void NeighborIndex::search(std::int32_t id, std::span<const double> q, std::int32_t exclude,
                           double& best, std::vector<std::int32_t>& ties) const {
    const Node& node = nodes_[id];
    if (node.active_in_subtree == 0) return;

    const std::int32_t p = node.point;
    if (active_[p] && p != exclude) {
        const double d = dist_(q, coords_.row(p));
        if (d < best) {
            best = d;
            ties.clear();
            ties.push_back(p);
        } else if (d == best) {
            ties.push_back(p);
        }
    }

    const double delta = q[node.dim] - coords_(p, node.dim);
    const std::int32_t near_side = delta < 0.0 ? node.left : node.right;
    const std::int32_t far_side = delta < 0.0 ? node.right : node.left;
    if (near_side != -1) search(near_side, q, exclude, best, ties);
    // <= rather than < so exact ties across the splitting plane are found.
    if (far_side != -1 && dist_.axis_bound(delta) <= best)
        search(far_side, q, exclude, best, ties);
}

void NeighborIndex::collect(std::span<const double> q, std::int32_t exclude, double& best,
                            std::vector<std::int32_t>& ties) const {
    best = std::numeric_limits<double>::infinity();
    ties.clear();
    if (use_tree_) {
        if (!nodes_.empty()) search(0, q, exclude, best, ties);
    } else {
        for (std::size_t j = 0; j < coords_.rows(); ++j) {
            if (!active_[j] || static_cast<std::int32_t>(j) == exclude) continue;
            const double d = dist_(q, coords_.row(j));
            if (d < best) {
                best = d;
                ties.clear();
                ties.push_back(static_cast<std::int32_t>(j));
            } else if (d == best) {
                ties.push_back(static_cast<std::int32_t>(j));
            }
        }
    }
    std::sort(ties.begin(), ties.end());
}

std::size_t NeighborIndex::nearest(std::size_t i, RngStream& rng) const {
    const std::size_t others = active_count_ - (active_[i] ? 1 : 0);
    if (others < 1) throw std::logic_error("NeighborIndex::nearest: no other active unit");
    double best;
    collect(coords_.row(i), static_cast<std::int32_t>(i), best, tie_buf_);
    if (tie_buf_.size() == 1) return static_cast<std::size_t>(tie_buf_[0]);
    return static_cast<std::size_t>(tie_buf_[rng.next_index(tie_buf_.size())]);
}

double NeighborIndex::nearest_distance(std::size_t i) const {
    const std::size_t others = active_count_ - (active_[i] ? 1 : 0);
    if (others < 1) throw std::logic_error("NeighborIndex::nearest_distance: no other active unit");
    double best;
    collect(coords_.row(i), static_cast<std::int32_t>(i), best, tie_buf_);
    return best;
}

std::size_t NeighborIndex::nearest_to_point(std::span<const double> q, RngStream& rng) const {
    if (active_count_ == 0)
        throw std::logic_error("NeighborIndex::nearest_to_point: no active units");
    double best;
    collect(q, -1, best, tie_buf_);
    if (tie_buf_.size() == 1) return static_cast<std::size_t>(tie_buf_[0]);
    return static_cast<std::size_t>(tie_buf_[rng.next_index(tie_buf_.size())]);
}

}  // namespace lpm

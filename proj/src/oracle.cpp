#include "lpm/oracle.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace lpm::oracle {

Rational ratio(long long num, long long den) {
    return Rational(num, den);
}

namespace {

constexpr std::size_t kMaxUnits = 8;

struct Walker {
    const Matrix& coords;
    const DistanceSpec& dist;
    Variant variant;
    std::size_t n;
    std::map<std::vector<int>, Rational> samples;

    bool undecided(const Rational& p) const { return p > 0 && p < 1; }

    std::vector<int> undecided_units(const std::vector<Rational>& probs) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < n; ++i)
            if (undecided(probs[i])) out.push_back(static_cast<int>(i));
        return out;
    }

    // Equidistant nearest undecided neighbors of i, in index order; mirrors
    // the sampler's tie semantics (exact equality of the distance value).
    std::vector<int> nearest_ties(const std::vector<Rational>& probs, int i) const {
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> ties;
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<int>(j) == i || !undecided(probs[j])) continue;
            const double d = dist(coords.row(i), coords.row(j));
            if (d < best) {
                best = d;
                ties.assign(1, static_cast<int>(j));
            } else if (d == best) {
                ties.push_back(static_cast<int>(j));
            }
        }
        return ties;
    }

    double nearest_distance(const std::vector<Rational>& probs, int i) const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<int>(j) == i || !undecided(probs[j])) continue;
            best = std::min(best, dist(coords.row(i), coords.row(j)));
        }
        return best;
    }

    void record(const std::vector<Rational>& probs, const Rational& path) {
        std::vector<int> sample;
        for (std::size_t i = 0; i < n; ++i)
            if (probs[i] == 1) sample.push_back(static_cast<int>(i));
        samples[sample] += path;
    }

    void branch_update(std::vector<Rational> probs, int i, int j, const Rational& path) {
        const Rational pi = probs[i];
        const Rational pj = probs[j];
        const Rational sum = pi + pj;
        if (sum < 1) {
            probs[i] = 0;
            probs[j] = sum;
            walk(probs, path * (pj / sum));
            probs[i] = sum;
            probs[j] = 0;
            walk(std::move(probs), path * (pi / sum));
        } else {
            const Rational denom = 2 - sum;
            probs[i] = 1;
            probs[j] = sum - 1;
            walk(probs, path * ((1 - pj) / denom));
            probs[i] = sum - 1;
            probs[j] = 1;
            walk(std::move(probs), path * ((1 - pi) / denom));
        }
    }

    void walk(std::vector<Rational> probs, Rational path) {
        if (path == 0) return;
        const std::vector<int> live = undecided_units(probs);
        if (live.empty()) {
            record(probs, path);
            return;
        }
        if (live.size() == 1) {
            // Leftover fractional mass: Bernoulli inclusion.
            const int i = live[0];
            const Rational p = probs[i];
            probs[i] = 1;
            record(probs, path * p);
            probs[i] = 0;
            record(probs, path * (1 - p));
            return;
        }

        if (variant == Variant::Lpm2) {
            const Rational unit_p = Rational(1, static_cast<long long>(live.size()));
            for (int i : live) {
                const auto ties = nearest_ties(probs, i);
                const Rational pair_p = unit_p / static_cast<long long>(ties.size());
                for (int j : ties) branch_update(probs, i, j, path * pair_p);
            }
            return;
        }

        // Lpm1: proposal (i uniform, j uniform among ties) conditioned on
        // the mutual-nearest relation; weights renormalize over accepted
        // pairs, the closed form of the sampler's redraw loop.
        std::vector<std::pair<std::pair<int, int>, Rational>> accepted;
        Rational total = 0;
        const Rational unit_p = Rational(1, static_cast<long long>(live.size()));
        for (int i : live) {
            const auto ties = nearest_ties(probs, i);
            const Rational pair_p = unit_p / static_cast<long long>(ties.size());
            for (int j : ties) {
                if (dist(coords.row(j), coords.row(i)) == nearest_distance(probs, j)) {
                    accepted.push_back({{i, j}, pair_p});
                    total += pair_p;
                }
            }
        }
        if (accepted.empty())
            throw std::logic_error("oracle: no mutual nearest pair among undecided units");
        for (const auto& [pair, w] : accepted)
            branch_update(probs, pair.first, pair.second, path * (w / total));
    }
};

}  // namespace

OracleResult enumerate_lpm(const std::vector<Rational>& probs, const Matrix& coords,
                           const DistanceSpec& dist, Variant variant) {
    if (probs.size() != coords.rows())
        throw std::invalid_argument("oracle: probability/coordinate dimension mismatch");
    if (probs.size() > kMaxUnits)
        throw std::invalid_argument("oracle: population exceeds the N=8 enumeration cap");
    for (const auto& p : probs)
        if (p < 0 || p > 1) throw std::domain_error("oracle: probability outside [0,1]");

    Walker walker{coords, dist, variant, probs.size(), {}};
    walker.walk(probs, Rational(1));

    OracleResult out;
    const std::size_t n = probs.size();
    out.first_order.assign(n, Rational(0));
    out.second_order.assign(n, std::vector<Rational>(n, Rational(0)));
    out.total_probability = 0;
    for (const auto& [sample, p] : walker.samples) {
        out.total_probability += p;
        for (std::size_t a = 0; a < sample.size(); ++a) {
            out.first_order[sample[a]] += p;
            for (std::size_t b = 0; b < sample.size(); ++b)
                out.second_order[sample[a]][sample[b]] += p;
        }
    }
    out.sample_distribution = std::move(walker.samples);
    return out;
}

std::string to_json_string(const OracleResult& result) {
    std::ostringstream os;
    os << "{\"total_probability\":\"" << result.total_probability << "\",\"first_order\":[";
    for (std::size_t i = 0; i < result.first_order.size(); ++i) {
        if (i) os << ',';
        os << '"' << result.first_order[i] << '"';
    }
    os << "],\"samples\":[";
    bool first = true;
    for (const auto& [sample, p] : result.sample_distribution) {
        if (!first) os << ',';
        first = false;
        os << "{\"units\":[";
        for (std::size_t a = 0; a < sample.size(); ++a) {
            if (a) os << ',';
            os << sample[a];
        }
        os << "],\"probability\":\"" << p << "\",\"approx\":" << p.convert_to<double>() << '}';
    }
    os << "]}";
    return os.str();
}

}  // namespace lpm::oracle

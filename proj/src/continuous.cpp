#include "lpm/continuous.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpm {

DistributionSpec DistributionSpec::uniform(std::vector<double> lo, std::vector<double> hi) {
    DistributionSpec spec;
    spec.kind = Kind::Uniform;
    spec.lo = std::move(lo);
    spec.hi = std::move(hi);
    spec.validate();
    return spec;
}

DistributionSpec DistributionSpec::normal(std::vector<double> mean, std::vector<double> sd) {
    DistributionSpec spec;
    spec.kind = Kind::Normal;
    spec.mean = std::move(mean);
    spec.sd = std::move(sd);
    spec.validate();
    return spec;
}

DistributionSpec DistributionSpec::custom(std::size_t dim, Transform transform,
                                          LogDensity log_density) {
    DistributionSpec spec;
    spec.kind = Kind::Custom;
    spec.custom_dim = dim;
    spec.transform = std::move(transform);
    spec.custom_log_density = std::move(log_density);
    spec.validate();
    return spec;
}

std::size_t DistributionSpec::dim() const {
    switch (kind) {
        case Kind::Uniform: return lo.size();
        case Kind::Normal: return mean.size();
        case Kind::Custom: return custom_dim;
    }
    return 0;
}

void DistributionSpec::validate() const {
    switch (kind) {
        case Kind::Uniform:
            if (lo.empty() || lo.size() != hi.size())
                throw std::invalid_argument("uniform spec: bad bound lengths");
            for (std::size_t k = 0; k < lo.size(); ++k)
                if (!(lo[k] < hi[k]))
                    throw std::invalid_argument("uniform spec: requires lo < hi per dimension");
            break;
        case Kind::Normal:
            if (mean.empty() || mean.size() != sd.size())
                throw std::invalid_argument("normal spec: bad parameter lengths");
            for (double s : sd)
                if (!(s > 0.0)) throw std::invalid_argument("normal spec: requires sd > 0");
            break;
        case Kind::Custom:
            if (custom_dim == 0) throw std::invalid_argument("custom spec: dimension must be >= 1");
            if (!transform) throw std::invalid_argument("custom spec: missing transform");
            break;
    }
}

bool DistributionSpec::has_log_density() const {
    return kind != Kind::Custom || static_cast<bool>(custom_log_density);
}

double DistributionSpec::log_density(std::span<const double> x) const {
    if (x.size() != dim()) throw std::invalid_argument("log_density: dimension mismatch");
    switch (kind) {
        case Kind::Uniform: {
            double sum = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (x[k] < lo[k] || x[k] > hi[k])
                    return -std::numeric_limits<double>::infinity();
                sum -= std::log(hi[k] - lo[k]);
            }
            return sum;
        }
        case Kind::Normal: {
            static const double log_sqrt_2pi = 0.918938533204672741780329;
            double sum = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double z = (x[k] - mean[k]) / sd[k];
                sum += -0.5 * z * z - std::log(sd[k]) - log_sqrt_2pi;
            }
            return sum;
        }
        case Kind::Custom:
            if (!custom_log_density)
                throw std::logic_error("log_density: custom spec has no density");
            return custom_log_density(x);
    }
    return 0.0;
}

namespace {

void draw_point(const DistributionSpec& dist, RngStream& rng, std::span<double> out,
                std::vector<double>& uniforms) {
    switch (dist.kind) {
        case DistributionSpec::Kind::Uniform:
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k] = dist.lo[k] + (dist.hi[k] - dist.lo[k]) * rng.next_double();
            break;
        case DistributionSpec::Kind::Normal:
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k] = dist.mean[k] + dist.sd[k] * rng.next_normal();
            break;
        case DistributionSpec::Kind::Custom:
            uniforms.resize(out.size());
            for (auto& u : uniforms) u = rng.next_double();
            dist.transform(uniforms, out);
            break;
    }
}

}  // namespace

DiscretizedPopulation discretize(const DistributionSpec& dist, std::size_t count,
                                 RngStream& rng) {
    dist.validate();
    if (count == 0) throw std::invalid_argument("discretize: count must be >= 1");
    DiscretizedPopulation pop;
    pop.coords = Matrix(count, dist.dim());
    pop.weights.assign(count, 1.0);
    pop.seed.seed = rng.seed();
    std::vector<double> scratch;
    for (std::size_t i = 0; i < count; ++i) draw_point(dist, rng, pop.coords.row(i), scratch);
    return pop;
}

DiscretizedPopulation discretize_is(const ISSpec& spec, std::size_t count, RngStream& rng) {
    spec.target.validate();
    spec.proposal.validate();
    if (spec.target.dim() != spec.proposal.dim())
        throw std::invalid_argument("discretize_is: target/proposal dimension mismatch");
    if (!spec.target.has_log_density() || !spec.proposal.has_log_density())
        throw std::invalid_argument("discretize_is: both densities are required");

    DiscretizedPopulation pop = discretize(spec.proposal, count, rng);
    for (std::size_t i = 0; i < count; ++i) {
        const auto x = pop.coords.row(i);
        const double w = std::exp(spec.target.log_density(x) - spec.proposal.log_density(x));
        if (!std::isfinite(w))
            throw std::domain_error("discretize_is: non-finite weight at a drawn point");
        pop.weights[i] = w;
    }
    return pop;
}

StandardizeResult standardize(const Matrix& coords) {
    if (coords.rows() < 2) throw std::invalid_argument("standardize: needs at least two rows");
    StandardizeResult out;
    out.coords = coords;
    for (std::size_t j = 0; j < coords.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < coords.rows(); ++i) sum += coords(i, j);
        const double mean = sum / static_cast<double>(coords.rows());
        double ss = 0.0;
        for (std::size_t i = 0; i < coords.rows(); ++i) {
            const double d = coords(i, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(coords.rows() - 1));
        if (sd == 0.0) {
            out.constant_columns.push_back(j);
            continue;
        }
        for (std::size_t i = 0; i < coords.rows(); ++i)
            out.coords(i, j) = mean + (coords(i, j) - mean) / sd;
    }
    return out;
}

CsvTable to_csv(const DiscretizedPopulation& pop) {
    CsvTable table;
    const std::size_t q = pop.coords.cols();
    for (std::size_t j = 0; j < q; ++j) table.header.push_back("x" + std::to_string(j));
    table.header.push_back("weight");
    table.values = Matrix(pop.coords.rows(), q + 1);
    for (std::size_t i = 0; i < pop.coords.rows(); ++i) {
        for (std::size_t j = 0; j < q; ++j) table.values(i, j) = pop.coords(i, j);
        table.values(i, q) = pop.weights[i];
    }
    return table;
}

DiscretizedPopulation population_from_csv(const CsvTable& table) {
    const int wcol = table.column("weight");
    const std::size_t q = table.header.size() - (wcol >= 0 ? 1 : 0);
    if (q == 0) throw std::invalid_argument("population csv: no coordinate columns");
    DiscretizedPopulation pop;
    pop.coords = Matrix(table.rows(), q);
    pop.weights.assign(table.rows(), 1.0);
    for (std::size_t i = 0; i < table.rows(); ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < table.header.size(); ++j) {
            if (static_cast<int>(j) == wcol) continue;
            pop.coords(i, c++) = table.values(i, j);
        }
        if (wcol >= 0) pop.weights[i] = table.values(i, wcol);
    }
    return pop;
}

}  // namespace lpm

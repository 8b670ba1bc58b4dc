#include "phm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "phm/errors.hpp"
#include "phm/parallel.hpp"

namespace phm {

KernelFamily parse_kernel_family(const std::string& name) {
    if (name == "triangular") return KernelFamily::Triangular;
    if (name == "epanechnikov") return KernelFamily::Epanechnikov;
    if (name == "gaussian") return KernelFamily::Gaussian;
    throw InvalidArgument("unknown kernel family '" + name + "'");
}

std::string to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::Triangular: return "triangular";
        case KernelFamily::Epanechnikov: return "epanechnikov";
        case KernelFamily::Gaussian: return "gaussian";
    }
    return "?";
}

void KernelSpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("kernel bandwidth must be positive");
    if (dim < 1) throw InvalidArgument("kernel dimension must be at least 1");
}

double unit_ball_volume(int k) {
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double kernel_profile(const KernelSpec& spec, double r) {
    const double k = spec.dim;
    const double a = spec.alpha;
    switch (spec.family) {
        case KernelFamily::Triangular:
            if (r >= a) return 0.0;
            return (k + 1.0) / (std::pow(a, k) * unit_ball_volume(spec.dim)) * (1.0 - r / a);
        case KernelFamily::Epanechnikov:
            if (r >= a) return 0.0;
            return (k + 2.0) / (2.0 * std::pow(a, k) * unit_ball_volume(spec.dim)) * (1.0 - r * r / (a * a));
        case KernelFamily::Gaussian:
            return std::exp(-r * r / (2.0 * a * a)) / (std::pow(a, k) * std::pow(2.0 * std::numbers::pi, 0.5 * k));
    }
    return 0.0;
}

double kernel_density(const KernelSpec& spec, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.dim) throw DimensionMismatch("point dimension differs from the kernel's");
    double sq = 0.0;
    for (double v : x) sq += v * v;
    return kernel_profile(spec, std::sqrt(sq));
}

namespace {

// Distribution function of |eps| / alpha for the compact families.
double unit_radius_cdf(KernelFamily family, int k, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double uk = std::pow(u, k);
    if (family == KernelFamily::Triangular) return (k + 1.0) * uk - k * uk * u;
    return 0.5 * ((k + 2.0) * uk - k * uk * u * u);
}

}  // namespace

double radius_cdf(const KernelSpec& spec, double r) {
    if (r <= 0.0) return 0.0;
    if (spec.family == KernelFamily::Gaussian)
        return boost::math::gamma_p(0.5 * spec.dim, r * r / (2.0 * spec.alpha * spec.alpha));
    return unit_radius_cdf(spec.family, spec.dim, r / spec.alpha);
}

double density_lipschitz_constant(const KernelSpec& spec) {
    const double k = spec.dim;
    const double denom = std::pow(spec.alpha, k + 1.0) * unit_ball_volume(spec.dim);
    switch (spec.family) {
        case KernelFamily::Triangular: return (k + 1.0) / denom;
        case KernelFamily::Epanechnikov: return (k + 2.0) / denom;
        case KernelFamily::Gaussian:
            // Largest slope of the Gaussian profile, reached at r = alpha.
            return kernel_profile(spec, spec.alpha) / spec.alpha;
    }
    return 0.0;
}

double convolution_lipschitz_bound(const KernelSpec& spec, double M) {
    const double k = spec.dim;
    switch (spec.family) {
        case KernelFamily::Triangular: return 2.0 * M * (k + 1.0) * std::sqrt(k) / spec.alpha;
        case KernelFamily::Epanechnikov: return 2.0 * M * (k + 2.0) * std::sqrt(k) / spec.alpha;
        case KernelFamily::Gaussian: return 2.0 * M * std::sqrt(k) / (spec.alpha * std::sqrt(2.0 * std::numbers::pi));
    }
    return 0.0;
}

std::vector<double> sample_perturbation(const KernelSpec& spec, Rng& rng) {
    spec.validate();
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> eps(spec.dim);
    for (double& e : eps) e = normal(rng);
    if (spec.family == KernelFamily::Gaussian) {
        for (double& e : eps) e *= spec.alpha;
        return eps;
    }
    double norm = 0.0;
    for (double e : eps) norm += e * e;
    norm = std::sqrt(norm);
    while (norm == 0.0) {
        for (double& e : eps) e = normal(rng);
        norm = 0.0;
        for (double e : eps) norm += e * e;
        norm = std::sqrt(norm);
    }
    // Invert the radius distribution by bisection; it is increasing on [0, 1].
    const double target = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        (unit_radius_cdf(spec.family, spec.dim, mid) < target ? lo : hi) = mid;
    }
    const double r = spec.alpha * 0.5 * (lo + hi);
    for (double& e : eps) e *= r / norm;
    return eps;
}

void summarize_samples(const std::vector<std::vector<double>>& samples, std::vector<double>& mean,
                       std::vector<double>& std_error) {
    const std::size_t n = samples.size();
    const std::size_t m = n ? samples.front().size() : 0;
    mean.assign(m, 0.0);
    std_error.assign(m, 0.0);
    std::vector<double> column(n);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < n; ++j) column[j] = samples[j][c];
        const double mu = pairwise_sum(column.data(), n) / static_cast<double>(n);
        mean[c] = mu;
        if (n > 1) {
            for (double& v : column) v = (v - mu) * (v - mu);
            const double var = pairwise_sum(column.data(), n) / static_cast<double>(n - 1);
            std_error[c] = std::sqrt(var / static_cast<double>(n));
        }
    }
}

ExpectedHeatmap monte_carlo_convolution(const Field& field, std::span<const double> x, const KernelSpec& spec,
                                        std::size_t n, std::uint64_t seed, unsigned workers) {
    spec.validate();
    if (n < 1) throw InvalidArgument("at least one sample is required");
    if (static_cast<int>(x.size()) != spec.dim)
        throw DimensionMismatch("kernel dimension " + std::to_string(spec.dim) + " does not match input length " +
                                std::to_string(x.size()));
    std::vector<std::vector<double>> samples(n);
    parallel_for(n, workers, [&](std::size_t j) {
        Rng rng = substream(seed, j);
        const std::vector<double> eps = sample_perturbation(spec, rng);
        std::vector<double> shifted(x.begin(), x.end());
        for (std::size_t c = 0; c < shifted.size(); ++c) shifted[c] -= eps[c];
        samples[j] = field(shifted);
    });
    for (const auto& s : samples)
        if (s.size() != samples.front().size()) throw DimensionMismatch("field returned vectors of varying length");

    ExpectedHeatmap out;
    summarize_samples(samples, out.mean, out.std_error);
    out.n_samples = n;
    out.seed = seed;
    out.kernel = spec;
    return out;
}

Field heatmap_field(const SimplicialComplex& complex, std::vector<double> base, std::vector<std::size_t> free,
                    HeatmapConfig config) {
    if (base.size() != complex.size()) throw LengthMismatch("base weights do not match the complex");
    for (std::size_t c : free)
        if (c >= base.size()) throw InvalidArgument("free coordinate out of range");
    return [&complex, base = std::move(base), free = std::move(free), config = std::move(config)](
               std::span<const double> z) {
        if (z.size() != free.size()) throw DimensionMismatch("field input has the wrong length");
        std::vector<double> x = base;
        for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = z[i];
        return heatmap_at(complex, x, config).w;
    };
}

Field theta_field(const SimplicialComplex& complex, std::size_t k, HeatmapConfig config, RasterGrid grid) {
    return [&complex, k, config = std::move(config), grid](std::span<const double> z) {
        if (z.size() < k) throw DimensionMismatch("theta input shorter than the weight vector");
        return theta(complex, z.subspan(0, k), z.subspan(k), config, grid);
    };
}

Field two_vertex_field(double edge_weight) {
    auto complex = std::make_shared<const SimplicialComplex>(build_complex({{0}, {1}, {0, 1}}));
    HeatmapConfig config;
    config.degree = 0;
    config.F = PersistenceF{};
    config.selector = ChainSelector::BirthSimplex;
    return [complex, edge_weight, config](std::span<const double> z) {
        if (z.size() != 2) throw DimensionMismatch("field input has the wrong length");
        const std::vector<double> x{z[0], z[1], edge_weight};
        return heatmap_at(*complex, x, config).w;
    };
}

ExpectedHeatmap expected_heatmap(std::span<const double> x, const SimplicialComplex& complex,
                                 const HeatmapConfig& config, const KernelSpec& spec, std::size_t n,
                                 std::uint64_t seed, unsigned workers) {
    if (x.size() != complex.size()) throw LengthMismatch("weights do not match the complex");
    const Field eta = [&](std::span<const double> z) { return heatmap_at(complex, z, config).w; };
    return monte_carlo_convolution(eta, x, spec, n, seed, workers);
}

ExpectedHeatmap expected_theta(std::span<const double> x, std::span<const double> y,
                               const SimplicialComplex& complex, const HeatmapConfig& config,
                               const RasterGrid& grid, const KernelSpec& spec, std::size_t n, std::uint64_t seed,
                               unsigned workers) {
    if (x.size() != complex.size()) throw LengthMismatch("weights do not match the complex");
    std::vector<double> xy(x.begin(), x.end());
    xy.insert(xy.end(), y.begin(), y.end());
    return monte_carlo_convolution(theta_field(complex, x.size(), config, grid), xy, spec, n, seed, workers);
}

QuadratureConvolution::QuadratureConvolution(const Field& field, std::vector<double> center, double reach,
                                             const KernelSpec& spec, int points_per_axis)
    : spec_(spec), dim_(spec.dim) {
    spec.validate();
    if (dim_ > 3) throw InvalidArgument("quadrature is limited to dimension 3");
    if (static_cast<int>(center.size()) != dim_) throw DimensionMismatch("center does not match kernel dimension");
    if (points_per_axis < 2) throw InvalidArgument("quadrature needs at least 2 points per axis");
    const double support = spec.family == KernelFamily::Gaussian ? 8.0 * spec.alpha : spec.alpha;
    const double half = reach + support;
    const double h = 2.0 * half / points_per_axis;

    // Nodes sit on the absolute lattice h * (k + (d + 1/2) / dim) along axis d.
    // The staggered offsets keep every node off the tie hyperplanes
    // x_i = x_j, which is where a heatmap jumps (the tie-break sends the
    // whole mass to one side); symmetric nodes on both sides cancel the
    // first-order error a node on the jump would cause.
    std::vector<std::int64_t> first(dim_), count(dim_);
    std::vector<double> offset(dim_);
    std::size_t total = 1;
    for (int d = 0; d < dim_; ++d) {
        offset[d] = (d + 0.5) / dim_;
        first[d] = static_cast<std::int64_t>(std::floor((center[d] - half) / h - offset[d]));
        const auto last = static_cast<std::int64_t>(std::ceil((center[d] + half) / h - offset[d]));
        count[d] = last - first[d] + 1;
        total *= static_cast<std::size_t>(count[d]);
    }
    nodes_.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> s(dim_);
        std::size_t rest = idx;
        for (int d = 0; d < dim_; ++d) {
            const auto i = static_cast<std::int64_t>(rest % static_cast<std::size_t>(count[d]));
            rest /= static_cast<std::size_t>(count[d]);
            s[d] = (static_cast<double>(first[d] + i) + offset[d]) * h;
        }
        nodes_.push_back(std::move(s));
    }
    values_.reserve(total);
    for (const auto& s : nodes_) {
        values_.push_back(field(s));
        if (values_.back().size() != values_.front().size()) throw DimensionMismatch("field output length varies");
        for (double v : values_.back()) sup_norm_ = std::max(sup_norm_, std::abs(v));
    }
    m_ = values_.empty() ? 0 : values_.front().size();
}

std::vector<double> QuadratureConvolution::operator()(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != dim_) throw DimensionMismatch("evaluation point has the wrong dimension");
    std::vector<double> acc(m_, 0.0);
    double mass = 0.0;
    std::vector<double> diff(dim_);
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        for (int d = 0; d < dim_; ++d) diff[d] = u[d] - nodes_[j][d];
        const double kval = kernel_density(spec_, diff);
        if (kval == 0.0) continue;
        mass += kval;
        for (std::size_t c = 0; c < m_; ++c) acc[c] += kval * values_[j][c];
    }
    // Normalizing by the discrete kernel mass keeps constants exact.
    if (mass > 0.0)
        for (double& a : acc) a /= mass;
    return acc;
}

std::vector<std::pair<std::vector<double>, std::vector<double>>> random_pairs_in_ball(
    std::span<const double> center, double radius, std::size_t count, std::uint64_t seed) {
    const int dim = static_cast<int>(center.size());
    const KernelSpec uniform_dir{KernelFamily::Gaussian, 1.0, dim};
    auto draw = [&](Rng& rng) {
        std::vector<double> dir = sample_perturbation(uniform_dir, rng);
        double norm = 0.0;
        for (double v : dir) norm += v * v;
        norm = std::sqrt(norm);
        const double r = radius * std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng), 1.0 / dim);
        std::vector<double> p(center.begin(), center.end());
        for (int d = 0; d < dim; ++d) p[d] += norm > 0.0 ? r * dir[d] / norm : 0.0;
        return p;
    };
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = substream(seed, i);
        auto u = draw(rng);
        auto v = draw(rng);
        pairs.emplace_back(std::move(u), std::move(v));
    }
    return pairs;
}

LipschitzReport lipschitz_probe(const Field& field, std::span<const double> center, const KernelSpec& spec,
                                const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs,
                                const ProbeOptions& options) {
    spec.validate();
    LipschitzReport report;
    report.pairs = pairs.size();

    double reach = 0.0;
    for (const auto& [u, v] : pairs) {
        double du = 0.0, dv = 0.0;
        for (std::size_t d = 0; d < center.size(); ++d) {
            du += (u[d] - center[d]) * (u[d] - center[d]);
            dv += (v[d] - center[d]) * (v[d] - center[d]);
        }
        reach = std::max({reach, std::sqrt(du), std::sqrt(dv)});
    }

    auto ratio = [](const std::vector<double>& eu, const std::vector<double>& ev, const std::vector<double>& u,
                    const std::vector<double>& v) {
        double num = 0.0, den = 0.0;
        for (std::size_t c = 0; c < eu.size(); ++c) num += (eu[c] - ev[c]) * (eu[c] - ev[c]);
        for (std::size_t d = 0; d < u.size(); ++d) den += (u[d] - v[d]) * (u[d] - v[d]);
        return den > 0.0 ? std::sqrt(num / den) : 0.0;
    };

    if (options.mode == ProbeMode::Quadrature) {
        const QuadratureConvolution conv(field, std::vector<double>(center.begin(), center.end()), reach, spec,
                                         options.quadrature_points);
        report.M = conv.sup_norm();
        std::vector<double> ratios(pairs.size());
        parallel_for(pairs.size(), options.workers, [&](std::size_t i) {
            const auto& [u, v] = pairs[i];
            ratios[i] = ratio(conv(u), conv(v), u, v);
        });
        for (double r : ratios) report.max_ratio = std::max(report.max_ratio, r);
    } else {
        // Common random numbers: u and v share the same perturbations.
        std::vector<double> ratios(pairs.size()), sups(pairs.size());
        parallel_for(pairs.size(), options.workers, [&](std::size_t i) {
            const auto& [u, v] = pairs[i];
            std::vector<double> eu, ev;
            double sup = 0.0;
            for (std::size_t j = 0; j < options.mc_samples; ++j) {
                Rng rng = substream(options.seed, j);
                const auto eps = sample_perturbation(spec, rng);
                std::vector<double> su(u), sv(v);
                for (std::size_t d = 0; d < eps.size(); ++d) {
                    su[d] -= eps[d];
                    sv[d] -= eps[d];
                }
                const auto fu = field(su), fv = field(sv);
                if (eu.empty()) {
                    eu.assign(fu.size(), 0.0);
                    ev.assign(fv.size(), 0.0);
                }
                for (std::size_t c = 0; c < fu.size(); ++c) {
                    eu[c] += fu[c];
                    ev[c] += fv[c];
                    sup = std::max({sup, std::abs(fu[c]), std::abs(fv[c])});
                }
            }
            for (auto& e : eu) e /= static_cast<double>(options.mc_samples);
            for (auto& e : ev) e /= static_cast<double>(options.mc_samples);
            ratios[i] = ratio(eu, ev, u, v);
            sups[i] = sup;
        });
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            report.max_ratio = std::max(report.max_ratio, ratios[i]);
            report.M = std::max(report.M, sups[i]);
        }
    }
    report.bound = convolution_lipschitz_bound(spec, report.M);
    return report;
}

}  // namespace phm

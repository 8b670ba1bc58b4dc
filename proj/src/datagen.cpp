#include "phm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phm/errors.hpp"
#include "phm/parallel.hpp"
#include "phm/rng.hpp"

namespace phm {

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "annulus") return GeneratorKind::Annulus;
    if (name == "double_annulus" || name == "double-annulus") return GeneratorKind::DoubleAnnulus;
    if (name == "uniform_disc" || name == "uniform-disc" || name == "disc") return GeneratorKind::UniformDisc;
    if (name == "linked_twist" || name == "linked-twist") return GeneratorKind::LinkedTwist;
    throw InvalidArgument("unknown generator kind '" + name + "'");
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Annulus: return "annulus";
        case GeneratorKind::DoubleAnnulus: return "double_annulus";
        case GeneratorKind::UniformDisc: return "uniform_disc";
        case GeneratorKind::LinkedTwist: return "linked_twist";
    }
    return "?";
}

void GeneratorSpec::validate() const {
    if (n < 1) throw InvalidArgument("generator needs n >= 1");
    if (!(noise >= 0.0)) throw InvalidArgument("noise sigma must be non-negative");
    for (const Annulus& a : annuli)
        if (!(a.r_in >= 0.0 && a.r_in < a.r_out)) throw InvalidArgument("annulus needs 0 <= r_in < r_out");
    if (kind == GeneratorKind::Annulus && annuli.size() != 1) throw InvalidArgument("annulus needs one annulus");
    if (kind == GeneratorKind::DoubleAnnulus) {
        if (annuli.size() != 2) throw InvalidArgument("double annulus needs two annuli");
        const double d = std::hypot(annuli[0].center.x - annuli[1].center.x, annuli[0].center.y - annuli[1].center.y);
        if (d < annuli[0].r_out + annuli[1].r_out) throw InvalidArgument("annuli must be disjoint or tangent");
    }
    if (kind == GeneratorKind::LinkedTwist) {
        if (!(twist_r > 0.0)) throw InvalidArgument("twist parameter must be positive");
        if (initial && !(initial->x >= 0.0 && initial->x <= 1.0 && initial->y >= 0.0 && initial->y <= 1.0))
            throw InvalidArgument("initial point must lie in the unit square");
    }
}

GeneratorSpec class_a_spec(std::size_t n, double noise, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = GeneratorKind::Annulus;
    s.n = n;
    s.noise = noise;
    s.annuli = {Annulus{{0.0, 0.0}, 0.8, 1.0}};
    s.seed = seed;
    return s;
}

GeneratorSpec class_b_spec(std::size_t n, double noise, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = GeneratorKind::DoubleAnnulus;
    s.n = n;
    s.noise = noise;
    s.annuli = {Annulus{{-0.5, 0.0}, 0.4, 0.5}, Annulus{{0.5, 0.0}, 0.4, 0.5}};
    s.seed = seed;
    return s;
}

GeneratorSpec class_c_spec(std::size_t n, double noise, std::uint64_t seed) {
    GeneratorSpec s = class_a_spec(n, noise, seed);
    const Annulus& larger = class_b_spec(n, noise, seed).annuli.front();
    const double scale = 2.0;
    s.annuli = {Annulus{{0.0, 0.0}, scale * larger.r_in, scale * larger.r_out}};
    return s;
}

namespace {

bool in_annulus(const Point2& p, const Annulus& a) {
    const double d2 = (p.x - a.center.x) * (p.x - a.center.x) + (p.y - a.center.y) * (p.y - a.center.y);
    return a.r_in * a.r_in <= d2 && d2 <= a.r_out * a.r_out;
}

template <class Accept>
PointCloud rejection_sample(const GeneratorSpec& spec, double x0, double x1, double y0, double y1, Accept accept,
                            std::size_t* proposals) {
    Rng rng = substream(spec.seed, 0);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    PointCloud cloud;
    cloud.points.reserve(spec.n);
    std::size_t draws = 0;
    while (cloud.points.size() < spec.n) {
        const Point2 p{ux(rng), uy(rng)};
        ++draws;
        if (accept(p)) cloud.points.push_back(p);
    }
    if (spec.noise > 0.0) {
        std::normal_distribution<double> normal(0.0, spec.noise);
        for (Point2& p : cloud.points) {
            p.x += normal(rng);
            p.y += normal(rng);
        }
    }
    if (proposals) *proposals = draws;
    return cloud;
}

}  // namespace

PointCloud gen_annulus(const GeneratorSpec& spec, std::size_t* proposals) {
    spec.validate();
    if (spec.annuli.size() != 1) throw InvalidArgument("annulus needs one annulus");
    const Annulus& a = spec.annuli.front();
    return rejection_sample(
        spec, a.center.x - a.r_out, a.center.x + a.r_out, a.center.y - a.r_out, a.center.y + a.r_out,
        [&](const Point2& p) { return in_annulus(p, a); }, proposals);
}

PointCloud gen_double_annulus(const GeneratorSpec& spec, std::size_t* proposals) {
    spec.validate();
    if (spec.annuli.size() != 2) throw InvalidArgument("double annulus needs two annuli");
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (const Annulus& a : spec.annuli) {
        x0 = std::min(x0, a.center.x - a.r_out);
        x1 = std::max(x1, a.center.x + a.r_out);
        y0 = std::min(y0, a.center.y - a.r_out);
        y1 = std::max(y1, a.center.y + a.r_out);
    }
    return rejection_sample(
        spec, x0, x1, y0, y1,
        [&](const Point2& p) { return in_annulus(p, spec.annuli[0]) || in_annulus(p, spec.annuli[1]); }, proposals);
}

PointCloud gen_uniform_disc(const GeneratorSpec& spec, std::size_t* proposals) {
    spec.validate();
    return rejection_sample(
        spec, -1.0, 1.0, -1.0, 1.0, [](const Point2& p) { return p.x * p.x + p.y * p.y <= 1.0; }, proposals);
}

PointCloud gen_linked_twist(const GeneratorSpec& spec) {
    spec.validate();
    Point2 p;
    if (spec.initial) {
        p = *spec.initial;
    } else {
        Rng rng = substream(spec.seed, 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        p.x = u(rng);
        p.y = u(rng);
    }
    auto mod1 = [](double v) {
        const double m = v - std::floor(v);
        return m >= 1.0 ? 0.0 : m;
    };
    PointCloud cloud;
    cloud.points.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        cloud.points.push_back(p);
        p.x = mod1(p.x + spec.twist_r * p.y * (1.0 - p.y));
        p.y = mod1(p.y + spec.twist_r * p.x * (1.0 - p.x));
    }
    return cloud;
}

PointCloud generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::Annulus: return gen_annulus(spec);
        case GeneratorKind::DoubleAnnulus: return gen_double_annulus(spec);
        case GeneratorKind::UniformDisc: return gen_uniform_disc(spec);
        case GeneratorKind::LinkedTwist: return gen_linked_twist(spec);
    }
    throw InvalidArgument("unknown generator kind");
}

ExperimentResult experiment_expected_phm(const GeneratorSpec& generator, std::size_t n_clouds,
                                         const HeatmapConfig& config, const RasterGrid& grid, std::uint64_t seed,
                                         unsigned workers) {
    if (n_clouds < 1) throw InvalidArgument("at least one cloud is required");
    grid.validate();
    std::vector<std::vector<double>> rasters(n_clouds);
    ExperimentResult result;
    result.total_F.assign(n_clouds, 0.0);
    result.raster_mass.assign(n_clouds, 0.0);
    parallel_for(n_clouds, workers, [&](std::size_t i) {
        GeneratorSpec spec = generator;
        spec.seed = derive_seed(seed, i);
        const PointCloud cloud = generate(spec);
        const auto [complex, phi] = delaunay2d(cloud);
        const WeightVector w = alpha_weights(complex, phi);
        const HeatmapWeights hw = heatmap_at(complex, w.values, config);
        rasters[i] = rasterize(complex, hw.w, phi, grid);
        result.total_F[i] = hw.total_F;
        result.raster_mass[i] = pairwise_sum(rasters[i].data(), rasters[i].size());
    });
    summarize_samples(rasters, result.heat.mean, result.heat.std_error);
    result.heat.n_samples = n_clouds;
    result.heat.seed = seed;
    return result;
}

}  // namespace phm

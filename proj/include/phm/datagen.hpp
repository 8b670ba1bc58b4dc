#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phm/geometry.hpp"
#include "phm/heatmap.hpp"
#include "phm/kernel.hpp"
#include "phm/raster.hpp"

namespace phm {

enum class GeneratorKind { Annulus, DoubleAnnulus, UniformDisc, LinkedTwist };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

struct Annulus {
    Point2 center;
    double r_in = 0.8;
    double r_out = 1.0;
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Annulus;
    std::size_t n = 200;
    double noise = 0.0;            // isotropic Gaussian sigma
    std::vector<Annulus> annuli;   // one for Annulus, two for DoubleAnnulus
    double twist_r = 4.0;
    std::optional<Point2> initial;  // drawn from the seed when absent
    std::uint64_t seed = 0;

    void validate() const;
};

/// Default shapes: class A one annulus (0.8, 1.0); class B two annuli of half
/// that outer diameter touching at the origin; class C outer diameter twice
/// class B's larger annulus.
GeneratorSpec class_a_spec(std::size_t n, double noise, std::uint64_t seed);
GeneratorSpec class_b_spec(std::size_t n, double noise, std::uint64_t seed);
GeneratorSpec class_c_spec(std::size_t n, double noise, std::uint64_t seed);

/// Uniform proposals from the bounding box of the region, kept while inside,
/// until n are accepted; Gaussian noise is added afterwards. `proposals`
/// receives the number of draws.
PointCloud gen_annulus(const GeneratorSpec& spec, std::size_t* proposals = nullptr);
PointCloud gen_double_annulus(const GeneratorSpec& spec, std::size_t* proposals = nullptr);
/// Proposals from [-1, 1]^2 kept on the closed unit disc.
PointCloud gen_uniform_disc(const GeneratorSpec& spec, std::size_t* proposals = nullptr);
/// Orbit of the linked twist map
///   x' = x + r y (1 - y) mod 1,  y' = y + r x' (1 - x') mod 1
/// starting at the initial point (included), n points in total.
PointCloud gen_linked_twist(const GeneratorSpec& spec);

PointCloud generate(const GeneratorSpec& spec);

/// Mean raster over clouds freshly drawn from `generator`. Cloud i is drawn
/// with seed derive_seed(seed, i), goes through the alpha filtration, its
/// diagram and heatmap, and is rasterized onto `grid`.
struct ExperimentResult {
    ExpectedHeatmap heat;          // kernel field unused
    std::vector<double> total_F;   // per cloud
    std::vector<double> raster_mass;  // per cloud, sum of its raster
};

ExperimentResult experiment_expected_phm(const GeneratorSpec& generator, std::size_t n_clouds,
                                         const HeatmapConfig& config, const RasterGrid& grid, std::uint64_t seed,
                                         unsigned workers = 1);

}  // namespace phm

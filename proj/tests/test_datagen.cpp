#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phm/datagen.hpp"
#include "phm/errors.hpp"

using namespace phm;

namespace {

double radius(const Point2& p, const Point2& c) { return std::hypot(p.x - c.x, p.y - c.y); }

}  // namespace

TEST_CASE("annulus: points inside, determinism, acceptance rate") {
    const GeneratorSpec spec = class_a_spec(4000, 0.0, 11);
    std::size_t proposals = 0;
    const PointCloud a = gen_annulus(spec, &proposals);
    REQUIRE(a.size() == 4000);
    for (const auto& p : a.points) {
        const double r = radius(p, {0.0, 0.0});
        CHECK(r >= 0.8);
        CHECK(r <= 1.0);
    }
    // Area of the annulus over the area of its bounding box [-1, 1]^2.
    const double expected = std::numbers::pi * (1.0 - 0.64) / 4.0;
    const double rate = static_cast<double>(a.size()) / static_cast<double>(proposals);
    CHECK(std::abs(rate - expected) <= 4.0 * std::sqrt(expected * (1 - expected) / proposals));

    const PointCloud b = generate(spec);
    CHECK(a.points == b.points);
    GeneratorSpec other = spec;
    other.seed = 12;
    CHECK(generate(other).points != a.points);
}

TEST_CASE("double annulus: both rings are hit") {
    const GeneratorSpec spec = class_b_spec(3000, 0.0, 21);
    std::size_t proposals = 0;
    const PointCloud c = gen_double_annulus(spec, &proposals);
    REQUIRE(c.size() == 3000);
    std::size_t left = 0;
    for (const auto& p : c.points) {
        const auto& ring = p.x < 0 ? spec.annuli[0] : spec.annuli[1];
        const double r = radius(p, ring.center);
        CHECK(r >= ring.r_in - 1e-12);
        CHECK(r <= ring.r_out + 1e-12);
        left += p.x < 0;
    }
    CHECK(left > 1300);
    CHECK(left < 1700);
    // Two rings of area 0.09 pi in a 2 x 1 box.
    const double expected = 2.0 * std::numbers::pi * 0.09 / 2.0;
    const double rate = 3000.0 / static_cast<double>(proposals);
    CHECK(std::abs(rate - expected) <= 4.0 * std::sqrt(expected * (1 - expected) / proposals));
}

TEST_CASE("uniform disc") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::UniformDisc;
    spec.n = 5000;
    spec.seed = 3;
    std::size_t proposals = 0;
    const PointCloud c = gen_uniform_disc(spec, &proposals);
    REQUIRE(c.size() == 5000);
    double mean_r2 = 0.0;
    for (const auto& p : c.points) {
        CHECK(p.x * p.x + p.y * p.y <= 1.0);
        mean_r2 += p.x * p.x + p.y * p.y;
    }
    // Uniform on the disc: E r^2 = 1/2, Var r^2 = 1/12.
    CHECK(std::abs(mean_r2 / 5000 - 0.5) <= 4.0 * std::sqrt(1.0 / 12.0 / 5000));
    const double expected = std::numbers::pi / 4.0;
    const double rate = 5000.0 / static_cast<double>(proposals);
    CHECK(std::abs(rate - expected) <= 4.0 * std::sqrt(expected * (1 - expected) / proposals));
}

TEST_CASE("noise spreads points off the ring") {
    const PointCloud clean = generate(class_a_spec(500, 0.0, 5));
    const PointCloud noisy = generate(class_a_spec(500, 0.05, 5));
    bool outside = false;
    for (const auto& p : noisy.points) {
        const double r = radius(p, {0.0, 0.0});
        outside = outside || r < 0.8 || r > 1.0;
    }
    CHECK(outside);
    CHECK(clean.size() == noisy.size());
}

TEST_CASE("linked twist") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::LinkedTwist;
    spec.n = 5;
    spec.twist_r = 4.0;
    spec.initial = Point2{0.5, 0.5};
    const PointCloud fixed = gen_linked_twist(spec);
    REQUIRE(fixed.size() == 5);
    for (const auto& p : fixed.points) {
        CHECK(p.x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.y == doctest::Approx(0.5).epsilon(1e-12));
    }

    spec.initial = Point2{0.1, 0.2};
    const PointCloud orbit = gen_linked_twist(spec);
    CHECK(orbit.points[0].x == 0.1);
    CHECK(orbit.points[0].y == 0.2);
    CHECK(orbit.points[1].x == doctest::Approx(0.74).epsilon(1e-12));
    CHECK(orbit.points[1].y == doctest::Approx(0.9696).epsilon(1e-12));
    for (const auto& p : orbit.points) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y < 1.0);
    }

    // Seeded start point when none is given.
    spec.initial.reset();
    spec.seed = 8;
    spec.n = 50;
    const PointCloud s1 = generate(spec), s2 = generate(spec);
    CHECK(s1.points == s2.points);
    spec.seed = 9;
    CHECK(generate(spec).points != s1.points);
}

TEST_CASE("generator validation") {
    GeneratorSpec bad = class_a_spec(10, 0.0, 0);
    bad.n = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = class_a_spec(10, -0.1, 0);
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = class_a_spec(10, 0.0, 0);
    bad.annuli[0].r_in = 1.5;
    CHECK_THROWS_AS(generate(bad), InvalidArgument);
    bad = class_a_spec(10, 0.0, 0);
    bad.annuli.push_back(bad.annuli[0]);
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = class_b_spec(10, 0.0, 0);
    bad.annuli[1].center.x = 0.4;  // overlapping rings
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    GeneratorSpec twist;
    twist.kind = GeneratorKind::LinkedTwist;
    twist.initial = Point2{1.5, 0.0};
    CHECK_THROWS_AS(twist.validate(), InvalidArgument);
    twist.initial.reset();
    twist.twist_r = 0.0;
    CHECK_THROWS_AS(twist.validate(), InvalidArgument);
    CHECK_NOTHROW(class_b_spec(10, 0.0, 0).validate());

    for (GeneratorKind k : {GeneratorKind::Annulus, GeneratorKind::DoubleAnnulus, GeneratorKind::UniformDisc,
                            GeneratorKind::LinkedTwist})
        CHECK(parse_generator_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_generator_kind("torus"), InvalidArgument);
}

TEST_CASE("class presets") {
    const auto a = class_a_spec(10, 0.0, 0), b = class_b_spec(10, 0.0, 0), c = class_c_spec(10, 0.0, 0);
    REQUIRE(b.annuli.size() == 2);
    // B: half of A's outer diameter, touching at the origin.
    CHECK(b.annuli[0].r_out == doctest::Approx(a.annuli[0].r_out / 2));
    CHECK(radius(b.annuli[0].center, b.annuli[1].center) == doctest::Approx(b.annuli[0].r_out + b.annuli[1].r_out));
    // C: outer diameter twice B's larger annulus.
    REQUIRE(c.annuli.size() == 1);
    CHECK(c.annuli[0].r_out == doctest::Approx(2 * std::max(b.annuli[0].r_out, b.annuli[1].r_out)));
}

TEST_CASE("experiment_expected_phm: deterministic across workers") {
    const GeneratorSpec g = class_a_spec(60, 0.02, 0);
    HeatmapConfig cfg;
    const RasterGrid grid{-1.2, 1.2, 12};
    const ExperimentResult one = experiment_expected_phm(g, 6, cfg, grid, 77, 1);
    const ExperimentResult four = experiment_expected_phm(g, 6, cfg, grid, 77, 4);
    CHECK(one.heat.mean == four.heat.mean);
    CHECK(one.heat.std_error == four.heat.std_error);
    CHECK(one.total_F == four.total_F);
    REQUIRE(one.total_F.size() == 6);
    CHECK(one.heat.n_samples == 6);

    // Every cloud sits inside the grid, so each raster keeps all of its mass.
    for (std::size_t i = 0; i < 6; ++i) CHECK(one.raster_mass[i] == doctest::Approx(one.total_F[i]).epsilon(1e-9));
    double mass = 0.0, mean_F = 0.0;
    for (double v : one.heat.mean) mass += v;
    for (double v : one.total_F) mean_F += v / 6;
    CHECK(mass == doctest::Approx(mean_F).epsilon(1e-9));

    const ExperimentResult other = experiment_expected_phm(g, 6, cfg, grid, 78, 1);
    CHECK(other.heat.mean != one.heat.mean);
}

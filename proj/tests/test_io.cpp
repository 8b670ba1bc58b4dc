#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "phm/errors.hpp"
#include "phm/io.hpp"

using namespace phm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "phm_test_io") { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

void check_same(const AnnotatedDiagram& a, const AnnotatedDiagram& b) {
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const AnnotatedPoint &p = a.points[i], &q = b.points[i];
        CHECK(p.birth == q.birth);
        CHECK(p.death == q.death);
        CHECK(p.degree == q.degree);
        CHECK(p.birth_simplex == q.birth_simplex);
        CHECK(p.death_simplex == q.death_simplex);
        CHECK(p.rep_cycle == q.rep_cycle);
        CHECK(p.bounding_chain == q.bounding_chain);
    }
}

}  // namespace

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(parse_double(format_double(v)) == v);
    }
    for (double v : {0.0, 0.1, 1e-300, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()})
        CHECK(parse_double(format_double(v)) == v);
    CHECK(format_double(kInfinity) == "inf");
    CHECK(format_double(-kInfinity) == "-inf");
    CHECK(parse_double(" inf ") == kInfinity);
    CHECK(format_double(0.5) == "0.5");
    CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
    CHECK_THROWS_AS(parse_double(""), ParseError);
}

TEST_CASE("filtration text") {
    const SimplicialComplex K = oracle::example_complex();
    const std::vector<double> w = {0, 1, 2, 4, 3, 6, 5, 7, 8, 9, 10.25};
    std::stringstream ss;
    write_filtration(ss, K, w);
    const Filtration f = read_filtration(ss);
    REQUIRE(f.complex.size() == K.size());
    for (std::size_t i = 0; i < K.size(); ++i) CHECK(f.complex.simplex(i).vertices == K.simplex(i).vertices);
    CHECK(f.weights.values == w);

    std::stringstream commented("# comment\n\n0 ; 0\n1 ; 0.5\n  # indented comment\n0 1 ; 2\n");
    const Filtration g = read_filtration(commented);
    CHECK(g.complex.size() == 3);
    CHECK(g.weights.values == std::vector<double>{0, 0.5, 2});

    std::stringstream missing("0 ; 0\n1\n");
    CHECK_THROWS_AS(read_filtration(missing), ParseError);
    std::stringstream bad_weight("0 ; zero\n");
    CHECK_THROWS_AS(read_filtration(bad_weight), ParseError);

    TempDir dir;
    write_filtration_file(dir / "k.filt", K, w);
    CHECK(read_filtration_file(dir / "k.filt").weights.values == w);
    CHECK_THROWS_AS(read_filtration_file(dir / "absent.filt"), IoError);
}

TEST_CASE("points CSV and shuffle") {
    TempDir dir;
    std::mt19937_64 rng(92);
    std::normal_distribution<double> n(0.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 50; ++i) cloud.points.push_back({n(rng), n(rng)});
    write_points_csv(dir / "p.csv", cloud);
    CHECK(read_points_csv(dir / "p.csv").points == cloud.points);

    const PointCloud s1 = shuffle_points(cloud, 4), s2 = shuffle_points(cloud, 4);
    CHECK(s1.points == s2.points);
    CHECK(s1.points != cloud.points);
    auto less = [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
    auto sorted = cloud.points, sorted_shuffled = s1.points;
    std::sort(sorted.begin(), sorted.end(), less);
    std::sort(sorted_shuffled.begin(), sorted_shuffled.end(), less);
    CHECK(sorted == sorted_shuffled);

    write_text(dir / "bad.csv", "x,y\n1,2,3\n");
    CHECK_THROWS_AS(read_points_csv(dir / "bad.csv"), ParseError);
}

TEST_CASE("diagram JSON") {
    const AnnotatedDiagram d = compute_diagram(oracle::example_complex(), WeightVector(oracle::example_weights()));
    const Json j = diagram_to_json(d);
    // The essential class is written as the string "inf".
    bool has_inf = false;
    for (const auto& p : j["points"]) has_inf = has_inf || p["death"] == "inf";
    CHECK(has_inf);
    check_same(diagram_from_json(j), d);
    check_same(diagram_from_json(Json::parse(j.dump())), d);

    TempDir dir;
    write_json(dir / "d.json", j);
    check_same(diagram_from_json(read_json(dir / "d.json")), d);
    write_text(dir / "broken.json", "{\"points\": [");
    CHECK_THROWS_AS(read_json(dir / "broken.json"), ParseError);
    CHECK_THROWS_AS(diagram_from_json(Json{{"points", {{{"birth", 0}}}}}), ParseError);
}

TEST_CASE("matrix, heatmap and raster CSVs") {
    TempDir dir;
    const std::vector<std::vector<double>> rows = {{0.1, -2.5e-7, 3.0}, {1.0 / 3.0, 0.0, 1e10}};
    write_matrix_csv(dir / "m.csv", rows);
    CHECK(read_matrix_csv(dir / "m.csv") == rows);

    const std::vector<std::vector<int>> ints = {{-1, 0, 7}, {3, -1, 2}};
    write_int_matrix_csv(dir / "a.csv", ints);
    CHECK(read_int_matrix_csv(dir / "a.csv") == ints);

    const std::vector<double> w = {0.0, 0.75, 1.0 / 3.0, -4.0};
    write_heatmap_csv(dir / "h.csv", w);
    CHECK(read_heatmap_csv(dir / "h.csv") == w);
    write_text(dir / "gap.csv", "simplex_index,weight\n0,1\n2,1\n");
    CHECK_THROWS_AS(read_heatmap_csv(dir / "gap.csv"), ParseError);

    const RasterGrid grid{-1.0, 1.0, 3};
    std::vector<double> heat(9);
    for (std::size_t i = 0; i < heat.size(); ++i) heat[i] = 0.1 * static_cast<double>(i) - 0.3;
    write_raster_csv(heat, grid, dir / "r.csv");
    CHECK(read_raster_csv(dir / "r.csv", grid) == heat);
    CHECK_THROWS_AS(read_raster_csv(dir / "r.csv", RasterGrid{-1.0, 1.0, 4}), ParseError);
    CHECK_THROWS_AS(read_raster_csv(dir / "r.csv", RasterGrid{-1.0, 1.0, 2}), ParseError);
}

TEST_CASE("model and feature spec JSON") {
    LinearModel m;
    m.f = {0.1, -1.0 / 7.0, 2e-9};
    m.b = -0.3;
    m.kind = "svr";
    m.options.lambda = 1e-5;
    m.options.epochs = 40;
    m.options.seed = 123456789012345ULL;
    m.options.epsilon_tube = 0.02;
    const LinearModel back = model_from_json(Json::parse(model_to_json(m).dump()));
    CHECK(back.f == m.f);
    CHECK(back.b == m.b);
    CHECK(back.kind == "svr");
    CHECK(back.options.lambda == m.options.lambda);
    CHECK(back.options.epochs == 40);
    CHECK(back.options.seed == m.options.seed);
    CHECK(back.options.epsilon_tube == 0.02);
    CHECK_THROWS_AS(model_from_json(Json{{"f", {1.0}}}), ParseError);

    LandscapeFeature l;
    l.degree = 0;
    l.grid = {0.05, 0.7, 30, 4};
    const FeatureSpec ls = feature_spec_from_json(Json::parse(feature_spec_to_json(l).dump()));
    const auto* lb = std::get_if<LandscapeFeature>(&ls);
    REQUIRE(lb);
    CHECK(lb->degree == 0);
    CHECK(lb->grid.t_min == 0.05);
    CHECK(lb->grid.t_max == 0.7);
    CHECK(lb->grid.n_t == 30);
    CHECK(lb->grid.n_levels == 4);

    const FeatureSpec dv = feature_spec_from_json(feature_spec_to_json(DeathVectorFeature{12}));
    REQUIRE(std::holds_alternative<DeathVectorFeature>(dv));
    CHECK(std::get<DeathVectorFeature>(dv).length == 12);
    CHECK_THROWS_AS(feature_spec_from_json(Json{{"type", "image"}}), ParseError);
}

TEST_CASE("write_json and read_text") {
    TempDir dir;
    write_json(dir / "x.json", Json{{"a", 1}});
    const std::string text = read_text(dir / "x.json");
    CHECK(text.back() == '\n');
    CHECK(read_json(dir / "x.json")["a"] == 1);
    CHECK_THROWS_AS(write_json(dir / "no/such/dir.json", Json{}), IoError);
    CHECK_THROWS_AS(read_text(dir / "absent"), IoError);
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phm/errors.hpp"
#include "phm/heatmap.hpp"

using namespace phm;
using oracle::idx;

namespace {

AnnotatedDiagram example_diagram() {
    return compute_diagram(oracle::example_complex(), WeightVector(oracle::example_weights()));
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("heatmap: worked example") {
    const SimplicialComplex K = oracle::example_complex();
    const AnnotatedDiagram d = example_diagram();

    // Only the (7, 10) point, persistence 3, over {e, f, g, h}.
    std::vector<double> only(d.points.size(), 0.0);
    for (std::size_t i = 0; i < d.points.size(); ++i)
        if (d.points[i].birth == 7) only[i] = 3.0;
    const HeatmapWeights one = heatmap(d, K, 1, PointWeightsF{only}, ChainSelector::RepCycle);
    for (char c : std::string("efgh")) CHECK(one.w[idx(c)] == 0.75);
    CHECK(sum(one.w) == 3.0);

    const HeatmapWeights pers = heatmap(d, K, 1, PersistenceF{}, ChainSelector::RepCycle);
    CHECK(pers.w[idx('g')] == 0.75);
    CHECK(pers.w[idx('e')] == doctest::Approx(0.75 + 1.0 / 3.0));
    CHECK(pers.total_F == 4.0);

    const HeatmapWeights births = heatmap(d, K, 1, ConstantF{1.0}, ChainSelector::BirthSimplex);
    for (std::size_t s = 0; s < K.size(); ++s) CHECK(births.w[s] == ((s == idx('h') || s == idx('i')) ? 1.0 : 0.0));

    const HeatmapWeights deaths = heatmap(d, K, 1, ConstantF{1.0}, ChainSelector::DeathSimplex);
    CHECK(deaths.w[idx('j')] == 1.0);
    CHECK(deaths.w[idx('k')] == 1.0);

    const HeatmapWeights bounding = heatmap(d, K, 1, ConstantF{2.0}, ChainSelector::BoundingChain);
    CHECK(bounding.w[idx('j')] == 3.0);
    CHECK(bounding.w[idx('k')] == 1.0);
}

TEST_CASE("heatmap: empty diagram, essential classes and zero persistence") {
    const SimplicialComplex K = oracle::example_complex();
    const HeatmapWeights empty = heatmap(AnnotatedDiagram{}, K, 1, ConstantF{1.0}, ChainSelector::RepCycle);
    CHECK(empty.w == std::vector<double>(K.size(), 0.0));
    CHECK(heatmap_as_point(empty).size() == K.size());

    const AnnotatedDiagram d = example_diagram();
    // Degree 0: three finite points; the essential class only when asked, and
    // never on a death-side chain.
    CHECK(heatmap(d, K, 0, ConstantF{1.0}, ChainSelector::RepCycle).total_F == 3.0);
    HeatmapOptions with_essential;
    with_essential.include_essential = true;
    CHECK(heatmap(d, K, 0, ConstantF{1.0}, ChainSelector::RepCycle, with_essential).total_F == 4.0);
    CHECK(heatmap(d, K, 0, ConstantF{1.0}, ChainSelector::BoundingChain, with_essential).total_F == 3.0);

    // Ties in weights give zero-persistence points.
    const SimplicialComplex tri = build_complex({{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}});
    const WeightVector w({0, 0, 0, 1, 1, 1, 1});
    const AnnotatedDiagram z = compute_diagram(tri, w);
    HeatmapOptions drop;
    drop.drop_zero_persistence = true;
    CHECK(heatmap(z, tri, 1, ConstantF{1.0}, ChainSelector::RepCycle).total_F == 1.0);
    CHECK(heatmap(z, tri, 1, ConstantF{1.0}, ChainSelector::RepCycle, drop).total_F == 0.0);
}

TEST_CASE("heatmap: provenance and corrupt input") {
    const SimplicialComplex K = oracle::example_complex();
    AnnotatedDiagram d = example_diagram();
    HeatmapOptions opts;
    opts.record_provenance = true;
    const HeatmapWeights hw = heatmap(d, K, 1, PersistenceF{}, ChainSelector::RepCycle, opts);
    CHECK(hw.provenance[idx('e')].size() == 2);
    CHECK(hw.provenance[idx('a')].empty());

    for (auto& p : d.points)
        if (p.degree == 1) p.rep_cycle.simplices.clear();
    CHECK_THROWS_AS(heatmap(d, K, 1, PersistenceF{}, ChainSelector::RepCycle), EmptyChain);
    CHECK_THROWS_AS(heatmap(d, K, 1, PointWeightsF{{1.0}}, ChainSelector::RepCycle), DimensionMismatch);
}

TEST_CASE("heatmap: mass, linearity and support on random filtrations") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const SimplicialComplex K = oracle::random_complex(rng);
        const WeightVector w(oracle::random_monotone_weights(K, rng));
        const AnnotatedDiagram d = compute_diagram(K, w);
        std::vector<double> f1(d.points.size()), f2(d.points.size()), f12(d.points.size());
        for (std::size_t i = 0; i < f1.size(); ++i) {
            // Multiples of 1/8 so that every sum below is exact.
            f1[i] = std::round(u(rng) * 8) / 8;
            f2[i] = std::round(u(rng) * 8) / 8;
            f12[i] = f1[i] + f2[i];
        }
        for (int degree = 0; degree <= 1; ++degree)
            for (ChainSelector sel : {ChainSelector::BirthSimplex, ChainSelector::DeathSimplex,
                                      ChainSelector::RepCycle, ChainSelector::BoundingChain}) {
                const HeatmapWeights a = heatmap(d, K, degree, PointWeightsF{f1}, sel);
                const HeatmapWeights b = heatmap(d, K, degree, PointWeightsF{f2}, sel);
                const HeatmapWeights ab = heatmap(d, K, degree, PointWeightsF{f12}, sel);
                CHECK(sum(a.w) == doctest::Approx(a.total_F).epsilon(1e-12));
                for (std::size_t s = 0; s < K.size(); ++s) CHECK(ab.w[s] == doctest::Approx(a.w[s] + b.w[s]).epsilon(1e-12));

                std::set<std::size_t> support;
                Z2Chain scratch;
                for (const auto& p : d.points) {
                    if (p.degree != degree || p.essential()) continue;
                    if (const Z2Chain* c = select_chain(p, sel, scratch))
                        support.insert(c->simplices.begin(), c->simplices.end());
                }
                for (std::size_t s = 0; s < K.size(); ++s)
                    if (a.w[s] != 0.0) CHECK(support.count(s));
            }
    }
}

TEST_CASE("heatmap_at repairs its input") {
    const SimplicialComplex K = oracle::example_complex();
    const std::vector<double> w = oracle::example_weights();
    HeatmapConfig cfg;
    const HeatmapWeights direct = heatmap(example_diagram(), K, 1, PersistenceF{}, ChainSelector::RepCycle);
    CHECK(heatmap_at(K, w, cfg).w == direct.w);
    // Lowering an edge below its vertices changes nothing after repair.
    std::vector<double> x = w;
    x[idx('e')] = -5;  // repaired back to max(a, b) = 1
    CHECK(heatmap_at(K, x, cfg).w == heatmap_at(K, monotone_repair(K, x).values, cfg).w);
}

TEST_CASE("selector names") {
    for (ChainSelector s : {ChainSelector::BirthSimplex, ChainSelector::DeathSimplex, ChainSelector::RepCycle,
                            ChainSelector::BoundingChain})
        CHECK(parse_selector(to_string(s)) == s);
    CHECK_THROWS_AS(parse_selector("nope"), InvalidArgument);
}

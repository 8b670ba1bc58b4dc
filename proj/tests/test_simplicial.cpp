#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phm/errors.hpp"
#include "phm/simplicial.hpp"

using namespace phm;

TEST_CASE("build_complex: worked example") {
    const SimplicialComplex K = oracle::example_complex();
    CHECK(K.size() == 11);
    CHECK(K.max_dim() == 2);
    CHECK(K.simplex(oracle::idx('j')).vertices == std::vector<VertexId>{0, 1, 2});
    // j = abc has faces e=ab, f=bc, i=ac.
    auto faces = K.faces(oracle::idx('j'));
    std::sort(faces.begin(), faces.end());
    CHECK(faces == oracle::letters("efi"));
    CHECK(K.faces(oracle::idx('a')).empty());
    for (std::size_t i = 0; i < K.size(); ++i) CHECK(K.simplex(i).order_index == i);
    CHECK(K.find({0, 2, 3}) == oracle::idx('k'));
    CHECK_FALSE(K.find({1, 3}).has_value());
    CHECK(K.vertex_ids() == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("build_complex: small cases and errors") {
    const SimplicialComplex one = build_complex({{0}});
    CHECK(one.size() == 1);
    CHECK(one.simplex(0).dim() == 0);

    CHECK_THROWS_AS(build_complex({{0}, {0, 1}}), MissingFace);
    CHECK_THROWS_AS(build_complex({{0}, {1}, {1, 0}, {0, 1}}), DuplicateSimplex);
    CHECK_THROWS_AS(build_complex({{}}), InvalidSimplex);
    CHECK_THROWS_AS(build_complex({{0}, {0, 0}}), InvalidSimplex);

    // Unsorted vertex lists are accepted; cofaces may precede faces in the total order.
    const SimplicialComplex K = build_complex({{1, 0}, {0}, {1}});
    CHECK(K.simplex(0).vertices == std::vector<VertexId>{0, 1});
    CHECK(K.faces(0).size() == 2);
}

TEST_CASE("validate_monotone") {
    const SimplicialComplex K = oracle::example_complex();
    CHECK(validate_monotone(K, WeightVector(oracle::example_weights())));
    CHECK(validate_monotone(K, WeightVector(Vec(11, 0.0))));
    const SimplicialComplex edge = build_complex({{0}, {1}, {0, 1}});
    CHECK_FALSE(validate_monotone(edge, WeightVector({5, 0, 1})));
    CHECK_THROWS_AS(validate_monotone(edge, WeightVector({0, 1})), LengthMismatch);
}

TEST_CASE("monotone_repair") {
    const SimplicialComplex edge = build_complex({{0}, {1}, {0, 1}});
    CHECK(monotone_repair(edge, Vec{2, 0, 1}).values == Vec{2, 0, 2});
    CHECK(monotone_repair(edge, Vec{3, 3, 3}).values == Vec{3, 3, 3});

    const SimplicialComplex K = oracle::example_complex();
    const Vec w = oracle::example_weights();
    CHECK(monotone_repair(K, w).values == w);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Vec x(K.size()), bumped(K.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = normal(rng);
            bumped[i] = x[i] + std::abs(normal(rng));
        }
        const WeightVector r = monotone_repair(K, x);
        CHECK(validate_monotone(K, r));
        CHECK(monotone_repair(K, r.values).values == r.values);
        const WeightVector rb = monotone_repair(K, bumped);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(r[i] >= x[i]);
            CHECK(r[i] <= rb[i]);
        }
    }
}

TEST_CASE("filtration_order") {
    const SimplicialComplex K = oracle::example_complex();
    const FiltrationOrder o = filtration_order(K, WeightVector(oracle::example_weights()));
    std::string names;
    for (std::size_t i : o.permutation) names += static_cast<char>('a' + i);
    CHECK(names == "abcedgfhijk");
    for (std::size_t p = 0; p < o.size(); ++p) CHECK(o.position[o.permutation[p]] == p);

    // Ties resolve to the total order.
    const FiltrationOrder flat = filtration_order(K, WeightVector(Vec(11, 1.0)));
    for (std::size_t i = 0; i < flat.size(); ++i) CHECK(flat.permutation[i] == i);
    const SimplicialComplex two = build_complex({{0}, {1}});
    CHECK(filtration_order(two, WeightVector({1, 1})).permutation == std::vector<std::size_t>{0, 1});

    const SimplicialComplex edge = build_complex({{0}, {1}, {0, 1}});
    CHECK_THROWS_AS(filtration_order(edge, WeightVector({5, 0, 1})), NotMonotone);
}

TEST_CASE("filtration_order puts faces first and is deterministic") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const SimplicialComplex K = oracle::random_complex(rng);
        const WeightVector w(oracle::random_monotone_weights(K, rng));
        const FiltrationOrder o = filtration_order(K, w);
        for (std::size_t s = 0; s < K.size(); ++s)
            for (std::size_t f : K.faces(s)) CHECK(o.position[f] < o.position[s]);
        CHECK(filtration_order(K, w).permutation == o.permutation);
    }
}

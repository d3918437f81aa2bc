#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bipersist/interlevel.hpp"

using namespace bipersist;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("critical values") {
    CHECK(critical_values(fixture_torus()) == std::vector<double>{1, 2, 3, 4});
    CHECK(critical_values(FilteredComplex{}).empty());

    std::map<int, std::vector<Generator>> gens;
    gens[0] = {{"a", 0, 7.0}, {"b", 0, 7.0}};
    auto c = FilteredComplex::from_parts(std::move(gens), {});
    CHECK(critical_values(c) == std::vector<double>{7.0});
}

TEST_CASE("interlevel homology dimensions") {
    auto heart = fixture_heart_circle();
    CHECK(interlevel_dimension(heart, 0, {1.5, 2.5}) == 1);  // the class of p2
    CHECK(interlevel_dimension(heart, 0, {3.0, 2.0}) == 0);  // empty window
    CHECK(interlevel_dimension(fixture_torus(), 1, {-kInf, kInf}) == 2);
    CHECK(interlevel_dimension(fixture_h_sphere(), 1, {2.5, 3.5}) == 1);

    // Windows free of critical values carry nothing.
    CHECK(interlevel_dimension(heart, 0, {2.1, 2.9}) == 0);
    CHECK(interlevel_dimension(heart, 1, {4.5, 90.0}) == 0);

    auto pres = interlevel_homology(heart, 0, {1.5, 2.5});
    CHECK(pres.dimension == 1);
    CHECK(pres.support.size() == 1);
    CHECK(pres.cycle_basis.size() == 1);
}

TEST_CASE("structure map ranks") {
    auto heart = fixture_heart_circle();
    // Identity map has rank = dimension.
    CHECK(structure_map_rank(heart, 0, {1.5, 2.5}, {1.5, 2.5}) == 1);
    // p2 leaves the window: rank 0.
    CHECK(structure_map_rank(heart, 0, {1.5, 2.5}, {2.5, 3.5}) == 0);
    // Sublevel inclusion on the torus keeps the p1 class alive.
    CHECK(structure_map_rank(fixture_torus(), 0, {-kInf, 1.0}, {-kInf, 4.0}) == 1);

    CHECK_THROWS_AS(structure_map_rank(heart, 0, {1.5, 2.5}, {0.5, 3.5}), std::invalid_argument);
}

TEST_CASE("comparison ranks") {
    auto heart = fixture_heart_circle();
    CHECK(comparison_rank(heart, 0, {1.5, 2.5}, 0.0) == interlevel_dimension(heart, 0, {1.5, 2.5}));
    CHECK(comparison_rank(heart, 0, {1.5, 2.5}, 0.4) == 1);
    CHECK(comparison_rank(heart, 0, {1.5, 2.5}, 1.0) == 0);
}

TEST_CASE("rank table against the torus") {
    auto table = rank_table(fixture_torus(), 0);
    const auto& g = table.grid;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const int expected = (g[i] < 1.0 && 1.0 <= g[j]) ? 1 : 0;
            CHECK(table.dims[i][j] == expected);
        }
    CHECK_FALSE(table.hmap_ranks.empty());

    auto empty_table = rank_table(FilteredComplex{}, 0);
    for (std::size_t i = 0; i < empty_table.grid.size(); ++i)
        for (std::size_t j = i + 1; j < empty_table.grid.size(); ++j)
            CHECK(empty_table.dims[i][j] == 0);
}

TEST_CASE("dims constant on grid cells") {
    // Two interior samples per cell between consecutive criticals agree.
    for (const auto& c : {fixture_heart_circle(), fixture_h_sphere()}) {
        auto crit = critical_values(c);
        for (int k = 0; k <= 2; ++k)
            for (std::size_t i = 0; i + 1 < crit.size(); ++i)
                for (std::size_t j = i; j + 1 < crit.size(); ++j) {
                    const double a1 = crit[i] + 0.25 * (crit[i + 1] - crit[i]);
                    const double a2 = crit[i] + 0.75 * (crit[i + 1] - crit[i]);
                    const double b1 = crit[j] + 0.25 * (crit[j + 1] - crit[j]);
                    const double b2 = crit[j] + 0.75 * (crit[j + 1] - crit[j]);
                    CHECK(interlevel_dimension(c, k, {a1, b1}) ==
                          interlevel_dimension(c, k, {a2, b2}));
                }
    }
}

TEST_CASE("functoriality of structure-map ranks") {
    std::mt19937_64 rng(3);
    auto check_complex = [&](const FilteredComplex& c) {
        auto grid = verification_grid(c);
        const int n = static_cast<int>(grid.size());
        for (int k = 0; k <= 3; ++k)
            for (int trial = 0; trial < 40; ++trial) {
                int a1 = static_cast<int>(rng() % n), a2 = static_cast<int>(rng() % n),
                    a3 = static_cast<int>(rng() % n);
                if (a1 > a2) std::swap(a1, a2);
                if (a2 > a3) std::swap(a2, a3);
                if (a1 > a2) std::swap(a1, a2);
                int b1 = static_cast<int>(rng() % n), b2 = static_cast<int>(rng() % n),
                    b3 = static_cast<int>(rng() % n);
                if (b1 > b2) std::swap(b1, b2);
                if (b2 > b3) std::swap(b2, b3);
                if (b1 > b2) std::swap(b1, b2);
                Window w1{grid[a1], grid[b1]}, w2{grid[a2], grid[b2]}, w3{grid[a3], grid[b3]};
                const int r13 = structure_map_rank(c, k, w1, w3);
                CHECK(r13 <= structure_map_rank(c, k, w1, w2));
                CHECK(r13 <= structure_map_rank(c, k, w2, w3));
            }
    };
    check_complex(fixture_h_sphere());
    check_complex(random_complex(17));
}

TEST_CASE("long exact sequence dimension identities") {
    // For nested windows (a,b] -> (a,c] -> (b,c]: subadditivity per degree and
    // the exact alternating-sum identity across degrees.
    for (const auto& c : {fixture_heart_circle(), fixture_h_sphere(), random_complex(23)}) {
        auto grid = verification_grid(c);
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i; j < grid.size(); ++j)
                for (std::size_t l = j; l < grid.size(); ++l) {
                    const double a = grid[i], b = grid[j], cc = grid[l];
                    long alternating = 0;
                    for (int k = -1; k <= 4; ++k) {
                        const int ab = interlevel_dimension(c, k, {a, b});
                        const int ac = interlevel_dimension(c, k, {a, cc});
                        const int bc = interlevel_dimension(c, k, {b, cc});
                        CHECK(ac <= ab + bc);
                        alternating += (k % 2 == 0 ? 1 : -1) * (ab - ac + bc);
                    }
                    CHECK(alternating == 0);
                }
    }
}

TEST_CASE("weak exactness on fixtures and degenerate quads") {
    for (const auto& c : {fixture_torus(), fixture_heart_circle(), fixture_h_sphere()}) {
        auto grid = verification_grid(c);
        for (int k : c.degrees()) {
            CHECK(check_weak_exactness(c, k, {grid[2], grid[4], grid[3], grid[6]}).ok);
            CHECK(check_weak_exactness(c, k, {2.0, 2.0, 3.0, 3.0}).ok);  // identity maps
        }
    }
    CHECK_THROWS_AS(check_weak_exactness(fixture_torus(), 0, {3.0, 2.0, 1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("middle exactness admissibility") {
    auto heart = fixture_heart_circle();
    CHECK(check_middle_exactness(heart, 0, {1.5, 2.5, 3.0, 3.5}).ok);
    CHECK(check_middle_exactness(heart, 0, {2.0, 2.0, 2.0, 2.0}).ok);
    CHECK_THROWS_AS(check_middle_exactness(heart, 0, {1.0, 3.0, 2.0, 4.0}),
                    std::invalid_argument);
}

TEST_CASE("exactness on random complexes and quads") {
    std::mt19937_64 rng(41);
    int weak_checked = 0, middle_checked = 0;
    for (std::uint64_t seed = 100; weak_checked < 60; ++seed) {
        auto c = random_complex(seed);
        auto grid = verification_grid(c);
        const int n = static_cast<int>(grid.size());
        for (int t = 0; t < 3; ++t) {
            int a = static_cast<int>(rng() % n), a2 = static_cast<int>(rng() % n);
            int b = static_cast<int>(rng() % n), b2 = static_cast<int>(rng() % n);
            if (a > a2) std::swap(a, a2);
            if (b > b2) std::swap(b, b2);
            const int k = static_cast<int>(rng() % 4);
            auto res = check_weak_exactness(c, k, {grid[a], grid[a2], grid[b], grid[b2]});
            CHECK_MESSAGE(res.ok, "seed ", seed, " witness ", res.witness);
            ++weak_checked;
            if (grid[a2] <= grid[b]) {
                auto mid = check_middle_exactness(c, k, {grid[a], grid[a2], grid[b], grid[b2]});
                CHECK_MESSAGE(mid.ok, "seed ", seed, " witness ", mid.witness);
                ++middle_checked;
            }
        }
    }
    CHECK(middle_checked > 10);
}

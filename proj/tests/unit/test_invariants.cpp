#include <doctest.h>

#include <cmath>
#include <limits>

#include "bipersist/invariants.hpp"

using namespace bipersist;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("fixture invariants") {
    auto torus = rectangle_barcode(fixture_torus());
    CHECK(spectral_invariant_set(torus) == std::set<double>{1, 2, 3, 4});
    CHECK(boundary_depth(torus) == 0.0);
    CHECK(non_cycle_depth(torus) == 0.0);

    auto heart = rectangle_barcode(fixture_heart_circle());
    CHECK(spectral_invariant_set(heart) == std::set<double>{1, 4});
    CHECK(boundary_depth(heart) == 1.0);
    CHECK(non_cycle_depth(heart) == 1.0);
    CHECK(spectral_spread_generator(heart, "p3") == 1.0);
    CHECK(std::isinf(spectral_spread_generator(heart, "p1")));
    CHECK(std::isinf(spectral_spread(heart)));

    auto sphere = rectangle_barcode(fixture_h_sphere());
    CHECK(spectral_invariant_set(sphere) == std::set<double>{1, 6});
    CHECK(boundary_depth(sphere) == 1.0);
    CHECK(non_cycle_depth(sphere) == 1.0);
    CHECK(spectral_spread_generator(sphere, "p4") == 1.0);

    CHECK_THROWS_AS(spectral_spread_generator(heart, "nope"), std::invalid_argument);
}

TEST_CASE("spread of explicit barcodes") {
    RectangleBarcode rb;
    rb.rectangles.emplace_back(1, 3.0, 1.0, kInf, "x");
    rb.rectangles.emplace_back(1, 5.0, 2.0, kInf, "y");
    CHECK(spectral_spread(rb) == 2.0);
    CHECK(spectral_spread(RectangleBarcode{}) == 0.0);
    CHECK(spectral_invariant_set(RectangleBarcode{}).empty());
}

TEST_CASE("boundary depth equals the longest finite sublevel bar") {
    for (const auto& c : {fixture_heart_circle(), fixture_h_sphere(), random_complex(31),
                          random_complex(32), random_complex(33)}) {
        auto bars = sublevel_barcode(c);
        double longest = 0.0;
        for (const auto& b : bars)
            if (std::isfinite(b.death)) longest = std::max(longest, b.length());
        CHECK(boundary_depth(rectangle_barcode(c)) == longest);

        // Spectral set = births of the infinite bars.
        std::set<double> births;
        for (const auto& b : bars)
            if (std::isinf(b.death)) births.insert(b.birth);
        CHECK(spectral_invariant_set(rectangle_barcode(c)) == births);
    }
}

TEST_CASE("spread_bruteforce on fixtures") {
    auto heart = fixture_heart_circle();
    CHECK(std::isinf(spread_bruteforce(heart, 1)));  // R(4; inf, inf)
    CHECK(std::isinf(spread_bruteforce(heart, 0)));  // R(1; inf, inf)

    auto sphere = fixture_h_sphere();
    CHECK(spread_bruteforce(sphere, 1) == 1.0);  // min over R(3;1,inf), R(4;inf,1)

    CHECK(spread_bruteforce(FilteredComplex{}, 0) == 0.0);
    CHECK(spread_bruteforce(heart, 7) == 0.0);  // no generators in that degree
}

TEST_CASE("spread cross-validation against the barcode") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
        auto c = random_complex(seed);
        auto rb = rectangle_barcode(c);
        for (int k = 0; k <= 4; ++k) {
            double expect = 0.0;
            for (const auto& r : rb.in_degree(k))
                expect = std::max(expect, std::min(r.ell1(), r.ell2()));
            CHECK(spread_bruteforce(c, k) == expect);
        }
    }
}

TEST_CASE("invariants scale linearly") {
    auto heart = fixture_heart_circle();
    auto base = invariant_report(rectangle_barcode(heart));
    auto doubled = invariant_report(rectangle_barcode(scale(heart, 2.0)));
    CHECK(doubled.boundary_depth == 2 * base.boundary_depth);
    CHECK(doubled.non_cycle_depth == 2 * base.non_cycle_depth);
    std::set<double> scaled_set;
    for (double c : base.spectral_set) scaled_set.insert(2 * c);
    CHECK(doubled.spectral_set == scaled_set);
    CHECK(std::isinf(doubled.spread_global));

    auto sphere = fixture_h_sphere();
    auto s_base = invariant_report(rectangle_barcode(sphere));
    auto s_doubled = invariant_report(rectangle_barcode(scale(sphere, 2.0)));
    for (const auto& [name, v] : s_base.spread_per_generator)
        if (std::isfinite(v)) CHECK(s_doubled.spread_per_generator.at(name) == 2 * v);
}

TEST_CASE("invariant report document") {
    auto report = invariant_report(rectangle_barcode(fixture_heart_circle()));
    auto doc = invariant_report_to_json(report);
    CHECK(doc.find("\"boundary_depth\": 1.0") != std::string::npos);
    CHECK(doc.find("\"spread_global\": \"inf\"") != std::string::npos);
    CHECK(doc.find("\"p3\": 1.0") != std::string::npos);
}

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bipersist/gf2.hpp"

using namespace bipersist::gf2;

namespace {

BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    BitMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m.set(i, j++, v != 0);
        ++i;
    }
    return m;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() & 1) m.set(i, j, true);
    return m;
}

}  // namespace

TEST_CASE("rank of small matrices") {
    CHECK(rank(BitMatrix(0, 0)) == 0);
    CHECK(rank(from_rows({{1, 0}, {0, 1}})) == 2);
    CHECK(rank(from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(from_rows({{1, 0}, {0, 1}})).empty());

    auto k = kernel_basis(from_rows({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0].get(0));
    CHECK(k[0].get(1));

    auto k0 = kernel_basis(BitMatrix(0, 3));
    REQUIRE(k0.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(k0[i].get(i));
        CHECK(k0[i].popcount() == 1);
    }
}

TEST_CASE("solve") {
    auto id = from_rows({{1, 0}, {0, 1}});
    BitVector b(2);
    b.set(0, true);
    auto x = solve(id, b);
    REQUIRE(x.has_value());
    CHECK(id.apply(*x) == b);

    auto onecol = from_rows({{1, 1}});
    BitVector b1(1);
    b1.set(0, true);
    auto x1 = solve(onecol, b1);
    REQUIRE(x1.has_value());
    CHECK(onecol.apply(*x1) == b1);

    auto zero = BitMatrix(1, 1);
    CHECK_FALSE(solve(zero, b1).has_value());

    CHECK_THROWS_AS(solve(id, b1), std::invalid_argument);
}

TEST_CASE("span membership") {
    BitVector e0 = BitVector::unit(2, 0), e1 = BitVector::unit(2, 1);
    std::vector<BitVector> gens{e0};
    auto span = image_membership_matrix(2, gens);
    CHECK(span.dimension() == 1);
    CHECK(span.contains(e0));
    CHECK_FALSE(span.contains(e1));

    auto empty = image_membership_matrix(3, {});
    CHECK(empty.dimension() == 0);
    CHECK(empty.contains(BitVector(3)));
}

TEST_CASE("rank properties on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t r = rng() % 9, c = rng() % 9;
        auto m = random_matrix(rng, r, c);
        CHECK(rank(m) == rank(m.transposed()));
        CHECK(static_cast<std::size_t>(rank(m)) + kernel_basis(m).size() == c);
        for (const auto& v : kernel_basis(m)) CHECK(m.apply(v).is_zero());

        // Anything of the form m*w is solvable, and the solution checks out.
        if (c > 0) {
            BitVector w(c);
            for (std::size_t j = 0; j < c; ++j)
                if (rng() & 1) w.set(j, true);
            auto b = m.apply(w);
            auto x = solve(m, b);
            REQUIRE(x.has_value());
            CHECK(m.apply(*x) == b);
        }
    }
}

TEST_CASE("span insert tracks dimension growth") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        Span span(n);
        BitMatrix collected(n, 0);
        std::vector<BitVector> vecs;
        for (int i = 0; i < 10; ++i) {
            BitVector v(n);
            for (std::size_t j = 0; j < n; ++j)
                if (rng() & 1) v.set(j, true);
            span.insert(v);
            vecs.push_back(v);
            CHECK(span.contains(v));
        }
        BitMatrix m(n, vecs.size());
        for (std::size_t j = 0; j < vecs.size(); ++j) m.set_column(j, vecs[j]);
        CHECK(span.dimension() == rank(m));
    }
}

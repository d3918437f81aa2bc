#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bipersist/complex.hpp"
#include "bipersist/gf2.hpp"

namespace bipersist {

/// H_k of the quotient complex over an action window, presented on the
/// canonical in-window generator coordinates. Because the filtration is the
/// max over a fixed orthogonal basis, the quotient boundary is just the
/// index-restricted matrix; this is the one place that assumption is used.
struct HomologyPresentation {
    Window window;
    int degree = 0;
    std::vector<int> support;                   // in-window positions into generators(degree)
    std::vector<gf2::BitVector> cycle_basis;    // kernel of the restricted D_k
    gf2::Span boundary_span;                    // image of the restricted D_{k+1}
    int dimension = 0;
};

/// Sorted, deduplicated filtration values of all generators.
std::vector<double> critical_values(const FilteredComplex& c);

/// Sample grid for exact verification: critical values, midpoints between
/// consecutive ones, the min-1/max+1 sentinels, and the two infinities.
/// All module maps are constant on the cells this grid refines.
std::vector<double> verification_grid(const FilteredComplex& c);

HomologyPresentation interlevel_homology(const FilteredComplex& c, int degree, Window w);

/// Dimension only (skips the kernel basis); equals interlevel_homology(...).dimension.
int interlevel_dimension(const FilteredComplex& c, int degree, Window w);

/// Rank of the structure map H_k^{w1} -> H_k^{w2}; requires w1.a <= w2.a and
/// w1.b <= w2.b (throws std::invalid_argument otherwise). At the chain level
/// the map keeps shared generators and kills the ones leaving the window.
int structure_map_rank(const FilteredComplex& c, int degree, Window w1, Window w2);
int structure_map_rank(const HomologyPresentation& from, const HomologyPresentation& to);

/// Rank of the comparison map between (a,b] and (a+d,b+d], d >= 0.
int comparison_rank(const FilteredComplex& c, int degree, Window w, double d);

struct RankTable {
    int degree = 0;
    std::vector<double> grid;
    // dims[i][j] = dim H_k^{(grid[i], grid[j]]} for i < j, -1 elsewhere.
    std::vector<std::vector<int>> dims;
    struct MapRank {
        int a1, b1, a2, b2;  // grid indices; window (grid[a], grid[b]]
        int rank;
    };
    std::vector<MapRank> hmap_ranks;
};

/// Exact dimensions over all grid windows plus structure-map ranks over
/// comparable window pairs. All pairs are taken when the grid has at most 25
/// points; larger grids get a seeded sample of 2000 pairs (the O(grid^4)
/// blowup is not worth paying on random corpora).
RankTable rank_table(const FilteredComplex& c, int degree);

struct Quad {
    double a, a_prime, b, b_prime;
};

struct CheckResult {
    bool ok = true;
    std::string witness;  // description of the first failing subspace element
};

/// Image and kernel conditions on the window square (a,b],(a,b'],(a',b],(a',b'];
/// requires a <= a' and b <= b'.
CheckResult check_weak_exactness(const FilteredComplex& c, int degree, Quad q);

/// Exactness of H^{(a,b]} -> H^{(a,b']} (+) H^{(a',b]} -> H^{(a',b']} at the
/// middle; requires a <= a' <= b <= b' (throws otherwise).
CheckResult check_middle_exactness(const FilteredComplex& c, int degree, Quad q);

}  // namespace bipersist

#include "bipersist/interlevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bipersist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> in_window_positions(const FilteredComplex& c, int degree, Window w) {
    std::vector<int> out;
    const auto& gens = c.generators(degree);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (w.a < gens[i].filtration && gens[i].filtration <= w.b) out.push_back(static_cast<int>(i));
    return out;
}

struct Restricted {
    std::vector<int> below, here, above;
    gf2::BitMatrix dk;   // restricted D_degree
    gf2::BitMatrix dk1;  // restricted D_{degree+1}
};

Restricted restrict_boundaries(const FilteredComplex& c, int degree, Window w) {
    Restricted r;
    if (w.empty()) {
        r.dk = gf2::BitMatrix(0, 0);
        r.dk1 = gf2::BitMatrix(0, 0);
        return r;
    }
    r.below = in_window_positions(c, degree - 1, w);
    r.here = in_window_positions(c, degree, w);
    r.above = in_window_positions(c, degree + 1, w);
    r.dk = c.boundary(degree).cols() ? c.boundary(degree).submatrix(r.below, r.here)
                                     : gf2::BitMatrix(r.below.size(), r.here.size());
    r.dk1 = c.boundary(degree + 1).cols() ? c.boundary(degree + 1).submatrix(r.here, r.above)
                                          : gf2::BitMatrix(r.here.size(), r.above.size());
    return r;
}

}  // namespace

std::vector<double> critical_values(const FilteredComplex& c) {
    std::set<double> vals;
    for (int deg : c.degrees())
        for (const auto& g : c.generators(deg)) vals.insert(g.filtration);
    return {vals.begin(), vals.end()};
}

std::vector<double> verification_grid(const FilteredComplex& c) {
    auto crit = critical_values(c);
    std::vector<double> grid;
    grid.push_back(-kInf);
    if (!crit.empty()) {
        grid.push_back(crit.front() - 1.0);
        for (std::size_t i = 0; i < crit.size(); ++i) {
            grid.push_back(crit[i]);
            if (i + 1 < crit.size()) grid.push_back(0.5 * (crit[i] + crit[i + 1]));
        }
        grid.push_back(crit.back() + 1.0);
    }
    grid.push_back(kInf);
    return grid;
}

HomologyPresentation interlevel_homology(const FilteredComplex& c, int degree, Window w) {
    HomologyPresentation p;
    p.window = w;
    p.degree = degree;
    auto r = restrict_boundaries(c, degree, w);
    p.support = std::move(r.here);
    p.cycle_basis = gf2::kernel_basis(r.dk);
    p.boundary_span = gf2::Span(p.support.size());
    for (std::size_t j = 0; j < r.dk1.cols(); ++j) p.boundary_span.insert(r.dk1.column(j));
    p.dimension = static_cast<int>(p.cycle_basis.size()) - p.boundary_span.dimension();
    return p;
}

int interlevel_dimension(const FilteredComplex& c, int degree, Window w) {
    auto r = restrict_boundaries(c, degree, w);
    return static_cast<int>(r.here.size()) - gf2::rank(r.dk) - gf2::rank(r.dk1);
}

namespace {

// Chain-level pushforward between window presentations: identity on shared
// generators, zero on generators leaving the window.
gf2::BitVector push_chain(const HomologyPresentation& from, const HomologyPresentation& to,
                          const gf2::BitVector& v) {
    gf2::BitVector out(to.support.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < from.support.size(); ++i) {
        if (!v.get(i)) continue;
        while (t < to.support.size() && to.support[t] < from.support[i]) ++t;
        if (t < to.support.size() && to.support[t] == from.support[i]) out.set(t, true);
    }
    return out;
}

void require_comparable(Window w1, Window w2) {
    if (!(w1.a <= w2.a && w1.b <= w2.b))
        throw std::invalid_argument("structure map requires comparable windows");
}

}  // namespace

int structure_map_rank(const HomologyPresentation& from, const HomologyPresentation& to) {
    require_comparable(from.window, to.window);
    gf2::Span span = to.boundary_span;
    const int base = span.dimension();
    for (const auto& z : from.cycle_basis) span.insert(push_chain(from, to, z));
    return span.dimension() - base;
}

int structure_map_rank(const FilteredComplex& c, int degree, Window w1, Window w2) {
    require_comparable(w1, w2);
    auto p1 = interlevel_homology(c, degree, w1);
    auto p2 = interlevel_homology(c, degree, w2);
    return structure_map_rank(p1, p2);
}

int comparison_rank(const FilteredComplex& c, int degree, Window w, double d) {
    if (d < 0) throw std::invalid_argument("comparison_rank: d must be nonnegative");
    return structure_map_rank(c, degree, w, Window{w.a + d, w.b + d});
}

RankTable rank_table(const FilteredComplex& c, int degree) {
    RankTable t;
    t.degree = degree;
    t.grid = verification_grid(c);
    const int n = static_cast<int>(t.grid.size());
    t.dims.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            t.dims[i][j] = interlevel_dimension(c, degree, {t.grid[i], t.grid[j]});

    // Presentations are shared across all sampled pairs.
    std::vector<std::vector<HomologyPresentation>> pres(n);
    std::vector<std::vector<bool>> have(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) pres[i].resize(n);
    auto presentation = [&](int i, int j) -> const HomologyPresentation& {
        if (!have[i][j]) {
            pres[i][j] = interlevel_homology(c, degree, {t.grid[i], t.grid[j]});
            have[i][j] = true;
        }
        return pres[i][j];
    };
    auto add_pair = [&](int a1, int b1, int a2, int b2) {
        int r = structure_map_rank(presentation(a1, b1), presentation(a2, b2));
        t.hmap_ranks.push_back({a1, b1, a2, b2, r});
    };

    if (n <= 25) {
        for (int a1 = 0; a1 < n; ++a1)
            for (int b1 = a1 + 1; b1 < n; ++b1)
                for (int a2 = a1; a2 < n; ++a2)
                    for (int b2 = std::max(b1, a2 + 1); b2 < n; ++b2) add_pair(a1, b1, a2, b2);
    } else {
        std::mt19937_64 rng(0x5eed5eedULL);
        std::set<std::tuple<int, int, int, int>> seen;
        int attempts = 0;
        while (static_cast<int>(seen.size()) < 2000 && attempts < 40000) {
            ++attempts;
            int a1 = std::uniform_int_distribution<int>(0, n - 2)(rng);
            int b1 = std::uniform_int_distribution<int>(a1 + 1, n - 1)(rng);
            int a2 = std::uniform_int_distribution<int>(a1, n - 2)(rng);
            int b2 = std::uniform_int_distribution<int>(std::max(b1, a2 + 1), n - 1)(rng);
            if (!seen.insert({a1, b1, a2, b2}).second) continue;
            add_pair(a1, b1, a2, b2);
        }
    }
    return t;
}

namespace {

std::string describe_chain(const FilteredComplex& c, int degree,
                           const HomologyPresentation& pres, const gf2::BitVector& v) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    const auto& gens = c.generators(degree);
    for (std::size_t i = 0; i < pres.support.size(); ++i)
        if (v.get(i)) {
            if (!first) os << "+";
            os << gens[static_cast<std::size_t>(pres.support[i])].name;
            first = false;
        }
    os << "}";
    return os.str();
}

// Subspace of chains (between boundaries and cycles) given by explicit
// spanning vectors; homology subspaces compare as chain spans containing the
// boundary span.
struct Subspace {
    gf2::Span span;
    std::vector<gf2::BitVector> generators;  // spanning set kept for witnesses
};

Subspace make_subspace(std::size_t ambient) { return {gf2::Span(ambient), {}}; }

void subspace_add(Subspace& s, gf2::BitVector v) {
    if (s.span.insert(v)) s.generators.push_back(std::move(v));
}

bool subspace_equal(const Subspace& x, const Subspace& y, gf2::BitVector* witness) {
    for (const auto& v : x.generators)
        if (!y.span.contains(v)) {
            if (witness) *witness = v;
            return false;
        }
    for (const auto& v : y.generators)
        if (!x.span.contains(v)) {
            if (witness) *witness = v;
            return false;
        }
    return true;
}

// Intersection of two spans: solve [U | V] x = 0 and read off the U-part.
Subspace subspace_intersection(const Subspace& x, const Subspace& y, std::size_t ambient) {
    Subspace out = make_subspace(ambient);
    const auto& ub = x.span.basis();
    const auto& vb = y.span.basis();
    gf2::BitMatrix m(ambient, ub.size() + vb.size());
    for (std::size_t j = 0; j < ub.size(); ++j) m.set_column(j, ub[j]);
    for (std::size_t j = 0; j < vb.size(); ++j) m.set_column(ub.size() + j, vb[j]);
    for (const auto& k : gf2::kernel_basis(m)) {
        gf2::BitVector v(ambient);
        for (std::size_t j = 0; j < ub.size(); ++j)
            if (k.get(j)) v ^= ub[j];
        subspace_add(out, std::move(v));
    }
    return out;
}

// Kernel of the induced homology map: cycles of `from` whose pushforward is a
// boundary of `to`, returned as a chain subspace containing from's boundaries.
Subspace homology_kernel(const HomologyPresentation& from, const HomologyPresentation& to) {
    const std::size_t ambient = from.support.size();
    Subspace out = make_subspace(ambient);
    const auto& tb = to.boundary_span.basis();
    gf2::BitMatrix m(to.support.size(), from.cycle_basis.size() + tb.size());
    for (std::size_t j = 0; j < from.cycle_basis.size(); ++j)
        m.set_column(j, push_chain(from, to, from.cycle_basis[j]));
    for (std::size_t j = 0; j < tb.size(); ++j) m.set_column(from.cycle_basis.size() + j, tb[j]);
    for (const auto& k : gf2::kernel_basis(m)) {
        gf2::BitVector v(ambient);
        for (std::size_t j = 0; j < from.cycle_basis.size(); ++j)
            if (k.get(j)) v ^= from.cycle_basis[j];
        subspace_add(out, std::move(v));
    }
    for (const auto& b : from.boundary_span.basis()) subspace_add(out, b);
    return out;
}

Subspace homology_image(const HomologyPresentation& from, const HomologyPresentation& to) {
    Subspace out = make_subspace(to.support.size());
    for (const auto& b : to.boundary_span.basis()) subspace_add(out, b);
    for (const auto& z : from.cycle_basis) subspace_add(out, push_chain(from, to, z));
    return out;
}

}  // namespace

CheckResult check_weak_exactness(const FilteredComplex& c, int degree, Quad q) {
    if (!(q.a <= q.a_prime && q.b <= q.b_prime))
        throw std::invalid_argument("check_weak_exactness: requires a <= a' and b <= b'");
    auto bl = interlevel_homology(c, degree, {q.a, q.b});
    auto tl = interlevel_homology(c, degree, {q.a, q.b_prime});
    auto br = interlevel_homology(c, degree, {q.a_prime, q.b});
    auto tr = interlevel_homology(c, degree, {q.a_prime, q.b_prime});

    CheckResult result;

    // Image condition: Im(diagonal) = Im(top) /\ Im(right).
    auto im_diag = homology_image(bl, tr);
    auto im_cap = subspace_intersection(homology_image(tl, tr), homology_image(br, tr),
                                        tr.support.size());
    gf2::BitVector w;
    if (!subspace_equal(im_diag, im_cap, &w)) {
        result.ok = false;
        result.witness = "image condition fails at class " + describe_chain(c, degree, tr, w);
        return result;
    }

    // Kernel condition: Ker(diagonal) = Ker(up) + Ker(right).
    auto ker_diag = homology_kernel(bl, tr);
    auto ker_sum = homology_kernel(bl, tl);
    for (const auto& v : homology_kernel(bl, br).generators) subspace_add(ker_sum, v);
    if (!subspace_equal(ker_diag, ker_sum, &w)) {
        result.ok = false;
        result.witness = "kernel condition fails at class " + describe_chain(c, degree, bl, w);
    }
    return result;
}

CheckResult check_middle_exactness(const FilteredComplex& c, int degree, Quad q) {
    if (!(q.a <= q.a_prime && q.a_prime <= q.b && q.b <= q.b_prime))
        throw std::invalid_argument("check_middle_exactness: requires a <= a' <= b <= b'");
    auto bl = interlevel_homology(c, degree, {q.a, q.b});
    auto tl = interlevel_homology(c, degree, {q.a, q.b_prime});
    auto br = interlevel_homology(c, degree, {q.a_prime, q.b});
    auto tr = interlevel_homology(c, degree, {q.a_prime, q.b_prime});

    const std::size_t n_tl = tl.support.size();
    const std::size_t n_br = br.support.size();
    const std::size_t ambient = n_tl + n_br;
    auto concat = [&](const gf2::BitVector& u, const gf2::BitVector& v) {
        gf2::BitVector out(ambient);
        for (std::size_t i = 0; i < n_tl; ++i)
            if (u.get(i)) out.set(i, true);
        for (std::size_t i = 0; i < n_br; ++i)
            if (v.get(i)) out.set(n_tl + i, true);
        return out;
    };
    const gf2::BitVector zero_tl(n_tl), zero_br(n_br);

    Subspace image = make_subspace(ambient);
    for (const auto& z : bl.cycle_basis)
        subspace_add(image, concat(push_chain(bl, tl, z), push_chain(bl, br, z)));
    for (const auto& b : tl.boundary_span.basis()) subspace_add(image, concat(b, zero_br));
    for (const auto& b : br.boundary_span.basis()) subspace_add(image, concat(zero_tl, b));

    // Kernel of (u, v) -> pi'(u) + iota'(v) in homology of the top-right window.
    Subspace kernel = make_subspace(ambient);
    const auto& tb = tr.boundary_span.basis();
    gf2::BitMatrix m(tr.support.size(), tl.cycle_basis.size() + br.cycle_basis.size() + tb.size());
    for (std::size_t j = 0; j < tl.cycle_basis.size(); ++j)
        m.set_column(j, push_chain(tl, tr, tl.cycle_basis[j]));
    for (std::size_t j = 0; j < br.cycle_basis.size(); ++j)
        m.set_column(tl.cycle_basis.size() + j, push_chain(br, tr, br.cycle_basis[j]));
    for (std::size_t j = 0; j < tb.size(); ++j)
        m.set_column(tl.cycle_basis.size() + br.cycle_basis.size() + j, tb[j]);
    for (const auto& k : gf2::kernel_basis(m)) {
        gf2::BitVector u(n_tl), v(n_br);
        for (std::size_t j = 0; j < tl.cycle_basis.size(); ++j)
            if (k.get(j)) u ^= tl.cycle_basis[j];
        for (std::size_t j = 0; j < br.cycle_basis.size(); ++j)
            if (k.get(tl.cycle_basis.size() + j)) v ^= br.cycle_basis[j];
        subspace_add(kernel, concat(u, v));
    }
    for (const auto& b : tl.boundary_span.basis()) subspace_add(kernel, concat(b, zero_br));
    for (const auto& b : br.boundary_span.basis()) subspace_add(kernel, concat(zero_tl, b));

    CheckResult result;
    gf2::BitVector w;
    if (!subspace_equal(image, kernel, &w)) {
        result.ok = false;
        result.witness = "middle exactness fails on the window square";
    }
    return result;
}

}  // namespace bipersist

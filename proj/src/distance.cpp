#include "bipersist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace bipersist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool is_delta_trivial(const Rectangle& r, double delta) {
    return r.min_length() <= delta;
}

bool is_delta_trivial(const Bar& b, double delta) { return b.length() <= delta; }

bool are_delta_interleaved(const Rectangle& r1, const Rectangle& r2, double delta) {
    if (is_delta_trivial(r1, 2 * delta) && is_delta_trivial(r2, 2 * delta)) return true;
    if (r1.type != r2.type) return false;
    if (std::abs(r1.c - r2.c) > delta) return false;
    switch (r1.type) {
        case RectangleType::S: return true;
        case RectangleType::B: return std::abs(r1.top() - r2.top()) <= delta;
        case RectangleType::N: return std::abs(r1.left() - r2.left()) <= delta;
    }
    return false;
}

bool are_delta_interleaved(const Bar& b1, const Bar& b2, double delta) {
    if (is_delta_trivial(b1, 2 * delta) && is_delta_trivial(b2, 2 * delta)) return true;
    const double death_gap = (std::isinf(b1.death) && std::isinf(b2.death))
                                 ? 0.0
                                 : std::abs(b1.death - b2.death);
    return std::abs(b1.birth - b2.birth) <= delta && death_gap <= delta;
}

std::vector<double> oracle_grid(const Rectangle& r1, const Rectangle& r2, double delta) {
    std::set<double> vals;
    auto add_translates = [&](double e) {
        for (int k = -2; k <= 2; ++k) vals.insert(e + k * delta);
    };
    for (const Rectangle* r : {&r1, &r2}) {
        add_translates(r->c);
        if (std::isfinite(r->left())) add_translates(r->left());
        if (std::isfinite(r->top())) add_translates(r->top());
    }
    const double lo = *vals.begin() - 1.0, hi = *vals.rbegin() + 1.0;
    vals.insert(lo);
    vals.insert(hi);
    std::vector<double> grid(vals.begin(), vals.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.push_back(grid[i]);
        if (i + 1 < grid.size() && grid[i] < grid[i + 1])
            out.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

bool grid_interleaving_oracle(const Rectangle& r1, const Rectangle& r2, double delta,
                              const std::vector<double>& grid) {
    if (delta < 0) throw std::invalid_argument("oracle: delta must be nonnegative");
    if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("oracle: grid must be sorted with at least two values");
    auto in_grid = [&](double x) { return std::binary_search(grid.begin(), grid.end(), x); };
    for (const Rectangle* r : {&r1, &r2})
        for (double e : {r->c, r->left(), r->top()}) {
            if (!std::isfinite(e)) continue;
            for (int k = -2; k <= 2; ++k) {
                const double t = e + k * delta;
                if (t >= grid.front() && t <= grid.back() && !in_grid(t))
                    throw std::invalid_argument("oracle: insufficient grid");
            }
        }

    const int n = static_cast<int>(grid.size());
    const int points = n * n;
    const int kZero = 2 * points, kOne = 2 * points + 1;
    UnionFind uf(2 * points + 2);
    auto f_id = [&](int i, int j) { return i * n + j; };
    auto g_id = [&](int i, int j) { return points + i * n + j; };

    auto in_sf = [&](double x, double y) {
        return r1.contains(x, y) && r2.contains(x + delta, y + delta);
    };
    auto in_sg = [&](double x, double y) {
        return r2.contains(x, y) && r1.contains(x + delta, y + delta);
    };

    // Naturality: morphism scalars agree along grid steps inside a support
    // region and vanish where a point of the source escapes the target below.
    auto naturality = [&](auto&& support, auto&& source_contains, auto&& id) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!support(grid[i], grid[j])) continue;
                if (i + 1 < n && support(grid[i + 1], grid[j])) uf.unite(id(i, j), id(i + 1, j));
                if (j + 1 < n && support(grid[i], grid[j + 1])) uf.unite(id(i, j), id(i, j + 1));
                if (i > 0 && source_contains(grid[i - 1], grid[j]) &&
                    !support(grid[i - 1], grid[j]))
                    uf.unite(id(i, j), kZero);
                if (j > 0 && source_contains(grid[i], grid[j - 1]) &&
                    !support(grid[i], grid[j - 1]))
                    uf.unite(id(i, j), kZero);
            }
    };
    naturality(in_sf, [&](double x, double y) { return r1.contains(x, y); }, f_id);
    naturality(in_sg, [&](double x, double y) { return r2.contains(x, y); }, g_id);

    // One representative per support region; the naturality unions above make
    // each region a single component (supports are boxes).
    auto representative = [&](auto&& support, auto&& id) -> int {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (support(grid[i], grid[j])) return id(i, j);
        return -1;
    };
    const int f_rep = representative(in_sf, f_id);
    const int g_rep = representative(in_sg, g_id);

    // Triangle identities: wherever the 2*delta comparison map of a rectangle
    // is the identity, the composite must pass through the other rectangle
    // with both scalars equal to one.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = grid[i], y = grid[j];
            if (r1.contains(x, y) && r1.contains(x + 2 * delta, y + 2 * delta)) {
                if (!r2.contains(x + delta, y + delta)) return false;
                if (g_rep < 0) throw std::invalid_argument("oracle: insufficient grid");
                uf.unite(f_id(i, j), kOne);
                uf.unite(g_rep, kOne);
            }
            if (r2.contains(x, y) && r2.contains(x + 2 * delta, y + 2 * delta)) {
                if (!r1.contains(x + delta, y + delta)) return false;
                if (f_rep < 0) throw std::invalid_argument("oracle: insufficient grid");
                uf.unite(g_id(i, j), kOne);
                uf.unite(f_rep, kOne);
            }
        }

    return uf.find(kZero) != uf.find(kOne);
}

namespace {

// Kuhn's augmenting-path matching; returns when every `required` left vertex
// is saturated, nullopt otherwise. Edge order follows the input adjacency.
std::optional<std::vector<int>> saturate(const std::vector<std::vector<int>>& adj, int n_right,
                                         const std::vector<int>& required) {
    std::vector<int> left_of(n_right, -1);
    std::vector<char> visited;
    auto try_augment = [&](auto&& self, int u) -> bool {
        for (int v : adj[u]) {
            if (visited[v]) continue;
            visited[v] = 1;
            if (left_of[v] < 0 || self(self, left_of[v])) {
                left_of[v] = u;
                return true;
            }
        }
        return false;
    };
    for (int u : required) {
        visited.assign(n_right, 0);
        if (!try_augment(try_augment, u)) return std::nullopt;
    }
    return left_of;
}

struct DegreeInstance {
    std::vector<Rectangle> left, right;
    std::vector<std::vector<int>> adj;            // left -> right, at the probed delta
    std::vector<int> required_left, required_right;
};

DegreeInstance build_instance(const std::vector<Rectangle>& left,
                              const std::vector<Rectangle>& right, double delta) {
    DegreeInstance inst;
    inst.left = left;
    inst.right = right;
    inst.adj.assign(left.size(), {});
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
            if (are_delta_interleaved(left[i], right[j], delta))
                inst.adj[i].push_back(static_cast<int>(j));
    for (std::size_t i = 0; i < left.size(); ++i)
        if (!is_delta_trivial(left[i], 2 * delta)) inst.required_left.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < right.size(); ++j)
        if (!is_delta_trivial(right[j], 2 * delta)) inst.required_right.push_back(static_cast<int>(j));
    return inst;
}

std::vector<std::vector<int>> transpose_adj(const std::vector<std::vector<int>>& adj,
                                            std::size_t n_right) {
    std::vector<std::vector<int>> out(n_right);
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (int j : adj[i]) out[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    return out;
}

// A matching covering the required vertices on both sides exists iff one
// exists per side (Mendelsohn-Dulmage), so the decision is two Kuhn runs.
bool degree_admits_matching(const DegreeInstance& inst) {
    if (!saturate(inst.adj, static_cast<int>(inst.right.size()), inst.required_left)) return false;
    return saturate(transpose_adj(inst.adj, inst.right.size()), static_cast<int>(inst.left.size()),
                    inst.required_right)
        .has_value();
}

std::vector<int> barcode_degrees(const RectangleBarcode& b1, const RectangleBarcode& b2) {
    std::set<int> degs;
    for (const auto& r : b1.rectangles) degs.insert(r.degree);
    for (const auto& r : b2.rectangles) degs.insert(r.degree);
    return {degs.begin(), degs.end()};
}

bool admits_matching(const RectangleBarcode& b1, const RectangleBarcode& b2, double delta,
                     std::optional<int> only_degree = std::nullopt) {
    for (int k : barcode_degrees(b1, b2)) {
        if (only_degree && k != *only_degree) continue;
        if (!degree_admits_matching(build_instance(b1.in_degree(k), b2.in_degree(k), delta)))
            return false;
    }
    return true;
}

// Candidate deltas: every predicate in the matching decision flips at an
// endpoint difference or at half of a finite min-length.
std::vector<double> matching_candidates(const RectangleBarcode& b1, const RectangleBarcode& b2) {
    std::vector<double> pool;
    std::set<double> cands{0.0};
    for (const RectangleBarcode* b : {&b1, &b2})
        for (const auto& r : b->rectangles) {
            pool.push_back(r.c);
            if (std::isfinite(r.left())) pool.push_back(r.left());
            if (std::isfinite(r.top())) pool.push_back(r.top());
            const double m = r.min_length();
            if (std::isfinite(m)) cands.insert(m / 2.0);
        }
    for (double x : pool)
        for (double y : pool) cands.insert(std::abs(x - y));
    return {cands.begin(), cands.end()};
}

double bottleneck_search(const RectangleBarcode& b1, const RectangleBarcode& b2,
                         std::optional<int> only_degree) {
    auto cands = matching_candidates(b1, b2);
    if (!admits_matching(b1, b2, cands.back(), only_degree)) return kInf;
    // Monotone decision: bisect for the first admitting candidate.
    std::size_t lo = 0, hi = cands.size() - 1;
    if (admits_matching(b1, b2, cands[0], only_degree)) return cands[0];
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (admits_matching(b1, b2, cands[mid], only_degree))
            hi = mid;
        else
            lo = mid;
    }
    return cands[hi];
}

}  // namespace

std::optional<Matching> find_delta_matching(const RectangleBarcode& b1, const RectangleBarcode& b2,
                                            double delta) {
    Matching m;
    m.delta = delta;
    for (int k : barcode_degrees(b1, b2)) {
        auto inst = build_instance(b1.in_degree(k), b2.in_degree(k), delta);
        auto m1 = saturate(inst.adj, static_cast<int>(inst.right.size()), inst.required_left);
        if (!m1) return std::nullopt;
        auto m2t = saturate(transpose_adj(inst.adj, inst.right.size()),
                            static_cast<int>(inst.left.size()), inst.required_right);
        if (!m2t) return std::nullopt;

        // Mendelsohn-Dulmage merge: start from the right-saturating matching
        // and reroute alternating paths so required lefts get their M1 edge.
        std::vector<int> right_of(inst.left.size(), -1), left_of(inst.right.size(), -1);
        for (std::size_t j = 0; j < inst.right.size(); ++j)
            if ((*m2t)[j] >= 0) {
                right_of[static_cast<std::size_t>((*m2t)[j])] = static_cast<int>(j);
                left_of[j] = (*m2t)[j];
            }
        std::vector<int> m1_right_of(inst.left.size(), -1);
        for (std::size_t j = 0; j < inst.right.size(); ++j)
            if ((*m1)[j] >= 0) m1_right_of[static_cast<std::size_t>((*m1)[j])] = static_cast<int>(j);
        for (int x : inst.required_left) {
            int cur = x;
            while (cur >= 0 && right_of[static_cast<std::size_t>(cur)] < 0) {
                const int y = m1_right_of[static_cast<std::size_t>(cur)];
                if (y < 0) break;  // non-required left may stay unmatched
                const int displaced = left_of[static_cast<std::size_t>(y)];
                right_of[static_cast<std::size_t>(cur)] = y;
                left_of[static_cast<std::size_t>(y)] = cur;
                if (displaced >= 0) right_of[static_cast<std::size_t>(displaced)] = -1;
                cur = displaced;
            }
        }

        for (std::size_t i = 0; i < inst.left.size(); ++i) {
            if (right_of[i] >= 0)
                m.pairs.push_back({inst.left[i], inst.right[static_cast<std::size_t>(right_of[i])]});
            else
                m.unmatched_left.push_back(inst.left[i]);
        }
        for (std::size_t j = 0; j < inst.right.size(); ++j)
            if (left_of[j] < 0) m.unmatched_right.push_back(inst.right[j]);
    }
    return m;
}

double bottleneck_distance(const RectangleBarcode& b1, const RectangleBarcode& b2) {
    return bottleneck_search(b1, b2, std::nullopt);
}

std::map<int, double> bottleneck_distance_per_degree(const RectangleBarcode& b1,
                                                     const RectangleBarcode& b2) {
    std::map<int, double> out;
    for (int k : barcode_degrees(b1, b2)) out[k] = bottleneck_search(b1, b2, k);
    return out;
}

namespace {

// The 1-D problem is the same decision with bar predicates.
struct BarInstance {
    std::vector<Bar> left, right;
};

bool bars_admit(const std::vector<Bar>& s1, const std::vector<Bar>& s2, double delta) {
    std::set<int> degs;
    for (const auto& b : s1) degs.insert(b.degree);
    for (const auto& b : s2) degs.insert(b.degree);
    for (int k : degs) {
        std::vector<Bar> left, right;
        for (const auto& b : s1)
            if (b.degree == k) left.push_back(b);
        for (const auto& b : s2)
            if (b.degree == k) right.push_back(b);
        std::vector<std::vector<int>> adj(left.size());
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                if (are_delta_interleaved(left[i], right[j], delta))
                    adj[i].push_back(static_cast<int>(j));
        std::vector<int> req_l, req_r;
        for (std::size_t i = 0; i < left.size(); ++i)
            if (!is_delta_trivial(left[i], 2 * delta)) req_l.push_back(static_cast<int>(i));
        for (std::size_t j = 0; j < right.size(); ++j)
            if (!is_delta_trivial(right[j], 2 * delta)) req_r.push_back(static_cast<int>(j));
        if (!saturate(adj, static_cast<int>(right.size()), req_l)) return false;
        if (!saturate(transpose_adj(adj, right.size()), static_cast<int>(left.size()), req_r))
            return false;
    }
    return true;
}

}  // namespace

double bottleneck_distance_1d(const std::vector<Bar>& s1, const std::vector<Bar>& s2) {
    std::set<double> cands{0.0};
    std::vector<double> pool;
    for (const std::vector<Bar>* s : {&s1, &s2})
        for (const auto& b : *s) {
            pool.push_back(b.birth);
            if (std::isfinite(b.death)) {
                pool.push_back(b.death);
                cands.insert(b.length() / 2.0);
            }
        }
    for (double x : pool)
        for (double y : pool) cands.insert(std::abs(x - y));
    std::vector<double> c(cands.begin(), cands.end());
    if (!bars_admit(s1, s2, c.back())) return kInf;
    if (bars_admit(s1, s2, c[0])) return c[0];
    std::size_t lo = 0, hi = c.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (bars_admit(s1, s2, c[mid]))
            hi = mid;
        else
            lo = mid;
    }
    return c[hi];
}

StabilityReport stability_experiment(const FilteredComplex& c, int trials, double magnitude,
                                     std::uint64_t seed, bool constant_shifts) {
    StabilityReport report;
    const auto base = rectangle_barcode(c);

    std::vector<std::string> names;
    for (int deg : c.degrees())
        for (const auto& g : c.generators(deg)) names.push_back(g.name);

    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> trial_seeds(static_cast<std::size_t>(std::max(trials, 0)));
    for (auto& s : trial_seeds) s = master();

    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seeds[static_cast<std::size_t>(t)]);
        std::uniform_real_distribution<double> dist(-magnitude, magnitude);

        PerturbResult pr;
        if (constant_shifts) {
            const double s = dist(rng);
            std::map<std::string, double> shifts;
            for (const auto& n : names) shifts[n] = s;
            pr = perturb(c, shifts);
        } else {
            for (int attempt = 0; attempt < 100 && !pr.ok(); ++attempt) {
                std::map<std::string, double> shifts;
                for (const auto& n : names) shifts[n] = dist(rng);
                pr = perturb(c, shifts);
            }
            if (!pr.ok()) {
                const double s = dist(rng);
                std::map<std::string, double> shifts;
                for (const auto& n : names) shifts[n] = s;
                pr = perturb(c, shifts);
            }
        }

        const double delta = pr.sup_norm;
        const double d_bot = bottleneck_distance(base, rectangle_barcode(*pr.complex));
        StabilityTrial trial{t, delta, d_bot, d_bot <= 3 * delta + 1e-9};
        if (!trial.bound_3delta_ok) report.all_ok = false;
        if (d_bot <= delta + 1e-9) ++report.sharper_count;
        report.trials.push_back(trial);
    }
    return report;
}

std::string stability_report_to_json(const StabilityReport& r) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& t : r.trials) {
        nlohmann::ordered_json jt;
        jt["trial"] = t.trial;
        jt["delta"] = t.delta;
        jt["d_bot"] = std::isinf(t.d_bot) ? nlohmann::ordered_json("inf")
                                          : nlohmann::ordered_json(t.d_bot);
        jt["bound_3delta_ok"] = t.bound_3delta_ok;
        doc.push_back(std::move(jt));
    }
    return doc.dump(2) + "\n";
}

}  // namespace bipersist

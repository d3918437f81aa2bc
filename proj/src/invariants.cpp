#include "bipersist/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "bipersist/interlevel.hpp"

namespace bipersist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::set<double> spectral_invariant_set(const RectangleBarcode& rb) {
    std::set<double> out;
    for (const auto& r : rb.rectangles)
        if (r.type == RectangleType::S) out.insert(r.c);
    return out;
}

double boundary_depth(const RectangleBarcode& rb) {
    double depth = 0.0;
    for (const auto& r : rb.rectangles)
        if (r.type == RectangleType::B) depth = std::max(depth, r.ell2());
    return depth;
}

double non_cycle_depth(const RectangleBarcode& rb) {
    double depth = 0.0;
    for (const auto& r : rb.rectangles)
        if (r.type == RectangleType::N) depth = std::max(depth, r.ell1());
    return depth;
}

double spectral_spread_generator(const RectangleBarcode& rb, const std::string& generator) {
    const Rectangle* found = nullptr;
    for (const auto& r : rb.rectangles)
        if (r.generator == generator) {
            if (found) throw std::invalid_argument("generator witnesses several rectangles: " + generator);
            found = &r;
        }
    if (!found) throw std::invalid_argument("generator witnesses no rectangle: " + generator);
    return found->min_length();
}

double spectral_spread(const RectangleBarcode& rb) {
    double spread = 0.0;
    for (const auto& r : rb.rectangles) spread = std::max(spread, r.min_length());
    return spread;
}

InvariantReport invariant_report(const RectangleBarcode& rb) {
    InvariantReport report;
    report.spectral_set = spectral_invariant_set(rb);
    report.boundary_depth = boundary_depth(rb);
    report.non_cycle_depth = non_cycle_depth(rb);
    report.spread_global = spectral_spread(rb);
    for (const auto& r : rb.rectangles) {
        const double s = r.min_length();
        auto [it, inserted] = report.spread_per_generator.emplace(r.generator, s);
        if (!inserted) it->second = std::min(it->second, s);  // duplicate witness names fold by min
    }
    return report;
}

std::string invariant_report_to_json(const InvariantReport& r) {
    nlohmann::ordered_json doc;
    auto real_or_inf = [](double x) -> nlohmann::ordered_json {
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return x;
    };
    doc["spectral_set"] = nlohmann::ordered_json::array();
    for (double c : r.spectral_set) doc["spectral_set"].push_back(c);
    doc["boundary_depth"] = real_or_inf(r.boundary_depth);
    doc["non_cycle_depth"] = real_or_inf(r.non_cycle_depth);
    doc["spread_global"] = real_or_inf(r.spread_global);
    doc["spread_per_generator"] = nlohmann::ordered_json::object();
    for (const auto& [name, s] : r.spread_per_generator) doc["spread_per_generator"][name] = real_or_inf(s);
    return doc.dump(2) + "\n";
}

double spread_bruteforce(const FilteredComplex& c, int degree) {
    const auto crit = critical_values(c);
    const auto grid = verification_grid(c);

    // Window candidates: all grid pairs. Shift candidates: nonnegative
    // differences of finite grid values (every transition point min(l1,l2)
    // is a difference of critical values), plus a probe larger than any
    // finite rectangle length to detect the unbounded case.
    std::vector<Window> windows;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) windows.push_back({grid[i], grid[j]});

    std::set<double> cand_set{0.0};
    for (double x : grid)
        for (double y : grid)
            if (std::isfinite(x) && std::isfinite(y) && y >= x) cand_set.insert(y - x);
    if (!crit.empty()) cand_set.insert((crit.back() - crit.front()) + 2.0);
    std::vector<double> candidates(cand_set.begin(), cand_set.end());

    auto alive = [&](double d) {
        for (const auto& w : windows)
            if (comparison_rank(c, degree, w, d) > 0) return true;
        return false;
    };

    // alive() is downward closed in d, so the spread is the smallest
    // candidate where every comparison map vanishes.
    if (alive(candidates.back())) return kInf;
    std::size_t lo = 0, hi = candidates.size() - 1;
    // invariant: alive(candidates[lo-1]) (conceptually), !alive(candidates[hi])
    if (!alive(candidates[0])) return candidates[0];
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (alive(candidates[mid]))
            lo = mid;
        else
            hi = mid;
    }
    return candidates[hi];
}

}  // namespace bipersist

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipersist/barcode.hpp"

namespace bipersist {

/// An interval is delta-trivial when no point survives the diagonal shift by
/// delta; for a rectangle that is min(ell1, ell2) <= delta.
bool is_delta_trivial(const Rectangle& r, double delta);
bool is_delta_trivial(const Bar& b, double delta);

/// Closed-form interleaving decision for diagonal-anchored rectangles. The
/// criterion table (cross-checked exhaustively against the grid oracle):
///   - both rectangles 2*delta-trivial: interleaved;
///   - same type S: |c1-c2| <= delta;
///   - same type B: |c1-c2| <= delta and |top1-top2| <= delta;
///   - same type N: |c1-c2| <= delta and |left1-left2| <= delta;
///   - S against B or N: never (a type-S comparison map is never zero, and no
///     nonzero morphism crosses an infinite edge onto a finite one);
///   - B against N: only via the both-trivial escape.
bool are_delta_interleaved(const Rectangle& r1, const Rectangle& r2, double delta);

bool are_delta_interleaved(const Bar& b1, const Bar& b2, double delta);

/// Decides delta-interleaving of the two interval modules by sampling
/// morphism scalars on the grid and propagating the commutation and triangle
/// constraints, a GF(2) linear feasibility system in unit/equality form. The
/// grid must contain every finite rectangle endpoint and its +-delta and
/// +-2*delta translates (within its bounding box); insufficient grids are
/// rejected. This is the ground truth the closed form above is checked
/// against.
bool grid_interleaving_oracle(const Rectangle& r1, const Rectangle& r2, double delta,
                              const std::vector<double>& grid);

/// A sufficient grid for the oracle: endpoint translates, their midpoints,
/// and bounding-box sentinels.
std::vector<double> oracle_grid(const Rectangle& r1, const Rectangle& r2, double delta);

struct Matching {
    struct Pair {
        Rectangle left, right;
    };
    std::vector<Pair> pairs;
    std::vector<Rectangle> unmatched_left, unmatched_right;
    double delta = 0.0;
};

/// A delta-matching per the bottleneck definition: matched pairs are
/// delta-interleaved, everything unmatched is 2*delta-trivial, rectangles
/// only match within their own degree. nullopt when none exists.
std::optional<Matching> find_delta_matching(const RectangleBarcode& b1,
                                            const RectangleBarcode& b2, double delta);

/// Infimum delta admitting a delta-matching, over the finite candidate set of
/// endpoint differences and half min-lengths; +inf when no candidate admits
/// one (an unmatched type-S rectangle can never become trivial).
double bottleneck_distance(const RectangleBarcode& b1, const RectangleBarcode& b2);

/// Per-degree distances (the overall distance is their maximum).
std::map<int, double> bottleneck_distance_per_degree(const RectangleBarcode& b1,
                                                     const RectangleBarcode& b2);

/// Standard 1-D bottleneck on per-degree bar multisets.
double bottleneck_distance_1d(const std::vector<Bar>& s1, const std::vector<Bar>& s2);

struct StabilityTrial {
    int trial = 0;
    double delta = 0.0;  // sup-norm of the accepted shifts
    double d_bot = 0.0;
    bool bound_3delta_ok = true;
};

struct StabilityReport {
    std::vector<StabilityTrial> trials;
    bool all_ok = true;       // every trial meets d_bot <= 3*delta + 1e-9
    int sharper_count = 0;    // trials meeting the empirically common d_bot <= delta + 1e-9
};

/// Perturbs the complex `trials` times with monotonicity-compatible random
/// shifts of sup-norm at most `magnitude` (rejection-sampled through perturb;
/// a constant shift is the fallback after 100 rejections) and records the
/// bottleneck distance between the rectangle barcodes against the 3*delta
/// stability bound. `constant_shifts` restricts every trial to a single
/// uniform shift, which is always compatible. Trial seeds derive from the
/// master seed up front, so results are independent of scheduling.
StabilityReport stability_experiment(const FilteredComplex& c, int trials, double magnitude,
                                     std::uint64_t seed, bool constant_shifts = false);

std::string stability_report_to_json(const StabilityReport& r);

}  // namespace bipersist

#pragma once

#include <map>
#include <set>
#include <string>

#include "bipersist/barcode.hpp"

namespace bipersist {

/// Numeric invariants read off a verified rectangle barcode. The max over an
/// empty set of widths is 0 throughout (a complex with no type-B or type-N
/// rectangle has boundary/non-cycle depth 0).
struct InvariantReport {
    std::set<double> spectral_set;                       // corners of type-S rectangles
    double boundary_depth = 0.0;                         // largest finite type-B width
    double non_cycle_depth = 0.0;                        // largest finite type-N width
    double spread_global = 0.0;                          // max of min(ell1, ell2), may be +inf
    std::map<std::string, double> spread_per_generator;  // witness name -> min(ell1, ell2)
};

std::set<double> spectral_invariant_set(const RectangleBarcode& rb);
double boundary_depth(const RectangleBarcode& rb);
double non_cycle_depth(const RectangleBarcode& rb);

/// min(ell1, ell2) of the unique rectangle witnessed by the named generator;
/// throws std::invalid_argument unless exactly one rectangle matches.
double spectral_spread_generator(const RectangleBarcode& rb, const std::string& generator);

double spectral_spread(const RectangleBarcode& rb);

InvariantReport invariant_report(const RectangleBarcode& rb);
std::string invariant_report_to_json(const InvariantReport& r);

/// Degree-k spectral spread straight from comparison-map ranks, never
/// consulting the barcode: the largest d (over critical-grid differences)
/// with a nonzero comparison map, +inf when ranks stay positive past the
/// last critical value. Comparison ranks are piecewise constant on grid
/// cells, so the candidate set is exact.
double spread_bruteforce(const FilteredComplex& c, int degree);

}  // namespace bipersist

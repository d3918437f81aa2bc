#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bipersist/complex.hpp"
#include "bipersist/interlevel.hpp"

namespace bipersist {

/// Half-open sublevel bar [birth, death), death possibly infinite.
struct Bar {
    int degree = 0;
    double birth = 0.0;
    double death = 0.0;  // +inf for unpaired cycles
    std::string birth_generator;
    std::optional<std::string> death_generator;

    double length() const { return death - birth; }
    bool operator==(const Bar&) const = default;
};

enum class RectangleType { S, B, N };

char to_char(RectangleType t);

/// Diagonal-anchored rectangle [c-ell1, c) x [c, c+ell2). Exactly one of the
/// four corner types is representable per instance: S (both edges infinite),
/// B (ell1 infinite), N (ell2 infinite). Both-finite rectangles cannot be
/// constructed. The edges are the stored truth and the lengths are derived:
/// barcode edges land on critical values and membership against grid points
/// must not pick up a rounding ulp from length arithmetic.
class Rectangle {
public:
    int degree = 0;
    double c = 0.0;
    RectangleType type = RectangleType::S;
    std::string generator;  // witness

    Rectangle() = default;
    Rectangle(int degree, double c, double ell1, double ell2, std::string generator);
    static Rectangle from_edges(int degree, double left, double c, double top,
                                std::string generator);

    double left() const { return left_; }
    double top() const { return top_; }
    double ell1() const { return c - left_; }
    double ell2() const { return top_ - c; }
    double min_length() const;

    /// Membership of the window point (a, b). The infinities behave as limit
    /// points: a = -inf lies in every left-infinite edge, b = +inf in every
    /// top-infinite one, so windows over the sentinel grid count correctly.
    bool contains(double a, double b) const;

    bool operator==(const Rectangle&) const = default;

private:
    double left_ = 0.0;  // c - ell1, may be -inf
    double top_ = 0.0;   // c + ell2, may be +inf
};

struct RectangleBarcode {
    std::vector<Rectangle> rectangles;  // multiset, kept in a deterministic sorted order

    std::vector<int> degrees() const;
    std::vector<Rectangle> in_degree(int k) const;
    bool operator==(const RectangleBarcode&) const = default;
};

/// Barcode of the sublevel persistence module in every degree, by column
/// reduction of the total boundary matrix in (filtration, degree, name)
/// order. Zero-length pairs (a generator cancelling at its own filtration
/// value) contribute no bar.
std::vector<Bar> sublevel_barcode(const FilteredComplex& c);

struct VerifyCounterexample {
    int degree = 0;
    double a = 0.0, b = 0.0;        // grid point of the first mismatch
    double a2 = 0.0, b2 = 0.0;      // second window for structure-map mismatches
    bool is_map_check = false;
    int expected = 0;               // brute-force value
    int counted = 0;                // rectangle count
};

struct VerifyReport {
    bool ok = true;
    int dim_checks = 0;
    int rank_checks = 0;
    std::optional<VerifyCounterexample> counterexample;
    std::string describe() const;
};

/// Checks a proposed rectangle barcode against the exact rank invariant:
/// dim H_k^{(a,b]} must equal the number of degree-k rectangles containing
/// (a,b) at every grid pair, and every sampled structure-map rank must equal
/// the co-membership count.
VerifyReport verify_decomposition(const FilteredComplex& c, const RectangleBarcode& rb);

struct VerificationError : std::runtime_error {
    VerificationError(const std::string& msg, VerifyReport r)
        : std::runtime_error(msg), report(std::move(r)) {}
    VerifyReport report;
};

/// The rectangle barcode: derived from the sublevel pairing (an infinite bar
/// [c, inf) gives a type-S rectangle at c; a finite bar [c, d) gives the
/// type-B rectangle R(c; inf, d-c) plus the type-N rectangle R(d; d-c, inf)
/// one degree up, witnessed by the killing generator), then verified against
/// the rank invariant. The pairing rule is never trusted unverified: a
/// mismatch raises VerificationError instead of returning a barcode.
RectangleBarcode rectangle_barcode(const FilteredComplex& c);

/// Derivation step alone, for tests that need to inspect unverified output.
RectangleBarcode derive_rectangle_barcode(const std::vector<Bar>& bars);

/// Multiplicity of R(corner; corner-left, top-corner) in degree k, computed
/// purely from structure-map ranks by a four-corner alternating sum over grid
/// points straddling the rectangle's edges. Independent of the sublevel
/// pairing; this is the second route of the derive-then-verify story.
/// Preconditions: corner is a critical value, left in criticals U {-inf}
/// below it, top in criticals U {+inf} above it.
int rectangle_multiplicity_oracle(const FilteredComplex& c, int degree, double corner,
                                  double left, double top);

// Interchange documents and the frozen text format.
std::string bars_to_json(const std::vector<Bar>& bars);
std::string barcode_to_json(const RectangleBarcode& rb);
std::string rectangle_to_text(const Rectangle& r);      // "deg k: R(c; l1, l2) [T] <gen>"
std::string barcode_to_text(const RectangleBarcode& rb);
std::string bars_to_text(const std::vector<Bar>& bars);

}  // namespace bipersist

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bipersist/gf2.hpp"

namespace bipersist {

/// A basis element with its action value. Filtration values are always
/// finite; the infinities are reserved for windows and rectangle edges.
struct Generator {
    std::string name;  // unique within its degree
    int degree = 0;
    double filtration = 0.0;

    bool operator==(const Generator&) const = default;
};

/// Half-open action window (a, b]; empty when a >= b. Either bound may be
/// infinite.
struct Window {
    double a = 0.0;
    double b = 0.0;

    bool empty() const { return !(a < b); }
    bool operator==(const Window&) const = default;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg, std::size_t byte = 0)
        : std::runtime_error(msg), byte_position(byte) {}
    std::size_t byte_position;
};

struct SemanticError : std::runtime_error {
    SemanticError(const std::string& msg, std::string offending)
        : std::runtime_error(msg), name(std::move(offending)) {}
    std::string name;
};

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Violation {
    enum class Kind { BoundarySquare, Monotonicity };
    Kind kind;
    int degree;          // degree of the offending boundary column
    std::string source;  // generator whose column witnesses the violation
    std::string target;  // monotonicity only: the too-high target
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// A graded GF(2) chain complex with per-generator filtration values.
/// Immutable after construction; transformations return fresh complexes.
class FilteredComplex {
public:
    FilteredComplex() = default;  // the zero complex

    /// Builds and structurally checks a complex. `boundaries` maps degree k
    /// to D_k : C_k -> C_{k-1}; missing matrices are taken as zero. Dimension
    /// mismatches raise StructuralError. Invariants (boundary square,
    /// filtration monotonicity) are NOT enforced here; see validate().
    static FilteredComplex from_parts(std::map<int, std::vector<Generator>> generators,
                                      std::map<int, gf2::BitMatrix> boundaries);

    const std::vector<Generator>& generators(int degree) const;
    const gf2::BitMatrix& boundary(int degree) const;  // D_degree, correctly sized
    std::vector<int> degrees() const;                  // sorted, only degrees with generators
    std::size_t total_generators() const;
    int generator_index(int degree, const std::string& name) const;  // -1 when absent

    bool operator==(const FilteredComplex&) const = default;

private:
    std::map<int, std::vector<Generator>> gens_;
    std::map<int, gf2::BitMatrix> boundaries_;
};

ValidationReport validate(const FilteredComplex& c);

/// Parses the canonical interchange document (UTF-8 text). Raises ParseError
/// for malformed documents (with byte position) and SemanticError for
/// well-formed documents with bad content (unknown or duplicate generator
/// names, non-finite filtrations), naming the offender.
FilteredComplex parse(const std::string& text);

/// Canonical form: degrees ascending, generators in stored order, boundary
/// columns sorted by source name, targets sorted by name, zero columns and
/// zero matrices omitted. parse(serialize(c)) == c.
std::string serialize(const FilteredComplex& c);

FilteredComplex fixture_torus();
FilteredComplex fixture_heart_circle();
FilteredComplex fixture_h_sphere();

struct PerturbResult {
    std::optional<FilteredComplex> complex;  // engaged iff the shifts were accepted
    double sup_norm = 0.0;
    // On rejection: (source, target) pair violating filtration monotonicity.
    std::optional<std::pair<std::string, std::string>> witness;

    bool ok() const { return complex.has_value(); }
};

/// Shifts filtration values per generator name (names missing from the map
/// shift by zero; a name occurring in several degrees shifts each of them).
/// Rejects shifts that break filtration monotonicity instead of reordering.
PerturbResult perturb(const FilteredComplex& c, const std::map<std::string, double>& shifts);

/// Multiplies every filtration value by lambda > 0.
FilteredComplex scale(const FilteredComplex& c, double lambda);

/// Deterministic valid complex from a seed: up to `max_degrees` consecutive
/// degrees starting at 0, up to `max_per_degree` generators each. Boundary
/// columns are random kernel vectors of the previous boundary supported on
/// strictly lower filtration values, so both invariants hold by construction.
FilteredComplex random_complex(std::uint64_t seed, int max_degrees = 4, int max_per_degree = 3);

}  // namespace bipersist

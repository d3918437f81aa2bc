#include "bipersist/complex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace bipersist {

using json = nlohmann::ordered_json;

FilteredComplex FilteredComplex::from_parts(std::map<int, std::vector<Generator>> generators,
                                            std::map<int, gf2::BitMatrix> boundaries) {
    FilteredComplex c;
    for (auto& [deg, gens] : generators) {
        if (gens.empty()) continue;
        std::set<std::string> names;
        for (auto& g : gens) {
            if (g.degree != deg) throw StructuralError("generator degree tag mismatch");
            if (!std::isfinite(g.filtration))
                throw StructuralError("non-finite filtration on generator " + g.name);
            if (!names.insert(g.name).second)
                throw StructuralError("duplicate generator name " + g.name + " in degree " +
                                      std::to_string(deg));
        }
        c.gens_[deg] = std::move(gens);
    }
    for (auto& [deg, m] : boundaries) {
        const std::size_t cols = c.gens_.count(deg) ? c.gens_.at(deg).size() : 0;
        const std::size_t rows = c.gens_.count(deg - 1) ? c.gens_.at(deg - 1).size() : 0;
        if (m.rows() != rows || m.cols() != cols)
            throw StructuralError("boundary matrix dimensions do not match generator counts in degree " +
                                  std::to_string(deg));
        if (cols == 0) continue;
        c.boundaries_[deg] = std::move(m);
    }
    // Normalize: every populated degree gets a correctly sized matrix.
    for (auto& [deg, gens] : c.gens_) {
        if (!c.boundaries_.count(deg)) {
            const std::size_t rows = c.gens_.count(deg - 1) ? c.gens_.at(deg - 1).size() : 0;
            c.boundaries_[deg] = gf2::BitMatrix(rows, gens.size());
        }
    }
    return c;
}

const std::vector<Generator>& FilteredComplex::generators(int degree) const {
    static const std::vector<Generator> kEmpty;
    auto it = gens_.find(degree);
    return it == gens_.end() ? kEmpty : it->second;
}

const gf2::BitMatrix& FilteredComplex::boundary(int degree) const {
    static const gf2::BitMatrix kEmpty;
    auto it = boundaries_.find(degree);
    if (it != boundaries_.end()) return it->second;
    return kEmpty;
}

std::vector<int> FilteredComplex::degrees() const {
    std::vector<int> out;
    for (const auto& [deg, gens] : gens_) out.push_back(deg);
    return out;
}

std::size_t FilteredComplex::total_generators() const {
    std::size_t n = 0;
    for (const auto& [deg, gens] : gens_) n += gens.size();
    return n;
}

int FilteredComplex::generator_index(int degree, const std::string& name) const {
    const auto& gens = generators(degree);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

ValidationReport validate(const FilteredComplex& c) {
    ValidationReport report;
    for (int k : c.degrees()) {
        const auto& dk = c.boundary(k);
        const auto& sources = c.generators(k);
        const auto& targets = c.generators(k - 1);

        // Filtration monotonicity: every target of a column sits at or below
        // the column's generator.
        for (std::size_t j = 0; j < dk.cols(); ++j)
            for (std::size_t i = 0; i < dk.rows(); ++i)
                if (dk.get(i, j) && targets[i].filtration > sources[j].filtration)
                    report.violations.push_back(
                        {Violation::Kind::Monotonicity, k, sources[j].name, targets[i].name,
                         "boundary of " + sources[j].name + " contains " + targets[i].name +
                             " with higher filtration"});

        // d(k-1) * d(k) = 0, one witness column per offending degree.
        const auto& dk1 = c.boundary(k - 1);
        if (dk1.cols() == dk.rows() && dk1.rows() > 0 && dk.cols() > 0) {
            auto prod = dk1.multiply(dk);
            for (std::size_t j = 0; j < prod.cols(); ++j)
                if (!prod.column(j).is_zero()) {
                    report.violations.push_back({Violation::Kind::BoundarySquare, k,
                                                 sources[j].name, "",
                                                 "boundary square is nonzero on " + sources[j].name +
                                                     " in degree " + std::to_string(k)});
                    break;
                }
        }
    }
    return report;
}

FilteredComplex parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("top-level document must be an object");
    if (!doc.contains("field") || !doc["field"].is_string() || doc["field"] != "GF2")
        throw SemanticError("field must be the literal string \"GF2\"", "field");
    if (!doc.contains("degrees") || !doc["degrees"].is_array())
        throw SemanticError("missing \"degrees\" array", "degrees");

    std::map<int, std::vector<Generator>> gens;
    for (const auto& entry : doc["degrees"]) {
        if (!entry.is_object() || !entry.contains("degree") || !entry["degree"].is_number_integer())
            throw SemanticError("degree entry needs an integer \"degree\"", "degrees");
        const int deg = entry["degree"].get<int>();
        if (gens.count(deg))
            throw SemanticError("duplicate degree entry " + std::to_string(deg),
                                std::to_string(deg));
        auto& list = gens[deg];
        for (const auto& g : entry.value("generators", json::array())) {
            if (!g.contains("name") || !g["name"].is_string())
                throw SemanticError("generator needs a string name", "generators");
            const std::string name = g["name"].get<std::string>();
            if (!g.contains("filtration") || !g["filtration"].is_number())
                throw SemanticError("generator " + name + " needs a finite numeric filtration",
                                    name);
            const double f = g["filtration"].get<double>();
            if (!std::isfinite(f))
                throw SemanticError("generator " + name + " has non-finite filtration", name);
            for (const auto& prev : list)
                if (prev.name == name)
                    throw SemanticError("duplicate generator name " + name, name);
            list.push_back({name, deg, f});
        }
        if (list.empty()) gens.erase(deg);
    }

    std::map<int, gf2::BitMatrix> boundaries;
    if (doc.contains("boundaries")) {
        if (!doc["boundaries"].is_array())
            throw SemanticError("\"boundaries\" must be an array", "boundaries");
        std::set<int> seen_boundary_degrees;
        for (const auto& entry : doc["boundaries"]) {
            if (!entry.contains("degree") || !entry["degree"].is_number_integer())
                throw SemanticError("boundary entry needs an integer degree", "boundaries");
            const int deg = entry["degree"].get<int>();
            if (!seen_boundary_degrees.insert(deg).second)
                throw SemanticError("duplicate boundary entry for degree " + std::to_string(deg),
                                    std::to_string(deg));
            const auto& sources = gens.count(deg) ? gens.at(deg) : std::vector<Generator>{};
            const auto& targets = gens.count(deg - 1) ? gens.at(deg - 1) : std::vector<Generator>{};
            gf2::BitMatrix m(targets.size(), sources.size());
            auto index_of = [](const std::vector<Generator>& v, const std::string& n) {
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i].name == n) return static_cast<int>(i);
                return -1;
            };
            for (const auto& col : entry.value("columns", json::array())) {
                if (!col.contains("source") || !col["source"].is_string())
                    throw SemanticError("boundary column needs a string source", "boundaries");
                const std::string source = col["source"].get<std::string>();
                const int j = index_of(sources, source);
                if (j < 0)
                    throw SemanticError("boundary column references undefined generator " + source,
                                        source);
                if (!m.column(static_cast<std::size_t>(j)).is_zero())
                    throw SemanticError("duplicate boundary column for " + source, source);
                for (const auto& t : col.value("targets", json::array())) {
                    if (!t.is_string())
                        throw SemanticError("boundary targets must be generator names", source);
                    const std::string target = t.get<std::string>();
                    const int i = index_of(targets, target);
                    if (i < 0)
                        throw SemanticError(
                            "boundary of " + source + " references undefined generator " + target,
                            target);
                    if (m.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
                        throw SemanticError("duplicate target " + target + " in boundary of " + source,
                                            target);
                    m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), true);
                }
            }
            if (!m.is_zero()) boundaries[deg] = std::move(m);
        }
    }
    return FilteredComplex::from_parts(std::move(gens), std::move(boundaries));
}

std::string serialize(const FilteredComplex& c) {
    json doc;
    doc["field"] = "GF2";
    doc["degrees"] = json::array();
    for (int deg : c.degrees()) {
        json entry;
        entry["degree"] = deg;
        entry["generators"] = json::array();
        for (const auto& g : c.generators(deg))
            entry["generators"].push_back({{"name", g.name}, {"filtration", g.filtration}});
        doc["degrees"].push_back(std::move(entry));
    }
    doc["boundaries"] = json::array();
    for (int deg : c.degrees()) {
        const auto& m = c.boundary(deg);
        if (m.is_zero()) continue;
        const auto& sources = c.generators(deg);
        const auto& targets = c.generators(deg - 1);
        std::vector<std::size_t> order(sources.size());
        for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return sources[x].name < sources[y].name;
        });
        json cols = json::array();
        for (std::size_t j : order) {
            if (m.column(j).is_zero()) continue;
            std::vector<std::string> names;
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m.get(i, j)) names.push_back(targets[i].name);
            std::sort(names.begin(), names.end());
            cols.push_back({{"source", sources[j].name}, {"targets", names}});
        }
        doc["boundaries"].push_back({{"degree", deg}, {"columns", std::move(cols)}});
    }
    return doc.dump(2) + "\n";
}

FilteredComplex fixture_torus() {
    std::map<int, std::vector<Generator>> gens;
    gens[0] = {{"p1", 0, 1.0}};
    gens[1] = {{"p2", 1, 2.0}, {"p3", 1, 3.0}};
    gens[2] = {{"p4", 2, 4.0}};
    return FilteredComplex::from_parts(std::move(gens), {});
}

FilteredComplex fixture_heart_circle() {
    std::map<int, std::vector<Generator>> gens;
    gens[0] = {{"p1", 0, 1.0}, {"p2", 0, 2.0}};
    gens[1] = {{"p3", 1, 3.0}, {"p4", 1, 4.0}};
    gf2::BitMatrix d1(2, 2);
    d1.set(0, 0, true);  // d p3 = p1 + p2
    d1.set(1, 0, true);
    d1.set(0, 1, true);  // d p4 = p1 + p2
    d1.set(1, 1, true);
    std::map<int, gf2::BitMatrix> boundaries;
    boundaries[1] = std::move(d1);
    return FilteredComplex::from_parts(std::move(gens), std::move(boundaries));
}

FilteredComplex fixture_h_sphere() {
    std::map<int, std::vector<Generator>> gens;
    gens[0] = {{"p1", 0, 1.0}, {"p2", 0, 2.0}};
    gens[1] = {{"p3", 1, 3.0}, {"p4", 1, 4.0}};
    gens[2] = {{"p5", 2, 5.0}, {"p6", 2, 6.0}};
    gf2::BitMatrix d1(2, 2);
    d1.set(0, 0, true);  // d p3 = p1 + p2
    d1.set(1, 0, true);  // d p4 = 0
    gf2::BitMatrix d2(2, 2);
    d2.set(1, 0, true);  // d p5 = p4
    d2.set(1, 1, true);  // d p6 = p4
    std::map<int, gf2::BitMatrix> boundaries;
    boundaries[1] = std::move(d1);
    boundaries[2] = std::move(d2);
    return FilteredComplex::from_parts(std::move(gens), std::move(boundaries));
}

PerturbResult perturb(const FilteredComplex& c, const std::map<std::string, double>& shifts) {
    PerturbResult result;
    for (const auto& [name, s] : shifts) result.sup_norm = std::max(result.sup_norm, std::abs(s));

    std::map<int, std::vector<Generator>> gens;
    for (int deg : c.degrees()) {
        auto list = c.generators(deg);
        for (auto& g : list) {
            auto it = shifts.find(g.name);
            if (it != shifts.end()) g.filtration += it->second;
        }
        gens[deg] = std::move(list);
    }
    std::map<int, gf2::BitMatrix> boundaries;
    for (int deg : c.degrees()) boundaries[deg] = c.boundary(deg);
    auto shifted = FilteredComplex::from_parts(std::move(gens), std::move(boundaries));

    auto report = validate(shifted);
    for (const auto& v : report.violations)
        if (v.kind == Violation::Kind::Monotonicity) {
            result.witness = {v.source, v.target};
            return result;
        }
    result.complex = std::move(shifted);
    return result;
}

FilteredComplex scale(const FilteredComplex& c, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale: lambda must be positive");
    std::map<int, std::vector<Generator>> gens;
    for (int deg : c.degrees()) {
        auto list = c.generators(deg);
        for (auto& g : list) g.filtration *= lambda;
        gens[deg] = std::move(list);
    }
    std::map<int, gf2::BitMatrix> boundaries;
    for (int deg : c.degrees()) boundaries[deg] = c.boundary(deg);
    return FilteredComplex::from_parts(std::move(gens), std::move(boundaries));
}

FilteredComplex random_complex(std::uint64_t seed, int max_degrees, int max_per_degree) {
    std::mt19937_64 rng(seed);
    auto uniform_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    const int num_degrees = max_degrees <= 0 ? 0 : uniform_int(0, max_degrees);
    std::map<int, std::vector<Generator>> gens;
    for (int k = 0; k < num_degrees; ++k) {
        const int count = max_per_degree <= 0 ? 0 : uniform_int(0, max_per_degree);
        std::vector<Generator> list;
        for (int i = 0; i < count; ++i) {
            // Dyadic lattice values: differences, sums and midpoints stay
            // exact in binary floating point, and collisions exercise the
            // tie-handling paths downstream.
            const double f = uniform_int(0, 96) / 16.0;
            list.push_back({"g" + std::to_string(k) + "_" + std::to_string(i), k, f});
        }
        if (!list.empty()) gens[k] = std::move(list);
    }

    std::map<int, gf2::BitMatrix> boundaries;
    for (auto& [k, list] : gens) {
        const auto below = gens.find(k - 1);
        const std::size_t rows = below == gens.end() ? 0 : below->second.size();
        gf2::BitMatrix dk(rows, list.size());
        if (rows > 0) {
            // D_{k-1} was built on an earlier iteration (degrees ascend).
            const gf2::BitMatrix& prev = boundaries.at(k - 1);
            std::vector<int> all_rows(prev.rows());
            for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = static_cast<int>(i);
            for (std::size_t j = 0; j < list.size(); ++j) {
                // Candidate targets: strictly lower filtration, so monotonicity
                // holds even across ties elsewhere.
                std::vector<int> support;
                for (std::size_t i = 0; i < rows; ++i)
                    if (below->second[i].filtration < list[j].filtration)
                        support.push_back(static_cast<int>(i));
                if (support.empty()) continue;
                auto restricted = prev.submatrix(all_rows, support);
                auto kernel = gf2::kernel_basis(restricted);
                if (kernel.empty()) continue;
                gf2::BitVector combo(support.size());
                for (const auto& kv : kernel)
                    if (uniform_int(0, 1)) combo ^= kv;
                for (std::size_t s = 0; s < support.size(); ++s)
                    if (combo.get(s)) dk.set(static_cast<std::size_t>(support[s]), j, true);
            }
        }
        boundaries[k] = std::move(dk);
    }

    auto c = FilteredComplex::from_parts(std::move(gens), std::move(boundaries));
    if (!validate(c).ok()) throw std::logic_error("random_complex produced an invalid complex");
    return c;
}

}  // namespace bipersist

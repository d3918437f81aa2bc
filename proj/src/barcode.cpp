#include "bipersist/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "bipersist/format.hpp"

namespace bipersist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

char to_char(RectangleType t) {
    switch (t) {
        case RectangleType::S: return 'S';
        case RectangleType::B: return 'B';
        case RectangleType::N: return 'N';
    }
    return '?';
}

Rectangle::Rectangle(int degree_, double c_, double ell1_, double ell2_, std::string generator_)
    : degree(degree_), c(c_), generator(std::move(generator_)) {
    if (!std::isfinite(c)) throw std::invalid_argument("rectangle corner must be finite");
    if (!(ell1_ > 0) || !(ell2_ > 0))
        throw std::invalid_argument("rectangle lengths must be positive");
    const bool inf1 = std::isinf(ell1_), inf2 = std::isinf(ell2_);
    if (!inf1 && !inf2)
        throw std::invalid_argument("rectangle with two finite lengths is not representable");
    type = inf1 && inf2 ? RectangleType::S : (inf1 ? RectangleType::B : RectangleType::N);
    left_ = c - ell1_;
    top_ = c + ell2_;
}

Rectangle Rectangle::from_edges(int degree, double left, double c, double top,
                                std::string generator) {
    Rectangle r(degree, c, std::isinf(left) ? kInf : c - left, std::isinf(top) ? kInf : top - c,
                std::move(generator));
    r.left_ = left;
    r.top_ = top;
    return r;
}

double Rectangle::min_length() const { return std::min(ell1(), ell2()); }

bool Rectangle::contains(double a, double b) const {
    const bool lower = std::isinf(left_) ? a < c : (left_ <= a && a < c);
    const bool upper = std::isinf(top_) ? b >= c : (c <= b && b < top_);
    return lower && upper;
}

namespace {

auto rectangle_key(const Rectangle& r) {
    return std::make_tuple(r.degree, r.c, r.left(), r.top(), r.generator);
}

void sort_rectangles(std::vector<Rectangle>& rects) {
    std::sort(rects.begin(), rects.end(),
              [](const Rectangle& x, const Rectangle& y) { return rectangle_key(x) < rectangle_key(y); });
}

}  // namespace

std::vector<int> RectangleBarcode::degrees() const {
    std::set<int> s;
    for (const auto& r : rectangles) s.insert(r.degree);
    return {s.begin(), s.end()};
}

std::vector<Rectangle> RectangleBarcode::in_degree(int k) const {
    std::vector<Rectangle> out;
    for (const auto& r : rectangles)
        if (r.degree == k) out.push_back(r);
    return out;
}

std::vector<Bar> sublevel_barcode(const FilteredComplex& c) {
    // Total order over all generators; ties fall back to degree then name, so
    // boundaries always point strictly backwards.
    struct Slot {
        double filtration;
        int degree;
        std::string name;
        int position;  // index within generators(degree)
    };
    std::vector<Slot> order;
    for (int deg : c.degrees()) {
        const auto& gens = c.generators(deg);
        for (std::size_t i = 0; i < gens.size(); ++i)
            order.push_back({gens[i].filtration, deg, gens[i].name, static_cast<int>(i)});
    }
    std::sort(order.begin(), order.end(), [](const Slot& x, const Slot& y) {
        return std::tie(x.filtration, x.degree, x.name) < std::tie(y.filtration, y.degree, y.name);
    });
    const std::size_t n = order.size();
    std::map<std::pair<int, int>, std::size_t> slot_of;  // (degree, position) -> total index
    for (std::size_t i = 0; i < n; ++i) slot_of[{order[i].degree, order[i].position}] = i;

    std::vector<gf2::BitVector> cols(n, gf2::BitVector(n));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& slot = order[j];
        const auto& dk = c.boundary(slot.degree);
        if (dk.rows() == 0) continue;
        const auto& col = dk.column(static_cast<std::size_t>(slot.position));
        for (std::size_t i = 0; i < dk.rows(); ++i)
            if (col.get(i)) cols[j].set(slot_of.at({slot.degree - 1, static_cast<int>(i)}), true);
    }

    // Standard reduction: low(j) = bottom-most set row in filtration order.
    std::vector<int> low_owner(n, -1);
    std::vector<bool> killed(n, false);
    std::vector<Bar> bars;
    for (std::size_t j = 0; j < n; ++j) {
        int low = cols[j].highest_set();
        while (low >= 0 && low_owner[static_cast<std::size_t>(low)] >= 0) {
            cols[j] ^= cols[static_cast<std::size_t>(low_owner[static_cast<std::size_t>(low)])];
            low = cols[j].highest_set();
        }
        if (low < 0) continue;
        low_owner[static_cast<std::size_t>(low)] = static_cast<int>(j);
        killed[static_cast<std::size_t>(low)] = true;
        const auto& birth = order[static_cast<std::size_t>(low)];
        const auto& death = order[j];
        if (birth.filtration < death.filtration)
            bars.push_back({birth.degree, birth.filtration, death.filtration, birth.name, death.name});
    }
    for (std::size_t i = 0; i < n; ++i)
        if (cols[i].is_zero() && !killed[i])
            bars.push_back({order[i].degree, order[i].filtration, kInf, order[i].name, std::nullopt});

    std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
        return std::tie(x.degree, x.birth, x.death, x.birth_generator) <
               std::tie(y.degree, y.birth, y.death, y.birth_generator);
    });
    return bars;
}

RectangleBarcode derive_rectangle_barcode(const std::vector<Bar>& bars) {
    RectangleBarcode rb;
    for (const auto& bar : bars) {
        if (std::isinf(bar.death)) {
            rb.rectangles.push_back(
                Rectangle::from_edges(bar.degree, -kInf, bar.birth, kInf, bar.birth_generator));
        } else {
            rb.rectangles.push_back(Rectangle::from_edges(bar.degree, -kInf, bar.birth, bar.death,
                                                          bar.birth_generator));
            rb.rectangles.push_back(Rectangle::from_edges(bar.degree + 1, bar.birth, bar.death,
                                                          kInf, bar.death_generator.value()));
        }
    }
    sort_rectangles(rb.rectangles);
    return rb;
}

std::string VerifyReport::describe() const {
    if (ok)
        return "ok: " + std::to_string(dim_checks) + " dimension checks, " +
               std::to_string(rank_checks) + " structure-map checks";
    std::ostringstream os;
    const auto& ce = *counterexample;
    if (ce.is_map_check)
        os << "structure-map mismatch in degree " << ce.degree << " between (" << format_real(ce.a)
           << ", " << format_real(ce.b) << "] and (" << format_real(ce.a2) << ", "
           << format_real(ce.b2) << "]: expected rank " << ce.expected << ", counted " << ce.counted;
    else
        os << "dimension mismatch in degree " << ce.degree << " at grid point (" << format_real(ce.a)
           << ", " << format_real(ce.b) << "): expected dim " << ce.expected << ", counted "
           << ce.counted;
    return os.str();
}

VerifyReport verify_decomposition(const FilteredComplex& c, const RectangleBarcode& rb) {
    VerifyReport report;
    std::vector<int> degrees = c.degrees();
    for (int k : rb.degrees())
        if (std::find(degrees.begin(), degrees.end(), k) == degrees.end()) degrees.push_back(k);
    std::sort(degrees.begin(), degrees.end());

    for (int k : degrees) {
        const auto rects = rb.in_degree(k);
        auto count_at = [&](double a, double b) {
            int n = 0;
            for (const auto& r : rects)
                if (r.contains(a, b)) ++n;
            return n;
        };
        RankTable table = rank_table(c, k);
        const auto& g = table.grid;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                ++report.dim_checks;
                const int counted = count_at(g[i], g[j]);
                if (counted != table.dims[i][j]) {
                    report.ok = false;
                    report.counterexample =
                        {k, g[i], g[j], 0, 0, false, table.dims[i][j], counted};
                    return report;
                }
            }
        for (const auto& mr : table.hmap_ranks) {
            ++report.rank_checks;
            int counted = 0;
            for (const auto& r : rects)
                if (r.contains(g[mr.a1], g[mr.b1]) && r.contains(g[mr.a2], g[mr.b2])) ++counted;
            if (counted != mr.rank) {
                report.ok = false;
                report.counterexample =
                    {k, g[mr.a1], g[mr.b1], g[mr.a2], g[mr.b2], true, mr.rank, counted};
                return report;
            }
        }
    }
    return report;
}

RectangleBarcode rectangle_barcode(const FilteredComplex& c) {
    auto rb = derive_rectangle_barcode(sublevel_barcode(c));
    auto report = verify_decomposition(c, rb);
    if (!report.ok)
        throw VerificationError("rectangle barcode failed verification: " + report.describe(),
                                std::move(report));
    return rb;
}

int rectangle_multiplicity_oracle(const FilteredComplex& c, int degree, double corner, double left,
                                  double top) {
    const auto crit = critical_values(c);
    auto is_critical = [&](double x) { return std::binary_search(crit.begin(), crit.end(), x); };
    if (!is_critical(corner))
        throw std::invalid_argument("oracle: corner must be a critical value");
    if (!(left < corner) || (std::isfinite(left) && !is_critical(left)))
        throw std::invalid_argument("oracle: left must be a critical value or -inf below corner");
    if (!(top > corner) || (std::isfinite(top) && !is_critical(top)))
        throw std::invalid_argument("oracle: top must be a critical value or +inf above corner");

    // Grid point strictly below x that still clears every critical value < x.
    auto just_below = [&](double x) {
        auto it = std::lower_bound(crit.begin(), crit.end(), x);
        return it == crit.begin() ? x - 1.0 : 0.5 * (*(it - 1) + x);
    };

    const double a_near = just_below(corner);  // corner is the only critical value in (a_near, corner]
    const double b_in = std::isinf(top) ? crit.back() + 1.0 : just_below(top);
    const double a_in = std::isinf(left) ? -kInf : left;

    // rank of H^{(a, corner]} -> H^{(a_near, b']} counts rectangles with
    // edge constraints: left edge <= a, corner exactly, top edge > b'.
    auto f = [&](double a, double b_prime) {
        return structure_map_rank(c, degree, {a, corner}, {a_near, b_prime});
    };
    auto g = [&](double a) {
        int inside = f(a, b_in);
        int outside = std::isinf(top) ? 0 : f(a, top);
        return inside - outside;
    };
    int m = g(a_in);
    if (std::isfinite(left)) m -= g(just_below(left));
    return m;
}

namespace {

nlohmann::ordered_json real_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

}  // namespace

std::string bars_to_json(const std::vector<Bar>& bars) {
    nlohmann::ordered_json doc;
    doc["degrees"] = nlohmann::ordered_json::array();
    std::vector<int> degs;
    for (const auto& b : bars)
        if (std::find(degs.begin(), degs.end(), b.degree) == degs.end()) degs.push_back(b.degree);
    std::sort(degs.begin(), degs.end());
    for (int k : degs) {
        nlohmann::ordered_json entry;
        entry["degree"] = k;
        entry["bars"] = nlohmann::ordered_json::array();
        for (const auto& b : bars) {
            if (b.degree != k) continue;
            nlohmann::ordered_json jb;
            jb["birth"] = b.birth;
            jb["death"] = real_or_inf(b.death);
            jb["birth_generator"] = b.birth_generator;
            if (b.death_generator) jb["death_generator"] = *b.death_generator;
            entry["bars"].push_back(std::move(jb));
        }
        doc["degrees"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string barcode_to_json(const RectangleBarcode& rb) {
    nlohmann::ordered_json doc;
    doc["degrees"] = nlohmann::ordered_json::array();
    for (int k : rb.degrees()) {
        nlohmann::ordered_json entry;
        entry["degree"] = k;
        entry["rectangles"] = nlohmann::ordered_json::array();
        for (const auto& r : rb.in_degree(k)) {
            nlohmann::ordered_json jr;
            jr["c"] = r.c;
            jr["ell1"] = real_or_inf(r.ell1());
            jr["ell2"] = real_or_inf(r.ell2());
            jr["type"] = std::string(1, to_char(r.type));
            jr["generator"] = r.generator;
            entry["rectangles"].push_back(std::move(jr));
        }
        doc["degrees"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string rectangle_to_text(const Rectangle& r) {
    std::ostringstream os;
    os << "deg " << r.degree << ": R(" << format_real(r.c) << "; " << format_real(r.ell1()) << ", "
       << format_real(r.ell2()) << ") [" << to_char(r.type) << "] <" << r.generator << ">";
    return os.str();
}

std::string barcode_to_text(const RectangleBarcode& rb) {
    std::ostringstream os;
    for (const auto& r : rb.rectangles) os << rectangle_to_text(r) << "\n";
    return os.str();
}

std::string bars_to_text(const std::vector<Bar>& bars) {
    std::ostringstream os;
    for (const auto& b : bars) {
        os << "deg " << b.degree << ": [" << format_real(b.birth) << ", " << format_real(b.death)
           << ") <" << b.birth_generator;
        if (b.death_generator) os << ", " << *b.death_generator;
        os << ">\n";
    }
    return os.str();
}

}  // namespace bipersist

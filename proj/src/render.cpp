#include "bipersist/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bipersist/format.hpp"
#include "bipersist/interlevel.hpp"

namespace bipersist {

namespace {

const char* kPalette[] = {"#7f7f7f", "#2a9d8f", "#e76f51", "#9b5de5", "#808000",
                          "#b56576", "#1d3557", "#fb8500", "#386641", "#6d597a"};
constexpr int kColors = 10;

constexpr double kCanvas = 800.0;
constexpr double kPlotX0 = 170.0, kPlotX1 = 640.0;  // main square, a-axis
constexpr double kPlotY0 = 40.0, kPlotY1 = 510.0;   // main square, b-axis (svg y down)
constexpr double kMarginX0 = 40.0, kMarginX1 = 150.0;

struct Range {
    double lo, hi;
};

Range data_range(const FilteredComplex& c) {
    auto crit = critical_values(c);
    if (crit.empty()) return {0.0, 1.0};
    double lo = crit.front(), hi = crit.back();
    double pad = 0.1 * (hi - lo);
    if (pad == 0.0) pad = 0.5;
    return {lo - pad, hi + pad};
}

struct Mapper {
    Range r;
    double x(double a) const { return kPlotX0 + (a - r.lo) / (r.hi - r.lo) * (kPlotX1 - kPlotX0); }
    double y(double b) const { return kPlotY1 - (b - r.lo) / (r.hi - r.lo) * (kPlotY1 - kPlotY0); }
};

void line(std::ostringstream& os, double x1, double y1, double x2, double y2,
          const std::string& color, bool dashed, double width = 2.0) {
    os << "<line x1=\"" << format_fixed2(x1) << "\" y1=\"" << format_fixed2(y1) << "\" x2=\""
       << format_fixed2(x2) << "\" y2=\"" << format_fixed2(y2) << "\" stroke=\"" << color
       << "\" stroke-width=\"" << format_fixed2(width) << "\"";
    if (dashed) os << " stroke-dasharray=\"6,4\"";
    os << " />\n";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

void text(std::ostringstream& os, double x, double y, const std::string& color,
          const std::string& s) {
    os << "<text x=\"" << format_fixed2(x) << "\" y=\"" << format_fixed2(y) << "\" fill=\"" << color
       << "\" font-family=\"monospace\" font-size=\"13\">" << xml_escape(s) << "</text>\n";
}

}  // namespace

std::string render_svg(const RectangleBarcode& rb, const FilteredComplex& c) {
    const Mapper m{data_range(c)};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
          "viewBox=\"0 0 800 800\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\" />\n";

    // Diagonal of the plot square.
    line(os, m.x(m.r.lo), m.y(m.r.lo), m.x(m.r.hi), m.y(m.r.hi), "#000000", false, 1.0);
    text(os, m.x(m.r.hi) + 6, m.y(m.r.hi), "#000000", "diagonal");

    int idx = 0;
    double margin_slot = kMarginX1;
    std::ostringstream legend;
    for (const auto& r : rb.rectangles) {
        const std::string color = kPalette[idx % kColors];
        // Clamp infinite edges to the plot border.
        const double a0 = std::isinf(r.left()) ? m.r.lo : r.left();
        const double b1 = std::isinf(r.top()) ? m.r.hi : r.top();
        const double x0 = m.x(a0), x1 = m.x(r.c);
        const double y0 = m.y(b1), y1 = m.y(r.c);
        os << "<rect x=\"" << format_fixed2(x0) << "\" y=\"" << format_fixed2(y0) << "\" width=\""
           << format_fixed2(x1 - x0) << "\" height=\"" << format_fixed2(y1 - y0) << "\" fill=\""
           << color << "\" fill-opacity=\"0.2\" />\n";
        // Left edge: closed when finite, dashed border run when infinite.
        line(os, x0, y0, x0, y1, color, std::isinf(r.left()));
        // Right edge at the corner: open.
        line(os, x1, y0, x1, y1, color, true);
        // Bottom edge at the corner: closed.
        line(os, x0, y1, x1, y1, color, false);
        // Top edge: open when finite, dashed border run when infinite.
        line(os, x0, y0, x1, y0, color, true);

        // Companion one-parameter bar [c, c+ell2) in the left margin; type N
        // rectangles are invisible to the sublevel barcode and get no bar.
        if (std::isinf(r.left())) {
            margin_slot -= 10.0;
            const double bx = margin_slot;
            const double ytopv = m.y(b1), ybot = m.y(r.c);
            line(os, bx, ybot, bx, ytopv, color, false, 2.5);
            os << "<circle cx=\"" << format_fixed2(bx) << "\" cy=\"" << format_fixed2(ybot)
               << "\" r=\"3\" fill=\"" << color << "\" />\n";
            if (!std::isinf(r.top()))
                os << "<circle cx=\"" << format_fixed2(bx) << "\" cy=\"" << format_fixed2(ytopv)
                   << "\" r=\"3\" fill=\"#ffffff\" stroke=\"" << color << "\" />\n";
        }

        text(legend, kMarginX0, 560.0 + 18.0 * idx, color, rectangle_to_text(r));
        ++idx;
    }
    os << legend.str();
    os << "</svg>\n";
    return os.str();
}

std::string render_ascii(const RectangleBarcode& rb, const FilteredComplex& c) {
    auto grid = verification_grid(c);
    // Interior cells only; the infinite ends reuse the sentinel cells.
    std::vector<double> samples;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double lo = grid[i], hi = grid[i + 1];
        if (std::isinf(lo)) lo = hi - 1.0;
        if (std::isinf(hi)) hi = lo + 1.0;
        samples.push_back(0.5 * (lo + hi));
    }
    std::ostringstream os;
    for (int k : rb.degrees()) {
        os << "degree " << k << "\n";
        const auto rects = rb.in_degree(k);
        for (std::size_t j = samples.size(); j-- > 0;) {
            os << "  ";
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (samples[i] >= samples[j]) {
                    os << ' ';
                    continue;
                }
                int n = 0;
                for (const auto& r : rects)
                    if (r.contains(samples[i], samples[j])) ++n;
                os << (n == 0 ? '.' : (n < 10 ? static_cast<char>('0' + n) : '#'));
            }
            os << "\n";
        }
    }
    if (rb.rectangles.empty()) os << "(empty barcode)\n";
    return os.str();
}

}  // namespace bipersist

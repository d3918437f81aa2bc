#pragma once

#include <string>

#include "bipersist/barcode.hpp"
#include "bipersist/complex.hpp"

namespace bipersist {

/// Deterministic 800x800 SVG of a rectangle barcode: the diagonal, one
/// translucent rectangle per summand (closed edges solid, open edges dashed,
/// infinite edges run to the plot border), the companion one-parameter bars
/// in a left margin, and a legend. Byte-identical output for equal inputs.
std::string render_svg(const RectangleBarcode& rb, const FilteredComplex& c);

/// Grid-cell occupancy map per degree: one character per cell of the
/// critical grid, counting the rectangles that cover the cell.
std::string render_ascii(const RectangleBarcode& rb, const FilteredComplex& c);

}  // namespace bipersist

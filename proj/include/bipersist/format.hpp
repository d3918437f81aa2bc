#pragma once

#include <string>

namespace bipersist {

/// Shortest round-trip decimal form of a finite double; "inf"/"-inf" for the
/// infinities. Locale-independent, so rendered output is byte-stable.
std::string format_real(double x);

/// Fixed two-decimal form (SVG coordinates).
std::string format_fixed2(double x);

}  // namespace bipersist

#include "bipersist/format.hpp"

#include <charconv>
#include <cmath>

namespace bipersist {

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, end);
}

std::string format_fixed2(double x) {
    char buf[48];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace bipersist

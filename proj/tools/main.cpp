// Command-line surface: validate, barcode, sublevel, verify, invariants,
// distance, stability, plot. Exit codes: 0 success, 1 invariant violation,
// 2 parse error, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bipersist/barcode.hpp"
#include "bipersist/complex.hpp"
#include "bipersist/distance.hpp"
#include "bipersist/format.hpp"
#include "bipersist/interlevel.hpp"
#include "bipersist/invariants.hpp"
#include "bipersist/render.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvariantViolation = 1;
constexpr int kParseError = 2;
constexpr int kVerificationFailure = 3;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kParseError, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bipersist::FilteredComplex load(const std::string& path) {
    try {
        return bipersist::parse(read_file(path));
    } catch (const bipersist::ParseError& e) {
        throw CliError{kParseError,
                       path + ": parse error at byte " + std::to_string(e.byte_position) + ": " +
                           e.what()};
    } catch (const bipersist::SemanticError& e) {
        throw CliError{kParseError, path + ": " + e.what()};
    }
}

bipersist::FilteredComplex load_valid(const std::string& path) {
    auto c = load(path);
    auto report = bipersist::validate(c);
    if (!report.ok()) {
        std::ostringstream os;
        os << path << ": invalid complex:";
        for (const auto& v : report.violations) os << "\n  " << v.message;
        throw CliError{kInvariantViolation, os.str()};
    }
    return c;
}

bipersist::RectangleBarcode barcode_or_fail(const bipersist::FilteredComplex& c) {
    try {
        return bipersist::rectangle_barcode(c);
    } catch (const bipersist::VerificationError& e) {
        throw CliError{kVerificationFailure, std::string("verification failure: ") + e.what()};
    }
}

int cmd_validate(const std::string& path) {
    auto c = load(path);
    auto report = bipersist::validate(c);
    if (report.ok()) {
        std::cout << "ok: " << c.total_generators() << " generators across "
                  << c.degrees().size() << " degrees\n";
        return kOk;
    }
    for (const auto& v : report.violations) std::cout << v.message << "\n";
    return kInvariantViolation;
}

int cmd_barcode(const std::string& path, std::optional<int> degree, const std::string& format) {
    auto c = load_valid(path);
    auto rb = barcode_or_fail(c);
    if (degree) {
        bipersist::RectangleBarcode filtered;
        for (const auto& r : rb.rectangles)
            if (r.degree == *degree) filtered.rectangles.push_back(r);
        rb = filtered;
    }
    std::cout << (format == "doc" ? bipersist::barcode_to_json(rb)
                                  : bipersist::barcode_to_text(rb));
    return kOk;
}

int cmd_sublevel(const std::string& path, std::optional<int> degree, const std::string& format) {
    auto c = load_valid(path);
    auto bars = bipersist::sublevel_barcode(c);
    if (degree) {
        std::erase_if(bars, [&](const bipersist::Bar& b) { return b.degree != *degree; });
    }
    std::cout << (format == "doc" ? bipersist::bars_to_json(bars) : bipersist::bars_to_text(bars));
    return kOk;
}

int cmd_verify(const std::string& path) {
    auto c = load_valid(path);
    auto rb = barcode_or_fail(c);
    auto report = bipersist::verify_decomposition(c, rb);
    if (!report.ok) {
        std::cout << "verification failure: " << report.describe() << "\n";
        return kVerificationFailure;
    }
    int weak = 0, middle = 0;
    const auto grid = bipersist::verification_grid(c);
    const std::size_t n = grid.size();

    // Exhaustive quad sweep up to 16 grid points, a seeded 2000-quad sample
    // beyond that (the sweep is quartic in the grid).
    std::vector<bipersist::Quad> quads;
    if (n <= 16) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t a2 = a; a2 < n; ++a2)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t b2 = b; b2 < n; ++b2)
                        quads.push_back({grid[a], grid[a2], grid[b], grid[b2]});
    } else {
        std::mt19937_64 rng(0x5eed5eedULL);
        auto draw = [&]() { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
        for (int i = 0; i < 2000; ++i) {
            std::size_t a = draw(), a2 = draw(), b = draw(), b2 = draw();
            if (a > a2) std::swap(a, a2);
            if (b > b2) std::swap(b, b2);
            quads.push_back({grid[a], grid[a2], grid[b], grid[b2]});
        }
    }
    for (int k : c.degrees())
        for (const auto& q : quads) {
            auto w = bipersist::check_weak_exactness(c, k, q);
            ++weak;
            if (!w.ok) {
                std::cout << "weak exactness failure in degree " << k << ": " << w.witness << "\n";
                return kVerificationFailure;
            }
            if (q.a <= q.a_prime && q.a_prime <= q.b && q.b <= q.b_prime) {
                auto mres = bipersist::check_middle_exactness(c, k, q);
                ++middle;
                if (!mres.ok) {
                    std::cout << "middle exactness failure in degree " << k << ": " << mres.witness
                              << "\n";
                    return kVerificationFailure;
                }
            }
        }
    std::cout << "ok: " << report.dim_checks << " dimension checks, " << report.rank_checks
              << " structure-map checks, " << weak << " weak-exactness quads, " << middle
              << " middle-exactness quads\n";
    return kOk;
}

int cmd_invariants(const std::string& path) {
    auto c = load_valid(path);
    auto rb = barcode_or_fail(c);
    std::cout << bipersist::invariant_report_to_json(bipersist::invariant_report(rb));
    return kOk;
}

int cmd_distance(const std::string& path_a, const std::string& path_b) {
    auto ca = load_valid(path_a);
    auto cb = load_valid(path_b);
    auto rba = barcode_or_fail(ca);
    auto rbb = barcode_or_fail(cb);
    const double d = bipersist::bottleneck_distance(rba, rbb);
    std::cout << "d_bot = " << bipersist::format_real(d) << "\n";
    for (const auto& [k, dk] : bipersist::bottleneck_distance_per_degree(rba, rbb))
        std::cout << "  degree " << k << ": " << bipersist::format_real(dk) << "\n";
    return kOk;
}

int cmd_stability(const std::string& path, int trials, double magnitude, std::uint64_t seed,
                  bool constant) {
    auto c = load_valid(path);
    auto report = bipersist::stability_experiment(c, trials, magnitude, seed, constant);
    std::cout << bipersist::stability_report_to_json(report);
    std::cerr << (report.all_ok ? "all trials within 3*delta" : "3*delta bound violated") << "; "
              << report.sharper_count << "/" << trials << " within delta\n";
    return report.all_ok ? kOk : kVerificationFailure;
}

int cmd_plot(const std::string& path, std::string out, bool ascii) {
    auto c = load_valid(path);
    auto rb = barcode_or_fail(c);
    if (ascii) {
        std::cout << bipersist::render_ascii(rb, c);
        return kOk;
    }
    if (out.empty()) {
        const char* dir = std::getenv("BIPERSIST_OUT_DIR");
        out = (dir ? std::string(dir) : std::string(".")) + "/barcode.svg";
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw CliError{kParseError, "cannot write " + out};
    f << bipersist::render_svg(rb, c);
    std::cout << out << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rectangle barcodes of interlevel-filtered chain complexes over GF(2)"};
    app.require_subcommand(1);

    std::string path, path_b, out, format = "text";
    std::optional<int> degree;
    int trials = 20;
    double magnitude = 0.2;
    std::uint64_t seed = 1;
    bool ascii = false, constant = false;

    auto* validate = app.add_subcommand("validate", "check the two chain-complex invariants");
    validate->add_option("path", path)->required();

    auto* barcode = app.add_subcommand("barcode", "compute the verified rectangle barcode");
    barcode->add_option("path", path)->required();
    barcode->add_option("--degree", degree, "restrict to one degree");
    barcode->add_option("--format", format, "text|doc")->check(CLI::IsMember({"text", "doc"}));

    auto* sublevel = app.add_subcommand("sublevel", "compute the one-parameter barcode");
    sublevel->add_option("path", path)->required();
    sublevel->add_option("--degree", degree);
    sublevel->add_option("--format", format)->check(CLI::IsMember({"text", "doc"}));

    auto* verify = app.add_subcommand("verify", "full rank-table and exactness verification");
    verify->add_option("path", path)->required();

    auto* invariants = app.add_subcommand("invariants", "spectral set, depths, spreads");
    invariants->add_option("path", path)->required();

    auto* distance = app.add_subcommand("distance", "bottleneck distance between two complexes");
    distance->add_option("pathA", path)->required();
    distance->add_option("pathB", path_b)->required();

    auto* stability = app.add_subcommand("stability", "random perturbation experiment");
    stability->add_option("path", path)->required();
    stability->add_option("--trials", trials);
    stability->add_option("--magnitude", magnitude);
    stability->add_option("--seed", seed);
    stability->add_flag("--constant", constant, "uniform constant shifts only");

    auto* plot = app.add_subcommand("plot", "render the rectangle diagram");
    plot->add_option("path", path)->required();
    plot->add_option("--out", out, "SVG output path (default $BIPERSIST_OUT_DIR/barcode.svg)");
    plot->add_flag("--ascii", ascii, "print a grid-cell occupancy map instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (validate->parsed()) return cmd_validate(path);
        if (barcode->parsed()) return cmd_barcode(path, degree, format);
        if (sublevel->parsed()) return cmd_sublevel(path, degree, format);
        if (verify->parsed()) return cmd_verify(path);
        if (invariants->parsed()) return cmd_invariants(path);
        if (distance->parsed()) return cmd_distance(path, path_b);
        if (stability->parsed()) return cmd_stability(path, trials, magnitude, seed, constant);
        if (plot->parsed()) return cmd_plot(path, out, ascii);
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return kOk;
}

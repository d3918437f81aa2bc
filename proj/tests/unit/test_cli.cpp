#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bipersist/complex.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// Runs the CLI under test (path in $BIPERSIST_CLI) and captures stdout.
RunResult run_cli(const std::string& args) {
    const char* cli = std::getenv("BIPERSIST_CLI");
    REQUIRE(cli != nullptr);
    const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[512];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) output.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

fs::path write_temp(const std::string& name, const std::string& content) {
    auto dir = fs::temp_directory_path() / "bipersist_cli_tests";
    fs::create_directories(dir);
    auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("cli exit codes and outputs" * doctest::skip(std::getenv("BIPERSIST_CLI") == nullptr)) {
    auto heart_path = write_temp("heart.json", bipersist::serialize(bipersist::fixture_heart_circle()));

    SUBCASE("validate ok") {
        auto r = run_cli("validate " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("ok") == 0);
    }

    SUBCASE("validate rejects a boundary-square violation with exit 1") {
        const char* bad = R"({
          "field": "GF2",
          "degrees": [
            {"degree": 0, "generators": [{"name": "a", "filtration": 1}]},
            {"degree": 1, "generators": [{"name": "b", "filtration": 2}]},
            {"degree": 2, "generators": [{"name": "c", "filtration": 3}]}
          ],
          "boundaries": [
            {"degree": 1, "columns": [{"source": "b", "targets": ["a"]}]},
            {"degree": 2, "columns": [{"source": "c", "targets": ["b"]}]}
          ]
        })";
        auto path = write_temp("bad_square.json", bad);
        auto r = run_cli("validate " + path.string());
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("boundary square") != std::string::npos);
    }

    SUBCASE("malformed file exits 2") {
        auto path = write_temp("broken.json", "{ this is not json");
        CHECK(run_cli("validate " + path.string()).exit_code == 2);
        CHECK(run_cli("barcode " + path.string()).exit_code == 2);
    }

    SUBCASE("barcode text output") {
        auto r = run_cli("barcode " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output ==
              "deg 0: R(1; inf, inf) [S] <p1>\n"
              "deg 0: R(2; inf, 1) [B] <p2>\n"
              "deg 1: R(3; 1, inf) [N] <p3>\n"
              "deg 1: R(4; inf, inf) [S] <p4>\n");

        auto filtered = run_cli("barcode --degree 0 " + heart_path.string());
        CHECK(filtered.output ==
              "deg 0: R(1; inf, inf) [S] <p1>\n"
              "deg 0: R(2; inf, 1) [B] <p2>\n");
    }

    SUBCASE("sublevel output") {
        auto r = run_cli("sublevel " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("deg 0: [2, 3) <p2, p3>") != std::string::npos);
    }

    SUBCASE("verify fixture") {
        auto r = run_cli("verify " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("ok:") == 0);
    }

    SUBCASE("invariants document") {
        auto r = run_cli("invariants " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"boundary_depth\": 1.0") != std::string::npos);
    }

    SUBCASE("distance of a complex with itself is zero") {
        auto r = run_cli("distance " + heart_path.string() + " " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("d_bot = 0") == 0);
    }

    SUBCASE("distance to the zero complex is inf") {
        auto zero_path = write_temp("zero.json", bipersist::serialize(bipersist::FilteredComplex{}));
        auto torus_path = write_temp("torus.json", bipersist::serialize(bipersist::fixture_torus()));
        auto r = run_cli("distance " + torus_path.string() + " " + zero_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("d_bot = inf") == 0);
    }

    SUBCASE("stability run") {
        auto r = run_cli("stability --trials 5 --magnitude 0.2 --seed 3 " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"bound_3delta_ok\": true") != std::string::npos);
    }

    SUBCASE("plot ascii and svg determinism") {
        auto r = run_cli("plot --ascii " + heart_path.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("degree 0") != std::string::npos);

        auto out = fs::temp_directory_path() / "bipersist_cli_tests" / "plot.svg";
        auto r1 = run_cli("plot --out " + out.string() + " " + heart_path.string());
        CHECK(r1.exit_code == 0);
        std::ifstream f1(out, std::ios::binary);
        std::string svg1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
        run_cli("plot --out " + out.string() + " " + heart_path.string());
        std::ifstream f2(out, std::ios::binary);
        std::string svg2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
        CHECK(svg1 == svg2);
        CHECK(svg1.find("<svg") == 0);
    }

    SUBCASE("unknown subcommand exits 2") {
        CHECK(run_cli("frobnicate x").exit_code == 2);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "expbern/cli.hpp"

using namespace expbern;
using namespace expbern::cli;
using doctest::Approx;

namespace {

ParseResult parse(std::vector<std::string> args) {
    std::vector<const char*> argv{"expbern"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string run(std::vector<std::string> args) {
    ParseResult r = parse(std::move(args));
    REQUIRE(r.config.has_value());
    std::ostringstream os;
    run_config(*r.config, os);
    return os.str();
}

}  // namespace

TEST_CASE("complex literal grammar") {
    CHECK(parse_complex("0") == cplx(0.0, 0.0));
    CHECK(parse_complex("3") == cplx(3.0, 0.0));
    CHECK(parse_complex("-2.5") == cplx(-2.5, 0.0));
    CHECK(parse_complex("1i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-1i") == cplx(0.0, -1.0));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("0.5-2i") == cplx(0.5, -2.0));
    CHECK(parse_complex("2+0.5i") == cplx(2.0, 0.5));
    CHECK(parse_complex("1e-3") == cplx(1e-3, 0.0));
    CHECK(parse_complex("1e-3i") == cplx(0.0, 1e-3));
    CHECK(parse_complex("1.5E+2-2e-1i") == cplx(150.0, -0.2));
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(parse_complex("1i2"), UsageError);
    CHECK_THROWS_AS(parse_complex(""), UsageError);
    CHECK_THROWS_AS(parse_complex("1++2i"), UsageError);
}

TEST_CASE("literal formatting round-trips") {
    for (cplx z : {cplx(0.0), cplx(1.5, 0.0), cplx(0.0, 1.0), cplx(0.0, -2.25),
                   cplx(-0.125, 3.5), cplx(1e-17, -2e8)})
        CHECK(parse_complex(format_complex_literal(z)) == z);
}

TEST_CASE("parse_args echoes the inputs") {
    ParseResult r = parse({"check", "--eigs", "0", "1i", "-1i", "--interval",
                           "0", "3"});
    REQUIRE(r.config.has_value());
    CHECK(r.config->command == "check");
    REQUIRE(r.config->eigs.size() == 3);
    CHECK(r.config->eigs[1] == cplx(0.0, 1.0));
    CHECK(r.config->eigs[2] == cplx(0.0, -1.0));
    REQUIRE(r.config->interval.has_value());
    CHECK(r.config->interval->second == 3.0);

    ParseResult op = parse({"operator", "--eigs", "-1", "1", "1i", "-1i",
                            "--interval", "0", "3.5", "--fix", "0", "1"});
    REQUIRE(op.config.has_value());
    REQUIRE(op.config->fix.has_value());
    CHECK(op.config->fix->first == 0);
    CHECK(op.config->fix->second == 1);
}

TEST_CASE("usage errors") {
    // missing --interval for basis
    ParseResult r = parse({"basis", "--eigs", "0", "1"});
    REQUIRE(r.config.has_value());
    std::ostringstream os;
    CHECK_THROWS_AS(run_config(*r.config, os), UsageError);

    // a >= b
    ParseResult r2 = parse({"basis", "--eigs", "0", "1", "--interval", "2", "1"});
    CHECK_THROWS_AS(run_config(*r2.config, os), UsageError);

    // unknown flag
    ParseResult bad = parse({"basis", "--eigs", "0", "--intervals", "0", "1"});
    CHECK_FALSE(bad.config.has_value());
    CHECK(bad.exit_code == 2);

    // bad eigenvalue literal
    ParseResult lit = parse({"basis", "--eigs", "zz", "--interval", "0", "1"});
    CHECK_FALSE(lit.config.has_value());
    CHECK(lit.exit_code == 2);

    // unknown function
    ParseResult fn = parse({"approx", "--eigs", "0", "1", "--interval", "0", "1",
                            "--function", "cube"});
    CHECK_THROWS_AS(run_config(*fn.config, os), UsageError);
}

TEST_CASE("check record fields") {
    std::string out = run({"check", "--eigs", "0", "1i", "-1i", "--interval",
                           "0", "3", "--format", "json"});
    CHECK(out.find("\"window_bound\": 3.1415926535897931") != std::string::npos);
    CHECK(out.find("\"pair_ok\": true") != std::string::npos);
    CHECK(out.find("\"interval_ok\": \"true\"") != std::string::npos);
    CHECK(out.find("\"window_certificate\": true") != std::string::npos);
}

TEST_CASE("basis grid csv schema") {
    std::string out = run({"basis", "--eigs", "0", "1i", "-1i", "--interval",
                           "0", "3", "--samples", "16"});
    CHECK(out.rfind("x,p0,p1,p2\n", 0) == 0);
    int lines = 0;
    for (char c : out) lines += (c == '\n');
    CHECK(lines == 17);  // header + 16 samples
}

TEST_CASE("operator record includes flags and ratios") {
    std::string out = run({"operator", "--eigs", "-1", "1", "1i", "-1i",
                           "--interval", "0", "3.5", "--fix", "0", "1",
                           "--format", "json"});
    CHECK(out.find("\"nodes_ordered\": false") != std::string::npos);
    CHECK(out.find("\"weights_positive\": true") != std::string::npos);
    CHECK(out.find("2.8454") != std::string::npos);

    // default fix picks the two smallest real eigenvalues
    std::string def = run({"operator", "--eigs", "1i", "-1i", "0", "1",
                           "--interval", "0", "2", "--format", "json"});
    CHECK(def.find("\"fix_0\": \"0\"") != std::string::npos);
    CHECK(def.find("\"fix_1\": \"1\"") != std::string::npos);
    CHECK(def.find("\"nodes_ordered\": true") != std::string::npos);
}

TEST_CASE("operator with a repeated fix goes confluent") {
    std::string out = run({"operator", "--eigs", "0", "0", "0", "--interval",
                           "0", "1", "--format", "json"});
    CHECK(out.find("\"confluent\": true") != std::string::npos);
    CHECK(out.find("0.4999999") != std::string::npos);
}

TEST_CASE("converge csv schema") {
    std::string out = run({"converge", "--eigs", "0", "--interval", "0", "1",
                           "--function", "square", "--nlist", "4,8",
                           "--samples", "65"});
    CHECK(out.rfind("n,sup_error,mesh,ratio_dev,log_ratio_dev\n", 0) == 0);
    CHECK(out.find("\n4,0.0625") != std::string::npos);
    CHECK(out.find("\n8,0.03125") != std::string::npos);
}

TEST_CASE("muntz record") {
    std::string out = run({"muntz", "--eigs", "0", "1", "2", "--interval", "1",
                           "2.718281828459045", "--format", "json"});
    CHECK(out.find("\"a\": 0") != std::string::npos);
    bool b_is_one = out.find("\"b\": 0.99999999999999989") != std::string::npos ||
                    out.find("\"b\": 1") != std::string::npos;
    CHECK(b_is_one);
}

TEST_CASE("runs are deterministic") {
    std::vector<std::string> args{"operator", "--eigs", "-1",   "1",
                                  "1i",       "-1i",    "--interval", "0",
                                  "3.5",      "--format", "json"};
    CHECK(run(args) == run(args));
    std::vector<std::string> conv{"converge", "--eigs", "1i", "-1i",
                                  "--interval", "0", "2", "--function",
                                  "abs_mid", "--nlist", "2,4", "--samples", "33"};
    CHECK(run(conv) == run(conv));
}

TEST_CASE("config files feed options and flags override them") {
    std::string path = "test_cli_config.ini";
    {
        std::ofstream f(path);
        f << "[basis]\neigs=\"0\" \"1i\" \"-1i\"\ninterval=0 3\nsamples=8\n";
    }
    ParseResult r = parse({"--config", path, "basis"});
    REQUIRE(r.config.has_value());
    CHECK(r.config->samples == 8);
    CHECK(r.config->eigs.size() == 3);

    ParseResult over =
        parse({"--config", path, "basis", "--samples", "5"});
    REQUIRE(over.config.has_value());
    CHECK(over.config->samples == 5);

    {
        std::ofstream f(path);
        f << "[basis]\neigs=\"0\"\nbogus_key=1\n";
    }
    ParseResult bad = parse({"--config", path, "basis"});
    CHECK_FALSE(bad.config.has_value());
    CHECK(bad.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("rendered configs parse back to themselves") {
    ParseResult orig = parse({"converge", "--eigs", "1i", "-1i", "--interval",
                              "0", "2", "--function", "abs_mid", "--nlist",
                              "2,4,8", "--samples", "65", "--format", "json"});
    REQUIRE(orig.config.has_value());
    std::string path = "test_cli_render.ini";
    {
        std::ofstream f(path);
        f << render_config(*orig.config);
    }
    ParseResult again = parse({"--config", path, "converge"});
    REQUIRE(again.config.has_value());
    CHECK(again.config->command == orig.config->command);
    CHECK(again.config->eigs == orig.config->eigs);
    CHECK(again.config->interval == orig.config->interval);
    CHECK(again.config->fix == orig.config->fix);
    CHECK(again.config->function == orig.config->function);
    CHECK(again.config->samples == orig.config->samples);
    CHECK(again.config->n_list == orig.config->n_list);
    CHECK(again.config->format == orig.config->format);
    std::remove(path.c_str());
}

TEST_CASE("cli_main exit codes") {
    auto code = [](std::vector<std::string> args) {
        std::vector<const char*> argv{"expbern"};
        for (const auto& a : args) argv.push_back(a.c_str());
        return cli_main(static_cast<int>(argv.size()), argv.data());
    };
    CHECK(code({"basis", "--eigs", "0", "1", "--interval", "0", "1", "--out",
                "test_cli_out.csv"}) == 0);
    std::remove("test_cli_out.csv");
    CHECK(code({"nonsense"}) == 2);
    CHECK(code({"basis", "--eigs", "0"}) == 2);  // missing interval
    // computational failure: (i,-i) is not a Chebyshev pair for {0,pi}
    CHECK(code({"basis", "--eigs", "1i", "-1i", "--interval", "0",
                "3.141592653589793", "--out", "test_cli_out.csv"}) == 1);
    std::remove("test_cli_out.csv");
}

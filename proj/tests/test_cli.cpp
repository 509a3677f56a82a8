#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "neron/cli.hpp"
#include "test_util.hpp"

using namespace neron;
using neron::testing::pp;

namespace {

const char* kE1Text =
    "field Q;\n"
    "vars x;\n"
    "Yvars Y;\n"
    "I = Y^2 - x^2;\n"
    "f = [1];\n"
    "cols = [1];\n"
    "N = 1;\n"
    "yprime = [x + x^3];\n"
    "k = 1;\n"
    "c = 1;\n";

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream f(p, std::ios::binary);
    f << text;
    return p;
}

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("problem parsing") {
    SECTION("the E1 file") {
        ProblemFile pf = parse_problem(kE1Text);
        CHECK(pf.x_names == std::vector<std::string>{"x"});
        CHECK(pf.y_names == std::vector<std::string>{"Y"});
        CHECK(pf.i_gens.size() == 1);
        CHECK(pf.f_indices == std::vector<int>{0});
        CHECK(pf.k == 1);
        CHECK(pf.c == 1);
        CHECK_FALSE(pf.trunc.has_value());
        CHECK(pf.j_gens.empty());
        CHECK(pf.y_prime[0] == pp(pf.sv, "x + x^3"));
    }
    SECTION("the grammar line from the format documentation") {
        ProblemFile pf = parse_problem(
            "vars x,z; J = z^2, z*x; Yvars Y1,Y2; I = Y1^2 - x^2; f = [1]; cols = [1]; "
            "N = 1; yprime = [x + x^3, 0]; k = 1; c = 1;");
        CHECK(pf.x_names.size() == 2);
        CHECK(pf.j_gens.size() == 2);
        CHECK(pf.y_names.size() == 2);
    }
    SECTION("a missing key is named") {
        std::string text(kE1Text);
        text.erase(text.find("k = 1;\n"), 7);
        try {
            parse_problem(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("'k'") != std::string::npos);
        }
    }
    SECTION("a truncated vector entry reports the bracket position") {
        try {
            parse_problem(
                "vars x; Yvars Y; I = Y; f = [1]; cols = [1]; N = 1; yprime = [x + ]; "
                "k = 1; c = 1;");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.column == 67);  // the ']'
        }
    }
    SECTION("undeclared variables are rejected with a location") {
        try {
            parse_problem(
                "vars x;\nYvars Y;\nI = Y^2 - w^2;\nf = [1]; cols = [1]; N = 1; "
                "yprime = [x]; k = 1; c = 1;");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("'w'") != std::string::npos);
            CHECK(e.line == 3);
        }
    }
    SECTION("structure errors") {
        CHECK_THROWS_AS(parse_problem("vars x; vars x; Yvars Y; I = Y; f = [1]; cols = [1]; "
                                      "N = 1; yprime = [x]; k = 1; c = 1;"),
                        ParseError);  // duplicate statement
        CHECK_THROWS_AS(parse_problem("vars x; Yvars Y; I = Y; f = [2]; cols = [1]; N = 1; "
                                      "yprime = [x]; k = 1; c = 1;"),
                        ParseError);  // index out of range
        CHECK_THROWS_AS(parse_problem("vars x; Yvars Y; I = Y; f = [1]; cols = [1]; N = 1; "
                                      "yprime = [x]; k = 0; c = 1;"),
                        ParseError);  // non-positive k
        CHECK_THROWS_AS(parse_problem("vars x; Yvars Y; I = Y; f = [1]; cols = [1]; N = 1; "
                                      "yprime = [x, x]; k = 1; c = 1;"),
                        ParseError);  // wrong y' arity
    }
}

TEST_CASE("problem rendering round-trips", "[property]") {
    std::vector<std::string> corpus{
        kE1Text,
        "vars x,z; J = z^2, z*x; Yvars Y1,Y2; I = Y1^2 - x^2; f = [1]; cols = [1]; N = 1; "
        "yprime = [x + x^3, 0]; k = 1; c = 1;",
        "vars x; Yvars Y; I = Y - x^2; f = [1]; cols = [1]; N = 1; yprime = [x^2]; k = 1; "
        "c = 2; D = 9;",
        "vars x; Yvars Y1, Y2; I = Y1^2 - x^2, Y2^2 - x^6; f = [1, 2]; cols = [2, 1]; N = 1; "
        "yprime = [x + x^12, x^3 - x^12]; k = 4; c = 1;",
        "vars x; Yvars Y; I = Y^2 - 1/4 x^2; f = [1]; cols = [1]; N = 2; "
        "yprime = [1/2 x + x^3]; k = 1; c = 1;",
    };
    for (const auto& text : corpus) {
        ProblemFile a = parse_problem(text);
        std::string canon = a.render();
        ProblemFile b = parse_problem(canon);
        CHECK(b.render() == canon);  // canonical form is a fixed point
        CHECK(a.i_gens == b.i_gens);
        CHECK(a.j_gens == b.j_gens);
        CHECK(a.y_prime == b.y_prime);
        CHECK(a.n_poly == b.n_poly);
        CHECK(a.f_indices == b.f_indices);
        CHECK(a.minor_cols == b.minor_cols);
        CHECK(a.k == b.k);
        CHECK(a.c == b.c);
        CHECK(a.trunc == b.trunc);
    }
}

TEST_CASE("presentation rendering round-trips and is deterministic") {
    SmoothPresentation pres = desingularize(testing::make_e1_input());
    VerifyReport vr = verify_presentation(pres);
    std::string text = render_presentation(pres, vr);
    SECTION("contains the documented display forms") {
        CHECK(text.find("h1 = Y - x - x^3 - (2x + 2x^3)*T;") != std::string::npos);
        CHECK(text.find("s = 1 + 2*T;") != std::string::npos);
        CHECK(text.find("d = 2x + 2x^3;") != std::string::npos);
    }
    SECTION("reading back preserves every component") {
        ReadPresentation rp = read_presentation(text);
        CHECK(rp.pres.d == pres.d);
        CHECK(rp.pres.e == pres.e);
        CHECK(rp.pres.h == pres.h);
        CHECK(rp.pres.q == pres.q);
        CHECK(rp.pres.s == pres.s);
        CHECK(rp.pres.s_prime == pres.s_prime);
        CHECK(rp.pres.g[0].tpart == pres.g[0].tpart);
        CHECK(rp.pres.g[0].a.num() == pres.g[0].a.num());
        CHECK(rp.pres.g[0].a.den() == pres.g[0].a.den());
        CHECK(rp.certificates.checks.size() == 4);
        CHECK(rp.certificates.all_pass());
        // and the re-render is byte-identical
        VerifyReport vr2 = verify_presentation(rp.pres);
        CHECK(render_presentation(rp.pres, vr2) == text);
    }
    SECTION("two runs are byte-identical") {
        SmoothPresentation again = desingularize(testing::make_e1_input());
        CHECK(render_presentation(again, verify_presentation(again)) == text);
    }
}

TEST_CASE("cli subcommands and exit codes") {
    auto e1 = write_temp("neron_e1.nrn", kE1Text);
    std::string shallow(kE1Text);
    shallow.replace(shallow.find("x + x^3"), 7, "x + x^2");
    auto bad = write_temp("neron_bad.nrn", shallow);
    std::string zero(kE1Text);
    zero.replace(zero.find("[x + x^3]"), 9, "[0]");
    auto zerof = write_temp("neron_zero.nrn", zero);

    SECTION("check accepts E1") {
        CliRun r = run({"check", e1.string()});
        CHECK(r.status == 0);
        CHECK(r.out.find("d = 2x + 2x^3") != std::string::npos);
        CHECK(r.out.find("e = 1") != std::string::npos);
        CHECK(r.err.empty());
    }
    SECTION("check rejects the shallow variant with the verbatim message") {
        CliRun r = run({"check", bad.string()});
        CHECK(r.status == 2);
        CHECK(r.err.find("y', N, (f_1,...,f_r) are not well chosen") != std::string::npos);
        CHECK(r.err.find("residual_containment_c") != std::string::npos);
    }
    SECTION("check rejects y' = 0 with the verbatim message") {
        CliRun r = run({"check", zerof.string()});
        CHECK(r.status == 2);
        CHECK(r.err.find("y', N, (f_1,...,f_r) are not well chosen") != std::string::npos);
        CHECK(r.err.find("power_containment") != std::string::npos);
    }
    SECTION("desingularize writes a deterministic presentation") {
        auto out_path = std::filesystem::temp_directory_path() / "neron_e1_pres.txt";
        CliRun r = run({"desingularize", e1.string(), "--out", out_path.string()});
        REQUIRE(r.status == 0);
        std::ifstream f(out_path);
        std::stringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str().find("NERON PRESENTATION v1") == 0);
        CliRun r2 = run({"desingularize", e1.string()});
        CHECK(r2.out == ss.str());
        SECTION("and verify accepts the rendered file") {
            CliRun v = run({"verify", out_path.string()});
            CHECK(v.status == 0);
            CHECK(v.out.find("[pass] dg_in_fh") != std::string::npos);
            CHECK(v.out.find("[pass] f_in_hg_saturated") != std::string::npos);
            CHECK(v.out.find("[pass] units_congruent_one") != std::string::npos);
            CHECK(v.out.find("[pass] taylor_congruence") != std::string::npos);
        }
        std::filesystem::remove(out_path);
    }
    SECTION("desingularize on a rejected input exits 2") {
        CliRun r = run({"desingularize", bad.string()});
        CHECK(r.status == 2);
        CHECK(r.err.find("y', N, (f_1,...,f_r) are not well chosen") != std::string::npos);
    }
    SECTION("lift prints the solution and residual") {
        CliRun r = run({"lift", e1.string(), "--trunc", "8"});
        CHECK(r.status == 0);
        CHECK(r.out.find("Y = x") != std::string::npos);
        CHECK(r.out.find("residual order = 8") != std::string::npos);
    }
    SECTION("parametrize threads the free block through") {
        std::string e2 =
            "vars x; Yvars Y1, Y2; I = Y1^2 - x^2; f = [1]; cols = [1]; N = 1; "
            "yprime = [x + x^3, 0]; k = 1; c = 1;";
        auto e2f = write_temp("neron_e2.nrn", e2);
        CliRun r = run({"parametrize", e2f.string(), "--z", "1", "--trunc", "8"});
        CHECK(r.status == 0);
        CHECK(r.out.find("Y2 = 4x^2 + 8x^4 + 4x^6") != std::string::npos);
        CHECK(r.out.find("residual order = 8") != std::string::npos);
        std::filesystem::remove(e2f);
    }
    SECTION("precision computes the linear map") {
        CliRun r = run({"precision", "-e", "1", "-k", "1", "-c", "1"});
        CHECK(r.status == 0);
        CHECK(r.out == "4\n");
        CliRun r2 = run({"precision", "-e", "2", "-k", "3", "-c", "0"});
        CHECK(r2.out == "15\n");
    }
    SECTION("usage and parse failures exit 1") {
        CHECK(run({}).status == 1);
        CHECK(run({"frobnicate"}).status == 1);
        CHECK(run({"check", "/nonexistent/file.nrn"}).status == 1);
        auto garbled = write_temp("neron_garbled.nrn", "vars x; Yvars Y; I = Y +;");
        CliRun r = run({"check", garbled.string()});
        CHECK(r.status == 1);
        CHECK(r.err.find("error") != std::string::npos);
        std::filesystem::remove(garbled);
    }

    std::filesystem::remove(e1);
    std::filesystem::remove(bad);
    std::filesystem::remove(zerof);
}

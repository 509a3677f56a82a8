// Acceptance suite: one criterion per runner, one pass/fail line each.
// Everything is exact arithmetic; there are no tolerances anywhere.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "neron/cli.hpp"
#include "test_util.hpp"

using namespace neron;
using neron::testing::pp;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << label << note
              << " [" << ms << " ms]" << std::endl;
    if (!ok) ++g_failures;
}

bool check(bool cond, const std::string& what) {
    if (!cond) std::cout << "       failed: " << what << std::endl;
    return cond;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path data_dir = argc > 1 ? argv[1] : "data";

    criterion(1, "E1 golden run, exact symbolic equality", [&] {
        SmoothPresentation pres = desingularize(testing::make_e1_input());
        const SessionVars& sv = pres.sv;
        bool ok = true;
        ok &= check(pres.d == pp(sv, "2x + 2x^3"), "d = 2x + 2x^3");
        ok &= check(pres.e == 1, "e = 1");
        ok &= check(pres.q[0] == pp(sv, "T^2"), "Q = T^2");
        ok &= check(pres.g[0].tpart == pp(sv, "T + T^2"), "g = a + T + T^2");
        Polynomial fy = pp(sv, "2x^4 + x^6");
        Polynomial d2 = pres.d * pres.d;
        ok &= check((pres.g[0].a * d2).equals(LocalFraction(fy)), "d^2 a = f(y') exactly");
        ok &= check(pres.s == pp(sv, "1 + 2T"), "s = 1 + 2T");
        ok &= check(pres.s_prime == pp(sv, "1 + 2T"), "s' = 1 + 2T");
        ok &= check(pres.h[0] == pp(sv, "Y - x - x^3 - (2x + 2x^3)T"), "h as constructed");
        return ok;
    });

    criterion(2, "proof-identity certificates on E1, E2', and 20 random instances", [&] {
        auto start = std::chrono::steady_clock::now();
        bool ok = true;
        ok &= check(verify_presentation(desingularize(testing::make_e1_input())).all_pass(),
                    "E1 certificates");
        ok &= check(verify_presentation(desingularize(testing::make_e2prime_input())).all_pass(),
                    "E2' certificates");
        std::mt19937_64 rng(20260810);
        for (int i = 0; i < 20 && ok; ++i) {
            DesingularizationInput inp = (i % 2 == 0) ? testing::random_instance_n1(rng)
                                                      : testing::random_instance_n2(rng);
            SmoothPresentation pres = desingularize(inp);
            VerifyReport vr = verify_presentation(pres);
            ok &= check(vr.all_pass(), "random instance " + std::to_string(i));
        }
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        ok &= check(secs <= 30, "runtime within 30 s");
        return ok;
    });

    criterion(3, "annihilator exponents cross-checked against truncation at order 8", [&] {
        bool ok = true;
        {
            SessionVars sv = testing::session1();
            LocalRing A(sv.u, sv.x, {});
            ok &= check(annihilator_exponent(A, pp(sv, "2x + 2x^3"), sv.eliminator) == 1,
                        "J = 0: e = 1");
            TruncatedRing R(A, 8);
            // the annihilator is trivial: no low-degree standard monomial dies
            for (const auto& mu : R.standard_monomials()) {
                if (mu.deg() + 2 >= 8) continue;
                ok &= check(!R.is_zero(R.mul(R.reduce(Polynomial::term(sv.u, mu, Rational(1))),
                                             R.reduce(pp(sv, "2x + 2x^3")))),
                            "domain has no annihilators");
            }
        }
        {
            SessionVars sv = make_session({"x", "z"}, {"Y"});
            LocalRing A(sv.u, sv.x, {pp(sv, "z^2"), pp(sv, "z*x")});
            Polynomial d = pp(sv, "x");
            ok &= check(annihilator_exponent(A, d, sv.eliminator) == 1, "J = (z^2, zx): e = 1");
            TruncatedRing R(A, 8);
            IdealHandle colon = colon_ideal(A, d, sv.eliminator);
            for (const auto& g : colon.generators())
                ok &= check(R.is_zero(R.mul(R.reduce(g), R.reduce(d))),
                            "colon generators annihilate d");
            // kernel agreement at stabilization, away from the boundary
            for (const auto& mu : R.standard_monomials()) {
                if (mu.deg() + 2 >= 8) continue;
                Polynomial mono = Polynomial::term(sv.u, mu, Rational(1));
                bool k1 = R.is_zero(R.mul(R.reduce(mono), R.reduce(d)));
                bool k2 = R.is_zero(R.mul(R.reduce(mono), R.reduce(d * d)));
                ok &= check(k1 == k2, "kernels of d and d^2 agree on low degrees");
            }
        }
        {
            SessionVars sv = make_session({"x", "z"}, {"Y"});
            LocalRing A(sv.u, sv.x, {pp(sv, "z^3"), pp(sv, "z*x")});
            Polynomial d = pp(sv, "x + z");
            ok &= check(annihilator_exponent(A, d, sv.eliminator) == 2, "J = (z^3, zx): e = 2");
            TruncatedRing R(A, 8);
            // z is in (0 : d^2) but not (0 : d): a strict step, witnessed exactly
            ok &= check(!R.is_zero(R.mul(R.reduce(pp(sv, "z")), R.reduce(d))),
                        "z d != 0 in the truncation");
            ok &= check(R.is_zero(R.mul(R.reduce(pp(sv, "z")), R.reduce(d * d))),
                        "z d^2 = 0 in the truncation");
            // and the chain stabilizes at 2: kernels of d^2 and d^3 agree
            for (const auto& mu : R.standard_monomials()) {
                if (mu.deg() + 3 >= 8) continue;
                Polynomial mono = Polynomial::term(sv.u, mu, Rational(1));
                bool k2 = R.is_zero(R.mul(R.reduce(mono), R.reduce(d * d)));
                bool k3 = R.is_zero(R.mul(R.reduce(mono), R.reduce(d * d * d)));
                ok &= check(k2 == k3, "kernels of d^2 and d^3 agree on low degrees");
            }
        }
        return ok;
    });

    criterion(4, "lifting: E1 at D = 8 and ten approximate instances", [&] {
        bool ok = true;
        {
            SmoothPresentation pres = desingularize(testing::make_e1_input());
            LiftResult lr = lift_solution(pres, 8);
            ok &= check(residual_order(pres.i_gens, pres.sv.y, lr.y, lr.R) == 8,
                        "E1 residual order 8");
            int agree = lr.R.order_of(lr.R.sub(lr.y[0], lr.R.reduce(pres.y_prime[0])));
            ok &= check(agree >= 3, "E1 lift agrees with y' to order 3");
        }
        std::mt19937_64 rng(424242);
        for (int i = 0; i < 10 && ok; ++i) {
            int m = 4 + (i % 4);
            DesingularizationInput inp = testing::elkik_instance(rng, m);
            SmoothPresentation pres = desingularize(inp);
            TruncatedRing probe(pres.ring(), 12);
            std::map<VarId, TruncatedRing::Element> at_yp{
                {pres.sv.y[0], probe.reduce(pres.y_prime[0])}};
            ok &= check(probe.order_of(probe.evaluate(pres.i_gens[0], at_yp)) == m,
                        "instance residual order is exactly m");
            LiftResult lr = lift_solution(pres, 8);
            ok &= check(residual_order(pres.i_gens, pres.sv.y, lr.y, lr.R) == 8,
                        "lift residual order 8");
            int agree = lr.R.order_of(lr.R.sub(lr.y[0], lr.R.reduce(pres.y_prime[0])));
            ok &= check(agree >= m - 3, "lift agrees with y' to order m - 3");
        }
        return ok;
    });

    criterion(5, "parametrization: ten distinct solutions from (x)^3 parameters", [&] {
        SmoothPresentation pres = desingularize(testing::make_e2prime_input());
        const SessionVars& sv = pres.sv;
        bool ok = true;
        std::vector<TruncatedRing::Element> seen;
        for (int i = 1; i <= 10; ++i) {
            LiftResult lr = parametrize_solutions(
                pres, {Polynomial::constant(sv.u, i) * pp(sv, "x^3")}, 8);
            ok &= check(residual_order(pres.i_gens, sv.y, lr.y, lr.R) == 8,
                        "solution " + std::to_string(i) + " has residual order 8");
            for (const auto& prev : seen)
                ok &= check(!(prev == lr.y[1]), "solutions are pairwise distinct");
            seen.push_back(lr.y[1]);
        }
        return ok;
    });

    criterion(6, "rejection contract: exit 2 and the verbatim message with witnesses", [&] {
        bool ok = true;
        for (const char* name : {"e1_shallow.nrn", "e1_zero.nrn"}) {
            std::ostringstream out, err;
            int status = run_cli({"check", (data_dir / name).string()}, out, err);
            ok &= check(status == 2, std::string(name) + " exits 2");
            ok &= check(err.str().find("y', N, (f_1,...,f_r) are not well chosen") !=
                            std::string::npos,
                        "verbatim step-4 message");
            bool witnessed = err.str().find("residual_containment") != std::string::npos ||
                             err.str().find("power_containment") != std::string::npos ||
                             err.str().find("d_nonzero") != std::string::npos;
            ok &= check(witnessed, "structured witness identifies the containment");
        }
        return ok;
    });

    criterion(7, "precision helper reproduces (2e+1)k + c", [&] {
        bool ok = true;
        ok &= check(required_precision(1, 1, 1) == 4, "(1,1,1) -> 4");
        ok &= check(required_precision(2, 3, 0) == 15, "(2,3,0) -> 15");
        ok &= check(required_precision(1, 2, 5) == 11, "(1,2,5) -> 11");
        std::ostringstream out, err;
        int status = run_cli({"precision", "-e", "1", "-k", "1", "-c", "1"}, out, err);
        ok &= check(status == 0 && out.str() == "4\n", "CLI prints 4");
        return ok;
    });

    criterion(8, "parser round-trip fixed point and byte determinism on the corpus", [&] {
        bool ok = true;
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(data_dir))
            if (entry.path().extension() == ".nrn") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        ok &= check(files.size() >= 10, "corpus has at least 10 files");
        for (const auto& f : files) {
            ProblemFile a = parse_problem(slurp(f));
            std::string canon = a.render();
            ProblemFile b = parse_problem(canon);
            ok &= check(b.render() == canon, f.filename().string() + " round-trips");
            ok &= check(a.i_gens == b.i_gens && a.j_gens == b.j_gens &&
                            a.y_prime == b.y_prime && a.f_indices == b.f_indices &&
                            a.minor_cols == b.minor_cols && a.k == b.k && a.c == b.c,
                        f.filename().string() + " parses to the same problem");
        }
        // byte-identical presentation output across two runs
        std::ostringstream out1, err1, out2, err2;
        int s1 = run_cli({"desingularize", (data_dir / "e1.nrn").string()}, out1, err1);
        int s2 = run_cli({"desingularize", (data_dir / "e1.nrn").string()}, out2, err2);
        ok &= check(s1 == 0 && s2 == 0 && out1.str() == out2.str(),
                    "desingularize output is byte-deterministic");
        return ok;
    });

    std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed"
                                  : "ACCEPTANCE: " + std::to_string(g_failures) +
                                        " criterion(s) failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "test_util.hpp"

using namespace neron;
using neron::testing::pp;

TEST_CASE("partial derivatives follow the power rule") {
    SessionVars sv = testing::session1();
    CHECK(pp(sv, "Y^2 - x^2").derivative(sv.y[0]) == pp(sv, "2Y"));
    CHECK(pp(sv, "x Y T^2").derivative(sv.t[0]) == pp(sv, "2x*Y*T"));
    CHECK(pp(sv, "7").derivative(sv.y[0]).is_zero());
    CHECK_THROWS_AS(pp(sv, "x").derivative(99), Error);
}

TEST_CASE("substitution expands exactly") {
    SessionVars sv = testing::session1();
    std::map<VarId, Polynomial> at_yp{{sv.y[0], pp(sv, "x + x^3")}};
    CHECK(pp(sv, "Y^2 - x^2").substitute(at_yp) == pp(sv, "2x^4 + x^6"));
    CHECK(pp(sv, "2Y").substitute(at_yp) == pp(sv, "2x + 2x^3"));

    std::map<VarId, Polynomial> identity{{sv.y[0], pp(sv, "Y")}};
    Polynomial p = pp(sv, "Y^3 - 2x*Y + 1/2");
    CHECK(p.substitute(identity) == p);
}

TEST_CASE("taylor_split matches the worked E1 decomposition") {
    SessionVars sv = testing::session1();
    TaylorSplit ts = taylor_split(pp(sv, "Y^2 - x^2"), {sv.y[0]}, {pp(sv, "x + x^3")},
                                  {pp(sv, "T")}, sv.marker);
    CHECK(ts.f0 == pp(sv, "2x^4 + x^6"));
    CHECK(ts.f1 == pp(sv, "(2x + 2x^3)T"));
    REQUIRE(ts.higher.size() == 1);
    CHECK(ts.higher.at(2) == pp(sv, "T^2"));
}

TEST_CASE("taylor_split of a linear polynomial has no higher part") {
    SessionVars sv = testing::session1();
    TaylorSplit ts = taylor_split(pp(sv, "3Y + x"), {sv.y[0]}, {pp(sv, "x^2")}, {pp(sv, "T")},
                                  sv.marker);
    CHECK(ts.f0 == pp(sv, "x + 3x^2"));
    CHECK(ts.f1 == pp(sv, "3T"));
    CHECK(ts.higher.empty());
}

TEST_CASE("taylor_split of a pure cube lands in degree three") {
    SessionVars sv = testing::session1();
    TaylorSplit ts = taylor_split(pp(sv, "Y^3"), {sv.y[0]}, {Polynomial::zero(sv.u)},
                                  {pp(sv, "T")}, sv.marker);
    CHECK(ts.f0.is_zero());
    CHECK(ts.f1.is_zero());
    REQUIRE(ts.higher.size() == 1);
    CHECK(ts.higher.at(3) == pp(sv, "T^3"));
}

TEST_CASE("taylor_split reconstructs the substitution exactly", "[property]") {
    SessionVars sv = make_session({"x"}, {"Y1", "Y2"});
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = testing::random_poly(rng, sv, {sv.x[0], sv.y[0], sv.y[1]}, 4, 6);
        Polynomial y1 = testing::random_poly(rng, sv, {sv.x[0]}, 3, 3);
        Polynomial y2 = testing::random_poly(rng, sv, {sv.x[0]}, 3, 3);
        Polynomial l1 = testing::random_poly(rng, sv, {sv.x[0], sv.t[0], sv.t[1]}, 2, 3);
        Polynomial l2 = testing::random_poly(rng, sv, {sv.x[0], sv.t[0], sv.t[1]}, 2, 3);
        TaylorSplit ts = taylor_split(p, {sv.y[0], sv.y[1]}, {y1, y2}, {l1, l2}, sv.marker);
        Polynomial d = Polynomial::variable(sv.u, sv.marker);
        Polynomial direct =
            p.substitute({{sv.y[0], y1 + d * l1}, {sv.y[1], y2 + d * l2}});
        Polynomial rebuilt = ts.f0 + d * ts.f1;
        for (const auto& [j, bj] : ts.higher) rebuilt += d.pow(j) * bj;
        CHECK(rebuilt == direct);
    }
}

TEST_CASE("adjugate conventions and identity") {
    SessionVars sv = make_session({"x"}, {"a", "b"});
    PolyMatrix one(sv.u, 1, 1);
    one.at(0, 0) = pp(sv, "a");
    PolyMatrix adj1 = one.adjugate();
    CHECK(adj1.at(0, 0) == pp(sv, "1"));

    PolyMatrix m(sv.u, 2, 2);
    m.at(0, 0) = pp(sv, "a");
    m.at(0, 1) = pp(sv, "b");
    m.at(1, 1) = pp(sv, "1");
    PolyMatrix adj = m.adjugate();
    CHECK(adj.at(0, 0) == pp(sv, "1"));
    CHECK(adj.at(0, 1) == pp(sv, "-b"));
    CHECK(adj.at(1, 0).is_zero());
    CHECK(adj.at(1, 1) == pp(sv, "a"));

    PolyMatrix rect(sv.u, 2, 3);
    CHECK_THROWS_AS(rect.adjugate(), Error);
    CHECK_THROWS_AS(rect.det(), Error);
}

TEST_CASE("adjugate identity on random matrices", "[property]") {
    SessionVars sv = make_session({"x", "z"}, {"Y"});
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            PolyMatrix h(sv.u, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    h.at(i, j) = testing::random_poly(rng, sv, {sv.x[0], sv.x[1], sv.y[0]}, 2, 3);
            PolyMatrix prod = h * h.adjugate();
            PolyMatrix expect = PolyMatrix::identity(sv.u, n).scaled(h.det());
            CHECK((prod - expect).is_zero());
            PolyMatrix prod2 = h.adjugate() * h;
            CHECK((prod2 - expect).is_zero());
        }
    }
}

TEST_CASE("exact division and its failure witness") {
    SessionVars sv = make_session({"x", "z"}, {"Y"});
    CHECK(exact_divide(pp(sv, "2x^4 + x^6"), pp(sv, "x^2")) == pp(sv, "2x^2 + x^4"));
    CHECK(exact_divide(pp(sv, "z*x"), pp(sv, "x")) == pp(sv, "z"));
    CHECK_THROWS_AS(exact_divide(pp(sv, "x"), pp(sv, "Y")), NonDivisibleError);
    try {
        exact_divide(pp(sv, "x"), pp(sv, "Y"));
    } catch (const NonDivisibleError& e) {
        CHECK(e.remainder == "x");
    }
}

TEST_CASE("exact_divide recovers the factor on random products", "[property]") {
    SessionVars sv = make_session({"x", "z"}, {"Y"});
    std::mt19937_64 rng(99);
    std::vector<VarId> vars{sv.x[0], sv.x[1], sv.y[0]};
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = testing::random_poly(rng, sv, vars, 3, 4);
        Polynomial q = testing::random_nonzero_poly(rng, sv, vars, 3, 4);
        CHECK(exact_divide(p * q, q) == p);
    }
}

TEST_CASE("fraction normalization") {
    SessionVars sv = testing::session1();
    SECTION("rescaling the denominator to constant term 1") {
        Polynomial p = pp(sv, "Y^2 + 3x");
        LocalFraction f(pp(sv, "2") * p, pp(sv, "2 + 2x^2"));
        CHECK(f.num() == p);
        CHECK(f.den() == pp(sv, "1 + x^2"));
    }
    SECTION("worked E1 constant") {
        LocalFraction a(pp(sv, "2x^4 + x^6"), pp(sv, "4x^2 (1 + x^2)^2"));
        CHECK(a.num() == pp(sv, "(1/2)x^2 + (1/4)x^4"));
        CHECK(a.den() == pp(sv, "(1 + x^2)^2"));
        CHECK(a.den() == pp(sv, "1 + 2x^2 + x^4"));
    }
    SECTION("non-unit denominator is rejected") {
        CHECK_THROWS_AS(LocalFraction(pp(sv, "1 + Y"), pp(sv, "x")), NotUnitError);
    }
    SECTION("cross-multiplied equality") {
        LocalFraction f(pp(sv, "x"), pp(sv, "1 + x"));
        LocalFraction g(pp(sv, "x + x^2"), pp(sv, "(1 + x)^2"));
        CHECK(f.equals(g));
        CHECK_FALSE(f.equals(LocalFraction(pp(sv, "x"), pp(sv, "1 - x"))));
    }
}

TEST_CASE("ring axioms on random polynomials", "[property]") {
    SessionVars sv = make_session({"x", "z"}, {"Y"});
    std::mt19937_64 rng(123);
    std::vector<VarId> vars{sv.x[0], sv.x[1], sv.y[0]};
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = testing::random_poly(rng, sv, vars, 3, 4);
        Polynomial q = testing::random_poly(rng, sv, vars, 3, 4);
        Polynomial r = testing::random_poly(rng, sv, vars, 3, 4);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
    }
}

TEST_CASE("Leibniz rule on random polynomials", "[property]") {
    SessionVars sv = make_session({"x"}, {"Y"});
    std::mt19937_64 rng(321);
    std::vector<VarId> vars{sv.x[0], sv.y[0]};
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = testing::random_poly(rng, sv, vars, 4, 4);
        Polynomial q = testing::random_poly(rng, sv, vars, 4, 4);
        for (VarId v : vars)
            CHECK((p * q).derivative(v) == p * q.derivative(v) + q * p.derivative(v));
    }
}

TEST_CASE("canonical string form is ascending and re-parseable") {
    SessionVars sv = testing::session1();
    CHECK(pp(sv, "x^3 2 + x 2").str() == "2x + 2x^3");
    CHECK(pp(sv, "1 + 2T").str() == "1 + 2*T");
    CHECK(pp(sv, "Y - x").str() == "Y - x");
    CHECK(pp(sv, "0").str() == "0");
    CHECK(pp(sv, "-x + Y").str() == "Y - x");
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial p = testing::random_poly(rng, sv, {sv.x[0], sv.y[0], sv.t[0]}, 4, 5);
        CHECK(pp(sv, p.str()) == p);
    }
}

TEST_CASE("monomial orders rank as documented") {
    SessionVars sv = make_session({"x", "z"}, {"Y"});
    MonomialOrder loc = MonomialOrder::local(sv.u);
    MonomialOrder prod = MonomialOrder::product(sv.u);
    auto lm = [&](const std::string& s, const MonomialOrder& o) {
        return Polynomial::term(sv.u, pp(sv, s).leading_term(o).first, Rational(1));
    };
    // 1 is largest locally; lower degree beats higher.
    CHECK(lm("1 + x + x^2", loc) == pp(sv, "1"));
    CHECK(lm("x - x^2", loc) == pp(sv, "x"));
    // The global block dominates the product order.
    CHECK(lm("x^5 + x*Y", prod) == pp(sv, "x*Y"));
    CHECK(lm("1 + Y", prod) == pp(sv, "Y"));
}

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "neron/errors.hpp"
#include "neron/ideal_ops.hpp"
#include "neron/matrix.hpp"
#include "neron/presentation.hpp"
#include "neron/taylor.hpp"

namespace neron {

namespace detail {

inline void check_shape(const DesingularizationInput& inp) {
    int n = inp.n(), r = inp.r();
    if (r < 1 || r > n) throw Error("need 1 <= r <= n selected generators");
    if (static_cast<int>(inp.minor_cols.size()) != r)
        throw Error("minor_cols must select exactly r Y-columns");
    if (static_cast<int>(inp.y_prime.size()) != n) throw Error("y' must have one entry per Y");
    if (inp.k < 1) throw Error("k must be positive");
    if (inp.c < 0) throw Error("c must be non-negative");
    std::vector<char> seen_f(inp.i_gens.size(), 0), seen_c(static_cast<size_t>(n), 0);
    for (int i : inp.f_indices) {
        if (i < 0 || i >= static_cast<int>(inp.i_gens.size()))
            throw Error("f index out of range");
        if (seen_f[static_cast<size_t>(i)]++) throw Error("duplicate f index");
    }
    for (int j : inp.minor_cols) {
        if (j < 0 || j >= n) throw Error("minor column out of range");
        if (seen_c[static_cast<size_t>(j)]++) throw Error("duplicate minor column");
    }
    for (const auto& yp : inp.y_prime)
        if (!yp.supported_on(inp.sv.x)) throw Error("y' entries must lie in k[x]");
}

// Bindings sending every Y to the corresponding y' entry.
inline std::map<VarId, Polynomial> y_prime_bindings(const DesingularizationInput& inp) {
    std::map<VarId, Polynomial> b;
    for (int j = 0; j < inp.n(); ++j)
        b[inp.sv.y[static_cast<size_t>(j)]] = inp.y_prime[static_cast<size_t>(j)];
    return b;
}

// Generators of (x)^k as explicit monomials.
inline std::vector<Polynomial> power_gens(const SharedUniverse& u, const std::vector<VarId>& x,
                                          int k) {
    std::vector<Polynomial> gens;
    for_each_monomial_of_degree(u, x, k, [&](const Monomial& m) {
        gens.push_back(Polynomial::term(u, m, Rational(1)));
        return true;
    });
    return gens;
}

inline PolyMatrix selected_jacobian_block(const DesingularizationInput& inp,
                                          const std::vector<int>& perm, int size_r) {
    const SharedUniverse& u = inp.sv.u;
    PolyMatrix m(u, size_r, size_r);
    for (int i = 0; i < size_r; ++i) {
        const Polynomial& f = inp.i_gens[static_cast<size_t>(inp.f_indices[static_cast<size_t>(i)])];
        for (int j = 0; j < size_r; ++j)
            m.at(i, j) = f.derivative(inp.sv.y[static_cast<size_t>(perm[static_cast<size_t>(j)])]);
    }
    return m;
}

}  // namespace detail

// Steps 1-4: compute M, P, d and e, then check the input promises. A failing
// report carries the witnesses; the pipeline turns it into the verbatim
// rejection.
inline CheckReport validate_input(const DesingularizationInput& inp) {
    detail::check_shape(inp);
    const SharedUniverse& u = inp.sv.u;
    const std::vector<int> perm = inp.permutation();
    const int r = inp.r();
    LocalRing A = inp.ring();
    CheckReport rep;

    Polynomial M = detail::selected_jacobian_block(inp, perm, r).det();
    Polynomial P = inp.n_poly * M;
    rep.d = P.substitute(detail::y_prime_bindings(inp));

    bool d_nonzero = !rep.d.is_zero() && !is_member(rep.d, A.j_handle());
    rep.conditions.push_back(
        {"d_nonzero", d_nonzero, d_nonzero ? "" : "d = " + rep.d.str() + " vanishes in A"});
    rep.e = d_nonzero ? annihilator_exponent(A, rep.d, inp.sv.eliminator) : 1;

    // Input promise N in ((f) : I): N*q must fall into (f) + J for every
    // generator q of I.
    {
        std::vector<Polynomial> gens;
        for (int i : inp.f_indices) gens.push_back(inp.i_gens[static_cast<size_t>(i)]);
        gens.insert(gens.end(), inp.j_gens.begin(), inp.j_gens.end());
        IdealHandle fj(u, std::move(gens), MonomialOrder::product(u));
        bool pass = true;
        std::string witness;
        for (size_t qi = 0; qi < inp.i_gens.size(); ++qi) {
            Polynomial nf = normal_form(inp.n_poly * inp.i_gens[qi], fj);
            if (!nf.is_zero()) {
                pass = false;
                witness = "N*I[" + std::to_string(qi + 1) + "] has normal form " + nf.str();
                break;
            }
        }
        rep.conditions.push_back({"N_in_colon", pass, witness});
    }

    auto residual_check = [&](const std::string& name, int bound) {
        std::vector<Polynomial> gens = detail::power_gens(u, inp.sv.x, bound);
        gens.insert(gens.end(), inp.j_gens.begin(), inp.j_gens.end());
        IdealHandle target(u, std::move(gens), MonomialOrder::local(u));
        bool pass = true;
        std::string witness;
        auto bind = detail::y_prime_bindings(inp);
        for (size_t qi = 0; qi < inp.i_gens.size(); ++qi) {
            Polynomial val = inp.i_gens[qi].substitute(bind);
            Polynomial nf = normal_form(val, target);
            if (!nf.is_zero()) {
                pass = false;
                witness = "I[" + std::to_string(qi + 1) + "](y') = " + val.str() +
                          " is not in (x)^" + std::to_string(bound) + " + J (normal form " +
                          nf.str() + ")";
                break;
            }
        }
        rep.conditions.push_back({name, pass, witness});
    };
    residual_check("residual_containment", (2 * rep.e + 1) * inp.k);

    {
        std::vector<Polynomial> gens = inp.j_gens;
        gens.push_back(rep.d);
        IdealHandle dj(u, std::move(gens), MonomialOrder::local(u));
        Monomial w;
        bool pass = contains_power(dj, inp.sv.x, inp.k, &w);
        rep.conditions.push_back(
            {"power_containment", pass,
             pass ? ""
                  : "monomial " + Polynomial::term(u, w, Rational(1)).str() + " of (x)^" +
                        std::to_string(inp.k) + " is not in (d) + J"});
    }

    if (inp.c > 0) residual_check("residual_containment_c", (2 * rep.e + 1) * inp.k + inp.c);
    return rep;
}

// Steps 5-6: the bordered Jacobian H (selected columns permuted to the
// front, then completed by (0 | Id)), and G = N * adj(H), which satisfies
// G*H = H*G = P*Id exactly.
inline std::pair<PolyMatrix, PolyMatrix> border_matrix(const DesingularizationInput& inp) {
    const SharedUniverse& u = inp.sv.u;
    const std::vector<int> perm = inp.permutation();
    const int n = inp.n(), r = inp.r();
    PolyMatrix H(u, n, n);
    for (int i = 0; i < r; ++i) {
        const Polynomial& f = inp.i_gens[static_cast<size_t>(inp.f_indices[static_cast<size_t>(i)])];
        for (int j = 0; j < n; ++j)
            H.at(i, j) = f.derivative(inp.sv.y[static_cast<size_t>(perm[static_cast<size_t>(j)])]);
    }
    for (int i = r; i < n; ++i) H.at(i, i) = Polynomial::constant(u, 1);
    PolyMatrix G = H.adjugate().scaled(inp.n_poly);
    return {std::move(H), std::move(G)};
}

namespace detail {

// Rows of G evaluated at y', as linear forms L_l = sum_j G(y')[l][j] * T_j.
inline std::vector<Polynomial> shift_forms(const DesingularizationInput& inp,
                                           const PolyMatrix& G) {
    const SharedUniverse& u = inp.sv.u;
    auto bind = y_prime_bindings(inp);
    const int n = inp.n();
    std::vector<Polynomial> L;
    for (int l = 0; l < n; ++l) {
        Polynomial row(u);
        for (int j = 0; j < n; ++j)
            row += G.at(l, j).substitute(bind) *
                   Polynomial::variable(u, inp.sv.t[static_cast<size_t>(j)]);
        L.push_back(std::move(row));
    }
    return L;
}

}  // namespace detail

// Step 7: h_l = Y_{perm(l)} - y'_{perm(l)} - d^e * (G(y') T)_l.
inline std::vector<Polynomial> build_h(const DesingularizationInput& inp, const CheckReport& rep,
                                       const PolyMatrix& G) {
    const SharedUniverse& u = inp.sv.u;
    const std::vector<int> perm = inp.permutation();
    Polynomial de = rep.d.pow(rep.e);
    std::vector<Polynomial> L = detail::shift_forms(inp, G);
    std::vector<Polynomial> h;
    for (int l = 0; l < inp.n(); ++l) {
        int orig = perm[static_cast<size_t>(l)];
        h.push_back(Polynomial::variable(u, inp.sv.y[static_cast<size_t>(orig)]) -
                    inp.y_prime[static_cast<size_t>(orig)] - de * L[static_cast<size_t>(l)]);
    }
    return h;
}

struct GBuild {
    std::vector<Polynomial> q;   // Q_i, each in (T)^2
    std::vector<LocalFraction> a;
    std::vector<GEntry> g;
    std::optional<std::string> warning;
};

// Steps 8-10: Taylor-split each selected f at y' along G(y')T, assemble
// Q_i = sum_{j>=2} d^{e(j-2)} B_j, divide f_i(y') by d^{e+1} modulo J, and
// form g_i = a_i + T_i + d^{e-1} Q_i. The linear Taylor coefficient is
// verified against the bordered-matrix identity, and a_i in d^e (x)^c + J is
// checked as a warning when c > 0.
inline GBuild build_g(const DesingularizationInput& inp, const CheckReport& rep,
                      const PolyMatrix& G) {
    const SharedUniverse& u = inp.sv.u;
    const std::vector<int> perm = inp.permutation();
    const int r = inp.r();
    LocalRing A = inp.ring();
    Polynomial d = rep.d;
    Polynomial d_e = d.pow(rep.e);
    Polynomial d_e1 = d.pow(rep.e + 1);
    Polynomial d_em1 = d.pow(rep.e - 1);
    std::vector<Polynomial> L = detail::shift_forms(inp, G);

    std::vector<VarId> y_perm;
    std::vector<Polynomial> yp_perm;
    for (int l = 0; l < inp.n(); ++l) {
        y_perm.push_back(inp.sv.y[static_cast<size_t>(perm[static_cast<size_t>(l)])]);
        yp_perm.push_back(inp.y_prime[static_cast<size_t>(perm[static_cast<size_t>(l)])]);
    }

    GBuild out;
    for (int i = 0; i < r; ++i) {
        const Polynomial& f = inp.i_gens[static_cast<size_t>(inp.f_indices[static_cast<size_t>(i)])];
        TaylorSplit ts = taylor_split(f, y_perm, yp_perm, L, inp.sv.marker);
        // Proof identity (df/dY) G = (P Id_r | 0): the linear coefficient
        // collapses to d * T_i.
        Polynomial expect_f1 =
            d * Polynomial::variable(u, inp.sv.t[static_cast<size_t>(i)]);
        if (ts.f1 != expect_f1)
            throw InternalError("taylor linear term differs from d*T_i on row " +
                                std::to_string(i + 1));
        Polynomial qi(u);
        for (const auto& [j, bj] : ts.higher) qi += d.pow(rep.e * (j - 2)) * bj;
        // a_i with d^{e+1} a_i = f_i(y') modulo J.
        LocalFraction ai;
        try {
            ai = represent_in_ideal(ts.f0, {d_e1}, A.j_handle()).at(0);
        } catch (const MembershipError& err) {
            throw InternalError("f_" + std::to_string(i + 1) +
                                "(y') is not divisible by d^{e+1} modulo J: " + err.witness);
        }
        GEntry ge;
        ge.a = ai;
        ge.tpart = Polynomial::variable(u, inp.sv.t[static_cast<size_t>(i)]) + d_em1 * qi;
        out.q.push_back(std::move(qi));
        out.a.push_back(std::move(ai));
        out.g.push_back(std::move(ge));
    }

    if (inp.c > 0) {
        std::vector<Polynomial> gens;
        for (auto& mono : detail::power_gens(u, inp.sv.x, inp.c)) gens.push_back(d_e * mono);
        gens.insert(gens.end(), inp.j_gens.begin(), inp.j_gens.end());
        IdealHandle target(u, std::move(gens), MonomialOrder::local(u));
        for (int i = 0; i < r; ++i) {
            if (!is_member(out.a[static_cast<size_t>(i)], target)) {
                out.warning = "a_" + std::to_string(i + 1) +
                              " is not visibly in d^e (x)^c + J";
                break;
            }
        }
    }
    return out;
}

// Steps 12-13: s = det of the first r columns of (dg/dT), and s' from the
// marker expansion of P at y' + d^e G(y') T, using P(y') = d and e >= 1 so
// no division is ever performed.
inline std::pair<Polynomial, Polynomial> compute_units(const DesingularizationInput& inp,
                                                       const CheckReport& rep,
                                                       const PolyMatrix& G, const GBuild& gb) {
    const SharedUniverse& u = inp.sv.u;
    const std::vector<int> perm = inp.permutation();
    const int r = inp.r();
    PolyMatrix jac(u, r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            jac.at(i, j) =
                gb.g[static_cast<size_t>(i)].tpart.derivative(inp.sv.t[static_cast<size_t>(j)]);
    Polynomial s = jac.det();

    std::vector<VarId> y_perm;
    std::vector<Polynomial> yp_perm;
    for (int l = 0; l < inp.n(); ++l) {
        y_perm.push_back(inp.sv.y[static_cast<size_t>(perm[static_cast<size_t>(l)])]);
        yp_perm.push_back(inp.y_prime[static_cast<size_t>(perm[static_cast<size_t>(l)])]);
    }
    Polynomial M = detail::selected_jacobian_block(inp, perm, r).det();
    Polynomial P = inp.n_poly * M;
    TaylorSplit ts = taylor_split(P, y_perm, yp_perm, detail::shift_forms(inp, G), inp.sv.marker);
    if (ts.f0 != rep.d) throw InternalError("P(y') disagrees with d");
    Polynomial s_prime = Polynomial::constant(u, 1);
    s_prime += rep.d.pow(rep.e - 1) * ts.f1;
    for (const auto& [j, bj] : ts.higher) s_prime += rep.d.pow(rep.e * j - 1) * bj;
    return {std::move(s), std::move(s_prime)};
}

// The full pipeline, steps 1-14. Throws ValidationError with the verbatim
// step-4 message when the input is rejected.
inline SmoothPresentation desingularize(const DesingularizationInput& inp) {
    CheckReport rep = validate_input(inp);
    if (!rep.ok()) throw ValidationError(rep);
    auto [H, G] = border_matrix(inp);

    // G H = H G = P Id_n must hold exactly.
    {
        const SharedUniverse& u = inp.sv.u;
        Polynomial M = detail::selected_jacobian_block(inp, inp.permutation(), inp.r()).det();
        PolyMatrix PId = PolyMatrix::identity(u, inp.n()).scaled(inp.n_poly * M);
        if (!(G * H - PId).is_zero() || !(H * G - PId).is_zero())
            throw InternalError("bordered matrix identity G H = H G = P Id failed");
    }

    std::vector<Polynomial> h = build_h(inp, rep, G);
    GBuild gb = build_g(inp, rep, G);
    rep.a_membership_warning = gb.warning;
    auto [s, s_prime] = compute_units(inp, rep, G, gb);

    SmoothPresentation pres;
    pres.sv = inp.sv;
    pres.j_gens = inp.j_gens;
    pres.i_gens = inp.i_gens;
    pres.f_indices = inp.f_indices;
    pres.minor_cols = inp.minor_cols;
    pres.perm = inp.permutation();
    pres.n_poly = inp.n_poly;
    pres.y_prime = inp.y_prime;
    pres.k = inp.k;
    pres.c = inp.c;
    pres.e = rep.e;
    pres.d = rep.d;
    for (int i = 0; i < inp.n(); ++i) {
        std::vector<Polynomial> hr, gr;
        for (int j = 0; j < inp.n(); ++j) {
            hr.push_back(H.at(i, j));
            gr.push_back(G.at(i, j));
        }
        pres.H.push_back(std::move(hr));
        pres.G.push_back(std::move(gr));
    }
    pres.h = std::move(h);
    pres.q = gb.q;
    pres.g = gb.g;
    pres.s = std::move(s);
    pres.s_prime = std::move(s_prime);
    pres.report = rep;
    return pres;
}

// Certificate checks instantiating the proof identities on a constructed
// presentation:
//   (i)   d^{e+1} g_i in (f, h) + J  (cleared denominators),
//   (ii)  f_i in (h, g, J) after inverting s, s',
//   (iii) s = s' = 1 modulo (T),
//   (iv)  f(Y) - f(y') - d^e (df/dY)(y') G(y') T - d^{2e} Q in (h) + J.
inline VerifyReport verify_presentation(const SmoothPresentation& pres) {
    const SharedUniverse& u = pres.sv.u;
    VerifyReport out;
    std::vector<Polynomial> fsel = pres.selected_f();
    Polynomial d_e1 = pres.d.pow(pres.e + 1);

    {
        std::vector<Polynomial> gens = fsel;
        gens.insert(gens.end(), pres.h.begin(), pres.h.end());
        gens.insert(gens.end(), pres.j_gens.begin(), pres.j_gens.end());
        IdealHandle fh(u, std::move(gens), MonomialOrder::product(u));
        bool pass = true;
        std::string detail_msg;
        for (int i = 0; i < pres.r(); ++i) {
            Polynomial p = d_e1 * pres.g[static_cast<size_t>(i)].cleared();
            Polynomial nf = normal_form(p, fh);
            if (!nf.is_zero()) {
                pass = false;
                detail_msg = "d^{e+1} g_" + std::to_string(i + 1) + " not in (f, h) + J";
                break;
            }
        }
        out.checks.push_back({"dg_in_fh", pass, detail_msg});
    }

    {
        std::vector<Polynomial> gens = pres.h;
        for (const auto& cg : pres.cleared_g()) gens.push_back(cg);
        gens.insert(gens.end(), pres.j_gens.begin(), pres.j_gens.end());
        bool pass = true;
        std::string detail_msg;
        for (int i = 0; i < pres.r(); ++i) {
            if (!saturation_membership(fsel[static_cast<size_t>(i)], gens,
                                       {pres.s, pres.s_prime}, pres.sv.rabinowitsch)) {
                pass = false;
                detail_msg = "f_" + std::to_string(i + 1) + " not in (h, g)_{ss'} + J";
                break;
            }
        }
        out.checks.push_back({"f_in_hg_saturated", pass, detail_msg});
    }

    {
        std::map<VarId, Polynomial> t_zero;
        for (VarId t : pres.sv.t) t_zero[t] = Polynomial::zero(u);
        Polynomial one = Polynomial::constant(u, 1);
        bool pass = pres.s.substitute(t_zero) == one && pres.s_prime.substitute(t_zero) == one;
        out.checks.push_back({"units_congruent_one", pass,
                              pass ? "" : "s or s' is not 1 modulo (T)"});
    }

    {
        std::vector<Polynomial> gens = pres.h;
        gens.insert(gens.end(), pres.j_gens.begin(), pres.j_gens.end());
        IdealHandle hj(u, std::move(gens), MonomialOrder::product(u));
        std::map<VarId, Polynomial> bind;
        for (int j = 0; j < pres.n(); ++j)
            bind[pres.sv.y[static_cast<size_t>(j)]] = pres.y_prime[static_cast<size_t>(j)];
        Polynomial d_e = pres.d.pow(pres.e);
        Polynomial d_2e = d_e * d_e;
        bool pass = true;
        std::string detail_msg;
        for (int i = 0; i < pres.r(); ++i) {
            const Polynomial& f = fsel[static_cast<size_t>(i)];
            Polynomial expr = f - f.substitute(bind) -
                              d_e * pres.d *
                                  Polynomial::variable(u, pres.sv.t[static_cast<size_t>(i)]) -
                              d_2e * pres.q[static_cast<size_t>(i)];
            if (!normal_form(expr, hj).is_zero()) {
                pass = false;
                detail_msg = "taylor congruence fails for f_" + std::to_string(i + 1);
                break;
            }
        }
        out.checks.push_back({"taylor_congruence", pass, detail_msg});
    }
    return out;
}

}  // namespace neron

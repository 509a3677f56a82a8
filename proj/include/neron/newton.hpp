#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "neron/errors.hpp"
#include "neron/presentation.hpp"
#include "neron/truncated.hpp"

namespace neron {

struct NewtonConfig {
    int max_iterations = 0;
    int target_order = 0;

    static NewtonConfig for_order(int D) {
        NewtonConfig cfg;
        cfg.target_order = D;
        int log2d = 0;
        while ((1 << log2d) < D) ++log2d;
        cfg.max_iterations = log2d + 4;
        return cfg;
    }
};

using TruncatedVector = std::vector<TruncatedRing::Element>;

namespace detail {

using Element = TruncatedRing::Element;

// r x r matrices over the truncated ring.
using ElemMatrix = std::vector<std::vector<Element>>;

inline ElemMatrix mat_mul(const TruncatedRing& R, const ElemMatrix& a, const ElemMatrix& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    ElemMatrix r(n, std::vector<Element>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Element s;
            for (size_t l = 0; l < k; ++l)
                s = R.add(s, R.mul(a[i][l], b[l][j]));
            r[i][j] = s;
        }
    return r;
}

inline TruncatedVector mat_apply(const TruncatedRing& R, const ElemMatrix& a,
                                 const TruncatedVector& v) {
    TruncatedVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Element s;
        for (size_t j = 0; j < v.size(); ++j) s = R.add(s, R.mul(a[i][j], v[j]));
        r[i] = s;
    }
    return r;
}

// Exact inverse of the rational constant-term matrix (Gauss-Jordan).
inline std::vector<std::vector<Rational>> invert_rational(
    std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw Error("jacobian is not invertible modulo (x)");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

// Solves g(T_1..T_r, free block) = 0 in the truncated ring by Newton
// iteration from T = 0, with the Jacobian inverse computed once modulo (x)
// and lifted alongside the iterates. The residual orders per iteration can
// be captured for the contraction property tests.
inline TruncatedVector newton_solve(const SmoothPresentation& pres,
                                    const TruncatedVector& free_values, const TruncatedRing& R,
                                    const NewtonConfig& cfg,
                                    std::vector<std::vector<int>>* residual_orders = nullptr) {
    const int r = pres.r(), n = pres.n();
    if (static_cast<int>(free_values.size()) != n - r)
        throw Error("newton_solve: free block must have n - r entries");

    // g_i evaluated at a full T-assignment.
    std::vector<TruncatedRing::Element> a_img(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        a_img[static_cast<size_t>(i)] = R.truncate(pres.g[static_cast<size_t>(i)].a);
    auto assignment = [&](const TruncatedVector& t) {
        std::map<VarId, TruncatedRing::Element> bind;
        for (int j = 0; j < r; ++j) bind[pres.sv.t[static_cast<size_t>(j)]] = t[static_cast<size_t>(j)];
        for (int j = r; j < n; ++j)
            bind[pres.sv.t[static_cast<size_t>(j)]] = free_values[static_cast<size_t>(j - r)];
        return bind;
    };
    auto eval_g = [&](const TruncatedVector& t) {
        auto bind = assignment(t);
        TruncatedVector out(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i)
            out[static_cast<size_t>(i)] =
                R.add(a_img[static_cast<size_t>(i)],
                      R.evaluate(pres.g[static_cast<size_t>(i)].tpart, bind));
        return out;
    };

    std::vector<std::vector<Polynomial>> jac(static_cast<size_t>(r),
                                             std::vector<Polynomial>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            jac[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                pres.g[static_cast<size_t>(i)].tpart.derivative(pres.sv.t[static_cast<size_t>(j)]);
    auto eval_jac = [&](const TruncatedVector& t) {
        auto bind = assignment(t);
        detail::ElemMatrix m(static_cast<size_t>(r),
                             std::vector<TruncatedRing::Element>(static_cast<size_t>(r)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    R.evaluate(jac[static_cast<size_t>(i)][static_cast<size_t>(j)], bind);
        return m;
    };

    TruncatedVector t(static_cast<size_t>(r));  // start at the base point T = 0

    // Invert the Jacobian modulo (x); its determinant is the unit s.
    detail::ElemMatrix V;
    {
        detail::ElemMatrix j0 = eval_jac(t);
        std::vector<std::vector<Rational>> consts(static_cast<size_t>(r),
                                                  std::vector<Rational>(static_cast<size_t>(r)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                consts[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    R.constant_coeff(j0[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        auto inv = detail::invert_rational(consts);
        V.assign(static_cast<size_t>(r),
                 std::vector<TruncatedRing::Element>(static_cast<size_t>(r)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                V[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    R.scale(R.one(), inv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }

    detail::ElemMatrix id(static_cast<size_t>(r),
                          std::vector<TruncatedRing::Element>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = R.one();

    for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
        TruncatedVector rho = eval_g(t);
        if (residual_orders) {
            std::vector<int> orders;
            for (const auto& e : rho) orders.push_back(R.order_of(e));
            residual_orders->push_back(std::move(orders));
        }
        bool done = true;
        for (const auto& e : rho)
            if (!R.is_zero(e)) {
                done = false;
                break;
            }
        if (done) return t;
        if (iter == cfg.max_iterations) break;
        TruncatedVector step = detail::mat_apply(R, V, rho);
        for (int i = 0; i < r; ++i)
            t[static_cast<size_t>(i)] = R.sub(t[static_cast<size_t>(i)], step[static_cast<size_t>(i)]);
        // Lift the inverse: V <- V (2 Id - J(t) V).
        detail::ElemMatrix jv = detail::mat_mul(R, eval_jac(t), V);
        detail::ElemMatrix corr = id;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                corr[static_cast<size_t>(i)][static_cast<size_t>(j)] = R.sub(
                    R.add(id[static_cast<size_t>(i)][static_cast<size_t>(j)],
                          id[static_cast<size_t>(i)][static_cast<size_t>(j)]),
                    jv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        V = detail::mat_mul(R, V, corr);
    }
    throw Error("newton iteration did not reach the target order within max_iterations");
}

struct LiftResult {
    TruncatedRing R;
    TruncatedVector t;  // full T-assignment in permuted slots
    TruncatedVector y;  // original Y order
};

namespace detail {

inline TruncatedVector assemble_y(const SmoothPresentation& pres, const TruncatedRing& R,
                                  const TruncatedVector& t_full) {
    const SharedUniverse& u = pres.sv.u;
    const int n = pres.n();
    std::map<VarId, Element> bind;
    for (int j = 0; j < n; ++j) bind[pres.sv.t[static_cast<size_t>(j)]] = t_full[static_cast<size_t>(j)];
    Polynomial d_e = pres.d.pow(pres.e);
    std::map<VarId, Polynomial> ybind;
    for (int j = 0; j < n; ++j)
        ybind[pres.sv.y[static_cast<size_t>(j)]] = pres.y_prime[static_cast<size_t>(j)];
    TruncatedVector y(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        Polynomial row(u);
        for (int j = 0; j < n; ++j)
            row += pres.G[static_cast<size_t>(l)][static_cast<size_t>(j)].substitute(ybind) *
                   Polynomial::variable(u, pres.sv.t[static_cast<size_t>(j)]);
        Element shift = R.evaluate(d_e * row, bind);
        int orig = pres.perm[static_cast<size_t>(l)];
        y[static_cast<size_t>(orig)] =
            R.add(R.reduce(pres.y_prime[static_cast<size_t>(orig)]), shift);
    }
    return y;
}

}  // namespace detail

// Theorem-style lift: free T-block 0, solve for the leading block, then
// y = y' + d^e G(y') T. The result satisfies I(y) = 0 in the truncation and
// y = y' modulo (x)^c.
inline LiftResult lift_solution(const SmoothPresentation& pres, int D,
                                std::vector<std::vector<int>>* residual_orders = nullptr) {
    if (D < required_precision(pres.e, pres.k, pres.c))
        throw Error("truncation order below (2e+1)k + c");
    LiftResult out{TruncatedRing(pres.ring(), D), {}, {}};
    TruncatedVector free_values(static_cast<size_t>(pres.n() - pres.r()));
    NewtonConfig cfg = NewtonConfig::for_order(D);
    TruncatedVector lead = newton_solve(pres, free_values, out.R, cfg, residual_orders);
    out.t = lead;
    for (const auto& z : free_values) out.t.push_back(z);
    out.y = detail::assemble_y(pres, out.R, out.t);
    return out;
}

// Parametrized family: the free T-block is set to z (one entry per free
// slot) and the leading block is solved for. Distinct z give distinct
// solutions while d stays regular at the working precision.
inline LiftResult parametrize_solutions(const SmoothPresentation& pres,
                                        const std::vector<Polynomial>& z, int D) {
    if (static_cast<int>(z.size()) != pres.n() - pres.r())
        throw Error("parametrize_solutions: z must have n - r entries");
    LiftResult out{TruncatedRing(pres.ring(), D), {}, {}};
    TruncatedVector free_values;
    for (const auto& p : z) free_values.push_back(out.R.reduce(p));
    NewtonConfig cfg = NewtonConfig::for_order(D);
    TruncatedVector lead = newton_solve(pres, free_values, out.R, cfg);
    out.t = lead;
    for (const auto& e : free_values) out.t.push_back(e);
    out.y = detail::assemble_y(pres, out.R, out.t);
    return out;
}

// Largest m <= D with every generator evaluating into (x)^m at y; D when
// everything vanishes.
inline int residual_order(const std::vector<Polynomial>& i_gens, const std::vector<VarId>& y_vars,
                          const TruncatedVector& y, const TruncatedRing& R) {
    std::map<VarId, TruncatedRing::Element> bind;
    for (size_t j = 0; j < y_vars.size(); ++j) bind[y_vars[j]] = y[j];
    int best = R.truncation_order();
    for (const auto& f : i_gens) best = std::min(best, R.order_of(R.evaluate(f, bind)));
    return best;
}

}  // namespace neron

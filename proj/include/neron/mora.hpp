#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "neron/errors.hpp"
#include "neron/order.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// Mora's weak normal form and the standard basis completion built on it.
// Works for any of the session's monomial orders; the ecart-guarded reducer
// set is what makes reduction terminate for local and mixed orders.

struct MoraResult {
    Polynomial nf;
    // With tracking enabled:  unit * p  ==  sum_i cofactors[i] * basis[i] + nf
    // holds exactly, and the unit has constant term 1 (a unit of the
    // localization).
    Polynomial unit;
    std::vector<Polynomial> cofactors;
};

// An element of a standard basis together with its exact representation in
// terms of the original generators: p == sum_i rep[i] * gens[i].
struct SBElement {
    Polynomial p;
    std::vector<Polynomial> rep;
};

namespace detail {

struct Reducer {
    Polynomial p;
    Monomial lm;
    Rational lc;
    int ecart;
    // Index into the basis list for original reducers; -1 for intermediate
    // results stored by the ecart rule, which carry their own relation data.
    int basis_index;
    Polynomial unit;
    std::vector<Polynomial> cofactors;
};

inline int ecart_of(const Polynomial& p, const Monomial& lm) { return p.total_degree() - lm.deg(); }

}  // namespace detail

inline MoraResult mora_reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                              const MonomialOrder& ord, bool track) {
    const SharedUniverse u = p.universe();
    MoraResult res;
    res.nf = p;
    if (track) {
        res.unit = Polynomial::constant(u, 1);
        res.cofactors.assign(basis.size(), Polynomial::zero(u));
    }
    if (p.is_zero()) return res;

    std::vector<detail::Reducer> reducers;
    reducers.reserve(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].is_zero()) continue;
        auto [lm, lc] = basis[i].leading_term(ord);
        reducers.push_back({basis[i], lm, lc, detail::ecart_of(basis[i], lm),
                            static_cast<int>(i), Polynomial(), {}});
    }

    Polynomial& h = res.nf;
    long guard = 0;
    while (!h.is_zero()) {
        if (++guard > 4'000'000) throw InternalError("mora_reduce exceeded its step guard");
        auto [hm, hc] = h.leading_term(ord);
        int h_ecart = detail::ecart_of(h, hm);
        // Eligible reducer of minimal ecart; ties prefer original basis
        // elements, then earliest insertion.
        int best = -1;
        for (size_t i = 0; i < reducers.size(); ++i) {
            if (!reducers[i].lm.divides(hm)) continue;
            if (best < 0 || reducers[i].ecart < reducers[best].ecart)
                best = static_cast<int>(i);
        }
        if (best < 0) break;
        if (reducers[best].ecart > h_ecart) {
            // Store the current partial result as a future reducer.
            detail::Reducer stored{h, hm, hc, h_ecart, -1, Polynomial(), {}};
            if (track) {
                stored.unit = res.unit;
                stored.cofactors = res.cofactors;
            }
            reducers.push_back(std::move(stored));
        }
        const detail::Reducer& g = reducers[static_cast<size_t>(best)];
        Monomial mm = hm / g.lm;
        Rational mc = hc / g.lc;
        Polynomial mono = Polynomial::term(u, mm, mc);
        h -= mono * g.p;
        if (track) {
            if (g.basis_index >= 0) {
                res.cofactors[static_cast<size_t>(g.basis_index)] += mono;
            } else {
                res.unit -= mono * g.unit;
                for (size_t i = 0; i < res.cofactors.size(); ++i)
                    res.cofactors[i] -= mono * g.cofactors[i];
            }
        }
    }
    return res;
}

inline Polynomial mora_nf(const Polynomial& p, const std::vector<Polynomial>& basis,
                          const MonomialOrder& ord) {
    return mora_reduce(p, basis, ord, /*track=*/false).nf;
}

// Buchberger completion with Mora reduction. Returns a standard basis of the
// input ideal in the localization selected by the order, with leading
// coefficients scaled to 1 and exact representations over the input
// generators. No pair criteria are applied; the instance sizes here do not
// need them and the classical criteria require care for local orders.
inline std::vector<SBElement> standard_basis_of(const std::vector<Polynomial>& gens,
                                                const MonomialOrder& ord) {
    SharedUniverse u;
    for (const auto& g : gens)
        if (g.universe()) {
            u = g.universe();
            break;
        }
    std::vector<SBElement> basis;
    std::vector<Monomial> lms;
    std::vector<Polynomial> polys;  // mirrors basis, for mora_reduce

    auto push = [&](Polynomial p, std::vector<Polynomial> rep) {
        auto [lm, lc] = p.leading_term(ord);
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            p *= inv;
            for (auto& r : rep) r *= inv;
        }
        basis.push_back({p, std::move(rep)});
        lms.push_back(lm);
        polys.push_back(basis.back().p);
    };

    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        std::vector<Polynomial> rep(gens.size(), Polynomial::zero(u));
        rep[i] = Polynomial::constant(u, 1);
        push(gens[i], std::move(rep));
    }

    struct Pair {
        int i, j, deg;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };
    std::vector<Pair> queue;
    auto add_pairs = [&](int j) {
        for (int i = 0; i < j; ++i)
            queue.push_back({i, j, Monomial::lcm(lms[static_cast<size_t>(i)],
                                                 lms[static_cast<size_t>(j)])
                                       .deg()});
        std::sort(queue.begin(), queue.end(), pair_less);
    };
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) add_pairs(j);

    long guard = 0;
    while (!queue.empty()) {
        if (++guard > 200'000) throw InternalError("standard_basis_of exceeded its pair guard");
        Pair pr = queue.front();
        queue.erase(queue.begin());
        const Monomial lcm = Monomial::lcm(lms[static_cast<size_t>(pr.i)],
                                           lms[static_cast<size_t>(pr.j)]);
        Polynomial mi = Polynomial::term(u, lcm / lms[static_cast<size_t>(pr.i)], Rational(1));
        Polynomial mj = Polynomial::term(u, lcm / lms[static_cast<size_t>(pr.j)], Rational(1));
        Polynomial spoly = mi * basis[static_cast<size_t>(pr.i)].p -
                           mj * basis[static_cast<size_t>(pr.j)].p;
        if (spoly.is_zero()) continue;
        MoraResult red = mora_reduce(spoly, polys, ord, /*track=*/true);
        if (red.nf.is_zero()) continue;
        // New element; compose its representation through the s-polynomial.
        std::vector<Polynomial> rep(gens.size(), Polynomial::zero(u));
        for (size_t k = 0; k < gens.size(); ++k)
            rep[k] = red.unit * (mi * basis[static_cast<size_t>(pr.i)].rep[k] -
                                 mj * basis[static_cast<size_t>(pr.j)].rep[k]);
        for (size_t b = 0; b < basis.size(); ++b)
            if (!red.cofactors[b].is_zero())
                for (size_t k = 0; k < gens.size(); ++k)
                    rep[k] -= red.cofactors[b] * basis[b].rep[k];
        push(std::move(red.nf), std::move(rep));
        add_pairs(static_cast<int>(basis.size()) - 1);
    }
    return basis;
}

}  // namespace neron

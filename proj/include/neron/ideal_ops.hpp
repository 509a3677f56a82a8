#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "neron/errors.hpp"
#include "neron/fraction.hpp"
#include "neron/local_ring.hpp"
#include "neron/mora.hpp"

namespace neron {

// Weak normal form against the ideal's standard basis. Zero exactly on
// members of the localized ideal; idempotent (the result's leading monomial
// has no divisor among the basis leads).
inline Polynomial normal_form(const Polynomial& p, const IdealHandle& I) {
    return mora_nf(p, I.standard_basis_polys(), I.order());
}

inline bool is_member(const Polynomial& p, const IdealHandle& I) {
    if (p.is_zero()) return true;
    return normal_form(p, I).is_zero();
}

// Fractions with unit denominators are members exactly when their
// numerators are.
inline bool is_member(const LocalFraction& f, const IdealHandle& I) {
    return is_member(f.num(), I);
}

inline bool ideal_equal(const IdealHandle& a, const IdealHandle& b) {
    if (a.universe() != b.universe() || !(a.order() == b.order()))
        throw Error("ideal_equal: handles live in different ambient rings");
    for (const auto& g : a.generators())
        if (!is_member(g, b)) return false;
    for (const auto& g : b.generators())
        if (!is_member(g, a)) return false;
    return true;
}

// Enumerates monomials of total degree exactly k over `vars`, in a fixed
// deterministic order, and feeds each to `visit` until it returns false.
inline void for_each_monomial_of_degree(const SharedUniverse& u, const std::vector<VarId>& vars,
                                        int k, const std::function<bool(const Monomial&)>& visit) {
    Monomial m(u->size());
    std::function<bool(size_t, int)> rec = [&](size_t pos, int remaining) -> bool {
        if (pos + 1 == vars.size()) {
            m.e[static_cast<size_t>(vars[pos])] = remaining;
            bool keep = visit(m);
            m.e[static_cast<size_t>(vars[pos])] = 0;
            return keep;
        }
        for (int take = remaining; take >= 0; --take) {
            m.e[static_cast<size_t>(vars[pos])] = take;
            if (!rec(pos + 1, remaining - take)) {
                m.e[static_cast<size_t>(vars[pos])] = 0;
                return false;
            }
        }
        m.e[static_cast<size_t>(vars[pos])] = 0;
        return true;
    };
    if (!vars.empty()) rec(0, k);
}

// (x)^k subseteq I, decided monomial by monomial; on failure the first
// failing monomial (in enumeration order) is reported.
inline bool contains_power(const IdealHandle& I, const std::vector<VarId>& x_vars, int k,
                           Monomial* witness = nullptr) {
    if (k < 1) throw Error("contains_power requires k >= 1");
    bool ok = true;
    for_each_monomial_of_degree(I.universe(), x_vars, k, [&](const Monomial& m) {
        if (!is_member(Polynomial::term(I.universe(), m, Rational(1)), I)) {
            ok = false;
            if (witness) *witness = m;
            return false;
        }
        return true;
    });
    return ok;
}

// Division in the localized ring: returns cofactors c_i (fractions with unit
// denominators) with p - sum c_i * gens_i in (extra); throws MembershipError
// with the nonzero normal form as witness when p is not in (gens) + (extra).
inline std::vector<LocalFraction> represent_in_ideal(const Polynomial& p,
                                                     const std::vector<Polynomial>& gens,
                                                     const std::vector<Polynomial>& extra,
                                                     const MonomialOrder& ord) {
    const SharedUniverse& u = p.universe();
    std::vector<Polynomial> combined = gens;
    combined.insert(combined.end(), extra.begin(), extra.end());
    std::vector<SBElement> sb = standard_basis_of(combined, ord);
    std::vector<Polynomial> sb_polys;
    for (const auto& e : sb) sb_polys.push_back(e.p);
    MoraResult red = mora_reduce(p, sb_polys, ord, /*track=*/true);
    if (!red.nf.is_zero())
        throw MembershipError("element is not in the ideal", red.nf.str());
    if (red.unit.constant_term() == 0)
        throw InternalError("mora reduction produced a non-unit unit");
    // unit*p = sum_b cof_b * sb_b; push down to the original generators.
    std::vector<Polynomial> over_original(combined.size(), Polynomial::zero(u));
    for (size_t b = 0; b < sb.size(); ++b) {
        if (red.cofactors[b].is_zero()) continue;
        for (size_t k = 0; k < combined.size(); ++k)
            over_original[k] += red.cofactors[b] * sb[b].rep[k];
    }
    std::vector<LocalFraction> out;
    for (size_t i = 0; i < gens.size(); ++i)
        out.emplace_back(over_original[i], red.unit);
    return out;
}

inline std::vector<LocalFraction> represent_in_ideal(const Polynomial& p,
                                                     const std::vector<Polynomial>& gens,
                                                     const IdealHandle& I) {
    return represent_in_ideal(p, gens, I.generators(), I.order());
}

// Ideal quotient (J : p) of the localized ring k[x]_(x), via intersection
// with (p) under a product order (eliminator global, x local) followed by
// division of each intersection generator by p. The division runs in the
// localization, so unit cofactors are absorbed into the generators.
inline IdealHandle colon_ideal(const SharedUniverse& u, const std::vector<Polynomial>& j_gens,
                               const Polynomial& p, VarId eliminator) {
    if (p.is_zero()) throw Error("colon_ideal by zero");
    MonomialOrder prod = MonomialOrder::product(u);
    MonomialOrder loc = MonomialOrder::local(u);
    Polynomial t = Polynomial::variable(u, eliminator);
    Polynomial one = Polynomial::constant(u, 1);
    std::vector<Polynomial> mixed;
    for (const auto& g : j_gens) mixed.push_back(t * g);
    mixed.push_back((one - t) * p);
    std::vector<Polynomial> quotients;
    std::vector<Polynomial> p_basis{p};
    for (const auto& e : standard_basis_of(mixed, prod)) {
        bool has_t = false;
        for (const auto& [m, c] : e.p.terms())
            if (m.exp(eliminator) != 0) {
                has_t = true;
                break;
            }
        if (has_t) continue;
        // e.p lies in J cap (p); divide out p in the localization.
        MoraResult red = mora_reduce(e.p, p_basis, loc, /*track=*/true);
        if (!red.nf.is_zero())
            throw InternalError("intersection generator not divisible by p");
        quotients.push_back(red.cofactors[0]);
    }
    return IdealHandle(u, std::move(quotients), loc);
}

inline IdealHandle colon_ideal(const LocalRing& ring, const Polynomial& p, VarId eliminator) {
    return colon_ideal(ring.universe(), ring.j_gens(), p, eliminator);
}

// Least e >= 1 with (J : d^e) = (J : d^{e+1}); the chain stabilizes by
// Noetherianity, so hitting the cap signals a bug.
inline int annihilator_exponent(const LocalRing& A, const Polynomial& d, VarId eliminator,
                                int cap = 64) {
    if (d.is_zero() || is_member(d, A.j_handle()))
        throw Error("annihilator_exponent requires d nonzero in A");
    Polynomial power = d;
    IdealHandle prev = colon_ideal(A, power, eliminator);
    for (int e = 1; e <= cap; ++e) {
        power = power * d;
        IdealHandle next = colon_ideal(A, power, eliminator);
        if (ideal_equal(prev, next)) return e;
        prev = std::move(next);
    }
    throw InternalError("annihilator chain did not stabilize within the iteration cap");
}

inline int annihilator_exponent(const LocalRing& A, const LocalFraction& d, VarId eliminator,
                                int cap = 64) {
    return annihilator_exponent(A, d.num(), eliminator, cap);
}

// Membership of p in the ideal I after inverting every element of
// `unit_set`, by the Rabinowitsch device: adjoin u, add 1 - u*prod(units),
// and test membership under the product order.
inline bool saturation_membership(const Polynomial& p, const std::vector<Polynomial>& i_gens,
                                  const std::vector<Polynomial>& unit_set, VarId rabinowitsch) {
    const SharedUniverse& u = p.universe();
    Polynomial prod = Polynomial::constant(u, 1);
    for (const auto& s : unit_set) prod *= s;
    std::vector<Polynomial> gens = i_gens;
    gens.push_back(Polynomial::constant(u, 1) -
                   Polynomial::variable(u, rabinowitsch) * prod);
    IdealHandle h(u, std::move(gens), MonomialOrder::product(u));
    return is_member(p, h);
}

}  // namespace neron

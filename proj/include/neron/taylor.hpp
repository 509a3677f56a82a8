#pragma once

#include <map>
#include <vector>

#include "neron/errors.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// Marker-variable Taylor decomposition of p(y' + D*L): the exact identity
//   p(y' + D*L) = f0 + D*f1 + sum_{j>=2} D^j * higher[j]
// holds with the marker D removed from every returned coefficient.
struct TaylorSplit {
    Polynomial f0;
    Polynomial f1;
    std::map<int, Polynomial> higher;  // j >= 2, nonzero coefficients only
};

inline TaylorSplit taylor_split(const Polynomial& p, const std::vector<VarId>& y_vars,
                                const std::vector<Polynomial>& y_prime,
                                const std::vector<Polynomial>& shifts, VarId marker) {
    if (y_vars.size() != y_prime.size() || y_vars.size() != shifts.size())
        throw Error("taylor_split: one base point and one shift per variable");
    const SharedUniverse& u = p.universe();
    if (u == nullptr) throw Error("taylor_split on polynomial without universe");
    Polynomial d = Polynomial::variable(u, marker);
    std::map<VarId, Polynomial> bindings;
    for (size_t i = 0; i < y_vars.size(); ++i)
        bindings[y_vars[i]] = y_prime[i] + d * shifts[i];
    Polynomial expanded = p.substitute(bindings);

    TaylorSplit out;
    out.f0 = Polynomial::zero(u);
    out.f1 = Polynomial::zero(u);
    for (const auto& [m, c] : expanded.terms()) {
        int j = m.exp(marker);
        Monomial stripped = m;
        stripped.e[static_cast<size_t>(marker)] = 0;
        if (j == 0)
            out.f0.add_term(stripped, c);
        else if (j == 1)
            out.f1.add_term(stripped, c);
        else {
            auto [it, ignored] = out.higher.try_emplace(j, Polynomial::zero(u));
            it->second.add_term(stripped, c);
        }
    }
    return out;
}

}  // namespace neron

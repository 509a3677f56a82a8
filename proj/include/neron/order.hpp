#pragma once

#include <vector>

#include "neron/monomial.hpp"
#include "neron/variables.hpp"

namespace neron {

enum class OrderKind {
    global_degrevlex,    // degree-reverse-lexicographic over the whole universe
    local_negdegrevlex,  // negative degrevlex on the local block (1 is largest)
    product              // global block dominant, then local block
};

namespace detail {

// +1 when a > b, -1 when a < b, 0 on tie, restricted to `vars`.
inline int grevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<VarId>& vars) {
    int da = a.deg_over(vars), db = b.deg_over(vars);
    if (da != db) return da > db ? 1 : -1;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        int ea = a.exp(*it), eb = b.exp(*it);
        if (ea != eb) return ea < eb ? 1 : -1;  // smaller exponent in the last
                                                // differing variable wins
    }
    return 0;
}

inline int negdegrevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<VarId>& vars) {
    int da = a.deg_over(vars), db = b.deg_over(vars);
    if (da != db) return da < db ? 1 : -1;  // lower degree is larger
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        int ea = a.exp(*it), eb = b.exp(*it);
        if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
}

}  // namespace detail

// A total order on the session's monomials. All three kinds compare the
// whole universe so they can serve as map/sort comparators; the secondary
// block only matters for monomials that actually touch it.
class MonomialOrder {
public:
    static MonomialOrder global(const SharedUniverse& u) {
        MonomialOrder o;
        o.kind_ = OrderKind::global_degrevlex;
        for (VarId v = 0; v < u->size(); ++v) o.global_.push_back(v);
        return o;
    }

    static MonomialOrder local(const SharedUniverse& u) {
        MonomialOrder o;
        o.kind_ = OrderKind::local_negdegrevlex;
        o.local_ = u->local_vars();
        o.global_ = u->global_vars();
        return o;
    }

    static MonomialOrder product(const SharedUniverse& u) {
        MonomialOrder o;
        o.kind_ = OrderKind::product;
        o.local_ = u->local_vars();
        o.global_ = u->global_vars();
        return o;
    }

    OrderKind kind() const { return kind_; }

    // +1 when a > b.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case OrderKind::global_degrevlex:
                return detail::grevlex_cmp(a, b, global_);
            case OrderKind::local_negdegrevlex: {
                int c = detail::negdegrevlex_cmp(a, b, local_);
                if (c != 0) return c;
                return detail::grevlex_cmp(a, b, global_);
            }
            case OrderKind::product: {
                int c = detail::grevlex_cmp(a, b, global_);
                if (c != 0) return c;
                return detail::negdegrevlex_cmp(a, b, local_);
            }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    bool operator==(const MonomialOrder& o) const {
        return kind_ == o.kind_ && global_ == o.global_ && local_ == o.local_;
    }

private:
    OrderKind kind_ = OrderKind::global_degrevlex;
    std::vector<VarId> global_;
    std::vector<VarId> local_;
};

}  // namespace neron

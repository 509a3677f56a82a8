#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <vector>

#include "neron/errors.hpp"
#include "neron/variables.hpp"

namespace neron {

// A monomial is a dense exponent vector over the session universe. The
// default comparison is structural (lexicographic on the vector) and is used
// only as a canonical map key; the mathematical monomial orders live in
// order.hpp.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(int nvars) : e(static_cast<size_t>(nvars), 0) {}

    static Monomial unit(int nvars) { return Monomial(nvars); }

    static Monomial var(int nvars, VarId v, int exp = 1) {
        Monomial m(nvars);
        m.e[static_cast<size_t>(v)] = exp;
        return m;
    }

    int nvars() const { return static_cast<int>(e.size()); }

    int deg() const { return std::accumulate(e.begin(), e.end(), 0); }

    int deg_over(const std::vector<VarId>& vars) const {
        int d = 0;
        for (VarId v : vars) d += e[static_cast<size_t>(v)];
        return d;
    }

    int exp(VarId v) const { return e[static_cast<size_t>(v)]; }

    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    // True when every variable outside `vars` has exponent zero.
    bool supported_on(const std::vector<VarId>& vars) const {
        std::vector<char> ok(e.size(), 0);
        for (VarId v : vars) ok[static_cast<size_t>(v)] = 1;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && !ok[i]) return false;
        return true;
    }

    bool divides(const Monomial& other) const {
        check_compatible(other);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        check_compatible(o);
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }

    // Componentwise quotient; caller must ensure o divides *this.
    Monomial operator/(const Monomial& o) const {
        check_compatible(o);
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) {
            r.e[i] -= o.e[i];
            if (r.e[i] < 0) throw InternalError("monomial quotient with negative exponent");
        }
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        a.check_compatible(b);
        Monomial r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        a.check_compatible(b);
        Monomial r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::min(r.e[i], b.e[i]);
        return r;
    }

    auto operator<=>(const Monomial&) const = default;

private:
    void check_compatible(const Monomial& o) const {
        if (e.size() != o.e.size())
            throw InternalError("monomials from different variable universes");
    }
};

}  // namespace neron

#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "neron/errors.hpp"
#include "neron/monomial.hpp"
#include "neron/order.hpp"
#include "neron/rational.hpp"
#include "neron/variables.hpp"

namespace neron {

// Exact multivariate polynomial over the rationals. Terms live in a map
// keyed by the structural monomial comparison, so iteration order (and hence
// every derived output) is deterministic and independent of the monomial
// order a computation happens to use.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(SharedUniverse u) : u_(std::move(u)) {}

    static Polynomial zero(SharedUniverse u) { return Polynomial(std::move(u)); }

    static Polynomial constant(SharedUniverse u, const Rational& c) {
        Polynomial p(std::move(u));
        if (c != 0) p.terms_.emplace(Monomial::unit(p.u_->size()), c);
        return p;
    }

    static Polynomial variable(SharedUniverse u, VarId v, int exp = 1) {
        Polynomial p(std::move(u));
        if (v < 0 || v >= p.u_->size()) throw Error("unknown variable id");
        p.terms_.emplace(Monomial::var(p.u_->size(), v, exp), Rational(1));
        return p;
    }

    static Polynomial term(SharedUniverse u, Monomial m, const Rational& c) {
        Polynomial p(std::move(u));
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const SharedUniverse& universe() const { return u_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_term() const {
        if (u_ == nullptr) return Rational(0);
        auto it = terms_.find(Monomial::unit(u_->size()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.deg());
        return d;
    }

    // Smallest total degree of a term; INT_MAX for the zero polynomial.
    int order() const {
        int d = std::numeric_limits<int>::max();
        for (const auto& [m, c] : terms_) d = std::min(d, m.deg());
        return d;
    }

    bool supported_on(const std::vector<VarId>& vars) const {
        for (const auto& [m, c] : terms_)
            if (!m.supported_on(vars)) return false;
        return true;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.u_ ? a.u_ : b.u_);
        a.check_same_universe(b);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [m, coef] : terms_) coef *= c;
        }
        return *this;
    }

    friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

    Polynomial pow(int n) const {
        if (n < 0) throw Error("negative polynomial power");
        if (u_ == nullptr) throw Error("pow on polynomial without universe");
        Polynomial result = Polynomial::constant(u_, 1);
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1) result *= base;
            base = (n >>= 1) ? base * base : base;
        }
        return result;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(VarId v) const {
        if (u_ == nullptr) return *this;
        if (v < 0 || v >= u_->size()) throw Error("unknown variable in derivative");
        Polynomial r(u_);
        for (const auto& [m, c] : terms_) {
            int k = m.exp(v);
            if (k == 0) continue;
            Monomial dm = m;
            dm.e[static_cast<size_t>(v)] = k - 1;
            r.add_term(dm, c * k);
        }
        return r;
    }

    // Exact substitution; variables without a binding pass through.
    Polynomial substitute(const std::map<VarId, Polynomial>& bindings) const {
        if (u_ == nullptr || bindings.empty()) return *this;
        // Per-variable power cache keeps repeated expansions cheap.
        std::map<VarId, std::vector<Polynomial>> powers;
        for (const auto& [v, p] : bindings) {
            if (v < 0 || v >= u_->size()) throw Error("unknown variable in substitution");
            powers[v] = {Polynomial::constant(u_, 1)};
        }
        auto power_of = [&](VarId v, int k) -> const Polynomial& {
            auto& cache = powers[v];
            while (static_cast<int>(cache.size()) <= k)
                cache.push_back(cache.back() * bindings.at(v));
            return cache[static_cast<size_t>(k)];
        };
        Polynomial out(u_);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            Polynomial factor = Polynomial::constant(u_, c);
            for (const auto& [v, p] : bindings) {
                int k = m.exp(v);
                if (k == 0) continue;
                rest.e[static_cast<size_t>(v)] = 0;
                factor *= power_of(v, k);
            }
            out += Polynomial::term(u_, rest, Rational(1)) * factor;
        }
        return out;
    }

    // Leading term with respect to an order (the maximal monomial).
    std::pair<Monomial, Rational> leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw InternalError("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.greater(it->first, best->first)) best = it;
        return {best->first, best->second};
    }

    // Canonical human-readable form: ascending total degree, ties broken by
    // descending global-block degree, then structurally. Integer coefficients
    // attach directly to local variables ("2x"), everything else uses '*'.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<const Monomial, Rational>*> ts;
        for (const auto& t : terms_) ts.push_back(&t);
        const auto& gv = u_->global_vars();
        std::sort(ts.begin(), ts.end(), [&](const auto* a, const auto* b) {
            int da = a->first.deg(), db = b->first.deg();
            if (da != db) return da < db;
            int ga = a->first.deg_over(gv), gb = b->first.deg_over(gv);
            if (ga != gb) return ga > gb;
            return a->first < b->first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto* t : ts) {
            Rational c = t->second;
            if (first) {
                if (c < 0) {
                    os << "-";
                    c = -c;
                }
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            os << term_str(t->first, c);
        }
        return os.str();
    }

private:
    void adopt(const Polynomial& o) {
        if (u_ == nullptr) u_ = o.u_;
        check_same_universe(o);
    }

    void check_same_universe(const Polynomial& o) const {
        if (u_ && o.u_ && u_ != o.u_)
            throw InternalError("polynomials from different variable universes");
    }

    std::string term_str(const Monomial& m, const Rational& c) const {
        std::ostringstream os;
        bool wrote_coeff = false;
        bool coeff_is_int = is_integer(c);
        if (m.is_one()) {
            os << c.str();
            return os.str();
        }
        if (c != 1) {
            if (coeff_is_int)
                os << c.str();
            else
                os << "(" << c.str() << ")";
            wrote_coeff = true;
        }
        bool first_var = true;
        for (VarId v = 0; v < u_->size(); ++v) {
            int k = m.exp(v);
            if (k == 0) continue;
            if (first_var) {
                if (wrote_coeff) {
                    // "2x" for integral coefficients on local variables,
                    // "2*T" / "(1/2)*x" otherwise.
                    if (!(coeff_is_int && u_->block(v) == VarBlock::local)) os << "*";
                }
                first_var = false;
            } else {
                os << "*";
            }
            os << u_->name(v);
            if (k != 1) os << "^" << k;
        }
        return os.str();
    }

    SharedUniverse u_;
    TermMap terms_;
};

// Exact quotient p/q in the polynomial ring; throws NonDivisibleError (with
// the stuck remainder as witness) when q does not divide p.
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) throw Error("exact_divide by zero polynomial");
    const SharedUniverse& u = p.universe() ? p.universe() : q.universe();
    Polynomial rem = p;
    Polynomial quot(u);
    if (rem.is_zero()) return quot;
    MonomialOrder ord = MonomialOrder::global(u);
    auto [qm, qc] = q.leading_term(ord);
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading_term(ord);
        if (!qm.divides(rm))
            throw NonDivisibleError("polynomial division is not exact", rem.str());
        Monomial mm = rm / qm;
        Rational mc = rc / qc;
        quot.add_term(mm, mc);
        rem -= Polynomial::term(u, mm, mc) * q;
    }
    return quot;
}

}  // namespace neron

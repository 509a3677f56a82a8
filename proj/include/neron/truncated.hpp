#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "neron/errors.hpp"
#include "neron/fraction.hpp"
#include "neron/local_ring.hpp"
#include "neron/order.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// The finite-dimensional quotient k[x]/(J + (x)^D), realized by exact
// Gaussian elimination instead of standard bases: the ideal's image in the
// space of monomials of degree < D is put in reduced row echelon form, with
// pivots chosen largest-first in the local order. Canonical representatives
// are supported on the non-pivot ("standard") monomials, and the vanishing
// order of an element is the minimal total degree of its representative.
//
// This is deliberately an independent computation path from the Mora engine;
// the test suites play the two against each other.
class TruncatedRing {
public:
    // Elements are reduced sparse coefficient maps over standard monomials.
    using Element = std::map<Monomial, Rational>;

    TruncatedRing(const LocalRing& ring, int D)
        : u_(ring.universe()), x_(ring.x_vars()), D_(D), order_(MonomialOrder::local(u_)) {
        if (D < 1) throw Error("truncation order must be >= 1");
        build_rows(ring.j_gens());
        collect_standard_monomials();
    }

    const SharedUniverse& universe() const { return u_; }
    int truncation_order() const { return D_; }
    const std::vector<Monomial>& standard_monomials() const { return std_monos_; }
    int dim() const { return static_cast<int>(std_monos_.size()); }

    Element zero() const { return {}; }

    Element one() const { return reduce(Polynomial::constant(u_, 1)); }

    // Image of a polynomial: drop degrees >= D, then eliminate pivots.
    Element reduce(const Polynomial& p) const {
        Element v;
        for (const auto& [m, c] : p.terms()) {
            if (!m.supported_on(x_))
                throw Error("truncation of a polynomial outside k[x]");
            if (m.deg() >= D_) continue;
            v[m] += c;
            if (v[m] == 0) v.erase(m);
        }
        eliminate(v);
        return v;
    }

    Element truncate(const LocalFraction& f) const {
        Element n = reduce(f.num());
        if (f.is_polynomial()) return n;
        return mul(n, invert_unit(reduce(f.den())));
    }

    Element add(const Element& a, const Element& b) const {
        Element r = a;
        for (const auto& [m, c] : b) {
            r[m] += c;
            if (r[m] == 0) r.erase(m);
        }
        return r;
    }

    Element sub(const Element& a, const Element& b) const {
        Element r = a;
        for (const auto& [m, c] : b) {
            r[m] -= c;
            if (r[m] == 0) r.erase(m);
        }
        return r;
    }

    Element neg(const Element& a) const {
        Element r = a;
        for (auto& [m, c] : r) c = -c;
        return r;
    }

    Element scale(const Element& a, const Rational& c) const {
        if (c == 0) return {};
        Element r = a;
        for (auto& [m, k] : r) k *= c;
        return r;
    }

    Element mul(const Element& a, const Element& b) const {
        Element r;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                Monomial m = ma * mb;
                if (m.deg() >= D_) continue;
                r[m] += ca * cb;
                if (r[m] == 0) r.erase(m);
            }
        eliminate(r);
        return r;
    }

    bool is_zero(const Element& a) const { return a.empty(); }

    Rational constant_coeff(const Element& a) const {
        auto it = a.find(Monomial::unit(u_->size()));
        return it == a.end() ? Rational(0) : it->second;
    }

    // Largest m <= D with a in (x)^m (image); D for the zero element. With
    // local-order pivoting this is just the minimal degree of the reduced
    // representative.
    int order_of(const Element& a) const {
        if (a.empty()) return D_;
        int d = D_;
        for (const auto& [m, c] : a) d = std::min(d, m.deg());
        return d;
    }

    // Inverse of a unit via the geometric series: u = c(1 - w) with w
    // supported in degrees >= 1, so w^D = 0.
    Element invert_unit(const Element& a) const {
        Rational c = constant_coeff(a);
        if (c == 0) throw NotUnitError("element is not a unit of the truncated ring");
        Element w = scale(a, Rational(-1) / c);
        w.erase(Monomial::unit(u_->size()));  // w = 1 - a/c, constant part removed
        Element acc = one();
        Element wp = one();
        for (int i = 1; i < D_; ++i) {
            wp = mul(wp, w);
            if (wp.empty()) break;
            acc = add(acc, wp);
        }
        return scale(acc, Rational(1) / c);
    }

    // Evaluates a polynomial whose non-x variables are bound to ring
    // elements; x-variables map to themselves.
    Element evaluate(const Polynomial& p, const std::map<VarId, Element>& bindings) const {
        std::map<VarId, std::vector<Element>> powers;
        Element out;
        for (const auto& [m, c] : p.terms()) {
            Element factor = one();
            Monomial xpart(u_->size());
            bool dead = false;
            for (VarId v = 0; v < u_->size(); ++v) {
                int k = m.exp(v);
                if (k == 0) continue;
                auto it = bindings.find(v);
                if (it == bindings.end()) {
                    xpart.e[static_cast<size_t>(v)] = k;
                    continue;
                }
                auto& cache = powers[v];
                if (cache.empty()) cache.push_back(one());
                while (static_cast<int>(cache.size()) <= k)
                    cache.push_back(mul(cache.back(), it->second));
                factor = mul(factor, cache[static_cast<size_t>(k)]);
                if (factor.empty()) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            factor = mul(factor, reduce(Polynomial::term(u_, xpart, c)));
            out = add(out, factor);
        }
        return out;
    }

private:
    // Reduced row echelon rows of the ideal subspace, keyed by pivot.
    void build_rows(const std::vector<Polynomial>& j_gens) {
        std::vector<Element> pending;
        for (const auto& g : j_gens) {
            int base = g.order();
            for (int extra = 0; base + extra < D_; ++extra) {
                for_each_degree(extra, [&](const Monomial& mu) {
                    Element row;
                    for (const auto& [m, c] : g.terms()) {
                        Monomial prod = m * mu;
                        if (prod.deg() >= D_) continue;
                        row[prod] += c;
                        if (row[prod] == 0) row.erase(prod);
                    }
                    if (!row.empty()) pending.push_back(std::move(row));
                });
            }
        }
        for (auto& row : pending) insert_row(std::move(row));
    }

    void for_each_degree(int k, const std::function<void(const Monomial&)>& fn) {
        Monomial m(u_->size());
        std::function<void(size_t, int)> rec = [&](size_t pos, int remaining) {
            if (pos + 1 == x_.size()) {
                m.e[static_cast<size_t>(x_[pos])] = remaining;
                fn(m);
                m.e[static_cast<size_t>(x_[pos])] = 0;
                return;
            }
            for (int take = remaining; take >= 0; --take) {
                m.e[static_cast<size_t>(x_[pos])] = take;
                rec(pos + 1, remaining - take);
            }
            m.e[static_cast<size_t>(x_[pos])] = 0;
        };
        if (x_.empty()) return;
        rec(0, k);
    }

    void insert_row(Element row) {
        eliminate(row);
        if (row.empty()) return;
        // Pivot on the largest monomial in the local order (lowest degree).
        Monomial pivot = row.begin()->first;
        for (const auto& [m, c] : row)
            if (order_.greater(m, pivot)) pivot = m;
        Rational pc = row.at(pivot);
        for (auto& [m, c] : row) c /= pc;
        // Back-substitute into existing rows.
        for (auto& [pv, r] : rows_) {
            auto it = r.find(pivot);
            if (it == r.end()) continue;
            Rational f = it->second;
            for (const auto& [m, c] : row) {
                r[m] -= f * c;
                if (r[m] == 0) r.erase(m);
            }
        }
        rows_.emplace(pivot, std::move(row));
    }

    void eliminate(Element& v) const {
        // Repeatedly clear pivot coordinates; rows are reduced, so one pass
        // over the present pivots suffices.
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = v.begin(); it != v.end();) {
                auto rit = rows_.find(it->first);
                if (rit == rows_.end()) {
                    ++it;
                    continue;
                }
                Rational f = it->second;
                const Element& row = rit->second;
                for (const auto& [m, c] : row) {
                    v[m] -= f * c;
                    if (v[m] == 0) v.erase(m);
                }
                changed = true;
                it = v.begin();
            }
        }
    }

    void collect_standard_monomials() {
        std::vector<Monomial> all;
        for (int k = 0; k < D_; ++k)
            for_each_degree(k, [&](const Monomial& m) { all.push_back(m); });
        for (const auto& m : all)
            if (!rows_.count(m)) std_monos_.push_back(m);
        std::sort(std_monos_.begin(), std_monos_.end(),
                  [&](const Monomial& a, const Monomial& b) { return order_.greater(a, b); });
    }

    SharedUniverse u_;
    std::vector<VarId> x_;
    int D_;
    MonomialOrder order_;
    std::map<Monomial, Element> rows_;
    std::vector<Monomial> std_monos_;
};

}  // namespace neron

#pragma once

#include <string>
#include <utility>

#include "neron/errors.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// An element of the localization k[x]_(x) (or of a localized polynomial
// extension): numerator over a denominator that is a unit at the origin.
// Construction normalizes: common monomial content is cancelled and the
// denominator is rescaled to constant term 1. Full gcd reduction is
// deliberately not attempted.
class LocalFraction {
public:
    LocalFraction() = default;

    explicit LocalFraction(Polynomial num)
        : num_(std::move(num)), den_(Polynomial::constant(num_.universe(), 1)) {
        if (num_.universe() == nullptr) throw Error("fraction numerator needs a universe");
    }

    LocalFraction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static LocalFraction zero(const SharedUniverse& u) {
        return LocalFraction(Polynomial::zero(u), Polynomial::constant(u, 1));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const SharedUniverse& universe() const { return den_.universe(); }

    bool is_zero() const { return num_.is_zero(); }

    bool is_polynomial() const { return den_.is_constant(); }

    LocalFraction operator+(const LocalFraction& o) const {
        return LocalFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    LocalFraction operator-(const LocalFraction& o) const {
        return LocalFraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    LocalFraction operator*(const LocalFraction& o) const {
        return LocalFraction(num_ * o.num_, den_ * o.den_);
    }

    LocalFraction operator*(const Polynomial& p) const { return LocalFraction(num_ * p, den_); }

    LocalFraction operator-() const {
        LocalFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // Equality in k[x]_(x) by cross-multiplication (J-free; use ideal
    // membership on num()*o.den() - o.num()*den() for equality modulo J).
    bool equals(const LocalFraction& o) const {
        return (num_ * o.den_ - o.num_ * den_).is_zero();
    }

    // (num)/(den) with both sides always parenthesized, so the fraction can
    // be split unambiguously when read back.
    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    void normalize() {
        if (num_.universe() == nullptr && den_.universe() != nullptr)
            num_ = Polynomial::zero(den_.universe());
        if (den_.universe() == nullptr)
            throw Error("fraction denominator needs a universe");
        if (den_.is_zero()) throw NotUnitError("zero denominator");
        // Cancel the common monomial content of numerator and denominator.
        if (!num_.is_zero()) {
            Monomial g = content_monomial(num_);
            g = Monomial::gcd(g, content_monomial(den_));
            if (!g.is_one()) {
                num_ = divide_monomial(num_, g);
                den_ = divide_monomial(den_, g);
            }
        }
        Rational c = den_.constant_term();
        if (c == 0)
            throw NotUnitError("denominator '" + den_.str() + "' is not a unit at the origin");
        if (c != 1) {
            Rational inv = Rational(1) / c;
            num_ *= inv;
            den_ *= inv;
        }
    }

    static Monomial content_monomial(const Polynomial& p) {
        Monomial g = p.terms().begin()->first;
        for (const auto& [m, c] : p.terms()) g = Monomial::gcd(g, m);
        return g;
    }

    static Polynomial divide_monomial(const Polynomial& p, const Monomial& g) {
        Polynomial r(p.universe());
        for (const auto& [m, c] : p.terms()) r.add_term(m / g, c);
        return r;
    }

    Polynomial num_;
    Polynomial den_;
};

inline LocalFraction normalize_fraction(const LocalFraction& f) {
    return LocalFraction(f.num(), f.den());
}

}  // namespace neron

#pragma once

#include <compare>
#include <optional>
#include <string>

#include "qmet/interval.hpp"
#include "qmet/rational.hpp"

namespace qmet {

// Exponent regime of a q-(semi)metric / q-absolute value: a positive
// rational, or infinity for the ultrametric (max) inequality.
struct QExponent {
    std::optional<Rational> q;  // nullopt = infinity

    static QExponent finite(Rational value) {
        if (value <= 0) throw input_error("q exponent must be positive");
        return QExponent{std::move(value)};
    }
    static QExponent infinity() { return QExponent{std::nullopt}; }

    bool is_infinite() const { return !q.has_value(); }
    const Rational& value() const {
        if (!q) throw input_error("infinite q exponent has no finite value");
        return *q;
    }
};

// Exact magnitude: 0, mantissa^exponent with mantissa, exponent positive
// rationals, or +infinity (used for unabsorbed Minkowski values).
//
// Construction folds the representation whenever the value is itself
// rational (integer exponent, or mantissa a perfect den(exponent)-th
// power), so p-adic and plain rational magnitudes always carry exponent 1.
class Magnitude {
  public:
    Magnitude() : kind_(Kind::Zero) {}

    static Magnitude zero() { return Magnitude(); }
    static Magnitude one() { return finite(Rational(1), Rational(1)); }
    static Magnitude infinity() {
        Magnitude m;
        m.kind_ = Kind::Infinity;
        return m;
    }

    static Magnitude finite(Rational mantissa, Rational exponent) {
        if (mantissa <= 0) throw input_error("finite magnitude needs positive mantissa");
        if (exponent <= 0) throw input_error("finite magnitude needs positive exponent");
        if (num(exponent) > 1000000 || den(exponent) > 1000000)
            throw resource_error("magnitude exponent too large");
        Magnitude m;
        m.kind_ = Kind::Finite;
        if (mantissa == 1) {
            m.mantissa_ = 1;
            m.exponent_ = 1;
            return m;
        }
        const Int t = den(exponent);
        if (t == 1) {
            m.mantissa_ = pow_rational(mantissa, num(exponent).convert_to<long>());
            m.exponent_ = 1;
            return m;
        }
        if (auto root = exact_nth_root(mantissa, t.convert_to<unsigned long>())) {
            m.mantissa_ = pow_rational(*root, num(exponent).convert_to<long>());
            m.exponent_ = 1;
            return m;
        }
        m.mantissa_ = std::move(mantissa);
        m.exponent_ = std::move(exponent);
        return m;
    }

    // Magnitude of a plain rational value.
    static Magnitude of_rational(const Rational& value) {
        if (value < 0) throw input_error("magnitude of negative rational");
        if (value == 0) return zero();
        return finite(value, Rational(1));
    }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinity; }

    const Rational& mantissa() const {
        require_finite();
        return mantissa_;
    }
    const Rational& exponent() const {
        require_finite();
        return exponent_;
    }

    // Exact rational value, when the representation is rational.
    std::optional<Rational> as_rational() const {
        if (kind_ == Kind::Zero) return Rational(0);
        if (kind_ == Kind::Finite && exponent_ == 1) return mantissa_;
        return std::nullopt;
    }

  private:
    enum class Kind { Zero, Finite, Infinity };
    Kind kind_;
    Rational mantissa_;
    Rational exponent_;

    void require_finite() const {
        if (kind_ != Kind::Finite) throw input_error("magnitude is not finite");
    }

    friend std::strong_ordering magnitude_cmp(const Magnitude&, const Magnitude&);
};

// Total order on magnitudes, consistent with the real values they denote.
// Finite values are compared by cross-exponentiation: m1^(s1/t1) vs
// m2^(s2/t2) is decided by the exact rational comparison of m1^(s1*t2)
// with m2^(s2*t1).
inline std::strong_ordering magnitude_cmp(const Magnitude& a, const Magnitude& b) {
    using so = std::strong_ordering;
    if (a.is_zero()) return b.is_zero() ? so::equal : so::less;
    if (b.is_zero()) return so::greater;
    if (a.is_infinite()) return b.is_infinite() ? so::equal : so::greater;
    if (b.is_infinite()) return so::less;

    const Int k1 = num(a.exponent_) * den(b.exponent_);
    const Int k2 = num(b.exponent_) * den(a.exponent_);
    if (k1 > 1000000 || k2 > 1000000)
        throw resource_error("magnitude comparison exponent too large");
    const Rational lhs = pow_rational(a.mantissa_, k1.convert_to<long>());
    const Rational rhs = pow_rational(b.mantissa_, k2.convert_to<long>());
    if (lhs < rhs) return so::less;
    if (lhs > rhs) return so::greater;
    return so::equal;
}

inline bool magnitude_eq(const Magnitude& a, const Magnitude& b) {
    return magnitude_cmp(a, b) == std::strong_ordering::equal;
}
inline bool magnitude_le(const Magnitude& a, const Magnitude& b) {
    return magnitude_cmp(a, b) != std::strong_ordering::greater;
}
inline bool magnitude_lt(const Magnitude& a, const Magnitude& b) {
    return magnitude_cmp(a, b) == std::strong_ordering::less;
}

// Exact product.  Finite factors are rewritten to their common exponent
// gcd(e1, e2); both rewrite powers are integers, so this is always exact
// (a size guard trips for absurd exponent ratios).
inline Magnitude magnitude_mul(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero() || b.is_zero()) {
        if (a.is_infinite() || b.is_infinite())
            throw input_error("0 * infinity is undefined");
        return Magnitude::zero();
    }
    if (a.is_infinite() || b.is_infinite()) return Magnitude::infinity();
    const Rational e1 = a.exponent();
    const Rational e2 = b.exponent();
    if (e1 == e2) return Magnitude::finite(a.mantissa() * b.mantissa(), e1);
    const Int g_num = boost::multiprecision::gcd(num(e1), num(e2));
    const Int l_den = boost::multiprecision::lcm(den(e1), den(e2));
    const Rational e0 = make_rational(g_num, l_den);
    const Rational p1 = e1 / e0;
    const Rational p2 = e2 / e0;
    if (p1 > 64 || p2 > 64)
        throw representation_error("magnitude product: incommensurable exponents");
    const Rational m1 = pow_rational(a.mantissa(), num(p1).convert_to<long>());
    const Rational m2 = pow_rational(b.mantissa(), num(p2).convert_to<long>());
    return Magnitude::finite(m1 * m2, e0);
}

inline Magnitude magnitude_max(const Magnitude& a, const Magnitude& b) {
    return magnitude_le(a, b) ? b : a;
}

inline Magnitude magnitude_min(const Magnitude& a, const Magnitude& b) {
    return magnitude_le(a, b) ? a : b;
}

// m^e for positive rational e: Finite(m, e0) -> Finite(m, e0*e).
inline Magnitude magnitude_pow(const Magnitude& m, const Rational& e) {
    if (e <= 0) throw input_error("magnitude power must be positive");
    if (m.is_zero()) return Magnitude::zero();
    if (m.is_infinite()) return Magnitude::infinity();
    return Magnitude::finite(m.mantissa(), m.exponent() * e);
}

// Enclosure of the real value of a finite-or-zero magnitude.
inline RatInterval magnitude_bounds(const Magnitude& m, unsigned bits) {
    if (m.is_zero()) return interval_point(Rational(0));
    if (m.is_infinite()) throw input_error("no bounds for infinite magnitude");
    if (auto r = m.as_rational()) return interval_point(*r);
    return pow_bounds(m.mantissa(), m.exponent(), bits);
}

inline std::string to_string(const Magnitude& m) {
    if (m.is_zero()) return "0";
    if (m.is_infinite()) return "inf";
    if (m.exponent() == 1) return to_string(m.mantissa());
    return to_string(m.mantissa()) + "^" + to_string(m.exponent());
}

}  // namespace qmet

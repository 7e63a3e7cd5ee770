#pragma once

#include "qmet/rational.hpp"

namespace qmet {

// Enclosure [lo, hi] of a nonnegative real, with exact rational endpoints.
struct RatInterval {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
};

inline RatInterval interval_point(const Rational& r) { return {r, r}; }

inline RatInterval interval_add(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

// Three-valued comparison of the reals a <= b given their enclosures:
// +1 definitely holds, -1 definitely fails, 0 the enclosures overlap.
inline int interval_le(const RatInterval& a, const RatInterval& b) {
    if (a.hi <= b.lo) return +1;
    if (a.lo > b.hi) return -1;
    return 0;
}

// Enclosure of base^(s/t) for base > 0 and exponent s/t > 0, with
// hi - lo <= 2^-bits unless the power is exactly rational.  base^s is
// computed exactly; the t-th root is bracketed by an integer root of a
// scaled numerator, so both directions of rounding are exact arithmetic.
inline RatInterval pow_bounds(const Rational& base, const Rational& exponent, unsigned bits) {
    if (base <= 0) throw input_error("pow_bounds requires positive base");
    if (exponent <= 0) throw input_error("pow_bounds requires positive exponent");
    const Int s = num(exponent);
    const Int t = den(exponent);
    if (s > 1000000 || t > 1000000)
        throw resource_error("pow_bounds exponent too large");
    const unsigned long su = s.convert_to<unsigned long>();
    const unsigned long tu = t.convert_to<unsigned long>();

    const Rational x = pow_rational(base, static_cast<long>(su));
    if (tu == 1) return interval_point(x);
    if (auto root = exact_nth_root(x, tu)) return interval_point(*root);

    // a = floor(x^(1/t) * 2^bits): a^t <= x * 2^(bits*t) < (a+1)^t.
    const Int scale = Int(1) << bits;
    const Int scaled = num(x) * pow_int(scale, tu) / den(x);
    const Int a = floor_nth_root(scaled, tu);
    return {make_rational(a, scale), make_rational(a + 1, scale)};
}

}  // namespace qmet

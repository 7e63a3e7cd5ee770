#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "qmet/errors.hpp"

namespace qmet {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar.  Canonical form (gcd-reduced, positive
// denominator, 0 = 0/1) is maintained by the backend.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(Int n, Int d) {
    if (d == 0) throw input_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Rational r(std::move(n));
    r /= Rational(std::move(d));
    return r;
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Serialized form is "n/d", with "/d" omitted when d = 1.
inline std::string to_string(const Rational& r) {
    std::string s = num(r).str();
    if (!is_integer(r)) {
        s += "/";
        s += den(r).str();
    }
    return s;
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) -> Int {
        if (part.empty()) throw input_error("empty integer in rational '" + text + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw input_error("bad rational '" + text + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw input_error("bad rational '" + text + "'");
        return Int(part);
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline Int pow_int(const Int& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

// r^e for integer e (negative allowed when r != 0).
inline Rational pow_rational(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0) {
        if (e < 0) throw input_error("zero to a negative power");
        return Rational(0);
    }
    const unsigned long mag = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Int n = pow_int(num(r), mag);
    Int d = pow_int(den(r), mag);
    return e < 0 ? make_rational(d, n) : make_rational(n, d);
}

// Largest a >= 0 with a^n <= x.  Binary search on the bit length; exact.
inline Int floor_nth_root(const Int& x, unsigned long n) {
    if (x < 0) throw input_error("nth root of negative integer");
    if (n == 0) throw input_error("0th root");
    if (x == 0 || x == 1 || n == 1) return x;
    const unsigned long bits = boost::multiprecision::msb(x) + 1;
    Int hi = Int(1) << (bits / n + 1);
    Int lo = 0;
    while (lo < hi) {  // invariant: lo^n <= x < (hi+1)^n
        Int mid = (lo + hi + 1) / 2;
        if (pow_int(mid, n) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

inline std::optional<Int> exact_nth_root(const Int& x, unsigned long n) {
    if (x < 0) return std::nullopt;
    Int r = floor_nth_root(x, n);
    if (pow_int(r, n) == x) return r;
    return std::nullopt;
}

// Exact n-th root of a rational, when one exists.
inline std::optional<Rational> exact_nth_root(const Rational& r, unsigned long n) {
    if (r < 0) return std::nullopt;
    auto rn = exact_nth_root(num(r), n);
    if (!rn) return std::nullopt;
    auto rd = exact_nth_root(den(r), n);
    if (!rd) return std::nullopt;
    return make_rational(*rn, *rd);
}

// r^(p/q) when the result is rational, for r > 0 and p/q > 0.
inline std::optional<Rational> exact_rational_pow(const Rational& r, const Rational& e) {
    if (r <= 0 || e <= 0) throw input_error("exact_rational_pow needs positive arguments");
    if (num(e) > 1000000 || den(e) > 1000000) throw resource_error("exponent too large");
    const Rational powered = pow_rational(r, num(e).convert_to<long>());
    return exact_nth_root(powered, den(e).convert_to<unsigned long>());
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rational_min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational rational_max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace qmet

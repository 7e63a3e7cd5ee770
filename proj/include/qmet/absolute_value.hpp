#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qmet/magnitude.hpp"
#include "qmet/verdict.hpp"

namespace qmet {

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr std::int64_t kArchimedeanCheckBound = 1000;

// Deterministic trial division; inputs are capped at 64 bits.
inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::int64_t d = 3; d <= p / d; d += 2)
        if (p % d == 0) return false;
    return true;
}

// An absolute value function on Q: trivial, p-adic, or a power |x|^a of
// the standard archimedean one with 0 < a <= 1 (so that it is a
// (1/a)-absolute value).
class AbsoluteValueSpec {
  public:
    struct Trivial {};
    struct PAdic {
        std::int64_t p;
    };
    struct ArchimedeanPower {
        Rational a;
    };

    static AbsoluteValueSpec trivial() { return AbsoluteValueSpec(Trivial{}); }
    static AbsoluteValueSpec padic(std::int64_t p) {
        if (!is_prime(p)) throw input_error("p-adic spec requires a prime");
        return AbsoluteValueSpec(PAdic{p});
    }
    static AbsoluteValueSpec archimedean_power(Rational a) {
        if (a <= 0 || a > 1) throw input_error("archimedean power requires 0 < a <= 1");
        return AbsoluteValueSpec(ArchimedeanPower{std::move(a)});
    }
    static AbsoluteValueSpec archimedean() { return archimedean_power(Rational(1)); }

    bool is_trivial() const { return std::holds_alternative<Trivial>(v_); }
    bool is_padic() const { return std::holds_alternative<PAdic>(v_); }
    bool is_archimedean_family() const { return std::holds_alternative<ArchimedeanPower>(v_); }

    std::int64_t prime() const {
        if (!is_padic()) throw input_error("spec is not p-adic");
        return std::get<PAdic>(v_).p;
    }
    const Rational& power() const {
        if (!is_archimedean_family()) throw input_error("spec is not an archimedean power");
        return std::get<ArchimedeanPower>(v_).a;
    }

    bool operator==(const AbsoluteValueSpec& o) const {
        if (v_.index() != o.v_.index()) return false;
        if (is_padic()) return prime() == o.prime();
        if (is_archimedean_family()) return power() == o.power();
        return true;
    }

  private:
    std::variant<Trivial, PAdic, ArchimedeanPower> v_;
    explicit AbsoluteValueSpec(std::variant<Trivial, PAdic, ArchimedeanPower> v) : v_(std::move(v)) {}
};

// v_p(x); nullopt encodes v_p(0) = +infinity.
inline std::optional<long> padic_valuation(const Rational& x, std::int64_t p) {
    if (!is_prime(p)) throw input_error("padic_valuation requires a prime");
    if (x == 0) return std::nullopt;
    long v = 0;
    Int n = num(x) < 0 ? Int(-num(x)) : num(x);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    Int d = den(x);
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

inline Magnitude abs_value(const AbsoluteValueSpec& spec, const Rational& x) {
    if (x == 0) return Magnitude::zero();
    if (spec.is_trivial()) return Magnitude::one();
    if (spec.is_padic()) {
        const long v = *padic_valuation(x, spec.prime());
        return Magnitude::of_rational(pow_rational(Rational(spec.prime()), -v));
    }
    return Magnitude::finite(rational_abs(x), spec.power());
}

template <typename T>
struct PairWitness {
    T x;
    T y;
};

struct MultiplicativityReport {
    bool passed = true;
    std::vector<PairWitness<Rational>> violations;
};

// |x y| = |x| |y|, checked exactly on every pair.
inline MultiplicativityReport check_multiplicativity(const AbsoluteValueSpec& spec,
                                                     const std::vector<std::pair<Rational, Rational>>& pairs) {
    MultiplicativityReport report;
    for (const auto& [x, y] : pairs) {
        const Magnitude lhs = abs_value(spec, x * y);
        const Magnitude rhs = (x == 0 || y == 0)
                                  ? Magnitude::zero()
                                  : magnitude_mul(abs_value(spec, x), abs_value(spec, y));
        if (!magnitude_eq(lhs, rhs)) {
            report.passed = false;
            report.violations.push_back({x, y});
        }
    }
    return report;
}

struct QTriangleReport {
    Verdict verdict = Verdict::Holds;
    std::vector<PairWitness<Rational>> violations;
    std::vector<PairWitness<Rational>> inconclusive;
};

namespace detail {

// Decides A^(1/k) <= B^(1/k) + C^(1/k) for positive rationals.  An exact
// tie needs (C/B)^(1/k) rational: for irrational t = (C/B)^(1/k) the
// conjugates of 1 + t have strictly smaller modulus, so (1 + t)^k cannot
// be rational and the two sides differ.  The rational-root case is
// decided exactly; the rest goes to enclosures at escalating precision.
inline Verdict radical_triangle_le(const Rational& a, const Rational& b, const Rational& c,
                                   unsigned long k, unsigned precision_bits) {
    if (a <= b + c) return Verdict::Holds;  // subadditivity of x^(1/k)
    if (auto t = exact_nth_root(c / b, k)) {
        const Rational rhs = b * pow_rational(1 + *t, static_cast<long>(k));
        return a <= rhs ? Verdict::Holds : Verdict::Fails;
    }
    unsigned bits = precision_bits >= 16 ? 16 : precision_bits;
    for (;;) {
        const RatInterval lhs = pow_bounds(a, make_rational(1, static_cast<long>(k)), bits);
        const RatInterval rhs =
            interval_add(pow_bounds(b, make_rational(1, static_cast<long>(k)), bits),
                         pow_bounds(c, make_rational(1, static_cast<long>(k)), bits));
        const int cmp = interval_le(lhs, rhs);
        if (cmp > 0) return Verdict::Holds;
        if (cmp < 0) return Verdict::Fails;
        if (bits >= precision_bits) return Verdict::Inconclusive;
        bits = std::min(bits * 2, precision_bits);
    }
}

}  // namespace detail

// Decides a^q <= b^q + c^q for magnitudes a, b, c of a common family.
// Exact whenever the q-th powers are rational, or a zero term reduces the
// comparison to magnitude_cmp, or the shared-exponent radical form admits
// an exact decision; otherwise directed-rounding enclosures with a
// three-valued verdict.
inline Verdict q_power_triangle(const Magnitude& a, const Magnitude& b, const Magnitude& c,
                                const Rational& q, unsigned precision_bits) {
    if (a.is_zero()) return Verdict::Holds;
    if (b.is_zero() && c.is_zero()) return Verdict::Fails;
    if (b.is_zero()) return magnitude_le(a, c) ? Verdict::Holds : Verdict::Fails;
    if (c.is_zero()) return magnitude_le(a, b) ? Verdict::Holds : Verdict::Fails;

    if (a.exponent() == b.exponent() && a.exponent() == c.exponent()) {
        const Rational combined = q * a.exponent();
        if (num(combined) > 1000000 || den(combined) > 1000000)
            throw resource_error("q-triangle exponent too large");
        const long p = num(combined).convert_to<long>();
        const unsigned long k = den(combined).convert_to<unsigned long>();
        const Rational ap = pow_rational(a.mantissa(), p);
        const Rational bp = pow_rational(b.mantissa(), p);
        const Rational cp = pow_rational(c.mantissa(), p);
        if (k == 1) return ap <= bp + cp ? Verdict::Holds : Verdict::Fails;
        return detail::radical_triangle_le(ap, bp, cp, k, precision_bits);
    }

    const Magnitude aq = magnitude_pow(a, q);
    const Magnitude bq = magnitude_pow(b, q);
    const Magnitude cq = magnitude_pow(c, q);
    const auto ar = aq.as_rational();
    const auto br = bq.as_rational();
    const auto cr = cq.as_rational();
    if (ar && br && cr) return *ar <= *br + *cr ? Verdict::Holds : Verdict::Fails;
    unsigned bits = precision_bits >= 16 ? 16 : precision_bits;
    for (;;) {
        const RatInterval lhs = magnitude_bounds(aq, bits);
        const RatInterval rhs = interval_add(magnitude_bounds(bq, bits), magnitude_bounds(cq, bits));
        const int cmp = interval_le(lhs, rhs);
        if (cmp > 0) return Verdict::Holds;
        if (cmp < 0) return Verdict::Fails;
        if (bits >= precision_bits) return Verdict::Inconclusive;
        bits = std::min(bits * 2, precision_bits);
    }
}

// |x+y|^q <= |x|^q + |y|^q (finite q), or |x+y| <= max(|x|,|y|) (q = inf).
inline QTriangleReport check_q_triangle(const AbsoluteValueSpec& spec, const QExponent& q,
                                        const std::vector<std::pair<Rational, Rational>>& pairs,
                                        unsigned precision_bits = kDefaultPrecisionBits) {
    QTriangleReport report;
    for (const auto& [x, y] : pairs) {
        const Magnitude sum = abs_value(spec, x + y);
        const Magnitude ax = abs_value(spec, x);
        const Magnitude ay = abs_value(spec, y);
        Verdict v;
        if (q.is_infinite()) {
            v = magnitude_le(sum, magnitude_max(ax, ay)) ? Verdict::Holds : Verdict::Fails;
        } else if (sum.is_zero()) {
            v = Verdict::Holds;
        } else {
            v = q_power_triangle(sum, ax, ay, q.value(), precision_bits);
        }
        if (v == Verdict::Fails) report.violations.push_back({x, y});
        if (v == Verdict::Inconclusive) report.inconclusive.push_back({x, y});
        report.verdict = combine_verdicts(report.verdict, v);
    }
    return report;
}

struct ArchimedeanReport {
    bool archimedean = false;
    std::optional<Rational> witness;  // n with |n*1| > 1
    std::int64_t checked_up_to = 0;   // non-archimedean side: |n| <= 1 verified for n <= bound
};

// Archimedean dichotomy: |n*1| bounded (trivial, p-adic) vs unbounded.
// The classification is by family; sampling corroborates the bound.
inline ArchimedeanReport is_archimedean(const AbsoluteValueSpec& spec,
                                        std::int64_t n_check = kArchimedeanCheckBound) {
    ArchimedeanReport report;
    if (spec.is_archimedean_family()) {
        report.archimedean = true;
        report.witness = Rational(2);
        return report;
    }
    for (std::int64_t n = 1; n <= n_check; ++n)
        if (!magnitude_le(abs_value(spec, Rational(n)), Magnitude::one()))
            throw representation_error("non-archimedean family produced |n| > 1");
    report.checked_up_to = n_check;
    return report;
}

struct DiscretenessReport {
    bool discrete = false;
    std::optional<Magnitude> rho1;  // absent for the trivial absolute value (rho = 0)
};

// Discrete absolute values: nonzero values are integer powers of rho_1.
// For PAdic(p), rho_1 = 1/p and the power form is verified on samples.
inline DiscretenessReport is_discrete(const AbsoluteValueSpec& spec) {
    DiscretenessReport report;
    if (spec.is_archimedean_family()) return report;
    report.discrete = true;
    if (spec.is_trivial()) return report;
    const std::int64_t p = spec.prime();
    report.rho1 = Magnitude::of_rational(make_rational(1, p));
    for (const Rational& x : {Rational(p), make_rational(1, p), Rational(p * p), Rational(3),
                              make_rational(7, 5), Rational(-p), make_rational(p, 9)}) {
        const Magnitude m = abs_value(spec, x);
        const long v = *padic_valuation(x, p);
        if (!magnitude_eq(m, Magnitude::of_rational(pow_rational(make_rational(1, p), v))))
            throw representation_error("p-adic value not an integer power of rho_1");
    }
    return report;
}

// Equivalence exponent a with |x|_2 = |x|_1^a, when the families admit one.
inline std::optional<Rational> equivalent(const AbsoluteValueSpec& s1, const AbsoluteValueSpec& s2) {
    std::optional<Rational> a;
    if (s1.is_trivial() && s2.is_trivial()) a = Rational(1);
    if (s1.is_padic() && s2.is_padic() && s1.prime() == s2.prime()) a = Rational(1);
    if (s1.is_archimedean_family() && s2.is_archimedean_family()) a = s2.power() / s1.power();
    if (!a) return std::nullopt;
    for (const Rational& x : {Rational(0), Rational(1), Rational(-2), Rational(6), make_rational(1, 6),
                              make_rational(35, 4), Rational(-30)}) {
        const Magnitude lhs = abs_value(s2, x);
        const Magnitude rhs = x == 0 ? Magnitude::zero() : magnitude_pow(abs_value(s1, x), *a);
        if (!magnitude_eq(lhs, rhs))
            throw representation_error("equivalence exponent failed sample verification");
    }
    return a;
}

}  // namespace qmet

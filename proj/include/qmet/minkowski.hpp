#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmet/seminorm.hpp"

namespace qmet {

// Symbolic balanced sets over Q^n, the representable cases for exact
// Minkowski evaluation:
//   ClosedUnitBall(N), OpenUnitBall(N)  unit balls of a seminorm rep
//   FiniteGenerated{gens}               balanced hull of finitely many vectors
//   PAdicLattice{basis}                 M * (closed unit coordinate polydisc),
//                                       p-adic specs only
class BalancedSetRep {
  public:
    struct ClosedUnitBall {
        SeminormRep seminorm;
    };
    struct OpenUnitBall {
        SeminormRep seminorm;
    };
    struct FiniteGenerated {
        std::vector<Vec> generators;
    };
    struct PAdicLattice {
        std::vector<Vec> basis;  // columns
    };

    BalancedSetRep(VectorSpaceQn space, ClosedUnitBall b) : space_(std::move(space)), v_(std::move(b)) {
        require_same_spec(std::get<ClosedUnitBall>(v_).seminorm);
    }
    BalancedSetRep(VectorSpaceQn space, OpenUnitBall b) : space_(std::move(space)), v_(std::move(b)) {
        require_same_spec(std::get<OpenUnitBall>(v_).seminorm);
    }
    BalancedSetRep(VectorSpaceQn space, FiniteGenerated f) : space_(std::move(space)), v_(std::move(f)) {
        const auto& gens = std::get<FiniteGenerated>(v_).generators;
        if (gens.empty()) throw input_error("finite-generated set needs generators");
        for (const auto& g : gens)
            if (g.size() != space_.dimension) throw input_error("generator dimension mismatch");
    }
    BalancedSetRep(VectorSpaceQn space, PAdicLattice l) : space_(std::move(space)), v_(std::move(l)) {
        if (!space_.scalar.is_padic()) throw input_error("lattice needs a p-adic spec");
        const auto& basis = std::get<PAdicLattice>(v_).basis;
        if (basis.size() != space_.dimension) throw input_error("lattice basis must be square");
        if (!columns_invertible(basis)) throw input_error("lattice basis is singular");
    }

    const VectorSpaceQn& space() const { return space_; }
    const AbsoluteValueSpec& scalar() const { return space_.scalar; }

    bool is_closed_ball() const { return std::holds_alternative<ClosedUnitBall>(v_); }
    bool is_open_ball() const { return std::holds_alternative<OpenUnitBall>(v_); }
    bool is_finite_generated() const { return std::holds_alternative<FiniteGenerated>(v_); }
    bool is_lattice() const { return std::holds_alternative<PAdicLattice>(v_); }

    const SeminormRep& ball_seminorm() const {
        if (is_closed_ball()) return std::get<ClosedUnitBall>(v_).seminorm;
        if (is_open_ball()) return std::get<OpenUnitBall>(v_).seminorm;
        throw input_error("representation is not a seminorm ball");
    }
    const std::vector<Vec>& generators() const { return std::get<FiniteGenerated>(v_).generators; }
    const std::vector<Vec>& lattice_basis() const { return std::get<PAdicLattice>(v_).basis; }

  private:
    VectorSpaceQn space_;
    std::variant<ClosedUnitBall, OpenUnitBall, FiniteGenerated, PAdicLattice> v_;

    void require_same_spec(const SeminormRep& n) const {
        if (!(n.scalar() == space_.scalar) || n.space().dimension != space_.dimension)
            throw input_error("ball seminorm space mismatch");
    }
};

// Scalar t with v = t * g, when v and g are collinear.
inline std::optional<Rational> collinear_coefficient(const Vec& g, const Vec& v) {
    if (g.size() != v.size()) throw input_error("vector dimension mismatch");
    if (is_zero_vec(g)) return is_zero_vec(v) ? std::optional<Rational>(Rational(0)) : std::nullopt;
    std::optional<Rational> t;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) {
            if (v[i] != 0) return std::nullopt;
            continue;
        }
        const Rational c = v[i] / g[i];
        if (t && *t != c) return std::nullopt;
        t = c;
    }
    return t;
}

// v in union{t E : |t| <= 1} for the generator list E.
inline bool balanced_hull_membership(const BalancedSetRep& a, const Vec& v) {
    if (!a.is_finite_generated()) throw input_error("hull membership needs a generated set");
    if (is_zero_vec(v)) return true;
    for (const auto& g : a.generators()) {
        const auto t = collinear_coefficient(g, v);
        if (t && magnitude_le(abs_value(a.scalar(), *t), Magnitude::one())) return true;
    }
    return false;
}

// v in union{t E : t rational, 0 <= t <= 1}; archimedean specs only.
inline bool starlike_hull_membership(const BalancedSetRep& a, const Vec& v) {
    if (!a.is_finite_generated()) throw input_error("hull membership needs a generated set");
    if (!a.scalar().is_archimedean_family())
        throw input_error("starlike hull needs an archimedean spec");
    if (is_zero_vec(v)) return true;
    for (const auto& g : a.generators()) {
        const auto t = collinear_coefficient(g, v);
        if (t && *t >= 0 && *t <= 1) return true;
    }
    return false;
}

struct AbsorbingReport {
    bool absorbing = false;
    std::string reason;
    std::optional<Vec> witness;  // vector that is never absorbed
};

namespace detail {
// A non-absorbed witness for a union of finitely many lines in dim >= 2:
// some e_1 + k e_2 avoids every generator line.
inline Vec non_collinear_witness(const std::vector<Vec>& gens, std::size_t dim) {
    for (std::size_t k = 0; k <= gens.size(); ++k) {
        Vec cand(dim, Rational(0));
        cand[0] = 1;
        cand[1] = Rational(static_cast<long>(k));
        bool hit = false;
        for (const auto& g : gens)
            if (collinear_coefficient(g, cand)) {
                hit = true;
                break;
            }
        if (!hit) return cand;
    }
    throw representation_error("witness search failed");
}
}  // namespace detail

inline AbsorbingReport is_absorbing(const BalancedSetRep& a) {
    AbsorbingReport report;
    const std::size_t dim = a.space().dimension;
    if (a.scalar().is_trivial()) {
        // Only V itself absorbs over the trivial absolute value.
        if (a.is_closed_ball()) {
            report.absorbing = true;  // {N <= 1} = V for 0/1-valued N
            report.reason = "closed unit ball of a trivial-spec seminorm is all of V";
        } else if (a.is_open_ball()) {
            const auto& n = a.ball_seminorm();
            if (n.is_quotient()) {
                // {N < 1} = span(basis)
                std::vector<Vec> rows = n.quotient().basis;
                report.absorbing = row_reduce(rows) == dim;
                report.reason = report.absorbing ? "open ball is the full span"
                                                 : "open ball is a proper subspace";
            } else {
                report.absorbing = false;
                report.reason = "open unit ball of the trivial ultranorm is {0}";
            }
        } else {
            // hull of finitely many vectors: all of V only in dimension 1
            bool has_nonzero = false;
            for (const auto& g : a.generators()) has_nonzero |= !is_zero_vec(g);
            report.absorbing = dim == 1 && has_nonzero;
            report.reason = report.absorbing ? "hull covers the line"
                                             : "hull is a proper subset of V";
        }
        if (!report.absorbing && a.is_finite_generated() && dim >= 2)
            report.witness = detail::non_collinear_witness(a.generators(), dim);
        return report;
    }
    if (a.is_closed_ball() || a.is_open_ball()) {
        report.absorbing = true;  // balls of everywhere-finite seminorms
        report.reason = "unit ball of an everywhere-finite seminorm";
        return report;
    }
    if (a.is_lattice()) {
        report.absorbing = true;
        report.reason = "lattice is the unit ball of an ultranorm";
        return report;
    }
    bool has_nonzero = false;
    for (const auto& g : a.generators()) has_nonzero |= !is_zero_vec(g);
    report.absorbing = dim == 1 && has_nonzero;
    if (!report.absorbing) {
        report.reason = dim == 1 ? "all generators are zero" : "hull is a union of lines";
        if (dim >= 2) report.witness = detail::non_collinear_witness(a.generators(), dim);
    } else {
        report.reason = "hull covers the line";
    }
    return report;
}

namespace detail {

// Least power p^k >= m (strict: > m), exactly.
inline Magnitude least_padic_power(std::int64_t p, const Magnitude& m, bool strict) {
    if (m.is_zero()) return Magnitude::zero();
    const auto r = m.as_rational();
    if (!r) throw representation_error("p-adic bound of a non-rational magnitude");
    auto ok = [&](const Rational& x) { return strict ? x > *r : x >= *r; };
    Rational pk(1);
    if (ok(pk)) {
        while (ok(pk / p)) pk /= p;
    } else {
        do pk *= p;
        while (!ok(pk));
    }
    return Magnitude::of_rational(pk);
}

}  // namespace detail

// Lattice ultranorm max_i |(M^-1 v)_i|_p.
inline Magnitude lattice_norm(const BalancedSetRep& a, const Vec& v) {
    const auto coords = solve_columns(a.lattice_basis(), v);
    if (!coords) throw input_error("lattice basis is singular");
    Magnitude best = Magnitude::zero();
    for (const auto& c : *coords) best = magnitude_max(best, abs_value(a.scalar(), c));
    return best;
}

// N_A(v) = inf{|t| : t in k, v in t A}, evaluated exactly per
// representation; the infimum runs over the value group of the spec.
// allow_zero_scalar admits t = 0 (it only changes trivial-spec results
// at v = 0).  Unabsorbed vectors yield +infinity.
inline Magnitude minkowski_functional(const BalancedSetRep& a, const Vec& v,
                                      bool allow_zero_scalar = true) {
    if (v.size() != a.space().dimension) throw input_error("vector dimension mismatch");
    const AbsoluteValueSpec& spec = a.scalar();

    if (spec.is_trivial()) {
        // |t| is 0 or 1: N_A(v) = 0 (t = 0, v = 0), 1 (v in A), else +inf.
        if (is_zero_vec(v) && allow_zero_scalar) return Magnitude::zero();
        bool member;
        if (a.is_closed_ball())
            member = magnitude_le(eval_seminorm(a.ball_seminorm(), v), Magnitude::one());
        else if (a.is_open_ball())
            member = magnitude_lt(eval_seminorm(a.ball_seminorm(), v), Magnitude::one());
        else
            member = balanced_hull_membership(a, v);
        return member ? Magnitude::one() : Magnitude::infinity();
    }

    if (is_zero_vec(v)) return Magnitude::zero();

    if (a.is_lattice()) return lattice_norm(a, v);

    if (a.is_finite_generated()) {
        // min |c| over generators parallel to v with v = c * g; attained.
        std::optional<Magnitude> best;
        for (const auto& g : a.generators()) {
            const auto c = collinear_coefficient(g, v);
            if (!c || *c == 0) continue;
            const Magnitude m = abs_value(spec, *c);
            if (!best || magnitude_lt(m, *best)) best = m;
        }
        return best ? *best : Magnitude::infinity();
    }

    const Magnitude n = eval_seminorm(a.ball_seminorm(), v);
    if (spec.is_padic()) {
        // infimum over the value group {p^k}
        return detail::least_padic_power(spec.prime(), n, a.is_open_ball());
    }
    // archimedean: not discrete, and N_B = N = N_C
    return n;
}

struct RecoveryReport {
    bool applicable = true;       // equality claims apply (non-discrete or value-group-valued)
    bool passed = true;
    bool value_group_valued = true;  // p-adic mode: all N values are powers of p
    bool infimum_attained = true;    // p-adic mode: witness scalar found per sample
    std::vector<std::string> failures;
};

namespace detail {
inline bool is_power_of(std::int64_t p, const Rational& r) {
    if (r <= 0) return false;
    Rational x = r;
    while (x > 1) x /= p;
    while (x < 1) x *= p;
    return x == 1;
}
}  // namespace detail

// Unit-ball recovery of a seminorm from its Minkowski functionals:
//   archimedean: N = N_B = N_C exactly;
//   p-adic, value-group-valued N: N_C = N, N_B = p N, N <= N_C, all
//     values in the value group with the infimum attained;
//   p-adic otherwise: only the sandwich N <= N_C is asserted, equality
//     claims are flagged not applicable;
//   trivial (and any discrete) specs: closed-ball identity
//     A = {v : N_A(v) <= 1} on the samples.
inline RecoveryReport theorem_unit_ball_recovery(const SeminormRep& n, const std::vector<Vec>& samples) {
    RecoveryReport report;
    const VectorSpaceQn& space = n.space();
    const AbsoluteValueSpec& spec = n.scalar();

    if (spec.is_trivial()) {
        const BalancedSetRep closed(space, BalancedSetRep::ClosedUnitBall{n});
        for (const auto& v : samples) {
            const bool in_a = magnitude_le(eval_seminorm(n, v), Magnitude::one());
            const bool in_ball =
                magnitude_le(minkowski_functional(closed, v, true), Magnitude::one());
            if (in_a != in_ball) {
                report.passed = false;
                report.failures.push_back("closed-ball identity failed");
            }
        }
        return report;
    }

    const BalancedSetRep closed(space, BalancedSetRep::ClosedUnitBall{n});
    const BalancedSetRep open(space, BalancedSetRep::OpenUnitBall{n});

    if (spec.is_archimedean_family()) {
        for (const auto& v : samples) {
            const Magnitude nv = eval_seminorm(n, v);
            const Magnitude nb = minkowski_functional(open, v);
            const Magnitude nc = minkowski_functional(closed, v);
            if (!magnitude_eq(nv, nb) || !magnitude_eq(nv, nc)) {
                report.passed = false;
                report.failures.push_back("N = N_B = N_C failed");
            }
        }
        return report;
    }

    const std::int64_t p = spec.prime();
    for (const auto& v : samples) {
        const Magnitude nv = eval_seminorm(n, v);
        if (!nv.is_zero()) {
            const auto r = nv.as_rational();
            if (!r || !detail::is_power_of(p, *r)) report.value_group_valued = false;
        }
    }
    report.applicable = report.value_group_valued;
    for (const auto& v : samples) {
        const Magnitude nv = eval_seminorm(n, v);
        const Magnitude nb = minkowski_functional(open, v);
        const Magnitude nc = minkowski_functional(closed, v);
        if (!magnitude_le(nv, nc)) {
            report.passed = false;
            report.failures.push_back("N <= N_C failed");
        }
        if (report.value_group_valued) {
            const Magnitude p_nv =
                nv.is_zero() ? Magnitude::zero()
                             : magnitude_mul(Magnitude::of_rational(Rational(p)), nv);
            if (!magnitude_eq(nc, nv)) {
                report.passed = false;
                report.failures.push_back("N_C = N failed");
            }
            if (!magnitude_eq(nb, p_nv)) {
                report.passed = false;
                report.failures.push_back("N_B = p N failed");
            }
            // attained: t = 1/N_C(v) has |t|_p = N_C(v), and t^-1 v lands in
            // the unit ball
            if (!nc.is_zero()) {
                const auto r = nc.as_rational();
                if (!r || !magnitude_le(eval_seminorm(n, vec_scale(*r, v)), Magnitude::one()))
                    report.infimum_attained = false;
            }
        }
        // closed-ball identity for the discrete spec
        const bool in_a = magnitude_le(nv, Magnitude::one());
        const bool in_ball = magnitude_le(nc, Magnitude::one());
        if (in_a != in_ball) {
            report.passed = false;
            report.failures.push_back("closed-ball identity failed");
        }
    }
    if (!report.infimum_attained) report.passed = false;
    return report;
}

struct UltranormReport {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

// N_A(v + w) <= max(N_A(v), N_A(w)) for an infinity-convex balanced A
// (a lattice, or the closed unit ball of an ultranorm); plus the additive
// closure witness v, w in A  =>  v + w in A.
inline UltranormReport ultranorm_from_convex_balanced(const BalancedSetRep& a,
                                                      const std::vector<std::pair<Vec, Vec>>& pairs) {
    if (!a.scalar().is_padic() && !a.scalar().is_trivial())
        throw precondition_error("ultranorm check needs an ultrametric spec");
    if (!a.is_lattice() && !a.is_closed_ball())
        throw precondition_error("ultranorm check needs a lattice or closed ball");
    UltranormReport report;
    auto na = [&](const Vec& v) { return minkowski_functional(a, v, true); };
    auto member = [&](const Vec& v) { return magnitude_le(na(v), Magnitude::one()); };
    for (const auto& [v, w] : pairs) {
        ++report.checked;
        if (!magnitude_le(na(vec_add(v, w)), magnitude_max(na(v), na(w)))) {
            report.passed = false;
            report.failures.push_back("ultrametric inequality failed");
        }
        if (member(v) && member(w) && !member(vec_add(v, w))) {
            report.passed = false;
            report.failures.push_back("additive closure failed");
        }
    }
    return report;
}

struct QConvexitySample {
    Rational t1, t2;
    Vec v1, v2;
};

struct QConvexityReport {
    bool passed = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // constraint not exactly decidable, or not satisfied
    std::vector<std::string> failures;
};

// Ball q-convexity: N(v1), N(v2) <= 1 and |t1|^q + |t2|^q <= 1 imply
// N(t1 v1 + t2 v2) <= 1.  The scalar constraint is decided exactly when
// the q-th powers are rational; otherwise the sample is skipped.
inline QConvexityReport check_q_convexity_ball(const SeminormRep& n, const QExponent& q,
                                               const std::vector<QConvexitySample>& samples) {
    QConvexityReport report;
    for (const auto& s : samples) {
        const Magnitude n1 = eval_seminorm(n, s.v1);
        const Magnitude n2 = eval_seminorm(n, s.v2);
        if (!magnitude_le(n1, Magnitude::one()) || !magnitude_le(n2, Magnitude::one())) {
            ++report.skipped;
            continue;
        }
        const Magnitude a1 = abs_value(n.scalar(), s.t1);
        const Magnitude a2 = abs_value(n.scalar(), s.t2);
        bool constraint;
        if (q.is_infinite()) {
            constraint = magnitude_le(magnitude_max(a1, a2), Magnitude::one());
        } else {
            const auto p1 = a1.is_zero() ? std::optional<Rational>(Rational(0))
                                         : magnitude_pow(a1, q.value()).as_rational();
            const auto p2 = a2.is_zero() ? std::optional<Rational>(Rational(0))
                                         : magnitude_pow(a2, q.value()).as_rational();
            if (!p1 || !p2) {
                ++report.skipped;
                continue;
            }
            constraint = *p1 + *p2 <= 1;
        }
        if (!constraint) {
            ++report.skipped;
            continue;
        }
        ++report.checked;
        const Vec combo = vec_add(vec_scale(s.t1, s.v1), vec_scale(s.t2, s.v2));
        if (!magnitude_le(eval_seminorm(n, combo), Magnitude::one())) {
            report.passed = false;
            report.failures.push_back("combination left the ball");
        }
    }
    return report;
}

}  // namespace qmet

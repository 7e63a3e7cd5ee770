#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmet/absolute_value.hpp"
#include "qmet/distance_matrix.hpp"
#include "qmet/linalg.hpp"

namespace qmet {

struct VectorSpaceQn {
    std::size_t dimension;
    AbsoluteValueSpec scalar;

    VectorSpaceQn(std::size_t dim, AbsoluteValueSpec spec) : dimension(dim), scalar(std::move(spec)) {
        if (dim < 1) throw input_error("vector space dimension must be >= 1");
    }
};

// Symbolic seminorm representations over Q^n: each variant evaluates to
// an exact magnitude in its scalar family.
//
//   MaxFunctionals   N(v) = max_i w_i |L_i(v)|            any spec
//   PowerSum         N(v) = (sum_i |L_i(v)|^r)^(1/r)      archimedean only
//   TrivialNorm      N(v) = 1 off zero                    trivial spec only
//   QuotientBySubspace  N = 0 on span(B), 1 off it        trivial spec only
//   Gauge            N(v) = max_i max(L_i(v), 0)          standard absolute
//                    value, homogeneous for t >= 0 only
class SeminormRep {
  public:
    struct MaxFunctionals {
        std::vector<Vec> rows;
        std::vector<Magnitude> weights;  // empty = all 1
    };
    struct PowerSum {
        std::vector<Vec> rows;
        Rational r;
    };
    struct TrivialNorm {};
    struct QuotientBySubspace {
        std::vector<Vec> basis;
    };
    struct Gauge {
        std::vector<Vec> rows;
    };

    SeminormRep(VectorSpaceQn space, MaxFunctionals m) : space_(std::move(space)), v_(std::move(m)) {
        auto& mf = std::get<MaxFunctionals>(v_);
        if (mf.rows.empty()) throw input_error("max-functional seminorm needs rows");
        check_rows(mf.rows);
        if (mf.weights.empty()) mf.weights.assign(mf.rows.size(), Magnitude::one());
        if (mf.weights.size() != mf.rows.size())
            throw input_error("weight count does not match row count");
        for (const auto& w : mf.weights)
            if (w.is_infinite()) throw input_error("infinite seminorm weight");
    }
    SeminormRep(VectorSpaceQn space, PowerSum p) : space_(std::move(space)), v_(std::move(p)) {
        const auto& ps = std::get<PowerSum>(v_);
        if (!space_.scalar.is_archimedean_family())
            throw input_error("power-sum seminorm needs an archimedean spec");
        if (ps.rows.empty()) throw input_error("power-sum seminorm needs rows");
        if (ps.r <= 0) throw input_error("power-sum exponent must be positive");
        if (!is_integer(space_.scalar.power() * ps.r))
            throw representation_error("power sum needs a*r integral for exact values");
        check_rows(ps.rows);
    }
    SeminormRep(VectorSpaceQn space, TrivialNorm t) : space_(std::move(space)), v_(t) {
        if (!space_.scalar.is_trivial())
            throw input_error("trivial ultranorm needs the trivial spec");
    }
    SeminormRep(VectorSpaceQn space, QuotientBySubspace q) : space_(std::move(space)), v_(std::move(q)) {
        if (!space_.scalar.is_trivial())
            throw input_error("quotient seminorm needs the trivial spec");
        check_rows(std::get<QuotientBySubspace>(v_).basis);
    }
    SeminormRep(VectorSpaceQn space, Gauge g) : space_(std::move(space)), v_(std::move(g)) {
        if (!space_.scalar.is_archimedean_family() || space_.scalar.power() != 1)
            throw input_error("gauge needs the standard archimedean spec");
        if (std::get<Gauge>(v_).rows.empty()) throw input_error("gauge needs rows");
        check_rows(std::get<Gauge>(v_).rows);
    }

    const VectorSpaceQn& space() const { return space_; }
    const AbsoluteValueSpec& scalar() const { return space_.scalar; }

    bool is_max() const { return std::holds_alternative<MaxFunctionals>(v_); }
    bool is_power_sum() const { return std::holds_alternative<PowerSum>(v_); }
    bool is_trivial_norm() const { return std::holds_alternative<TrivialNorm>(v_); }
    bool is_quotient() const { return std::holds_alternative<QuotientBySubspace>(v_); }
    bool is_gauge() const { return std::holds_alternative<Gauge>(v_); }

    const MaxFunctionals& max_functionals() const { return std::get<MaxFunctionals>(v_); }
    const PowerSum& power_sum() const { return std::get<PowerSum>(v_); }
    const QuotientBySubspace& quotient() const { return std::get<QuotientBySubspace>(v_); }
    const Gauge& gauge() const { return std::get<Gauge>(v_); }

    // Values never exceed the one needed for homogeneity, so the shared
    // magnitude exponent of nonzero values: a for archimedean max/gauge
    // forms, 1 for p-adic/trivial, 1/r for power sums.
    Rational value_exponent() const {
        if (is_power_sum()) return 1 / power_sum().r;
        if (scalar().is_archimedean_family()) return scalar().power();
        return Rational(1);
    }

  private:
    VectorSpaceQn space_;
    std::variant<MaxFunctionals, PowerSum, TrivialNorm, QuotientBySubspace, Gauge> v_;

    void check_rows(const std::vector<Vec>& rows) const {
        for (const auto& row : rows)
            if (row.size() != space_.dimension) throw input_error("row dimension mismatch");
    }
};

inline void check_vector(const SeminormRep& n, const Vec& v) {
    if (v.size() != n.space().dimension) throw input_error("vector dimension mismatch");
}

inline Magnitude eval_seminorm(const SeminormRep& n, const Vec& v) {
    check_vector(n, v);
    if (n.is_trivial_norm()) return is_zero_vec(v) ? Magnitude::zero() : Magnitude::one();
    if (n.is_quotient())
        return in_span(n.quotient().basis, v) ? Magnitude::zero() : Magnitude::one();
    if (n.is_gauge()) {
        Rational best(0);
        for (const auto& row : n.gauge().rows) best = rational_max(best, dot(row, v));
        return Magnitude::of_rational(best);
    }
    if (n.is_power_sum()) {
        const auto& ps = n.power_sum();
        const Rational ar = n.scalar().power() * ps.r;  // integral by construction
        const long k = num(ar).convert_to<long>();
        Rational sum(0);
        for (const auto& row : ps.rows) sum += pow_rational(rational_abs(dot(row, v)), k);
        if (sum == 0) return Magnitude::zero();
        return Magnitude::finite(sum, 1 / ps.r);
    }
    const auto& mf = n.max_functionals();
    Magnitude best = Magnitude::zero();
    for (std::size_t i = 0; i < mf.rows.size(); ++i) {
        const Magnitude li = abs_value(n.scalar(), dot(mf.rows[i], v));
        if (li.is_zero() || mf.weights[i].is_zero()) continue;
        best = magnitude_max(best, magnitude_mul(mf.weights[i], li));
    }
    return best;
}

struct SampleReport {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

// N(t v) = |t| N(v), exact.  Gauges are homogeneous for t >= 0 only, so
// negative scalars are checked against N(|t| sign...) -- they are skipped
// and counted separately there.
inline SampleReport check_homogeneity(const SeminormRep& n,
                                      const std::vector<std::pair<Rational, Vec>>& samples) {
    SampleReport report;
    for (const auto& [t, v] : samples) {
        check_vector(n, v);
        if (n.is_gauge() && t < 0) continue;
        const Magnitude lhs = eval_seminorm(n, vec_scale(t, v));
        Magnitude rhs = Magnitude::zero();
        if (t != 0) {
            const Magnitude nv = eval_seminorm(n, v);
            if (!nv.is_zero()) {
                const Magnitude at =
                    n.is_gauge() ? Magnitude::of_rational(t) : abs_value(n.scalar(), t);
                rhs = magnitude_mul(at, nv);
            }
        }
        ++report.checked;
        if (!magnitude_eq(lhs, rhs)) {
            report.passed = false;
            report.failures.push_back("t=" + qmet::to_string(t));
        }
    }
    return report;
}

// N(v + w) <= max(N(v), N(w)), exact on every pair.
inline SampleReport check_ultranorm(const SeminormRep& n,
                                    const std::vector<std::pair<Vec, Vec>>& pairs) {
    SampleReport report;
    for (const auto& [v, w] : pairs) {
        const Magnitude lhs = eval_seminorm(n, vec_add(v, w));
        const Magnitude rhs = magnitude_max(eval_seminorm(n, v), eval_seminorm(n, w));
        ++report.checked;
        if (!magnitude_le(lhs, rhs)) {
            report.passed = false;
            report.failures.push_back("pair " + std::to_string(report.checked - 1));
        }
    }
    return report;
}

// N(v - w) < N(v)  =>  N(v) = N(w), on pairs where the hypothesis holds.
inline SampleReport check_shift_lemma(const SeminormRep& n,
                                      const std::vector<std::pair<Vec, Vec>>& pairs) {
    SampleReport report;
    for (const auto& [v, w] : pairs) {
        const Magnitude nv = eval_seminorm(n, v);
        if (!magnitude_lt(eval_seminorm(n, vec_sub(v, w)), nv)) continue;
        ++report.checked;
        if (!magnitude_eq(nv, eval_seminorm(n, w))) {
            report.passed = false;
            report.failures.push_back("pair " + std::to_string(report.checked - 1));
        }
    }
    return report;
}

// max_j N_j: closed form by merging rows and weights.
inline SeminormRep combine_seminorms_max(const std::vector<SeminormRep>& ns) {
    if (ns.empty()) throw input_error("empty seminorm family");
    if (ns.size() == 1) return ns.front();
    for (const auto& n : ns) {
        if (!(n.scalar() == ns.front().scalar()))
            throw input_error("seminorm specs differ");
        if (n.space().dimension != ns.front().space().dimension)
            throw input_error("seminorm dimensions differ");
        if (!n.is_max()) throw representation_error("max combination needs max-functional forms");
    }
    SeminormRep::MaxFunctionals merged;
    for (const auto& n : ns) {
        const auto& mf = n.max_functionals();
        merged.rows.insert(merged.rows.end(), mf.rows.begin(), mf.rows.end());
        merged.weights.insert(merged.weights.end(), mf.weights.begin(), mf.weights.end());
    }
    return SeminormRep(ns.front().space(), std::move(merged));
}

// (sum_j N_j^r)^(1/r): closed form by power-sum concatenation.  Inputs
// must be power sums with the same r, or single-row unit-weight
// max-functional forms (plain |L|).
inline SeminormRep combine_seminorms_power(const std::vector<SeminormRep>& ns, const Rational& r) {
    if (ns.empty()) throw input_error("empty seminorm family");
    SeminormRep::PowerSum merged;
    merged.r = r;
    for (const auto& n : ns) {
        if (!(n.scalar() == ns.front().scalar())) throw input_error("seminorm specs differ");
        if (n.space().dimension != ns.front().space().dimension)
            throw input_error("seminorm dimensions differ");
        if (n.is_power_sum() && n.power_sum().r == r) {
            merged.rows.insert(merged.rows.end(), n.power_sum().rows.begin(),
                               n.power_sum().rows.end());
            continue;
        }
        if (n.is_max() && n.max_functionals().rows.size() == 1 &&
            magnitude_eq(n.max_functionals().weights.front(), Magnitude::one())) {
            merged.rows.push_back(n.max_functionals().rows.front());
            continue;
        }
        throw representation_error("power combination needs |L| rows or matching power sums");
    }
    return SeminormRep(ns.front().space(), std::move(merged));
}

// N^sym(v) = max(N(v), N(-v)) for a gauge: max-functional form over
// rows and negated rows, so N^sym(v) = max_i |L_i(v)|.
inline SeminormRep symmetrize_gauge(const SeminormRep& n) {
    if (!n.is_gauge()) throw input_error("symmetrize needs a gauge");
    SeminormRep::MaxFunctionals mf;
    for (const auto& row : n.gauge().rows) {
        mf.rows.push_back(row);
        mf.rows.push_back(vec_scale(Rational(-1), row));
    }
    return SeminormRep(n.space(), std::move(mf));
}

struct GaugeSubadditivityReport {
    bool symmetric = true;      // N^sym(-v) = N^sym(v)
    bool gauge_subadditive = true;
    bool sym_subadditive = true;
    bool sym_matches_max = true;  // N^sym(v) = max(N(v), N(-v)) pointwise
};

inline GaugeSubadditivityReport check_gauge_subadditive(const SeminormRep& n,
                                                        const std::vector<std::pair<Vec, Vec>>& pairs) {
    if (!n.is_gauge()) throw input_error("subadditivity check needs a gauge");
    const SeminormRep sym = symmetrize_gauge(n);
    GaugeSubadditivityReport report;
    auto value = [](const Magnitude& m) {
        const auto r = m.as_rational();
        if (!r) throw representation_error("gauge value is not rational");
        return *r;
    };
    for (const auto& [v, w] : pairs) {
        const Rational nv = value(eval_seminorm(n, v));
        const Rational nw = value(eval_seminorm(n, w));
        const Rational nvw = value(eval_seminorm(n, vec_add(v, w)));
        if (nvw > nv + nw) report.gauge_subadditive = false;

        const Rational sv = value(eval_seminorm(sym, v));
        const Rational sw = value(eval_seminorm(sym, w));
        const Rational svw = value(eval_seminorm(sym, vec_add(v, w)));
        if (svw > sv + sw) report.sym_subadditive = false;
        if (sv != value(eval_seminorm(sym, vec_scale(Rational(-1), v)))) report.symmetric = false;
        const Rational nnegv = value(eval_seminorm(n, vec_scale(Rational(-1), v)));
        if (sv != rational_max(nv, nnegv)) report.sym_matches_max = false;
    }
    return report;
}

// d(v, w) = N(v - w) on a finite sample of vectors, bridged into the
// power-domain matrix representation: entries are mantissas, stored
// exponent 1/value_exponent.
inline DistanceMatrix seminorm_to_semimetric(const SeminormRep& n, const std::vector<Vec>& points,
                                             const std::vector<std::string>& labels) {
    if (points.empty()) throw input_error("empty sample list");
    if (labels.size() != points.size()) throw input_error("label count mismatch");
    const Rational e = n.value_exponent();
    const std::size_t m = points.size();
    std::vector<std::vector<Rational>> entries(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Magnitude d = eval_seminorm(n, vec_sub(points[i], points[j]));
            Rational stored(0);
            if (!d.is_zero()) {
                if (d.exponent() == e) {
                    stored = d.mantissa();
                } else {
                    // value m^e' re-expressed in the target domain: m^(e'/e)
                    const auto re = exact_rational_pow(d.mantissa(), d.exponent() / e);
                    if (!re)
                        throw representation_error(
                            "sample value not representable in the power domain");
                    stored = *re;
                }
            }
            entries[i][j] = stored;
            entries[j][i] = std::move(stored);
        }
    return DistanceMatrix(labels, 1 / e, std::move(entries));
}

}  // namespace qmet

#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qmet/absolute_value.hpp"
#include "qmet/magnitude.hpp"
#include "qmet/partition.hpp"
#include "qmet/verdict.hpp"

namespace qmet {

// Finite semimetric space in power-domain storage: the actual distance is
// entry^(1/exponent).  Entries are exact rationals, symmetric, with zero
// diagonal; radii and axiom checks work on the stored entries.
class DistanceMatrix {
  public:
    DistanceMatrix(std::vector<std::string> points, Rational exponent,
                   std::vector<std::vector<Rational>> entries)
        : points_(std::move(points)), exponent_(std::move(exponent)) {
        const std::size_t n = points_.size();
        if (n == 0) throw input_error("distance matrix needs at least one point");
        if (exponent_ <= 0) throw input_error("stored exponent must be positive");
        {
            std::set<std::string> distinct(points_.begin(), points_.end());
            if (distinct.size() != n) throw input_error("point labels must be distinct");
        }
        if (entries.size() != n) throw input_error("entry matrix is not n x n");
        entries_.assign(n * n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (entries[i].size() != n) throw input_error("entry matrix is not n x n");
            if (entries[i][i] != 0) throw input_error("diagonal entry is nonzero");
            for (std::size_t j = 0; j < n; ++j) {
                if (entries[i][j] < 0) throw input_error("negative distance entry");
                if (entries[i][j] != entries[j][i]) throw input_error("entry matrix is asymmetric");
                entries_[i * n + j] = entries[i][j];
            }
        }
    }

    static DistanceMatrix zero(std::vector<std::string> points, Rational exponent = Rational(1)) {
        const std::size_t n = points.size();
        return DistanceMatrix(std::move(points), std::move(exponent),
                              std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const Rational& exponent() const { return exponent_; }

    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == label) return i;
        throw input_error("unknown point label '" + label + "'");
    }

    // Actual distance value entry^(1/exponent), as an exact magnitude.
    Magnitude distance(std::size_t i, std::size_t j) const {
        const Rational& e = at(i, j);
        if (e == 0) return Magnitude::zero();
        return Magnitude::finite(e, 1 / exponent_);
    }

    // Distinct stored entry values, ascending.
    std::vector<Rational> occurring_values() const {
        std::vector<Rational> vals(entries_.begin(), entries_.end());
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }

    DistanceMatrix with_exponent(Rational e) const {
        DistanceMatrix copy = *this;
        if (e <= 0) throw input_error("stored exponent must be positive");
        copy.exponent_ = std::move(e);
        return copy;
    }

    bool operator==(const DistanceMatrix& o) const {
        return points_ == o.points_ && exponent_ == o.exponent_ && entries_ == o.entries_;
    }

    template <typename F>
    DistanceMatrix map_entries(F&& f) const {
        DistanceMatrix copy = *this;
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Rational v = f(at(i, j));
                if (v < 0) throw input_error("mapped entry is negative");
                copy.entries_[i * n + j] = v;
                copy.entries_[j * n + i] = std::move(v);
            }
        return copy;
    }

  private:
    std::vector<std::string> points_;
    Rational exponent_;
    std::vector<Rational> entries_;  // row-major, symmetric, zero diagonal
};

struct TripleWitness {
    std::size_t x, y, z;  // violation at d(x,z) vs the path through y
    bool operator<(const TripleWitness& o) const {
        return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
    }
    bool operator==(const TripleWitness& o) const = default;
};

struct TriangleReport {
    Verdict verdict = Verdict::Holds;
    std::vector<TripleWitness> violations;
    std::vector<TripleWitness> inconclusive;

    bool passed() const { return verdict == Verdict::Holds; }
};

namespace detail {
template <typename Check>
TriangleReport for_all_triples(std::size_t n, Check&& check) {
    TriangleReport report;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t y = 0; y < n; ++y) {
                if (x == z || y == x || y == z) continue;
                const Verdict v = check(x, y, z);
                if (v == Verdict::Fails) report.violations.push_back({x, y, z});
                if (v == Verdict::Inconclusive) report.inconclusive.push_back({x, y, z});
                report.verdict = combine_verdicts(report.verdict, v);
            }
    return report;
}
}  // namespace detail

// Triangle inequality on the stored entries, over all triples.
inline TriangleReport check_semimetric(const DistanceMatrix& d) {
    return detail::for_all_triples(d.size(), [&](std::size_t x, std::size_t y, std::size_t z) {
        return d.at(x, z) <= d.at(x, y) + d.at(y, z) ? Verdict::Holds : Verdict::Fails;
    });
}

// Whether the actual distances form a q-semimetric.  Exact whenever the
// combined exponent q/stored_exponent is a positive integer; otherwise
// interval fallback with a three-valued verdict.
inline TriangleReport check_q_semimetric(const DistanceMatrix& d, const QExponent& q,
                                         unsigned precision_bits = kDefaultPrecisionBits) {
    const std::size_t n = d.size();
    if (q.is_infinite()) {
        return detail::for_all_triples(n, [&](std::size_t x, std::size_t y, std::size_t z) {
            return d.at(x, z) <= rational_max(d.at(x, y), d.at(y, z)) ? Verdict::Holds
                                                                      : Verdict::Fails;
        });
    }
    const Rational combined = q.value() / d.exponent();
    if (is_integer(combined)) {
        const long k = num(combined).convert_to<long>();
        return detail::for_all_triples(n, [&](std::size_t x, std::size_t y, std::size_t z) {
            return pow_rational(d.at(x, z), k) <=
                           pow_rational(d.at(x, y), k) + pow_rational(d.at(y, z), k)
                       ? Verdict::Holds
                       : Verdict::Fails;
        });
    }
    return detail::for_all_triples(n, [&](std::size_t x, std::size_t y, std::size_t z) {
        return q_power_triangle(d.distance(x, z), d.distance(x, y), d.distance(y, z), q.value(),
                                precision_bits);
    });
}

// Reverse q-triangle |d(x,z)^q - d(y,z)^q| <= d(x,y)^q on stored entries;
// exact for integer q/stored_exponent (the regime callers verify first).
inline TriangleReport reverse_triangle_check(const DistanceMatrix& d, const QExponent& q) {
    const std::size_t n = d.size();
    if (q.is_infinite())
        throw input_error("reverse triangle check needs a finite exponent");
    const Rational combined = q.value() / d.exponent();
    if (!is_integer(combined))
        throw representation_error("reverse triangle check needs integer q/stored_exponent");
    const long k = num(combined).convert_to<long>();
    return detail::for_all_triples(n, [&](std::size_t x, std::size_t y, std::size_t z) {
        const Rational lhs =
            rational_abs(pow_rational(d.at(x, z), k) - pow_rational(d.at(y, z), k));
        return lhs <= pow_rational(d.at(x, y), k) ? Verdict::Holds : Verdict::Fails;
    });
}

// Ultrametric (max) triangle inequality; invariant under the power domain.
inline bool is_ultrametric(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Rational& xz = d.at(x, z);
                if (xz > d.at(x, y) && xz > d.at(y, z)) return false;
            }
    return true;
}

// In every triple the two largest pairwise distances are equal.
inline TriangleReport isosceles_check(const DistanceMatrix& d) {
    return detail::for_all_triples(d.size(), [&](std::size_t x, std::size_t y, std::size_t z) {
        if (d.at(y, z) < d.at(x, y) && d.at(x, y) != d.at(x, z)) return Verdict::Fails;
        return Verdict::Holds;
    });
}

enum class BallKind { Open, Closed };

struct BallSpec {
    std::string center;
    Rational radius;  // in the stored power domain
    BallKind kind = BallKind::Closed;
};

inline std::vector<std::size_t> ball_indices(const DistanceMatrix& d, std::size_t center,
                                             const Rational& radius, BallKind kind) {
    if (kind == BallKind::Open && radius <= 0) throw input_error("open ball needs positive radius");
    if (radius < 0) throw input_error("ball radius is negative");
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Rational& e = d.at(center, j);
        if (kind == BallKind::Open ? e < radius : e <= radius) members.push_back(j);
    }
    return members;
}

inline std::vector<std::string> ball(const DistanceMatrix& d, const BallSpec& spec) {
    const std::size_t c = d.index_of(spec.center);
    std::vector<std::string> labels;
    for (std::size_t j : ball_indices(d, c, spec.radius, spec.kind)) labels.push_back(d.points()[j]);
    return labels;
}

// Zero-classes {y : d(x,y) = 0}; the minimal neighborhoods of the
// generated topology on a finite carrier.
inline Partition zero_partition(const DistanceMatrix& d) {
    return Partition::from_relation(d.size(),
                                    [&](std::size_t i, std::size_t j) { return d.at(i, j) == 0; });
}

// Whether the radius-r balls (all centers) are pairwise equal-or-disjoint
// and thus partition the space.  No ultrametric precondition.
inline bool balls_form_partition(const DistanceMatrix& d, const Rational& radius, BallKind kind) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> balls;
    balls.reserve(n);
    for (std::size_t x = 0; x < n; ++x) balls.push_back(ball_indices(d, x, radius, kind));
    for (std::size_t x = 0; x < n; ++x) {
        if (kind == BallKind::Open &&
            std::find(balls[x].begin(), balls[x].end(), x) == balls[x].end())
            return false;  // center not in its own ball: never at positive radius
        for (std::size_t y = x + 1; y < n; ++y) {
            bool disjoint = true;
            for (std::size_t m : balls[x])
                if (std::find(balls[y].begin(), balls[y].end(), m) != balls[y].end()) {
                    disjoint = false;
                    break;
                }
            if (!disjoint && balls[x] != balls[y]) return false;
        }
    }
    return true;
}

inline bool balls_partition_at_every_radius(const DistanceMatrix& d) {
    for (const Rational& r : d.occurring_values()) {
        if (!balls_form_partition(d, r, BallKind::Closed)) return false;
        if (r > 0 && !balls_form_partition(d, r, BallKind::Open)) return false;
    }
    return true;
}

// Partition into the distinct radius-r balls of an ultrametric matrix.
inline Partition ball_partition(const DistanceMatrix& d, const Rational& radius, BallKind kind) {
    if (!is_ultrametric(d)) throw precondition_error("ball partition needs an ultrametric matrix");
    if (kind == BallKind::Open && radius <= 0)
        throw precondition_error("open ball partition needs positive radius");
    return Partition::from_relation(d.size(), [&](std::size_t i, std::size_t j) {
        return kind == BallKind::Open ? d.at(i, j) < radius : d.at(i, j) <= radius;
    });
}

struct BallCenterReport {
    bool passed = true;
    // (center x, other center y in the ball, radius) with B(x,r) != B(y,r)
    std::vector<std::string> failures;
};

// Every point of an ultrametric ball is a center of it, for open and
// closed balls at every occurring radius; each ball is clopen in the
// generated finite topology, i.e. a union of zero-classes.
inline BallCenterReport ultrametric_ball_properties(const DistanceMatrix& d) {
    if (!is_ultrametric(d)) throw precondition_error("ball properties need an ultrametric matrix");
    BallCenterReport report;
    const std::size_t n = d.size();
    const Partition zero = zero_partition(d);
    for (const Rational& r : d.occurring_values()) {
        for (int k = 0; k < 2; ++k) {
            const BallKind kind = k == 0 ? BallKind::Closed : BallKind::Open;
            if (kind == BallKind::Open && r <= 0) continue;
            for (std::size_t x = 0; x < n; ++x) {
                const auto bx = ball_indices(d, x, r, kind);
                for (std::size_t y : bx) {
                    if (ball_indices(d, y, r, kind) != bx) {
                        report.passed = false;
                        report.failures.push_back(d.points()[x] + "," + d.points()[y] + ",r=" +
                                                  qmet::to_string(r));
                    }
                }
                for (std::size_t y : bx) {
                    for (std::size_t m : zero.blocks()[zero.block_of(y)])
                        if (std::find(bx.begin(), bx.end(), m) == bx.end()) {
                            report.passed = false;
                            report.failures.push_back("ball at " + d.points()[x] +
                                                      " not clopen, r=" + qmet::to_string(r));
                        }
                }
            }
        }
    }
    return report;
}

// Discrete semimetric of a partition: 0 within blocks, 1 across.
inline DistanceMatrix partition_semimetric(const std::vector<std::string>& points, const Partition& p) {
    if (p.size() != points.size()) throw input_error("partition size mismatch");
    const std::size_t n = points.size();
    std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!p.same_block(i, j)) entries[i][j] = 1;
    return DistanceMatrix(points, Rational(1), std::move(entries));
}

}  // namespace qmet

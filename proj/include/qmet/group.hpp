#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmet/distance_matrix.hpp"
#include "qmet/topology.hpp"

namespace qmet {

inline constexpr std::size_t kMaxGroupOrder = 64;

using ElemSet = std::uint64_t;  // bitmask over element indices

// Product of cyclic groups Z_{n1} x ... x Z_{nk}; elements are tuples of
// residues, indexed in mixed radix with the last coordinate fastest.
class FiniteAbelianGroup {
  public:
    explicit FiniteAbelianGroup(std::vector<unsigned> orders, std::size_t max_order = kMaxGroupOrder)
        : orders_(std::move(orders)) {
        if (orders_.empty()) throw input_error("group needs at least one cyclic factor");
        std::size_t n = 1;
        for (unsigned o : orders_) {
            if (o < 1) throw input_error("cyclic order must be >= 1");
            if (n > max_order / o + 1 || n * o > max_order)
                throw resource_error("group order exceeds the cap");
            n *= o;
        }
        size_ = n;
        add_.assign(n * n, 0);
        neg_.assign(n, 0);
        labels_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            const auto ta = tuple_impl(a);
            std::vector<unsigned> t(orders_.size());
            for (std::size_t k = 0; k < orders_.size(); ++k) t[k] = (orders_[k] - ta[k]) % orders_[k];
            neg_[a] = index(t);
            for (std::size_t b = 0; b < n; ++b) {
                const auto tb = tuple_impl(b);
                for (std::size_t k = 0; k < orders_.size(); ++k) t[k] = (ta[k] + tb[k]) % orders_[k];
                add_[a * n + b] = index(t);
            }
            std::string s = "(";
            for (std::size_t k = 0; k < ta.size(); ++k) {
                if (k) s += "|";
                s += std::to_string(ta[k]);
            }
            labels_[a] = s + ")";
        }
    }

    std::size_t size() const { return size_; }
    const std::vector<unsigned>& orders() const { return orders_; }

    std::vector<unsigned> tuple(std::size_t idx) const {
        if (idx >= size_) throw input_error("element index out of range");
        return tuple_impl(idx);
    }

    std::size_t index(const std::vector<unsigned>& t) const {
        if (t.size() != orders_.size()) throw input_error("element tuple arity mismatch");
        std::size_t idx = 0;
        for (std::size_t k = 0; k < orders_.size(); ++k) {
            if (t[k] >= orders_[k]) throw input_error("element residue out of range");
            idx = idx * orders_[k] + t[k];
        }
        return idx;
    }

    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * size_ + b]; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }

    const std::string& label(std::size_t idx) const {
        if (idx >= size_) throw input_error("element index out of range");
        return labels_[idx];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    ElemSet full_set() const { return size_ == 64 ? ~ElemSet(0) : (ElemSet(1) << size_) - 1; }

    ElemSet sumset(ElemSet a, ElemSet b) const {
        ElemSet out = 0;
        for (std::size_t x = 0; x < size_; ++x) {
            if (!(a >> x & 1)) continue;
            for (std::size_t y = 0; y < size_; ++y)
                if (b >> y & 1) out |= ElemSet(1) << add(x, y);
        }
        return out;
    }

    ElemSet negate_set(ElemSet a) const {
        ElemSet out = 0;
        for (std::size_t x = 0; x < size_; ++x)
            if (a >> x & 1) out |= ElemSet(1) << neg(x);
        return out;
    }

    ElemSet translate(ElemSet a, std::size_t g) const {
        ElemSet out = 0;
        for (std::size_t x = 0; x < size_; ++x)
            if (a >> x & 1) out |= ElemSet(1) << add(x, g);
        return out;
    }

    bool is_subgroup(ElemSet s) const {
        if (!(s & 1)) return false;  // 0 has index 0
        if (negate_set(s) != s) return false;
        return sumset(s, s) == s;
    }

  private:
    std::vector<unsigned> orders_;
    std::size_t size_ = 0;
    std::vector<std::size_t> add_;
    std::vector<std::size_t> neg_;
    std::vector<std::string> labels_;

    std::vector<unsigned> tuple_impl(std::size_t idx) const {
        std::vector<unsigned> t(orders_.size());
        for (std::size_t k = orders_.size(); k-- > 0;) {
            t[k] = idx % orders_[k];
            idx /= orders_[k];
        }
        return t;
    }
};

struct GeneratedSubgroup {
    ElemSet set = 0;
    bool symmetrized = false;  // input lacked -S = S and was extended
    bool zero_added = false;   // input lacked 0 and was extended
};

// Smallest subgroup containing S: stabilizing union of the j-fold sumsets
// U_{j+1} = U_j + U after symmetrizing and adjoining 0.
inline GeneratedSubgroup subgroup_generated(const FiniteAbelianGroup& g, ElemSet s) {
    if (s & ~g.full_set()) throw input_error("generator set out of range");
    GeneratedSubgroup out;
    if (!(s & 1)) {
        out.zero_added = true;
        s |= 1;
    }
    const ElemSet sym = g.negate_set(s);
    if (sym != s) {
        out.symmetrized = true;
        s |= sym;
    }
    ElemSet u = s;
    for (;;) {
        const ElemSet next = g.sumset(u, s);
        if (next == u) break;
        u = next;
    }
    out.set = u;
    return out;
}

inline Partition coset_partition(const FiniteAbelianGroup& g, ElemSet h) {
    if (!g.is_subgroup(h)) throw input_error("set is not a subgroup");
    return Partition::from_relation(g.size(), [&](std::size_t x, std::size_t y) {
        return h >> g.add(x, g.neg(y)) & 1;
    });
}

// d(x,y) = 0 iff x - y in H, else 1: the translation-invariant
// semi-ultrametric of the coset partition.
inline DistanceMatrix subgroup_semimetric(const FiniteAbelianGroup& g, ElemSet h) {
    if (!g.is_subgroup(h)) throw input_error("set is not a subgroup");
    const std::size_t n = g.size();
    std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (!(h >> g.add(x, g.neg(y)) & 1)) entries[x][y] = 1;
    return DistanceMatrix(g.labels(), Rational(1), std::move(entries));
}

struct TranslationWitness {
    std::size_t a, x, y;
};

inline std::optional<TranslationWitness> translation_invariance_witness(const FiniteAbelianGroup& g,
                                                                        const DistanceMatrix& d) {
    if (d.size() != g.size() || d.points() != g.labels())
        throw input_error("matrix points do not match the group elements");
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t x = 0; x < g.size(); ++x)
            for (std::size_t y = x + 1; y < g.size(); ++y)
                if (d.at(g.add(x, a), g.add(y, a)) != d.at(x, y))
                    return TranslationWitness{a, x, y};
    return std::nullopt;
}

inline bool is_translation_invariant(const FiniteAbelianGroup& g, const DistanceMatrix& d) {
    return !translation_invariance_witness(g, d).has_value();
}

struct BallSubgroupReport {
    bool passed = true;
    std::vector<std::string> failures;
};

// For a translation-invariant semi-ultrametric: balls at 0 (open and
// closed, every occurring radius) are subgroups, and arbitrary balls are
// cosets of the ball at 0.
inline BallSubgroupReport balls_at_zero_are_subgroups(const FiniteAbelianGroup& g,
                                                      const DistanceMatrix& d) {
    if (!is_translation_invariant(g, d))
        throw precondition_error("matrix is not translation invariant");
    if (!is_ultrametric(d)) throw precondition_error("matrix is not a semi-ultrametric");
    BallSubgroupReport report;
    auto ball_mask = [&](std::size_t center, const Rational& r, BallKind kind) {
        ElemSet m = 0;
        for (std::size_t y : ball_indices(d, center, r, kind)) m |= ElemSet(1) << y;
        return m;
    };
    for (const Rational& r : d.occurring_values()) {
        for (int k = 0; k < 2; ++k) {
            const BallKind kind = k == 0 ? BallKind::Closed : BallKind::Open;
            if (kind == BallKind::Open && r <= 0) continue;
            const ElemSet b0 = ball_mask(0, r, kind);
            if (!g.is_subgroup(b0)) {
                report.passed = false;
                report.failures.push_back("ball at 0 not a subgroup, r=" + qmet::to_string(r));
                continue;
            }
            for (std::size_t x = 0; x < g.size(); ++x)
                if (ball_mask(x, r, kind) != g.translate(b0, x)) {
                    report.passed = false;
                    report.failures.push_back("ball at " + g.label(x) + " not a coset, r=" +
                                              qmet::to_string(r));
                }
        }
    }
    return report;
}

struct SubgroupFamilyTopology {
    FiniteTopology topology;
    bool nondegenerate = false;  // intersection of the family is {0}
    ElemSet intersection = 0;
};

// Topology generated by M(B) = {d_{P_B} : B in family}: the coset
// partition topology of the intersection subgroup.
inline SubgroupFamilyTopology topology_from_subgroup_family(const FiniteAbelianGroup& g,
                                                            const std::vector<ElemSet>& family) {
    if (family.empty()) throw input_error("empty subgroup family");
    ElemSet inter = g.full_set();
    for (ElemSet b : family) {
        if (!g.is_subgroup(b)) throw input_error("family member is not a subgroup");
        inter &= b;
    }
    FiniteTopology t = topology_from_partition(g.labels(), coset_partition(g, inter));
    return SubgroupFamilyTopology{std::move(t), inter == 1, inter};
}

// All subgroups, by closing generator extensions of known subgroups.
inline std::vector<ElemSet> all_subgroups(const FiniteAbelianGroup& g) {
    std::set<ElemSet> found{ElemSet(1)};
    std::vector<ElemSet> queue{ElemSet(1)};
    while (!queue.empty()) {
        const ElemSet h = queue.back();
        queue.pop_back();
        for (std::size_t x = 1; x < g.size(); ++x) {
            if (h >> x & 1) continue;
            const ElemSet bigger = subgroup_generated(g, h | ElemSet(1) << x).set;
            if (found.insert(bigger).second) queue.push_back(bigger);
        }
    }
    return std::vector<ElemSet>(found.begin(), found.end());
}

inline std::vector<ElemSet> open_subgroups(const FiniteAbelianGroup& g, const FiniteTopology& t) {
    if (t.size() != g.size()) throw input_error("topology does not match the group");
    std::vector<ElemSet> result;
    for (ElemSet h : all_subgroups(g))
        if (t.is_open(h)) result.push_back(h);
    return result;
}

inline bool weakly_connected(const FiniteAbelianGroup& g, const FiniteTopology& t) {
    const auto open = open_subgroups(g, t);
    return open.size() == 1 && open.front() == g.full_set();
}

// (B + U) is disjoint from C, for U symmetric about 0 with 0 in U.
inline bool u_separated(const FiniteAbelianGroup& g, ElemSet b, ElemSet c, ElemSet u) {
    if (!(u & 1)) throw input_error("U must contain 0");
    if (g.negate_set(u) != u) throw input_error("U must be symmetric about 0");
    return (g.sumset(b, u) & c) == 0;
}

struct SeparationInvarianceReport {
    bool holds = false;
    ElemSet generated_subgroup = 0;
};

// A nonempty E that is U-separated from its complement is a union of
// cosets of the subgroup generated by U: E + <U> = E.
inline SeparationInvarianceReport separated_implies_subgroup_invariance(const FiniteAbelianGroup& g,
                                                                        ElemSet e, ElemSet u) {
    if (e == 0) throw precondition_error("E must be nonempty");
    if (!u_separated(g, e, g.full_set() & ~e, u))
        throw precondition_error("E is not U-separated from its complement");
    SeparationInvarianceReport report;
    report.generated_subgroup = subgroup_generated(g, u).set;
    report.holds = g.sumset(e, report.generated_subgroup) == e;
    return report;
}

struct QuotientGroup {
    std::vector<unsigned> orders;          // a product-of-cyclics presentation
    std::vector<std::size_t> reps;         // one representative per coset
    std::vector<std::size_t> class_of;     // element -> coset index
};

namespace detail {

inline std::vector<std::size_t> order_statistics(const FiniteAbelianGroup& g) {
    std::vector<std::size_t> counts(g.size() + 1, 0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        std::size_t k = 1;
        std::size_t acc = x;
        while (acc != 0) {
            acc = g.add(acc, x);
            ++k;
        }
        ++counts[k];
    }
    return counts;
}

inline void factorizations(std::size_t m, std::size_t max_factor, std::vector<unsigned>& current,
                           std::vector<std::vector<unsigned>>& out) {
    if (m == 1) {
        out.push_back(current);
        return;
    }
    for (std::size_t f = std::min(m, max_factor); f >= 2; --f) {
        if (m % f != 0) continue;
        current.push_back(static_cast<unsigned>(f));
        factorizations(m / f, f, current, out);
        current.pop_back();
    }
}

}  // namespace detail

// Quotient presented by coset representatives; the cyclic-factor shape is
// recovered by matching element-order statistics, which determine a
// finite abelian group up to isomorphism.
inline QuotientGroup quotient_group(const FiniteAbelianGroup& g, ElemSet h) {
    if (!g.is_subgroup(h)) throw input_error("set is not a subgroup");
    const Partition cosets = coset_partition(g, h);
    QuotientGroup q;
    q.class_of.assign(g.size(), 0);
    for (std::size_t b = 0; b < cosets.block_count(); ++b) {
        q.reps.push_back(cosets.blocks()[b].front());
        for (std::size_t x : cosets.blocks()[b]) q.class_of[x] = b;
    }
    const std::size_t m = cosets.block_count();
    if (m == 1) {
        q.orders = {1};
        return q;
    }
    std::vector<std::size_t> quotient_orders(m + 1, 0);
    for (std::size_t b = 0; b < m; ++b) {
        std::size_t k = 1;
        std::size_t acc = q.reps[b];
        while (!(h >> acc & 1)) {
            acc = g.add(acc, q.reps[b]);
            ++k;
        }
        ++quotient_orders[k];
    }
    std::vector<std::vector<unsigned>> candidates;
    std::vector<unsigned> current;
    detail::factorizations(m, m, current, candidates);
    for (const auto& orders : candidates) {
        FiniteAbelianGroup candidate(orders);
        auto stats = detail::order_statistics(candidate);
        stats.resize(m + 1);
        if (stats == quotient_orders) {
            q.orders = orders;
            return q;
        }
    }
    throw representation_error("could not match quotient order statistics");
}

}  // namespace qmet

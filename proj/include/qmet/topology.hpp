#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "qmet/distance_matrix.hpp"
#include "qmet/partition.hpp"

namespace qmet {

using SetMask = std::uint64_t;

inline constexpr std::size_t kMaxTopologyPoints = 20;
inline constexpr std::size_t kMaxPartitionBlocks = 16;

inline bool family_is_topology(std::size_t n, const std::vector<SetMask>& opens) {
    const SetMask full = n == 64 ? ~SetMask(0) : (SetMask(1) << n) - 1;
    std::vector<SetMask> sorted(opens);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto contains = [&](SetMask s) {
        return std::binary_search(sorted.begin(), sorted.end(), s);
    };
    if (!contains(0) || !contains(full)) return false;
    for (SetMask a : sorted) {
        if (a & ~full) return false;
        for (SetMask b : sorted)
            if (!contains(a | b) || !contains(a & b)) return false;
    }
    return true;
}

// Finite topology as an explicit open-set family over labeled points,
// encoded as bitmasks in canonical sorted order.
class FiniteTopology {
  public:
    // Tags families that are topologies by construction (partition
    // topologies, clopen families); skips the closure validation.
    struct trusted_t {};

    FiniteTopology(std::vector<std::string> points, std::vector<SetMask> opens,
                   std::size_t max_points = kMaxTopologyPoints)
        : FiniteTopology(std::move(points), std::move(opens), trusted_t{}, max_points) {
        if (!family_is_topology(points_.size(), opens_))
            throw input_error("open family is not a topology");
    }

    FiniteTopology(std::vector<std::string> points, std::vector<SetMask> opens, trusted_t,
                   std::size_t max_points = kMaxTopologyPoints)
        : points_(std::move(points)) {
        const std::size_t n = points_.size();
        if (n == 0) throw input_error("topology needs at least one point");
        if (n > max_points || n > 64) throw resource_error("too many points for a topology");
        std::sort(opens.begin(), opens.end());
        opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
        opens_ = std::move(opens);
        min_open_.assign(n, full_mask());
        for (std::size_t i = 0; i < n; ++i)
            for (SetMask u : opens_)
                if (u >> i & 1) min_open_[i] &= u;
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<SetMask>& opens() const { return opens_; }
    SetMask full_mask() const {
        return size() == 64 ? ~SetMask(0) : (SetMask(1) << size()) - 1;
    }

    bool is_open(SetMask s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }
    bool is_closed(SetMask s) const { return is_open(full_mask() & ~s); }
    bool is_clopen(SetMask s) const { return is_open(s) && is_closed(s); }

    // Minimal open neighborhood of point i (finite intersection of opens).
    SetMask minimal_open(std::size_t i) const { return min_open_[i]; }

    SetMask minimal_open_of_set(SetMask s) const {
        SetMask u = 0;
        for (std::size_t i = 0; i < size(); ++i)
            if (s >> i & 1) u |= min_open_[i];
        return u;
    }

    SetMask closure(SetMask s) const {
        // x in cl(S) iff every open around x meets S.
        SetMask c = 0;
        for (std::size_t i = 0; i < size(); ++i)
            if (min_open_[i] & s) c |= SetMask(1) << i;
        return c;
    }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == label) return i;
        throw input_error("unknown point label '" + label + "'");
    }

    bool operator==(const FiniteTopology& o) const {
        return points_ == o.points_ && opens_ == o.opens_;
    }

  private:
    std::vector<std::string> points_;
    std::vector<SetMask> opens_;
    std::vector<SetMask> min_open_;
};

inline FiniteTopology discrete_topology(std::vector<std::string> points) {
    const std::size_t n = points.size();
    if (n > kMaxTopologyPoints) throw resource_error("too many points for a topology");
    std::vector<SetMask> opens;
    opens.reserve(std::size_t(1) << n);
    for (SetMask s = 0; s < (SetMask(1) << n); ++s) opens.push_back(s);
    return FiniteTopology(std::move(points), std::move(opens), FiniteTopology::trusted_t{});
}

inline FiniteTopology indiscrete_topology(std::vector<std::string> points) {
    const std::size_t n = points.size();
    const SetMask full = n == 64 ? ~SetMask(0) : (SetMask(1) << n) - 1;
    return FiniteTopology(std::move(points), {0, full}, FiniteTopology::trusted_t{});
}

// Partition topology: opens are exactly the unions of blocks.
inline FiniteTopology topology_from_partition(const std::vector<std::string>& points,
                                              const Partition& p) {
    if (p.size() != points.size()) throw input_error("partition size mismatch");
    if (p.block_count() > kMaxPartitionBlocks)
        throw resource_error("too many partition blocks for an explicit topology");
    std::vector<SetMask> block_masks;
    for (const auto& block : p.blocks()) {
        SetMask m = 0;
        for (std::size_t i : block) m |= SetMask(1) << i;
        block_masks.push_back(m);
    }
    std::vector<SetMask> opens;
    opens.reserve(std::size_t(1) << block_masks.size());
    for (SetMask pick = 0; pick < (SetMask(1) << block_masks.size()); ++pick) {
        SetMask u = 0;
        for (std::size_t b = 0; b < block_masks.size(); ++b)
            if (pick >> b & 1) u |= block_masks[b];
        opens.push_back(u);
    }
    return FiniteTopology(points, std::move(opens), FiniteTopology::trusted_t{});
}

// Topology generated by a family of semimetrics on a finite carrier: the
// partition topology of the joint zero-classes.
inline FiniteTopology topology_from_semimetrics(const std::vector<DistanceMatrix>& ds) {
    if (ds.empty()) throw input_error("empty semimetric family");
    std::vector<Partition> zeros;
    zeros.reserve(ds.size());
    for (const auto& d : ds) {
        if (d.points() != ds.front().points()) throw input_error("matrix point lists differ");
        zeros.push_back(zero_partition(d));
    }
    return topology_from_partition(ds.front().points(), common_refinement(zeros));
}

inline std::vector<SetMask> clopen_sets(const FiniteTopology& t) {
    std::vector<SetMask> result;
    for (SetMask u : t.opens())
        if (t.is_closed(u)) result.push_back(u);
    return result;
}

// d_E for a clopen E: the two-block (or trivial) partition semimetric.
inline DistanceMatrix clopen_semimetric(const FiniteTopology& t, SetMask e) {
    if (!t.is_clopen(e)) throw input_error("set is not clopen");
    const std::size_t n = t.size();
    std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (((e >> i) & 1) != ((e >> j) & 1)) entries[i][j] = 1;
    return DistanceMatrix(t.points(), Rational(1), std::move(entries));
}

// Topology generated by the clopen sets of t.  On a finite carrier the
// clopen family is itself a topology, so this is just that family.
inline FiniteTopology tau0(const FiniteTopology& t) {
    return FiniteTopology(t.points(), clopen_sets(t), FiniteTopology::trusted_t{});
}

inline bool is_dimension_zero_at(const FiniteTopology& t, std::size_t i) {
    // Need a clopen C with i in C inside the minimal open of i.
    SetMask q = t.full_mask();
    for (SetMask c : clopen_sets(t))
        if (c >> i & 1) q &= c;
    return (q & ~t.minimal_open(i)) == 0;
}

inline bool is_dimension_zero(const FiniteTopology& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!is_dimension_zero_at(t, i)) return false;
    return true;
}

inline bool is_totally_separated(const FiniteTopology& t) {
    const auto clopens = clopen_sets(t);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            bool split = false;
            for (SetMask c : clopens)
                if (((c >> i) & 1) != ((c >> j) & 1)) {
                    split = true;
                    break;
                }
            if (!split) return false;
        }
    return true;
}

struct SeparationAxioms {
    bool t0 = true;
    bool t1 = true;
    bool hausdorff = true;
    bool regular_strict = true;  // strict sense, no T1 folded in
    bool normal_strict = true;
};

inline bool is_hausdorff(const FiniteTopology& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t.minimal_open(i) & t.minimal_open(j)) return false;
    return true;
}

// Exhaustive separation-axiom checks via minimal open neighborhoods: any
// open around a set contains the union of the members' minimal opens, so
// disjoint separating opens exist iff the minimal ones are disjoint.
inline SeparationAxioms separation_axioms(const FiniteTopology& t) {
    SeparationAxioms ax;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (t.minimal_open(i) == t.minimal_open(j)) ax.t0 = false;
            if (t.minimal_open(i) >> j & 1) ax.t1 = false;
            if (i < j && (t.minimal_open(i) & t.minimal_open(j))) ax.hausdorff = false;
        }
    std::vector<SetMask> closed;
    std::vector<SetMask> hull;  // minimal open superset per closed set
    for (SetMask u : t.opens()) {
        closed.push_back(t.full_mask() & ~u);
        hull.push_back(t.minimal_open_of_set(closed.back()));
    }
    for (std::size_t a = 0; a < closed.size(); ++a) {
        for (std::size_t i = 0; i < n; ++i)
            if (!(closed[a] >> i & 1) && (t.minimal_open(i) & hull[a])) ax.regular_strict = false;
        for (std::size_t b = 0; b < closed.size(); ++b)
            if (!(closed[a] & closed[b]) && (hull[a] & hull[b])) ax.normal_strict = false;
    }
    return ax;
}

// Components under the separated-sets definition.  For finite spaces this
// is connectivity of the specialization graph: x ~ y when one lies in the
// closure of the other, i.e. x in U_y or y in U_x.
inline Partition connected_components(const FiniteTopology& t) {
    const std::size_t n = t.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((t.minimal_open(i) >> j & 1) || (t.minimal_open(j) >> i & 1))
                parent[find(i)] = find(j);
    return Partition::from_relation(n, [&](std::size_t i, std::size_t j) { return find(i) == find(j); });
}

struct EmbeddingReport {
    bool injective = false;            // W separates points
    bool pullback_is_topology = false; // preimage of the product topology equals T
    bool homeomorphic = false;         // injective && pullback_is_topology
    std::vector<std::vector<int>> bits;  // bits[point][j] = 1 iff point in W_j
};

// Coordinates of the {0,1}-product map through the clopen family W.  The
// preimage topology is generated by the W_j and their complements (the
// coordinate cylinders {phi_j = 1} and {phi_j = 0}).
inline EmbeddingReport product_embedding(const FiniteTopology& t, const std::vector<SetMask>& ws) {
    for (SetMask w : ws)
        if (!t.is_clopen(w)) throw input_error("embedding family member is not clopen");
    EmbeddingReport report;
    const std::size_t n = t.size();
    report.bits.assign(n, std::vector<int>(ws.size(), 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < ws.size(); ++j)
            report.bits[i][j] = ws[j] >> i & 1;
    report.injective = true;
    for (std::size_t i = 0; i < n && report.injective; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (report.bits[i] == report.bits[j]) {
                report.injective = false;
                break;
            }

    // Sub-base: the cylinders; base: their finite intersections.
    std::vector<SetMask> base{t.full_mask()};
    for (SetMask w : ws) {
        std::vector<SetMask> next = base;
        for (SetMask b : base) {
            next.push_back(b & w);
            next.push_back(b & ~w & t.full_mask());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        base = std::move(next);
    }
    std::vector<bool> open_flag(std::size_t(1) << n, false);
    std::vector<SetMask> generated{0};
    open_flag[0] = true;
    for (std::size_t k = 0; k < generated.size(); ++k)
        for (SetMask b : base) {
            const SetMask u = generated[k] | b;
            if (!open_flag[u]) {
                open_flag[u] = true;
                generated.push_back(u);
            }
        }
    std::sort(generated.begin(), generated.end());
    report.pullback_is_topology = generated == t.opens();
    report.homeomorphic = report.injective && report.pullback_is_topology;
    return report;
}

}  // namespace qmet

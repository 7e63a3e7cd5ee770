#pragma once

#include <cstdint>
#include <vector>

#include "qmet/combinators.hpp"
#include "qmet/distance_matrix.hpp"

namespace qmet {

inline constexpr std::size_t kExactCoverBound = 20;

// sup{d(x,y) : x,y in subset}, as an actual-distance magnitude.
// 0 for the empty or singleton subset.
inline Magnitude diameter(const DistanceMatrix& d, const std::vector<std::size_t>& subset) {
    Rational best(0);
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            best = rational_max(best, d.at(subset[a], subset[b]));
    if (best == 0) return Magnitude::zero();
    return Magnitude::finite(best, 1 / d.exponent());
}

inline Magnitude diameter(const DistanceMatrix& d) {
    std::vector<std::size_t> all(d.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return diameter(d, all);
}

struct CoverResult {
    std::size_t count = 0;
    std::vector<std::size_t> centers;
    bool exact = true;  // false when the greedy fallback produced an upper bound
};

// Minimal number of radius-r balls (centers anywhere in the space)
// covering the subset.  Exhaustive set-cover for small subsets, greedy
// upper bound with a flag beyond the bound.  Greedy ties break toward
// the lowest center index.
inline CoverResult covering_number(const DistanceMatrix& d, const std::vector<std::size_t>& subset,
                                   const Rational& radius, BallKind kind,
                                   std::size_t exact_bound = kExactCoverBound) {
    if (kind == BallKind::Open && radius <= 0)
        throw input_error("open cover needs positive radius");
    CoverResult result;
    if (subset.empty()) return result;

    const std::size_t n = d.size();
    const std::size_t m = subset.size();
    std::vector<std::uint64_t> covers(n, 0);  // bit k: subset[k] inside ball at center i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const Rational& e = d.at(i, subset[k]);
            if (kind == BallKind::Open ? e < radius : e <= radius)
                covers[i] |= std::uint64_t(1) << k;
        }
    const std::uint64_t full = m == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m) - 1;

    if (m <= exact_bound && m < 64) {
        // DP over covered-subset masks.
        const std::size_t states = std::size_t(1) << m;
        const std::uint32_t inf = ~std::uint32_t(0);
        std::vector<std::uint32_t> cost(states, inf);
        std::vector<std::uint32_t> via(states, inf);
        std::vector<std::uint64_t> prev(states, 0);
        cost[0] = 0;
        for (std::uint64_t mask = 0; mask < states; ++mask) {
            if (cost[mask] == inf) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t next = mask | covers[i];
                if (next == mask) continue;
                if (cost[next] > cost[mask] + 1) {
                    cost[next] = cost[mask] + 1;
                    via[next] = static_cast<std::uint32_t>(i);
                    prev[next] = mask;
                }
            }
        }
        if (cost[full] == inf)
            throw input_error("subset cannot be covered at this radius");
        result.count = cost[full];
        for (std::uint64_t mask = full; mask != 0; mask = prev[mask])
            result.centers.push_back(via[mask]);
        std::sort(result.centers.begin(), result.centers.end());
        return result;
    }

    // Greedy: pick the center covering the most uncovered points.
    result.exact = false;
    std::uint64_t covered = 0;
    while (covered != full) {
        std::size_t best = n;
        int best_gain = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int gain = __builtin_popcountll(covers[i] & ~covered);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best == n) throw input_error("subset cannot be covered at this radius");
        covered |= covers[best];
        result.centers.push_back(best);
        ++result.count;
    }
    std::sort(result.centers.begin(), result.centers.end());
    return result;
}

inline CoverResult covering_number(const DistanceMatrix& d, const Rational& radius, BallKind kind) {
    std::vector<std::size_t> all(d.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return covering_number(d, all, radius, kind);
}

// Greedy partition into blocks of stored-domain diameter <= t: sweep in
// label order, putting each point into the first block it fits.
inline Partition greedy_diameter_cover(const DistanceMatrix& d, const Rational& t) {
    if (t < 0) throw input_error("diameter bound is negative");
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (auto& block : blocks) {
            bool fits = true;
            for (std::size_t j : block)
                if (d.at(i, j) > t) {
                    fits = false;
                    break;
                }
            if (fits) {
                block.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) blocks.push_back({i});
    }
    return Partition::from_blocks(n, std::move(blocks));
}

// A partition each of whose blocks has diam_{d_j} <= t_j for every j
// simultaneously: the common refinement of the per-metric greedy covers.
inline Partition diameter_cover_refinement(const std::vector<DistanceMatrix>& ds,
                                           const std::vector<Rational>& ts) {
    if (ds.empty() || ds.size() != ts.size())
        throw input_error("diameter cover needs matching matrices and bounds");
    for (const auto& d : ds)
        if (d.points() != ds.front().points()) throw input_error("matrix point lists differ");
    std::vector<Partition> covers;
    covers.reserve(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) covers.push_back(greedy_diameter_cover(ds[k], ts[k]));
    return common_refinement(covers);
}

}  // namespace qmet

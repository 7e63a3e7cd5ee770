#pragma once

#include <string>
#include <vector>

#include "qmet/distance_matrix.hpp"

namespace qmet {

inline constexpr std::size_t kDefaultProductBound = 4096;

namespace detail {

template <typename F>
DistanceMatrix build_matrix(const std::vector<std::string>& points, Rational exponent, F&& entry) {
    const std::size_t n = points.size();
    std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational v = entry(i, j);
            entries[i][j] = v;
            entries[j][i] = std::move(v);
        }
    return DistanceMatrix(points, std::move(exponent), std::move(entries));
}

inline void require_compatible(const std::vector<DistanceMatrix>& ds) {
    if (ds.empty()) throw input_error("empty matrix family");
    for (const auto& d : ds) {
        if (d.points() != ds.front().points()) throw input_error("matrix point lists differ");
        if (d.exponent() != ds.front().exponent())
            throw input_error("matrix stored exponents differ; normalize with pow_transform");
    }
}

}  // namespace detail

// d'(x,y) = min(d(x,y), r0) in the stored domain.
inline DistanceMatrix truncate(const DistanceMatrix& d, const Rational& r0) {
    if (r0 <= 0) throw input_error("truncation level must be positive");
    return d.map_entries([&](const Rational& e) { return rational_min(e, r0); });
}

// d^e, represented by dividing the stored exponent: entries unchanged.
inline DistanceMatrix pow_transform(const DistanceMatrix& d, const Rational& e) {
    if (e <= 0) throw input_error("power transform exponent must be positive");
    return d.with_exponent(d.exponent() / e);
}

inline DistanceMatrix combine_max(const std::vector<DistanceMatrix>& ds) {
    detail::require_compatible(ds);
    return detail::build_matrix(ds.front().points(), ds.front().exponent(),
                                [&](std::size_t i, std::size_t j) {
                                    const Rational* m = &ds.front().at(i, j);
                                    for (std::size_t k = 1; k < ds.size(); ++k)
                                        if (ds[k].at(i, j) > *m) m = &ds[k].at(i, j);
                                    return *m;
                                });
}

inline DistanceMatrix combine_sum(const std::vector<DistanceMatrix>& ds) {
    detail::require_compatible(ds);
    return detail::build_matrix(ds.front().points(), ds.front().exponent(),
                                [&](std::size_t i, std::size_t j) {
                                    Rational s = ds.front().at(i, j);
                                    for (std::size_t k = 1; k < ds.size(); ++k)
                                        s += ds[k].at(i, j);
                                    return s;
                                });
}

// (sum_j d_j^r)^(1/r), stored exactly: entries sum_j entries_j^(r/E) with
// stored exponent r.  Requires r/E to be a positive integer.
inline DistanceMatrix combine_power(const std::vector<DistanceMatrix>& ds, const Rational& r) {
    detail::require_compatible(ds);
    const Rational ratio = r / ds.front().exponent();
    if (ratio < 1 || !is_integer(ratio))
        throw representation_error("combine_power needs r/stored_exponent a positive integer");
    const long k = num(ratio).convert_to<long>();
    return detail::build_matrix(ds.front().points(), r, [&](std::size_t i, std::size_t j) {
        Rational s(0);
        for (const auto& d : ds) s += pow_rational(d.at(i, j), k);
        return s;
    });
}

// d(x,y) = max_j min(d_j(x,y), 1/j) over the family, j = 1..l in input
// order.  Reordering changes the metric but not the generated topology;
// the zero-partition is the order-free contract.
inline DistanceMatrix metrize(const std::vector<DistanceMatrix>& ds) {
    detail::require_compatible(ds);
    return detail::build_matrix(ds.front().points(), ds.front().exponent(),
                                [&](std::size_t i, std::size_t j) {
                                    Rational m(0);
                                    for (std::size_t k = 0; k < ds.size(); ++k) {
                                        const Rational cap = make_rational(1, static_cast<long>(k) + 1);
                                        m = rational_max(m, rational_min(ds[k].at(i, j), cap));
                                    }
                                    return m;
                                });
}

// Largest j with r <= 1/j (the metrization cutoff), for 0 < r <= 1.
inline std::size_t metrize_cutoff(const Rational& r) {
    if (r <= 0 || r > 1) throw input_error("metrize cutoff needs 0 < r <= 1");
    // 1/j >= r  <=>  j <= 1/r
    const Rational inv = 1 / r;
    Int j = num(inv) / den(inv);
    return j.convert_to<std::size_t>();
}

inline DistanceMatrix restrict(const DistanceMatrix& d, const std::vector<std::string>& subset) {
    if (subset.empty()) throw input_error("restriction to empty subset");
    std::vector<std::size_t> idx;
    idx.reserve(subset.size());
    for (const auto& label : subset) idx.push_back(d.index_of(label));
    return detail::build_matrix(subset, d.exponent(), [&](std::size_t i, std::size_t j) {
        return d.at(idx[i], idx[j]);
    });
}

// Max-combination of the coordinate-lifted factors on the product of the
// point sets.  Labels are tuples "(a|b|...)" in row-major order.
inline DistanceMatrix product_space(const std::vector<DistanceMatrix>& factors,
                                    std::size_t max_points = kDefaultProductBound) {
    if (factors.empty()) throw input_error("empty product");
    std::size_t total = 1;
    for (const auto& f : factors) {
        if (f.exponent() != factors.front().exponent())
            throw input_error("matrix stored exponents differ; normalize with pow_transform");
        if (total > max_points / f.size())
            throw resource_error("product space exceeds the point bound");
        total *= f.size();
    }
    if (factors.size() == 1) return factors.front();

    std::vector<std::size_t> strides(factors.size());
    std::size_t acc = 1;
    for (std::size_t k = factors.size(); k-- > 0;) {
        strides[k] = acc;
        acc *= factors[k].size();
    }
    auto coord = [&](std::size_t flat, std::size_t k) { return flat / strides[k] % factors[k].size(); };

    std::vector<std::string> labels(total);
    for (std::size_t v = 0; v < total; ++v) {
        std::string s = "(";
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) s += "|";
            s += factors[k].points()[coord(v, k)];
        }
        s += ")";
        labels[v] = std::move(s);
    }
    return detail::build_matrix(labels, factors.front().exponent(),
                                [&](std::size_t i, std::size_t j) {
                                    Rational m(0);
                                    for (std::size_t k = 0; k < factors.size(); ++k)
                                        m = rational_max(m, factors[k].at(coord(i, k), coord(j, k)));
                                    return m;
                                });
}

}  // namespace qmet

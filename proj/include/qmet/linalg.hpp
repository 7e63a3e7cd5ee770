#pragma once

#include <optional>
#include <vector>

#include "qmet/rational.hpp"

namespace qmet {

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("vector dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("vector dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("vector dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vec vec_scale(const Rational& t, const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = t * v[i];
    return out;
}

// Row echelon form in place; returns the rank.
inline std::size_t row_reduce(std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rational inv = 1 / rows[rank][c];
        for (std::size_t j = c; j < cols; ++j) rows[rank][j] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rational f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (is_zero_vec(v)) return true;
    std::vector<Vec> rows = basis;
    const std::size_t r0 = row_reduce(rows);
    rows.resize(r0);
    rows.push_back(v);
    return row_reduce(rows) == r0;
}

inline bool columns_invertible(const std::vector<Vec>& columns) {
    const std::size_t n = columns.size();
    std::vector<Vec> rows(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (columns[i].size() != n) return false;
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = columns[j][i];
    }
    return row_reduce(rows) == n;
}

// Solve A x = b for square invertible A given by columns; nullopt when
// singular.  The reduced augmented matrix is [I | x].
inline std::optional<Vec> solve_columns(const std::vector<Vec>& columns, const Vec& b) {
    const std::size_t n = columns.size();
    if (n == 0 || b.size() != n) throw input_error("solve needs a square system");
    if (!columns_invertible(columns)) return std::nullopt;
    std::vector<Vec> rows(n, Vec(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = columns[j][i];
        rows[i][n] = b[i];
    }
    row_reduce(rows);
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rows[i][n];
    return x;
}

}  // namespace qmet

#pragma once

// Small dense exact linear algebra over Rational.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox::linalg {

using Matrix = std::vector<Vector>;

struct Echelon {
    Matrix rows;                      // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

inline Echelon rref(Matrix m, std::size_t ncols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) {
            if (!x.is_zero()) x *= inv;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j) {
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
            }
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

inline std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return rref(m, m.front().size()).pivots.size();
}

/// Basis of { x : m x = 0 } with one free variable set to 1 per vector.
inline Matrix kernel_basis(const Matrix& m, std::size_t ncols) {
    const auto e = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(ncols);
        v[f] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of a x = b (free variables zero), or nothing when inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b, std::size_t ncols) {
    Matrix aug;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    const auto e = rref(std::move(aug), ncols + 1);
    Vector x(ncols);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == ncols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][ncols];
    }
    return x;
}

/// Removes from `v` its orthogonal projection onto span(basis).
inline Vector project_out(const Vector& v, const Matrix& basis) {
    if (basis.empty()) return v;
    const auto k = basis.size();
    Matrix gram(k, Vector(k));
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], v);
    }
    const auto c = solve(gram, rhs, k);
    Vector out = v;
    for (std::size_t i = 0; i < k; ++i) {
        if ((*c)[i].is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= (*c)[i] * basis[i][j];
    }
    return out;
}

/// Dimension of the affine hull of `points`; -1 for an empty set.
inline long affine_rank(const Matrix& points) {
    if (points.empty()) return -1;
    Matrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        Vector d(points[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    return static_cast<long>(rank(diffs));
}

}  // namespace nsbox::linalg

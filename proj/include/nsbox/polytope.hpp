#pragma once

// Exact polyhedra: H-representation to V-representation by the double
// description method, and phase-one simplex for feasibility with a witness.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsbox/errors.hpp"
#include "nsbox/linalg.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

/// coeffs · x <= rhs (or == rhs when stored as an equality).
struct LinearConstraint {
    Vector coeffs;
    Rational rhs;

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct HRep {
    std::size_t ambient_dim = 0;
    std::vector<LinearConstraint> inequalities;
    std::vector<LinearConstraint> equalities;

    void validate() const {
        auto check = [&](const std::vector<LinearConstraint>& cs, const char* what) {
            for (std::size_t k = 0; k < cs.size(); ++k) {
                if (cs[k].coeffs.size() != ambient_dim) {
                    throw std::invalid_argument(std::string(what) + " " + std::to_string(k) + " has " +
                                                std::to_string(cs[k].coeffs.size()) +
                                                " coefficients, ambient dimension is " +
                                                std::to_string(ambient_dim));
                }
            }
        };
        check(inequalities, "inequality");
        check(equalities, "equality");
    }

    bool contains(const Vector& x) const {
        for (const auto& c : inequalities) {
            if (dot(c.coeffs, x) > c.rhs) return false;
        }
        for (const auto& c : equalities) {
            if (dot(c.coeffs, x) != c.rhs) return false;
        }
        return true;
    }
};

/// Vertices are the projections of the minimal faces onto the orthogonal
/// complement of the lineality space, so they are canonical. `dimension` is
/// the affine dimension of the polyhedron modulo its lineality space.
struct VRep {
    std::size_t ambient_dim = 0;
    std::vector<Vector> vertices;
    std::vector<Vector> rays;
    std::vector<Vector> linearities;
    long dimension = -1;
};

namespace detail {

struct HomogeneousRow {
    Vector h;  // h · (t, x) >= 0, or == 0
    bool equality = false;
};

inline bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Cone { (t, x) : t >= 0, rhs t - coeffs x >= 0, ... } whose t > 0 slice is the polyhedron.
inline std::vector<HomogeneousRow> homogenize(const HRep& h) {
    std::vector<HomogeneousRow> eqs, ineqs;
    auto row = [](const LinearConstraint& c) {
        Vector v;
        v.reserve(c.coeffs.size() + 1);
        v.push_back(c.rhs);
        for (const auto& a : c.coeffs) v.push_back(-a);
        make_primitive(v);
        return v;
    };
    for (const auto& c : h.equalities) {
        auto v = row(c);
        const auto first = std::find_if(v.begin(), v.end(), [](const Rational& q) { return !q.is_zero(); });
        if (first != v.end() && *first < 0) {
            for (auto& q : v) q = -q;
        }
        eqs.push_back({std::move(v), true});
    }
    Vector positivity(h.ambient_dim + 1);
    positivity[0] = 1;
    ineqs.push_back({positivity, false});
    for (const auto& c : h.inequalities) ineqs.push_back({row(c), false});

    auto by_row = [](const HomogeneousRow& a, const HomogeneousRow& b) { return lex_less(a.h, b.h); };
    auto same = [](const HomogeneousRow& a, const HomogeneousRow& b) { return a.h == b.h; };
    std::sort(eqs.begin(), eqs.end(), by_row);
    eqs.erase(std::unique(eqs.begin(), eqs.end(), same), eqs.end());
    std::sort(ineqs.begin(), ineqs.end(), by_row);
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end(), same), ineqs.end());
    eqs.insert(eqs.end(), ineqs.begin(), ineqs.end());
    return eqs;
}

struct Generator {
    Vector v;
    boost::dynamic_bitset<> zeros;  // processed constraints tight at v
};

struct ConeGenerators {
    std::vector<Vector> lineality;
    std::vector<Generator> rays;
};

/// Incremental double description over the rows, starting from the whole space.
inline ConeGenerators double_description(const std::vector<HomogeneousRow>& rows, std::size_t n) {
    ConeGenerators cone;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n);
        e[i] = 1;
        cone.lineality.push_back(std::move(e));
    }
    const std::size_t m = rows.size();

    for (std::size_t k = 0; k < m; ++k) {
        const auto& h = rows[k].h;

        auto lin_it = std::find_if(cone.lineality.begin(), cone.lineality.end(),
                                   [&](const Vector& l) { return !dot(h, l).is_zero(); });
        if (lin_it != cone.lineality.end()) {
            Vector l = *lin_it;
            cone.lineality.erase(lin_it);
            Rational hl = dot(h, l);
            if (hl < 0) {
                for (auto& q : l) q = -q;
                hl = -hl;
            }
            auto push_into_hyperplane = [&](Vector& v) {
                const Rational a = dot(h, v);
                if (a.is_zero()) return;
                const Rational f = a / hl;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!l[j].is_zero()) v[j] -= f * l[j];
                }
                make_primitive(v);
            };
            for (auto& other : cone.lineality) push_into_hyperplane(other);
            for (auto& r : cone.rays) {
                push_into_hyperplane(r.v);
                r.zeros.set(k);
            }
            if (!rows[k].equality) {
                boost::dynamic_bitset<> zeros(m);
                for (std::size_t j = 0; j < k; ++j) zeros.set(j);
                make_primitive(l);
                cone.rays.push_back({std::move(l), std::move(zeros)});
            }
            continue;
        }

        std::vector<Rational> value(cone.rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Generator> next;
        for (std::size_t r = 0; r < cone.rays.size(); ++r) {
            value[r] = dot(h, cone.rays[r].v);
            if (value[r].is_zero()) {
                next.push_back(cone.rays[r]);
                next.back().zeros.set(k);
            } else if (value[r] > 0) {
                pos.push_back(r);
                if (!rows[k].equality) next.push_back(cone.rays[r]);
            } else {
                neg.push_back(r);
            }
        }

        const std::size_t pointed_dim = n - cone.lineality.size();
        for (auto p : pos) {
            for (auto q : neg) {
                auto common = cone.rays[p].zeros & cone.rays[q].zeros;
                if (common.count() + 2 < pointed_dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < cone.rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(cone.rays[r].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                Vector v(n);
                const Rational& vp = value[p];
                const Rational neg_vq = -value[q];
                for (std::size_t j = 0; j < n; ++j) {
                    v[j] = vp * cone.rays[q].v[j] + neg_vq * cone.rays[p].v[j];
                }
                make_primitive(v);
                common.set(k);
                next.push_back({std::move(v), std::move(common)});
            }
        }
        cone.rays = std::move(next);
    }
    return cone;
}

inline void sort_unique(std::vector<Vector>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace detail

/// Exact V-representation of a polyhedron. Throws EmptyPolyhedron if infeasible.
inline VRep enumerate_vertices(const HRep& h) {
    h.validate();
    const std::size_t d = h.ambient_dim;
    const auto rows = detail::homogenize(h);
    const auto cone = detail::double_description(rows, d + 1);

    VRep out;
    out.ambient_dim = d;
    linalg::Matrix lin;
    for (const auto& l : cone.lineality) lin.emplace_back(l.begin() + 1, l.end());
    if (!lin.empty()) out.linearities = linalg::rref(lin, d).rows;

    for (const auto& g : cone.rays) {
        const Rational& t = g.v[0];
        Vector x(g.v.begin() + 1, g.v.end());
        if (t.is_zero()) {
            x = linalg::project_out(x, out.linearities);
            make_primitive(x);
            out.rays.push_back(std::move(x));
        } else {
            for (auto& q : x) q /= t;
            out.vertices.push_back(linalg::project_out(x, out.linearities));
        }
    }
    if (out.vertices.empty()) throw EmptyPolyhedron("the constraint system has no solution");
    detail::sort_unique(out.vertices);
    detail::sort_unique(out.rays);

    linalg::Matrix hull = out.vertices;
    for (const auto& r : out.rays) {
        Vector p = out.vertices.front();
        for (std::size_t j = 0; j < d; ++j) p[j] += r[j];
        hull.push_back(std::move(p));
    }
    out.dimension = linalg::affine_rank(hull);
    return out;
}

/// Dimension of the affine hull of a point set.
inline long affine_dimension(const std::vector<Vector>& points) {
    if (points.empty()) throw EmptyPolyhedron("affine dimension of an empty point set");
    return linalg::affine_rank(points);
}

/// Dimension of the polyhedron modulo its lineality space.
inline long affine_dimension(const HRep& h) { return enumerate_vertices(h).dimension; }

/// Feasibility of an H-representation by phase-one simplex with Bland's rule.
/// Returns a point satisfying every constraint exactly, or nothing.
inline std::optional<Vector> lp_feasible(const HRep& h) {
    h.validate();
    const std::size_t d = h.ambient_dim;
    const std::size_t mi = h.inequalities.size();
    const std::size_t m = mi + h.equalities.size();

    // Columns: x+ (d), x- (d), one slack per inequality, then artificials.
    const std::size_t slack0 = 2 * d;
    const std::size_t art0 = slack0 + mi;
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i >= mi || h.inequalities[i].rhs < 0) ++n_art;
    }
    const std::size_t ncols = art0 + n_art;

    std::vector<Vector> a(m, Vector(ncols));
    Vector b(m);
    std::vector<std::size_t> basis(m);
    std::size_t next_art = art0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = i < mi ? h.inequalities[i] : h.equalities[i - mi];
        for (std::size_t j = 0; j < d; ++j) {
            a[i][j] = c.coeffs[j];
            a[i][d + j] = -c.coeffs[j];
        }
        if (i < mi) a[i][slack0 + i] = 1;
        b[i] = c.rhs;
        if (b[i] < 0) {
            for (auto& q : a[i]) q = -q;
            b[i] = -b[i];
        }
        if (i < mi && c.rhs >= 0) {
            basis[i] = slack0 + i;
        } else {
            a[i][next_art] = 1;
            basis[i] = next_art++;
        }
    }

    // Reduced costs of the phase-one objective (sum of artificials).
    Vector reduced(ncols);
    for (std::size_t j = art0; j < ncols; ++j) reduced[j] = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < art0) continue;
        for (std::size_t j = 0; j < ncols; ++j) reduced[j] -= a[i][j];
    }

    while (true) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (reduced[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == ncols) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][enter] <= 0) continue;
            Rational ratio = b[i] / a[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = std::move(ratio);
            }
        }
        if (leave == m) break;  // unreachable: the phase-one objective is bounded below

        const Rational inv = 1 / a[leave][enter];
        for (auto& q : a[leave]) {
            if (!q.is_zero()) q *= inv;
        }
        b[leave] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || a[i][enter].is_zero()) continue;
            const Rational f = a[i][enter];
            for (std::size_t j = 0; j < ncols; ++j) {
                if (!a[leave][j].is_zero()) a[i][j] -= f * a[leave][j];
            }
            b[i] -= f * b[leave];
        }
        if (!reduced[enter].is_zero()) {
            const Rational f = reduced[enter];
            for (std::size_t j = 0; j < ncols; ++j) {
                if (!a[leave][j].is_zero()) reduced[j] -= f * a[leave][j];
            }
        }
        basis[leave] = enter;
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= art0 && !b[i].is_zero()) return std::nullopt;
    }

    Vector x(d);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < d) {
            x[basis[i]] += b[i];
        } else if (basis[i] < 2 * d) {
            x[basis[i] - d] -= b[i];
        }
    }
    if (!h.contains(x)) throw std::logic_error("simplex produced a witness violating the constraints");
    return x;
}

}  // namespace nsbox

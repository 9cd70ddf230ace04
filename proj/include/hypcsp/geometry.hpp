#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

// Hyperbolic plane primitives in the hyperboloid (Minkowski) model:
// points live on {x^2 + y^2 - z^2 = -1, z >= 1}, isometries are linear
// maps preserving the form diag(+1,+1,-1). The Poincare disk is used
// only as an output projection.

namespace hypcsp {

inline constexpr double kEpsHyp = 1e-9;

struct HypPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    static HypPoint origin() { return {0.0, 0.0, 1.0}; }
};

inline double minkowski(const HypPoint& a, const HypPoint& b) {
    return a.x * b.x + a.y * b.y - a.z * b.z;
}

// Projects a near-hyperboloid triple back onto the sheet. Applied after
// every isometry to stop drift.
inline HypPoint normalized(const HypPoint& p) {
    double s = p.z * p.z - p.x * p.x - p.y * p.y;
    if (s <= 0.0)
        throw std::domain_error("point not inside the light cone");
    double inv = 1.0 / std::sqrt(s);
    return {p.x * inv, p.y * inv, p.z * inv};
}

inline double hyperboloid_residual(const HypPoint& p) {
    return std::abs(p.x * p.x + p.y * p.y - p.z * p.z + 1.0);
}

inline bool is_valid_point(const HypPoint& p, double eps = kEpsHyp) {
    return p.z >= 1.0 - eps && hyperboloid_residual(p) <= eps * (1.0 + p.z * p.z);
}

inline double dist(const HypPoint& a, const HypPoint& b) {
    double m = -minkowski(a, b);
    if (m < 1.0) m = 1.0;  // round-off near coincident points
    return std::acosh(m);
}

struct Isometry {
    // row-major 3x3 matrix M with M^T J M = J, J = diag(1,1,-1)
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Isometry identity() { return {}; }

    static Isometry translation_x(double t) {
        double c = std::cosh(t), s = std::sinh(t);
        return {{c, 0, s, 0, 1, 0, s, 0, c}};
    }

    static Isometry rotation(double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        return {{c, -s, 0, s, c, 0, 0, 0, 1}};
    }

    Isometry operator*(const Isometry& o) const {
        Isometry r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += m[3 * i + k] * o.m[3 * k + j];
                r.m[3 * i + j] = acc;
            }
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    // residual of M^T J M = J
    double form_residual() const {
        double j[3] = {1, 1, -1};
        double worst = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += m[3 * k + a] * j[k] * m[3 * k + b];
                double want = (a == b) ? j[a] : 0.0;
                worst = std::max(worst, std::abs(acc - want));
            }
        return worst;
    }
};

inline HypPoint apply(const Isometry& iso, const HypPoint& p) {
    const auto& m = iso.m;
    HypPoint q{m[0] * p.x + m[1] * p.y + m[2] * p.z,
               m[3] * p.x + m[4] * p.y + m[5] * p.z,
               m[6] * p.x + m[7] * p.y + m[8] * p.z};
    return normalized(q);
}

struct Segment {
    HypPoint a;
    HypPoint b;

    Segment(const HypPoint& a_, const HypPoint& b_) : a(a_), b(b_) {
        if (dist(a, b) <= kEpsHyp)
            throw std::invalid_argument("degenerate segment");
    }
};

// Point of the geodesic through a and b at fraction t in [0,1] of the arc.
inline HypPoint geodesic_point(const HypPoint& a, const HypPoint& b, double t) {
    double len = dist(a, b);
    if (len <= kEpsHyp) return a;
    double s = std::sinh(len);
    double wa = std::sinh((1.0 - t) * len) / s;
    double wb = std::sinh(t * len) / s;
    return normalized({wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z});
}

inline double disk_area(double r) {
    if (r < 0.0) throw std::domain_error("disk_area: negative radius");
    return 2.0 * std::numbers::pi * (std::cosh(r) - 1.0);
}

inline double disk_perimeter(double r) {
    if (r < 0.0) throw std::domain_error("disk_perimeter: negative radius");
    return 2.0 * std::numbers::pi * std::sinh(r);
}

// Minimum hyperbolic distance from p to the geodesic segment s. The
// distance along the arc parameter is unimodal, so golden-section search
// suffices; no closed form needed.
inline double point_segment_distance(const HypPoint& p, const Segment& s) {
    constexpr double kTol = 1e-10;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double t1 = hi - phi * (hi - lo);
    double t2 = lo + phi * (hi - lo);
    double f1 = dist(p, geodesic_point(s.a, s.b, t1));
    double f2 = dist(p, geodesic_point(s.a, s.b, t2));
    while (hi - lo > kTol) {
        if (f1 < f2) {
            hi = t2; t2 = t1; f2 = f1;
            t1 = hi - phi * (hi - lo);
            f1 = dist(p, geodesic_point(s.a, s.b, t1));
        } else {
            lo = t1; t1 = t2; f1 = f2;
            t2 = lo + phi * (hi - lo);
            f2 = dist(p, geodesic_point(s.a, s.b, t2));
        }
    }
    double mid = dist(p, geodesic_point(s.a, s.b, 0.5 * (lo + hi)));
    return std::min({mid, dist(p, s.a), dist(p, s.b)});
}

namespace detail {

// Euclidean normal of the plane through the origin spanned by a and b;
// that plane cuts the hyperboloid in the geodesic through a and b.
inline std::array<double, 3> geodesic_plane_normal(const HypPoint& a, const HypPoint& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double plane_side(const std::array<double, 3>& n, const HypPoint& p) {
    double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    double scale = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    return (n[0] * p.x + n[1] * p.y + n[2] * p.z) / (norm * scale);
}

}  // namespace detail

// True iff the segments intersect at an interior point of both. A plane
// through the origin meets the upper sheet in a single geodesic branch,
// so a strict double straddle test is exact: each arc crosses the other
// arc's plane iff its endpoints lie on opposite sides.
inline bool segments_cross(const Segment& s1, const Segment& s2) {
    // shared endpoints do not count as crossing
    for (const HypPoint* p : {&s1.a, &s1.b})
        for (const HypPoint* q : {&s2.a, &s2.b})
            if (dist(*p, *q) <= kEpsHyp) return false;

    constexpr double kSideTol = 1e-12;
    auto n1 = detail::geodesic_plane_normal(s1.a, s1.b);
    auto n2 = detail::geodesic_plane_normal(s2.a, s2.b);
    double c = detail::plane_side(n1, s2.a), d = detail::plane_side(n1, s2.b);
    double a = detail::plane_side(n2, s1.a), b = detail::plane_side(n2, s1.b);
    if (std::abs(a) < kSideTol || std::abs(b) < kSideTol ||
        std::abs(c) < kSideTol || std::abs(d) < kSideTol)
        return false;  // touching counts as non-crossing
    return (a * b < 0.0) && (c * d < 0.0);
}

struct PoincarePoint {
    double u = 0.0;
    double v = 0.0;
};

inline PoincarePoint to_poincare(const HypPoint& p) {
    return {p.x / (1.0 + p.z), p.y / (1.0 + p.z)};
}

// Orthonormal tangent basis at p (Minkowski orthogonal to p), used for
// angular bookkeeping when laying out polygon corners.
struct TangentBasis {
    HypPoint base;
    std::array<double, 3> e1;
    std::array<double, 3> e2;
};

inline TangentBasis tangent_basis(const HypPoint& p) {
    auto project = [&](double x, double y, double z) -> std::array<double, 3> {
        double c = x * p.x + y * p.y - z * p.z;  // <v,p>_M
        return {x + c * p.x, y + c * p.y, z + c * p.z};
    };
    auto mdot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    };
    auto e1 = project(1, 0, 0);
    double n1 = std::sqrt(mdot(e1, e1));
    if (n1 < 1e-12) e1 = project(0, 0, 1), n1 = std::sqrt(mdot(e1, e1));
    for (auto& c : e1) c /= n1;
    auto e2 = project(0, 1, 0);
    double proj = mdot(e2, e1);
    for (int i = 0; i < 3; ++i) e2[i] -= proj * e1[i];
    double n2 = std::sqrt(mdot(e2, e2));
    for (auto& c : e2) c /= n2;
    return {p, e1, e2};
}

// Angle of the geodesic from basis.base towards q, in the basis frame.
inline double direction_angle(const TangentBasis& basis, const HypPoint& q) {
    const HypPoint& p = basis.base;
    double c = minkowski(q, p);
    std::array<double, 3> t = {q.x + c * p.x, q.y + c * p.y, q.z + c * p.z};
    auto mdot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    };
    return std::atan2(mdot(t, basis.e2), mdot(t, basis.e1));
}

// Geodesic exponential: walk distance len from basis.base in direction angle.
inline HypPoint geodesic_exp(const TangentBasis& basis, double angle, double len) {
    double ux = std::cos(angle), uy = std::sin(angle);
    const HypPoint& p = basis.base;
    double ch = std::cosh(len), sh = std::sinh(len);
    HypPoint q{p.x * ch + (ux * basis.e1[0] + uy * basis.e2[0]) * sh,
               p.y * ch + (ux * basis.e1[1] + uy * basis.e2[1]) * sh,
               p.z * ch + (ux * basis.e1[2] + uy * basis.e2[2]) * sh};
    return normalized(q);
}

}  // namespace hypcsp

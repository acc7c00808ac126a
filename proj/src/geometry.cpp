#include "riskcbf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace riskcbf {

double eval_scaling(const Ellipsoid& e, const Vec& p) {
    const Vec d = p - e.center;
    return e.shape.quad(d);
}

SymMat ellipse_shape(double phi, double semi_a, double semi_b) {
    if (!(semi_a > 0.0) || !(semi_b > 0.0)) throw DomainError("semi-axes must be positive");
    const double d1 = 1.0 / (semi_a * semi_a), d2 = 1.0 / (semi_b * semi_b);
    const double c = std::cos(phi), s = std::sin(phi);
    SymMat q(2);
    q.set(0, 0, c * c * d1 + s * s * d2);
    q.set(0, 1, c * s * (d1 - d2));
    q.set(1, 1, s * s * d1 + c * c * d2);
    return q;
}

SymMat ellipse_shape_dtheta(double phi, double semi_a, double semi_b) {
    const double d1 = 1.0 / (semi_a * semi_a), d2 = 1.0 / (semi_b * semi_b);
    const double c = std::cos(phi), s = std::sin(phi);
    SymMat q(2);
    q.set(0, 0, 2.0 * c * s * (d2 - d1));
    q.set(0, 1, (c * c - s * s) * (d1 - d2));
    q.set(1, 1, 2.0 * c * s * (d1 - d2));
    return q;
}

SymMat ellipse_shape_d2theta(double phi, double semi_a, double semi_b) {
    const double d1 = 1.0 / (semi_a * semi_a), d2 = 1.0 / (semi_b * semi_b);
    const double c = std::cos(phi), s = std::sin(phi);
    const double c2 = c * c - s * s;
    SymMat q(2);
    q.set(0, 0, 2.0 * c2 * (d2 - d1));
    q.set(0, 1, -4.0 * c * s * (d1 - d2));
    q.set(1, 1, 2.0 * c2 * (d1 - d2));
    return q;
}

namespace {

// One Khachiyan run over lifted points q_i = (p_i, 1). Returns false when the
// scatter matrix is numerically rank-deficient (affinely dependent cloud).
bool mvee_iterate(const std::vector<Vec>& pts, double tol, Ellipsoid* out) {
    const int n = static_cast<int>(pts.size());
    const int d = 2;
    if (n < d + 1) return false;

    std::vector<double> u(static_cast<std::size_t>(n), 1.0 / n);
    auto scatter = [&](SymMat* x) {
        *x = SymMat(3);
        for (int i = 0; i < n; ++i) {
            const Vec q{pts[static_cast<std::size_t>(i)][0], pts[static_cast<std::size_t>(i)][1], 1.0};
            const double w = u[static_cast<std::size_t>(i)];
            for (int r = 0; r < 3; ++r)
                for (int c = r; c < 3; ++c) x->add(r, c, w * q[r] * q[c]);
        }
    };

    SymMat xinv(3);
    auto refresh_inverse = [&]() -> bool {
        SymMat x(3);
        scatter(&x);
        try {
            const LowerTri l = cholesky(x);
            for (int c = 0; c < 3; ++c) {
                Vec e(3);
                e[c] = 1.0;
                const Vec col = l.solve(e);
                for (int r = 0; r < 3; ++r) xinv.set(r, c, 0.5 * (col[r] + xinv(r, c)) * 0.0 + col[r]);
            }
        } catch (const NotPositiveDefinite&) {
            return false;
        }
        return true;
    };
    if (!refresh_inverse()) return false;

    const double gap_tol = tol * d / (d + 1.0);
    constexpr int kMaxIter = 10000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (iter > 0 && iter % 256 == 0 && !refresh_inverse()) return false;

        double m_max = -1.0, m_min = 1e300;
        int j_max = -1, j_min = -1;
        for (int i = 0; i < n; ++i) {
            const Vec q{pts[static_cast<std::size_t>(i)][0], pts[static_cast<std::size_t>(i)][1], 1.0};
            const double mi = xinv.quad(q);
            if (mi > m_max) { m_max = mi; j_max = i; }
            if (u[static_cast<std::size_t>(i)] > 0.0 && mi < m_min) { m_min = mi; j_min = i; }
        }
        const double eps_plus = m_max / (d + 1.0) - 1.0;
        const double eps_minus = 1.0 - m_min / (d + 1.0);
        if (eps_plus <= gap_tol && eps_minus <= gap_tol) break;

        int j;
        double m, beta;
        if (eps_plus >= eps_minus) {
            j = j_max;
            m = m_max;
            beta = (m - d - 1.0) / ((d + 1.0) * (m - 1.0));
        } else {
            j = j_min;
            m = m_min;
            const double uj = u[static_cast<std::size_t>(j)];
            beta = std::max((m - d - 1.0) / ((d + 1.0) * (m - 1.0)), -uj / (1.0 - uj));
        }

        // Sherman–Morrison update of X⁻¹ for X ← (1-β)X + β qqᵀ.
        const Vec q{pts[static_cast<std::size_t>(j)][0], pts[static_cast<std::size_t>(j)][1], 1.0};
        const Vec z = xinv.mul(q);
        const double denom = 1.0 - beta + beta * m;
        if (!(denom > 1e-14) || !(1.0 - beta > 1e-14)) {
            if (!refresh_inverse()) return false;
        } else {
            const double scale = 1.0 / (1.0 - beta);
            const double coef = beta / denom;
            for (int r = 0; r < 3; ++r)
                for (int c = r; c < 3; ++c)
                    xinv.set(r, c, scale * (xinv(r, c) - coef * z[r] * z[c]));
        }
        for (auto& w : u) w *= (1.0 - beta);
        u[static_cast<std::size_t>(j)] += beta;
    }

    Vec center{0.0, 0.0};
    for (int i = 0; i < n; ++i) center += pts[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    SymMat s(2);
    for (int i = 0; i < n; ++i) {
        const Vec& p = pts[static_cast<std::size_t>(i)];
        const double w = u[static_cast<std::size_t>(i)];
        s.add(0, 0, w * p[0] * p[0]);
        s.add(0, 1, w * p[0] * p[1]);
        s.add(1, 1, w * p[1] * p[1]);
    }
    s.add(0, 0, -center[0] * center[0]);
    s.add(0, 1, -center[0] * center[1]);
    s.add(1, 1, -center[1] * center[1]);

    // Q = S⁻¹ / d
    SymMat q(2);
    try {
        const LowerTri l = cholesky(s);
        for (int c = 0; c < 2; ++c) {
            Vec e(2);
            e[c] = 1.0;
            const Vec col = l.solve(e);
            for (int r = 0; r < 2; ++r) q.set(r, c, col[r] / d);
        }
    } catch (const NotPositiveDefinite&) {
        return false;
    }
    out->center = center;
    out->shape = q;
    return true;
}

}  // namespace

Ellipsoid mvee_fit(const std::vector<Vec>& points, double tol) {
    if (points.empty()) throw DegenerateCloud("mvee_fit: empty cloud");
    Ellipsoid e{Vec{0.0, 0.0}, SymMat::identity(2)};
    if (mvee_iterate(points, tol, &e)) return e;

    // Symmetric cross jitter, then one retry.
    constexpr double kJitter = 1e-6;
    std::vector<Vec> inflated;
    inflated.reserve(points.size() * 5);
    for (const Vec& p : points) {
        inflated.push_back(p);
        inflated.push_back(Vec{p[0] + kJitter, p[1]});
        inflated.push_back(Vec{p[0] - kJitter, p[1]});
        inflated.push_back(Vec{p[0], p[1] + kJitter});
        inflated.push_back(Vec{p[0], p[1] - kJitter});
    }
    if (mvee_iterate(inflated, tol, &e)) return e;
    throw DegenerateCloud("mvee_fit: affinely dependent cloud");
}

Ellipsoid robot_ellipse(const RobotState& x, const RobotShape& s) {
    return Ellipsoid{Vec{x.px, x.py}, ellipse_shape(x.theta, s.semi_axis_a, s.semi_axis_b)};
}

Vec scaling_state_grad(const RobotState& x, const RobotShape& s, const Vec& p) {
    const SymMat q = ellipse_shape(x.theta, s.semi_axis_a, s.semi_axis_b);
    const SymMat dq = ellipse_shape_dtheta(x.theta, s.semi_axis_a, s.semi_axis_b);
    const Vec d = p - Vec{x.px, x.py};
    const Vec qd = q.mul(d);
    return Vec{-2.0 * qd[0], -2.0 * qd[1], dq.quad(d)};
}

}  // namespace riskcbf

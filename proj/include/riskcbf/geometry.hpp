#pragma once

#include <vector>

#include "riskcbf/numerics.hpp"

namespace riskcbf {

// Region {p : (p - center)ᵀ shape (p - center) ≤ 1}. shape is positive definite;
// units are meters for center and 1/m² for shape.
struct Ellipsoid {
    Vec center;
    SymMat shape;
};

struct RobotShape {
    double semi_axis_a = 0.4;  // along heading, meters
    double semi_axis_b = 0.25; // lateral, meters
};

struct RobotState {
    double px = 0.0;
    double py = 0.0;
    double theta = 0.0;  // radians, unwrapped
};

// Scaling function F(p) = (p - μ)ᵀ Q (p - μ).
double eval_scaling(const Ellipsoid& e, const Vec& p);

// R(phi) · diag(1/a², 1/b²) · R(phi)ᵀ and its first two θ-derivatives.
SymMat ellipse_shape(double phi, double semi_a, double semi_b);
SymMat ellipse_shape_dtheta(double phi, double semi_a, double semi_b);
SymMat ellipse_shape_d2theta(double phi, double semi_a, double semi_b);

// Minimum-volume enclosing ellipsoid of a 2D point cloud (Khachiyan-type
// first-order iteration with away steps; dual-gap stopping rule). Every input
// point ends up with F(p) ≤ 1 + tol. Affinely dependent clouds are retried
// once with a symmetric 1e-6 m cross jitter, then rejected as DegenerateCloud.
Ellipsoid mvee_fit(const std::vector<Vec>& points, double tol = 1e-7);

// θ_R(x): robot pose and shape to its body ellipse.
Ellipsoid robot_ellipse(const RobotState& x, const RobotShape& s);

// Gradient of F_R(p, θ_R(x)) with respect to (p_x, p_y, θ) with p held fixed.
Vec scaling_state_grad(const RobotState& x, const RobotShape& s, const Vec& p);

}  // namespace riskcbf

#pragma once

// Fundamental solutions C1, C2 on S^n and their convolutions.

#include "dirac/spherical_field.hpp"

#include <Eigen/Core>

namespace dirac {

// (y - w) / (omega_n |y - w|^n); n = w.size() - 1.
Mv c1_kernel_eval(const Eigen::VectorXd& w, const Eigen::VectorXd& y);
// 1 / ((n - 2) omega_n |w - y|^{n-2}), n >= 3.
double c2_kernel_eval(const Eigen::VectorXd& w, const Eigen::VectorXd& y);

// Orthonormal basis of the tangent space y^perp, as columns.
Eigen::MatrixXd tangent_frame(const Eigen::VectorXd& y);

// int C1(w, y) phi(w) dsigma(w) in geodesic polar coordinates about y with the
// half-angle variable: w = cos(2t) y + sin(2t) u, where the kernel times the area
// element is (2 / omega_n) (sin t y - cos t u) cos^{n-1} t dt du, smooth in t.
Mv convolve_c1(const SphericalField& phi, const Eigen::VectorXd& y, int theta_nodes = 40);

struct C2IdentityResidual {
  // |D_S C2(w, .)(y) - C1(w, y) - y C2(w, y)|, D_S acting in y on the degree-0 extension.
  double residual = 0;
  // Same with the right-hand side C1(w, y) - w C2(w, y).
  double printed_form_residual = 0;
  double scale = 0;
};

C2IdentityResidual c2_identity_residual(const Eigen::VectorXd& w, const Eigen::VectorXd& y, double step = 1e-5);

}  // namespace dirac

#pragma once

// Gauss rules on intervals and product rules on the unit spheres S^n in R^{n+1}.

#include "dirac/polynomial.hpp"

#include <Eigen/Core>

#include <memory>

namespace dirac {

struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussRule gauss_legendre(int count);
GaussRule gauss_legendre(int count, double a, double b);
// Weight (1 - x)^alpha (1 + x)^beta on [-1, 1], alpha, beta > -1 (Golub-Welsch).
GaussRule gauss_jacobi(int count, double alpha, double beta);

// Area of S^n in R^{n+1}.
double sphere_area(int n);
// Area of the unit sphere in R^n, i.e. of S^{n-1}.
double omega(int n);

struct QuadratureRule {
  int n = 0;
  int exactness = 0;
  Eigen::MatrixXd nodes;  // (n+1) x count, unit columns
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

// Product rule on S^n exact for polynomials of degree <= d_exact: Gauss-Jacobi
// in the last coordinate times a scaled rule on S^{n-1}, trapezoid on S^1.
// Public range n in [1, 4], d_exact <= 40.
QuadratureRule quadrature_rule(int n, int d_exact);

// Same construction without the public range check (n in [0, 7]); cached.
std::shared_ptr<const QuadratureRule> sphere_rule(int n, int d_exact);

// Exact integral of x^alpha over S^{N-1} in R^N.
double sphere_monomial_moment(const Exponent& alpha, int N);

}  // namespace dirac

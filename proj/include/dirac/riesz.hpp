#pragma once

// Euclidean kernels G_k with D G_k = G_{k-1}, G_1(z) = z / (omega_n |z|^n), and
// their convolutions with smooth, cut-off fields.

#include "dirac/rational_field.hpp"

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dirac {

inline constexpr int kMaxKernelOrder = 6;

class DegenerateKernel : public std::domain_error {
 public:
  DegenerateKernel(int n, int k);
  int n, k;
};

// C_1 .. C_{k_max}: C_k = C_{k-1} / (k - n) for even k, C_{k-1} / (1 - k) for odd k.
// Throws DegenerateKernel when k reaches n with n even.
std::vector<double> kernel_constants(int n, int k_max);

// Orders shipped for R^n: k < n for even n, k <= kMaxKernelOrder for odd n.
int max_kernel_order(int n);

struct RieszKernel {
  int n = 0;
  int k = 0;
  double constant = 0;

  static RieszKernel make(int n, int k);

  // Odd k: (C_k / omega_n) z / |z|^{n+1-k}; even k: (C_k / omega_n) / |z|^{n-k}.
  Mv operator()(const Eigen::VectorXd& z) const;
};

struct RecursionCheck {
  double max_rel_residual = 0;
  int pairs = 0;
};

// Central differences of D_x G_k(x - y) against G_{k-1}(x - y) at random pairs.
RecursionCheck certify_recursion(int n, int k, int pairs, std::uint64_t seed, double step = 1e-5);

// 1 on [0, R/2], quintic smoothstep down to 0 at R; R = infinity means no cutoff.
double smooth_cutoff(double r, double radius);

struct ConvolutionOptions {
  double cutoff_radius = 50;  // infinity for none
};

inline constexpr double kNoCutoff = std::numeric_limits<double>::infinity();

struct ConvolutionValue {
  Mv value{Signature(1)};
  // |level 3 - level 2| of the panel refinement.
  double error = 0;
};

// int G_k(x - y) chi_R(|x|) h(x) dx in polar coordinates about y, where G_k times the
// area element is smooth. Shells are graded toward y and toward |x| = 0; the polar
// angle is measured from the direction of the origin and graded toward it.
std::vector<ConvolutionValue> convolve_gk(const RationalField& h, int k, const std::vector<Eigen::VectorXd>& ys,
                                          const ConvolutionOptions& opts = {});

// Same for m fields at once; sampler(x) returns a 2^N x m matrix of coefficients.
// Result columns are the m convolutions at y at the given refinement level (0, 1, 2).
using FieldSampler = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
Eigen::MatrixXd convolve_level(const FieldSampler& sampler, int columns, const RieszKernel& kernel,
                               const Eigen::VectorXd& y, double cutoff_radius, int level);

// Dense evaluator for a list of fields sharing R^n: one monomial table, one GEMV.
FieldSampler field_sampler(const std::vector<RationalField>& fields);

}  // namespace dirac

#pragma once

// Spaces of homogeneous Cl_N-valued polynomials on R^N: harmonic and monogenic
// subspaces, the split h = p + x q, and Kelvin inversion.

#include "dirac/polynomial.hpp"

#include <Eigen/Core>

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dirac {

enum class SubspaceKind { harmonic, monogenic };

// Basis stored as coefficient columns in the to_vector layout of `index`.
struct PolySubspace {
  int ambient_dim = 0;
  int degree = 0;
  SubspaceKind kind = SubspaceKind::harmonic;
  MonomialIndex index{1, 0};
  Eigen::MatrixXd coefficients;

  // Monogenic spaces are free right Cl_N-modules: column beta * 2^N + C holds
  // generators[beta] * e_C. Empty for harmonic spaces.
  std::vector<Poly> generators;

  Signature signature() const { return Signature(ambient_dim); }
  int dim() const { return static_cast<int>(coefficients.cols()); }
  Poly element(int i) const;
  Poly combination(const Eigen::VectorXd& weights) const;
};

class NotHarmonic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double binomial(int n, int k);

// 2^N C(m+N-1, N-1) minus the degree m-2 count.
long harmonic_dimension(int N, int m);
// 2^N C(m+N-2, N-2).
long monogenic_dimension(int N, int m);

// Orthonormal basis of ker(A) from a full SVD; singular values below
// rel_cutoff * sigma_max count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_cutoff = 1e-10);
int numerical_rank(const Eigen::MatrixXd& a, double rel_cutoff = 1e-10);

// Matrix of D (resp. Delta) from degree m to degree m-1 (resp. m-2) coefficients.
Eigen::MatrixXd dirac_matrix(int N, int m);
Eigen::MatrixXd scalar_laplacian_matrix(int N, int m);

PolySubspace harmonic_basis(int N, int m);

// Cached per (N, m); safe to call from several threads.
std::shared_ptr<const PolySubspace> monogenic_basis(int N, int m);

// Monogenic extension of a polynomial that does not depend on x_1:
// f = sum_j x_1^j / j! (e_1 D')^j a with D' the Dirac operator in x_2..x_N.
Poly monogenic_extension(const Poly& a);

struct FischerSplit {
  Poly p;
  Poly q;
};

// h = p + x q with p, q monogenic of degrees m and m-1.
FischerSplit fischer_split(const Poly& h, int m);

// x -> G(x) p(x^{-1}) with G(x) = x / |x|^N, evaluated in closed form as
// (-1)^m x p(x) / |x|^{N + 2m}.
class KelvinImage {
 public:
  KelvinImage(Poly p, int degree);

  Mv operator()(const Eigen::VectorXd& x) const;
  const Poly& polynomial() const { return p_; }
  int degree() const { return degree_; }

 private:
  Poly p_;
  Poly x_times_p_;
  int degree_;
};

KelvinImage kelvin_invert(const Poly& p, int degree);

}  // namespace dirac

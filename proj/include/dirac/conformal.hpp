#pragma once

// Moebius maps (ax + b)(cx + d)^{-1} on R^n inside Cl_{n+1}, the Cayley transform
// onto S^n, the conformal weights J_k and the transport of sphere fields to R^n.

#include "dirac/rational_field.hpp"
#include "dirac/spherical_field.hpp"

#include <Eigen/Core>

#include <vector>

namespace dirac {

struct MobiusMap {
  Mv a, b, c, d;
};

// Identity, translation by t, and the Cayley map a = e_{n+1}, b = 1, c = 1, d = e_{n+1}.
MobiusMap identity_map(int n);
MobiusMap translation_map(const Eigen::VectorXd& t);
MobiusMap cayley_map(int n);

// Zero, or a nonzero A with A conj(A) a positive scalar that maps vectors to vectors
// under the twisted adjoint.
bool is_versor_or_zero(const Mv& a, double tol = 1e-10);

struct AhlforsReport {
  bool versors = false;  // (i)
  bool vectors = false;  // (ii): a~c, ~cd, ~db, ~ba grade-1
  Mv verbatim{Signature(1)};  // (iii) as stated: a~d - c~c
  Mv variant{Signature(1)};   // a~d - b~c
  bool verbatim_ok = false;
  bool variant_ok = false;

  bool valid() const { return versors && vectors && verbatim_ok; }
};

AhlforsReport ahlfors_check(const MobiusMap& m, double tol = 1e-10);

// Throws std::domain_error at a pole (|cx + d| < 1e-12).
Eigen::VectorXd apply_mobius(const MobiusMap& m, const Eigen::VectorXd& x);

// ((|x|^2 - 1) e_{n+1} - 2x) / (1 + |x|^2).
Eigen::VectorXd cayley(const Eigen::VectorXd& x);
// -w' / (1 - w_{n+1}); throws at the north pole e_{n+1}.
Eigen::VectorXd cayley_inverse(const Eigen::VectorXd& w);

// J_k(C, x): 2^{(n-k)/2} (x + e_{n+1}) / (1 + |x|^2)^{(n-k+1)/2} for odd k,
// 2^{(n-k)/2} / (1 + |x|^2)^{(n-k)/2} for even k; any integer k.
Mv jk_weight(int k, const Eigen::VectorXd& x);
RationalField jk_rational(int n, int k);

// 2^n / |cx + d|^{2n}.
double jacobian(const MobiusMap& m, const Eigen::VectorXd& x);

// psi(C(x)) as an exact rational field.
RationalField compose_cayley(const SphericalField& psi);
// J_k(C, x) psi(C(x)).
RationalField pullback(const SphericalField& psi, int k);
// U_k psi = (2 / (1 + |x|^2))^{k/2} J_k psi(C); an isometry L2(S^n) -> L2(R^n) for every k.
RationalField isometric_pullback(const SphericalField& psi, int k);

// max over x of |D^k[J_k psi(C)](x) - sign J_{-k}(C, x) (D_S^(k) psi)(C(x))| with
// sign = (-1)^k (intertwining) or +1 (the sign as usually displayed).
struct IntertwineResidual {
  double residual = 0;
  double unsigned_residual = 0;
  double scale = 0;
};

IntertwineResidual intertwine_residual(const SphericalField& psi, int k, const std::vector<Eigen::VectorXd>& points);

struct InnerPair {
  double sphere = 0;
  double euclid = 0;
};

// <phi, psi> on S^n by quadrature against <U_1 phi, U_1 psi> on R^n.
InnerPair isometry_check(const SphericalField& phi, const SphericalField& psi, const RadialOptions& opts = {});

}  // namespace dirac

#pragma once

// Fields on R^n of the form sum_s P_s(x) (1 + |x|^2)^{-s/2} with P_s polynomial
// in n variables over Cl_{n+1} and s any integer. The class is closed under D.

#include "dirac/polynomial.hpp"

#include <Eigen/Core>

#include <map>
#include <stdexcept>
#include <vector>

namespace dirac {

class NotIntegrable : public std::domain_error {
 public:
  explicit NotIntegrable(int exponent);
  // Integrand grows like r^exponent times r^{n-1}; convergence needs exponent + n < 0.
  int exponent;
};

class RationalField {
 public:
  explicit RationalField(int n);
  RationalField(const Poly& p, int s);

  // (1 + |x|^2)^{-s/2} times a Clifford constant.
  static RationalField weight(int n, int s, const Mv& c);
  static RationalField weight(int n, int s);

  int n() const { return n_; }
  Signature signature() const { return Signature(n_ + 1); }
  const std::map<int, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Poly& p, int s);

  // max over terms of deg P_s - s, so |f| = O(r^growth); -infinity as INT_MIN / 2 when zero.
  int growth() const;
  int max_degree() const;

  // One term per parity of s (the two classes are independent over polynomials),
  // coefficients below tol times the largest dropped.
  RationalField canonical(double tol = 1e-12) const;

  // Number of variables n, Clifford dimension n + 1, no zero polynomials.
  bool well_formed() const;

  Mv evaluate(const Eigen::VectorXd& x) const;

  // Multiplication by (1 + |x|^2)^j.
  RationalField times_weight(int j) const;

  RationalField& operator+=(const RationalField& o);
  RationalField& operator-=(const RationalField& o);
  RationalField& operator*=(double c);
  friend RationalField operator+(RationalField a, const RationalField& b) { return a += b; }
  friend RationalField operator-(RationalField a, const RationalField& b) { return a -= b; }
  friend RationalField operator*(double c, RationalField a) { return a *= c; }
  friend RationalField operator*(const Mv& c, const RationalField& f);
  friend RationalField operator*(const RationalField& f, const Mv& c);
  friend RationalField operator*(const RationalField& f, const RationalField& g);

 private:
  void check_same(const RationalField& o) const;

  int n_;
  std::map<int, Poly> terms_;
};

// D[P g_s] = (D P) g_s - s (x P) g_{s+2}, g_s = (1 + |x|^2)^{-s/2}; output is canonical.
RationalField d_apply_rational(const RationalField& f);
RationalField d_power_apply(const RationalField& f, int k);
// Delta^j f = (-1)^j D^{2j} f.
RationalField laplacian_power_apply(const RationalField& f, int j);

struct RadialOptions {
  int radial_nodes = 200;
};

struct WeightedIntegral {
  double value = 0;
  // |I(radial_nodes) - I(radial_nodes / 2)|.
  double error = 0;
};

// int_{R^n} Sc(conj(f) g) (1 + |x|^2)^weight dx with x = tan(t) u, t in [0, pi/2):
// the integrand becomes Sc(conj(f) g) sin^{n-1} t cos^{-(n+1+2 weight)} t, a
// trigonometric polynomial, integrated by Gauss-Legendre in t times an exact rule
// on S^{n-1}. Throws NotIntegrable when the symbolic growth forbids convergence.
WeightedIntegral weighted_inner_estimate(const RationalField& f, const RationalField& g, int weight,
                                         const RadialOptions& opts = {});
double weighted_inner(const RationalField& f, const RationalField& g, int weight, const RadialOptions& opts = {});
WeightedIntegral weighted_l2_estimate(const RationalField& f, int weight, const RadialOptions& opts = {});
// int |f|^2 (1 + |x|^2)^weight dx (squared norm).
double weighted_l2(const RationalField& f, int weight, const RadialOptions& opts = {});

// H(a, b) = int conj(F_a) F_b (1 + |x|^2)^weight dx, Clifford-valued; row-major.
std::vector<Mv> weighted_gram(const std::vector<RationalField>& fields, int weight, const RadialOptions& opts = {});

// Real quadratic form of sum_{a,C} c_{a,C} F_a e_C from the Clifford-valued Gram H:
// G[(a,C),(b,D)] = Sc(conj(e_C) H(a,b) e_D). Index a * 2^N + C.
Eigen::MatrixXd right_module_form(const std::vector<Mv>& gram, int count);

}  // namespace dirac

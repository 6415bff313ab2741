#pragma once

// Band-limited Cl_{n+1}-valued fields on S^n: f = sum_m p_m + w q_m with
// p_m, q_m in P_m given by coordinates over monogenic_basis(n+1, m).

#include "dirac/polyspace.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/spectral.hpp"

#include <Eigen/Core>

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

struct FieldComponent {
  int m = 0;
  Eigen::VectorXd a;  // p_m coordinates
  Eigen::VectorXd b;  // q_m coordinates
};

class NotInvertible : public std::domain_error {
 public:
  NotInvertible(int n, int k, int m);
  int n, k, m;
};

class SphericalField {
 public:
  SphericalField(int n, int band_limit);

  // Coordinates i.i.d. uniform in [-1, 1].
  static SphericalField random(int n, int band_limit, std::mt19937_64& rng);
  // p_m = first basis element scaled by c_p, q_m likewise by c_wp, all else zero.
  static SphericalField eigenfield(int n, int m, const Eigen::Vector2d& direction, int band_limit = -1);

  int n() const { return n_; }
  int ambient_dim() const { return n_ + 1; }
  int band_limit() const { return static_cast<int>(components_.size()) - 1; }
  const std::vector<FieldComponent>& components() const { return components_; }
  FieldComponent& component(int m) { return components_.at(static_cast<std::size_t>(m)); }
  const FieldComponent& component(int m) const { return components_.at(static_cast<std::size_t>(m)); }

  // sum_m p_m(x) + x q_m(x); equals the field on |x| = 1.
  Poly ambient_polynomial() const;
  Mv evaluate(const Eigen::VectorXd& w) const;

  SphericalField& operator+=(const SphericalField& o);
  SphericalField& operator*=(double s);
  friend SphericalField operator+(SphericalField a, const SphericalField& b) { return a += b; }
  friend SphericalField operator-(SphericalField a, const SphericalField& b) { return a += (-1.0) * b; }
  friend SphericalField operator*(double s, SphericalField a) { return a *= s; }

  void check_same(const SphericalField& o) const;

 private:
  int n_;
  std::vector<FieldComponent> components_;
};

// Applies block(m) to every (a_m, b_m) pair.
SphericalField apply_blocks(const SphericalField& f, const std::function<Block(int)>& block);

SphericalField multiply_by_w(const SphericalField& f);
SphericalField gamma_w_apply(const SphericalField& f);
SphericalField ds_apply(const SphericalField& f);
SphericalField d_alpha_apply(const SphericalField& f, double alpha);
SphericalField delta_s_apply(const SphericalField& f);
SphericalField paenitz_apply(const SphericalField& f);
SphericalField dsk_apply(const SphericalField& f, int k);
SphericalField laplace_beltrami_apply(const SphericalField& f);

// (D_S^(k))^{-1} f; throws NotInvertible naming the first degree with a zero eigenvalue.
SphericalField spectral_inverse_apply(const SphericalField& f, int k);

// Operator norm of (D_S^(k))^{-1} restricted to degrees m <= m_max.
double spectral_inverse_norm(int k, int n, int m_max);

// L2(S^n) Gram matrix of monogenic_basis(N, m), from exact monomial moments; cached.
const Eigen::MatrixXd& gram_matrix(int N, int m);

// sum_m a^T G a + b^T G b.
double gram_norm_squared(const SphericalField& f);

// Quadrature inner product int Sc(conj(f) g); throws when 2 (M + 1) exceeds the rule.
double l2_inner(const SphericalField& f, const SphericalField& g, const QuadratureRule& rule);
double l2_norm(const SphericalField& f, const QuadratureRule& rule);

// Field values at every node of a rule, in node order.
std::vector<Mv> sample(const SphericalField& f, const QuadratureRule& rule);

}  // namespace dirac

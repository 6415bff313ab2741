#include "dirac/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dirac {

GaussRule gauss_jacobi(int count, double alpha, double beta) {
  if (count < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("Jacobi exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(count);
  Eigen::VectorXd sub(std::max(count - 1, 1));
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                       : (beta * beta - alpha * alpha) / (t * (t + 2.0));
  }
  for (int k = 1; k < count; ++k) {
    const double t = 2.0 * k + ab;
    double b;
    if (k == 1) {
      b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    sub(k - 1) = std::sqrt(b);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  GaussRule rule;
  if (count == 1) {
    rule.nodes = diag;
    rule.weights = Eigen::VectorXd::Constant(1, mu0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::ComputeEigenvectors);
  rule.nodes = eig.eigenvalues();
  rule.weights = mu0 * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

GaussRule gauss_legendre(int count) { return gauss_jacobi(count, 0.0, 0.0); }

GaussRule gauss_legendre(int count, double a, double b) {
  GaussRule r = gauss_legendre(count);
  const double half = 0.5 * (b - a);
  r.nodes = (r.nodes.array() * half + 0.5 * (a + b)).matrix();
  r.weights *= half;
  return r;
}

double sphere_area(int n) {
  if (n < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  const double h = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double omega(int n) { return sphere_area(n - 1); }

namespace {

QuadratureRule build_rule(int n, int d) {
  QuadratureRule rule;
  rule.n = n;
  rule.exactness = d;
  if (n == 0) {
    rule.nodes = Eigen::MatrixXd(1, 2);
    rule.nodes << 1.0, -1.0;
    rule.weights = Eigen::VectorXd::Ones(2);
    return rule;
  }
  if (n == 1) {
    const int count = d + 1;
    rule.nodes.resize(2, count);
    rule.weights = Eigen::VectorXd::Constant(count, 2.0 * std::numbers::pi / count);
    for (int j = 0; j < count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / count;
      rule.nodes(0, j) = std::cos(t);
      rule.nodes(1, j) = std::sin(t);
    }
    return rule;
  }
  const double a = 0.5 * (n - 2);
  const GaussRule z = gauss_jacobi(d / 2 + 1, a, a);
  const auto sub = sphere_rule(n - 1, d);
  const int count = static_cast<int>(z.nodes.size()) * sub->size();
  rule.nodes.resize(n + 1, count);
  rule.weights.resize(count);
  int col = 0;
  for (Eigen::Index i = 0; i < z.nodes.size(); ++i) {
    const double zi = z.nodes(i);
    const double rho = std::sqrt(std::max(0.0, 1.0 - zi * zi));
    for (int j = 0; j < sub->size(); ++j, ++col) {
      rule.nodes.col(col).head(n) = rho * sub->nodes.col(j);
      rule.nodes(n, col) = zi;
      rule.weights(col) = z.weights(i) * sub->weights(j);
    }
  }
  return rule;
}

}  // namespace

std::shared_ptr<const QuadratureRule> sphere_rule(int n, int d_exact) {
  if (n < 0 || n > 7) throw std::invalid_argument("sphere_rule supports S^0 .. S^7");
  if (d_exact < 0) throw std::invalid_argument("exactness degree must be >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureRule>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({n, d_exact});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const QuadratureRule>(build_rule(n, d_exact));
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(n, d_exact), std::move(built)).first->second;
}

QuadratureRule quadrature_rule(int n, int d_exact) {
  if (n < 1 || n > 4) throw std::invalid_argument("quadrature_rule supports n in [1, 4], got " + std::to_string(n));
  if (d_exact < 0 || d_exact > 40) throw std::invalid_argument("quadrature_rule supports exactness 0..40");
  return *sphere_rule(n, d_exact);
}

double sphere_monomial_moment(const Exponent& alpha, int N) {
  double log_num = 0.0;
  int total = 0;
  for (int i = 0; i < N; ++i) {
    const int a = alpha[static_cast<std::size_t>(i)];
    if (a & 1) return 0.0;
    log_num += std::lgamma(0.5 * (a + 1));
    total += a;
  }
  return 2.0 * std::exp(log_num - std::lgamma(0.5 * (total + N)));
}

}  // namespace dirac

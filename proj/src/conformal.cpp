#include "dirac/conformal.hpp"

#include <cmath>

namespace dirac {

MobiusMap identity_map(int n) {
  const Signature sig(n + 1);
  return {Mv::scalar(sig, 1.0), Mv(sig), Mv(sig), Mv::scalar(sig, 1.0)};
}

MobiusMap translation_map(const Eigen::VectorXd& t) {
  const Signature sig(static_cast<int>(t.size()) + 1);
  return {Mv::scalar(sig, 1.0), Mv::vector(sig, t), Mv(sig), Mv::scalar(sig, 1.0)};
}

MobiusMap cayley_map(int n) {
  const Signature sig(n + 1);
  const Mv e = Mv::basis_vector(sig, n);
  return {e, Mv::scalar(sig, 1.0), Mv::scalar(sig, 1.0), e};
}

bool is_versor_or_zero(const Mv& a, double tol) {
  const double n2 = norm_squared(a);
  if (n2 <= tol * tol) return true;
  const Mv square = a * conjugation(a);
  if (!is_grade(square, 0, tol * n2) || scalar_part(square) <= 0) return false;
  const Mv inverse = versor_inverse(a);
  const Mv twisted = grade_involution(a);
  const Signature sig = a.signature();
  for (int i = 0; i < sig.dim(); ++i)
    if (!is_grade(twisted * Mv::basis_vector(sig, i) * inverse, 1, tol)) return false;
  return true;
}

AhlforsReport ahlfors_check(const MobiusMap& m, double tol) {
  AhlforsReport r;
  r.versors = is_versor_or_zero(m.a, tol) && is_versor_or_zero(m.b, tol) && is_versor_or_zero(m.c, tol) &&
              is_versor_or_zero(m.d, tol);
  const auto vec = [tol](const Mv& x) { return is_grade(x, 1, tol * std::max(1.0, norm(x))); };
  r.vectors = vec(m.a * reversion(m.c)) && vec(reversion(m.c) * m.d) && vec(reversion(m.d) * m.b) &&
              vec(reversion(m.b) * m.a);
  r.verbatim = m.a * reversion(m.d) - m.c * reversion(m.c);
  r.variant = m.a * reversion(m.d) - m.b * reversion(m.c);
  const auto nonzero_scalar = [tol](const Mv& x) {
    return is_grade(x, 0, tol * std::max(1.0, norm(x))) && std::abs(scalar_part(x)) > tol;
  };
  r.verbatim_ok = nonzero_scalar(r.verbatim);
  r.variant_ok = nonzero_scalar(r.variant);
  return r;
}

Eigen::VectorXd apply_mobius(const MobiusMap& m, const Eigen::VectorXd& x) {
  const Signature sig = m.a.signature();
  if (x.size() >= sig.dim()) throw std::invalid_argument("Moebius argument must lie in R^n, n < N");
  const Mv xv = Mv::vector(sig, x);
  const Mv den = m.c * xv + m.d;
  if (norm(den) < 1e-12) throw std::domain_error("Moebius map has a pole at this point");
  const Mv y = (m.a * xv + m.b) * versor_inverse(den);
  if (!is_grade(y, 1, 1e-10 * std::max(1.0, norm(y)))) throw std::domain_error("Moebius image is not a vector");
  const std::vector<double> v = vector_components(y);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd cayley(const Eigen::VectorXd& x) {
  const auto n = x.size();
  const double r2 = x.squaredNorm();
  Eigen::VectorXd w(n + 1);
  w.head(n) = -2.0 * x / (1.0 + r2);
  w(n) = (r2 - 1.0) / (1.0 + r2);
  return w;
}

Eigen::VectorXd cayley_inverse(const Eigen::VectorXd& w) {
  const auto n = w.size() - 1;
  const double gap = 1.0 - w(n);
  if (gap < 1e-14) throw std::domain_error("cayley_inverse is undefined at the north pole");
  return -w.head(n) / gap;
}

Mv jk_weight(int k, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const Signature sig(n + 1);
  const double q = 1.0 + x.squaredNorm();
  const double scale = std::pow(2.0, 0.5 * (n - k));
  if (k % 2 == 0) return Mv::scalar(sig, scale * std::pow(q, -0.5 * (n - k)));
  return (Mv::vector(sig, x) + Mv::basis_vector(sig, n)) * (scale * std::pow(q, -0.5 * (n - k + 1)));
}

RationalField jk_rational(int n, int k) {
  const Signature sig(n + 1);
  const double scale = std::pow(2.0, 0.5 * (n - k));
  if (k % 2 == 0) return RationalField::weight(n, n - k, Mv::scalar(sig, scale));
  const Poly xe = Poly::position(n, sig) + Poly::constant(n, Mv::basis_vector(sig, n));
  return RationalField(scale * xe, n - k + 1);
}

double jacobian(const MobiusMap& m, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const Mv den = m.c * Mv::vector(m.a.signature(), x) + m.d;
  return std::pow(2.0, n) / std::pow(norm_squared(den), n);
}

RationalField compose_cayley(const SphericalField& psi) {
  const int n = psi.n();
  const int N = n + 1;
  const Signature sig(N);
  const Poly f = psi.ambient_polynomial();
  RationalField out(n);
  if (f.is_zero()) return out;
  const int deg = f.degree();

  // Numerators of C(x)_j over the common denominator 1 + |x|^2.
  const Poly one = Poly::constant(n, Mv::scalar(sig, 1.0));
  std::vector<Poly> numerators;
  Poly r2(n, sig);
  for (int j = 0; j < n; ++j) {
    numerators.push_back(-2.0 * Poly::coordinate(n, sig, j));
    r2 += Poly::coordinate(n, sig, j) * Poly::coordinate(n, sig, j);
  }
  numerators.push_back(r2 - one);
  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    auto& pw = powers[static_cast<std::size_t>(j)];
    pw.push_back(one);
    for (int a = 1; a <= deg; ++a) pw.push_back(pw.back() * numerators[static_cast<std::size_t>(j)]);
  }

  std::vector<Poly> by_degree(static_cast<std::size_t>(deg + 1), Poly(n, sig));
  for (const auto& [e, c] : f.terms()) {
    Poly mono = one;
    for (int j = 0; j < N; ++j)
      if (e[static_cast<std::size_t>(j)] > 0) mono = mono * powers[static_cast<std::size_t>(j)][e[static_cast<std::size_t>(j)]];
    by_degree[static_cast<std::size_t>(total_degree(e))] += c * mono;
  }
  for (int d = 0; d <= deg; ++d) out.add(by_degree[static_cast<std::size_t>(d)], 2 * d);
  return out;
}

RationalField pullback(const SphericalField& psi, int k) {
  return jk_rational(psi.n(), k) * compose_cayley(psi);
}

RationalField isometric_pullback(const SphericalField& psi, int k) {
  return std::pow(2.0, 0.5 * k) * (pullback(psi, k) * RationalField::weight(psi.n(), k));
}

IntertwineResidual intertwine_residual(const SphericalField& psi, int k, const std::vector<Eigen::VectorXd>& points) {
  if (k < 1) throw std::invalid_argument("intertwine_residual needs k >= 1");
  const RationalField lhs = d_power_apply(pullback(psi, k), k);
  const SphericalField image = dsk_apply(psi, k);
  const double sign = (k % 2) ? -1.0 : 1.0;
  IntertwineResidual r;
  for (const auto& x : points) {
    if (x.size() != psi.n()) throw std::invalid_argument("sample points must lie in R^n");
    const Mv left = lhs.evaluate(x);
    const Mv right = jk_weight(-k, x) * image.evaluate(cayley(x));
    r.residual = std::max(r.residual, norm(left - sign * right));
    r.unsigned_residual = std::max(r.unsigned_residual, norm(left - right));
    r.scale = std::max(r.scale, norm(right));
  }
  return r;
}

InnerPair isometry_check(const SphericalField& phi, const SphericalField& psi, const RadialOptions& opts) {
  if (phi.n() != psi.n()) throw std::invalid_argument("fields live on different spheres");
  const auto rule = sphere_rule(phi.n(), phi.band_limit() + psi.band_limit() + 2);
  return {l2_inner(phi, psi, *rule), weighted_inner(isometric_pullback(phi, 1), isometric_pullback(psi, 1), 0, opts)};
}

}  // namespace dirac

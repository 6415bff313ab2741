#include "dirac/polyspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <mutex>

namespace dirac {

Poly PolySubspace::element(int i) const {
  return from_vector<double>(coefficients.col(i), index, signature());
}

Poly PolySubspace::combination(const Eigen::VectorXd& weights) const {
  if (weights.size() != dim()) throw std::invalid_argument("weight vector does not match subspace dimension");
  return from_vector<double>(coefficients * weights, index, signature());
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

long harmonic_dimension(int N, int m) {
  const double scalar = binomial(m + N - 1, N - 1) - binomial(m + N - 3, N - 1);
  return (1L << N) * static_cast<long>(scalar);
}

long monogenic_dimension(int N, int m) {
  if (N < 2) throw std::invalid_argument("monogenic_dimension needs N >= 2");
  return (1L << N) * static_cast<long>(binomial(m + N - 2, N - 2));
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_cutoff) {
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_cutoff * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_cutoff) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_cutoff * sv(0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return rank;
}

Eigen::MatrixXd dirac_matrix(int N, int m) {
  const Signature sig(N);
  const int blades = sig.blade_count();
  const MonomialIndex from(N, m);
  const MonomialIndex to(N, m - 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()) * blades,
                                              static_cast<Eigen::Index>(from.size()) * blades);
  if (m == 0) return out;
  const auto& table = product_sign_table(sig);
  for (int i = 0; i < from.size(); ++i) {
    const Exponent& e = from[i];
    for (int j = 0; j < N; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      if (e[jj] == 0) continue;
      Exponent d = e;
      d[jj] = static_cast<std::uint8_t>(d[jj] - 1);
      const int row = to.find(d);
      const BladeMask ej = BladeMask{1} << j;
      for (int b = 0; b < blades; ++b) {
        const int sign = table[static_cast<std::size_t>(ej) * static_cast<std::size_t>(blades) + static_cast<std::size_t>(b)];
        out(row * blades + static_cast<int>(ej ^ static_cast<BladeMask>(b)), i * blades + b) += sign * e[jj];
      }
    }
  }
  return out;
}

Eigen::MatrixXd scalar_laplacian_matrix(int N, int m) {
  const MonomialIndex from(N, m);
  const MonomialIndex to(N, m - 2);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(to.size(), from.size());
  if (m < 2) return out;
  for (int i = 0; i < from.size(); ++i) {
    const Exponent& e = from[i];
    for (int j = 0; j < N; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      if (e[jj] < 2) continue;
      Exponent d = e;
      d[jj] = static_cast<std::uint8_t>(d[jj] - 2);
      out(to.find(d), i) += e[jj] * (e[jj] - 1);
    }
  }
  return out;
}

PolySubspace harmonic_basis(int N, int m) {
  if (N < 2 || m < 0) throw std::invalid_argument("harmonic_basis needs N >= 2 and m >= 0");
  const Signature sig(N);
  const int blades = sig.blade_count();
  PolySubspace out;
  out.ambient_dim = N;
  out.degree = m;
  out.kind = SubspaceKind::harmonic;
  out.index = MonomialIndex(N, m);
  const Eigen::MatrixXd scalar = null_space(scalar_laplacian_matrix(N, m));
  out.coefficients = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.index.size()) * blades, scalar.cols() * blades);
  for (Eigen::Index c = 0; c < scalar.cols(); ++c)
    for (int b = 0; b < blades; ++b)
      for (int i = 0; i < out.index.size(); ++i) out.coefficients(i * blades + b, c * blades + b) = scalar(i, c);
  return out;
}

Poly monogenic_extension(const Poly& a) {
  const Signature sig = a.signature();
  const int N = a.num_vars();
  for (const auto& [e, c] : a.terms())
    if (e[0] != 0) throw std::invalid_argument("monogenic_extension input must not depend on x_1");
  const Mv e1 = Mv::basis_vector(sig, 0);
  Poly f(N, sig);
  Poly t = a;
  Poly x1_power = Poly::constant(N, Mv::scalar(sig, 1.0));
  const Poly x1 = Poly::coordinate(N, sig, 0);
  double factorial = 1.0;
  for (int j = 0; !t.is_zero(); ++j) {
    if (j > 0) factorial *= j;
    f += x1_power * t * (1.0 / factorial);
    Poly dt(N, sig);
    for (int i = 1; i < N; ++i) dt += Mv::basis_vector(sig, i) * partial(t, i);
    t = e1 * dt;
    x1_power = x1_power * x1;
  }
  return f;
}

namespace {

PolySubspace build_monogenic(int N, int m) {
  const Signature sig(N);
  const int blades = sig.blade_count();
  PolySubspace out;
  out.ambient_dim = N;
  out.degree = m;
  out.kind = SubspaceKind::monogenic;
  out.index = MonomialIndex(N, m);

  const MonomialIndex seeds(N - 1, m);
  out.generators.reserve(static_cast<std::size_t>(seeds.size()));
  out.coefficients = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.index.size()) * blades,
                                           static_cast<Eigen::Index>(seeds.size()) * blades);
  for (int beta = 0; beta < seeds.size(); ++beta) {
    Exponent e{};
    for (int i = 0; i + 1 < N; ++i) e[static_cast<std::size_t>(i + 1)] = seeds[beta][static_cast<std::size_t>(i)];
    Poly g = monogenic_extension(Poly::monomial(N, e, Mv::scalar(sig, 1.0)));
    for (int c = 0; c < blades; ++c)
      out.coefficients.col(beta * blades + c) = to_vector(g * Mv::blade(sig, static_cast<BladeMask>(c)), out.index);
    out.generators.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::shared_ptr<const PolySubspace> monogenic_basis(int N, int m) {
  if (N < 2 || N > kMaxCliffordDim || m < 0) throw std::invalid_argument("monogenic_basis needs 2 <= N <= 8 and m >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PolySubspace>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({N, m});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const PolySubspace>(build_monogenic(N, m));
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(N, m), std::move(built)).first->second;
}

FischerSplit fischer_split(const Poly& h, int m) {
  if (m < 1) throw std::invalid_argument("fischer_split needs degree m >= 1");
  const int N = h.num_vars();
  const Signature sig = h.signature();
  if (N != sig.dim()) throw std::invalid_argument("fischer_split works on R^N with N = Clifford dimension");
  if (!h.is_zero() && (h.degree() != m || !h.is_homogeneous()))
    throw NotHarmonic("fischer_split input is not homogeneous of the stated degree");

  const auto pm = monogenic_basis(N, m);
  const auto qm = monogenic_basis(N, m - 1);
  const MonomialIndex index(N, m);
  Eigen::MatrixXd system(pm->coefficients.rows(), pm->dim() + qm->dim());
  system.leftCols(pm->dim()) = pm->coefficients;
  const Poly x = Poly::position(N, sig);
  for (int i = 0; i < qm->dim(); ++i) system.col(pm->dim() + i) = to_vector(x * qm->element(i), index);

  const Eigen::VectorXd rhs = to_vector(h, index);
  const Eigen::VectorXd sol = system.colPivHouseholderQr().solve(rhs);
  const double residual = (system * sol - rhs).norm();
  if (residual > 1e-8 * std::max(rhs.norm(), 1e-300) && rhs.norm() > 0)
    throw NotHarmonic("fischer_split input is not harmonic (residual " + std::to_string(residual) + ")");

  return {pm->combination(sol.head(pm->dim())).pruned(1e-14),
          qm->combination(sol.tail(qm->dim())).pruned(1e-14)};
}

KelvinImage::KelvinImage(Poly p, int degree)
    : p_(std::move(p)), x_times_p_(multiply_by_position(p_)), degree_(degree) {
  if (p_.num_vars() != p_.signature().dim()) throw std::invalid_argument("Kelvin inversion works on R^N");
}

Mv KelvinImage::operator()(const Eigen::VectorXd& x) const {
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("Kelvin image is singular at the origin");
  const int N = p_.num_vars();
  const double scale = ((degree_ & 1) ? -1.0 : 1.0) / std::pow(r2, 0.5 * (N + 2 * degree_));
  return evaluate(x_times_p_, x) * scale;
}

KelvinImage kelvin_invert(const Poly& p, int degree) {
  const Poly dp = dirac_apply(p);
  if (dp.coefficient_norm() > 1e-10 * std::max(p.coefficient_norm(), 1e-300))
    throw std::invalid_argument("kelvin_invert needs a monogenic polynomial");
  return KelvinImage(p, degree);
}

}  // namespace dirac

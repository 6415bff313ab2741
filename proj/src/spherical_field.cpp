#include "dirac/spherical_field.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace dirac {

NotInvertible::NotInvertible(int n_, int k_, int m_)
    : std::domain_error("D_S^(" + std::to_string(k_) + ") on S^" + std::to_string(n_) +
                        " is not invertible: zero eigenvalue on degree m = " + std::to_string(m_)),
      n(n_), k(k_), m(m_) {}

SphericalField::SphericalField(int n, int band_limit) : n_(n) {
  if (n < 1 || n + 1 > kMaxCliffordDim) throw std::invalid_argument("SphericalField needs 1 <= n <= 7");
  if (band_limit < 0) throw std::invalid_argument("band limit must be >= 0");
  for (int m = 0; m <= band_limit; ++m) {
    const auto dim = static_cast<Eigen::Index>(monogenic_dimension(n + 1, m));
    components_.push_back({m, Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim)});
  }
}

SphericalField SphericalField::random(int n, int band_limit, std::mt19937_64& rng) {
  SphericalField f(n, band_limit);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (auto& c : f.components_) {
    for (Eigen::Index i = 0; i < c.a.size(); ++i) c.a(i) = unit(rng);
    for (Eigen::Index i = 0; i < c.b.size(); ++i) c.b(i) = unit(rng);
  }
  return f;
}

SphericalField SphericalField::eigenfield(int n, int m, const Eigen::Vector2d& direction, int band_limit) {
  SphericalField f(n, std::max(band_limit, m));
  auto& c = f.component(m);
  c.a(0) = direction(0);
  c.b(0) = direction(1);
  return f;
}

Poly SphericalField::ambient_polynomial() const {
  const int N = ambient_dim();
  const Signature sig(N);
  Poly p(N, sig), q(N, sig);
  for (const auto& c : components_) {
    const auto basis = monogenic_basis(N, c.m);
    if (!c.a.isZero(0.0)) p += basis->combination(c.a);
    if (!c.b.isZero(0.0)) q += basis->combination(c.b);
  }
  return p + multiply_by_position(q);
}

Mv SphericalField::evaluate(const Eigen::VectorXd& w) const {
  if (w.size() != ambient_dim()) throw std::invalid_argument("evaluation point must lie in R^{n+1}");
  return dirac::evaluate(ambient_polynomial(), w);
}

void SphericalField::check_same(const SphericalField& o) const {
  if (n_ != o.n_) throw std::invalid_argument("spherical fields live on different spheres");
}

SphericalField& SphericalField::operator+=(const SphericalField& o) {
  check_same(o);
  while (components_.size() < o.components_.size()) {
    const int m = static_cast<int>(components_.size());
    const auto dim = static_cast<Eigen::Index>(monogenic_dimension(n_ + 1, m));
    components_.push_back({m, Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim)});
  }
  for (std::size_t i = 0; i < o.components_.size(); ++i) {
    components_[i].a += o.components_[i].a;
    components_[i].b += o.components_[i].b;
  }
  return *this;
}

SphericalField& SphericalField::operator*=(double s) {
  for (auto& c : components_) {
    c.a *= s;
    c.b *= s;
  }
  return *this;
}

SphericalField apply_blocks(const SphericalField& f, const std::function<Block(int)>& block) {
  SphericalField out = f;
  for (int m = 0; m <= f.band_limit(); ++m) {
    const Block b = block(m);
    const auto& in = f.component(m);
    auto& c = out.component(m);
    c.a = b(0, 0) * in.a + b(0, 1) * in.b;
    c.b = b(1, 0) * in.a + b(1, 1) * in.b;
  }
  return out;
}

SphericalField multiply_by_w(const SphericalField& f) {
  return apply_blocks(f, [](int) { return w_block(); });
}

SphericalField gamma_w_apply(const SphericalField& f) {
  return apply_blocks(f, [n = f.n()](int m) { return gamma_block(n, m); });
}

SphericalField ds_apply(const SphericalField& f) {
  return apply_blocks(f, [n = f.n()](int m) { return ds_block(n, m); });
}

SphericalField d_alpha_apply(const SphericalField& f, double alpha) {
  return apply_blocks(f, [n = f.n(), alpha](int m) { return d_alpha_block(n, m, alpha); });
}

SphericalField delta_s_apply(const SphericalField& f) { return dsk_apply(f, 2); }
SphericalField paenitz_apply(const SphericalField& f) { return dsk_apply(f, 4); }

SphericalField dsk_apply(const SphericalField& f, int k) {
  return apply_blocks(f, [n = f.n(), k](int m) { return dsk_block(n, m, k); });
}

SphericalField laplace_beltrami_apply(const SphericalField& f) {
  return apply_blocks(f, [n = f.n()](int m) { return laplace_beltrami_block(n, m); });
}

SphericalField spectral_inverse_apply(const SphericalField& f, int k) {
  if (k < 1) throw std::invalid_argument("spectral inverse needs k >= 1");
  const int n = f.n();
  if (!dsk_invertible(k, n)) throw NotInvertible(n, k, extremal_degree(k, n));
  return apply_blocks(f, [n, k](int m) {
    const Block b = dsk_block(n, m, k);
    if (std::abs(b.determinant()) == 0.0) throw NotInvertible(n, k, m);
    return Block(b.inverse());
  });
}

double spectral_inverse_norm(int k, int n, int m_max) {
  if (!dsk_invertible(k, n)) throw NotInvertible(n, k, extremal_degree(k, n));
  double best = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    const Block inv = dsk_block(n, m, k).inverse();
    Eigen::JacobiSVD<Block> svd(inv);
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

namespace {

Eigen::MatrixXd build_gram(int N, int m) {
  const Signature sig(N);
  const int blades = sig.blade_count();
  const auto basis = monogenic_basis(N, m);
  const MonomialIndex& index = basis->index;
  const int K = index.size();

  Eigen::MatrixXd moments(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = i; j < K; ++j) moments(i, j) = moments(j, i) = sphere_monomial_moment(index[i] + index[j], N);

  const int G = static_cast<int>(basis->generators.size());
  std::vector<Eigen::MatrixXd> coeff(static_cast<std::size_t>(G));
  std::vector<Eigen::MatrixXd> smoothed(static_cast<std::size_t>(G));
  for (int g = 0; g < G; ++g) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(K, blades);
    for (const auto& [e, mv] : basis->generators[static_cast<std::size_t>(g)].terms()) c.row(index.find(e)) = mv.coeffs().transpose();
    smoothed[static_cast<std::size_t>(g)] = moments * c;
    coeff[static_cast<std::size_t>(g)] = std::move(c);
  }

  // H(beta, gamma) = int conj(g_beta) g_gamma; then <g_beta e_C, g_gamma e_D> = (H e_D)[C].
  const auto& table = product_sign_table(sig);
  Eigen::MatrixXd gram(G * blades, G * blades);
  Mv left(sig), right(sig), h(sig);
  for (int bi = 0; bi < G; ++bi) {
    for (int gi = bi; gi < G; ++gi) {
      h.mutable_coeffs().setZero();
      for (int a = 0; a < K; ++a) {
        left.mutable_coeffs() = coeff[static_cast<std::size_t>(bi)].row(a).transpose();
        if (left.is_zero()) continue;
        right.mutable_coeffs() = smoothed[static_cast<std::size_t>(gi)].row(a).transpose();
        accumulate_product(conjugation(left), right, h);
      }
      for (int C = 0; C < blades; ++C)
        for (int D = 0; D < blades; ++D) {
          const int src = C ^ D;
          const double v = table[static_cast<std::size_t>(src) * static_cast<std::size_t>(blades) + static_cast<std::size_t>(D)] * h[static_cast<BladeMask>(src)];
          gram(bi * blades + C, gi * blades + D) = v;
          gram(gi * blades + D, bi * blades + C) = v;
        }
    }
  }
  return gram;
}

}  // namespace

const Eigen::MatrixXd& gram_matrix(int N, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Eigen::MatrixXd>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({N, m});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<Eigen::MatrixXd>(build_gram(N, m));
  std::lock_guard lock(mutex);
  return *cache.emplace(std::make_pair(N, m), std::move(built)).first->second;
}

double gram_norm_squared(const SphericalField& f) {
  double total = 0.0;
  for (const auto& c : f.components()) {
    const Eigen::MatrixXd& g = gram_matrix(f.ambient_dim(), c.m);
    total += c.a.dot(g * c.a) + c.b.dot(g * c.b);
  }
  return total;
}

std::vector<Mv> sample(const SphericalField& f, const QuadratureRule& rule) {
  if (rule.n != f.n()) throw std::invalid_argument("quadrature rule is for a different sphere");
  const Poly p = f.ambient_polynomial();
  std::vector<Mv> values;
  values.reserve(static_cast<std::size_t>(rule.size()));
  for (int i = 0; i < rule.size(); ++i) values.push_back(evaluate(p, rule.nodes.col(i)));
  return values;
}

double l2_inner(const SphericalField& f, const SphericalField& g, const QuadratureRule& rule) {
  f.check_same(g);
  const int needed = f.band_limit() + g.band_limit() + 2;
  if (needed > rule.exactness)
    throw std::invalid_argument("quadrature exactness " + std::to_string(rule.exactness) + " below required degree " +
                                std::to_string(needed));
  const auto fv = sample(f, rule);
  const auto gv = sample(g, rule);
  double total = 0.0;
  for (int i = 0; i < rule.size(); ++i) total += rule.weights(i) * scalar_product(fv[static_cast<std::size_t>(i)], gv[static_cast<std::size_t>(i)]);
  return total;
}

double l2_norm(const SphericalField& f, const QuadratureRule& rule) {
  return std::sqrt(std::max(0.0, l2_inner(f, f, rule)));
}

}  // namespace dirac

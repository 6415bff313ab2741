#include "dirac/rational_field.hpp"

#include "dirac/quadrature.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <string>

namespace dirac {

NotIntegrable::NotIntegrable(int e)
    : std::domain_error("weighted integral diverges: integrand grows like r^" + std::to_string(e) +
                        " and needs r^(e + n) to decay"),
      exponent(e) {}

namespace {

Poly one_plus_r2_power(int n, int j) {
  const Signature sig(n + 1);
  Poly base = Poly::constant(n, Mv::scalar(sig, 1.0));
  for (int i = 0; i < n; ++i) base += Poly::coordinate(n, sig, i) * Poly::coordinate(n, sig, i);
  Poly out = Poly::constant(n, Mv::scalar(sig, 1.0));
  for (int i = 0; i < j; ++i) out = out * base;
  return out;
}

int parity(int s) { return ((s % 2) + 2) % 2; }

Mv evaluate_poly(const Poly& p, const Eigen::VectorXd& x) { return evaluate(p, x); }

}  // namespace

RationalField::RationalField(int n) : n_(n) {
  if (n < 1 || n + 1 > kMaxCliffordDim) throw std::invalid_argument("RationalField needs 1 <= n <= 7");
}

RationalField::RationalField(const Poly& p, int s) : RationalField(p.num_vars()) { add(p, s); }

RationalField RationalField::weight(int n, int s, const Mv& c) { return RationalField(Poly::constant(n, c), s); }

RationalField RationalField::weight(int n, int s) { return weight(n, s, Mv::scalar(Signature(n + 1), 1.0)); }

void RationalField::add(const Poly& p, int s) {
  if (p.num_vars() != n_ || !(p.signature() == signature()))
    throw std::invalid_argument("rational term must be a polynomial in n variables over Cl_{n+1}");
  if (p.is_zero()) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(s, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

int RationalField::growth() const {
  int g = INT_MIN / 2;
  for (const auto& [s, p] : terms_) g = std::max(g, p.degree() - s);
  return g;
}

int RationalField::max_degree() const {
  int d = -1;
  for (const auto& [s, p] : terms_) d = std::max(d, p.degree());
  return d;
}

RationalField RationalField::canonical(double tol) const {
  RationalField out(n_);
  for (int par = 0; par < 2; ++par) {
    int top = INT_MIN;
    for (const auto& [s, p] : terms_)
      if (parity(s) == par) top = std::max(top, s);
    if (top == INT_MIN) continue;
    Poly merged(n_, signature());
    for (const auto& [s, p] : terms_)
      if (parity(s) == par) merged += (s == top) ? p : p * one_plus_r2_power(n_, (top - s) / 2);
    out.add(merged.pruned(tol), top);
  }
  return out;
}

bool RationalField::well_formed() const {
  for (const auto& [s, p] : terms_)
    if (p.is_zero() || p.num_vars() != n_ || !(p.signature() == signature())) return false;
  return true;
}

Mv RationalField::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluation point must lie in R^n");
  const double q = 1.0 + x.squaredNorm();
  Mv out(signature());
  for (const auto& [s, p] : terms_) out += evaluate_poly(p, x) * std::pow(q, -0.5 * s);
  return out;
}

RationalField RationalField::times_weight(int j) const {
  RationalField out(n_);
  for (const auto& [s, p] : terms_) out.add(p, s - 2 * j);
  return out;
}

void RationalField::check_same(const RationalField& o) const {
  if (o.n_ != n_) throw std::invalid_argument("rational fields live on different R^n");
}

RationalField& RationalField::operator+=(const RationalField& o) {
  check_same(o);
  for (const auto& [s, p] : o.terms_) add(p, s);
  return *this;
}

RationalField& RationalField::operator-=(const RationalField& o) {
  check_same(o);
  for (const auto& [s, p] : o.terms_) add(-1.0 * p, s);
  return *this;
}

RationalField& RationalField::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, p] : terms_) p *= c;
  return *this;
}

RationalField operator*(const Mv& c, const RationalField& f) {
  RationalField out(f.n());
  for (const auto& [s, p] : f.terms()) out.add(c * p, s);
  return out;
}

RationalField operator*(const RationalField& f, const Mv& c) {
  RationalField out(f.n());
  for (const auto& [s, p] : f.terms()) out.add(p * c, s);
  return out;
}

RationalField operator*(const RationalField& f, const RationalField& g) {
  f.check_same(g);
  RationalField out(f.n());
  for (const auto& [s, p] : f.terms())
    for (const auto& [t, q] : g.terms()) out.add(p * q, s + t);
  return out;
}

RationalField d_apply_rational(const RationalField& f) {
  RationalField out(f.n());
  for (const auto& [s, p] : f.terms()) {
    out.add(dirac_apply(p), s);
    if (s != 0) out.add(-double(s) * multiply_by_position(p), s + 2);
  }
  return out.canonical();
}

RationalField d_power_apply(const RationalField& f, int k) {
  if (k < 0) throw std::invalid_argument("D^k needs k >= 0");
  RationalField out = f;
  for (int i = 0; i < k; ++i) out = d_apply_rational(out);
  return out;
}

RationalField laplacian_power_apply(const RationalField& f, int j) {
  return ((j % 2) ? -1.0 : 1.0) * d_power_apply(f, 2 * j);
}

namespace {

// Values of a field on the nodes (t_i, u_j), column i * nu + j, one row per blade.
class RaySampler {
 public:
  RaySampler(const RationalField& f, const QuadratureRule& dirs) : blades_(f.signature().blade_count()) {
    for (const auto& [s, p] : f.terms())
      for (int d = p.min_degree(); d <= p.degree(); ++d) {
        const Poly part = p.homogeneous_part(d);
        if (part.is_zero()) continue;
        Eigen::MatrixXd values(blades_, dirs.size());
        for (int j = 0; j < dirs.size(); ++j) values.col(j) = evaluate_poly(part, Eigen::VectorXd(dirs.nodes.col(j))).coeffs();
        pieces_.push_back({s, d, std::move(values)});
      }
  }

  void fill(const Eigen::VectorXd& t, Eigen::Ref<Eigen::MatrixXd> out) const {
    out.setZero();
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double sn = std::sin(t(i)), cs = std::cos(t(i));
      auto block = out.middleCols(i * nu(), nu());
      for (const auto& piece : pieces_) block += (std::pow(sn, piece.d) * std::pow(cs, piece.s - piece.d)) * piece.values;
    }
  }

  int nu() const { return pieces_.empty() ? 0 : static_cast<int>(pieces_.front().values.cols()); }

 private:
  struct Piece {
    int s;
    int d;
    Eigen::MatrixXd values;
  };
  int blades_;
  std::vector<Piece> pieces_;
};

void require_integrable(const RationalField& f, const RationalField& g, int weight) {
  const int e = f.growth() + g.growth() + 2 * weight;
  if (e + f.n() >= 0) throw NotIntegrable(e);
}

Eigen::VectorXd radial_weights(const GaussRule& t, int n, int weight) {
  Eigen::VectorXd w(t.nodes.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w(i) = t.weights(i) * std::pow(std::sin(t.nodes(i)), n - 1) * std::pow(std::cos(t.nodes(i)), -(n + 1 + 2 * weight));
  return w;
}

double inner_on(const RationalField& f, const RationalField& g, int weight, int count) {
  const int n = f.n();
  const auto dirs = sphere_rule(n - 1, std::max(f.max_degree() + g.max_degree(), 0));
  const GaussRule t = gauss_legendre(count, 0.0, 0.5 * std::numbers::pi);
  const RaySampler sf(f, *dirs), sg(g, *dirs);
  const int blades = f.signature().blade_count();
  const int nu = dirs->size();
  Eigen::MatrixXd vf(blades, count * nu), vg(blades, count * nu);
  sf.fill(t.nodes, vf);
  sg.fill(t.nodes, vg);
  const Eigen::VectorXd rw = radial_weights(t, n, weight);
  // Sc(conj(A) B) is the coefficient dot product.
  const Eigen::RowVectorXd dots = (vf.array() * vg.array()).colwise().sum();
  double total = 0;
  for (int i = 0; i < count; ++i) total += rw(i) * dots.segment(i * nu, nu).dot(dirs->weights);
  return total;
}

}  // namespace

WeightedIntegral weighted_inner_estimate(const RationalField& f, const RationalField& g, int weight,
                                         const RadialOptions& opts) {
  if (f.n() != g.n()) throw std::invalid_argument("rational fields live on different R^n");
  if (f.n() < 2) throw std::invalid_argument("weighted integrals need n >= 2");
  if (opts.radial_nodes < 4) throw std::invalid_argument("radial rule needs at least 4 nodes");
  if (f.is_zero() || g.is_zero()) return {};
  RationalField cf = f, cg = g;
  try {
    require_integrable(cf, cg, weight);
  } catch (const NotIntegrable&) {
    cf = f.canonical();
    cg = g.canonical();
    require_integrable(cf, cg, weight);
  }
  const double fine = inner_on(cf, cg, weight, opts.radial_nodes);
  const double coarse = inner_on(cf, cg, weight, opts.radial_nodes / 2);
  return {fine, std::abs(fine - coarse)};
}

double weighted_inner(const RationalField& f, const RationalField& g, int weight, const RadialOptions& opts) {
  return weighted_inner_estimate(f, g, weight, opts).value;
}

WeightedIntegral weighted_l2_estimate(const RationalField& f, int weight, const RadialOptions& opts) {
  return weighted_inner_estimate(f, f, weight, opts);
}

double weighted_l2(const RationalField& f, int weight, const RadialOptions& opts) {
  return weighted_l2_estimate(f, weight, opts).value;
}

std::vector<Mv> weighted_gram(const std::vector<RationalField>& fields, int weight, const RadialOptions& opts) {
  if (fields.empty()) return {};
  const int n = fields.front().n();
  if (n < 2) throw std::invalid_argument("weighted integrals need n >= 2");
  const Signature sig(n + 1);
  const int blades = sig.blade_count();
  const int count = static_cast<int>(fields.size());
  int degree = 0;
  for (const auto& f : fields) {
    if (f.n() != n) throw std::invalid_argument("rational fields live on different R^n");
    require_integrable(f, f, weight);
    degree = std::max(degree, f.max_degree());
  }
  const auto dirs = sphere_rule(n - 1, 2 * degree);
  const GaussRule t = gauss_legendre(opts.radial_nodes, 0.0, 0.5 * std::numbers::pi);
  const Eigen::VectorXd rw = radial_weights(t, n, weight);
  const int nu = dirs->size();
  const Eigen::Index nodes = static_cast<Eigen::Index>(opts.radial_nodes) * nu;

  // Rows are nodes scaled by sqrt(weight); columns are (field, blade).
  Eigen::MatrixXd samples(nodes, static_cast<Eigen::Index>(count) * blades);
  Eigen::VectorXd root(nodes);
  for (int i = 0; i < opts.radial_nodes; ++i)
    for (int j = 0; j < nu; ++j) root(i * nu + j) = std::sqrt(rw(i) * dirs->weights(j));
  Eigen::MatrixXd values(blades, nodes);
  for (int a = 0; a < count; ++a) {
    if (fields[static_cast<std::size_t>(a)].is_zero()) {
      samples.middleCols(a * blades, blades).setZero();
      continue;
    }
    RaySampler(fields[static_cast<std::size_t>(a)], *dirs).fill(t.nodes, values);
    samples.middleCols(a * blades, blades) = root.asDiagonal() * values.transpose();
  }
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(samples.cols(), samples.cols());
  z.selfadjointView<Eigen::Lower>().rankUpdate(samples.transpose());
  z.triangularView<Eigen::StrictlyUpper>() = z.transpose();

  const auto& table = product_sign_table(sig);
  std::vector<Mv> out(static_cast<std::size_t>(count) * static_cast<std::size_t>(count), Mv(sig));
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      auto& h = out[static_cast<std::size_t>(a * count + b)].mutable_coeffs();
      for (int A = 0; A < blades; ++A) {
        const int r = grade(static_cast<BladeMask>(A));
        const double conj_sign = ((r * (r + 1) / 2) % 2) ? -1.0 : 1.0;
        for (int B = 0; B < blades; ++B) {
          const double sign = conj_sign * table[static_cast<std::size_t>(A * blades + B)];
          h(A ^ B) += sign * z(a * blades + A, b * blades + B);
        }
      }
    }
  return out;
}

Eigen::MatrixXd right_module_form(const std::vector<Mv>& gram, int count) {
  if (static_cast<int>(gram.size()) != count * count || count == 0)
    throw std::invalid_argument("Gram array does not match the field count");
  const Signature sig = gram.front().signature();
  const int blades = sig.blade_count();
  const auto& table = product_sign_table(sig);
  Eigen::MatrixXd g(count * blades, count * blades);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      const Mv& h = gram[static_cast<std::size_t>(a * count + b)];
      for (int C = 0; C < blades; ++C)
        for (int D = 0; D < blades; ++D)
          g(a * blades + C, b * blades + D) = table[static_cast<std::size_t>((C ^ D) * blades + D)] * h[static_cast<BladeMask>(C ^ D)];
    }
  return g;
}

}  // namespace dirac

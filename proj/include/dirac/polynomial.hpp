#pragma once

// Clifford-valued polynomials on R^num_vars with coefficients in Cl_N.
//
// num_vars may be smaller than N: the Euclidean side works in R^n inside
// Cl_{n+1}, the sphere side in R^{n+1} = R^N. Differential operators only use
// the generators e_1..e_{num_vars}.

#include "dirac/clifford.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace dirac {

using Exponent = std::array<std::uint8_t, kMaxCliffordDim>;

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

inline Exponent unit_exponent(int j) {
  Exponent e{};
  e[static_cast<std::size_t>(j)] = 1;
  return e;
}

inline Exponent operator+(Exponent a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return a;
}

template <typename Scalar>
class MvPolynomial {
 public:
  using Coefficient = Multivector<Scalar>;
  using TermMap = std::map<Exponent, Coefficient>;

  MvPolynomial(int num_vars, Signature sig) : num_vars_(num_vars), sig_(sig) {
    if (num_vars < 1 || num_vars > sig.dim())
      throw std::invalid_argument("polynomial needs 1 <= num_vars <= N");
  }

  static MvPolynomial constant(int num_vars, const Coefficient& c) {
    MvPolynomial p(num_vars, c.signature());
    p.add_term(Exponent{}, c);
    return p;
  }

  static MvPolynomial monomial(int num_vars, const Exponent& e, const Coefficient& c) {
    MvPolynomial p(num_vars, c.signature());
    p.add_term(e, c);
    return p;
  }

  // Scalar-valued coordinate x_{j+1}.
  static MvPolynomial coordinate(int num_vars, Signature sig, int j) {
    return monomial(num_vars, unit_exponent(j), Coefficient::scalar(sig, Scalar(1)));
  }

  // x = sum_{j < num_vars} x_j e_j.
  static MvPolynomial position(int num_vars, Signature sig) {
    MvPolynomial p(num_vars, sig);
    for (int j = 0; j < num_vars; ++j) p.add_term(unit_exponent(j), Coefficient::basis_vector(sig, j));
    return p;
  }

  int num_vars() const { return num_vars_; }
  Signature signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  int min_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = (d < 0) ? total_degree(e) : std::min(d, total_degree(e));
    return d;
  }

  bool is_homogeneous() const { return degree() == min_degree(); }

  void add_term(const Exponent& e, const Coefficient& c) {
    if (!(c.signature() == sig_)) throw std::invalid_argument("Clifford signature mismatch");
    for (int j = num_vars_; j < kMaxCliffordDim; ++j)
      if (e[static_cast<std::size_t>(j)] != 0) throw std::invalid_argument("exponent uses a missing variable");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MvPolynomial homogeneous_part(int d) const {
    MvPolynomial out(num_vars_, sig_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
  }

  // Drops coefficients whose norm is below tol times the largest coefficient norm.
  MvPolynomial pruned(Scalar tol) const {
    Scalar biggest = 0;
    for (const auto& [e, c] : terms_) biggest = std::max(biggest, norm(c));
    MvPolynomial out(num_vars_, sig_);
    for (const auto& [e, c] : terms_)
      if (norm(c) > tol * biggest) out.terms_.emplace(e, c);
    return out;
  }

  Scalar coefficient_norm() const {
    Scalar s = 0;
    for (const auto& [e, c] : terms_) s += norm_squared(c);
    return std::sqrt(s);
  }

  MvPolynomial& operator+=(const MvPolynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MvPolynomial& operator-=(const MvPolynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MvPolynomial& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MvPolynomial operator+(MvPolynomial a, const MvPolynomial& b) { return a += b; }
  friend MvPolynomial operator-(MvPolynomial a, const MvPolynomial& b) { return a -= b; }
  friend MvPolynomial operator-(MvPolynomial a) { return a *= Scalar(-1); }
  friend MvPolynomial operator*(MvPolynomial a, Scalar s) { return a *= s; }
  friend MvPolynomial operator*(Scalar s, MvPolynomial a) { return a *= s; }

  void check_same(const MvPolynomial& o) const {
    if (num_vars_ != o.num_vars_ || !(sig_ == o.sig_))
      throw std::invalid_argument("polynomial shape mismatch");
  }

 private:
  int num_vars_;
  Signature sig_;
  TermMap terms_;
};

// Pointwise Clifford product (a*b)(x) = a(x) b(x).
template <typename Scalar>
MvPolynomial<Scalar> operator*(const MvPolynomial<Scalar>& a, const MvPolynomial<Scalar>& b) {
  a.check_same(b);
  MvPolynomial<Scalar> out(a.num_vars(), a.signature());
  Multivector<Scalar> prod(a.signature());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      prod.mutable_coeffs().setZero();
      accumulate_product(ca, cb, prod);
      out.add_term(ea + eb, prod);
    }
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> operator*(const Multivector<Scalar>& c, const MvPolynomial<Scalar>& p) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  for (const auto& [e, coeff] : p.terms()) out.add_term(e, c * coeff);
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> operator*(const MvPolynomial<Scalar>& p, const Multivector<Scalar>& c) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  for (const auto& [e, coeff] : p.terms()) out.add_term(e, coeff * c);
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> partial(const MvPolynomial<Scalar>& p, int j) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  const auto jj = static_cast<std::size_t>(j);
  for (const auto& [e, c] : p.terms()) {
    if (e[jj] == 0) continue;
    Exponent d = e;
    d[jj] = static_cast<std::uint8_t>(d[jj] - 1);
    out.add_term(d, c * Scalar(e[jj]));
  }
  return out;
}

// D p = sum_j e_j dp/dx_j, generators acting from the left.
template <typename Scalar>
MvPolynomial<Scalar> dirac_apply(const MvPolynomial<Scalar>& p) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  for (int j = 0; j < p.num_vars(); ++j) {
    const auto ej = Multivector<Scalar>::basis_vector(p.signature(), j);
    out += ej * partial(p, j);
  }
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> euler_apply(const MvPolynomial<Scalar>& p) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c * Scalar(total_degree(e)));
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> laplacian_apply(const MvPolynomial<Scalar>& p) {
  MvPolynomial<Scalar> out(p.num_vars(), p.signature());
  for (int j = 0; j < p.num_vars(); ++j) out += partial(partial(p, j), j);
  return out;
}

template <typename Scalar>
MvPolynomial<Scalar> multiply_by_position(const MvPolynomial<Scalar>& p) {
  return MvPolynomial<Scalar>::position(p.num_vars(), p.signature()) * p;
}

// Gamma p = x D p + E p; degree-m monogenics are eigenvectors with eigenvalue m.
template <typename Scalar>
MvPolynomial<Scalar> gamma_apply(const MvPolynomial<Scalar>& p) {
  return multiply_by_position(dirac_apply(p)) + euler_apply(p);
}

template <typename Scalar, typename Point>
Multivector<Scalar> evaluate(const MvPolynomial<Scalar>& p, const Point& x) {
  if (static_cast<int>(x.size()) < p.num_vars()) throw std::invalid_argument("evaluation point too short");
  const int deg = std::max(p.degree(), 0);
  std::vector<Scalar> powers(static_cast<std::size_t>(p.num_vars() * (deg + 1)));
  for (int j = 0; j < p.num_vars(); ++j) {
    Scalar v = 1;
    for (int k = 0; k <= deg; ++k) {
      powers[static_cast<std::size_t>(j * (deg + 1) + k)] = v;
      v *= x[j];
    }
  }
  Multivector<Scalar> out(p.signature());
  auto& oc = out.mutable_coeffs();
  for (const auto& [e, c] : p.terms()) {
    Scalar mono = 1;
    for (int j = 0; j < p.num_vars(); ++j)
      mono *= powers[static_cast<std::size_t>(j * (deg + 1) + e[static_cast<std::size_t>(j)])];
    oc += mono * c.coeffs();
  }
  return out;
}

// Enumeration of the degree-m monomials in num_vars variables, in lexicographic order
// on the exponent array.
class MonomialIndex {
 public:
  MonomialIndex(int num_vars, int degree) : num_vars_(num_vars), degree_(degree) {
    if (degree < 0) return;
    Exponent e{};
    fill(e, 0, degree);
    std::sort(exponents_.begin(), exponents_.end());
    for (std::size_t i = 0; i < exponents_.size(); ++i) lookup_.emplace(exponents_[i], static_cast<int>(i));
  }

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const Exponent& operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  // -1 when e is not a degree-m monomial in these variables.
  int find(const Exponent& e) const {
    auto it = lookup_.find(e);
    return it == lookup_.end() ? -1 : it->second;
  }

 private:
  void fill(Exponent& e, int var, int remaining) {
    if (var == num_vars_ - 1) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
      exponents_.push_back(e);
      e[static_cast<std::size_t>(var)] = 0;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(k);
      fill(e, var + 1, remaining - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  }

  int num_vars_;
  int degree_;
  std::vector<Exponent> exponents_;
  std::map<Exponent, int> lookup_;
};

// Flattened coefficients: entry monomial_index * 2^N + blade.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> to_vector(const MvPolynomial<Scalar>& p, const MonomialIndex& index) {
  const int blades = p.signature().blade_count();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(index.size() * blades);
  for (const auto& [e, c] : p.terms()) {
    const int i = index.find(e);
    if (i < 0) throw std::invalid_argument("polynomial has a monomial outside the index");
    v.segment(i * blades, blades) = c.coeffs();
  }
  return v;
}

template <typename Scalar, typename Vec>
MvPolynomial<Scalar> from_vector(const Vec& v, const MonomialIndex& index, Signature sig) {
  const int blades = sig.blade_count();
  if (v.size() != index.size() * blades) throw std::invalid_argument("coefficient vector has the wrong length");
  MvPolynomial<Scalar> p(index.num_vars(), sig);
  for (int i = 0; i < index.size(); ++i) {
    typename Multivector<Scalar>::Coeffs c = v.segment(i * blades, blades);
    if (!c.isZero(Scalar(0))) p.add_term(index[i], Multivector<Scalar>(sig, std::move(c)));
  }
  return p;
}

using Poly = MvPolynomial<double>;

}  // namespace dirac

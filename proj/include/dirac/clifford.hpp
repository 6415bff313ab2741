#pragma once

// Real Clifford algebra Cl_N with e_i^2 = -1, stored densely over the 2^N blades.
//
// Blades are indexed by bitmask: bit i set means e_{i+1} is present, and the
// generators of a blade are always written in ascending order.

#include <Eigen/Core>

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

inline constexpr int kMaxCliffordDim = 8;

using BladeMask = std::uint32_t;

class Signature {
 public:
  explicit Signature(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxCliffordDim)
      throw std::invalid_argument("Clifford dimension must lie in [1, 8], got " +
                                  std::to_string(dim));
  }

  int dim() const { return dim_; }
  int blade_count() const { return 1 << dim_; }

  friend bool operator==(Signature a, Signature b) { return a.dim_ == b.dim_; }

 private:
  int dim_;
};

inline int grade(BladeMask mask) { return std::popcount(mask); }

// Sign of e_A e_B = sign * e_{A xor B}: one sign per transposition needed to
// sort the concatenated generator list, one more per repeated generator.
inline int blade_product_sign(BladeMask a, BladeMask b) {
  int swaps = 0;
  for (BladeMask rest = a >> 1; rest != 0; rest >>= 1) swaps += std::popcount(rest & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

namespace detail {

struct SignTable {
  std::once_flag once;
  std::vector<std::int8_t> signs;
};

inline SignTable& sign_table_slot(int dim) {
  static std::array<SignTable, kMaxCliffordDim + 1> tables;
  return tables[static_cast<std::size_t>(dim)];
}

}  // namespace detail

// Row-major table of blade_product_sign for all blade pairs of Cl_dim, built once.
inline const std::vector<std::int8_t>& product_sign_table(Signature sig) {
  auto& slot = detail::sign_table_slot(sig.dim());
  std::call_once(slot.once, [&slot, sig] {
    const auto count = static_cast<std::size_t>(sig.blade_count());
    slot.signs.resize(count * count);
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        slot.signs[a * count + b] = static_cast<std::int8_t>(
            blade_product_sign(static_cast<BladeMask>(a), static_cast<BladeMask>(b)));
  });
  return slot.signs;
}

template <typename Scalar>
class Multivector {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Multivector(Signature sig) : sig_(sig), coeffs_(Coeffs::Zero(sig.blade_count())) {}

  Multivector(Signature sig, Coeffs coeffs) : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.blade_count())
      throw std::invalid_argument("coefficient vector length does not match 2^N");
    if (!coeffs_.allFinite()) throw std::domain_error("multivector coefficients must be finite");
  }

  static Multivector scalar(Signature sig, Scalar value) {
    Multivector out(sig);
    out.coeffs_[0] = value;
    return out;
  }

  static Multivector blade(Signature sig, BladeMask mask, Scalar value = Scalar(1)) {
    if (mask >= static_cast<BladeMask>(sig.blade_count()))
      throw std::invalid_argument("blade mask outside the algebra");
    Multivector out(sig);
    out.coeffs_[mask] = value;
    return out;
  }

  // e_{index+1}, zero-based.
  static Multivector basis_vector(Signature sig, int index) {
    if (index < 0 || index >= sig.dim()) throw std::invalid_argument("generator index out of range");
    return blade(sig, BladeMask{1} << index);
  }

  // Grade-1 element sum_i components[i] e_{i+1}; components may be shorter than N.
  template <typename Vec>
  static Multivector vector(Signature sig, const Vec& components) {
    if (static_cast<int>(components.size()) > sig.dim())
      throw std::invalid_argument("vector has more components than generators");
    Multivector out(sig);
    for (int i = 0; i < static_cast<int>(components.size()); ++i)
      out.coeffs_[BladeMask{1} << i] = components[i];
    return out;
  }

  Signature signature() const { return sig_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& mutable_coeffs() { return coeffs_; }

  Scalar operator[](BladeMask mask) const { return coeffs_[mask]; }
  Scalar& operator[](BladeMask mask) { return coeffs_[mask]; }

  bool is_zero() const { return coeffs_.isZero(Scalar(0)); }

  Multivector& operator+=(const Multivector& other) {
    check_same(other);
    coeffs_ += other.coeffs_;
    return *this;
  }
  Multivector& operator-=(const Multivector& other) {
    check_same(other);
    coeffs_ -= other.coeffs_;
    return *this;
  }
  Multivector& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }
  Multivector& operator/=(Scalar s) {
    coeffs_ /= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) {
    a.coeffs_ = -a.coeffs_;
    return a;
  }
  friend Multivector operator*(Multivector a, Scalar s) { return a *= s; }
  friend Multivector operator*(Scalar s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, Scalar s) { return a /= s; }

  void check_same(const Multivector& other) const {
    if (!(sig_ == other.sig_)) throw std::invalid_argument("Clifford signature mismatch");
  }

 private:
  Signature sig_;
  Coeffs coeffs_;
};

// out += a * b, without allocating.
template <typename Scalar>
void accumulate_product(const Multivector<Scalar>& a, const Multivector<Scalar>& b,
                        Multivector<Scalar>& out) {
  a.check_same(b);
  a.check_same(out);
  const auto& table = product_sign_table(a.signature());
  const auto count = static_cast<std::size_t>(a.signature().blade_count());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  auto& oc = out.mutable_coeffs();
  for (std::size_t i = 0; i < count; ++i) {
    const Scalar ai = ac[static_cast<Eigen::Index>(i)];
    if (ai == Scalar(0)) continue;
    const std::int8_t* row = table.data() + i * count;
    for (std::size_t j = 0; j < count; ++j) {
      const Scalar bj = bc[static_cast<Eigen::Index>(j)];
      if (bj == Scalar(0)) continue;
      oc[static_cast<Eigen::Index>(i ^ j)] += Scalar(row[j]) * ai * bj;
    }
  }
}

template <typename Scalar>
Multivector<Scalar> geometric_product(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  Multivector<Scalar> out(a.signature());
  accumulate_product(a, b, out);
  return out;
}

template <typename Scalar>
Multivector<Scalar> operator*(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  return geometric_product(a, b);
}

namespace detail {

template <typename Scalar, typename SignFn>
Multivector<Scalar> scale_by_grade(const Multivector<Scalar>& a, SignFn sign) {
  Multivector<Scalar> out = a;
  for (BladeMask m = 0; m < static_cast<BladeMask>(a.signature().blade_count()); ++m)
    if (sign(grade(m)) < 0) out[m] = -out[m];
  return out;
}

}  // namespace detail

// ~ : reverses the generator order, grade r scaled by (-1)^{r(r-1)/2}.
template <typename Scalar>
Multivector<Scalar> reversion(const Multivector<Scalar>& a) {
  return detail::scale_by_grade(a, [](int r) { return ((r * (r - 1) / 2) & 1) ? -1 : 1; });
}

// Bar map: reversion combined with e_i -> -e_i, grade r scaled by (-1)^{r(r+1)/2}.
template <typename Scalar>
Multivector<Scalar> conjugation(const Multivector<Scalar>& a) {
  return detail::scale_by_grade(a, [](int r) { return ((r * (r + 1) / 2) & 1) ? -1 : 1; });
}

template <typename Scalar>
Multivector<Scalar> grade_involution(const Multivector<Scalar>& a) {
  return detail::scale_by_grade(a, [](int r) { return (r & 1) ? -1 : 1; });
}

template <typename Scalar>
Scalar scalar_part(const Multivector<Scalar>& a) {
  return a[0];
}

template <typename Scalar>
Scalar norm_squared(const Multivector<Scalar>& a) {
  return a.coeffs().squaredNorm();
}

template <typename Scalar>
Scalar norm(const Multivector<Scalar>& a) {
  return a.coeffs().norm();
}

// Sc(conj(a) b), the real inner product behind all L2 norms.
template <typename Scalar>
Scalar scalar_product(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  a.check_same(b);
  return a.coeffs().dot(b.coeffs());
}

template <typename Scalar>
Multivector<Scalar> grade_part(const Multivector<Scalar>& a, int r) {
  Multivector<Scalar> out(a.signature());
  for (BladeMask m = 0; m < static_cast<BladeMask>(a.signature().blade_count()); ++m)
    if (grade(m) == r) out[m] = a[m];
  return out;
}

// True when everything outside grade r is below tol relative to the norm.
template <typename Scalar>
bool is_grade(const Multivector<Scalar>& a, int r, Scalar tol = Scalar(1e-12)) {
  const Scalar total = norm(a);
  const Scalar rest = norm(a - grade_part(a, r));
  return rest <= tol * std::max(total, Scalar(1e-300));
}

template <typename Scalar>
std::vector<Scalar> vector_components(const Multivector<Scalar>& a) {
  std::vector<Scalar> out(static_cast<std::size_t>(a.signature().dim()));
  for (int i = 0; i < a.signature().dim(); ++i) out[static_cast<std::size_t>(i)] = a[BladeMask{1} << i];
  return out;
}

// x^{-1} = -x / |x|^2 for nonzero grade-1 x.
template <typename Scalar>
Multivector<Scalar> vector_inverse(const Multivector<Scalar>& x) {
  const Scalar n2 = norm_squared(x);
  if (n2 == Scalar(0)) throw std::domain_error("vector_inverse of the zero vector");
  if (!is_grade(x, 1, Scalar(0))) throw std::invalid_argument("vector_inverse needs a grade-1 element");
  return -x / n2;
}

// Inverse of a GPin element via conj(A) A = |A|^2.
template <typename Scalar>
Multivector<Scalar> versor_inverse(const Multivector<Scalar>& a) {
  const Scalar n2 = norm_squared(a);
  if (n2 == Scalar(0)) throw std::domain_error("versor_inverse of zero");
  return conjugation(a) / n2;
}

// Debug form: "c * e1e2 + ..." with blades in mask order; zero prints as "0".
template <typename Scalar>
std::string to_string(const Multivector<Scalar>& a) {
  std::ostringstream out;
  bool first = true;
  for (BladeMask m = 0; m < static_cast<BladeMask>(a.signature().blade_count()); ++m) {
    const Scalar c = a[m];
    if (c == Scalar(0)) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << std::abs(c) << " * ";
    if (m == 0) out << "1";
    for (int i = 0; i < a.signature().dim(); ++i)
      if (m & (BladeMask{1} << i)) out << "e" << (i + 1);
  }
  return first ? std::string("0") : out.str();
}

// A GPin element certified by the list of nonzero vectors whose product it is.
template <typename Scalar>
class Versor {
 public:
  static Versor from_factors(std::vector<Multivector<Scalar>> factors) {
    if (factors.empty()) throw std::invalid_argument("a versor needs at least one factor");
    Multivector<Scalar> value = Multivector<Scalar>::scalar(factors.front().signature(), Scalar(1));
    for (const auto& f : factors) {
      if (!is_grade(f, 1, Scalar(0))) throw std::invalid_argument("versor factor is not grade-1");
      if (norm_squared(f) == Scalar(0)) throw std::invalid_argument("versor factor is zero");
      value = value * f;
    }
    return Versor(std::move(factors), std::move(value));
  }

  const Multivector<Scalar>& value() const { return value_; }
  const std::vector<Multivector<Scalar>>& factors() const { return factors_; }
  Signature signature() const { return value_.signature(); }

 private:
  Versor(std::vector<Multivector<Scalar>> factors, Multivector<Scalar> value)
      : factors_(std::move(factors)), value_(std::move(value)) {}

  std::vector<Multivector<Scalar>> factors_;
  Multivector<Scalar> value_;
};

// Product of num_factors vectors with components uniform in [-1,1]; draws with
// norm below 1e-3 are rejected.
template <typename Rng>
Versor<double> random_versor(Rng& rng, Signature sig, int num_factors) {
  if (num_factors < 1) throw std::invalid_argument("random_versor needs num_factors >= 1");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Multivector<double>> factors;
  factors.reserve(static_cast<std::size_t>(num_factors));
  while (static_cast<int>(factors.size()) < num_factors) {
    std::vector<double> comps(static_cast<std::size_t>(sig.dim()));
    for (auto& c : comps) c = unit(rng);
    auto v = Multivector<double>::vector(sig, comps);
    if (norm(v) < 1e-3) continue;
    factors.push_back(std::move(v));
  }
  return Versor<double>::from_factors(std::move(factors));
}

template <typename Rng>
Multivector<double> random_multivector(Rng& rng, Signature sig) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Multivector<double> out(sig);
  for (int i = 0; i < sig.blade_count(); ++i) out[static_cast<BladeMask>(i)] = unit(rng);
  return out;
}

using Mv = Multivector<double>;

}  // namespace dirac

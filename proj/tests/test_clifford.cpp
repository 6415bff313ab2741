#include "dirac/clifford.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dirac;

namespace {

Mv e(Signature s, int i) { return Mv::basis_vector(s, i - 1); }

bool close(const Mv& a, const Mv& b, double tol = 1e-12) {
  return norm(a - b) <= tol * std::max(1.0, std::max(norm(a), norm(b)));
}

}  // namespace

TEST_CASE("generators square to -1 and anticommute") {
  for (int N = 1; N <= 8; ++N) {
    const Signature s(N);
    for (int i = 1; i <= N; ++i) {
      CHECK((e(s, i) * e(s, i)).coeffs() == Mv::scalar(s, -1.0).coeffs());
      for (int j = 1; j <= N; ++j)
        if (i != j) CHECK((e(s, i) * e(s, j) + e(s, j) * e(s, i)).is_zero());
    }
  }
}

TEST_CASE("worked products") {
  const Signature s(3);
  CHECK((e(s, 1) * e(s, 2)).coeffs() == Mv::blade(s, 0b011).coeffs());
  CHECK((e(s, 2) * e(s, 1)).coeffs() == Mv::blade(s, 0b011, -1.0).coeffs());
  const Mv one = Mv::scalar(s, 1.0);
  CHECK(((one + e(s, 1)) * (one - e(s, 1))).coeffs() == Mv::scalar(s, 2.0).coeffs());
}

TEST_CASE("signature mismatch is an error") {
  CHECK_THROWS_AS(Mv::scalar(Signature(2), 1.0) * Mv::scalar(Signature(3), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Signature(9), std::invalid_argument);
  CHECK_THROWS_AS(Signature(0), std::invalid_argument);
}

TEST_CASE("product matches the naive word expander") {
  std::mt19937_64 rng(11);
  for (int N = 1; N <= 5; ++N) {
    const Signature s(N);
    for (int t = 0; t < 20; ++t) {
      const Mv a = random_multivector(rng, s), b = random_multivector(rng, s);
      CHECK(close(a * b, oracle::naive_product(a, b)));
    }
  }
}

TEST_CASE("product is associative") {
  std::mt19937_64 rng(12);
  for (int N = 1; N <= 6; ++N) {
    const Signature s(N);
    for (int t = 0; t < 20; ++t) {
      const Mv a = random_multivector(rng, s), b = random_multivector(rng, s), c = random_multivector(rng, s);
      CHECK(close((a * b) * c, a * (b * c), 1e-12));
    }
  }
}

TEST_CASE("involution signs on blades") {
  const Signature s(3);
  CHECK(reversion(Mv::blade(s, 0b011)).coeffs() == Mv::blade(s, 0b011, -1.0).coeffs());
  CHECK(reversion(Mv::blade(s, 0b111)).coeffs() == Mv::blade(s, 0b111, -1.0).coeffs());
  CHECK(reversion(Mv::scalar(s, 5.0)).coeffs() == Mv::scalar(s, 5.0).coeffs());
  CHECK(conjugation(e(s, 1)).coeffs() == (-e(s, 1)).coeffs());
  CHECK(conjugation(Mv::blade(s, 0b011)).coeffs() == Mv::blade(s, 0b011, -1.0).coeffs());
  CHECK(conjugation(Mv::scalar(s, 1.0)).coeffs() == Mv::scalar(s, 1.0).coeffs());
}

TEST_CASE("involutions are involutive anti-homomorphisms") {
  std::mt19937_64 rng(13);
  for (int N = 1; N <= 6; ++N) {
    const Signature s(N);
    for (int t = 0; t < 25; ++t) {
      const Mv a = random_multivector(rng, s), b = random_multivector(rng, s);
      CHECK(reversion(reversion(a)).coeffs() == a.coeffs());
      CHECK(conjugation(conjugation(a)).coeffs() == a.coeffs());
      CHECK(close(reversion(a * b), reversion(b) * reversion(a)));
      CHECK(close(conjugation(a * b), conjugation(b) * conjugation(a)));
    }
  }
}

TEST_CASE("scalar part and the bar-norm identity") {
  const Signature s(2);
  const Mv a = Mv::scalar(s, 3.0) + 2.0 * e(s, 1);
  CHECK(scalar_part(a) == 3.0);
  CHECK(scalar_part(Mv::blade(s, 0b11)) == 0.0);
  const Mv one_plus = Mv::scalar(s, 1.0) + e(s, 1);
  const Mv expanded = oracle::naive_product(conjugation(one_plus), one_plus);
  CHECK(scalar_part(conjugation(one_plus) * one_plus) == doctest::Approx(expanded[0]));
  CHECK(scalar_part(conjugation(one_plus) * one_plus) == doctest::Approx(2.0));
}

TEST_CASE("Sc(conj(A) B) is the coefficient dot product") {
  std::mt19937_64 rng(14);
  for (int N = 1; N <= 6; ++N) {
    const Signature s(N);
    const Mv a = random_multivector(rng, s), b = random_multivector(rng, s);
    CHECK(scalar_part(conjugation(a) * b) == doctest::Approx(scalar_product(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("vector inverse") {
  const Signature s(3);
  CHECK(close(vector_inverse(e(s, 1)), -e(s, 1)));
  CHECK(close(vector_inverse(2.0 * e(s, 2)), -0.5 * e(s, 2)));
  const Mv x = e(s, 1) + e(s, 2);
  CHECK(close(vector_inverse(x), -0.5 * x));
  CHECK(close(oracle::naive_product(x, vector_inverse(x)), Mv::scalar(s, 1.0)));
  CHECK_THROWS_AS(vector_inverse(Mv(s)), std::domain_error);
  CHECK_THROWS_AS(vector_inverse(Mv::scalar(s, 1.0) + e(s, 1)), std::invalid_argument);

  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> c(3);
    for (auto& v : c) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const Mv y = Mv::vector(s, c);
    CHECK(close(y * vector_inverse(y), Mv::scalar(s, 1.0)));
  }
}

TEST_CASE("random versors") {
  std::mt19937_64 rng(16);
  const Signature s(4);
  const auto v1 = random_versor(rng, s, 1);
  CHECK(is_grade(v1.value(), 1));
  const auto v2 = random_versor(rng, s, 2);
  for (BladeMask m = 0; m < 16; ++m)
    if (grade(m) % 2) CHECK(v2.value()[m] == doctest::Approx(0.0));
  for (int f = 1; f <= 5; ++f) {
    const auto v = random_versor(rng, s, f);
    const Mv bar_a = conjugation(v.value()) * v.value();
    CHECK(norm(bar_a - grade_part(bar_a, 0)) <= 1e-12 * norm_squared(v.value()));
    CHECK(scalar_part(bar_a) == doctest::Approx(norm_squared(v.value())).epsilon(1e-12));
    CHECK(scalar_part(bar_a) > 0.0);
    CHECK(close(versor_inverse(v.value()) * v.value(), Mv::scalar(s, 1.0), 1e-11));
  }
  CHECK_THROWS_AS(random_versor(rng, s, 0), std::invalid_argument);
}

TEST_CASE("norm is multiplicative on versor products") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const Signature s(1 + t % 6);
    const auto a = random_versor(rng, s, 1 + t % 4);
    const Mv b = random_multivector(rng, s);
    const double lhs = norm(a.value() * b);
    const double rhs = norm(a.value()) * norm(b);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}

TEST_CASE("norm is not multiplicative for general multivectors") {
  const Signature s(4);
  const Mv a = Mv::scalar(s, 1.0) + Mv::blade(s, 0b1111);
  CHECK(norm(a * a) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(norm(a) * norm(a) == doctest::Approx(2.0));
}

TEST_CASE("debug string") {
  const Signature s(3);
  CHECK(to_string(Mv(s)) == "0");
  CHECK(to_string(Mv::scalar(s, 3.0) - 2.0 * Mv::blade(s, 0b101)) == "3 * 1 - 2 * e1e3");
}

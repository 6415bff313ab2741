#include "dirac/spectral.hpp"
#include "dirac/spherical_field.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dirac;

namespace {

bool same_block(const Block& a, const Block& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() <= tol * std::max(1.0, b.cwiseAbs().maxCoeff());
}

double field_distance(const SphericalField& a, const SphericalField& b) {
  double d = 0, s = 0;
  for (int m = 0; m <= a.band_limit(); ++m) {
    d += (a.component(m).a - b.component(m).a).squaredNorm() + (a.component(m).b - b.component(m).b).squaredNorm();
    s += b.component(m).a.squaredNorm() + b.component(m).b.squaredNorm();
  }
  return std::sqrt(d / std::max(s, 1e-300));
}

}  // namespace

TEST_CASE("shifted Dirac block") {
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 5; ++m) {
      const double s = m + 0.5 * n;
      for (double alpha : {0.0, 1.0, 2.5}) {
        Block expected;
        expected << 0, s + alpha, s - alpha, 0;
        CHECK(same_block(ds_shift_block(n, m, alpha), expected));
        CHECK(same_block(ds_shift_block(n, m, alpha), ds_block(n, m) - alpha * w_block()));
      }
      // D_S = w (Gamma + n/2).
      CHECK(same_block(ds_block(n, m), w_block() * (gamma_block(n, m) + 0.5 * n * Block::Identity())));
      CHECK(same_block(d_alpha_block(n, m, 0.7), w_block() * (gamma_block(n, m) + 0.7 * Block::Identity())));
    }
}

TEST_CASE("factor chain") {
  CHECK(dsk_shifts(1) == std::vector<double>{0});
  CHECK(dsk_shifts(2) == std::vector<double>{0, 1});
  CHECK(dsk_shifts(4) == std::vector<double>{0, 1, 1, 2});
  CHECK(dsk_shifts(6) == std::vector<double>{0, 1, 1, 2, 2, 3});
  CHECK(same_block(dsk_block(3, 2, 0), Block::Identity()));
}

TEST_CASE("Gamma_w spectrum and anticommutation with w") {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    const SphericalField h = SphericalField::random(n, 2, rng);
    // Gamma(w h) + w Gamma(h) = -n w h.
    const SphericalField lhs = gamma_w_apply(multiply_by_w(h)) + multiply_by_w(gamma_w_apply(h));
    CHECK(field_distance(lhs, -double(n) * multiply_by_w(h)) <= 1e-15);
    // D_S (w h) = -w D_S h.
    CHECK(field_distance(ds_apply(multiply_by_w(h)), -1.0 * multiply_by_w(ds_apply(h))) <= 1e-15);
  }
  SUBCASE("worked eigenfields") {
    const SphericalField p0 = SphericalField::eigenfield(2, 0, {1, 0});
    CHECK(field_distance(gamma_w_apply(p0), 0.0 * p0) == 0.0);
    const SphericalField wp0 = SphericalField::eigenfield(2, 0, {0, 1});
    CHECK(field_distance(gamma_w_apply(wp0), -2.0 * wp0) == 0.0);
    const SphericalField p2 = SphericalField::eigenfield(3, 2, {1, 0});
    CHECK(field_distance(gamma_w_apply(p2), 2.0 * p2) == 0.0);
  }
}

TEST_CASE("D_S worked values") {
  // n = 2: D_S (p0 + w p0) = 1 (w p0 + p0).
  const SphericalField f = SphericalField::eigenfield(2, 0, {1, 1});
  CHECK(field_distance(ds_apply(f), f) <= 1e-15);
  // n = 4: |Delta_S| on the p0 block is n(n-2)/4 = 2.
  CHECK(std::abs(delta_s_block(4, 0)(0, 0)) == doctest::Approx(2.0));
  // Paenitz on S^4 has a zero eigenvalue.
  CHECK(spectrum_table(4, 4, 2).rows[0].lambda_minus == 0.0);
}

TEST_CASE("conformal Laplacian factorisation and Paenitz identity") {
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 8; ++m) {
      const Block ds = ds_block(n, m);
      const Block delta = delta_s_block(n, m);
      CHECK(same_block(delta, ds * (ds - w_block())));
      CHECK(same_block(delta, -laplace_beltrami_block(n, m) + 0.25 * n * (n - 2) * Block::Identity()));
      const Block paenitz = paenitz_block(n, m);
      CHECK(same_block(paenitz, delta * (delta - 2.0 * Block::Identity())));
      // In the negative-spectrum convention D' = -Delta_S the same identity reads
      // P = D'(D' + 2); magnitudes agree with -D'(D' + 2).
      const Block dprime = -delta;
      CHECK(same_block(paenitz.cwiseAbs(), (-dprime * (dprime + 2.0 * Block::Identity())).cwiseAbs()));
    }
}

TEST_CASE("spectrum tables") {
  SUBCASE("D_S on S^3") {
    const auto t = spectrum_table(1, 3, 4);
    REQUIRE(t.rows.size() == 5);
    for (int m = 0; m <= 4; ++m) {
      CHECK(t.rows[m].lambda_plus == doctest::Approx(1.5 + m));
      CHECK(t.rows[m].lambda_minus == doctest::Approx(-1.5 - m));
      CHECK(t.rows[m].multiplicity == monogenic_dimension(4, m));
      CHECK(t.rows[m].lambda_plus >= t.rows[m].lambda_minus);
    }
  }
  SUBCASE("conformal Laplacian on S^3") {
    const auto t = spectrum_table(2, 3, 0);
    CHECK(std::min(std::abs(t.rows[0].lambda_plus), std::abs(t.rows[0].lambda_minus)) == doctest::Approx(0.75));
  }
  SUBCASE("k = 4 on S^5") {
    const auto t = spectrum_table(4, 5, 0);
    CHECK(std::min(std::abs(t.rows[0].lambda_plus), std::abs(t.rows[0].lambda_minus)) == doctest::Approx(105.0 / 16));
  }
  SUBCASE("csv") {
    const std::string csv = spectrum_table(1, 2, 1).to_csv();
    CHECK(csv.rfind("m,lambda_plus,lambda_minus,multiplicity\r\n", 0) == 0);
    CHECK(csv.find("0,1,-1,8\r\n") != std::string::npos);
  }
  CHECK_THROWS_AS(spectrum_table(0, 3, 2), std::invalid_argument);
}

TEST_CASE("sharp constants against the closed-form products") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::abs(sharp_constant(k, n) - oracle::closed_form_constant(k, n)) <= 1e-12 * std::max(1.0, oracle::closed_form_constant(k, n)));
    }
  for (int n = 1; n <= 7; ++n) CHECK(sharp_constant(1, n) == doctest::Approx(0.5 * n));
  for (int n = 2; n <= 7; ++n) CHECK(sharp_constant(2, n) == doctest::Approx(0.25 * n * std::abs(n - 2)));
  CHECK(sharp_constant(2, 4) == 2.0);
  CHECK(sharp_constant(4, 4) == 0.0);
  CHECK(sharp_constant(4, 5) == 105.0 / 16);
  for (int n = 2; n <= 6; n += 2)
    for (int k = n; k <= 6; ++k) CHECK(sharp_constant(k, n) == 0.0);
}

TEST_CASE("minimum lies inside the default window") {
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= 6; ++k) {
      const double c = sharp_constant(k, n);
      for (int m = default_mmax(k, n) + 1; m <= default_mmax(k, n) + 30; ++m) {
        const auto ev = block_eigenvalues(dsk_block(n, m, k));
        CHECK(std::min(std::abs(ev(0)), std::abs(ev(1))) >= c);
      }
    }
}

TEST_CASE("spectral inverse") {
  std::mt19937_64 rng(32);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 6; ++k) {
      const SphericalField f = SphericalField::random(n, 2, rng);
      if (!dsk_invertible(k, n)) {
        CHECK(n % 2 == 0);
        CHECK(k >= n);
        CHECK_THROWS_AS(spectral_inverse_apply(f, k), NotInvertible);
        continue;
      }
      CHECK(field_distance(dsk_apply(spectral_inverse_apply(f, k), k), f) <= 1e-10);
      CHECK(spectral_inverse_norm(k, n, 10) == doctest::Approx(1.0 / sharp_constant(k, n)).epsilon(1e-12));
    }
  try {
    spectral_inverse_apply(SphericalField(4, 1), 4);
    FAIL("expected NotInvertible");
  } catch (const NotInvertible& e) {
    CHECK(e.n == 4);
    CHECK(e.k == 4);
    CHECK(e.m == 0);
    CHECK(std::string(e.what()).find("m = 0") != std::string::npos);
  }
}

TEST_CASE("D_alpha invertibility and zero modes") {
  CHECK(d_alpha_invertible(3, 0.5));
  CHECK(!d_alpha_invertible(3, 0.0));
  CHECK(!d_alpha_invertible(3, -2.0));
  CHECK(d_alpha_invertible(3, 1.0));
  CHECK(!d_alpha_invertible(3, 3.0));
  CHECK(d_alpha_zero_modes(3, 0.5, 5) == 0);
  // alpha = 0: D_0 = w Gamma kills P_0 only.
  CHECK(d_alpha_zero_modes(3, 0.0, 5) == monogenic_dimension(4, 0));
  // D_S - alpha w with alpha = n/2 + 1 kills one sector of degree 1.
  CHECK(ds_shift_zero_modes(3, 2.5, 5) == monogenic_dimension(4, 1));
  CHECK(ds_shift_zero_modes(3, 0.25, 5) == 0);
}

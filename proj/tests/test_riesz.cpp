#include "dirac/conformal.hpp"
#include "dirac/riesz.hpp"
#include "dirac/spectral.hpp"

#include <doctest.h>

#include <random>

using namespace dirac;

namespace {

std::vector<Eigen::VectorXd> sample_points(std::mt19937_64& rng, int n, std::initializer_list<double> radii) {
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> ys;
  for (double r : radii) {
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = g(rng);
    ys.push_back(r * y.normalized());
  }
  return ys;
}

}  // namespace

TEST_CASE("kernel constants") {
  CHECK(kernel_constants(3, 1) == std::vector<double>{1.0});
  const auto c3 = kernel_constants(3, 4);
  CHECK(c3[1] == -1.0);
  CHECK(c3[2] == 0.5);
  CHECK(c3[3] == 0.5);
  CHECK(kernel_constants(2, 1).size() == 1);
  try {
    kernel_constants(4, 4);
    FAIL("expected DegenerateKernel");
  } catch (const DegenerateKernel& e) {
    CHECK(e.n == 4);
    CHECK(e.k == 4);
  }
  for (int n : {2, 4, 6})
    for (int k = n; k <= kMaxKernelOrder; ++k) CHECK_THROWS_AS(RieszKernel::make(n, k), DegenerateKernel);
  CHECK(max_kernel_order(2) == 1);
  CHECK(max_kernel_order(4) == 3);
  CHECK(max_kernel_order(5) == kMaxKernelOrder);
}

TEST_CASE("D G_k = G_{k-1} by finite differences") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= max_kernel_order(n); ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const RecursionCheck r = certify_recursion(n, k, 100, 900 + 10 * n + k);
      CHECK(r.pairs == 100);
      CHECK(r.max_rel_residual <= 1e-6);
    }
}

TEST_CASE("G_1 values") {
  const Eigen::Vector3d z(0.0, 2.0, 0.0);
  const Mv g = RieszKernel::make(3, 1)(z);
  CHECK(norm(g - Mv::basis_vector(Signature(4), 1) * (1.0 / (4 * std::numbers::pi * 4.0))) <= 1e-16);
  CHECK_THROWS_AS(RieszKernel::make(3, 1)(Eigen::Vector3d::Zero()), std::domain_error);
}

TEST_CASE("smooth cutoff") {
  CHECK(smooth_cutoff(10, 50) == 1.0);
  CHECK(smooth_cutoff(25, 50) == 1.0);
  CHECK(smooth_cutoff(37.5, 50) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(smooth_cutoff(50, 50) == 0.0);
  CHECK(smooth_cutoff(1e9, kNoCutoff) == 1.0);
}

TEST_CASE("convolution of the zero field and linearity") {
  std::mt19937_64 rng(81);
  const auto ys = sample_points(rng, 2, {0.0, 1.0, 4.0});
  for (const auto& v : convolve_gk(RationalField(2), 1, ys)) {
    CHECK(v.value.is_zero());
    CHECK(v.error == 0.0);
  }
  const RationalField h = pullback(SphericalField::random(2, 2, rng), -1);
  const auto a = convolve_gk(h, 1, ys);
  RationalField scaled = h;
  scaled *= -2.5;
  const auto b = convolve_gk(scaled, 1, ys);
  for (std::size_t i = 0; i < ys.size(); ++i)
    CHECK(norm(b[i].value + 2.5 * a[i].value) <= 1e-12 * std::max(1.0, norm(a[i].value)));
  CHECK_THROWS_AS(convolve_gk(RationalField(4), 4, ys), std::exception);
}

TEST_CASE("convolution matches the transported spectral inverse") {
  // G_k * (J_{-k} psi(C)) = -J_k ((D_S^(k))^{-1} psi)(C).
  std::mt19937_64 rng(82);
  ConvolutionOptions whole;
  whole.cutoff_radius = kNoCutoff;
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= std::min(2, max_kernel_order(n)); ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const SphericalField psi = SphericalField::random(n, 3, rng);
      const RationalField h = pullback(psi, -k);
      const RationalField expected = pullback(spectral_inverse_apply(psi, k), k);
      const auto ys = sample_points(rng, n, {0.0, 0.6, 1.7, 3.5});
      const auto vals = convolve_gk(h, k, ys, whole);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const Mv e = expected.evaluate(ys[i]);
        const double err = norm(vals[i].value + e);
        CHECK(err <= 1e-3 * norm(e));
        CHECK(err <= vals[i].error + 1e-12 * norm(e));
        CHECK(norm(vals[i].value - e) > 0.5 * norm(e));
      }
    }
}

TEST_CASE("cutoff changes the value only slightly for decaying fields") {
  std::mt19937_64 rng(83);
  const RationalField h = pullback(SphericalField::random(2, 1, rng), -1);
  const auto ys = sample_points(rng, 2, {0.5});
  ConvolutionOptions whole;
  whole.cutoff_radius = kNoCutoff;
  const Mv a = convolve_gk(h, 1, ys)[0].value;
  const Mv b = convolve_gk(h, 1, ys, whole)[0].value;
  CHECK(norm(a - b) <= 1e-3 * norm(b));
  CHECK(norm(a - b) > 0.0);
}

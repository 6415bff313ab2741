#include "dirac/riesz.hpp"
#include "dirac/verification.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>

using namespace dirac;

namespace {

bool all_checks_hold(const ReportRow& r) {
  for (const Check& c : r.checks)
    if (!c.holds()) return false;
  return !r.checks.empty();
}

}  // namespace

TEST_CASE("rows recompute their pass flag") {
  ReportRow r;
  CHECK(!r.recompute_pass());
  r.checks.push_back({"a", 1.0, 2.0, true});
  r.checks.push_back({"b", 3.0, 2.0, false});
  r.finalize();
  CHECK(r.pass);
  r.checks[1].value = 1.0;
  CHECK(!r.recompute_pass());
  r.trivial = true;
  CHECK(r.recompute_pass());
  CHECK(Check{"edge", 2.0, 2.0, true}.holds());
  CHECK(Check{"edge", 2.0, 2.0, false}.holds());
}

TEST_CASE("seeds and parallel rows") {
  CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) seen.insert(derive_seed(0xD1AC, a, b));
  CHECK(seen.size() == 200);
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));

  std::atomic<int> calls = 0;
  const auto rows = parallel_rows(17, [&](int i) {
    ++calls;
    ReportRow r;
    r.n = i;
    return r;
  });
  CHECK(calls == 17);
  REQUIRE(rows.size() == 17);
  for (int i = 0; i < 17; ++i) CHECK(rows[static_cast<std::size_t>(i)].n == i);
  CHECK(parallel_rows(0, [](int) { return ReportRow{}; }).empty());
  CHECK_THROWS_AS(parallel_rows(3, [](int i) -> ReportRow {
                    if (i == 1) throw std::runtime_error("boom");
                    return {};
                  }),
                  std::runtime_error);
  CHECK(thread_budget() >= 1);
}

TEST_CASE("sphere inequality rows") {
  SUBCASE("k = 1, n = 2: constant n/2 attained") {
    const ReportRow r = verify_sphere_inequality(1, 2, 200, 3, 1);
    CHECK(r.pass);
    CHECK(r.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.ratio_extremal - 1.0) <= 1e-9);
    CHECK(r.ratio_min >= 1.0 * (1 - 1e-9));
  }
  SUBCASE("k = 2, n = 3: constant n(n-2)/4") {
    const ReportRow r = verify_sphere_inequality(2, 3, 200, 3, 2);
    CHECK(r.pass);
    CHECK(std::abs(r.ratio_extremal - 0.75) <= 1e-9);
  }
  SUBCASE("k = 4, n = 4 is trivial") {
    const ReportRow r = verify_sphere_inequality(4, 4, 10, 2, 3);
    CHECK(r.trivial);
    CHECK(r.pass);
    CHECK(r.constant == 0.0);
  }
  SUBCASE("every shipped pair, n <= 4") {
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= 6; ++k) {
        CAPTURE(n);
        CAPTURE(k);
        const ReportRow r = verify_sphere_inequality(k, n, 100, 2, 4);
        CHECK(r.pass);
        CHECK(r.trivial == (n % 2 == 0 && k >= n));
      }
  }
  SUBCASE("same seed, same row") {
    const ReportRow a = verify_sphere_inequality(3, 3, 50, 3, 9), b = verify_sphere_inequality(3, 3, 50, 3, 9);
    CHECK(a.ratio_min == b.ratio_min);
    CHECK(a.ratio_min != verify_sphere_inequality(3, 3, 50, 3, 10).ratio_min);
  }
}

TEST_CASE("Euclidean inequality rows") {
  SUBCASE("n = 3, k = 1: extremal ratio n") {
    const ReportRow r = verify_euclidean_inequality(1, 3, 0, EuclidSource::pullback_extremal, 1);
    CHECK(r.pass);
    CHECK(std::abs(r.ratio_extremal - 3.0) <= 1e-5);
  }
  SUBCASE("n = 4, k = 2: extremal ratio n(n-2)") {
    const ReportRow r = verify_euclidean_inequality(2, 4, 0, EuclidSource::pullback_extremal, 1);
    CHECK(r.pass);
    CHECK(std::abs(r.ratio_extremal - 8.0) <= 1e-4);
  }
  SUBCASE("n = 4, k = 4 is trivial") {
    for (EuclidSource s : {EuclidSource::random_rational, EuclidSource::pullback_random, EuclidSource::pullback_extremal}) {
      const ReportRow r = verify_euclidean_inequality(4, 4, 10, s, 1);
      CHECK(r.trivial);
      CHECK(r.pass);
      CHECK(r.note.find("Rellich breakdown") != std::string::npos);
    }
  }
  SUBCASE("random sources stay above the constant") {
    for (int n = 2; n <= 3; ++n)
      for (int k = 1; k <= 2; ++k)
        for (EuclidSource s : {EuclidSource::random_rational, EuclidSource::pullback_random}) {
          CAPTURE(n);
          CAPTURE(k);
          const ReportRow r = verify_euclidean_inequality(k, n, 300, s, 8);
          if (r.trivial) continue;
          CHECK(r.pass);
          CHECK(r.ratio_min >= r.constant * (1 - 1e-6));
          CHECK(r.ratio_extremal >= r.constant * (1 - 1e-6));
        }
  }
  SUBCASE("the rational span contains the k = 1 extremal") {
    const ReportRow r = verify_euclidean_inequality(1, 2, 10, EuclidSource::random_rational, 1);
    CHECK(std::abs(r.ratio_extremal - 2.0) <= 1e-8);
  }
  SUBCASE("zero tolerance cannot absorb rounding") {
    Tolerances t;
    t.euclid_extremal = 0;
    t.euclid_lower = 0;
    const ReportRow r = verify_euclidean_inequality(1, 3, 0, EuclidSource::pullback_extremal, 1, t);
    REQUIRE(r.ratio_extremal != r.constant);
    CHECK(!r.pass);
  }
  SUBCASE("source names") {
    for (EuclidSource s : {EuclidSource::random_rational, EuclidSource::pullback_random, EuclidSource::pullback_extremal})
      CHECK(parse_source(to_string(s)) == s);
    CHECK_THROWS_AS(parse_source("nope"), std::invalid_argument);
    CHECK_THROWS_AS(verify_euclidean_inequality(1, 1, 1, EuclidSource::random_rational, 1), std::invalid_argument);
  }
}

TEST_CASE("route equivalence") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const ReportRow r = verify_route_equivalence(k, n, 2, 4);
      CHECK(r.pass);
      CHECK(r.trivial == (n % 2 == 0 && k >= n));
    }
}

TEST_CASE("kernel rows") {
  SUBCASE("bound 1/(2^k sharp constant), n = 2, k = 1") {
    const ReportRow r = verify_kernel_inequality(1, 2, 20, 1);
    CHECK(r.pass);
    CHECK(r.constant == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.ratio_max <= 0.5 + r.quadrature_error);
    CHECK(r.ratio_extremal <= r.ratio_max * (1 + 1e-12));
    CHECK(r.quadrature_error <= 1e-6);
  }
  SUBCASE("odd and even k on R^3") {
    for (int k = 1; k <= 2; ++k) {
      const ReportRow r = verify_kernel_inequality(k, 3, 20, 2);
      CHECK(r.pass);
      CHECK(r.ratio_max > 0.1 * r.constant);
    }
  }
  SUBCASE("conformal cross-check") {
    const ReportRow r = verify_kernel_conformal(1, 2);
    CHECK(r.pass);
    CHECK(r.constant == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(r.ratio_extremal - r.constant) <= 1e-8);
  }
  SUBCASE("outside the valid range") {
    CHECK_THROWS_AS(verify_kernel_inequality(2, 2, 1, 1), DegenerateKernel);
    CHECK_THROWS_AS(verify_kernel_conformal(4, 4), DegenerateKernel);
  }
  SUBCASE("recursion and the spherical C_1 kernel") {
    for (int n = 2; n <= 5; ++n) CHECK(verify_kernel_recursion(n, 1).pass);
    const ReportRow c1 = verify_c1_kernel(2, 3, 1);
    CHECK(c1.pass);
    CHECK(c1.quadrature_error <= 1e-5);
  }
}

TEST_CASE("breakdown rows") {
  for (int n : {2, 4, 6})
    for (int k = n; k <= 6; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const ReportRow r = verify_breakdown(n, k);
      CHECK(r.pass);
      CHECK(all_checks_hold(r));
      CHECK(r.note.find("zero mode at degree m=") != std::string::npos);
    }
}

TEST_CASE("identity battery") {
  for (int n = 2; n <= 3; ++n)
    for (const std::string& name : identity_names()) {
      CAPTURE(n);
      CAPTURE(name);
      CHECK(run_identity(name, n, 2, 1).pass);
    }
  for (const char* map : {"cayley", "identity", "translation"}) CHECK(run_identity("ahlfors", 3, 0, 1, map).pass);
  const ReportRow eq = run_identity("eq1", 2, 3, 1);
  CHECK(eq.quadrature_error <= 1e-8);
  CHECK_THROWS_AS(run_identity("nope", 2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_identity("ahlfors", 2, 1, 1, "nope"), std::invalid_argument);
}

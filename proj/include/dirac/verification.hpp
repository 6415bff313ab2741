#pragma once

// Inequality verification on S^n and R^n, identity batteries, and the report rows
// they produce. Every row carries the numbers its pass flag is recomputed from.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dirac {

// value <= limit (upper) or value >= limit (lower).
struct Check {
  std::string name;
  double value = 0;
  double limit = 0;
  bool upper = true;

  bool holds() const { return upper ? value <= limit : value >= limit; }
};

struct ReportRow {
  std::string id;
  int n = 0;
  int k = 0;
  std::string source;
  double constant = 0;
  double ratio_min = 0;
  double ratio_extremal = 0;
  double ratio_max = 0;
  double quadrature_error = 0;
  int trials = 0;
  bool trivial = false;
  std::string note;
  std::vector<Check> checks;
  bool pass = false;
  double seconds = 0;

  // Trivial rows pass vacuously; otherwise every check must hold.
  bool recompute_pass() const;
  void finalize() { pass = recompute_pass(); }
};

struct Tolerances {
  double sphere_lower = 1e-9;   // ratio >= constant (1 - tol)
  double sphere_extremal = 1e-9;
  double euclid_lower = 1e-6;
  double euclid_extremal = 1e-5;  // relative to max(1, constant)
  double route = 1e-10;
  double kernel_check = 1e-5;
  double identity = 1e-8;
};

// Deterministic per-item seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

// Runs f(0 .. count-1) on up to DIRAC_SHARP_THREADS threads; results in index order.
int thread_budget();
std::vector<ReportRow> parallel_rows(int count, const std::function<ReportRow(int)>& f);

ReportRow verify_sphere_inequality(int k, int n, int trials, int band_limit, std::uint64_t seed,
                                   const Tolerances& tol = {});

enum class EuclidSource { random_rational, pullback_random, pullback_extremal };
const char* to_string(EuclidSource s);
EuclidSource parse_source(const std::string& s);

// Ratio (int |D^k f|^2 (1 + r^2)^k)^{1/2} / (int |f|^2 (1 + r^2)^{-k})^{1/2}, whose sharp
// value is 2^k sharp_constant(k, n).
ReportRow verify_euclidean_inequality(int k, int n, int trials, EuclidSource source, std::uint64_t seed,
                                      const Tolerances& tol = {});

// The same ratio by the sphere integrals carried to R^n by the Cayley Jacobian, against
// the direct weighted integrals.
ReportRow verify_route_equivalence(int k, int n, int trials, std::uint64_t seed, const Tolerances& tol = {});

// (int |G_k * h|^2 (1 + r^2)^{-k})^{1/2} <= (int |h|^2 (1 + r^2)^k)^{1/2} / (2^k sharp_constant)
// over h in a span of cut-off radial profiles, plus random members of the span.
ReportRow verify_kernel_inequality(int k, int n, int trials, std::uint64_t seed, double cutoff_radius = 50,
                                   const Tolerances& tol = {});

// h = J_{-k} a (C) for constant a, no cutoff: the Euclidean ratio against the exact
// sphere value 2^{-k} |(D_S^(k))^{-1} a| / |a|.
ReportRow verify_kernel_conformal(int k, int n, const Tolerances& tol = {});

// Quadrature convolution with C_1 against the spectral inverse at 20 points.
ReportRow verify_c1_kernel(int n, int band_limit, std::uint64_t seed);

// D G_k = G_{k-1} at 100 random pairs for every shipped k on R^n.
ReportRow verify_kernel_recursion(int n, std::uint64_t seed);

// Breakdown for even n: zero eigenvalue, NotInvertible at the zero mode, trivial rows.
ReportRow verify_breakdown(int n, int k);

// Identity battery: anticommutation, factorization, paenitz, eq1, norm, ahlfors.
// map selects the Moebius map for ahlfors: cayley, identity or translation.
const std::vector<std::string>& identity_names();
ReportRow run_identity(const std::string& name, int n, int k, std::uint64_t seed, const std::string& map = "cayley",
                       const Tolerances& tol = {});

}  // namespace dirac

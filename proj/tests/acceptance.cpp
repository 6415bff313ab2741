// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "dirac/conformal.hpp"
#include "dirac/riesz.hpp"
#include "dirac/verification.hpp"
#include "oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace dirac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line.precision(3);
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    line << "over time limit " << time_limit << " s; ";
  }
  line << o.detail << " (" << secs << " s)";
  failures += o.pass ? 0 : 1;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << ": " << line.str()
            << std::endl;
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string run_cli(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / "dirac_sharp_acceptance.json";
  const std::string cmd = std::string(DIRAC_SHARP_BIN) + " " + args + " > " + out.string();
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw std::runtime_error("'" + cmd + "' failed");
  std::ifstream f(out, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// Everything before the segregated timing object.
std::string strip_timing(const std::string& report) {
  const auto pos = report.find("\n  \"timing\":");
  if (pos == std::string::npos) throw std::runtime_error("report has no timing object");
  return report.substr(0, pos);
}

}  // namespace

int main() {
  criterion(1, "norm multiplicativity on versors", 5.0, [] {
    std::mt19937_64 rng(1);
    double worst = 0;
    for (int t = 0; t < 10000; ++t) {
      const Signature sig(1 + t % 6);
      const Mv a = random_versor(rng, sig, 1 + t % 5).value();
      const Mv b = random_multivector(rng, sig);
      worst = std::max(worst, std::abs(norm(a * b) - norm(a) * norm(b)) / (norm(a) * norm(b)));
    }
    return Outcome{worst <= 1e-10, "10^4 pairs, N <= 6, max rel err " + sci(worst)};
  });

  criterion(2, "H_m = P_m + x P_{m-1} ranks", 30.0, [] {
    bool ok = true;
    int cases = 0;
    for (int N = 2; N <= 4; ++N)
      for (int m = 1; m <= 5; ++m) {
        const PolySubspace h = harmonic_basis(N, m);
        const auto p = monogenic_basis(N, m);
        const auto q = monogenic_basis(N, m - 1);
        Eigen::MatrixXd xq(h.coefficients.rows(), q->dim());
        for (int i = 0; i < q->dim(); ++i) xq.col(i) = to_vector(multiply_by_position(q->element(i)), h.index);
        Eigen::MatrixXd sum(h.coefficients.rows(), p->dim() + q->dim());
        sum << p->coefficients, xq;
        Eigen::MatrixXd all(sum.rows(), sum.cols() + h.dim());
        all << sum, h.coefficients;
        const int dim_h = h.dim();
        ok = ok && dim_h == harmonic_dimension(N, m) && numerical_rank(sum) == p->dim() + q->dim() &&
             p->dim() + q->dim() == dim_h && numerical_rank(all) == dim_h;
        ++cases;
      }
    return Outcome{ok, std::to_string(cases) + " (N, m) pairs, direct sum spans H_m"};
  });

  criterion(3, "Gamma_w and D_S spectra", 0, [] {
    double worst = 0;
    for (int n = 2; n <= 4; ++n)
      for (int m = 0; m <= 6; ++m) {
        const Eigen::Vector2d ev = block_eigenvalues(ds_block(n, m));
        worst = std::max({worst, std::abs(ev(0) - (0.5 * n + m)), std::abs(ev(1) + (0.5 * n + m))});
        const SphericalField p = SphericalField::eigenfield(n, m, {1, 0});
        const SphericalField wp = SphericalField::eigenfield(n, m, {0, 1});
        auto gap = [](const SphericalField& a, const SphericalField& b) {
          return std::sqrt(gram_norm_squared(a - b) / gram_norm_squared(b));
        };
        worst = std::max(worst, gap(gamma_w_apply(p), double(m) * p));
        worst = std::max(worst, gap(gamma_w_apply(wp), -double(n + m) * wp));
        for (double sign : {1.0, -1.0}) {
          const SphericalField e = SphericalField::eigenfield(n, m, {1.0, sign});
          worst = std::max(worst, gap(ds_apply(e), sign * (0.5 * n + m) * e));
        }
      }
    return Outcome{worst <= 1e-12, "n = 2..4, max deviation " + sci(worst)};
  });

  criterion(4, "sharp constants", 0, [] {
    double worst = 0;
    for (int n = 2; n <= 6; ++n)
      for (int k = 1; k <= 6; ++k) {
        const double c = oracle::closed_form_constant(k, n);
        worst = std::max(worst, std::abs(sharp_constant(k, n) - c) / std::max(1.0, c));
      }
    bool named = true;
    for (int n = 2; n <= 6; ++n) {
      named = named && std::abs(sharp_constant(1, n) - 0.5 * n) <= 1e-12;
      named = named && std::abs(sharp_constant(2, n) - 0.25 * n * std::abs(n - 2)) <= 1e-12;
    }
    named = named && std::abs(sharp_constant(4, 5) - 105.0 / 16) <= 1e-12 && sharp_constant(4, 4) == 0.0;
    return Outcome{worst <= 1e-12 && named, "k <= 6, n = 2..6, max rel deviation " + sci(worst)};
  });

  criterion(5, "sharpness witnesses and one-sided random trials", 0, [] {
    double sphere_gap = 0, euclid_gap = 0;
    bool ok = true;
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= 3; ++k) {
        const ReportRow s = verify_sphere_inequality(k, n, 1000, 3, derive_seed(5, n, k));
        if (s.trivial) continue;
        const ReportRow e = verify_euclidean_inequality(k, n, 0, EuclidSource::pullback_extremal, 5);
        const ReportRow rr = verify_euclidean_inequality(k, n, 1000, EuclidSource::random_rational, 5);
        const ReportRow pr = verify_euclidean_inequality(k, n, 1000, EuclidSource::pullback_random, 5);
        sphere_gap = std::max(sphere_gap, std::abs(s.ratio_extremal - s.constant));
        euclid_gap = std::max(euclid_gap, std::abs(e.ratio_extremal - e.constant) / std::max(1.0, e.constant));
        ok = ok && s.pass && e.pass && rr.pass && pr.pass;
      }
    ok = ok && sphere_gap <= 1e-9 && euclid_gap <= 1e-5;
    return Outcome{ok, "n = 2..4, k = 1..3, 10^3 trials; sphere gap " + sci(sphere_gap) + ", Cayley gap " +
                           sci(euclid_gap)};
  });

  criterion(6, "C_1 convolution vs spectral inverse", 120.0, [] {
    double worst = 0;
    bool ok = true;
    for (int n = 2; n <= 3; ++n) {
      const ReportRow r = verify_c1_kernel(n, 3, 6);
      worst = std::max(worst, r.quadrature_error);
      ok = ok && r.pass;
    }
    return Outcome{ok && worst <= 1e-5, "S^2 and S^3, band 3, max rel L2 error " + sci(worst)};
  });

  criterion(7, "intertwining residual", 0, [] {
    double worst = 0;
    bool ok = true;
    for (int n = 2; n <= 3; ++n)
      for (int k = 1; k <= 3; ++k) {
        const ReportRow r = run_identity("eq1", n, k, 7);
        worst = std::max(worst, r.quadrature_error);
        ok = ok && r.pass;
      }
    return Outcome{ok && worst <= 1e-8, "50 points, n = 2..3, k = 1..3, band 3, max residual " + sci(worst)};
  });

  criterion(8, "sphere vs Euclidean inner products", 0, [] {
    double worst = 0;
    for (int n = 2; n <= 3; ++n) {
      std::mt19937_64 rng(derive_seed(8, n));
      for (int t = 0; t < 100; ++t) {
        const SphericalField f = SphericalField::random(n, 2, rng), g = SphericalField::random(n, 2, rng);
        const InnerPair r = isometry_check(f, g);
        worst = std::max(worst, std::abs(r.sphere - r.euclid) / std::sqrt(gram_norm_squared(f) * gram_norm_squared(g)));
      }
    }
    return Outcome{worst <= 1e-6, "100 band-2 pairs per n, max rel err " + sci(worst)};
  });

  criterion(9, "kernel recursion", 0, [] {
    double worst = 0;
    bool ok = true;
    int shipped = 0;
    for (int n = 2; n <= 5; ++n) {
      const ReportRow r = verify_kernel_recursion(n, 9);
      ok = ok && r.pass;
      for (const Check& c : r.checks) worst = std::max(worst, c.value);
      shipped += static_cast<int>(r.checks.size());
    }
    return Outcome{ok && worst <= 1e-6, std::to_string(shipped) + " kernels, 100 pairs each, max rel residual " + sci(worst)};
  });

  criterion(10, "kernel bounds", 0, [] {
    bool ok = true;
    double headroom = 1;
    double qerr = 0;
    int rows = 0;
    for (int n = 2; n <= 3; ++n)
      for (int k = 1; k <= max_kernel_order(n); ++k) {
        const ReportRow r = verify_kernel_inequality(k, n, 20, 10);
        ok = ok && r.pass;
        headroom = std::min(headroom, 1 - r.ratio_max / r.constant);
        qerr = std::max(qerr, r.quadrature_error / r.constant);
        ++rows;
      }
    return Outcome{ok, std::to_string(rows) + " (n, k) rows, 20 trials; min headroom " + sci(headroom) +
                           ", max rel quadrature error " + sci(qerr)};
  });

  criterion(11, "Rellich breakdown", 0, [] {
    bool ok = true;
    int rows = 0;
    for (int n = 2; n <= 6; n += 2)
      for (int k = n; k <= 6; ++k) {
        ok = ok && verify_breakdown(n, k).pass;
        ++rows;
      }
    std::string message;
    try {
      std::mt19937_64 rng(11);
      spectral_inverse_apply(SphericalField::random(4, 2, rng), 4);
      ok = false;
    } catch (const NotInvertible& e) {
      message = e.what();
      ok = ok && e.m == 0 && message.find("degree m = 0") != std::string::npos;
    }
    const ReportRow e = verify_euclidean_inequality(4, 4, 10, EuclidSource::pullback_random, 11);
    ok = ok && e.trivial && e.pass && e.note.find("trivial") != std::string::npos;
    return Outcome{ok, std::to_string(rows) + " (n even, n <= k <= 6) rows; '" + message + "'"};
  });

  criterion(12, "deterministic CLI reports", 0, [] {
    const std::string args = "verify --suite all --n 3 --seed 7 --format json";
    const std::string a = run_cli(args), b = run_cli(args);
    const bool same = strip_timing(a) == strip_timing(b);
    return Outcome{same && a.find("\n  \"pass\": true") != std::string::npos,
                   "two runs of '" + args + "': " + (same ? "identical" : "different") + " outside timing"};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}

#include "dirac/verification.hpp"

#include "dirac/conformal.hpp"
#include "dirac/riesz.hpp"
#include "dirac/sphere_kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dirac {

bool ReportRow::recompute_pass() const {
  if (trivial) return true;
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds(); });
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

int thread_budget() {
  if (const char* env = std::getenv("DIRAC_SHARP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<ReportRow> parallel_rows(int count, const std::function<ReportRow(int)>& f) {
  std::vector<ReportRow> rows(static_cast<std::size_t>(std::max(count, 0)));
  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        rows[static_cast<std::size_t>(i)] = f(i);
        rows[static_cast<std::size_t>(i)].seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

namespace {

Check upper(std::string name, double value, double limit) { return {std::move(name), value, limit, true}; }
Check lower(std::string name, double value, double limit) { return {std::move(name), value, limit, false}; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

double field_ratio(const SphericalField& f, int k) {
  return std::sqrt(gram_norm_squared(dsk_apply(f, k)) / gram_norm_squared(f));
}

// First degree at which D_S^(k) has a zero eigenvalue, or -1.
int zero_mode_degree(int k, int n) {
  for (int m = 0; m <= default_mmax(k, n); ++m) {
    const Eigen::Vector2d ev = block_eigenvalues(dsk_block(n, m, k));
    if (std::min(std::abs(ev(0)), std::abs(ev(1))) == 0.0) return m;
  }
  return -1;
}

RationalField dk_apply(const RationalField& f, int k) {
  return k % 2 == 0 ? laplacian_power_apply(f, k / 2) : d_power_apply(f, k);
}

Eigen::MatrixXd scalar_gram(const std::vector<RationalField>& fields, int weight) {
  const auto h = weighted_gram(fields, weight);
  const auto m = static_cast<Eigen::Index>(fields.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) g(a, b) = scalar_part(h[static_cast<std::size_t>(a * m + b)]);
  return 0.5 * (g + g.transpose());
}

// Extreme generalized eigenvalues of (a, b), b positive definite.
Eigen::Vector2d pencil_range(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("generalized eigenproblem failed");
  return {es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
}

Eigen::VectorXd uniform_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(size);
  for (auto& x : v) x = u(rng);
  return v;
}

struct EuclidRatio {
  double value = 0;
  double error = 0;
};

EuclidRatio euclid_ratio(const RationalField& phi, int k) {
  const auto top = weighted_l2_estimate(dk_apply(phi, k), k);
  const auto bottom = weighted_l2_estimate(phi, -k);
  const double r = std::sqrt(top.value / bottom.value);
  return {r, 0.5 * r * (top.error / top.value + bottom.error / bottom.value)};
}

// J_j^{-1} as a rational field: conj(J_j) / |J_j|^2.
RationalField jk_inverse(int n, int j) {
  const RationalField jr = jk_rational(n, j);
  const auto& [s, p] = *jr.terms().begin();
  const double scale = std::pow(2.0, -(n - j));
  RationalField out(n);
  if ((j % 2 + 2) % 2 == 1)
    out.add((-scale) * p, 2 - s);
  else
    out.add(scale * p, -s);
  return out;
}

// Sphere integrals carried to R^n by the Jacobian 2^n (1 + r^2)^{-n}; ratio equals
// the sphere ratio, i.e. the direct ratio divided by 2^k.
double transported_ratio(const RationalField& phi, int k) {
  const int n = phi.n();
  const double top = weighted_l2(jk_inverse(n, -k) * dk_apply(phi, k), -n);
  const double bottom = weighted_l2(jk_inverse(n, k) * phi, -n);
  return std::sqrt(top / bottom);
}

SphericalField unit_constant(int n) {
  SphericalField one(n, 0);
  one.component(0).a(0) = 1.0;
  return one;
}

}  // namespace

ReportRow verify_sphere_inequality(int k, int n, int trials, int band_limit, std::uint64_t seed,
                                   const Tolerances& tol) {
  if (k < 1 || n < 1) throw std::invalid_argument("verify_sphere_inequality needs k >= 1 and n >= 1");
  ReportRow row;
  row.id = "sphere-dsk";
  row.n = n;
  row.k = k;
  row.constant = sharp_constant(k, n);
  row.trials = trials;
  if (row.constant == 0.0) {
    row.trivial = true;
    row.note = "trivial: D_S^(" + std::to_string(k) + ") has a zero eigenvalue at degree m=" +
               std::to_string(zero_mode_degree(k, n));
    row.finalize();
    return row;
  }
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                    static_cast<std::uint64_t>(t)));
    min_ratio = std::min(min_ratio, field_ratio(SphericalField::random(n, band_limit, rng), k));
  }
  row.ratio_min = trials > 0 ? min_ratio : 0.0;
  const int m = extremal_degree(k, n);
  const SphericalField e = SphericalField::eigenfield(n, m, extremal_direction(k, n));
  row.ratio_extremal = field_ratio(e, k);
  const double scale = std::max(1.0, row.constant);
  if (trials > 0) row.checks.push_back(lower("random ratio >= constant", row.ratio_min, row.constant * (1 - tol.sphere_lower)));
  row.checks.push_back(upper("|extremal - constant|", std::abs(row.ratio_extremal - row.constant), tol.sphere_extremal * scale));
  if (n <= 4) {
    const auto rule = sphere_rule(n, 2 * (m + 1));
    const double q = l2_norm(dsk_apply(e, k), *rule) / l2_norm(e, *rule);
    row.quadrature_error = std::abs(q - row.ratio_extremal);
    row.checks.push_back(upper("|quadrature - block| extremal", row.quadrature_error, tol.sphere_extremal * scale));
  }
  row.note = "extremal degree m=" + std::to_string(m);
  row.finalize();
  return row;
}

const char* to_string(EuclidSource s) {
  switch (s) {
    case EuclidSource::random_rational: return "random_rational";
    case EuclidSource::pullback_random: return "pullback_random";
    case EuclidSource::pullback_extremal: return "pullback_extremal";
  }
  return "?";
}

EuclidSource parse_source(const std::string& s) {
  if (s == "random_rational") return EuclidSource::random_rational;
  if (s == "pullback_random") return EuclidSource::pullback_random;
  if (s == "pullback_extremal") return EuclidSource::pullback_extremal;
  throw std::invalid_argument("unknown source '" + s + "'");
}

namespace {

// Scalar generators x^alpha (1 + r^2)^{-s/2}, deg alpha <= d, s = deg + floor(n/2) + 1 + j.
std::vector<RationalField> rational_generators(int n) {
  const Signature sig(n + 1);
  const int max_degree = n <= 3 ? 2 : 1;
  std::vector<RationalField> out;
  for (int d = 0; d <= max_degree; ++d) {
    const MonomialIndex idx(n, d);
    for (int i = 0; i < idx.size(); ++i)
      for (int j = 0; j < 2; ++j)
        out.emplace_back(Poly::monomial(n, idx[i], Mv::scalar(sig, 1.0)), d + n / 2 + 1 + j);
  }
  return out;
}

constexpr int kPullbackGenerators = 16;
constexpr int kPullbackBand = 2;

}  // namespace

ReportRow verify_euclidean_inequality(int k, int n, int trials, EuclidSource source, std::uint64_t seed,
                                      const Tolerances& tol) {
  if (k < 1 || n < 2) throw std::invalid_argument("verify_euclidean_inequality needs k >= 1 and n >= 2");
  ReportRow row;
  row.id = "euclid-dk";
  row.n = n;
  row.k = k;
  row.source = to_string(source);
  const double sc = sharp_constant(k, n);
  row.constant = std::ldexp(sc, k);
  if (sc == 0.0) {
    row.trivial = true;
    row.note = "trivial: constant 0, Rellich breakdown (zero mode of D_S^(" + std::to_string(k) + ") at degree m=" +
               std::to_string(zero_mode_degree(k, n)) + ")";
    row.finalize();
    return row;
  }
  const double scale = std::max(1.0, row.constant);
  if (source == EuclidSource::pullback_extremal) {
    const int m = extremal_degree(k, n);
    const RationalField phi = pullback(SphericalField::eigenfield(n, m, extremal_direction(k, n)), k);
    const EuclidRatio r = euclid_ratio(phi, k);
    row.ratio_extremal = r.value;
    row.ratio_min = r.value;
    row.quadrature_error = r.error;
    row.trials = 1;
    row.checks.push_back(upper("|extremal - constant|", std::abs(r.value - row.constant), tol.euclid_extremal * scale));
    row.checks.push_back(lower("ratio >= constant", r.value, row.constant * (1 - tol.euclid_lower)));
    row.note = "pullback of the degree " + std::to_string(m) + " extremal eigenfield";
    row.finalize();
    return row;
  }

  // Random members of a span, through the two quadratic forms.
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(source)));
  Eigen::MatrixXd top, bottom;
  RationalField probe(n);
  if (source == EuclidSource::pullback_random) {
    std::vector<RationalField> phis, dphis;
    for (int g = 0; g < kPullbackGenerators; ++g) {
      phis.push_back(pullback(SphericalField::random(n, kPullbackBand, rng), k));
      dphis.push_back(dk_apply(phis.back(), k));
      probe += phis.back();
    }
    top = scalar_gram(dphis, k);
    bottom = scalar_gram(phis, -k);
    row.note = std::to_string(kPullbackGenerators) + " pulled-back band-" + std::to_string(kPullbackBand) + " fields";
  } else {
    const std::vector<RationalField> gens = rational_generators(n);
    std::vector<RationalField> dgens;
    for (const auto& g : gens) {
      dgens.push_back(dk_apply(g, k));
      probe += g * random_multivector(rng, Signature(n + 1));
    }
    const int count = static_cast<int>(gens.size());
    top = right_module_form(weighted_gram(dgens, k), count);
    bottom = right_module_form(weighted_gram(gens, -k), count);
    row.note = std::to_string(count) + " scalar generators with Clifford coefficients";
  }
  const Eigen::Vector2d range = pencil_range(top, bottom);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd c = uniform_vector(rng, top.rows());
    min_ratio = std::min(min_ratio, std::sqrt(c.dot(top * c) / c.dot(bottom * c)));
  }
  row.trials = trials;
  row.ratio_min = trials > 0 ? min_ratio : 0.0;
  row.ratio_extremal = std::sqrt(std::max(range(0), 0.0));
  row.quadrature_error = euclid_ratio(probe, k).error;
  if (trials > 0) row.checks.push_back(lower("random ratio >= constant", row.ratio_min, row.constant * (1 - tol.euclid_lower)));
  row.checks.push_back(lower("span minimum >= constant", row.ratio_extremal, row.constant * (1 - tol.euclid_lower)));
  row.note += "; ratio_extremal is the minimum over the span";
  row.finalize();
  return row;
}

ReportRow verify_route_equivalence(int k, int n, int trials, std::uint64_t seed, const Tolerances& tol) {
  ReportRow row;
  row.id = "euclid-routes";
  row.n = n;
  row.k = k;
  row.source = "pullback_extremal+pullback_random";
  const double sc = sharp_constant(k, n);
  row.constant = std::ldexp(sc, k);
  if (sc == 0.0) {
    row.trivial = true;
    row.note = "trivial: constant 0";
    row.finalize();
    return row;
  }
  std::vector<SphericalField> fields{SphericalField::eigenfield(n, extremal_degree(k, n), extremal_direction(k, n))};
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 77));
  for (int t = 0; t < trials; ++t) fields.push_back(SphericalField::random(n, kPullbackBand, rng));
  double worst = 0, worst_sphere = 0;
  row.ratio_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const RationalField phi = pullback(fields[i], k);
    const double direct = euclid_ratio(phi, k).value;
    const double transported = std::ldexp(transported_ratio(phi, k), k);
    const double sphere = std::ldexp(field_ratio(fields[i], k), k);
    worst = std::max(worst, std::abs(direct - transported) / direct);
    worst_sphere = std::max(worst_sphere, std::abs(direct - sphere) / sphere);
    row.ratio_min = std::min(row.ratio_min, direct);
    if (i == 0) row.ratio_extremal = direct;
  }
  row.trials = static_cast<int>(fields.size());
  row.quadrature_error = worst_sphere;
  row.checks.push_back(upper("max rel |direct - 2^k transported|", worst, tol.route));
  row.checks.push_back(upper("max rel |direct - 2^k sphere blocks|", worst_sphere, tol.euclid_lower));
  row.note = "direct weighted integrals vs sphere integrals through the Cayley Jacobian";
  row.finalize();
  return row;
}

namespace {

// Profiles of G_k * b at y = t e_1 for b = f, x_1 f, x_2 f with f = (1 + r^2)^{-s/2}:
// odd k (alpha, beta + gamma, beta), even k (delta, epsilon, 0), where
// G*f = alpha y^, G*(x_i f) = beta e_i + gamma y^_i y^ (odd) and delta, epsilon y^_i (even).
Eigen::Vector3d kernel_profile(const RieszKernel& kernel, int s, double radius, double t, int level) {
  const int n = kernel.n;
  const int blades = 1 << (n + 1);
  const FieldSampler sampler = [blades, s](const Eigen::VectorXd& x) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(blades, 3);
    const double g = std::pow(1.0 + x.squaredNorm(), -0.5 * s);
    m(0, 0) = g;
    m(0, 1) = x(0) * g;
    m(0, 2) = x(1) * g;
    return m;
  };
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y(0) = t;
  const Eigen::MatrixXd v = convolve_level(sampler, 3, kernel, y, radius, level);
  if (kernel.k % 2 == 1) return {v(1, 0), v(1, 1), v(2, 2)};
  return {v(0, 0), v(0, 1), 0.0};
}

// Clifford Gram of A_0 = G*f, A_i = G*(x_i f) in int conj(A_i) A_j (1 + |y|^2)^{-k} dy,
// radial part by Gauss-Legendre in theta with |y| = tan(theta).
std::vector<Mv> kernel_gram(const RieszKernel& kernel, int s, double radius, int outer_nodes, int level) {
  const int n = kernel.n, k = kernel.k;
  const Signature sig(n + 1);
  const int count = n + 1;
  std::vector<Mv> h(static_cast<std::size_t>(count * count), Mv(sig));
  const GaussRule g = gauss_legendre(outer_nodes, 0.0, 0.5 * std::numbers::pi);
  const auto dirs = sphere_rule(n - 1, 4);
  std::vector<Mv> a(static_cast<std::size_t>(count), Mv(sig));
  for (int i = 0; i < outer_nodes; ++i) {
    const double th = g.nodes(i);
    const double t = std::tan(th);
    const double c = std::cos(th);
    const double wr = g.weights(i) / (c * c) * std::pow(1.0 + t * t, -k) * std::pow(t, n - 1);
    const Eigen::Vector3d p = kernel_profile(kernel, s, radius, t, level);
    for (int d = 0; d < dirs->size(); ++d) {
      const Eigen::VectorXd u = dirs->nodes.col(d);
      const Mv uv = Mv::vector(sig, u);
      if (k % 2 == 1) {
        a[0] = uv * p(0);
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j + 1)] = Mv::basis_vector(sig, j) * p(2) + uv * ((p(1) - p(2)) * u(j));
      } else {
        a[0] = Mv::scalar(sig, p(0));
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j + 1)] = Mv::scalar(sig, p(1) * u(j));
      }
      const double w = wr * dirs->weights(d);
      for (int x = 0; x < count; ++x) {
        const Mv cx = conjugation(a[static_cast<std::size_t>(x)]);
        for (int z = 0; z < count; ++z) h[static_cast<std::size_t>(x * count + z)] += (cx * a[static_cast<std::size_t>(z)]) * w;
      }
    }
  }
  return h;
}

// omega_n int chi_R^2 r^{2p} (1 + r^2)^{k - s} r^{n-1} dr.
double radial_moment(int n, int s, int k, int p, double radius) {
  const GaussRule g = gauss_legendre(24);
  std::vector<double> breaks{0.0};
  const double end = std::isinf(radius) ? 64.0 : radius;
  for (double x = 0.125; x < end; x *= 2) breaks.push_back(x);
  if (!std::isinf(radius)) breaks.push_back(0.5 * radius);
  breaks.push_back(end);
  std::sort(breaks.begin(), breaks.end());
  auto f = [&](double r) {
    const double chi = smooth_cutoff(r, radius);
    return chi * chi * std::pow(r, 2 * p + n - 1) * std::pow(1 + r * r, k - s);
  };
  double sum = 0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b], hi = breaks[b + 1];
    if (hi <= lo) continue;
    for (int i = 0; i < g.nodes.size(); ++i) sum += 0.5 * (hi - lo) * g.weights(i) * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * g.nodes(i));
  }
  if (std::isinf(radius))
    for (int i = 0; i < g.nodes.size(); ++i) {
      const double u = 0.5 + 0.5 * g.nodes(i);
      sum += 0.5 * g.weights(i) * end / (u * u) * f(end / u);
    }
  return omega(n) * sum;
}

constexpr int kOuterNodes = 36;
constexpr int kOuterCoarse = 24;

struct KernelForms {
  Eigen::MatrixXd main, coarse_inner, coarse_outer;
};

KernelForms kernel_forms(const RieszKernel& kernel, int s, double radius) {
  const int count = kernel.n + 1;
  return {right_module_form(kernel_gram(kernel, s, radius, kOuterNodes, 2), count),
          right_module_form(kernel_gram(kernel, s, radius, kOuterNodes, 1), count),
          right_module_form(kernel_gram(kernel, s, radius, kOuterCoarse, 2), count)};
}

double max_ratio(const Eigen::MatrixXd& q, const Eigen::VectorXd& sdiag) {
  const Eigen::VectorXd is = sdiag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd m = is.asDiagonal() * q * is.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace

ReportRow verify_kernel_inequality(int k, int n, int trials, std::uint64_t seed, double cutoff_radius,
                                   const Tolerances& tol) {
  ReportRow row;
  row.id = "euclid-kernel";
  row.n = n;
  row.k = k;
  row.source = "cutoff radial span, R=" + fmt(cutoff_radius);
  if (k > max_kernel_order(n)) throw DegenerateKernel(n, k);
  const RieszKernel kernel = RieszKernel::make(n, k);
  const double sc = sharp_constant(k, n);
  row.constant = 1.0 / std::ldexp(sc, k);
  const int s = n + 2 * k + 3;
  const int blades = 1 << (n + 1);
  Eigen::VectorXd sdiag(blades * (n + 1));
  sdiag.head(blades).setConstant(radial_moment(n, s, k, 0, cutoff_radius));
  sdiag.tail(blades * n).setConstant(radial_moment(n, s, k, 1, cutoff_radius) / n);

  const KernelForms forms = kernel_forms(kernel, s, cutoff_radius);
  row.ratio_max = max_ratio(forms.main, sdiag);
  row.quadrature_error = std::max(std::abs(row.ratio_max - max_ratio(forms.coarse_inner, sdiag)),
                                  std::abs(row.ratio_max - max_ratio(forms.coarse_outer, sdiag)));
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 99));
  double worst = 0;
  row.ratio_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd c = uniform_vector(rng, sdiag.size());
    const double r = std::sqrt(c.dot(forms.main * c) / c.dot(sdiag.asDiagonal() * c));
    worst = std::max(worst, r);
    row.ratio_min = std::min(row.ratio_min, r);
  }
  if (trials == 0) row.ratio_min = 0;
  row.ratio_extremal = worst;
  row.trials = trials;
  const double limit = row.constant * (1 + tol.kernel_check) + row.quadrature_error;
  row.checks.push_back(upper("span maximum <= bound", row.ratio_max, limit));
  if (trials > 0) row.checks.push_back(upper("random ratio <= bound", worst, limit));
  row.checks.push_back(upper("refinement error", row.quadrature_error, 1e-3 * row.constant));
  row.note = "constant is the bound 1/(2^k sharp_constant); printed bound 1/sharp_constant = " + fmt(1.0 / sc) +
             "; ratio_extremal is the largest random ratio";
  row.finalize();
  return row;
}

ReportRow verify_kernel_conformal(int k, int n, const Tolerances& tol) {
  ReportRow row;
  row.id = "euclid-kernel-conformal";
  row.n = n;
  row.k = k;
  row.source = "J_{-k} a (C), no cutoff";
  if (k > max_kernel_order(n)) throw DegenerateKernel(n, k);
  const RieszKernel kernel = RieszKernel::make(n, k);
  const Signature sig(n + 1);
  const SphericalField psi = unit_constant(n);
  const Mv a = psi.evaluate(Eigen::VectorXd::Unit(n + 1, n));
  row.constant = std::ldexp(std::sqrt(gram_norm_squared(spectral_inverse_apply(psi, k)) / gram_norm_squared(psi)), -k);

  // J_{-k} a = 2^{(n+k)/2} ((x + e_{n+1}) a g_{n+k+1} or a g_{n+k}) = sum_i b_i c_i.
  const int s = k % 2 == 1 ? n + k + 1 : n + k;
  const double amp = std::pow(2.0, 0.5 * (n + k));
  const int blades = sig.blade_count();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(blades * (n + 1));
  if (k % 2 == 1) {
    c.head(blades) = (Mv::basis_vector(sig, n) * a).coeffs() * amp;
    for (int j = 0; j < n; ++j) c.segment(blades * (j + 1), blades) = (Mv::basis_vector(sig, j) * a).coeffs() * amp;
  } else {
    c.head(blades) = a.coeffs() * amp;
  }
  const double rhs = weighted_l2(pullback(psi, -k), k);
  const KernelForms forms = kernel_forms(kernel, s, kNoCutoff);
  auto ratio = [&](const Eigen::MatrixXd& q) { return std::sqrt(c.dot(q * c) / rhs); };
  row.ratio_extremal = ratio(forms.main);
  row.ratio_min = row.ratio_extremal;
  row.ratio_max = row.ratio_extremal;
  row.quadrature_error = std::max(std::abs(row.ratio_extremal - ratio(forms.coarse_inner)),
                                  std::abs(row.ratio_extremal - ratio(forms.coarse_outer)));
  row.trials = 1;
  row.checks.push_back(upper("|euclidean - sphere|", std::abs(row.ratio_extremal - row.constant),
                             row.quadrature_error + tol.kernel_check * row.constant));
  row.note = "constant is the exact sphere value 2^-k |(D_S^(k))^-1 a| / |a|";
  row.finalize();
  return row;
}

ReportRow verify_c1_kernel(int n, int band_limit, std::uint64_t seed) {
  ReportRow row;
  row.id = "sphere-c1-kernel";
  row.n = n;
  row.k = 1;
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), 1, 11));
  const SphericalField phi = SphericalField::random(n, band_limit, rng);
  const SphericalField inv = spectral_inverse_apply(phi, 1);
  std::normal_distribution<double> g;
  double num = 0, den = 0;
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd y(n + 1);
    for (auto& v : y) v = g(rng);
    y.normalize();
    const Mv exact = inv.evaluate(y);
    num += norm_squared(convolve_c1(phi, y) - exact);
    den += norm_squared(exact);
  }
  row.quadrature_error = std::sqrt(num / den);
  row.trials = 20;
  row.checks.push_back(upper("rel L2 |quadrature - spectral|", row.quadrature_error, 1e-5));
  row.note = "band " + std::to_string(band_limit);
  row.finalize();
  return row;
}

ReportRow verify_kernel_recursion(int n, std::uint64_t seed) {
  ReportRow row;
  row.id = "euclid-kernel-recursion";
  row.n = n;
  row.k = max_kernel_order(n);
  const auto constants = kernel_constants(n, row.k);
  std::ostringstream note;
  note << "C_k =";
  for (int k = 1; k <= row.k; ++k) {
    const RecursionCheck r = certify_recursion(n, k, 100, derive_seed(seed, static_cast<std::uint64_t>(n),
                                                                      static_cast<std::uint64_t>(k), 5));
    row.checks.push_back(upper("k=" + std::to_string(k) + " max rel FD residual", r.max_rel_residual, 1e-6));
    note << ' ' << fmt(constants[static_cast<std::size_t>(k - 1)]);
  }
  row.trials = 100;
  row.note = note.str();
  row.finalize();
  return row;
}

ReportRow verify_breakdown(int n, int k) {
  ReportRow row;
  row.id = "breakdown";
  row.n = n;
  row.k = k;
  row.constant = sharp_constant(k, n);
  const int m = zero_mode_degree(k, n);
  row.checks.push_back(upper("|sharp constant|", std::abs(row.constant), 0.0));
  row.checks.push_back(lower("zero-mode degree found", m, 0));
  int thrown_m = -1;
  try {
    std::mt19937_64 rng(3);
    spectral_inverse_apply(SphericalField::random(n, std::max(m, 0) + 1, rng), k);
  } catch (const NotInvertible& e) {
    thrown_m = e.m;
  }
  row.checks.push_back(upper("NotInvertible names the zero mode", std::abs(thrown_m - m), 0.0));
  row.checks.push_back(lower("inverse threw", thrown_m, 0));
  const ReportRow e = verify_euclidean_inequality(k, n, 0, EuclidSource::pullback_extremal, 0);
  const ReportRow s = verify_sphere_inequality(k, n, 0, 1, 0);
  row.checks.push_back(lower("euclidean row trivial", e.trivial ? 1 : 0, 1));
  row.checks.push_back(lower("sphere row trivial", s.trivial ? 1 : 0, 1));
  bool degenerate = false;
  try {
    kernel_constants(n, k);
  } catch (const DegenerateKernel&) {
    degenerate = true;
  }
  row.checks.push_back(lower("G_k degenerate", degenerate ? 1 : 0, 1));
  row.note = "zero mode at degree m=" + std::to_string(m) + "; " + e.note;
  row.finalize();
  return row;
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{"anticommutation", "factorization", "paenitz", "eq1", "norm", "ahlfors"};
  return names;
}

namespace {

double rel_gap(const SphericalField& a, const SphericalField& b) {
  return std::sqrt(gram_norm_squared(a - b) / std::max(gram_norm_squared(b), 1e-300));
}

MobiusMap named_map(const std::string& name, int n) {
  if (name == "cayley") return cayley_map(n);
  if (name == "identity") return identity_map(n);
  if (name == "translation") return translation_map(Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n)));
  throw std::invalid_argument("unknown map '" + name + "'");
}

}  // namespace

ReportRow run_identity(const std::string& name, int n, int k, std::uint64_t seed, const std::string& map,
                       const Tolerances& tol) {
  ReportRow row;
  row.id = "identity-" + name;
  row.n = n;
  row.k = k;
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 1234));
  const double exact = 1e-12;
  if (name == "anticommutation") {
    const SphericalField h = SphericalField::random(n, 3, rng);
    const SphericalField wh = multiply_by_w(h);
    row.checks.push_back(upper("Gamma(w h) + w Gamma(h) + n w h",
                               std::sqrt(gram_norm_squared(gamma_w_apply(wh) + multiply_by_w(gamma_w_apply(h)) + static_cast<double>(n) * wh)) /
                                   std::sqrt(gram_norm_squared(wh)),
                               exact));
    row.checks.push_back(upper("D_S(w h) + w D_S(h)",
                               std::sqrt(gram_norm_squared(ds_apply(wh) + multiply_by_w(ds_apply(h)))) /
                                   std::sqrt(gram_norm_squared(ds_apply(wh))),
                               exact));
  } else if (name == "factorization") {
    const SphericalField f = SphericalField::random(n, 3, rng);
    const SphericalField d = delta_s_apply(f);
    row.checks.push_back(upper("Delta_S - D_S(D_S - w)", rel_gap(d, ds_apply(ds_apply(f) - multiply_by_w(f))), exact));
    row.checks.push_back(upper("Delta_S - (-Delta_w + n(n-2)/4)",
                               rel_gap(d, (-1.0) * laplace_beltrami_apply(f) + 0.25 * n * (n - 2) * f), exact));
  } else if (name == "paenitz") {
    const SphericalField f = SphericalField::random(n, 3, rng);
    const SphericalField d = delta_s_apply(f);
    row.checks.push_back(upper("D_S^(4) - Delta_S(Delta_S - 2)", rel_gap(paenitz_apply(f), delta_s_apply(d - 2.0 * f)), exact));
    row.checks.push_back(upper("D_S^(4) - dsk(4)", rel_gap(paenitz_apply(f), dsk_apply(f, 4)), exact));
  } else if (name == "eq1") {
    const SphericalField psi = SphericalField::random(n, 3, rng);
    std::normal_distribution<double> g(0.0, 1.5);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd x(n);
      for (auto& v : x) v = g(rng);
      pts.push_back(x);
    }
    const IntertwineResidual r = intertwine_residual(psi, k, pts);
    row.quadrature_error = r.residual;
    row.checks.push_back(upper("max |D^k J_k psi(C) - (-1)^k J_-k (D_S^(k) psi)(C)| / scale", r.residual, tol.identity));
    row.note = "unsigned residual " + fmt(r.unsigned_residual) + ", scale " + fmt(r.scale);
  } else if (name == "norm") {
    double worst = 0;
    for (int t = 0; t < 10000; ++t) {
      const Signature sig(2 + t % 5);
      const Mv a = random_versor(rng, sig, 1 + t % 4).value();
      const Mv b = random_multivector(rng, sig);
      worst = std::max(worst, std::abs(norm(a * b) - norm(a) * norm(b)) / (norm(a) * norm(b)));
    }
    row.trials = 10000;
    row.checks.push_back(upper("max rel | |AB| - |A||B| |, N <= 6", worst, 1e-10));
  } else if (name == "ahlfors") {
    const AhlforsReport r = ahlfors_check(named_map(map, n));
    row.source = map;
    row.checks.push_back(lower("(i) versors or zero", r.versors ? 1 : 0, 1));
    row.checks.push_back(lower("(ii) vector products", r.vectors ? 1 : 0, 1));
    row.checks.push_back(lower("(iii) verbatim a~d - c~c nonzero real", r.verbatim_ok ? 1 : 0, 1));
    row.note = "verbatim (iii) = " + to_string(r.verbatim) + "; variant a~d - b~c = " + to_string(r.variant) +
               (r.variant_ok ? " (nonzero real)" : " (not a nonzero real)");
  } else {
    throw std::invalid_argument("unknown identity '" + name + "'");
  }
  row.finalize();
  return row;
}

}  // namespace dirac

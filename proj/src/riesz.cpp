#include "dirac/riesz.hpp"

#include "dirac/quadrature.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

namespace dirac {

DegenerateKernel::DegenerateKernel(int n_, int k_)
    : std::domain_error("G_" + std::to_string(k_) + " degenerates on R^" + std::to_string(n_) +
                        ": the power |z|^(n-k) vanishes for even n = k"),
      n(n_),
      k(k_) {}

std::vector<double> kernel_constants(int n, int k_max) {
  if (n < 2) throw std::invalid_argument("kernel_constants needs n >= 2");
  if (k_max < 1) throw std::invalid_argument("kernel_constants needs k_max >= 1");
  std::vector<double> c{1.0};
  for (int k = 2; k <= k_max; ++k) {
    if (k % 2 == 0) {
      if (k == n) throw DegenerateKernel(n, k);
      c.push_back(c.back() / (k - n));
    } else {
      c.push_back(c.back() / (1 - k));
    }
  }
  return c;
}

int max_kernel_order(int n) { return (n % 2 == 0) ? std::min(n - 1, kMaxKernelOrder) : kMaxKernelOrder; }

RieszKernel RieszKernel::make(int n, int k) {
  if (k < 1) throw std::invalid_argument("G_k needs k >= 1");
  if (n + 1 > kMaxCliffordDim) throw std::invalid_argument("G_k supports n <= 7");
  return {n, k, kernel_constants(n, k).back()};
}

Mv RieszKernel::operator()(const Eigen::VectorXd& z) const {
  if (z.size() != n) throw std::invalid_argument("kernel argument must lie in R^n");
  const double r = z.norm();
  if (r == 0.0) throw std::domain_error("G_k is singular at the origin");
  const Signature sig(n + 1);
  const double c = constant / omega(n);
  if (k % 2 == 0) return Mv::scalar(sig, c * std::pow(r, k - n));
  return Mv::vector(sig, z) * (c * std::pow(r, k - n - 1));
}

RecursionCheck certify_recursion(int n, int k, int pairs, std::uint64_t seed, double step) {
  const RieszKernel g = RieszKernel::make(n, k);
  const Signature sig(n + 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RecursionCheck out;
  while (out.pairs < pairs) {
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = normal(rng);
      y(i) = normal(rng);
    }
    const Eigen::VectorXd z = x - y;
    if (z.norm() < 0.3) continue;
    Mv d(sig);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd zp = z, zm = z;
      zp(j) += step;
      zm(j) -= step;
      d += Mv::basis_vector(sig, j) * ((g(zp) - g(zm)) * (0.5 / step));
    }
    double residual = 0;
    if (k == 1) {
      // D G_1 = 0 away from the pole; measure against |G_1| / |z|.
      residual = norm(d) / (norm(g(z)) / z.norm());
    } else {
      const Mv lower = RieszKernel::make(n, k - 1)(z);
      residual = norm(d - lower) / norm(lower);
    }
    out.max_rel_residual = std::max(out.max_rel_residual, residual);
    ++out.pairs;
  }
  return out;
}

double smooth_cutoff(double r, double radius) {
  if (std::isinf(radius) || r <= 0.5 * radius) return 1.0;
  if (r >= radius) return 0.0;
  const double t = (r - 0.5 * radius) / (0.5 * radius);
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

namespace {

struct Level {
  int panel_nodes;
  int azimuth_degree;
};

constexpr Level kLevels[3] = {{6, 6}, {9, 10}, {12, 14}};

struct Nodes {
  std::vector<double> x, w;
};

std::vector<double> sorted_breaks(std::vector<double> b) {
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double p, double q) { return std::abs(p - q) < 1e-12; }), b.end());
  return b;
}

// Gauss-Legendre on each panel between sorted breaks; a tail adds [last, inf)
// through r = last / u.
Nodes panel_nodes(const std::vector<double>& breaks, bool tail, int per_panel) {
  Nodes out;
  const GaussRule g = gauss_legendre(per_panel);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    for (int i = 0; i < per_panel; ++i) {
      out.x.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.nodes(i));
      out.w.push_back(0.5 * (b - a) * g.weights(i));
    }
  }
  if (tail) {
    const double a = breaks.back();
    for (int i = 0; i < per_panel; ++i) {
      const double u = 0.5 + 0.5 * g.nodes(i);
      out.x.push_back(a / u);
      out.w.push_back(0.5 * g.weights(i) * a / (u * u));
    }
  }
  return out;
}

// Shells about y: geometric toward 0 and toward |y|, where rays pass the origin.
std::vector<double> radial_breaks(double ny, double end) {
  std::vector<double> b{0.0, end};
  for (double x = 0.125; x < end; x *= 2) b.push_back(x);
  if (ny > 1.0)
    for (double d = 0.25; d < ny; d *= 2) {
      b.push_back(ny - d);
      if (ny + d < end) b.push_back(ny + d);
    }
  return sorted_breaks(std::move(b));
}

// Polar angle from the direction toward the origin, graded toward 0 where the
// field is seen under an angle of order 1/|y|.
std::vector<double> polar_breaks(double ny) {
  std::vector<double> b{0.0};
  if (ny <= 1.0) {
    for (int i = 1; i <= 4; ++i) b.push_back(0.25 * i * std::numbers::pi);
    return b;
  }
  for (double t = std::numbers::pi; t > 0.25 / ny; t *= 0.5) b.push_back(t);
  return sorted_breaks(std::move(b));
}

const std::vector<Eigen::MatrixXd>& left_vector_matrices(int N) {
  static std::vector<Eigen::MatrixXd> cache[kMaxCliffordDim + 1];
  static std::once_flag flags[kMaxCliffordDim + 1];
  std::call_once(flags[N], [N] {
    const Signature sig(N);
    const int blades = sig.blade_count();
    const auto& table = product_sign_table(sig);
    for (int j = 0; j < N; ++j) {
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(blades, blades);
      const int ej = 1 << j;
      for (int b = 0; b < blades; ++b) l(ej ^ b, b) = table[static_cast<std::size_t>(ej * blades + b)];
      cache[N].push_back(std::move(l));
    }
  });
  return cache[N];
}

}  // namespace

Eigen::MatrixXd convolve_level(const FieldSampler& sampler, int columns, const RieszKernel& kernel,
                               const Eigen::VectorXd& y, double cutoff_radius, int level) {
  const int n = kernel.n;
  if (y.size() != n) throw std::invalid_argument("convolution point must lie in R^n");
  if (level < 0 || level > 2) throw std::invalid_argument("convolution level must be 0, 1 or 2");
  const Signature sig(n + 1);
  const int blades = sig.blade_count();
  const bool odd = kernel.k % 2 == 1;
  const Level lv = kLevels[level];
  const double c = kernel.constant / omega(n);
  const bool finite = !std::isinf(cutoff_radius);
  const double ny = y.norm();

  // v = cos(t) p + sin(t) Q w, p pointing from y to the origin, w on S^{n-2}.
  Eigen::VectorXd p = Eigen::VectorXd::Unit(n, 0);
  if (ny > 0) p = -y / ny;
  const Eigen::MatrixXd full = Eigen::HouseholderQR<Eigen::MatrixXd>(p).householderQ();
  const Eigen::MatrixXd q = full.rightCols(n - 1);
  const auto azimuth = sphere_rule(n - 2, lv.azimuth_degree);
  const Nodes polar = panel_nodes(polar_breaks(ny), false, lv.panel_nodes);
  const double end = finite ? cutoff_radius + ny : std::max(16.0, 4.0 * ny);
  const Nodes radial = panel_nodes(radial_breaks(ny, end), !finite, lv.panel_nodes);

  std::vector<Eigen::VectorXd> dirs;
  std::vector<double> dir_weights;
  for (std::size_t i = 0; i < polar.x.size(); ++i) {
    const double t = polar.x[i];
    const double wt = polar.w[i] * std::pow(std::sin(t), n - 2);
    for (int j = 0; j < azimuth->size(); ++j) {
      dirs.push_back(std::cos(t) * p + std::sin(t) * (q * azimuth->nodes.col(j)));
      dir_weights.push_back(wt * azimuth->weights(j));
    }
  }

  // G_k(rho v) rho^{n-1} = c rho^{k-1} (v or 1).
  std::vector<Eigen::MatrixXd> acc(static_cast<std::size_t>(odd ? n : 1), Eigen::MatrixXd::Zero(blades, columns));
  Eigen::VectorXd x(n);
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double rho = radial.x[i];
    const double wr = c * std::pow(rho, kernel.k - 1) * radial.w[i];
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      x = y + rho * dirs[j];
      const double chi = smooth_cutoff(x.norm(), cutoff_radius);
      if (chi == 0.0) continue;
      const Eigen::MatrixXd f = sampler(x) * (wr * dir_weights[j] * chi);
      if (odd) {
        for (int d = 0; d < n; ++d) acc[static_cast<std::size_t>(d)] += dirs[j](d) * f;
      } else {
        acc[0] += f;
      }
    }
  }

  if (!odd) return acc[0];
  const auto& left = left_vector_matrices(n + 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(blades, columns);
  for (int j = 0; j < n; ++j) out += left[static_cast<std::size_t>(j)] * acc[static_cast<std::size_t>(j)];
  return out;
}

FieldSampler field_sampler(const std::vector<RationalField>& fields) {
  if (fields.empty()) throw std::invalid_argument("field_sampler needs at least one field");
  const int n = fields.front().n();
  const int blades = fields.front().signature().blade_count();
  const int m = static_cast<int>(fields.size());
  std::map<std::pair<int, Exponent>, int> index;
  int degree = 0;
  for (const auto& f : fields) {
    if (f.n() != n) throw std::invalid_argument("fields live on different R^n");
    for (const auto& [s, p] : f.terms())
      for (const auto& [e, c] : p.terms()) {
        index.emplace(std::make_pair(s, e), 0);
        degree = std::max(degree, p.degree());
      }
  }
  std::vector<int> exps, weights;
  int col = 0;
  for (auto& [key, i] : index) {
    i = col++;
    weights.push_back(key.first);
    for (int j = 0; j < n; ++j) exps.push_back(key.second[static_cast<std::size_t>(j)]);
  }
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(blades * m, std::max(col, 1));
  for (int a = 0; a < m; ++a)
    for (const auto& [s, p] : fields[static_cast<std::size_t>(a)].terms())
      for (const auto& [e, c] : p.terms()) coeffs.block(a * blades, index.at({s, e}), blades, 1) += c.coeffs();
  return [=](const Eigen::VectorXd& x) {
    Eigen::MatrixXd powers(degree + 1, n);
    for (int j = 0; j < n; ++j) {
      powers(0, j) = 1.0;
      for (int d = 1; d <= degree; ++d) powers(d, j) = powers(d - 1, j) * x(j);
    }
    const double q = 1.0 + x.squaredNorm();
    Eigen::VectorXd mono = Eigen::VectorXd::Zero(coeffs.cols());
    int last_s = INT_MIN;
    double g = 0;
    for (int i = 0; i < col; ++i) {
      if (weights[static_cast<std::size_t>(i)] != last_s) {
        last_s = weights[static_cast<std::size_t>(i)];
        g = std::pow(q, -0.5 * last_s);
      }
      double v = g;
      for (int j = 0; j < n; ++j) v *= powers(exps[static_cast<std::size_t>(i * n + j)], j);
      mono(i) = v;
    }
    const Eigen::VectorXd flat = coeffs * mono;
    return Eigen::MatrixXd(Eigen::Map<const Eigen::MatrixXd>(flat.data(), blades, m));
  };
}

std::vector<ConvolutionValue> convolve_gk(const RationalField& h, int k, const std::vector<Eigen::VectorXd>& ys,
                                          const ConvolutionOptions& opts) {
  const RieszKernel kernel = RieszKernel::make(h.n(), k);
  if (k > max_kernel_order(h.n())) throw DegenerateKernel(h.n(), k);
  const Signature sig(h.n() + 1);
  std::vector<ConvolutionValue> out;
  if (h.is_zero()) {
    for (std::size_t i = 0; i < ys.size(); ++i) out.push_back({Mv(sig), 0.0});
    return out;
  }
  const FieldSampler sampler = field_sampler({h});
  for (const auto& y : ys) {
    const Eigen::MatrixXd l2 = convolve_level(sampler, 1, kernel, y, opts.cutoff_radius, 1);
    const Eigen::MatrixXd l3 = convolve_level(sampler, 1, kernel, y, opts.cutoff_radius, 2);
    Mv v(sig);
    v.mutable_coeffs() = l3.col(0);
    out.push_back({v, (l3 - l2).norm()});
  }
  return out;
}

}  // namespace dirac

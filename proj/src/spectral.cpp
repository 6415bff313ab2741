#include "dirac/spectral.hpp"

#include "dirac/polyspace.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dirac {

Block w_block() {
  Block b;
  b << 0, -1, 1, 0;
  return b;
}

Block gamma_block(int n, int m) {
  Block b;
  b << m, 0, 0, -(n + m);
  return b;
}

Block ds_shift_block(int n, int m, double alpha) {
  const double s = spectral_s(n, m);
  Block b;
  b << 0, s + alpha, s - alpha, 0;
  return b;
}

Block ds_block(int n, int m) { return ds_shift_block(n, m, 0.0); }

Block d_alpha_block(int n, int m, double alpha) {
  Block b;
  b << 0, n + m - alpha, m + alpha, 0;
  return b;
}

Block laplace_beltrami_block(int n, int m) {
  const Block g = gamma_block(n, m);
  return (Block::Identity() * (1.0 - n) - g) * g;
}

std::vector<double> dsk_shifts(int k) {
  if (k < 0) throw std::invalid_argument("D_S^(k) needs k >= 0");
  std::vector<double> shifts;
  for (int i = 0; i < k; ++i) shifts.push_back(static_cast<double>((i + 1) / 2));
  return shifts;
}

Block dsk_block(int n, int m, int k) {
  Block out = Block::Identity();
  for (double a : dsk_shifts(k)) out = out * ds_shift_block(n, m, a);
  return out;
}

Block delta_s_block(int n, int m) { return dsk_block(n, m, 2); }
Block paenitz_block(int n, int m) { return dsk_block(n, m, 4); }

Eigen::Vector2d block_eigenvalues(const Block& b) {
  const double half_trace = 0.5 * b.trace();
  const double disc = half_trace * half_trace - b.determinant();
  if (disc < -1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff()))
    throw std::domain_error("block has complex eigenvalues");
  const double root = std::sqrt(std::max(disc, 0.0));
  return {half_trace + root, half_trace - root};
}

std::string SpectrumTable::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "m,lambda_plus,lambda_minus,multiplicity\r\n";
  for (const auto& r : rows) out << r.m << ',' << r.lambda_plus << ',' << r.lambda_minus << ',' << r.multiplicity << "\r\n";
  return out.str();
}

SpectrumTable spectrum_table(int k, int n, int m_max) {
  if (k < 1) throw std::invalid_argument("spectrum_table needs k >= 1");
  if (n < 1) throw std::invalid_argument("spectrum_table needs n >= 1");
  if (m_max < 0) throw std::invalid_argument("spectrum_table needs m_max >= 0");
  if (n + 1 > 8) throw std::invalid_argument("spectrum_table supports n <= 7");
  SpectrumTable t;
  t.n = n;
  t.k = k;
  for (int m = 0; m <= m_max; ++m) {
    const Eigen::Vector2d ev = block_eigenvalues(dsk_block(n, m, k));
    t.rows.push_back({m, ev(0), ev(1), monogenic_dimension(n + 1, m)});
  }
  return t;
}

int default_mmax(int k, int n) { return n + k + 2; }

namespace {

struct Extremum {
  int m = 0;
  double value = std::numeric_limits<double>::infinity();
};

Extremum find_extremum(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("sharp constant needs k >= 1 and n >= 1");
  Extremum best;
  for (int m = 0; m <= default_mmax(k, n); ++m) {
    const Eigen::Vector2d ev = block_eigenvalues(dsk_block(n, m, k));
    const double v = std::min(std::abs(ev(0)), std::abs(ev(1)));
    if (v < best.value) best = {m, v};
  }
  return best;
}

}  // namespace

double sharp_constant(int k, int n) { return find_extremum(k, n).value; }

int extremal_degree(int k, int n) { return find_extremum(k, n).m; }

Eigen::Vector2d extremal_direction(int k, int n) {
  const int m = extremal_degree(k, n);
  const Block b = dsk_block(n, m, k);
  const Eigen::Vector2d ev = block_eigenvalues(b);
  const double lambda = std::abs(ev(0)) <= std::abs(ev(1)) ? ev(0) : ev(1);
  // Blocks are diagonal (k even) or symmetric off-diagonal (k odd).
  Eigen::Vector2d v;
  if (std::abs(b(0, 1)) < 1e-300 && std::abs(b(1, 0)) < 1e-300) {
    v = std::abs(b(0, 0) - lambda) <= std::abs(b(1, 1) - lambda) ? Eigen::Vector2d(1, 0) : Eigen::Vector2d(0, 1);
  } else {
    const Block shifted = b - lambda * Block::Identity();
    v = Eigen::Vector2d(-shifted(0, 1), shifted(0, 0));
    if (v.norm() < 1e-300) v = Eigen::Vector2d(-shifted(1, 1), shifted(1, 0));
  }
  return v.normalized();
}

bool dsk_invertible(int k, int n) { return sharp_constant(k, n) > 0.0; }

namespace {

bool near_integer(double x, double& out) {
  out = std::round(x);
  return std::abs(x - out) <= 1e-12 * std::max(1.0, std::abs(x));
}

}  // namespace

bool d_alpha_invertible(int n, double alpha) {
  double r;
  if (!near_integer(alpha, r)) return true;
  return !(r <= 0.0 || r >= n);
}

long d_alpha_zero_modes(int n, double alpha, int m_max) {
  long total = 0;
  for (int m = 0; m <= m_max; ++m) {
    const Block b = d_alpha_block(n, m, alpha);
    const int zeros = (std::abs(b(0, 1)) <= 1e-12) + (std::abs(b(1, 0)) <= 1e-12);
    total += zeros * monogenic_dimension(n + 1, m);
  }
  return total;
}

long ds_shift_zero_modes(int n, double alpha, int m_max) {
  long total = 0;
  for (int m = 0; m <= m_max; ++m) {
    const Block b = ds_shift_block(n, m, alpha);
    const int zeros = (std::abs(b(0, 1)) <= 1e-12) + (std::abs(b(1, 0)) <= 1e-12);
    total += zeros * monogenic_dimension(n + 1, m);
  }
  return total;
}

}  // namespace dirac

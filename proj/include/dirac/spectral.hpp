#pragma once

// Exact 2x2 spectral blocks of the spherical Dirac-type operators.
//
// On degree m the pair (p, w p) with p in P_m spans an invariant plane. Blocks
// act on the coefficient column (c_p, c_wp) and s = m + n/2 throughout.

#include <Eigen/Core>

#include <string>
#include <vector>

namespace dirac {

using Block = Eigen::Matrix2d;

inline double spectral_s(int n, int m) { return m + 0.5 * n; }

Block w_block();
Block gamma_block(int n, int m);
// D_S - alpha w.
Block ds_shift_block(int n, int m, double alpha);
Block ds_block(int n, int m);
// D_alpha = w (Gamma + alpha).
Block d_alpha_block(int n, int m, double alpha);
// Delta_w = ((1 - n) - Gamma) Gamma.
Block laplace_beltrami_block(int n, int m);

// Shifts 0, 1, 1, 2, 2, 3, ... of the factors of D_S^(k), leftmost first.
std::vector<double> dsk_shifts(int k);
// D_S^(k) = (D_S - a_0 w)(D_S - a_1 w)...(D_S - a_{k-1} w); identity for k = 0.
Block dsk_block(int n, int m, int k);
Block delta_s_block(int n, int m);
Block paenitz_block(int n, int m);

// Real eigenvalues (larger first); throws if the block has a complex pair.
Eigen::Vector2d block_eigenvalues(const Block& b);

struct SpectrumRow {
  int m = 0;
  double lambda_plus = 0;
  double lambda_minus = 0;
  long multiplicity = 0;
};

struct SpectrumTable {
  int n = 0;
  int k = 0;
  std::vector<SpectrumRow> rows;

  std::string to_csv() const;
};

SpectrumTable spectrum_table(int k, int n, int m_max);

// Default window m <= n + k + 2 for minimum searches.
int default_mmax(int k, int n);

// min over m of |eigenvalue| of D_S^(k); exactly 0 when n is even and k >= n.
double sharp_constant(int k, int n);
int extremal_degree(int k, int n);
// Unit eigenvector (c_p, c_wp) of the smallest |eigenvalue| at the extremal degree.
Eigen::Vector2d extremal_direction(int k, int n);

bool dsk_invertible(int k, int n);

// -alpha not in sigma(Gamma_w) = {0, 1, 2, ...} u {-n, -n-1, ...}.
bool d_alpha_invertible(int n, double alpha);
// Total multiplicity of zero eigenvalues of D_alpha over degrees m <= m_max.
long d_alpha_zero_modes(int n, double alpha, int m_max);
// Same for D_S - alpha w (nonzero kernel iff alpha = +-(m + n/2) for some m).
long ds_shift_zero_modes(int n, double alpha, int m_max);

}  // namespace dirac

#include "dirac/sphere_kernels.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace dirac {

namespace {

void check_pair(const Eigen::VectorXd& w, const Eigen::VectorXd& y) {
  if (w.size() != y.size() || w.size() < 2) throw std::invalid_argument("kernel points must share R^{n+1}, n >= 1");
  if ((w - y).norm() < 1e-14) throw std::domain_error("kernel is singular at w = y");
}

}  // namespace

Mv c1_kernel_eval(const Eigen::VectorXd& w, const Eigen::VectorXd& y) {
  check_pair(w, y);
  const int n = static_cast<int>(w.size()) - 1;
  const Eigen::VectorXd d = y - w;
  return Mv::vector(Signature(n + 1), d) * (1.0 / (omega(n) * std::pow(d.norm(), n)));
}

double c2_kernel_eval(const Eigen::VectorXd& w, const Eigen::VectorXd& y) {
  check_pair(w, y);
  const int n = static_cast<int>(w.size()) - 1;
  if (n < 3) throw std::invalid_argument("C2 needs n >= 3");
  return 1.0 / ((n - 2) * omega(n) * std::pow((w - y).norm(), n - 2));
}

Eigen::MatrixXd tangent_frame(const Eigen::VectorXd& y) {
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ();
  return q.rightCols(y.size() - 1);
}

Mv convolve_c1(const SphericalField& phi, const Eigen::VectorXd& y, int theta_nodes) {
  const int n = phi.n();
  const int N = n + 1;
  if (y.size() != N) throw std::invalid_argument("y must lie in R^{n+1}");
  const Signature sig(N);
  const Poly field = phi.ambient_polynomial();
  const Eigen::MatrixXd frame = tangent_frame(y);
  const auto dirs = sphere_rule(n - 1, phi.band_limit() + 3);
  const GaussRule t = gauss_legendre(theta_nodes, 0.0, 0.5 * std::numbers::pi);
  const double c = 2.0 / omega(n);

  Mv total(sig);
  Mv kernel(sig);
  for (Eigen::Index i = 0; i < t.nodes.size(); ++i) {
    const double th = t.nodes(i);
    const double radial = c * t.weights(i) * std::pow(std::cos(th), n - 1);
    for (int j = 0; j < dirs->size(); ++j) {
      const Eigen::VectorXd u = frame * dirs->nodes.col(j);
      const Eigen::VectorXd w = std::cos(2 * th) * y + std::sin(2 * th) * u;
      const Eigen::VectorXd k = std::sin(th) * y - std::cos(th) * u;
      kernel = Mv::vector(sig, k);
      accumulate_product(kernel * (radial * dirs->weights(j)), evaluate(field, w), total);
    }
  }
  return total;
}

C2IdentityResidual c2_identity_residual(const Eigen::VectorXd& w, const Eigen::VectorXd& y, double step) {
  const int N = static_cast<int>(y.size());
  const int n = N - 1;
  const Signature sig(N);
  auto extended = [&w](const Eigen::VectorXd& p) { return c2_kernel_eval(w, p / p.norm()); };

  Mv dirac(sig);
  for (int j = 0; j < N; ++j) {
    Eigen::VectorXd yp = y, ym = y;
    yp(j) += step;
    ym(j) -= step;
    dirac += Mv::basis_vector(sig, j) * ((extended(yp) - extended(ym)) / (2 * step));
  }
  const Mv yv = Mv::vector(sig, y);
  const Mv wv = Mv::vector(sig, w);
  const double c2 = c2_kernel_eval(w, y);
  // D_S = y (Gamma + n/2) with Gamma = y D on degree-0 functions.
  const Mv ds = yv * (yv * dirac) + yv * (0.5 * n * c2);
  const Mv c1 = c1_kernel_eval(w, y);

  C2IdentityResidual r;
  r.residual = norm(ds - c1 - yv * c2);
  r.printed_form_residual = norm(ds - c1 + wv * c2);
  r.scale = std::max(norm(ds), norm(c1));
  return r;
}

}  // namespace dirac

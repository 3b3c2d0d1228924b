#include "det3/nystrom.hpp"

namespace det3 {

NystromSystem build_nystrom(const Coefficients& c, cplx k, Branch branch, int n) {
  require_off_pole(k);
  NystromSystem sys;
  sys.k = k;
  sys.branch = branch;
  sys.grid = make_panel_grid(c.merged_breaks(), n);
  const PanelGrid& g = sys.grid;
  const int N = static_cast<int>(g.size());
  sys.matrix.resize(N, N);
  for (int i = 0; i < N; ++i) {
    const double xi = g.x[i];
    const cplx two_p = 2.0 * c.p()(xi);
    const cplx c1 = c.q()(xi) - cplx(0.0, 1.0) * c.dp()(xi);
    for (int j = 0; j < N; ++j) {
      const double t = xi - g.x[j];
      const cplx kij = two_p * free_kernel_dx(branch, k, t) + c1 * free_kernel(branch, k, t);
      sys.matrix(i, j) = g.sqw[i] * kij * g.sqw[j];
    }
  }
  sys.frobenius = sys.matrix.norm();
  return sys;
}

MatC build_nystrom_dk(const Coefficients& c, cplx k, Branch branch, const PanelGrid& g) {
  require_off_pole(k);
  const int N = static_cast<int>(g.size());
  MatC m(N, N);
  for (int i = 0; i < N; ++i) {
    const double xi = g.x[i];
    const cplx two_p = 2.0 * c.p()(xi);
    const cplx c1 = c.q()(xi) - cplx(0.0, 1.0) * c.dp()(xi);
    for (int j = 0; j < N; ++j) {
      const double t = xi - g.x[j];
      const cplx kij =
          two_p * free_kernel_dx_dk(branch, k, t) + c1 * free_kernel_dk(branch, k, t);
      m(i, j) = g.sqw[i] * kij * g.sqw[j];
    }
  }
  return m;
}

VecC free_wave_row(const Coefficients& c, cplx k, const PanelGrid& g) {
  (void)c;
  const int N = static_cast<int>(g.size());
  VecC v(N);
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  for (int i = 0; i < N; ++i)
    v[i] = norm * std::exp(cplx(0.0, -1.0) * k * g.x[i]) * g.sqw[i];
  return v;
}

VecC weighted_wave_col(const Coefficients& c, cplx k, const PanelGrid& g) {
  const int N = static_cast<int>(g.size());
  VecC v(N);
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  for (int i = 0; i < N; ++i)
    v[i] = norm * std::exp(cplx(0.0, 1.0) * k * g.x[i]) * c.V(g.x[i], k) * g.sqw[i];
  return v;
}

MatC rank_one_matrix(const Coefficients& c, cplx k, const PanelGrid& g) {
  const int N = static_cast<int>(g.size());
  MatC m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      m(i, j) = g.sqw[i] * rank_one_kernel(c, k, g.x[i], g.x[j]) * g.sqw[j];
  return m;
}

}  // namespace det3

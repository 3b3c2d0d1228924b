#include "det3/determinant.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace det3 {

namespace {

// Cube-root rotations as used by the triangular-route factors, honouring the
// kernel mutation hook so a corrupted kernel corrupts every route coherently.
inline cplx mrot() { return kernel_mutation() ? omega_bar : omega; }
inline cplx mrot_bar() { return kernel_mutation() ? omega : omega_bar; }

constexpr cplx iu{0.0, 1.0};

}  // namespace

// ---------------------------------------------------------------------------
// VolterraEvaluator
// ---------------------------------------------------------------------------

VolterraEvaluator::VolterraEvaluator(const Coefficients& c, int n, int nodes_per_panel,
                                     int aux_nodes)
    : c_(c),
      grid_(make_panel_grid(c.merged_breaks(), n, nodes_per_panel)),
      aux_nodes_(aux_nodes) {
  build_geometry();
}

void VolterraEvaluator::build_geometry() {
  const GaussRule& aux = gauss_legendre(aux_nodes_);
  const int m = grid_.nodes_per_panel;
  fwd_.resize(grid_.panels.size());
  bwd_.resize(grid_.panels.size());
  for (size_t pi = 0; pi < grid_.panels.size(); ++pi) {
    const Panel& pan = grid_.panels[pi];
    // Barycentric weights of the panel's own nodes.
    std::vector<double> bary(m, 1.0);
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l)
        if (l != j) bary[j] /= (pan.x[j] - pan.x[l]);
    for (int side = 0; side < 2; ++side) {
      PanelGeom& geom = side == 0 ? fwd_[pi] : bwd_[pi];
      geom.aux_x.assign(m, {});
      geom.aux_w.assign(m, {});
      geom.lagr.assign(m, {});
      for (int i = 0; i < m; ++i) {
        const double lo = side == 0 ? pan.a : pan.x[i];
        const double hi = side == 0 ? pan.x[i] : pan.b;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        geom.aux_x[i].resize(aux_nodes_);
        geom.aux_w[i].resize(aux_nodes_);
        geom.lagr[i].resize(static_cast<size_t>(aux_nodes_) * m);
        for (int r = 0; r < aux_nodes_; ++r) {
          const double y = mid + half * aux.x[r];
          geom.aux_x[i][r] = y;
          geom.aux_w[i][r] = half * aux.w[r];
          // Lagrange basis of the panel nodes evaluated at y (barycentric).
          double denom = 0.0;
          int hit = -1;
          for (int j = 0; j < m; ++j) {
            if (y == pan.x[j]) {
              hit = j;
              break;
            }
            denom += bary[j] / (y - pan.x[j]);
          }
          for (int j = 0; j < m; ++j)
            geom.lagr[i][static_cast<size_t>(r) * m + j] =
                hit >= 0 ? (j == hit ? 1.0 : 0.0)
                         : bary[j] / (y - pan.x[j]) / denom;
        }
      }
    }
  }
}

template <bool with_deriv>
VolterraEvaluator::ValueDeriv VolterraEvaluator::run(cplx k, Branch branch) const {
  require_off_pole(k);
  const bool plus = branch == Branch::plus;
  const int N = grid_.size();
  const int m = grid_.nodes_per_panel;
  const int npan = static_cast<int>(grid_.panels.size());
  const cplx w = mrot(), wb = mrot_bar();
  const cplx rho = plus ? wb : w;  // exponential rotation of the factors
  const cplx pref2 = iu / (3.0 * k * k);

  // Node data: coefficients, rank-one factors f, g and their k-derivatives.
  std::vector<cplx> c1(N), p2(N), f(N), g(N), df, dg;
  if constexpr (with_deriv) {
    df.resize(N);
    dg.resize(N);
  }
  for (int i = 0; i < N; ++i) {
    const double x = grid_.x[i];
    c1[i] = c_.q()(x) - iu * c_.dp()(x);
    p2[i] = 2.0 * c_.p()(x);
    const cplx ex = std::exp(iu * x * k * rho);
    if (plus) {
      f[i] = -pref2 * (wb * c1[i] + 2.0 * k * w * (0.5 * p2[i])) * ex;
      g[i] = std::exp(-iu * x * k * rho);
      if constexpr (with_deriv) {
        df[i] = -pref2 * wb * c1[i] * (iu * x * wb - 2.0 / k) * ex -
                (2.0 * iu * w / (3.0 * k)) * (0.5 * p2[i]) * (iu * x * wb - 1.0 / k) * ex;
        dg[i] = -iu * x * wb * g[i];
      }
    } else {
      f[i] = pref2 * (w * c1[i] + 2.0 * k * wb * (0.5 * p2[i])) * ex;
      g[i] = std::exp(-iu * x * k * rho);
      if constexpr (with_deriv) {
        df[i] = pref2 * w * c1[i] * (iu * x * w - 2.0 / k) * ex +
                (2.0 * iu * wb / (3.0 * k)) * (0.5 * p2[i]) * (iu * x * w - 1.0 / k) * ex;
        dg[i] = -iu * x * w * g[i];
      }
    }
  }

  std::vector<cplx> u(N), du;
  if constexpr (with_deriv) du.resize(N);

  Eigen::MatrixXcd A(m, m), Bp;
  Eigen::VectorXcd rhs(m), rhs2;
  if constexpr (with_deriv) {
    Bp.resize(m, m);
    rhs2.resize(m);
  }

  for (int step = 0; step < npan; ++step) {
    const int pi = plus ? step : npan - 1 - step;
    const PanelGeom& geom = plus ? fwd_[pi] : bwd_[pi];
    const int base = pi * m;

    for (int i = 0; i < m; ++i) {
      const int gi = base + i;
      const double xi = grid_.x[gi];
      // Cross-panel history by plain quadrature over already-solved nodes.
      cplx cross = 0.0, crossd = 0.0;
      for (int q = 0; q < step; ++q) {
        const int qi = plus ? q : npan - 1 - q;
        for (int j = 0; j < m; ++j) {
          const int gj = qi * m + j;
          const double t = xi - grid_.x[gj];
          const cplx wker =
              c1[gi] * causal_kernel(branch, k, t) + p2[gi] * causal_kernel_dx(branch, k, t);
          cross += grid_.w[gj] * wker * u[gj];
          if constexpr (with_deriv) {
            const cplx wkerd = c1[gi] * causal_kernel_dk(branch, k, t) +
                               p2[gi] * causal_kernel_dx_dk(branch, k, t);
            crossd += grid_.w[gj] * (wkerd * u[gj] + wker * du[gj]);
          }
        }
      }
      rhs[i] = f[gi] - cross;
      if constexpr (with_deriv) rhs2[i] = df[gi] - crossd;

      // Within-panel block by product integration against the Lagrange basis.
      for (int j = 0; j < m; ++j) A(i, j) = (i == j) ? 1.0 : 0.0;
      if constexpr (with_deriv) Bp.row(i).setZero();
      for (int r = 0; r < aux_nodes_; ++r) {
        const double t = xi - geom.aux_x[i][r];
        const double aw = geom.aux_w[i][r];
        const cplx wker =
            aw * (c1[gi] * causal_kernel(branch, k, t) + p2[gi] * causal_kernel_dx(branch, k, t));
        const double* l = &geom.lagr[i][static_cast<size_t>(r) * m];
        for (int j = 0; j < m; ++j) A(i, j) += wker * l[j];
        if constexpr (with_deriv) {
          const cplx wkerd = aw * (c1[gi] * causal_kernel_dk(branch, k, t) +
                                   p2[gi] * causal_kernel_dx_dk(branch, k, t));
          for (int j = 0; j < m; ++j) Bp(i, j) += wkerd * l[j];
        }
      }
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd upan = lu.solve(rhs);
    for (int i = 0; i < m; ++i) u[base + i] = upan[i];
    if constexpr (with_deriv) {
      rhs2 -= Bp * upan;
      Eigen::VectorXcd dupan = lu.solve(rhs2);
      for (int i = 0; i < m; ++i) du[base + i] = dupan[i];
    }
  }

  ValueDeriv out{1.0, 0.0};
  for (int i = 0; i < N; ++i) out.value += grid_.w[i] * g[i] * u[i];
  if constexpr (with_deriv)
    for (int i = 0; i < N; ++i) out.deriv += grid_.w[i] * (dg[i] * u[i] + g[i] * du[i]);
  return out;
}

cplx VolterraEvaluator::det(cplx k, Branch branch) const {
  return run<false>(k, branch).value;
}

VolterraEvaluator::ValueDeriv VolterraEvaluator::det_with_derivative(cplx k,
                                                                     Branch branch) const {
  return run<true>(k, branch);
}

// ---------------------------------------------------------------------------
// Dense route
// ---------------------------------------------------------------------------

cplx branch_anchor(const Coefficients& c) {
  return std::max(10.0, 2.0 * c.series_radius()) * zeta12;
}

static DeterminantValue determinant_impl(const NystromSystem& sys, bool estimate,
                                         const Coefficients* c) {
  DeterminantValue out;
  out.k = sys.k;
  const int N = sys.grid.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N) + sys.matrix;
  out.d = A.partialPivLu().determinant();
  if (c != nullptr) {
    out.branch_anchor = branch_anchor(*c);
    const double a = std::arg(sys.k);
    const bool in_wedge = a >= -1e-12 && a <= pi / 3.0 + 1e-12;
    if (sys.branch == Branch::plus && in_wedge) {
      // Principal log is the continued branch here once |log D| < pi, which
      // the series bound guarantees for |k| >= r_star.
      if (std::abs(sys.k) >= c->series_radius()) out.log_d = std::log(out.d);
      out.wedge_zero_alarm = std::abs(out.d) < 1e-5;
    }
    if (estimate) {
      NystromSystem fine = build_nystrom(*c, sys.k, sys.branch, 2 * N);
      const int M = fine.grid.size();
      Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(M, M) + fine.matrix;
      const cplx d2 = B.partialPivLu().determinant();
      out.self_error = std::abs(out.d - d2) / std::max(1e-300, std::abs(d2));
    }
  }
  return out;
}

DeterminantValue determinant(const NystromSystem& sys, bool estimate_convergence,
                             const Coefficients& c) {
  return determinant_impl(sys, estimate_convergence, &c);
}

DeterminantValue determinant(const NystromSystem& sys) {
  return determinant_impl(sys, false, nullptr);
}

// ---------------------------------------------------------------------------
// Traces and series
// ---------------------------------------------------------------------------

TracePair trace_Y(const Coefficients& c, cplx k, Branch branch, int n) {
  require_off_pole(k);
  PanelGrid g = make_panel_grid(c.merged_breaks(), n);
  TracePair out{0.0, 0.0};
  const cplx r0 = free_kernel(branch, k, 0.0);
  const cplx dr0 = free_kernel_dx(branch, k, 0.0);
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.x[i];
    out.numeric += g.w[i] * (2.0 * c.p()(x) * dr0 + (c.q()(x) - iu * c.dp()(x)) * r0);
  }
  // Exact diagonal limits: R(0) = e^{i pi/3} i/3k^2, R'(0) = e^{-i pi/3} i/3k
  // for the plus branch; omega / omega_bar for the minus branch. The p'
  // moment integrates to zero over the compact support.
  const cplx pref1 = iu / (3.0 * k), pref = iu / (3.0 * k * k);
  if (branch == Branch::plus)
    out.closed_form = 2.0 * c.p0() * pref1 * (-omega) + c.q0() * pref * (-omega_bar);
  else
    out.closed_form = 2.0 * c.p0() * pref1 * omega_bar + c.q0() * pref * omega;
  return out;
}

LogSeriesResult log_det_series(const Coefficients& c, cplx k, int N, int n) {
  require_off_pole(k);
  const double a = std::arg(k);
  if (std::abs(k) < c.series_radius() - 1e-12 || a < -1e-9 || a > pi / 3.0 + 1e-9)
    throw std::domain_error("log_det_series outside the series regime (|k| >= r_star, "
                            "arg k in [0, pi/3])");
  if (N < 1) throw std::domain_error("log_det_series needs N >= 1");
  NystromSystem sys = build_nystrom(c, k, Branch::plus, n);
  LogSeriesResult out{0.0, 0.0, 0.0};
  Eigen::MatrixXcd power = sys.matrix;
  double sign = 1.0;
  for (int j = 1; j <= N; ++j) {
    out.partial_sum += sign * power.trace() / static_cast<double>(j);
    if (j < N) power = power * sys.matrix;
    sign = -sign;
  }
  const double ratio = c.size_constant() / std::abs(k);
  out.remainder_bound = std::pow(ratio, N + 1);
  out.remainder_bound_proof = std::pow(2.0 / 3.0 * c.size_constant() / std::abs(k), N + 1);
  return out;
}

cplx log_derivative(const Coefficients& c, cplx k, Branch branch, int n) {
  NystromSystem sys = build_nystrom(c, k, branch, n);
  const int N = sys.grid.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N) + sys.matrix;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const cplx d = lu.determinant();
  if (std::abs(d) < 1e-10)
    throw std::runtime_error("log_derivative at a near-zero of the determinant");
  Eigen::MatrixXcd dM = build_nystrom_dk(c, k, branch, sys.grid);
  return lu.solve(dM).trace();
}

// ---------------------------------------------------------------------------
// Continued log along a path
// ---------------------------------------------------------------------------

namespace {

void continue_step(const VolterraEvaluator& ev, cplx k0, cplx v0, double phi0, cplx k1,
                   double det_floor, int depth, ContinuedLog& out) {
  const cplx v1 = ev.det(k1);
  if (std::abs(v1) < det_floor) {
    std::ostringstream msg;
    msg << "log continuation hit |D| < " << det_floor << " at k = (" << k1.real() << ", "
        << k1.imag() << ")";
    throw std::runtime_error(msg.str());
  }
  const double dphi = std::arg(v1 / v0);
  if (std::abs(dphi) < pi / 2.0) {
    out.k.push_back(k1);
    out.log_d.push_back(cplx(std::log(std::abs(v1)), phi0 + dphi));
    return;
  }
  if (depth >= 48)
    throw std::runtime_error("log continuation could not resolve a phase step "
                             "(zero on or near the path?)");
  const cplx mid = 0.5 * (k0 + k1);
  continue_step(ev, k0, v0, phi0, mid, det_floor, depth + 1, out);
  const cplx vm = ev.det(mid);
  continue_step(ev, mid, vm, out.log_d.back().imag(), k1, det_floor, depth + 1, out);
}

}  // namespace

ContinuedLog continue_log(const VolterraEvaluator& ev, const std::vector<cplx>& path,
                          double det_floor) {
  if (path.empty()) throw std::invalid_argument("continue_log: empty path");
  ContinuedLog out;
  const cplx v0 = ev.det(path[0]);
  if (std::abs(v0) < det_floor)
    throw std::runtime_error("log continuation anchor sits on a determinant zero");
  out.k.push_back(path[0]);
  out.log_d.push_back(std::log(v0));  // principal at the anchor by contract
  for (size_t j = 1; j < path.size(); ++j) {
    const cplx kprev = out.k.back();
    continue_step(ev, kprev, ev.det(kprev), out.log_d.back().imag(), path[j], det_floor, 0,
                  out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sector continuation identities
// ---------------------------------------------------------------------------

namespace {

struct DenseSolve {
  NystromSystem sys;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  DenseSolve(const Coefficients& c, cplx k, Branch b, int n)
      : sys(build_nystrom(c, k, b, n)),
        lu(Eigen::MatrixXcd::Identity(sys.grid.size(), sys.grid.size()) + sys.matrix) {}
};

}  // namespace

std::vector<ContinuationResidual> continuation_identities(const Coefficients& c, cplx k,
                                                          int n) {
  require_off_pole(k);
  VolterraEvaluator ev(c, 128);
  const cplx dplus = ev.det(k, Branch::plus);
  const cplx kp = omega * k, km = omega_bar * k;
  const cplx ck = amplitude_weight(k);
  std::vector<ContinuationResidual> out;

  {
    // Same-argument rank-one update D+(k) = D-(k) (1 + c_k psi1 Jm psi2),
    // valid in every wedge; block size 1.
    DenseSolve mm(c, k, Branch::minus, n);
    VecC r = free_wave_row(c, k, mm.sys.grid);
    VecC col = weighted_wave_col(c, k, mm.sys.grid);
    const cplx dot = (r.transpose() * mm.lu.solve(col))(0);  // bilinear, no conjugation
    const cplx rhs = ev.det(k, Branch::minus) * (1.0 + ck * dot);
    out.push_back({1, dplus, rhs, std::abs(dplus - rhs) / std::abs(dplus)});
  }

  switch (classify_wedge(k)) {
    case Wedge::upper_mid: {
      // D+(k) = D-(km) (1 + c_k e_+ psi1(kp) Jm(km) psi2(kp)).
      DenseSolve mm(c, km, Branch::minus, n);
      VecC r = free_wave_row(c, kp, mm.sys.grid);
      VecC col = weighted_wave_col(c, kp, mm.sys.grid);
      const cplx dot = (r.transpose() * mm.lu.solve(col))(0);
      const cplx rhs = ev.det(km, Branch::minus) * (1.0 + ck * omega * dot);
      out.push_back({1, dplus, rhs, std::abs(dplus - rhs) / std::abs(dplus)});
      break;
    }
    case Wedge::upper_far: {
      // D+(k) = D+(km) det_2(I + c_k Psi1 Jp(km) Psi2).
      DenseSolve pp(c, km, Branch::plus, n);
      const int N = pp.sys.grid.size();
      Eigen::MatrixXcd P1(2, N), P2(N, 2);
      P1.row(0) = free_wave_row(c, kp, pp.sys.grid).transpose();
      P1.row(1) = free_wave_row(c, km, pp.sys.grid).transpose();
      P2.col(0) = omega * weighted_wave_col(c, kp, pp.sys.grid);
      P2.col(1) = -omega_bar * weighted_wave_col(c, km, pp.sys.grid);
      Eigen::MatrixXcd small =
          Eigen::MatrixXcd::Identity(2, 2) + ck * (P1 * pp.lu.solve(P2));
      const cplx rhs = ev.det(km, Branch::plus) * small.determinant();
      out.push_back({2, dplus, rhs, std::abs(dplus - rhs) / std::abs(dplus)});
      break;
    }
    case Wedge::lower_far: {
      // D+(k) = D-(kp) det_3 with the extra unrotated column/row adjoined.
      DenseSolve mm(c, kp, Branch::minus, n);
      const int N = mm.sys.grid.size();
      Eigen::MatrixXcd P1(3, N), P2(N, 3);
      P1.row(0) = free_wave_row(c, kp, mm.sys.grid).transpose();
      P1.row(1) = free_wave_row(c, km, mm.sys.grid).transpose();
      P1.row(2) = free_wave_row(c, k, mm.sys.grid).transpose();
      P2.col(0) = omega * weighted_wave_col(c, kp, mm.sys.grid);
      P2.col(1) = -omega_bar * weighted_wave_col(c, km, mm.sys.grid);
      P2.col(2) = weighted_wave_col(c, k, mm.sys.grid);
      Eigen::MatrixXcd small =
          Eigen::MatrixXcd::Identity(3, 3) + ck * (P1 * mm.lu.solve(P2));
      const cplx rhs = ev.det(kp, Branch::minus) * small.determinant();
      out.push_back({3, dplus, rhs, std::abs(dplus - rhs) / std::abs(dplus)});
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace det3

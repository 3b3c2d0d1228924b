#ifndef DET3_DETERMINANT_HPP
#define DET3_DETERMINANT_HPP

#include <optional>
#include <vector>

#include "det3/nystrom.hpp"

namespace det3 {

// ---------------------------------------------------------------------------
// Production determinant evaluator.
//
// The operator splits as (rank one) + (causal part) where the causal part's
// determinant is exactly 1 (triangular kernel). Writing the rank-one factors
// as f(x) g(y), the determinant reduces to
//   D(k) = 1 + <g, (I + W)^{-1} f>
// with W the causal kernel. The solve marches panel by panel: within a panel
// the integral term is produced by product integration (auxiliary Gauss rule
// on [panel start, node] against the panel's Lagrange basis), across panels
// it is a plain quadrature sum over already-solved nodes.
//
// This evaluates D to near machine precision already at n = 64 for the test
// potentials, independent of the diagonal kink that limits the dense-matrix
// route. The dense route (determinant(sys) below) is kept as a cross-check.
// ---------------------------------------------------------------------------
class VolterraEvaluator {
 public:
  VolterraEvaluator(const Coefficients& c, int n, int nodes_per_panel = 8,
                    int aux_nodes = 16);

  cplx det(cplx k, Branch branch = Branch::plus) const;
  struct ValueDeriv {
    cplx value, deriv;
  };
  // Analytic d/dk alongside the value: the same factorizations are reused on
  // the differentiated right-hand side, so the derivative inherits the
  // evaluator's accuracy (no finite differencing anywhere).
  ValueDeriv det_with_derivative(cplx k, Branch branch = Branch::plus) const;

  const Coefficients& coefficients() const { return c_; }
  int size() const { return grid_.size(); }

 private:
  Coefficients c_;
  PanelGrid grid_;
  int aux_nodes_;
  // Per-panel geometry, k-independent: for node i of a panel, an auxiliary
  // rule on [a, x_i] plus the Lagrange interpolation matrix from the panel
  // nodes to the auxiliary nodes. Mirror data for the minus branch ([x_i, b]).
  struct PanelGeom {
    std::vector<std::vector<double>> aux_x, aux_w;  // [i][aux]
    std::vector<std::vector<double>> lagr;          // [i][aux * m + j]
  };
  std::vector<PanelGeom> fwd_, bwd_;
  void build_geometry();

  template <bool with_deriv>
  ValueDeriv run(cplx k, Branch branch) const;
};

// ---------------------------------------------------------------------------
// Dense-matrix determinant (pivoted LU of I + M), the direct discretization
// of the definition. Carries an optional self-convergence estimate from
// re-evaluating at twice the node count.
// ---------------------------------------------------------------------------
struct DeterminantValue {
  cplx k;
  cplx d = 1.0;
  std::optional<cplx> log_d;        // continued branch where available
  cplx branch_anchor = 0.0;
  std::optional<double> self_error; // |D(n) - D(2n)| / |D(2n)| if requested
  bool wedge_zero_alarm = false;    // |d| ~ 0 inside the closed upper wedge
};

DeterminantValue determinant(const NystromSystem& sys, bool estimate_convergence,
                             const Coefficients& c);
DeterminantValue determinant(const NystromSystem& sys);

// Large-|k| anchor on the bisector ray where log D is principal.
cplx branch_anchor(const Coefficients& c);

// Quadrature trace of the kernel diagonal vs the exact closed form
// 2 omega p0 / (3 i k) + omega_bar q0 / (3 i k^2) (plus branch; the minus
// branch uses the mirrored t=0 limits).
struct TracePair {
  cplx closed_form, numeric;
};
TracePair trace_Y(const Coefficients& c, cplx k, Branch branch, int n = 256);

// Log-determinant power series: partial sum of -sum_{j<=N} (1/j) Tr((-M)^j)
// with both candidate remainder-bound constants attached. Only valid in the
// series regime |k| >= r_star, arg k in [0, pi/3]; elsewhere a domain_error.
struct LogSeriesResult {
  cplx partial_sum;
  double remainder_bound;        // (C*/|k|)^{N+1}, the looser stated constant
  double remainder_bound_proof;  // ((2/3)C*/|k|)^{N+1}
};
LogSeriesResult log_det_series(const Coefficients& c, cplx k, int N, int n = 256);

// D'/D via the trace formula Tr[(I+M)^{-1} M'] with the analytic k-derivative
// assembly. Throws on |D| conditioning collapse.
cplx log_derivative(const Coefficients& c, cplx k, Branch branch, int n = 256);

// Single-valued log D_plus along a polygonal path by phase unwinding; steps
// are bisected adaptively until each |Delta arg| < pi/2. The path starts at
// the supplied anchor (principal log there). Aborts with the offending
// location if the path runs into a zero (|D| below floor).
struct ContinuedLog {
  std::vector<cplx> k, log_d;
};
ContinuedLog continue_log(const VolterraEvaluator& ev, const std::vector<cplx>& path,
                          double det_floor = 1e-13);

// Sector continuation identities: each expresses D_plus at k in a rotated
// wedge through the determinant at a rotated argument times a small (1x1 /
// 2x2 / 3x3) determinant of resolvent-corrected rank-one functionals.
// Returns relative residuals |lhs - rhs| / |lhs| for whichever identities
// cover the wedge of k.
struct ContinuationResidual {
  int block_size = 0;  // 1, 2, or 3
  cplx lhs, rhs;
  double rel_residual = 0.0;
};
std::vector<ContinuationResidual> continuation_identities(const Coefficients& c,
                                                          cplx k, int n = 256);

}  // namespace det3

#endif

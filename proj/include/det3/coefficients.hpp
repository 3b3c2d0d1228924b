#ifndef DET3_COEFFICIENTS_HPP
#define DET3_COEFFICIENTS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "det3/rotations.hpp"

namespace det3 {

// Piecewise polynomial on [breaks.front(), breaks.back()], each piece stored
// in the local monomial basis: piece i evaluates sum_j coef[i][j] * u^j with
// u = x - breaks[i]. Moments and L2 norms are computed exactly from the
// coefficient data, no quadrature involved.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> breaks, std::vector<std::vector<double>> coef);

  static PiecewisePoly zero(double gamma);
  static PiecewisePoly constant(double gamma, double value);

  double operator()(double x) const;
  // Termwise derivative of each piece. At an interior breakpoint the value is
  // the right-sided limit, matching operator() which assigns breakpoints to
  // the piece on their right.
  PiecewisePoly derivative() const;

  double moment0() const;        // integral over the support
  double l2sq() const;           // integral of the square
  double sup_bound() const;      // coarse upper bound via |coef| sums

  bool empty_support() const;    // all coefficients exactly zero
  bool continuous(double tol = 1e-12) const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<double>>& pieces() const { return coef_; }
  double support_end() const { return breaks_.back(); }

 private:
  std::vector<double> breaks_{0.0, 1.0};
  std::vector<std::vector<double>> coef_{{0.0}};
  int locate(double x) const;
};

// The two coefficient functions of the operator, supported on [0, gamma],
// plus everything derived from them that the rest of the code needs:
// exact moments, exact L2 norms, the combined multiplier V, and the radius
// r_star beyond which the determinant's power series converges geometrically.
class Coefficients {
 public:
  Coefficients(PiecewisePoly p, PiecewisePoly q, double gamma);

  // validate() throws std::invalid_argument on: gamma <= 0, supports not
  // equal to [0, gamma], or discontinuous p (dp would then need delta terms).
  void validate() const;

  double gamma() const { return gamma_; }
  const PiecewisePoly& p() const { return p_; }
  const PiecewisePoly& q() const { return q_; }
  const PiecewisePoly& dp() const { return dp_; }

  double p0() const { return p0_; }  // integral of p
  double q0() const { return q0_; }  // integral of q

  // V(x, k) = 2k p(x) + q(x) - i p'(x); the x-dependent multiplier that makes
  // up the perturbation after symmetrised splitting.
  cplx V(double x, cplx k) const;
  // Zeroth moment of V: 2k p0 + q0 (the p' moment vanishes, p has compact
  // support and is continuous).
  cplx V0(cplx k) const;

  // Combined size constant 2 sqrt(gamma) (||q - i p'||_2 + 2 ||p||_2) and the
  // series-convergence radius max(4/3 * that, 1).
  double size_constant() const { return cstar_; }
  double series_radius() const { return rstar_; }

  // Sorted union of p and q breakpoints; quadrature panels must not straddle
  // a coefficient kink or the interior convergence order collapses.
  std::vector<double> merged_breaks() const;

  // Built-in test potentials.
  static Coefficients zero(double gamma = 1.0);
  static Coefficients box();     // gamma = 1, p = 0, q = 1 on [0, 1]
  static Coefficients smooth();  // gamma = 1, p = x(1-x), q = sin(pi x)

 private:
  PiecewisePoly p_, q_, dp_;
  double gamma_ = 1.0;
  double p0_ = 0.0, q0_ = 0.0, cstar_ = 0.0, rstar_ = 1.0;
};

}  // namespace det3

#endif

#ifndef DET3_NYSTROM_HPP
#define DET3_NYSTROM_HPP

#include <Eigen/Dense>

#include "det3/coefficients.hpp"
#include "det3/kernels.hpp"
#include "det3/quadrature.hpp"

namespace det3 {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// Dense symmetrised discretization of the perturbation-resolvent operator on
// [0, gamma]: entries sqrt(w_i) K(x_i, x_j) sqrt(w_j) with
//   K(x, y) = 2 p(x) dR(k, x-y) + (q(x) - i p'(x)) R(k, x-y),
// R/dR the branch kernels. The weighted embedding keeps the matrix spectrum
// equal to that of the quadrature operator.
struct NystromSystem {
  cplx k;
  Branch branch = Branch::plus;
  PanelGrid grid;
  MatC matrix;
  double frobenius = 0.0;
};

NystromSystem build_nystrom(const Coefficients& c, cplx k, Branch branch, int n);
// Same embedding with the k-derivative kernels (for the trace formula).
MatC build_nystrom_dk(const Coefficients& c, cplx k, Branch branch,
                      const PanelGrid& grid);

// Quadrature functionals: row vector of e^{-ikx}/sqrt(2 pi) and column vector
// of e^{+ikx} V(x,k)/sqrt(2 pi), both carrying sqrt(w) so that products with
// the symmetrised matrix are plain dot products.
VecC free_wave_row(const Coefficients& c, cplx k, const PanelGrid& grid);
VecC weighted_wave_col(const Coefficients& c, cplx k, const PanelGrid& grid);

// Discretized rank-one difference kernel as a matrix (for the update check
// det(I + Y_minus + P) = det(I + Y_plus)).
MatC rank_one_matrix(const Coefficients& c, cplx k, const PanelGrid& grid);

}  // namespace det3

#endif

#ifndef DET3_SCATTERING_HPP
#define DET3_SCATTERING_HPP

#include "det3/determinant.hpp"

namespace det3 {

// Scalar S-matrix value assembled from the Born amplitude a0 = V0(k)/(2 pi)
// and the resolvent correction a1, together with the independent
// determinant-ratio evaluation used as a cross-check.
struct ScatteringValue {
  cplx k;
  cplx s = 1.0;        // amplitude route: 1 - c_k (a0 - a1)
  cplx s_det = 1.0;    // determinant-ratio route
  cplx a0 = 0.0, a1 = 0.0;
  cplx c_k = 0.0;      // amplitude weight 2 pi i / 3k^2
  double route_discrepancy = 0.0;  // |s - s_det| / max(|s|, eps)
};

// Born amplitude (2 k p0 + q0) / 2 pi; exact from the moments.
cplx amplitude_born(const Coefficients& c, cplx k);

// Correction a1 = <row, (I+M)^{-1} M col> via one dense solve.
cplx amplitude_correction(const Coefficients& c, cplx k, int n = 256);

// Upper/lower S values. smatrix_minus evaluates the rotated functionals at
// omega k and compares against D_minus(omega_bar k)/D_plus(k).
ScatteringValue smatrix_plus(const Coefficients& c, cplx k, int n = 256);
ScatteringValue smatrix_minus(const Coefficients& c, cplx k, int n = 256);

// Appendix-style decomposition of the leading correction for p == 0:
// T = <row, M col> split across the diagonal into T1 (x > y) + T2 (x < y),
// with the closed-form comparison functions
//   f_pm(z) = iint_{±(x-y)>0} q(x) q(y) e^{i (x-y) z} dx dy
// evaluated at z = (omega - 1) k and z = zeta6 (omega - 1) k.
struct BornDiagnostics {
  cplx T, T1, T2;
  cplx f_plus_at_zeta, f_minus_at_estar_zeta;
  cplx omega_factor;  // i / (6 pi k^2)
  bool decay_regime;  // arg k in [0, pi/6]: |f_plus| decays; else it grows
};
// Requires p == 0 identically; throws std::domain_error otherwise.
BornDiagnostics born_term_diagnostics(const Coefficients& c, cplx k, int n = 256);

}  // namespace det3

#endif

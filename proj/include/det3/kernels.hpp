#ifndef DET3_KERNELS_HPP
#define DET3_KERNELS_HPP

#include "det3/coefficients.hpp"
#include "det3/rotations.hpp"

// Closed-form boundary kernels of the free resolvent of -i^3 d^3/dx^3 at
// spectral parameter k^3, their x- and k-derivatives, and the smooth
// "causal" kernels obtained after peeling off the rank-one part (those
// vanish on one side of the diagonal together with their first derivative,
// which is what makes the triangular determinant route exact).
//
// The plus-branch formulas are used verbatim for every k != 0: they are the
// single-valued analytic continuation of the upper-wedge boundary values.

namespace det3 {

enum class Branch { plus, minus };

// Every kernel evaluation rejects |k| < pole_guard with a domain_error: the
// second-order pole at k = 0 makes values meaningless there.
inline constexpr double pole_guard = 1e-8;
void require_off_pole(cplx k);

// Free-resolvent kernel (order-2 prefactor i/3k^2) and its x-derivative
// (order-1 prefactor i/3k). t = x - y; the t = 0 value is the stored common
// limit of both one-sided formulas.
cplx free_kernel(Branch b, cplx k, double t);
cplx free_kernel_dx(Branch b, cplx k, double t);

// Analytic k-derivatives of the above (needed by the determinant
// log-derivative trace formula; no finite differencing).
cplx free_kernel_dk(Branch b, cplx k, double t);
cplx free_kernel_dx_dk(Branch b, cplx k, double t);

// Kernel of the rank-one difference between the two branches:
// amplitude_weight(k)/(2pi/..) normalised as (i/3k^2) V(x,k) e^{i(x-y)k} 1_[0,gamma](y).
cplx rank_one_kernel(const Coefficients& c, cplx k, double x, double y);

// Small-k Laurent model of the plus kernel, (omega_bar + i k t omega)/(3 i k^2)
// exposed for diagnostics near the pole (not used by production paths).
cplx free_kernel_laurent(cplx k, double t);

// Causal remainder kernels: value and x-derivative of the plus-branch kernel
// minus its rank-one part, supported on t > 0; the minus-branch mirror is
// supported on t < 0. Both vanish to second order at t = 0+ / 0-.
cplx causal_kernel(Branch b, cplx k, double t);
cplx causal_kernel_dx(Branch b, cplx k, double t);
cplx causal_kernel_dk(Branch b, cplx k, double t);
cplx causal_kernel_dx_dk(Branch b, cplx k, double t);

// Test hook: swap omega <-> omega_bar inside the closed-form kernels to
// demonstrate that the identity suites actually detect a corrupted kernel.
void set_kernel_mutation(bool enabled);
bool kernel_mutation();

}  // namespace det3

#endif

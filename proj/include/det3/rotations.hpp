#ifndef DET3_ROTATIONS_HPP
#define DET3_ROTATIONS_HPP

#include <complex>
#include <numbers>

// Sixth-root geometry of the cubic symbol k^3. Rotating k by a cube root of
// unity leaves k^3 invariant, which is why all branch bookkeeping below is
// built from omega = exp(2*pi*i/3) and its conjugate.

namespace det3 {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Primitive cube root of unity and friends.
inline const cplx omega     = std::polar(1.0, 2.0 * pi / 3.0);   // exp(+2i pi/3)
inline const cplx omega_bar = std::polar(1.0, -2.0 * pi / 3.0);  // exp(-2i pi/3)
inline const cplx zeta6     = std::polar(1.0, pi / 3.0);         // exp(+i pi/3)
inline const cplx zeta12    = std::polar(1.0, pi / 6.0);         // exp(+i pi/6)

// Wedges of the k-plane used by the two determinant branches and their
// sector-by-sector continuation. "upper" is arg k in (0, pi/3), rotations
// of it by zeta6 and omega cover the rest of the upper half plane.
enum class Wedge {
  upper,          // arg in (0, pi/3): natural domain of the plus branch
  lower,          // arg in (-pi/3, 0): natural domain of the minus branch
  upper_mid,      // arg in (pi/3, 2pi/3)
  upper_far,      // arg in (2pi/3, pi)
  lower_mid,      // arg in (-2pi/3, -pi/3)
  lower_far,      // arg in (-pi, -2pi/3)
  boundary        // on a wedge boundary ray (or zero)
};

Wedge classify_wedge(cplx k, double ray_tol = 0.0);

// Scalar weight attached to every rank-one determinant update and to the
// scattering-amplitude combination: 2*pi*i / (3 k^2).
inline cplx amplitude_weight(cplx k) { return cplx(0.0, 2.0 * pi / 3.0) / (k * k); }

}  // namespace det3

#endif

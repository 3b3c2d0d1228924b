#include "det3/rotations.hpp"

#include <cmath>

namespace det3 {

Wedge classify_wedge(cplx k, double ray_tol) {
  if (k == cplx(0.0)) return Wedge::boundary;
  const double a = std::arg(k);
  const double third = pi / 3.0;
  const double rays[] = {0.0, third, 2.0 * third, pi, -third, -2.0 * third, -pi};
  for (double r : rays) {
    if (std::abs(a - r) <= ray_tol) return Wedge::boundary;
  }
  if (a > 0.0) {
    if (a < third) return Wedge::upper;
    if (a < 2.0 * third) return Wedge::upper_mid;
    if (a < pi) return Wedge::upper_far;
  } else {
    if (a > -third) return Wedge::lower;
    if (a > -2.0 * third) return Wedge::lower_mid;
    if (a > -pi) return Wedge::lower_far;
  }
  return Wedge::boundary;
}

}  // namespace det3

#include "det3/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace det3 {

namespace {

std::atomic<bool> g_mutate{false};

// The two cube-root rotations, honouring the test mutation (swap them).
inline cplx rot() { return g_mutate.load(std::memory_order_relaxed) ? omega_bar : omega; }
inline cplx rot_bar() { return g_mutate.load(std::memory_order_relaxed) ? omega : omega_bar; }

inline cplx eikt(cplx k, double t, cplx rho) { return std::exp(cplx(0.0, 1.0) * t * k * rho); }

}  // namespace

void set_kernel_mutation(bool enabled) { g_mutate.store(enabled, std::memory_order_relaxed); }
bool kernel_mutation() { return g_mutate.load(std::memory_order_relaxed); }

void require_off_pole(cplx k) {
  if (std::abs(k) < pole_guard)
    throw std::domain_error("kernel evaluation inside pole guard disk |k| < 1e-8");
}

cplx free_kernel(Branch b, cplx k, double t) {
  require_off_pole(k);
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k * k);
  if (b == Branch::plus) {
    if (t > 0.0) return pref * (eikt(k, t, 1.0) + w * eikt(k, t, w));
    if (t < 0.0) return pref * (-wb * eikt(k, t, wb));
    return pref * (-wb);  // common one-sided limit, -omega_bar = exp(i pi/3)
  }
  if (t > 0.0) return pref * (w * eikt(k, t, w));
  if (t < 0.0) return pref * (-eikt(k, t, 1.0) - wb * eikt(k, t, wb));
  return pref * w;
}

cplx free_kernel_dx(Branch b, cplx k, double t) {
  require_off_pole(k);
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k);
  if (b == Branch::plus) {
    if (t > 0.0) return pref * (eikt(k, t, 1.0) + wb * eikt(k, t, w));
    if (t < 0.0) return pref * (-w * eikt(k, t, wb));
    return pref * (-w);  // exp(-i pi/3)
  }
  if (t > 0.0) return pref * (wb * eikt(k, t, w));
  if (t < 0.0) return pref * (-eikt(k, t, 1.0) - w * eikt(k, t, wb));
  return pref * wb;
}

// d/dk of pref * c * e^{i t k rho} with pref ~ k^{-s} multiplies the term by
// (i t rho - s/k); s = 2 for the value kernels, s = 1 for the dx kernels.
cplx free_kernel_dk(Branch b, cplx k, double t) {
  require_off_pole(k);
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k * k);
  const cplx it = cplx(0.0, t), s = 2.0 / k;
  if (b == Branch::plus) {
    if (t > 0.0)
      return pref * ((it - s) * eikt(k, t, 1.0) + w * (it * w - s) * eikt(k, t, w));
    if (t < 0.0) return pref * (-wb * (it * wb - s) * eikt(k, t, wb));
    return pref * (-s) * (-wb);
  }
  if (t > 0.0) return pref * (w * (it * w - s) * eikt(k, t, w));
  if (t < 0.0)
    return pref * (-(it - s) * eikt(k, t, 1.0) - wb * (it * wb - s) * eikt(k, t, wb));
  return pref * (-s) * w;
}

cplx free_kernel_dx_dk(Branch b, cplx k, double t) {
  require_off_pole(k);
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k);
  const cplx it = cplx(0.0, t), s = 1.0 / k;
  if (b == Branch::plus) {
    if (t > 0.0)
      return pref * ((it - s) * eikt(k, t, 1.0) + wb * (it * w - s) * eikt(k, t, w));
    if (t < 0.0) return pref * (-w * (it * wb - s) * eikt(k, t, wb));
    return pref * (-s) * (-w);
  }
  if (t > 0.0) return pref * (wb * (it * w - s) * eikt(k, t, w));
  if (t < 0.0)
    return pref * (-(it - s) * eikt(k, t, 1.0) - w * (it * wb - s) * eikt(k, t, wb));
  return pref * (-s) * wb;
}

cplx rank_one_kernel(const Coefficients& c, cplx k, double x, double y) {
  require_off_pole(k);
  if (y < 0.0 || y > c.gamma()) return {0.0, 0.0};
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k * k);
  return pref * c.V(x, k) * std::exp(cplx(0.0, 1.0) * (x - y) * k);
}

cplx free_kernel_laurent(cplx k, double t) {
  // Leading Laurent model near k = 0 of the plus kernel; diagnostics only.
  return (omega_bar + cplx(0.0, 1.0) * k * t * omega) / (cplx(0.0, 3.0) * k * k);
}

// Causal kernels: all three rotations enter symmetrically, which kills the
// value and first derivative at t = 0 (1 + w + wb = 0).

cplx causal_kernel(Branch b, cplx k, double t) {
  require_off_pole(k);
  if ((b == Branch::plus && t <= 0.0) || (b == Branch::minus && t >= 0.0)) return {0.0, 0.0};
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k * k);
  const cplx sum = eikt(k, t, 1.0) + w * eikt(k, t, w) + wb * eikt(k, t, wb);
  return b == Branch::plus ? pref * sum : -pref * sum;
}

cplx causal_kernel_dx(Branch b, cplx k, double t) {
  require_off_pole(k);
  if ((b == Branch::plus && t <= 0.0) || (b == Branch::minus && t >= 0.0)) return {0.0, 0.0};
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k);
  const cplx sum = eikt(k, t, 1.0) + wb * eikt(k, t, w) + w * eikt(k, t, wb);
  return b == Branch::plus ? pref * sum : -pref * sum;
}

cplx causal_kernel_dk(Branch b, cplx k, double t) {
  require_off_pole(k);
  if ((b == Branch::plus && t <= 0.0) || (b == Branch::minus && t >= 0.0)) return {0.0, 0.0};
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k * k);
  const cplx it = cplx(0.0, t), s = 2.0 / k;
  const cplx sum = (it - s) * eikt(k, t, 1.0) + w * (it * w - s) * eikt(k, t, w) +
                   wb * (it * wb - s) * eikt(k, t, wb);
  return b == Branch::plus ? pref * sum : -pref * sum;
}

cplx causal_kernel_dx_dk(Branch b, cplx k, double t) {
  require_off_pole(k);
  if ((b == Branch::plus && t <= 0.0) || (b == Branch::minus && t >= 0.0)) return {0.0, 0.0};
  const cplx w = rot(), wb = rot_bar();
  const cplx pref = cplx(0.0, 1.0) / (3.0 * k);
  const cplx it = cplx(0.0, t), s = 1.0 / k;
  const cplx sum = (it - s) * eikt(k, t, 1.0) + wb * (it * w - s) * eikt(k, t, w) +
                   w * (it * wb - s) * eikt(k, t, wb);
  return b == Branch::plus ? pref * sum : -pref * sum;
}

}  // namespace det3

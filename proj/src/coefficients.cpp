#include "det3/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace det3 {

PiecewisePoly::PiecewisePoly(std::vector<double> breaks,
                             std::vector<std::vector<double>> coef)
    : breaks_(std::move(breaks)), coef_(std::move(coef)) {
  if (breaks_.size() < 2 || coef_.size() + 1 != breaks_.size())
    throw std::invalid_argument("PiecewisePoly: breaks/pieces mismatch");
  for (size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("PiecewisePoly: breaks not increasing");
  for (auto& piece : coef_)
    if (piece.empty()) piece = {0.0};
}

PiecewisePoly PiecewisePoly::zero(double gamma) {
  return PiecewisePoly({0.0, gamma}, {{0.0}});
}

PiecewisePoly PiecewisePoly::constant(double gamma, double value) {
  return PiecewisePoly({0.0, gamma}, {{value}});
}

int PiecewisePoly::locate(double x) const {
  // Pieces own [b_i, b_{i+1}); the last piece also owns the right endpoint.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  int i = static_cast<int>(it - breaks_.begin()) - 1;
  if (i < 0) return -1;
  if (i >= static_cast<int>(coef_.size())) {
    if (x <= breaks_.back()) return static_cast<int>(coef_.size()) - 1;
    return -1;
  }
  return i;
}

double PiecewisePoly::operator()(double x) const {
  if (x < breaks_.front() || x > breaks_.back()) return 0.0;
  const int i = locate(x);
  if (i < 0) return 0.0;
  const double u = x - breaks_[i];
  double v = 0.0;
  const auto& a = coef_[i];
  for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) v = v * u + a[j];
  return v;
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<std::vector<double>> d;
  d.reserve(coef_.size());
  for (const auto& a : coef_) {
    std::vector<double> da;
    for (size_t j = 1; j < a.size(); ++j) da.push_back(a[j] * static_cast<double>(j));
    if (da.empty()) da = {0.0};
    d.push_back(std::move(da));
  }
  return PiecewisePoly(breaks_, std::move(d));
}

double PiecewisePoly::moment0() const {
  double s = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    const double h = breaks_[i + 1] - breaks_[i];
    double hp = h;
    for (size_t j = 0; j < coef_[i].size(); ++j) {
      s += coef_[i][j] * hp / static_cast<double>(j + 1);
      hp *= h;
    }
  }
  return s;
}

double PiecewisePoly::l2sq() const {
  double s = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    const double h = breaks_[i + 1] - breaks_[i];
    const auto& a = coef_[i];
    for (size_t j = 0; j < a.size(); ++j)
      for (size_t l = 0; l < a.size(); ++l)
        s += a[j] * a[l] * std::pow(h, static_cast<double>(j + l + 1)) /
             static_cast<double>(j + l + 1);
  }
  return s;
}

double PiecewisePoly::sup_bound() const {
  double m = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    const double h = breaks_[i + 1] - breaks_[i];
    double s = 0.0, hp = 1.0;
    for (size_t j = 0; j < coef_[i].size(); ++j) {
      s += std::abs(coef_[i][j]) * hp;
      hp *= h;
    }
    m = std::max(m, s);
  }
  return m;
}

bool PiecewisePoly::empty_support() const {
  for (const auto& a : coef_)
    for (double v : a)
      if (v != 0.0) return false;
  return true;
}

bool PiecewisePoly::continuous(double tol) const {
  for (size_t i = 0; i + 1 < coef_.size(); ++i) {
    // Left piece evaluated at its right endpoint vs the next piece's constant
    // term (operator() assigns breakpoints to the right piece).
    const double h = breaks_[i + 1] - breaks_[i];
    double vleft = 0.0;
    const auto& a = coef_[i];
    for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) vleft = vleft * h + a[j];
    const double vright = coef_[i + 1].front();
    if (std::abs(vleft - vright) > tol * std::max(1.0, std::abs(vleft))) return false;
  }
  return true;
}

Coefficients::Coefficients(PiecewisePoly p, PiecewisePoly q, double gamma)
    : p_(std::move(p)), q_(std::move(q)), dp_(p_.derivative()), gamma_(gamma) {
  validate();
  p0_ = p_.moment0();
  q0_ = q_.moment0();
  const double nq_ip = std::sqrt(q_.l2sq() + dp_.l2sq());  // ||q - i p'||_2
  cstar_ = 2.0 * std::sqrt(gamma_) * (nq_ip + 2.0 * std::sqrt(p_.l2sq()));
  rstar_ = std::max(4.0 * cstar_ / 3.0, 1.0);
}

void Coefficients::validate() const {
  if (!(gamma_ > 0.0)) throw std::invalid_argument("Coefficients: gamma must be positive");
  auto covers = [&](const PiecewisePoly& f) {
    return std::abs(f.breaks().front()) < 1e-14 &&
           std::abs(f.support_end() - gamma_) < 1e-12 * std::max(1.0, gamma_);
  };
  if (!covers(p_) || !covers(q_))
    throw std::invalid_argument("Coefficients: supports must equal [0, gamma]");
  if (!p_.continuous())
    throw std::invalid_argument(
        "Coefficients: p must be continuous (a jump would put a delta into p')");
}

cplx Coefficients::V(double x, cplx k) const {
  if (x < 0.0 || x > gamma_) return 0.0;
  return 2.0 * k * p_(x) + q_(x) - cplx(0.0, 1.0) * dp_(x);
}

cplx Coefficients::V0(cplx k) const { return 2.0 * k * p0_ + q0_; }

std::vector<double> Coefficients::merged_breaks() const {
  std::vector<double> all = p_.breaks();
  all.insert(all.end(), q_.breaks().begin(), q_.breaks().end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double b : all)
    if (out.empty() || b - out.back() > 1e-12 * std::max(1.0, gamma_)) out.push_back(b);
  return out;
}

Coefficients Coefficients::zero(double gamma) {
  return Coefficients(PiecewisePoly::zero(gamma), PiecewisePoly::zero(gamma), gamma);
}

Coefficients Coefficients::box() {
  return Coefficients(PiecewisePoly::zero(1.0), PiecewisePoly::constant(1.0, 1.0), 1.0);
}

Coefficients Coefficients::smooth() {
  // q = sin(pi x) as its degree-29 Taylor polynomial on [0, 1]: max abs error
  // 3.1e-19, L2 norm matches 1/2 to 1e-21, mean matches 2/pi to 1e-20.
  static const std::vector<double> sin_pi = {
      0.0, 3.1415926535897932, 0.0, -5.16771278004997, 0.0,
      2.5501640398773454, 0.0, -0.59926452932079208, 0.0,
      0.082145886611128229, 0.0, -0.0073704309457143508, 0.0,
      0.00046630280576761256, 0.0, -2.1915353447830216e-5, 0.0,
      7.9520540014755128e-7, 0.0, -2.2948428997269873e-8, 0.0,
      5.3926646626081285e-10, 0.0, -1.0518471716932064e-11, 0.0,
      1.7302192458361108e-13, 0.0, -2.4325611799933888e-15, 0.0,
      2.9567015428549106e-17};
  return Coefficients(PiecewisePoly({0.0, 1.0}, {{0.0, 1.0, -1.0}}),
                      PiecewisePoly({0.0, 1.0}, {sin_pi}), 1.0);
}

}  // namespace det3

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "det3/determinant.hpp"

using namespace det3;

namespace {

// Reference values computed by an independent prototype implementation of the
// triangular-solve determinant (different language, different linear algebra),
// frozen here as regression anchors.
struct RefPoint {
  cplx k, d;
};
const RefPoint box_ref[] = {
    {{1.0, 0.3}, {8.572109629859457e-01, 2.694372878209267e-01}},
    {{1.7320508075688772, 1.0}, {9.988333453451198e-01, 8.332940238975159e-02}},
    {{-3.0, 1.0}, {9.611285032247554e-01, -4.860306372558942e-03}},
    {{0.7, -0.4}, {5.668705868468698e-01, -2.624236792461762e-01}},
};
const RefPoint smooth_ref[] = {
    {{1.0, 0.3}, {1.016066414838578e+00, 2.056347230097041e-01}},
    {{1.7320508075688772, 1.0}, {1.056683798798492e+00, 5.456386144731827e-02}},
    {{-3.0, 1.0}, {9.516947139325872e-01, -2.813101285550849e-02}},
    {{0.7, -0.4}, {7.747984968152918e-01, -4.487386471288476e-02}},
};

}  // namespace

TEST_CASE("triangular-route determinant reproduces frozen references") {
  const VolterraEvaluator box(Coefficients::box(), 64);
  const VolterraEvaluator smooth(Coefficients::smooth(), 64);
  for (const RefPoint& r : box_ref) {
    CHECK(std::abs(box.det(r.k) - r.d) < 1e-12 * std::abs(r.d));
    CHECK(std::abs(box.det(std::conj(r.k), Branch::minus) - std::conj(r.d)) <
          1e-12 * std::abs(r.d));
  }
  for (const RefPoint& r : smooth_ref) {
    CHECK(std::abs(smooth.det(r.k) - r.d) < 1e-11 * std::abs(r.d));
    CHECK(std::abs(smooth.det(std::conj(r.k), Branch::minus) - std::conj(r.d)) <
          1e-11 * std::abs(r.d));
  }
}

TEST_CASE("triangular and dense routes agree") {
  std::mt19937 rng(20240821);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-2.0, 2.0);
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    const VolterraEvaluator ev(c, 64);
    for (int i = 0; i < 8; ++i) {
      const cplx k(re(rng), im(rng));
      if (std::abs(k) < 0.4) continue;
      for (Branch b : {Branch::plus, Branch::minus}) {
        const DeterminantValue dv = determinant(build_nystrom(c, k, b, 256));
        const cplx tri = ev.det(k, b);
        CHECK(std::abs(dv.d - tri) < 2e-5 * std::abs(tri));
      }
    }
  }
}

TEST_CASE("node-doubling self-convergence of the triangular route") {
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    const VolterraEvaluator e1(c, 64), e2(c, 128);
    for (const cplx k : {cplx(2.0, 1.0), cplx(-4.0, -2.0), cplx(0.8, -0.3)}) {
      const cplx a = e1.det(k), b = e2.det(k);
      CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
    }
  }
}

TEST_CASE("zero potential gives exactly 1") {
  const VolterraEvaluator ev(Coefficients::zero(), 64);
  for (const cplx k : {cplx(1.0, 0.5), cplx(-2.0, -1.0), cplx(0.3, 0.1)}) {
    CHECK(ev.det(k) == cplx(1.0, 0.0));
    CHECK(ev.det(k, Branch::minus) == cplx(1.0, 0.0));
  }
  const DeterminantValue dv = determinant(build_nystrom(Coefficients::zero(), cplx(1.0, 0.5),
                                                        Branch::plus, 64));
  CHECK(std::abs(dv.d - 1.0) < 1e-14);
}

TEST_CASE("analytic derivative matches central differences") {
  const VolterraEvaluator ev(Coefficients::smooth(), 96);
  const double h = 1e-6;
  for (const cplx k : {cplx(1.2, 0.4), cplx(-2.5, 0.8), cplx(0.9, -0.6)}) {
    for (Branch b : {Branch::plus, Branch::minus}) {
      const auto vd = ev.det_with_derivative(k, b);
      CHECK(std::abs(vd.value - ev.det(k, b)) < 1e-13);
      const cplx fd = (ev.det(k + h, b) - ev.det(k - h, b)) / (2.0 * h);
      CHECK(std::abs(vd.deriv - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("conjugation symmetry between the branches") {
  std::mt19937 rng(20240822);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-2.0, 2.0);
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    const VolterraEvaluator ev(c, 64);
    for (int i = 0; i < 25; ++i) {
      const cplx k(re(rng), im(rng));
      if (std::abs(k) < 0.3) continue;
      const cplx dp = ev.det(k, Branch::plus);
      const cplx dm = ev.det(std::conj(k), Branch::minus);
      CHECK(std::abs(dp - std::conj(dm)) < 1e-12 * std::abs(dp));
    }
  }
}

TEST_CASE("trace closed form agrees with quadrature") {
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    for (const cplx k : {cplx(2.0, 0.7), cplx(-1.5, -1.1)}) {
      for (Branch b : {Branch::plus, Branch::minus}) {
        const TracePair t = trace_Y(c, k, b, 256);
        CHECK(std::abs(t.closed_form - t.numeric) < 1e-10 * std::max(1.0, std::abs(t.numeric)));
      }
    }
  }
  // closed form itself: 2 p0 omega / (3 i k) + q0 omega_bar / (3 i k^2)
  const Coefficients s = Coefficients::smooth();
  const cplx k(3.0, 1.0);
  const TracePair t = trace_Y(s, k, Branch::plus);
  const cplx want = 2.0 * s.p0() * omega / (cplx(0.0, 3.0) * k) +
                    s.q0() * omega_bar / (cplx(0.0, 3.0) * k * k);
  CHECK(std::abs(t.closed_form - want) < 1e-14);
}

TEST_CASE("log series matches log det in its regime and is gated outside") {
  const Coefficients c = Coefficients::box();
  const VolterraEvaluator ev(c, 64);
  const cplx k = std::polar(6.0, pi / 6.0);  // |k| > r* = 8/3
  const LogSeriesResult s = log_det_series(c, k, 12);
  const cplx ref = std::log(ev.det(k));  // principal is fine, |log D| < 2 here
  CHECK(std::abs(s.partial_sum - ref) < s.remainder_bound);
  CHECK(std::abs(s.partial_sum - ref) < 1e-8);
  CHECK(s.remainder_bound_proof <= s.remainder_bound);

  CHECK_THROWS_AS(log_det_series(c, cplx(1.0, 0.5), 8), std::domain_error);
  CHECK_THROWS_AS(log_det_series(c, std::polar(6.0, -pi / 6.0), 8), std::domain_error);
}

TEST_CASE("log derivative equals the evaluator ratio") {
  const Coefficients c = Coefficients::smooth();
  const VolterraEvaluator ev(c, 128);
  for (const cplx k : {cplx(1.5, 0.5), cplx(-2.0, 1.0)}) {
    const cplx ld = log_derivative(c, k, Branch::plus, 256);
    const auto vd = ev.det_with_derivative(k);
    CHECK(std::abs(ld - vd.deriv / vd.value) < 5e-5 * std::abs(ld));
  }
}

TEST_CASE("continued log is single-valued and tracks a zero's phase") {
  const Coefficients c = Coefficients::box();
  const VolterraEvaluator ev(c, 64);

  // straight path down the bisector from the anchor: continued = principal
  const cplx anchor = branch_anchor(c);
  std::vector<cplx> path;
  for (double t = 0.0; t <= 1.0 + 1e-12; t += 0.125)
    path.push_back(anchor + t * (std::polar(4.0, pi / 6.0) - anchor));
  const ContinuedLog cl = continue_log(ev, path);
  REQUIRE(cl.k.size() >= path.size());
  const cplx end = cl.log_d.back();
  CHECK(std::abs(std::exp(end) - ev.det(path.back())) < 1e-10);

  // loop around the small zero near 0.558 - 0.140i accumulates 2 pi i
  const cplx z0(0.557982420187, -0.140036183323);
  std::vector<cplx> loop;
  for (int i = 0; i <= 48; ++i)
    loop.push_back(z0 + std::polar(0.08, 2.0 * pi * i / 48.0));
  const ContinuedLog lo = continue_log(ev, loop);
  const double winding = (lo.log_d.back() - lo.log_d.front()).imag();
  CHECK(winding == Catch::Approx(2.0 * pi).epsilon(1e-9));

  // a path through the zero itself aborts
  std::vector<cplx> bad = {std::polar(3.0, pi / 6.0), z0};
  CHECK_THROWS_AS(continue_log(ev, bad, 1e-6), std::runtime_error);
}

TEST_CASE("dense determinant reports self-error and wedge alarm fields") {
  const Coefficients c = Coefficients::box();
  const NystromSystem sys = build_nystrom(c, std::polar(2.0, pi / 6.0), Branch::plus, 96);
  const DeterminantValue dv = determinant(sys, true, c);
  REQUIRE(dv.self_error.has_value());
  CHECK(*dv.self_error < 1e-6);
  CHECK_FALSE(dv.wedge_zero_alarm);
  CHECK(std::abs(dv.branch_anchor) >= 10.0);
}

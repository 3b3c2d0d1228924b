#include <catch2/catch_amalgamated.hpp>

#include "det3/scattering.hpp"

using namespace det3;

TEST_CASE("amplitude and determinant-ratio routes agree on the real axis") {
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    for (double k = 1.0; k <= 8.0 + 1e-12; k += 1.0) {
      const ScatteringValue s = smatrix_plus(c, k, 256);
      INFO("k = " << k);
      CHECK(s.route_discrepancy < 1e-6);
      CHECK(std::abs(s.s - s.s_det) < 1e-6 * std::abs(s.s));
      // unitarity on the real axis
      CHECK(std::abs(std::abs(s.s) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("minus S-matrix route agrees with its determinant ratio") {
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    for (double k : {1.5, 3.0, 6.5}) {
      const ScatteringValue s = smatrix_minus(c, k, 256);
      CHECK(s.route_discrepancy < 1e-6);
    }
  }
}

TEST_CASE("born amplitude is the exact moment formula") {
  const Coefficients c = Coefficients::smooth();
  const cplx k(2.2, 0.0);
  CHECK(std::abs(amplitude_born(c, k) - (2.0 * k * c.p0() + c.q0()) / (2.0 * pi)) < 1e-15);
  const ScatteringValue s = smatrix_plus(c, 2.2, 128);
  CHECK(std::abs(s.a0 - amplitude_born(c, 2.2)) < 1e-14);
  CHECK(std::abs(s.c_k - amplitude_weight(cplx(2.2, 0.0))) < 1e-15);
}

TEST_CASE("zero potential scatters trivially") {
  const Coefficients z = Coefficients::zero();
  for (double k : {1.0, 4.0}) {
    const ScatteringValue s = smatrix_plus(z, k, 64);
    CHECK(std::abs(s.s - 1.0) < 1e-14);
    CHECK(std::abs(s.s_det - 1.0) < 1e-14);
  }
}

TEST_CASE("born split reproduces the box closed forms") {
  // for q = 1 on [0,1]: f_plus(z) = (e^{iz} - 1 - iz)/(iz)^2 and
  // f_plus(0) = 1/2; T1 keeps the half-diagonal so T1 = omega_f (f+(0) + e+ f+(zeta))
  const Coefficients box = Coefficients::box();
  const cplx k = std::polar(2.0, pi / 12.0);
  const BornDiagnostics d = born_term_diagnostics(box, k, 256);

  const cplx zeta = (omega - 1.0) * k;
  auto fplus = [](cplx z) -> cplx {
    if (std::abs(z) < 1e-12) return 0.5;
    const cplx izv = cplx(0.0, 1.0) * z;
    return (std::exp(izv) - 1.0 - izv) / (izv * izv);
  };
  const cplx omega_f = cplx(0.0, 1.0) / (6.0 * pi * k * k);
  CHECK(std::abs(d.omega_factor - omega_f) < 1e-15);
  CHECK(std::abs(d.f_plus_at_zeta - fplus(zeta)) < 1e-10);
  CHECK(std::abs(d.f_minus_at_estar_zeta - fplus(-zeta6 * zeta)) < 1e-10);

  // The half-plane split is a plain double sum, so each half carries the
  // low-order diagonal-panel error (~1e-7 at n = 256); the errors cancel in
  // the total, which is why T matches at machine level below.
  const cplx t1_want = omega_f * (0.5 + omega * fplus(zeta));
  const cplx t2_want = -omega_bar * omega_f * fplus(-zeta6 * zeta);
  CHECK(std::abs(d.T1 - t1_want) < 5e-7);
  CHECK(std::abs(d.T2 - t2_want) < 5e-7);
  CHECK(std::abs(d.T - (d.T1 + d.T2)) < 1e-13 * std::abs(d.T));
  CHECK(std::abs(d.T - (t1_want + t2_want)) < 1e-10 * std::abs(d.T));
  CHECK(d.decay_regime);

  CHECK_FALSE(born_term_diagnostics(box, std::polar(2.0, pi / 4.0), 64).decay_regime);
  CHECK_THROWS_AS(born_term_diagnostics(Coefficients::smooth(), k, 64), std::domain_error);
}

TEST_CASE("appendix decay trends across the wedge") {
  const Coefficients box = Coefficients::box();
  double prev_decay = 1e9, prev_grow = 0.0, prev_minus_lo = 1e9, prev_minus_hi = 1e9;
  for (double r : {10.0, 20.0, 40.0}) {
    const BornDiagnostics lo = born_term_diagnostics(box, std::polar(r, pi / 12.0), 128);
    CHECK(std::abs(lo.f_plus_at_zeta) < prev_decay);
    prev_decay = std::abs(lo.f_plus_at_zeta);
    CHECK(std::abs(lo.f_minus_at_estar_zeta) < prev_minus_lo);
    prev_minus_lo = std::abs(lo.f_minus_at_estar_zeta);

    const BornDiagnostics hi = born_term_diagnostics(box, std::polar(r, pi / 4.0), 128);
    CHECK(std::abs(hi.f_plus_at_zeta) > prev_grow);
    prev_grow = std::abs(hi.f_plus_at_zeta);
    CHECK(std::abs(hi.f_minus_at_estar_zeta) < prev_minus_hi);
    prev_minus_hi = std::abs(hi.f_minus_at_estar_zeta);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "det3/nystrom.hpp"

using namespace det3;

TEST_CASE("matrix entries follow the symmetrised kernel formula") {
  const Coefficients c = Coefficients::smooth();
  const cplx k(1.4, 0.6);
  const NystromSystem sys = build_nystrom(c, k, Branch::plus, 48);
  REQUIRE(sys.matrix.rows() == sys.grid.size());
  REQUIRE(sys.matrix.cols() == sys.grid.size());
  CHECK(sys.k == k);
  CHECK(sys.frobenius == Catch::Approx(sys.matrix.norm()).epsilon(1e-12));

  for (int i : {0, 7, 23}) {
    for (int j : {3, 17, 40}) {
      const double x = sys.grid.x[i], y = sys.grid.x[j];
      const cplx kern = 2.0 * c.p()(x) * free_kernel_dx(Branch::plus, k, x - y) +
                        (c.q()(x) - cplx(0.0, 1.0) * c.dp()(x)) *
                            free_kernel(Branch::plus, k, x - y);
      const cplx want = sys.grid.sqw[i] * kern * sys.grid.sqw[j];
      CHECK(std::abs(sys.matrix(i, j) - want) < 1e-14);
    }
  }
}

TEST_CASE("branch difference equals the rank-one update on the same grid") {
  for (const Coefficients& c : {Coefficients::box(), Coefficients::smooth()}) {
    const cplx k(1.1, -0.8);
    const NystromSystem plus = build_nystrom(c, k, Branch::plus, 64);
    const NystromSystem minus = build_nystrom(c, k, Branch::minus, 64);
    const MatC p = rank_one_matrix(c, k, plus.grid);
    const double rel = (plus.matrix - minus.matrix - p).norm() / plus.matrix.norm();
    CHECK(rel < 1e-13);
  }
}

TEST_CASE("rotated branch difference picks up the rotated update") {
  const Coefficients c = Coefficients::smooth();
  const cplx k(0.9, 0.4);
  const NystromSystem plus = build_nystrom(c, k, Branch::plus, 64);
  const NystromSystem minus = build_nystrom(c, omega_bar * k, Branch::minus, 64);
  const MatC p = rank_one_matrix(c, omega * k, plus.grid);
  const double rel = (plus.matrix - minus.matrix - p).norm() / plus.matrix.norm();
  CHECK(rel < 1e-13);
}

TEST_CASE("wave functionals carry the quadrature weights") {
  const Coefficients c = Coefficients::smooth();
  const cplx k(1.7, 0.2);
  const NystromSystem sys = build_nystrom(c, k, Branch::plus, 48);
  const VecC row = free_wave_row(c, k, sys.grid);
  const VecC col = weighted_wave_col(c, k, sys.grid);
  const double s2pi = std::sqrt(2.0 * pi);
  for (int i : {0, 11, 30}) {
    const double x = sys.grid.x[i];
    const cplx er = std::exp(cplx(0.0, -1.0) * k * x) / s2pi * sys.grid.sqw[i];
    CHECK(std::abs(row(i) - er) < 1e-14);
    const cplx ec = std::exp(cplx(0.0, 1.0) * k * x) * c.V(x, k) / s2pi * sys.grid.sqw[i];
    CHECK(std::abs(col(i) - ec) < 1e-14);
  }

  // the rank-one matrix is the amplitude-weighted outer product of the two
  const MatC p = rank_one_matrix(c, k, sys.grid);
  const MatC outer = amplitude_weight(k) * col * row.transpose();
  CHECK((p - outer).norm() < 1e-12 * p.norm());
}

TEST_CASE("grid panels align to coefficient kinks") {
  Coefficients c(PiecewisePoly::zero(1.0),
                 PiecewisePoly({0.0, 0.5, 1.0}, {{1.0}, {-1.0}}), 1.0);
  const NystromSystem sys = build_nystrom(c, cplx(1.0, 0.5), Branch::plus, 40);
  for (const Panel& p : sys.grid.panels)
    CHECK_FALSE((p.a < 0.5 && p.b > 0.5 + 1e-15));
}

TEST_CASE("analytic k-derivative matches finite differences") {
  const Coefficients c = Coefficients::smooth();
  const cplx k(1.3, 0.5);
  const double h = 1e-6;
  const NystromSystem base = build_nystrom(c, k, Branch::plus, 48);
  const MatC dk = build_nystrom_dk(c, k, Branch::plus, base.grid);
  const MatC fd = (build_nystrom(c, k + h, Branch::plus, 48).matrix -
                   build_nystrom(c, k - h, Branch::plus, 48).matrix) /
                  (2.0 * h);
  CHECK((dk - fd).norm() / dk.norm() < 1e-8);
}

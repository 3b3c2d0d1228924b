#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "det3/quadrature.hpp"

using namespace det3;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2m-1 exactly") {
  for (int m : {2, 5, 8, 16, 32}) {
    const GaussRule& r = gauss_legendre(m);
    REQUIRE(static_cast<int>(r.x.size()) == m);
    for (int d = 0; d < 2 * m; ++d) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.w[i] * std::pow(r.x[i], d);
      const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      CHECK(std::abs(s - exact) < 5e-14);
    }
    // ascending nodes, symmetric rule
    for (int i = 1; i < m; ++i) CHECK(r.x[i] > r.x[i - 1]);
    CHECK(std::abs(r.x.front() + r.x.back()) < 1e-15);
  }
}

TEST_CASE("rule cache returns a stable reference") {
  const GaussRule& a = gauss_legendre(12);
  const GaussRule& b = gauss_legendre(12);
  CHECK(&a == &b);
}

TEST_CASE("panel grid respects breakpoints and node budget") {
  const std::vector<double> breaks = {0.0, 0.5, 1.0};
  const PanelGrid g = make_panel_grid(breaks, 64, 8);
  CHECK(g.nodes_per_panel == 8);
  CHECK(g.size() >= 64);
  CHECK(g.size() % 8 == 0);

  // no panel straddles the interior breakpoint
  for (const Panel& p : g.panels) {
    CHECK(p.b > p.a);
    CHECK_FALSE((p.a < 0.5 && p.b > 0.5 + 1e-15));
  }
  // panels tile [0, 1]
  CHECK(g.panels.front().a == 0.0);
  CHECK(g.panels.back().b == Catch::Approx(1.0));
  for (size_t i = 1; i < g.panels.size(); ++i)
    CHECK(g.panels[i].a == Catch::Approx(g.panels[i - 1].b));

  const double total = std::accumulate(g.w.begin(), g.w.end(), 0.0);
  CHECK(total == Catch::Approx(1.0).epsilon(1e-14));
  for (int i = 0; i < g.size(); ++i)
    CHECK(g.sqw[i] == Catch::Approx(std::sqrt(g.w[i])).epsilon(1e-14));
}

TEST_CASE("panel quadrature is spectrally accurate per piece") {
  const double pi = 3.14159265358979323846;
  const PanelGrid g = make_panel_grid({0.0, 1.0}, 48, 8);
  double s_sin = 0.0, s_exp = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    s_sin += g.w[i] * std::sin(pi * g.x[i]);
    s_exp += g.w[i] * std::exp(g.x[i]);
  }
  CHECK(s_sin == Catch::Approx(2.0 / pi).epsilon(1e-13));
  CHECK(s_exp == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

  // |x - 1/2| is smooth on each side of an aligned break: exact again
  const PanelGrid h = make_panel_grid({0.0, 0.5, 1.0}, 32, 8);
  double s_abs = 0.0;
  for (int i = 0; i < h.size(); ++i) s_abs += h.w[i] * std::abs(h.x[i] - 0.5);
  CHECK(s_abs == Catch::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("tiny budgets still give every piece a panel") {
  const PanelGrid g = make_panel_grid({0.0, 0.2, 0.4, 1.0}, 8, 8);
  CHECK(g.panels.size() >= 3);
  bool covers_02 = false;
  for (const Panel& p : g.panels)
    if (p.a == Catch::Approx(0.2) || p.b == Catch::Approx(0.2)) covers_02 = true;
  CHECK(covers_02);
}

#include "det3/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace det3 {

static GaussRule compute_gauss(int m) {
  if (m < 1 || m > 128) throw std::invalid_argument("gauss_legendre: bad order");
  GaussRule r;
  r.x.resize(m);
  r.w.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_m.
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[m - 1 - i] = x;
    r.w[i] = r.w[m - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

const GaussRule& gauss_legendre(int m) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_gauss(m)).first;
  return it->second;
}

PanelGrid make_panel_grid(const std::vector<double>& breaks, int n,
                          int nodes_per_panel) {
  if (breaks.size() < 2) throw std::invalid_argument("make_panel_grid: need an interval");
  if (n < nodes_per_panel) n = nodes_per_panel;
  const int m = nodes_per_panel;
  const double total_len = breaks.back() - breaks.front();
  int panels_target = (n + m - 1) / m;
  const int pieces = static_cast<int>(breaks.size()) - 1;
  if (panels_target < pieces) panels_target = pieces;

  // Distribute panels to pieces proportionally to their length (>= 1 each).
  std::vector<int> per_piece(pieces, 1);
  int assigned = pieces;
  while (assigned < panels_target) {
    // Give the next panel to the piece with the largest current panel width.
    int best = 0;
    double best_width = -1.0;
    for (int i = 0; i < pieces; ++i) {
      double width = (breaks[i + 1] - breaks[i]) / per_piece[i];
      if (width > best_width) {
        best_width = width;
        best = i;
      }
    }
    ++per_piece[best];
    ++assigned;
  }

  const GaussRule& g = gauss_legendre(m);
  PanelGrid grid;
  grid.nodes_per_panel = m;
  for (int i = 0; i < pieces; ++i) {
    const double a0 = breaks[i], b0 = breaks[i + 1];
    const double h = (b0 - a0) / per_piece[i];
    for (int p = 0; p < per_piece[i]; ++p) {
      Panel panel;
      panel.a = a0 + p * h;
      panel.b = panel.a + h;
      const double mid = 0.5 * (panel.a + panel.b), half = 0.5 * h;
      panel.x.resize(m);
      panel.w.resize(m);
      for (int j = 0; j < m; ++j) {
        panel.x[j] = mid + half * g.x[j];
        panel.w[j] = half * g.w[j];
        grid.x.push_back(panel.x[j]);
        grid.w.push_back(panel.w[j]);
        grid.sqw.push_back(std::sqrt(panel.w[j]));
      }
      grid.panels.push_back(std::move(panel));
    }
  }
  (void)total_len;
  return grid;
}

}  // namespace det3

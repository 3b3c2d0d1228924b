#ifndef DET3_QUADRATURE_HPP
#define DET3_QUADRATURE_HPP

#include <utility>
#include <vector>

namespace det3 {

// Gauss-Legendre rule on [-1, 1], nodes ascending. Computed by Newton
// iteration on the Legendre recurrence; accurate to machine precision for
// the small m used here (m <= 64).
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int m);

// Composite panel rule on [0, gamma]. Panels are aligned to the supplied
// breakpoints (coefficient pieces), each panel carrying the same Gauss rule,
// so integrands that are smooth within pieces are integrated spectrally.
struct Panel {
  double a, b;
  std::vector<double> x, w;  // nodes/weights on [a, b]
};
struct PanelGrid {
  std::vector<Panel> panels;
  std::vector<double> x, w, sqw;  // concatenated nodes, weights, sqrt(weights)
  int nodes_per_panel = 0;
  int size() const { return static_cast<int>(x.size()); }
};

// n is the total node count target; actual count is rounded up to a multiple
// of nodes_per_panel with every piece receiving at least one panel.
PanelGrid make_panel_grid(const std::vector<double>& breaks, int n,
                          int nodes_per_panel = 8);

}  // namespace det3

#endif

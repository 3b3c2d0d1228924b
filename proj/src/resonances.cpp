#include "det3/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "det3/scattering.hpp"

namespace det3 {

namespace {

constexpr cplx iu{0.0, 1.0};

std::string fmt_k(cplx k) {
  std::ostringstream os;
  os << "(" << k.real() << ", " << k.imag() << ")";
  return os.str();
}

struct WindingAccum {
  double total = 0.0, max_step = 0.0;
  int evaluations = 0;
};

void winding_edge(const std::function<cplx(cplx)>& f, cplx k0, cplx v0, cplx k1, cplx v1,
                  int depth, int max_depth, WindingAccum& acc) {
  const double dphi = std::arg(v1 / v0);
  if (std::abs(dphi) < pi / 2.0) {
    acc.total += dphi;
    acc.max_step = std::max(acc.max_step, std::abs(dphi));
    return;
  }
  if (depth >= max_depth)
    throw std::runtime_error("winding refinement bottomed out near k = " + fmt_k(k0));
  const cplx mid = 0.5 * (k0 + k1);
  const cplx vm = f(mid);
  ++acc.evaluations;
  winding_edge(f, k0, v0, mid, vm, depth + 1, max_depth, acc);
  winding_edge(f, mid, vm, k1, v1, depth + 1, max_depth, acc);
}

}  // namespace

WindingResult winding_count(const std::function<cplx(cplx)>& f, std::vector<cplx> contour,
                            double guard_rel, int max_depth) {
  if (contour.size() < 3) throw std::invalid_argument("winding_count: degenerate contour");
  if (std::abs(contour.front() - contour.back()) > 0.0) contour.push_back(contour.front());
  const size_t n = contour.size() - 1;  // distinct vertices

  WindingAccum acc;
  std::vector<cplx> vals(contour.size());
  for (size_t i = 0; i < contour.size(); ++i) {
    vals[i] = f(contour[i]);
    ++acc.evaluations;
  }

  std::vector<double> mags;
  mags.reserve(n);
  for (size_t i = 0; i < n; ++i) mags.push_back(std::abs(vals[i]));
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double median = sorted[n / 2];

  cplx centroid = 0.0;
  for (size_t i = 0; i < n; ++i) centroid += contour[i];
  centroid /= static_cast<double>(n);

  // Deterministic outward perturbation of vertices the determinant nearly
  // vanishes on; repeated pushes give up after a few tries.
  for (size_t i = 0; i < n; ++i) {
    int tries = 0;
    while (std::abs(vals[i]) < guard_rel * median && tries < 4) {
      const cplx prev = contour[i == 0 ? n - 1 : i - 1];
      const cplx next = contour[i + 1];
      const double edge = 0.5 * (std::abs(contour[i] - prev) + std::abs(next - contour[i]));
      cplx dir = contour[i] - centroid;
      const double len = std::abs(dir);
      dir = len > 0.0 ? dir / len : cplx(1.0, 0.0);
      contour[i] += dir * (0.1 * edge);
      vals[i] = f(contour[i]);
      ++acc.evaluations;
      ++tries;
    }
    if (std::abs(vals[i]) < guard_rel * median)
      throw std::runtime_error("winding contour stuck on a near-zero at k = " +
                               fmt_k(contour[i]));
  }
  vals.back() = vals.front();
  contour.back() = contour.front();

  for (size_t i = 0; i < n; ++i)
    winding_edge(f, contour[i], vals[i], contour[i + 1], vals[i + 1], 0, max_depth, acc);

  WindingResult out;
  out.raw = acc.total / (2.0 * pi);
  out.max_step = acc.max_step;
  out.evaluations = acc.evaluations;
  const double rounded = std::round(out.raw);
  if (std::abs(out.raw - rounded) > 0.1)
    throw std::runtime_error("winding total is not an integer: " + std::to_string(out.raw));
  out.count = static_cast<int>(rounded);
  return out;
}

std::vector<cplx> circle_contour(cplx center, double radius, int points) {
  std::vector<cplx> pts;
  pts.reserve(points);
  for (int i = 0; i < points; ++i)
    pts.push_back(center + std::polar(radius, 2.0 * pi * i / points));
  return pts;
}

std::vector<cplx> annulus_sector_contour(double r0, double r1, double arg0, double arg1,
                                         int per_unit) {
  std::vector<cplx> pts;
  auto arc = [&](double r, double a, double b) {
    const int na = std::max(12, static_cast<int>(per_unit * r * std::abs(b - a)));
    for (int i = 0; i < na; ++i) pts.push_back(std::polar(r, a + (b - a) * i / na));
  };
  auto ray = [&](double a, double ra, double rb) {
    const int nr = std::max(12, static_cast<int>(per_unit * std::abs(rb - ra)));
    for (int i = 0; i < nr; ++i) pts.push_back(std::polar(ra + (rb - ra) * i / nr, a));
  };
  arc(r1, arg0, arg1);
  ray(arg1, r1, r0);
  arc(r0, arg1, arg0);
  ray(arg0, r0, r1);
  return pts;
}

int ResonanceSet::total_multiplicity() const {
  int t = 0;
  for (const Resonance& z : zeros) t += z.multiplicity;
  return t;
}

// ---------------------------------------------------------------------------
// Zero search
// ---------------------------------------------------------------------------

namespace {

constexpr double k_min_exclusion = 1e-2;

struct Cell {
  double cx, cy, half;
  cplx center() const { return {cx, cy}; }
  double far_corner() const {
    return std::hypot(std::abs(cx) + half, std::abs(cy) + half);
  }
  double near_point(double) const {
    // Distance from the origin to the closed square.
    const double dx = std::max(0.0, std::abs(cx) - half);
    const double dy = std::max(0.0, std::abs(cy) - half);
    return std::hypot(dx, dy);
  }
  bool contains(cplx z, double slack) const {
    return std::abs(z.real() - cx) <= half + slack && std::abs(z.imag() - cy) <= half + slack;
  }
  std::vector<cplx> contour() const {
    // Corners plus edge midpoints; the adaptive winding fills in the rest.
    return {cplx(cx - half, cy - half), cplx(cx, cy - half), cplx(cx + half, cy - half),
            cplx(cx + half, cy),        cplx(cx + half, cy + half), cplx(cx, cy + half),
            cplx(cx - half, cy + half), cplx(cx - half, cy)};
  }
};

}  // namespace

ResonanceSet find_resonances(const Coefficients& c, double r0, double r1,
                             const ResonanceOptions& opt) {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::invalid_argument("find_resonances: need 0 < r0 < r1");
  ResonanceSet out;
  out.r_inner = r0;
  out.r_outer = r1;
  out.reports.push_back("exclusion disk |k| < 1e-2 not searched (pole at the origin)");

  const PoleOrderResult pole = estimate_pole_order(c, std::max(96, opt.det_nodes));
  VolterraEvaluator ev_w(c, opt.det_nodes);
  VolterraEvaluator ev_r(c, opt.refine_nodes);
  const int m = pole.m;
  // Cell corners can land exactly on the pole at 0 (the initial tiling and
  // every subdivision of an origin cell put one there). The compensated
  // function is C + O(k) on that disk, so the limit value keeps every phase
  // step well under pi/2.
  auto entire = [&](cplx k) {
    if (std::abs(k) < 1e-5) return pole.C;
    return std::pow(k, m) * ev_w.det(k);
  };
  auto dval = [&](cplx k) { return ev_w.det(k); };

  std::deque<Cell> queue;
  {
    // Initial cells tile the bounding box of the outer circle.
    const double size = std::max(1.0, r1 / 6.0);
    const int cells = static_cast<int>(std::ceil(r1 / size));
    for (int ix = -cells; ix < cells; ++ix)
      for (int iy = -cells; iy < cells; ++iy)
        queue.push_back({(ix + 0.5) * size, (iy + 0.5) * size, 0.5 * size});
  }

  auto note_defect = [&](const std::string& s) { out.reports.push_back(s); };

  while (!queue.empty()) {
    Cell cell = queue.front();
    queue.pop_front();
    if (cell.far_corner() < r0) continue;          // fully inside the inner disk
    if (cell.near_point(0.0) > r1) continue;       // fully outside the outer circle
    if (cell.far_corner() < std::max(k_min_exclusion, 1e-6)) continue;

    int count = 0;
    try {
      count = winding_count(entire, cell.contour(), 1e-6, 14).count;
    } catch (const std::runtime_error&) {
      if (cell.half > opt.cell_tol) {
        const double h = 0.5 * cell.half;
        queue.push_back({cell.cx - h, cell.cy - h, h});
        queue.push_back({cell.cx + h, cell.cy - h, h});
        queue.push_back({cell.cx - h, cell.cy + h, h});
        queue.push_back({cell.cx + h, cell.cy + h, h});
      } else {
        note_defect("winding failed on terminal cell at " + fmt_k(cell.center()));
      }
      continue;
    }
    if (count == 0) continue;
    // A cell straddling the origin counts the compensating zero of k^m D;
    // subdividing shrinks it until the 0-cell falls inside the inner disk.
    const bool has_origin = std::abs(cell.cx) <= cell.half && std::abs(cell.cy) <= cell.half;

    if (count == 1 && !has_origin) {
      cplx z = cell.center();
      int steps = 0;
      for (; steps < 60; ++steps) {
        // Iterates leaving 3 cell-widths (or falling near the pole at 0)
        // have diverged; bail out and let the containment check re-subdivide.
        if (std::abs(z) < 1e-6 || !cell.contains(z, 6.0 * cell.half)) break;
        const auto vd = ev_r.det_with_derivative(z);
        if (vd.deriv == cplx(0.0, 0.0)) break;
        const cplx step = vd.value / vd.deriv;
        z -= step;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) break;
      }
      if (std::abs(z) < 1e-6 || !cell.contains(z, 1e-9 + 0.05 * cell.half)) {
        // The count certifies a zero inside; Newton escaping means the start
        // was poor. Isolate harder.
        const double h = 0.5 * cell.half;
        if (h > 1e-10) {
          queue.push_back({cell.cx - h, cell.cy - h, h});
          queue.push_back({cell.cx + h, cell.cy - h, h});
          queue.push_back({cell.cx - h, cell.cy + h, h});
          queue.push_back({cell.cx + h, cell.cy + h, h});
        } else {
          note_defect("newton escaped a terminal cell at " + fmt_k(cell.center()));
        }
        continue;
      }
      const double resid = std::abs(ev_r.det(z));
      if (resid > opt.residual_tol) {
        note_defect("refinement stalled at " + fmt_k(z) + ", |D| = " + std::to_string(resid));
        continue;
      }
      const double r = std::abs(z);
      const double a = std::arg(z);
      if (a >= -1e-12 && a <= pi / 3.0 + 1e-12 && r > k_min_exclusion) {
        note_defect("zero inside the forbidden closed wedge at " + fmt_k(z));
        continue;
      }
      if (r < r0 || r > r1) continue;  // isolated fine, but outside the annulus
      bool dup = false;
      for (Resonance& zz : out.zeros)
        if (std::abs(zz.k - z) < 1e-7 * std::max(1.0, r)) dup = true;
      if (dup) continue;
      out.zeros.push_back({z, 1, resid, steps, cell.half * std::sqrt(2.0)});
      continue;
    }

    // count >= 2 (or an origin cell): split until separated or terminal.
    if (2.0 * cell.half * std::sqrt(2.0) < opt.cell_tol && !has_origin) {
      const cplx z = cell.center();
      out.zeros.push_back({z, count, std::abs(ev_r.det(z)), 0, cell.half * std::sqrt(2.0)});
      note_defect("cluster of multiplicity " + std::to_string(count) + " reported at " +
                  fmt_k(z));
      continue;
    }
    const double h = 0.5 * cell.half;
    queue.push_back({cell.cx - h, cell.cy - h, h});
    queue.push_back({cell.cx + h, cell.cy - h, h});
    queue.push_back({cell.cx - h, cell.cy + h, h});
    queue.push_back({cell.cx + h, cell.cy + h, h});
  }

  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const Resonance& a, const Resonance& b) { return std::abs(a.k) < std::abs(b.k); });

  // Boundary certification: the difference of the two circle windings of D
  // cancels the pole and must equal the located total.
  const int pts0 = std::max(64, static_cast<int>(340.0 * r0));
  const int pts1 = std::max(64, static_cast<int>(340.0 * r1));
  const WindingResult w0 = winding_count(dval, circle_contour(0.0, r0, pts0));
  const WindingResult w1 = winding_count(dval, circle_contour(0.0, r1, pts1));
  out.boundary_winding = w1.count - w0.count;
  out.certified = out.boundary_winding == out.total_multiplicity();
  return out;
}

std::vector<cplx> phase_scan_cells(const Coefficients& c, double r0, double r1,
                                   double resolution, int det_nodes) {
  VolterraEvaluator ev(c, det_nodes);
  const double lo = -r1 - 0.5 * resolution;
  const int nax = static_cast<int>(std::floor(2.0 * (r1 + resolution) / resolution)) + 1;
  std::vector<cplx> vals(static_cast<size_t>(nax) * nax,
                         cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  auto at = [&](int ix, int iy) -> cplx& { return vals[static_cast<size_t>(ix) * nax + iy]; };
  for (int ix = 0; ix < nax; ++ix) {
    const double re = lo + ix * resolution;
    for (int iy = 0; iy < nax; ++iy) {
      const double im = lo + iy * resolution;
      const double r = std::hypot(re, im);
      if (r >= r0 - resolution && r <= r1 + resolution) at(ix, iy) = ev.det({re, im});
    }
  }
  std::vector<cplx> centers;
  for (int ix = 0; ix + 1 < nax; ++ix) {
    for (int iy = 0; iy + 1 < nax; ++iy) {
      const cplx v[4] = {at(ix, iy), at(ix + 1, iy), at(ix + 1, iy + 1), at(ix, iy + 1)};
      bool ok = true;
      for (const cplx& x : v) ok = ok && !std::isnan(x.real());
      if (!ok) continue;
      double tot = 0.0;
      for (int e = 0; e < 4; ++e) tot += std::arg(v[(e + 1) % 4] / v[e]);
      if (std::abs(tot) > pi)
        centers.push_back({lo + (ix + 0.5) * resolution, lo + (iy + 0.5) * resolution});
    }
  }
  return centers;
}

CountingResult counting_function(const Coefficients& c, const ResonanceSet& res, double r,
                                 int pole_order, int det_nodes) {
  if (r < res.r_inner || r > res.r_outer)
    throw std::invalid_argument("counting_function radius outside the certified annulus");
  VolterraEvaluator ev(c, det_nodes);
  auto dval = [&](cplx k) { return ev.det(k); };
  int located = 0;
  for (const Resonance& z : res.zeros)
    if (std::abs(z.k) <= r) located += z.multiplicity;
  const WindingResult w0 =
      winding_count(dval, circle_contour(0.0, res.r_inner,
                                         std::max(64, static_cast<int>(340.0 * res.r_inner))));
  const WindingResult wr =
      winding_count(dval, circle_contour(0.0, r, std::max(64, static_cast<int>(340.0 * r))));
  const int inner = w0.count + pole_order;  // zeros hiding inside the inner circle
  CountingResult out;
  out.count = located + inner;
  out.certified = (wr.count - w0.count == located) && inner >= 0;
  out.bound = (16.0 + pole_order * std::log(2.0)) + (6.0 * c.gamma() / std::log(2.0)) * r;
  out.bound_ok = out.count <= out.bound;
  return out;
}

PoleOrderResult estimate_pole_order(const Coefficients& c, int n) {
  VolterraEvaluator ev(c, n);
  PoleOrderResult out;
  const double ladder[] = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  const double rays[] = {-pi / 12.0, -pi / 5.0};
  double slopes[2] = {0.0, 0.0};
  int ms[2] = {0, 0};
  for (int rr = 0; rr < 2; ++rr) {
    // Least-squares slope of log|D| against log|k| down the ladder.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : ladder) {
      const cplx k = std::polar(t, rays[rr]);
      const double lx = std::log(t), ly = std::log(std::abs(ev.det(k)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const int np = static_cast<int>(std::size(ladder));
    slopes[rr] = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    ms[rr] = static_cast<int>(std::lround(-slopes[rr]));
  }
  out.slope_ray1 = slopes[0];
  out.slope_ray2 = slopes[1];
  const bool bad = std::abs(slopes[0] + ms[0]) > 0.2 || std::abs(slopes[1] + ms[1]) > 0.2 ||
                   ms[0] != ms[1] || ms[0] < 0 || ms[0] > 3;
  if (bad) {
    out.indeterminate = true;
    out.m = std::clamp(ms[0], 0, 3);
  } else {
    out.m = ms[0];
  }
  const cplx kc = std::polar(3e-4, rays[0]);
  out.C = std::pow(kc, out.m) * ev.det(kc);
  return out;
}

cplx exp_coefficient_limit(const Coefficients& c, int m, int n) {
  VolterraEvaluator ev(c, n);
  const cplx dir = std::polar(1.0, -pi / 12.0);
  auto b_at = [&](double h) {
    const cplx k = h * dir;
    const auto vd = ev.det_with_derivative(k);
    return vd.deriv / vd.value + static_cast<double>(m) / k;
  };
  // b(h) = b + b1 h + b2 h^2 + O(h^3); the 1/-6/8 weights cancel both terms.
  const double h = 4e-3;
  return (b_at(h) - 6.0 * b_at(h / 2) + 8.0 * b_at(h / 4)) / 3.0;
}

// ---------------------------------------------------------------------------
// Hadamard data and the formula checks
// ---------------------------------------------------------------------------

cplx hadamard_eval(const HadamardData& h, const ResonanceSet& res, cplx k) {
  cplx prod = 1.0;
  for (const Resonance& z : res.zeros) {
    if (std::abs(z.k) > h.zeros_used) continue;
    for (int j = 0; j < z.multiplicity; ++j)
      prod *= (1.0 - k / z.k) * std::exp(k / z.k);
  }
  return h.C / std::pow(k, h.m) * std::exp(h.b * k) * prod;
}

HadamardFit hadamard_reconstruct(const Coefficients& c, const ResonanceSet& res, int m,
                                 cplx C, double r_trunc, const std::vector<cplx>& anchors_in) {
  std::vector<cplx> anchors = anchors_in;
  if (anchors.empty()) {
    // Anchors stay on the zero-free bisector ray but inside the truncation
    // radius: tail factors of omitted zeros then admit a convergent expansion
    // and cannot corrupt the linear fit.
    for (double s : {0.35, 0.5, 0.65, 0.8}) anchors.push_back(s * r_trunc * zeta12);
  }
  for (const cplx& a : anchors)
    for (const Resonance& z : res.zeros)
      if (std::abs(a - z.k) < 1e-2)
        throw std::invalid_argument("hadamard anchor within guard distance of a zero");

  VolterraEvaluator ev(c, 160);
  // Least squares of r_a = b * a over the anchors.
  cplx num = 0.0;
  double den = 0.0;
  for (const cplx& a : anchors) {
    cplx rhs = std::log(ev.det(a)) - (std::log(C) - static_cast<double>(m) * std::log(a));
    for (const Resonance& z : res.zeros) {
      if (std::abs(z.k) > r_trunc) continue;
      for (int j = 0; j < z.multiplicity; ++j) rhs -= std::log(1.0 - a / z.k) + a / z.k;
    }
    num += std::conj(a) * rhs;
    den += std::norm(a);
  }
  HadamardFit out;
  out.data = {m, C, num / den, r_trunc};

  // Held-out comparison grid: a deterministic fan inside |k| <= 3 avoiding
  // zero neighbourhoods and the origin.
  double worst = 0.0;
  for (double rr : {1.0, 1.75, 2.5, 3.0}) {
    for (double aa : {-2.75, -2.2, -1.6, -1.0, -0.4, 0.9, 1.5, 2.1, 2.75}) {
      const cplx k = std::polar(rr, aa);
      bool guarded = false;
      for (const Resonance& z : res.zeros)
        if (std::abs(k - z.k) < 0.25) guarded = true;
      if (guarded) continue;
      const cplx d = ev.det(k);
      worst = std::max(worst, std::abs(hadamard_eval(out.data, res, k) - d) / std::abs(d));
    }
  }
  out.reconstruction_error = worst;
  return out;
}

std::vector<double> verify_trace_formula(const Coefficients& c, const ResonanceSet& res,
                                         const HadamardData& h,
                                         const std::vector<cplx>& k_samples,
                                         const std::vector<double>& r_truncs) {
  VolterraEvaluator ev(c, 160);
  std::vector<double> out;
  for (double R : r_truncs) {
    double worst = 0.0;
    for (const cplx& k : k_samples) {
      const auto vd = ev.det_with_derivative(k);
      if (std::abs(vd.value) < 1e-8) continue;  // ill-conditioned: skip
      const cplx lhs = k * vd.deriv / vd.value;
      cplx sum = 0.0;
      for (const Resonance& z : res.zeros) {
        if (std::abs(z.k) > R) continue;
        for (int j = 0; j < z.multiplicity; ++j) sum += 1.0 / (z.k * (k - z.k));
      }
      const cplx rhs = -static_cast<double>(h.m) + h.b * k + k * k * sum;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(worst);
  }
  return out;
}

BreitWignerReport breit_wigner_phase(const Coefficients& c, const ResonanceSet& res, cplx b,
                                     const std::vector<double>& k_grid,
                                     const std::vector<double>& r_truncs, int n) {
  if (k_grid.size() < 3) throw std::invalid_argument("breit_wigner_phase: grid too small");
  const double hstep = k_grid[1] - k_grid[0];
  for (size_t i = 1; i + 1 < k_grid.size(); ++i)
    if (std::abs(k_grid[i + 1] - k_grid[i] - hstep) > 1e-9 * hstep)
      throw std::invalid_argument("breit_wigner_phase: grid must be uniform");

  VolterraEvaluator ev(c, 160);
  // Phase by continuation from a large real anchor down the axis; the anchor
  // sits where the principal log is the continued branch.
  const double start = std::max(std::abs(branch_anchor(c)), k_grid.back() + 2.0);
  std::vector<cplx> path{cplx(start, 0.0)};
  for (double t = start - 0.25; t > k_grid.back() + hstep; t -= 0.25)
    path.push_back(cplx(t, 0.0));
  path.push_back(cplx(k_grid.back() + hstep, 0.0));
  for (size_t i = k_grid.size(); i-- > 0;) path.push_back(cplx(k_grid[i], 0.0));
  path.push_back(cplx(k_grid.front() - hstep, 0.0));
  const ContinuedLog cl = continue_log(ev, path);

  auto phase_at = [&](double k) {
    double best = 1e300, ph = 0.0;
    for (size_t i = 0; i < cl.k.size(); ++i) {
      const double d = std::abs(cl.k[i] - cplx(k, 0.0));
      if (d < best) {
        best = d;
        ph = cl.log_d[i].imag();
      }
    }
    return ph;
  };

  BreitWignerReport out;
  std::vector<double> dphi(k_grid.size());
  for (size_t i = 0; i < k_grid.size(); ++i) {
    const double lo = i == 0 ? k_grid[0] - hstep : k_grid[i - 1];
    const double hi = i + 1 == k_grid.size() ? k_grid.back() + hstep : k_grid[i + 1];
    dphi[i] = (phase_at(hi) - phase_at(lo)) / (hi - lo);
  }
  for (double R : r_truncs) {
    double worst = 0.0;
    for (size_t i = 0; i < k_grid.size(); ++i) {
      const double k = k_grid[i];
      double sum = 0.0;
      for (const Resonance& z : res.zeros) {
        if (std::abs(z.k) > R) continue;
        const double term =
            (1.0 / std::norm(z.k - k) - 1.0 / std::norm(z.k)) * z.k.imag();
        sum += z.multiplicity * term;
      }
      worst = std::max(worst, std::abs(dphi[i] - (b.imag() + sum)));
    }
    out.residual_by_trunc.push_back(worst);
  }

  double consistency = 0.0;
  for (size_t i = 0; i < k_grid.size(); i += std::max<size_t>(1, k_grid.size() / 12)) {
    const double k = k_grid[i];
    const ScatteringValue s = smatrix_plus(c, k, n);
    consistency = std::max(consistency,
                           std::abs(s.s - std::exp(cplx(0.0, -2.0 * phase_at(k)))));
  }
  out.smatrix_consistency = consistency;
  return out;
}

double jensen_defect(const Coefficients& c, const ResonanceSet& res, int m, cplx C, double r,
                     int n_theta, int det_nodes) {
  VolterraEvaluator ev(c, det_nodes);
  double lhs = 0.0;
  for (const Resonance& z : res.zeros)
    if (std::abs(z.k) < r) lhs += z.multiplicity * std::log(r / std::abs(z.k));
  double mean = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const cplx k = std::polar(r, 2.0 * pi * i / n_theta);
    mean += std::log(std::abs(std::pow(k, m) * ev.det(k)));
  }
  mean /= n_theta;
  const double rhs = mean - std::log(std::abs(C));
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace det3

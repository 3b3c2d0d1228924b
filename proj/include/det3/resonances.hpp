#ifndef DET3_RESONANCES_HPP
#define DET3_RESONANCES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "det3/determinant.hpp"

namespace det3 {

// ---------------------------------------------------------------------------
// Argument-principle machinery over the analytically continued determinant.
// ---------------------------------------------------------------------------

// Winding number of f along a closed polygonal contour. Steps are bisected
// until every phase increment is < pi/2; contour points where |f| falls under
// guard_rel x (median |f| on the contour) are pushed outward from the contour
// centroid by 10% of the local edge length, deterministically. Throws
// std::runtime_error if the accumulated winding is farther than 0.1 from an
// integer or if refinement bottoms out.
struct WindingResult {
  int count = 0;
  double raw = 0.0;       // pre-rounding value
  double max_step = 0.0;  // largest |Delta arg| after refinement
  int evaluations = 0;
};
WindingResult winding_count(const std::function<cplx(cplx)>& f,
                            std::vector<cplx> contour,
                            double guard_rel = 1e-6, int max_depth = 14);

// Convenience contours.
std::vector<cplx> circle_contour(cplx center, double radius, int points);
std::vector<cplx> annulus_sector_contour(double r0, double r1, double arg0,
                                         double arg1, int per_unit = 24);

struct Resonance {
  cplx k;
  int multiplicity = 1;
  double residual = 0.0;       // |D| at the refined point
  int newton_steps = 0;
  double certificate_radius = 0.0;  // half-diameter of the isolating cell
};

struct ResonanceSet {
  std::vector<Resonance> zeros;       // inside the annulus, sorted by |k|
  double r_inner = 0.0, r_outer = 0.0;
  int boundary_winding = 0;           // zeros enclosed between the two circles
  bool certified = false;             // boundary count == sum of multiplicities
  std::vector<std::string> reports;   // cluster boxes, defects, skipped items
  int total_multiplicity() const;
};

struct ResonanceOptions {
  int det_nodes = 96;        // evaluator resolution for windings
  int refine_nodes = 256;    // evaluator resolution for Newton polish
  double cell_tol = 1e-3;    // smallest cell diameter before cluster report
  double residual_tol = 1e-9;
};

// Quadtree subdivision + winding counts + Newton polish (analytic
// derivative). Cells with count 0 are discarded, count 1 cells are polished,
// higher counts are split until they separate or the cell collapses to a
// reported cluster. Zeros found inside the closed upper wedge are defects:
// flagged in reports, never stored.
ResonanceSet find_resonances(const Coefficients& c, double r0, double r1,
                             const ResonanceOptions& opt = {});

// Brute-force oracle: phase winding of D over every plaquette of a uniform
// grid at the given resolution; returns plaquette centers with |winding| > 1/2.
std::vector<cplx> phase_scan_cells(const Coefficients& c, double r0, double r1,
                                   double resolution, int det_nodes = 32);

// Counting function N(r) from a located set, certified by circle windings at
// both radii (their difference must equal the count in between; the pole at 0
// cancels). Also evaluates the linear counting bound (16 + m log2) + (6 gamma
// / log 2) r.
struct CountingResult {
  int count = 0;
  double bound = 0.0;
  bool bound_ok = false;
  bool certified = false;
};
CountingResult counting_function(const Coefficients& c, const ResonanceSet& res,
                                 double r, int pole_order,
                                 int det_nodes = 96);

// Pole order at k = 0 from log|D| slopes on a shrinking ladder along two
// rays; m rounded to the nearest integer in [0, 3], C from the compensated
// limit k^m D(k). Slopes farther than 0.2 from an integer -> indeterminate.
struct PoleOrderResult {
  int m = 0;
  cplx C = 1.0;
  double slope_ray1 = 0.0, slope_ray2 = 0.0;
  bool indeterminate = false;
};
PoleOrderResult estimate_pole_order(const Coefficients& c, int n = 128);

// Constant term b of log(k^m D) at the origin, from the small-k limit of
// D'/D + m/k along the ray e^{-i pi/12}. Richardson extrapolation over
// h, h/2, h/4 removes the linear and quadratic terms of the expansion.
cplx exp_coefficient_limit(const Coefficients& c, int m, int n = 160);

struct HadamardData {
  int m = 0;
  cplx C = 1.0;
  cplx b = 0.0;
  double zeros_used = 0.0;  // truncation radius
};

// b by least squares over the anchor ray points after subtracting the pole
// factor and the truncated genus-1 product; reconstruction error sampled on
// a held-out annulus grid is reported alongside.
struct HadamardFit {
  HadamardData data;
  double reconstruction_error = 0.0;  // max relative error on the test grid
};
HadamardFit hadamard_reconstruct(const Coefficients& c, const ResonanceSet& res,
                                 int m, cplx C, double r_trunc,
                                 const std::vector<cplx>& anchors = {});
cplx hadamard_eval(const HadamardData& h, const ResonanceSet& res, cplx k);

// Trace-formula residual: k D'/D against -m + b k + k^2 sum 1/(k_n (k - k_n))
// truncated at each radius in r_truncs; max residual per truncation radius.
std::vector<double> verify_trace_formula(const Coefficients& c,
                                         const ResonanceSet& res,
                                         const HadamardData& h,
                                         const std::vector<cplx>& k_samples,
                                         const std::vector<double>& r_truncs);

// Scattering-phase derivative on the positive real axis versus the resonance
// sum Im b + sum (1/|k_n - k|^2 - 1/|k_n|^2) Im k_n; phase from the continued
// log determinant, derivative by central differences. Also reports the
// max |S_plus - e^{-2 i phase}| consistency defect on the grid.
struct BreitWignerReport {
  std::vector<double> residual_by_trunc;
  double smatrix_consistency = 0.0;
};
BreitWignerReport breit_wigner_phase(const Coefficients& c, const ResonanceSet& res,
                                     cplx b, const std::vector<double>& k_grid,
                                     const std::vector<double>& r_truncs,
                                     int n = 256);

// Jensen cross-check at radius r: sum log(r/|k_n|) over located zeros against
// the circle mean of log|k^m D| minus log|C|; relative defect returned.
double jensen_defect(const Coefficients& c, const ResonanceSet& res, int m,
                     cplx C, double r, int n_theta = 512, int det_nodes = 96);

}  // namespace det3

#endif

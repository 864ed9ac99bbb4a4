#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "instanton/angular.hpp"
#include "instanton/radial.hpp"
#include "instanton/separation.hpp"

namespace instanton {

struct NegativityConfig {
  int r_points = 10000;       // r - r_inner = scale tan(xi), xi uniform in (0, pi/2)
  int x_points = 1000;        // x = cos(theta) uniform in (-1, 1)
  int identity_samples = 1000;
  std::uint64_t seed = 0;
};

struct NegativityRow {
  ModeIndex mode;
  RadialKind kind = RadialKind::U;
  double sup = 0;            // grid supremum of U + V (Kerr) or U (Taub-bolt)
  double sup_u = 0;          // grid supremum of U alone
  double tail_inner = 0;     // leading coefficient of U at the inner point
  int tail_inner_order = 0;  // its power of (r - r_inner)
  double tail_infinity = 0;  // leading coefficient of U (+ sup V for Kerr) at infinity
  int tail_infinity_order = 0;  // its power of r
  bool tail_ok = false;
  double ibp_residual = 0;   // Kerr: |int V S^2 - int S'^2|
  double projected_u = 0;    // Kerr: max over the grid of int (U + V) S^2 sin(theta)
  bool certified = false;
};

struct NegativityReport {
  Background bg;
  NegativityConfig cfg;
  std::vector<NegativityRow> rows;
  double identity_residual = 0;  // Kerr three-term decomposition, relative to 1 + |U + V|
  double first_term_max = 0;     // Kerr: max of -16 M (r + a x) / (r - a x)^2 over the grid
  double sup = 0, margin = 0;    // over all rows; margin = -sup
  bool lambda_monotone = true;   // U decreases with Lambda at fixed (m, omega)
  bool certified = false;
};

// Kerr modes must carry Lambda from the angular spectrum; Taub-bolt rows cover U and Utilde
NegativityReport negativity_certificate(const Background& bg, const std::vector<ModeIndex>& modes,
                                        const NegativityConfig& cfg = {});

// integral of Delta |R'|^2 - U |R|^2 over [r_lo, r_hi] (r_hi may be infinite for callables)
using RadialSample = std::function<std::array<cplx, 2>(double)>;  // (R, dR/dr)
double energy_functional(const Background& bg, const ModeIndex& k, RadialKind kind, const RadialSample& R,
                         double r_lo, double r_hi, double tol = 1e-10);
// over the recorded range of the solution
double energy_functional(const RadialSolution& s, double tol = 1e-10);

struct ScanConfig {
  int lambda_count = 3;
  bool exclude_static = false;   // drop omega = 0 rows
  bool tilded = true;            // Taub-bolt: scan Utilde as well
  double threshold = 1e-6;       // relative Wronskian below this triggers a refinement
  RadialConfig radial;
  AngularSolverConfig angular;
  unsigned threads = 0;          // 0: hardware concurrency, capped by INSTANTON_LAB_THREADS
};

struct ModeScanRow {
  ModeIndex mode;
  int lambda_index = 0;
  RadialKind kind = RadialKind::U;
  std::string route;             // "irregular" (omega != 0) or "regular" (omega = 0, power-law branch)
  cplx wronskian;
  double abs_wronskian = 0, rel_wronskian = 0;
  double energy = 0;
  bool refined = false;
  std::string verdict;           // "no mode", "inconclusive"
  std::string note;
};

struct ModeScanReport {
  Background bg;
  double m_min, m_max;
  long n_min, n_max;
  ScanConfig cfg;
  std::vector<ModeScanRow> rows;
  bool lambda_monotone = true;
  std::string verdict;           // "no modes" or "inconclusive"
};

unsigned scan_threads(unsigned requested);

ModeScanReport mode_scan(const Background& bg, double m_min, double m_max, long n_min, long n_max,
                         const ScanConfig& cfg = {});

}  // namespace instanton

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "instanton/geometry.hpp"
#include "instanton/separation.hpp"

namespace instanton {

using cplx = std::complex<double>;

enum class SingularType { Regular, IrregularRank1 };

struct SingularPointData {
  std::string label;  // "r+", "r-", "2N", "N/2", "inf"
  double location;    // +inf for the point at infinity
  SingularType type;
  // exponents; at an irregular point these are the powers of the e^{-|rate| r} and e^{+|rate| r} normal solutions
  bool paper_available = false;
  std::array<cplx, 2> paper{};
  std::array<cplx, 2> oracle{};
};

std::vector<SingularPointData> singular_points(const Background& bg, const ModeIndex& k,
                                               RadialKind kind = RadialKind::U);

// rho = +-sqrt(-c / Delta'(r0)), c = lim (r - r0) U; returns {+rho, -rho}
std::array<cplx, 2> indicial_oracle(const Background& bg, const ModeIndex& k, double r0,
                                    RadialKind kind = RadialKind::U);

// closed form -3/2 +- i sqrt(7/2 + Lambda) for omega = 0
std::array<cplx, 2> infinity_exponents(const Background& bg, const ModeIndex& k);
// roots of p (p + 1) + lim U = 0 after r = 1/u, for omega = 0
std::array<cplx, 2> infinity_exponents_oracle(const Background& bg, const ModeIndex& k,
                                              RadialKind kind = RadialKind::U);

struct AsymptoticSolution {
  double rate;   // R ~ e^{rate r} r^{power}
  double power;
  int sign;      // -1 decaying, +1 growing
};

// closed-form normal solutions for omega != 0
AsymptoticSolution asymptotic_normal_solution(const Background& bg, const ModeIndex& k, int sign);
// rate and power from the expansion of the equation at infinity
AsymptoticSolution asymptotic_oracle(const Background& bg, const ModeIndex& k, int sign,
                                     RadialKind kind = RadialKind::U);

// R ~ e^{lambda r} r^p sum_k b_k r^{-k}; lambda = 0 for omega = 0 (convergent for large r)
struct AsymptoticSeries {
  double lambda = 0, p = 0;
  std::vector<double> b;
  RadialKind kind = RadialKind::U;
};

AsymptoticSeries asymptotic_series(const Background& bg, const ModeIndex& k, int sign, int terms,
                                   RadialKind kind = RadialKind::U);
// (R, Delta R') at r, scaled by exp(-lambda r0) r0^{-p} to keep the seed O(1) near r0
std::array<double, 2> evaluate(const AsymptoticSeries& a, const Background& bg, double r, double r0);

// Kerr: R = y / sqrt(Delta) turns the radial equation into y'' + q y = 0
double liouville_q(const Background& bg, const ModeIndex& k, double r);
struct LiouvilleTail {
  double q0, q1;  // q = q0 + q1 / r + O(r^-2)
};
LiouvilleTail liouville_tail(const Background& bg, const ModeIndex& k);

struct FrobeniusSeries {
  double r0 = 0, rho = 0, d = 0;  // d = Delta'(r0)
  double radius = 0;              // distance to the nearest other singularity
  std::vector<double> c;          // c[0] = 1
  int K = 0;
  RadialKind kind = RadialKind::U;
  // R, Delta R' and the radial operator applied to the truncated series at r0 + s
  std::array<double, 2> evaluate(double s) const;
};

FrobeniusSeries frobenius_series(const Background& bg, const ModeIndex& k, double r0, double rho, int K,
                                 RadialKind kind = RadialKind::U);
// (Delta R')' + U R of the truncated series
double frobenius_residual(const FrobeniusSeries& f, const Background& bg, const ModeIndex& k, double s);

struct RadialConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int frobenius_terms = 30;
  double frobenius_offset = 0.01;  // scaled by min(1, radius)
  int asymptotic_corrections = 2;  // omega != 0
  int power_series_terms = 24;     // omega = 0
};

struct RadialSolution {
  Background bg;
  ModeIndex mode;
  RadialKind kind = RadialKind::U;
  std::string seed;
  std::vector<double> r;
  std::vector<cplx> R, P;  // P = Delta dR/dr
  cplx dR(std::size_t i) const { return P[i] / bg.delta(r[i]); }
  // (R, P) at an arbitrary r inside the range, quintic Hermite in r
  std::array<cplx, 2> at(double r) const;
};

// integrates (Delta R')' + U R = 0 from r_start to r_end; log(r - r_inner) below 10 r_inner, 1/r above.
// With samples nonempty only those radii (plus the end points) are recorded.
RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, RadialKind kind, double r_start,
                                std::array<cplx, 2> y0, double r_end, const RadialConfig& cfg,
                                std::vector<double> samples = {}, std::string seed = "state");

RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, const FrobeniusSeries& f, double r_end,
                                const RadialConfig& cfg, std::vector<double> samples = {});
RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, const AsymptoticSeries& a, double r_max,
                                double r_end, const RadialConfig& cfg, std::vector<double> samples = {});

double decaying_seed_radius(const Background& bg, const ModeIndex& k);

// analytic branch at the inner point (larger exponent)
RadialSolution regular_solution(const Background& bg, const ModeIndex& k, RadialKind kind, double r_end,
                                const RadialConfig& cfg = {}, std::vector<double> samples = {});
// admissible branch at infinity, amplitude 1 at the seed radius
RadialSolution decaying_solution(const Background& bg, const ModeIndex& k, RadialKind kind, double r_end,
                                 const RadialConfig& cfg = {}, std::vector<double> samples = {});

// Delta (R1 R2' - R2 R1') at r_match
cplx connection_wronskian(const RadialSolution& a, const RadialSolution& b, double r_match);
// |Delta W| / (|(R1, P1)| |(R2, P2)|)
double relative_wronskian(const RadialSolution& a, const RadialSolution& b, double r_match);

struct AsymptoticFit {
  double rate, power;
};
// least squares of log|R| = c + rate r + power log r + b / r + b2 / r^2 over recorded samples in [r_lo, r_hi]
AsymptoticFit fit_asymptotic(const RadialSolution& s, double r_lo, double r_hi);

}  // namespace instanton

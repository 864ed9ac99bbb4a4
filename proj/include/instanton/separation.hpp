#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "instanton/geometry.hpp"
#include "instanton/hyper_dual.hpp"
#include "instanton/np.hpp"

namespace instanton {

struct ModeIndex {
  double m = 0, omega = 0, Lambda = 0;
};

// U belongs to R, Utilde to the tilded radial operator (explicit for Taub-bolt only)
enum class RadialKind { U, Utilde };

std::string to_string(RadialKind k);

enum class LatticeConvention { Invariance, Paper };

struct LatticeMode {
  double m, omega;
  long n;  // lattice integer: omega = m + n (Taub-bolt), -m Omega + kappa n or Omega + kappa n (Kerr)
};

// Kerr: integer m in [m_min, m_max]; Taub-bolt: half-integer m in [m_min, m_max]
std::vector<LatticeMode> mode_lattice(const Background& bg, double m_min, double m_max, long n_min, long n_max,
                                      LatticeConvention conv = LatticeConvention::Invariance);

bool on_lattice(const Background& bg, double m, double omega, LatticeConvention conv = LatticeConvention::Invariance);

inline void require_radial_kind(const Background& bg, RadialKind kind) {
  if (bg.is_kerr() && kind == RadialKind::Utilde)
    throw std::invalid_argument("Utilde is defined for Taub-bolt only; Kerr uses the reflection symmetry");
}

// T is double, HyperDual<double> or Laurent
template <class T>
T potential_u(const Background& bg, const ModeIndex& k, const T& r, RadialKind kind = RadialKind::U) {
  require_radial_kind(bg, kind);
  const T D = bg.delta(r);
  if (bg.is_kerr()) {
    const double a = bg.a;
    const T K = (r * r - a * a) * k.omega + a * k.m + 2.0 * (r - bg.M);
    return -(K * K) / D + 8.0 * k.omega * r - k.Lambda;
  }
  const double N = bg.N;
  const T S = r * r - N * N;
  if (kind == RadialKind::U) {
    const T w = k.omega + N * (4.0 * r * r - 11.0 * N * r + 3.0 * N * N) / (S * (r - N));
    return -4.0 * N * (r + N) / ((r - N) * (r - N)) - S * S / (4.0 * N * N * D) * (w * w) - k.Lambda;
  }
  const T w = k.omega - N * (4.0 * r * r - 19.0 * N * r + 13.0 * N * N) / (S * (r + N));
  return -36.0 * N * (r - N) / ((r + N) * (r + N)) - S * S / (4.0 * N * N * D) * (w * w) - k.Lambda;
}

// Delta(r) U(r): analytic at the roots of Delta
template <class T>
T delta_times_u(const Background& bg, const ModeIndex& k, const T& r, RadialKind kind = RadialKind::U) {
  require_radial_kind(bg, kind);
  if (bg.is_kerr()) {
    const double a = bg.a;
    const T K = (r * r - a * a) * k.omega + a * k.m + 2.0 * (r - bg.M);
    return -(K * K) + (8.0 * k.omega * r - k.Lambda) * bg.delta(r);
  }
  const double N = bg.N;
  const T S = r * r - N * N;
  const T D = bg.delta(r);
  if (kind == RadialKind::U) {
    const T w = k.omega + N * (4.0 * r * r - 11.0 * N * r + 3.0 * N * N) / (S * (r - N));
    return (-4.0 * N * (r + N) / ((r - N) * (r - N)) - k.Lambda) * D - S * S / (4.0 * N * N) * (w * w);
  }
  const T w = k.omega - N * (4.0 * r * r - 19.0 * N * r + 13.0 * N * N) / (S * (r + N));
  return (-36.0 * N * (r - N) / ((r + N) * (r + N)) - k.Lambda) * D - S * S / (4.0 * N * N) * (w * w);
}

// V(x) away from the poles (templated for expansions)
template <class T>
T potential_v_raw(const Background& bg, const ModeIndex& k, const T& x) {
  const T one_minus = 1.0 - x * x;
  if (bg.is_kerr()) {
    const double aw = bg.a * k.omega;
    const T n = aw * one_minus - k.m + 2.0 * x;
    return 8.0 * aw * x - n * n / one_minus + k.Lambda;
  }
  const T n = (k.omega + 2.0) * x + k.m;
  return -(n * n) / one_minus + k.Lambda;
}

inline double potential_u_checked(const Background& bg, const ModeIndex& k, double r, RadialKind kind = RadialKind::U) {
  if (bg.delta(r) == 0.0) throw DomainError("potential U evaluated at a root of Delta");
  return potential_u<double>(bg, k, r, kind);
}

// V on [-1, 1] including the finite limits at x = +-1
double potential_v(const Background& bg, const ModeIndex& k, double x);

// L (or Ltilde) applied to exp(i(m phi - omega t)) R(r) S(theta), with the exponential stripped
using TestFunction = std::function<HyperDual<double>(const HyperDual<double>&)>;

struct SeparationCheck {
  cplx L_phi;       // L Phi / exponential
  cplx separated;   // S R_op R + R S_op S
  double residual;
};

SeparationCheck separation_consistency(const Background& bg, const ModeIndex& k, const TestFunction& R,
                                       const TestFunction& S, const ChartPoint& p, bool tilded = false);

struct UVDecomposition {
  double residual;
  std::array<double, 3> terms;
  double u_plus_v;
};

UVDecomposition uv_decomposition_residual(const Background& bg, const ModeIndex& k, double r, double x);

// |T(Psi2^{2/3} Phi) - Psi2^{2/3} L Phi / (2 Sigma)| relative to the size of the terms,
// with T the Teukolsky operator built from the NP quantities
double teukolsky_operator_residual(const Background& bg, const ModeIndex& k, const TestFunction& R,
                                   const TestFunction& S, const ChartPoint& p, bool tilded = false);

}  // namespace instanton

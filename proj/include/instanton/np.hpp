#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "instanton/geometry.hpp"

namespace instanton {

using cplx = std::complex<double>;

enum class Spin : int { alpha, beta, gamma, epsilon, kappa, lambda, mu, nu, pi, rho, sigma, tau };

inline constexpr std::array<const char*, 12> kSpinNames = {"alpha", "beta",  "gamma", "epsilon", "kappa", "lambda",
                                                          "mu",    "nu",    "pi",    "rho",     "sigma", "tau"};

template <class T>
struct SpinSet {
  std::array<T, 12> plain{}, tilded{};
  T& operator()(Spin s) { return plain[int(s)]; }
  const T& operator()(Spin s) const { return plain[int(s)]; }
  T& tilde(Spin s) { return tilded[int(s)]; }
  const T& tilde(Spin s) const { return tilded[int(s)]; }
};

template <class T>
struct WeylSet {
  std::array<T, 5> psi{}, psit{};
};

using SpinCoefficientSet = SpinSet<cplx>;
using WeylScalarSet = WeylSet<cplx>;

template <class T> SpinSet<T> tilde_map(const SpinSet<T>& s) { return {s.tilded, s.plain}; }
template <class T> WeylSet<T> tilde_map(const WeylSet<T>& w) { return {w.psit, w.psi}; }

// Closed forms for the Carter tetrad (Kerr) and the Taub-bolt tetrad; Z complex.
template <class Z>
SpinSet<Z> spin_coeffs_closed_form(const Background& bg, const Z& r, const Z& theta) {
  using std::sin;
  using std::cos;
  using std::sqrt;
  const Z I = imag_unit<Z>();
  const Z s = sin(theta), c = cos(theta);
  const Z S = bg.sigma(r, c), D = bg.delta(r);
  SpinSet<Z> out;
  for (auto& z : out.plain) z = Z(0.0);
  for (auto& z : out.tilded) z = Z(0.0);
  auto put = [](std::array<Z, 12>& arr, Spin x, Spin y, const Z& v) { arr[int(x)] = arr[int(y)] = v; };
  const Z q = sqrt(2.0 * S);
  if (bg.is_kerr()) {
    const double a = bg.a, M = bg.M;
    for (int sign : {1, -1}) {
      auto& arr = sign > 0 ? out.plain : out.tilded;
      const Z w = r - double(sign) * a * c;  // r -/+ a cos(theta)
      put(arr, Spin::alpha, Spin::beta, double(sign) * (r * c - double(sign) * a) / (w * 2.0 * q * s));
      put(arr, Spin::gamma, Spin::epsilon, I * (-D / w + r - M) / (2.0 * sqrt(2.0 * D * S)));
      put(arr, Spin::mu, Spin::rho, -I * sqrt(D / (2.0 * S)) / w);
      put(arr, Spin::pi, Spin::tau, -a * s / (w * q));
    }
  } else {
    const double N = bg.N;
    const Z g = I * c / (s * 2.0 * q);
    put(out.plain, Spin::gamma, Spin::epsilon, g);
    put(out.tilded, Spin::gamma, Spin::epsilon, g);
    put(out.plain, Spin::alpha, Spin::beta, N * (r + N) * (r + N) / (8.0 * S * sqrt(2.0 * D * S)));
    put(out.plain, Spin::pi, Spin::tau, -(r + N) * sqrt(D / (2.0 * S)) / S);
    put(out.tilded, Spin::alpha, Spin::beta, -9.0 * N * (r - N) / (8.0 * (r + N) * sqrt(2.0 * D * S)));
    put(out.tilded, Spin::pi, Spin::tau, sqrt(D / (2.0 * S)) / (r + N));
  }
  return out;
}

template <class Z>
WeylSet<Z> weyl_closed_form(const Background& bg, const Z& r, const Z& theta) {
  using std::cos;
  WeylSet<Z> w;
  for (auto& z : w.psi) z = Z(0.0);
  for (auto& z : w.psit) z = Z(0.0);
  if (bg.is_kerr()) {
    const Z c = cos(theta);
    const Z u = r - bg.a * c, v = r + bg.a * c;
    w.psi[2] = bg.M / (u * u * u);
    w.psit[2] = bg.M / (v * v * v);
  } else {
    const double N = bg.N;
    const Z u = r - N, v = r + N;
    w.psi[2] = N / (4.0 * u * u * u);
    w.psit[2] = 9.0 * N / (4.0 * v * v * v);
  }
  return w;
}

SpinCoefficientSet spin_coeffs_closed(const Background& bg, const ChartPoint& p);

struct SpinExtraction {
  SpinCoefficientSet coeffs;
  double fit_residual;
};

// least-squares extraction from the six covariant-derivative displays
SpinExtraction spin_coeffs_extract(const Background& bg, const ChartPoint& p);
SpinCoefficientSet spin_coeffs_numeric(const Background& bg, const ChartPoint& p);

// max deviation from the conjugation relations
double conjugation_defect(const SpinCoefficientSet& s);

// all-lower curvature tensor in the convention where W = R
using Curvature = std::array<std::array<Eigen::Matrix4d, 4>, 4>;
Curvature curvature_eval(const Background& bg, const ChartPoint& p);
WeylScalarSet weyl_scalars_numeric(const Background& bg, const ChartPoint& p);
WeylScalarSet weyl_scalars_closed(const Background& bg, const ChartPoint& p);

// a scalar with its (r, theta) gradient; t and phi never enter background quantities
struct Jet {
  cplx v{}, dr{}, dth{};
};

// NP data at a point: jets of coefficients, Weyl scalars and operator components.
struct NPFrame {
  SpinSet<Jet> spin;
  WeylSet<Jet> weyl;
  std::array<Eigen::Vector4cd, 4> ops;  // D, Delta, delta, deltat
  std::array<std::array<Jet, 4>, 4> op_jets;

  cplx apply(int op, const Jet& f) const { return ops[op](1) * f.dr + ops[op](2) * f.dth; }
};

enum Op : int { kD = 0, kDelta = 1, kdelta = 2, kdeltat = 3 };

NPFrame np_frame(const Background& bg, const ChartPoint& p);
NPFrame tilde_map(const NPFrame& f);

struct NPResidualReport {
  std::vector<std::pair<std::string, double>> entries;
  double max() const;
  double get(const std::string& name) const;
};

NPResidualReport np_residuals(const Background& bg, const ChartPoint& p);

struct A1Check {
  double residual, tilded_residual;
};

A1Check a1_identity_check(const Background& bg, const ChartPoint& p);

}  // namespace instanton

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "instanton/errors.hpp"
#include "instanton/hyper_dual.hpp"

namespace instanton {

enum class BackgroundKind { Kerr, TaubBolt };

std::string to_string(BackgroundKind k);

// Riemannian Kerr (M, a) or Taub-bolt (N, M = 5N/4).
// r_plus/r_minus are the roots of Delta; for Taub-bolt they are 2N and N/2.
struct Background {
  BackgroundKind kind = BackgroundKind::Kerr;
  double M = 1, a = 0, N = 0;
  double r_plus = 2, r_minus = 0;
  double kappa = 0, Omega = 0;

  static Background kerr(double M, double a);
  static Background taub_bolt(double N);

  bool is_kerr() const { return kind == BackgroundKind::Kerr; }
  double inner() const { return r_plus; }
  // length scale of the asymptotic rate: e^{-|w| r / scale}
  double rate_scale() const { return is_kerr() ? 1.0 : 2.0 * N; }

  // factored so that Delta(r_plus + s) has an exactly vanishing constant term
  template <class T> T delta(const T& r) const { return (r - r_plus) * (r - r_minus); }
  template <class T> T delta_prime(const T& r) const { return 2.0 * r - (r_plus + r_minus); }
  template <class T> T sigma(const T& r, const T& cos_theta) const {
    return is_kerr() ? r * r - a * a * cos_theta * cos_theta : r * r - N * N;
  }
};

struct ChartPoint {
  double t = 0, r = 3, theta = 1, phi = 0;
};

inline constexpr double kDomainMargin = 1e-9;

void validate_point(const Background& bg, const ChartPoint& p);

template <class T> using Matrix4 = Eigen::Matrix<T, 4, 4>;
template <class T> using Vector4 = Eigen::Matrix<T, 4, 1>;

// coordinate order (t, r, theta, phi)
template <class T>
Matrix4<T> metric(const Background& bg, const T& r, const T& theta) {
  using std::sin;
  using std::cos;
  Matrix4<T> g = Matrix4<T>::Constant(T(0.0));
  const T s = sin(theta), c = cos(theta);
  const T S = bg.sigma(r, c), D = bg.delta(r);
  g(1, 1) = S / D;
  g(2, 2) = S;
  if (bg.is_kerr()) {
    const double a = bg.a;
    const T s2 = s * s;
    const T w = r * r - a * a;
    g(0, 0) = (D + a * a * s2) / S;
    g(0, 3) = g(3, 0) = a * s2 * (w - D) / S;
    g(3, 3) = s2 * (D * a * a * s2 + w * w) / S;
  } else {
    const T A = 4.0 * bg.N * bg.N * D / S;
    g(0, 0) = A;
    g(0, 3) = g(3, 0) = A * c;
    g(3, 3) = A * c * c + S * s * s;
  }
  return g;
}

template <class Z> Z imag_unit() { return Z(std::complex<double>(0.0, 1.0)); }

// (l, m) contravariant; Z is a complex scalar type
template <class Z>
std::pair<Vector4<Z>, Vector4<Z>> tetrad(const Background& bg, const Z& r, const Z& theta) {
  using std::sin;
  using std::cos;
  using std::sqrt;
  const Z I = imag_unit<Z>();
  const Z s = sin(theta), c = cos(theta);
  const Z S = bg.sigma(r, c), D = bg.delta(r);
  Vector4<Z> l = Vector4<Z>::Constant(Z(0.0)), m = Vector4<Z>::Constant(Z(0.0));
  if (bg.is_kerr()) {
    const double a = bg.a;
    const Z k = 1.0 / sqrt(2.0 * D * S);
    l(0) = (r * r - a * a) * k;
    l(3) = -a * k;
    l(1) = I * sqrt(D / (2.0 * S));
    const Z q = 1.0 / sqrt(2.0 * S);
    m(2) = q;
    m(3) = -I * q / s;
    m(0) = -I * q * a * s;
  } else {
    const Z q = 1.0 / sqrt(2.0 * S);
    l(0) = q * c / s;
    l(3) = -q / s;
    l(2) = I * q;
    m(1) = sqrt(D / (2.0 * S));
    m(0) = I * sqrt(S / (2.0 * D)) / (2.0 * bg.N);
  }
  return {l, m};
}

struct MetricComponents {
  Eigen::Matrix4d g;
  double Sigma, Delta;
};

MetricComponents metric_eval(const Background& bg, const ChartPoint& p);

struct Tetrad {
  Eigen::Vector4cd l, m;
  Eigen::Vector4cd lbar() const { return l.conjugate(); }
  Eigen::Vector4cd mbar() const { return m.conjugate(); }
};

Tetrad tetrad_eval(const Background& bg, const ChartPoint& p);

// Gram matrix of (l, lbar, m, mbar)
Eigen::Matrix4cd tetrad_gram(const Eigen::Matrix4d& g, const Tetrad& e);
Eigen::Matrix4cd tetrad_gram_expected();

// metric with first and second coordinate derivatives (only r, theta enter)
struct MetricJet {
  Eigen::Matrix4d g, ginv;
  std::array<Eigen::Matrix4d, 4> dg;
  std::array<std::array<Eigen::Matrix4d, 4>, 4> ddg;
};

MetricJet metric_jet(const Background& bg, const ChartPoint& p);

// Gamma[lambda](mu, nu)
using Christoffel = std::array<Eigen::Matrix4d, 4>;

Christoffel christoffel(const MetricJet& jet);
Christoffel christoffel_eval(const Background& bg, const ChartPoint& p);

// partial_k Gamma^l_{mn}, indexed [k][l](m, n)
std::array<Christoffel, 4> christoffel_derivative(const MetricJet& jet);

struct IdentificationLattice {
  // generating translations (dt, dphi) of the (t, phi) torus
  std::array<double, 2> first, second;
};

IdentificationLattice identification_lattice(const Background& bg);

enum class ChartProbe { Axis, Bolt, Transition };

struct PowerFit {
  std::string component;
  double exponent;
  double coefficient;
  double expected_exponent;
};

struct ChartProbeReport {
  ChartProbe which;
  std::vector<PowerFit> fits;
  double transition_mismatch = 0;  // max relative component mismatch
  bool ok = false;
};

ChartProbeReport chart_regularity_probe(const Background& bg, ChartProbe which);

// deterministic random valid points with r in (r_plus + 0.05, r_plus + 8)
std::vector<ChartPoint> sample_points(const Background& bg, std::size_t n, std::uint64_t seed);

}  // namespace instanton

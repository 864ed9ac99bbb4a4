#include "instanton/geometry.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace instanton {

std::string to_string(BackgroundKind k) { return k == BackgroundKind::Kerr ? "kerr" : "taubbolt"; }

Background Background::kerr(double M, double a) {
  if (!(M > 0) || !std::isfinite(a)) throw std::invalid_argument("Kerr requires M > 0 and finite a");
  Background bg;
  bg.kind = BackgroundKind::Kerr;
  bg.M = M;
  bg.a = a;
  const double root = std::sqrt(M * M + a * a);
  bg.r_plus = M + root;
  bg.r_minus = M - root;
  if (!(bg.r_plus > std::abs(a))) throw std::invalid_argument("Kerr requires r_plus > |a|");
  bg.kappa = root / (2 * M * bg.r_plus);
  bg.Omega = a / (2 * M * bg.r_plus);
  return bg;
}

Background Background::taub_bolt(double N) {
  if (!(N > 0)) throw std::invalid_argument("Taub-bolt requires N > 0");
  Background bg;
  bg.kind = BackgroundKind::TaubBolt;
  bg.N = N;
  bg.M = 1.25 * N;
  bg.r_plus = 2 * N;
  bg.r_minus = 0.5 * N;
  return bg;
}

void validate_point(const Background& bg, const ChartPoint& p) {
  if (!std::isfinite(p.r) || !std::isfinite(p.theta)) throw DomainError("non-finite chart point");
  if (!(p.r > bg.r_plus + kDomainMargin)) throw DomainError("r must exceed the outer root of Delta");
  if (!(p.theta > kDomainMargin && p.theta < M_PI - kDomainMargin))
    throw DomainError("theta must lie strictly inside (0, pi)");
}

MetricComponents metric_eval(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  return {metric<double>(bg, p.r, p.theta), bg.sigma(p.r, std::cos(p.theta)), bg.delta(p.r)};
}

Tetrad tetrad_eval(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  using C = std::complex<double>;
  auto [l, m] = tetrad<C>(bg, C(p.r), C(p.theta));
  return {l, m};
}

Eigen::Matrix4cd tetrad_gram(const Eigen::Matrix4d& g, const Tetrad& e) {
  Eigen::Matrix<std::complex<double>, 4, 4> E;
  E << e.l, e.lbar(), e.m, e.mbar();
  return E.transpose() * g.cast<std::complex<double>>() * E;
}

Eigen::Matrix4cd tetrad_gram_expected() {
  Eigen::Matrix4cd G = Eigen::Matrix4cd::Zero();
  G(0, 1) = G(1, 0) = G(2, 3) = G(3, 2) = 1.0;
  return G;
}

MetricJet metric_jet(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  using HD = HyperDual<double>;
  MetricJet jet;
  for (auto& d : jet.dg) d.setZero();
  for (auto& row : jet.ddg)
    for (auto& d : row) d.setZero();
  const auto rr = metric<HD>(bg, HD(p.r, 1, 1, 0), HD(p.theta));
  const auto tt = metric<HD>(bg, HD(p.r), HD(p.theta, 1, 1, 0));
  const auto rt = metric<HD>(bg, HD(p.r, 1, 0, 0), HD(p.theta, 0, 1, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      jet.g(i, j) = rr(i, j).value;
      jet.dg[1](i, j) = rr(i, j).d1;
      jet.dg[2](i, j) = tt(i, j).d1;
      jet.ddg[1][1](i, j) = rr(i, j).cross;
      jet.ddg[2][2](i, j) = tt(i, j).cross;
      jet.ddg[1][2](i, j) = jet.ddg[2][1](i, j) = rt(i, j).cross;
    }
  jet.ginv = jet.g.inverse();
  return jet;
}

Christoffel christoffel(const MetricJet& jet) {
  Christoffel G;
  for (int l = 0; l < 4; ++l) {
    G[l].setZero();
    for (int m = 0; m < 4; ++m)
      for (int n = m; n < 4; ++n) {
        double s = 0;
        for (int k = 0; k < 4; ++k)
          s += jet.ginv(l, k) * (jet.dg[m](k, n) + jet.dg[n](k, m) - jet.dg[k](m, n));
        G[l](m, n) = G[l](n, m) = 0.5 * s;
      }
  }
  return G;
}

Christoffel christoffel_eval(const Background& bg, const ChartPoint& p) { return christoffel(metric_jet(bg, p)); }

std::array<Christoffel, 4> christoffel_derivative(const MetricJet& jet) {
  // d(g^{-1}) = -g^{-1} (dg) g^{-1}
  std::array<Christoffel, 4> dG;
  for (int q = 0; q < 4; ++q) {
    const Eigen::Matrix4d dginv = -jet.ginv * jet.dg[q] * jet.ginv;
    for (int l = 0; l < 4; ++l) {
      dG[q][l].setZero();
      for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n) {
          double s = 0;
          for (int k = 0; k < 4; ++k) {
            const double bracket = jet.dg[m](k, n) + jet.dg[n](k, m) - jet.dg[k](m, n);
            const double dbracket = jet.ddg[q][m](k, n) + jet.ddg[q][n](k, m) - jet.ddg[q][k](m, n);
            s += dginv(l, k) * bracket + jet.ginv(l, k) * dbracket;
          }
          dG[q][l](m, n) = dG[q][l](n, m) = 0.5 * s;
        }
    }
  }
  return dG;
}

IdentificationLattice identification_lattice(const Background& bg) {
  if (bg.is_kerr()) return {{2 * M_PI / bg.kappa, -2 * M_PI * bg.Omega / bg.kappa}, {0.0, 2 * M_PI}};
  return {{4 * M_PI, 0.0}, {2 * M_PI, 2 * M_PI}};
}

namespace {

// least squares log y = log c + p log x
PowerFit fit_power(const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
                   double expected) {
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0) || !(x[i] > 0)) throw std::runtime_error("fit failure: non-positive sample in " + name);
    A(i, 0) = 1;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return {name, c(1), std::exp(c(0)), expected};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return v;
}

// pull back g through a Jacobian J = d(t, r, theta, phi) / d(chart)
Eigen::Matrix4d pullback(const Eigen::Matrix4d& g, const Eigen::Matrix4d& J) { return J.transpose() * g * J; }

// Taub-bolt chart (tt, rt, th, phi): t = 2 tt - phi, r = N(5 + 3 cosh rt)/4, theta = 2 atan(th / 2)
Eigen::Matrix4d bolt_chart_metric(const Background& bg, double rt, double th) {
  const double r = 0.25 * bg.N * (5 + 3 * std::cosh(rt));
  const double theta = 2 * std::atan(0.5 * th);
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 0) = 2;
  J(0, 3) = -1;
  J(1, 1) = 0.75 * bg.N * std::sinh(rt);
  J(2, 2) = 1.0 / (1 + 0.25 * th * th);
  J(3, 3) = 1;
  return pullback(metric<double>(bg, r, theta), J);
}

// hat chart (th_, rt, thh, phi): t = 2 th_ + phi, theta = 2 acot(thh / 2)
Eigen::Matrix4d bolt_hat_chart_metric(const Background& bg, double rt, double thh) {
  const double r = 0.25 * bg.N * (5 + 3 * std::cosh(rt));
  const double theta = 2 * std::atan(2.0 / thh);
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 0) = 2;
  J(0, 3) = 1;
  J(1, 1) = 0.75 * bg.N * std::sinh(rt);
  J(2, 2) = -4.0 / (thh * thh + 4);
  J(3, 3) = 1;
  return pullback(metric<double>(bg, r, theta), J);
}

}  // namespace

ChartProbeReport chart_regularity_probe(const Background& bg, ChartProbe which) {
  ChartProbeReport rep;
  rep.which = which;
  const auto xs = log_grid(1e-4, 1e-2, 41);
  std::vector<double> y;
  if (bg.is_kerr()) {
    if (which == ChartProbe::Transition) throw std::invalid_argument("transition probe applies to Taub-bolt only");
    const double root = std::sqrt(bg.M * bg.M + bg.a * bg.a);
    if (which == ChartProbe::Bolt) {
      const double theta = M_PI / 3;
      std::vector<double> yt, yr;
      for (double rt : xs) {
        const double r = bg.M + root * std::cosh(rt);
        const Eigen::Matrix4d g = metric<double>(bg, r, theta);
        const double S = bg.sigma(r, std::cos(theta));
        Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
        J(0, 0) = 1 / bg.kappa;
        J(3, 0) = -bg.Omega / bg.kappa;
        J(1, 1) = root * std::sinh(rt);
        J(2, 2) = J(3, 3) = 1;
        const Eigen::Matrix4d gc = pullback(g, J);
        yt.push_back(gc(0, 0) / S);
        yr.push_back(gc(1, 1) / S);
      }
      rep.fits.push_back(fit_power("g_tt/Sigma vs r", xs, yt, 2));
      rep.fits.push_back(fit_power("g_rr/Sigma vs r", xs, yr, 0));
    } else {
      const double r = bg.r_plus + 1;
      std::vector<double> s;
      for (double th : xs) {
        s.push_back(std::sin(th));
        y.push_back(metric<double>(bg, r, th)(3, 3) / bg.sigma(r, std::cos(th)));
      }
      rep.fits.push_back(fit_power("g_phiphi/Sigma vs sin(theta)", s, y, 2));
    }
  } else {
    const double rt0 = 1.0;
    if (which == ChartProbe::Bolt) {
      std::vector<double> yt;
      for (double rt : xs) {
        const double r = 0.25 * bg.N * (5 + 3 * std::cosh(rt));
        yt.push_back(bolt_chart_metric(bg, rt, 1.0)(0, 0) / bg.sigma(r, 0.0));
      }
      rep.fits.push_back(fit_power("g_tt/Sigma vs r", xs, yt, 2));
    } else if (which == ChartProbe::Axis) {
      const double r = 0.25 * bg.N * (5 + 3 * std::cosh(rt0));
      std::vector<double> y1, y2;
      for (double th : xs) {
        y1.push_back(bolt_chart_metric(bg, rt0, th)(3, 3) / bg.sigma(r, 0.0));
        y2.push_back(bolt_hat_chart_metric(bg, rt0, th)(3, 3) / bg.sigma(r, 0.0));
      }
      rep.fits.push_back(fit_power("g_phiphi/Sigma vs theta (north chart)", xs, y1, 2));
      rep.fits.push_back(fit_power("g_phiphi/Sigma vs theta (south chart)", xs, y2, 2));
    } else {
      double worst = 0;
      for (double rt : {0.3, 1.0, 2.5})
        for (double th : {0.2, 0.7, 1.5, 3.0, 8.0}) {
          const Eigen::Matrix4d g1 = bolt_chart_metric(bg, rt, th);
          Eigen::Matrix4d K = Eigen::Matrix4d::Identity();
          K(0, 3) = -1;
          K(2, 2) = -4.0 / (th * th);
          const Eigen::Matrix4d g2 = pullback(bolt_hat_chart_metric(bg, rt, 4.0 / th), K);
          worst = std::max(worst, (g1 - g2).cwiseAbs().maxCoeff() / g1.cwiseAbs().maxCoeff());
        }
      rep.transition_mismatch = worst;
      rep.ok = worst < 1e-10;
      return rep;
    }
  }
  rep.ok = true;
  for (const auto& f : rep.fits)
    rep.ok = rep.ok && std::abs(f.exponent - f.expected_exponent) < 1e-3 && std::abs(f.coefficient - 1) < 1e-2;
  return rep;
}

std::vector<ChartPoint> sample_points(const Background& bg, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(bg.r_plus + 0.05, bg.r_plus + 8.0), ut(0.05, M_PI - 0.05),
      ua(0.0, 2 * M_PI);
  std::vector<ChartPoint> pts(n);
  for (auto& p : pts) {
    p.r = ur(rng);
    p.theta = ut(rng);
    p.t = ua(rng);
    p.phi = ua(rng);
  }
  return pts;
}

}  // namespace instanton

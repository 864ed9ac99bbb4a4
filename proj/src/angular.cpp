#include "instanton/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "instanton/errors.hpp"
#include "instanton/quadrature.hpp"
#include "instanton/separation.hpp"

namespace instanton {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Kerr: S ~ (1-x)^{|2-m|/2} (1+x)^{|2+m|/2}; Taub-bolt with s = omega + 2:
// (1-x)^{|s+m|/2} (1+x)^{|m-s|/2}
struct Reduction {
  double alpha, beta, c0;
  double aw;  // a omega, Kerr only
  bool kerr;
  double m;
  double g(double x) const {
    if (!kerr) return 0;
    return 8 * aw * x - aw * aw * (1 - x * x) - 2 * aw * (2 * x - m);
  }
};

Reduction reduction(const AngularProblem& p) {
  if (p.bg.is_kerr())
    return {std::abs(2 - p.m) / 2, std::abs(2 + p.m) / 2, 4.0, p.bg.a * p.omega, true, p.m};
  const double s = p.omega + 2;
  return {std::abs(s + p.m) / 2, std::abs(p.m - s) / 2, s * s, 0.0, false, p.m};
}

VectorXd lobatto(int n) {
  VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x[j] = std::cos(M_PI * j / n);
  return x;
}

MatrixXd cheb_diff(const VectorXd& x) {
  const int n = int(x.size()) - 1;
  MatrixXd D(n + 1, n + 1);
  auto c = [&](int i) { return ((i == 0 || i == n) ? 2.0 : 1.0) * ((i % 2) ? -1.0 : 1.0); };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) D(i, j) = c(i) / c(j) / (x[i] - x[j]);
  // negative-sum trick for the diagonal
  for (int i = 0; i <= n; ++i) {
    double s = 0;
    for (int j = 0; j <= n; ++j)
      if (j != i) s += D(i, j);
    D(i, i) = -s;
  }
  return D;
}

double barycentric(const VectorXd& x, const VectorXd& f, double t) {
  const int n = int(x.size()) - 1;
  double num = 0, den = 0;
  for (int j = 0; j <= n; ++j) {
    const double d = t - x[j];
    if (d == 0) return f[j];
    double w = (j % 2) ? -1.0 : 1.0;
    if (j == 0 || j == n) w *= 0.5;
    num += w * f[j] / d;
    den += w / d;
  }
  return num / den;
}

double reduced_prefactor(double alpha, double beta, double x) {
  return std::pow(1 - x, alpha) * std::pow(1 + x, beta);
}

struct Raw {
  std::vector<double> lambda;
  std::vector<VectorXd> u;
  double residual;
};

Raw solve_order(const AngularProblem& p, const Reduction& red, int k, int order) {
  const VectorXd x = lobatto(order);
  const MatrixXd D = cheb_diff(x);
  const MatrixXd D2 = D * D;
  const int n = order + 1;
  const double ab = red.alpha + red.beta;
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    const double b = 2 * (red.beta * (1 - xi) - red.alpha * (1 + xi)) - 2 * xi;
    const double c = red.g(xi) + red.c0 - ab * (ab + 1);
    A.row(i) = -((1 - xi * xi) * D2.row(i) + b * D.row(i));
    A(i, i) -= c;
  }
  Eigen::EigenSolver<MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw ConvergenceError("angular eigensolver failed", NAN);
  const auto ev = es.eigenvalues();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (std::abs(ev[i].imag()) < 1e-8 * (1 + std::abs(ev[i].real()))) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return ev[i].real() < ev[j].real(); });
  if (int(idx.size()) < k) throw ConvergenceError("too few real angular eigenvalues", double(idx.size()));

  Raw out;
  out.residual = 0;
  // residual of the reduced equation on a finer Lobatto grid
  const VectorXd xf = lobatto(2 * order + 1);
  for (int q = 0; q < k; ++q) {
    const double lam = ev[idx[q]].real();
    Eigen::VectorXcd vc = es.eigenvectors().col(idx[q]);
    Eigen::Index imax;
    vc.cwiseAbs().maxCoeff(&imax);
    vc *= std::conj(vc[imax]) / std::abs(vc[imax]);
    VectorXd u = vc.real();
    const VectorXd du = D * u, d2u = D2 * u;
    double res = 0, scale = 0;
    for (int i = 0; i < xf.size(); ++i) {
      const double t = xf[i];
      const double b = 2 * (red.beta * (1 - t) - red.alpha * (1 + t)) - 2 * t;
      const double c = red.g(t) + red.c0 - ab * (ab + 1);
      const double ut = barycentric(x, u, t);
      const double r = -((1 - t * t) * barycentric(x, d2u, t) + b * barycentric(x, du, t) + c * ut) - lam * ut;
      res = std::max(res, std::abs(r));
      scale = std::max(scale, std::abs(ut));
    }
    out.residual = std::max(out.residual, res / ((1 + std::abs(lam)) * scale));
    out.lambda.push_back(lam);
    out.u.push_back(u);
  }
  (void)p;
  return out;
}

}  // namespace

std::pair<double, double> angular_endpoint_exponents(const AngularProblem& p) {
  const auto r = reduction(p);
  return {r.alpha, r.beta};
}

std::vector<AngularEigenpair> angular_spectrum(const AngularProblem& p, int k, const AngularSolverConfig& cfg) {
  if (k < 1) throw std::invalid_argument("eigenvalue count must be at least 1");
  if (cfg.spectral_order < 4 * k || cfg.grid_size < 4 * k)
    throw std::invalid_argument("grid size and spectral order must be at least 4 times the eigenvalue count");
  const Reduction red = reduction(p);
  int order = cfg.spectral_order;
  Raw raw = solve_order(p, red, k, order);
  while (raw.residual > cfg.tolerance && 2 * order <= cfg.max_order) {
    order *= 2;
    raw = solve_order(p, red, k, order);
  }
  if (raw.residual > cfg.tolerance) throw ConvergenceError("angular residual above tolerance", raw.residual);

  const VectorXd x = lobatto(order);
  const MatrixXd D = cheb_diff(x);
  // S^2 is a polynomial of degree 2 order + 2 alpha + 2 beta (the exponents are half-integers)
  const auto gl = gauss_legendre(order + int(std::ceil(red.alpha + red.beta)) + 2);
  std::vector<AngularEigenpair> out;
  for (int q = 0; q < k; ++q) {
    AngularEigenpair e;
    e.Lambda = raw.lambda[q];
    e.problem = p;
    e.alpha = red.alpha;
    e.beta = red.beta;
    e.nodes = x;
    e.residual = raw.residual;
    VectorXd u = raw.u[q];
    double norm = 0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = gl.nodes[i];
      const double s = reduced_prefactor(red.alpha, red.beta, t) * barycentric(x, u, t);
      norm += gl.weights[i] * s * s;
    }
    u /= std::sqrt(norm);
    e.u = u;
    e.du = D * u;
    for (int i = 0; i < cfg.grid_size; ++i) {
      const double th = std::min(M_PI, M_PI * i / (cfg.grid_size - 1));
      e.theta.push_back(th);
      e.S.push_back(angular_eigenfunction(e, th));
    }
    out.push_back(std::move(e));
  }
  return out;
}

double angular_eigenfunction(const AngularEigenpair& e, double theta) {
  if (!(theta >= 0 && theta <= M_PI)) throw DomainError("theta outside [0, pi]");
  const double x = std::cos(theta);
  return reduced_prefactor(e.alpha, e.beta, x) * barycentric(e.nodes, e.u, x);
}

double angular_eigenfunction_derivative(const AngularEigenpair& e, double theta) {
  if (!(theta > 0 && theta < M_PI)) throw DomainError("theta outside (0, pi)");
  const double x = std::cos(theta);
  const double P = reduced_prefactor(e.alpha, e.beta, x);
  const double dP = P * (-e.alpha / (1 - x) + e.beta / (1 + x));
  const double dSdx = dP * barycentric(e.nodes, e.u, x) + P * barycentric(e.nodes, e.du, x);
  return -std::sin(theta) * dSdx;
}

double angular_inner_product(const AngularEigenpair& a, const AngularEigenpair& b) {
  const int n = int(std::max(a.nodes.size(), b.nodes.size())) + int(std::ceil(a.alpha + a.beta + b.alpha + b.beta)) + 2;
  const auto gl = gauss_legendre(n);
  double s = 0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double th = std::acos(gl.nodes[i]);
    s += gl.weights[i] * angular_eigenfunction(a, th) * angular_eigenfunction(b, th);
  }
  return s;
}

namespace {

// number of eigenvalues of the symmetric tridiagonal (d, e) below lam
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double lam) {
  int count = 0;
  double q = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i ? e[i - 1] * e[i - 1] : 0.0;
    q = d[i] - lam - (i ? off / q : 0.0);
    if (q == 0) q = 1e-300;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> fd_oracle_spectrum(const AngularProblem& p, int k, int N) {
  if (N < 200) throw std::invalid_argument("finite-difference oracle needs N >= 200");
  const double h = 2.0 / N;
  const ModeIndex mode{p.m, p.omega, 0.0};
  std::vector<double> d(N), e(N - 1);
  for (int i = 0; i < N; ++i) {
    const double x = -1 + (i + 0.5) * h;
    const double xl = -1 + i * h, xr = xl + h;
    const double pl = 1 - xl * xl, pr = 1 - xr * xr;
    d[i] = (pl + pr) / (h * h) - potential_v_raw<double>(p.bg, mode, x);
    if (i + 1 < N) e[i] = -pr / (h * h);
  }
  double lo = d[0], hi = d[0];
  for (int i = 0; i < N; ++i) {
    const double rad = (i ? std::abs(e[i - 1]) : 0.0) + (i + 1 < N ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - rad);
    hi = std::max(hi, d[i] + rad);
  }
  std::vector<double> out;
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      (sturm_count(d, e, mid) > j ? b : a) = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

RichardsonResult fd_richardson(const AngularProblem& p, int k, int N, const std::vector<double>& reference) {
  RichardsonResult r;
  r.coarse = fd_oracle_spectrum(p, k, N);
  r.fine = fd_oracle_spectrum(p, k, 2 * N);
  const auto ref = reference.empty() ? fd_oracle_spectrum(p, k, 4 * N) : reference;
  for (int j = 0; j < k; ++j) {
    r.extrapolated.push_back((4 * r.fine[j] - r.coarse[j]) / 3);
    if (reference.empty()) {
      // three-level estimate, independent of the exact value
      r.observed_order.push_back(std::log2(std::abs((r.coarse[j] - r.fine[j]) / (r.fine[j] - ref[j]))));
    } else {
      r.observed_order.push_back(std::log2(std::abs((r.coarse[j] - ref[j]) / (r.fine[j] - ref[j]))));
    }
  }
  return r;
}

}  // namespace instanton

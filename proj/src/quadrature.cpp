#include "instanton/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>

#include "instanton/errors.hpp"

namespace instanton {
namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7], g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol, std::size_t max_intervals) {
  std::priority_queue<Piece> heap;
  Piece first = gk15(f, a, b);
  double total = first.value, err = first.error;
  heap.push(first);
  while (err > 0.1 * tol * (1.0 + std::abs(total))) {
    if (heap.size() >= max_intervals) throw ConvergenceError("quadrature did not converge", err);
    const Piece p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b) throw ConvergenceError("quadrature interval underflow", err);
    const Piece l = gk15(f, p.a, m), r = gk15(f, m, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
  }
  if (!std::isfinite(total)) throw DomainError("non-finite integrand");
  return total;
}

}  // namespace

double quad(const std::function<double(double)>& f, double a, double b, double tol, std::size_t max_intervals) {
  if (!std::isinf(b)) return adaptive(f, a, b, tol, max_intervals);
  double sum = adaptive(f, a, a + 1.0, tol, max_intervals);
  auto g = [&](double u) {
    const double e = std::exp(u);
    return f(a + e) * e;
  };
  int quiet = 0;
  for (int k = 0; k < 700 && quiet < 2; ++k) {
    const double block = adaptive(g, k, k + 1.0, tol, max_intervals);
    sum += block;
    quiet = std::abs(block) <= 1e-3 * tol * (1.0 + std::abs(sum)) ? quiet + 1 : 0;
  }
  if (quiet < 2) throw ConvergenceError("improper integral tail did not decay", 0.0);
  return sum;
}

QuadratureRule gauss_legendre(int n) {
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    q.nodes[i] = x;
    q.nodes[n - 1 - i] = -x;
    q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return q;
}

QuadratureRule clenshaw_curtis(int n) {
  QuadratureRule q;
  q.nodes.resize(n + 1);
  q.weights.assign(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    q.nodes[j] = std::cos(M_PI * j / n);
    double w = 0;
    for (int k = 0; k <= n / 2; ++k) {
      const double bk = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
      w += bk / (1.0 - 4.0 * k * k) * std::cos(2.0 * k * j * M_PI / n);
    }
    const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
    q.weights[j] = cj * w / n;
  }
  return q;
}

}  // namespace instanton

#include "instanton/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "instanton/errors.hpp"
#include "instanton/hyper_dual.hpp"
#include "instanton/laurent.hpp"
#include "instanton/ode.hpp"

namespace instanton {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return (x > 0) - (x < 0); }

cplx csqrt(double x) { return x >= 0 ? cplx(std::sqrt(x), 0) : cplx(0, std::sqrt(-x)); }

bool same_point(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// U as a series in u = 1/r
Laurent u_at_infinity(const Background& bg, const ModeIndex& k, RadialKind kind, int terms) {
  return potential_u<Laurent>(bg, k, Laurent::inverse_variable(terms), kind);
}

double u_value(const Background& bg, const ModeIndex& k, RadialKind kind, double r) {
  return delta_times_u<double>(bg, k, r, kind) / bg.delta(r);
}

}  // namespace

std::array<cplx, 2> indicial_oracle(const Background& bg, const ModeIndex& k, double r0, RadialKind kind) {
  double root;
  if (same_point(r0, bg.r_plus)) root = bg.r_plus;
  else if (same_point(r0, bg.r_minus)) root = bg.r_minus;
  else throw DomainError("r0 is not a regular singular point");
  const double d = bg.delta_prime(root);
  // Delta U is analytic at the root; its value there is c Delta'(r0)
  const double w0 = delta_times_u<Laurent>(bg, k, Laurent::shifted(root, 3), kind)[0];
  const cplx rho = csqrt(-w0 / (d * d));
  return {rho, -rho};
}

std::array<cplx, 2> infinity_exponents(const Background& bg, const ModeIndex& k) {
  (void)bg;
  if (k.omega != 0) throw std::invalid_argument("infinity exponents are defined for omega = 0; use the normal solutions");
  const cplx s = std::sqrt(cplx(3.5 + k.Lambda, 0));
  return {cplx(-1.5, 0) + cplx(0, 1) * s, cplx(-1.5, 0) - cplx(0, 1) * s};
}

std::array<cplx, 2> infinity_exponents_oracle(const Background& bg, const ModeIndex& k, RadialKind kind) {
  if (k.omega != 0) throw std::invalid_argument("infinity is irregular for omega != 0");
  const Laurent U = u_at_infinity(bg, k, kind, 6);
  const cplx s = std::sqrt(cplx(0.25 - U[0], 0));
  return {-0.5 + s, -0.5 - s};
}

AsymptoticSolution asymptotic_normal_solution(const Background& bg, const ModeIndex& k, int sign) {
  if (k.omega == 0) throw std::invalid_argument("omega = 0: infinity is regular, use infinity_exponents");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const double rate = sign * std::abs(k.omega) / bg.rate_scale();
  const double x = bg.is_kerr() ? 2 * (bg.M * k.omega - 1) : 5 * k.omega / 4 - 2;
  return {rate, -1 + sign * sgn(k.omega) * x, sign};
}

AsymptoticSeries asymptotic_series(const Background& bg, const ModeIndex& k, int sign, int terms, RadialKind kind) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (terms < 1) throw std::invalid_argument("at least one term");
  AsymptoticSeries a;
  a.kind = kind;
  const int T = terms + 6;
  const Laurent rL = Laurent::inverse_variable(T);
  const double d1 = -(bg.r_plus + bg.r_minus), d0 = bg.r_plus * bg.r_minus;
  a.b.assign(terms, 0.0);
  a.b[0] = 1;
  if (k.omega != 0) {
    const double lam = sign * std::abs(k.omega) / bg.rate_scale();
    const Laurent Q = lam * lam * bg.delta(rL) + lam * bg.delta_prime(rL) + potential_u<Laurent>(bg, k, rL, kind);
    auto q = [&](int j) { return Q[-j]; };  // q(-1) multiplies r, q(j) multiplies r^-j
    const double p = -Q[-1] / (2 * lam);
    a.lambda = lam;
    a.p = p;
    for (int j = 1; j < terms; ++j) {
      double s = 0;
      for (int kk = 0; kk < j; ++kk) {
        const double e = p - kk;
        double c;
        if (kk == j - 1) c = e * (e - 1) + e * (2 * lam * d1 + 2) + q(0);
        else if (kk == j - 2) c = d1 * e * (e - 1) + e * (2 * lam * d0 + d1) + q(1);
        else if (kk == j - 3) c = d0 * e * (e - 1) + q(2);
        else c = q(j - kk - 1);
        s += a.b[kk] * c;
      }
      a.b[j] = s / (2 * lam * j);
    }
    return a;
  }
  const Laurent Q = potential_u<Laurent>(bg, k, rL, kind);
  const double u0 = Q[0];
  if (0.25 - u0 < 0) throw DomainError("complex exponents at infinity");
  const double p = -0.5 + sign * std::sqrt(0.25 - u0);
  a.p = p;
  auto F = [&](double s) { return s * (s + 1) + u0; };
  for (int j = 1; j < terms; ++j) {
    double s = 0;
    for (int kk = 0; kk < j; ++kk) {
      const double e = p - kk;
      double g;
      if (kk == j - 1) g = d1 * e * e + Q[1];
      else if (kk == j - 2) g = d0 * e * (e - 1) + Q[2];
      else g = Q[j - kk];
      s += a.b[kk] * g;
    }
    a.b[j] = -s / F(p - j);
  }
  return a;
}

AsymptoticSolution asymptotic_oracle(const Background& bg, const ModeIndex& k, int sign, RadialKind kind) {
  if (k.omega == 0) throw std::invalid_argument("omega = 0: infinity is regular, use infinity_exponents_oracle");
  const auto a = asymptotic_series(bg, k, sign, 1, kind);
  return {a.lambda, a.p, sign};
}

std::array<double, 2> evaluate(const AsymptoticSeries& a, const Background& bg, double r, double r0) {
  const double pre = std::exp(a.lambda * (r - r0)) * std::pow(r / r0, a.p);
  double R = 0, dR = 0, rk = 1;
  for (std::size_t j = 0; j < a.b.size(); ++j) {
    R += a.b[j] * rk;
    dR += a.b[j] * rk * (a.lambda + (a.p - double(j)) / r);
    rk /= r;
  }
  return {pre * R, pre * dR * bg.delta(r)};
}

std::vector<SingularPointData> singular_points(const Background& bg, const ModeIndex& k, RadialKind kind) {
  require_radial_kind(bg, kind);
  std::vector<SingularPointData> out;
  const bool paper = kind == RadialKind::U;
  for (int which = 0; which < 2; ++which) {
    SingularPointData s;
    s.location = which ? bg.r_minus : bg.r_plus;
    s.label = bg.is_kerr() ? (which ? "r-" : "r+") : (which ? "N/2" : "2N");
    s.type = SingularType::Regular;
    s.oracle = indicial_oracle(bg, k, s.location, kind);
    s.paper_available = paper;
    double e;
    if (bg.is_kerr()) {
      const double w = bg.r_plus - bg.r_minus;
      e = which ? -1 + (2 * bg.M * bg.r_minus + bg.a * k.m) / w : 1 + (2 * bg.M * bg.r_plus + bg.a * k.m) / w;
    } else {
      e = which ? k.omega / 4 - 1 : k.omega - 1;
    }
    s.paper = {cplx(e, 0), cplx(-e, 0)};
    out.push_back(s);
  }
  SingularPointData inf;
  inf.label = "inf";
  inf.location = kInf;
  if (k.omega == 0) {
    inf.type = SingularType::Regular;
    inf.paper_available = true;
    inf.paper = infinity_exponents(bg, k);
    inf.oracle = infinity_exponents_oracle(bg, k, kind);
  } else {
    inf.type = SingularType::IrregularRank1;
    inf.paper_available = paper;
    const auto dec = asymptotic_normal_solution(bg, k, -1), gro = asymptotic_normal_solution(bg, k, 1);
    inf.paper = {cplx(dec.power, 0), cplx(gro.power, 0)};
    inf.oracle = {cplx(asymptotic_oracle(bg, k, -1, kind).power, 0), cplx(asymptotic_oracle(bg, k, 1, kind).power, 0)};
  }
  out.push_back(inf);
  return out;
}

double liouville_q(const Background& bg, const ModeIndex& k, double r) {
  if (!bg.is_kerr()) throw std::invalid_argument("Liouville form is provided for Kerr");
  if (!(r > bg.r_plus)) throw DomainError("r must exceed r+");
  const double D = bg.delta(r);
  const double t = (bg.r_plus - bg.r_minus) / (2 * D);
  return potential_u<double>(bg, k, r) / D + t * t;
}

LiouvilleTail liouville_tail(const Background& bg, const ModeIndex& k) {
  if (!bg.is_kerr()) throw std::invalid_argument("Liouville form is provided for Kerr");
  const Laurent r = Laurent::inverse_variable(8);
  const Laurent D = bg.delta(r);
  const Laurent t = (bg.r_plus - bg.r_minus) / (2.0 * D);
  const Laurent q = potential_u<Laurent>(bg, k, r) / D + t * t;
  return {q[0], q[1]};
}

std::array<double, 2> FrobeniusSeries::evaluate(double s) const {
  double R = 0, P = 0, sn = std::pow(s, rho);
  for (int n = 0; n <= K; ++n) {
    R += c[n] * sn;
    P += c[n] * (n + rho) * sn;
    sn *= s;
  }
  return {R, (s + d) * P};
}

FrobeniusSeries frobenius_series(const Background& bg, const ModeIndex& k, double r0, double rho, int K,
                                 RadialKind kind) {
  if (K < 1) throw std::invalid_argument("truncation order must be positive");
  const auto roots = indicial_oracle(bg, k, r0, kind);
  if (std::abs(roots[0].imag()) > 0) throw DomainError("complex indicial exponents");
  const double rho0 = roots[0].real();
  if (std::abs(rho - rho0) > 1e-9 && std::abs(rho + rho0) > 1e-9)
    throw std::invalid_argument("rho is not an indicial root");
  const bool smaller = rho0 > 1e-9 && std::abs(rho + rho0) <= 1e-9;
  if (smaller && std::abs(2 * rho0 - std::round(2 * rho0)) < 1e-9)
    throw DomainError("logarithmic case: roots differ by an integer, use the larger root");

  FrobeniusSeries f;
  f.r0 = same_point(r0, bg.r_plus) ? bg.r_plus : bg.r_minus;
  const double other = f.r0 == bg.r_plus ? bg.r_minus : bg.r_plus;
  f.rho = smaller ? -rho0 : rho0;
  f.d = f.r0 - other;
  f.K = K;
  f.kind = kind;
  f.radius = std::abs(f.d);
  if (!bg.is_kerr()) {
    // U has poles at r = +-N
    f.radius = std::min({f.radius, std::abs(f.r0 - bg.N), std::abs(f.r0 + bg.N)});
  }
  const Laurent W = delta_times_u<Laurent>(bg, k, Laurent::shifted(f.r0, K + 2), kind);
  const double d = f.d, p = f.rho;
  auto A = [&](int j) { return j == 0 ? d * d : j == 1 ? 2 * d : j == 2 ? 1.0 : 0.0; };
  auto B = [&](int j) { return j == 0 ? d * d : j == 1 ? 3 * d : j == 2 ? 2.0 : 0.0; };
  f.c.assign(K + 1, 0.0);
  f.c[0] = 1;
  for (int n = 1; n <= K; ++n) {
    double s = 0;
    for (int kk = 0; kk < n; ++kk) {
      const double e = kk + p;
      s += f.c[kk] * (e * (e - 1) * A(n - kk) + e * B(n - kk) + W[n - kk]);
    }
    f.c[n] = -s / (d * d * n * (n + 2 * p));
  }
  return f;
}

double frobenius_residual(const FrobeniusSeries& f, const Background& bg, const ModeIndex& k, double s) {
  double R = 0, P0 = 0, P1 = 0, sn = std::pow(s, f.rho);
  for (int n = 0; n <= f.K; ++n) {
    const double e = n + f.rho;
    R += f.c[n] * sn;
    P0 += f.c[n] * e * sn;
    P1 += f.c[n] * e * e * sn;
    sn *= s;
  }
  // (Delta R')' with Delta R' = (s + d) sum c_n e s^e
  const double dP = P0 + (s + f.d) * P1 / s;
  return dP + u_value(bg, k, f.kind, f.r0 + s) * R;
}

namespace {

using State = Eigen::Vector2cd;

struct Segment {
  bool log_var;
  double ra, rb;
};

}  // namespace

RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, RadialKind kind, double r_start,
                                std::array<cplx, 2> y0, double r_end, const RadialConfig& cfg,
                                std::vector<double> samples, std::string seed) {
  require_radial_kind(bg, kind);
  const double rin = bg.inner(), rother = bg.r_minus;
  if (!(r_start > rin) || !(r_end > rin)) throw DomainError("radial range must lie beyond the inner singular point");
  const double dir = r_end >= r_start ? 1 : -1;
  const double rsw = 10 * rin;

  RadialSolution sol;
  sol.bg = bg;
  sol.mode = k;
  sol.kind = kind;
  sol.seed = std::move(seed);
  const bool keep_steps = samples.empty();
  if (!keep_steps) {
    samples.push_back(r_start);
    samples.push_back(r_end);
    std::sort(samples.begin(), samples.end(), [&](double a, double b) { return dir * a < dir * b; });
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    for (double s : samples)
      if (dir * (s - r_start) < 0 || dir * (s - r_end) > 0) throw std::invalid_argument("sample outside the range");
  }

  std::vector<Segment> segs;
  const double lo = std::min(r_start, r_end), hi = std::max(r_start, r_end);
  if (hi <= rsw) segs.push_back({true, r_start, r_end});
  else if (lo >= rsw) segs.push_back({false, r_start, r_end});
  else if (dir > 0) segs = {{true, r_start, rsw}, {false, rsw, r_end}};
  else segs = {{false, r_start, rsw}, {true, rsw, r_end}};

  IntegratorConfig ic;
  ic.rel_tol = cfg.rel_tol;
  ic.abs_tol = cfg.abs_tol;
  State y(y0[0], y0[1]);
  for (std::size_t si = 0; si < segs.size(); ++si) {
    const Segment& sg = segs[si];
    auto to_u = [&](double r) { return sg.log_var ? std::log(r - rin) : 1 / r; };
    auto to_r = [&](double u) { return sg.log_var ? rin + std::exp(u) : 1 / u; };
    auto rhs = [&](double u, const State& z) -> State {
      const double r = to_r(u);
      if (sg.log_var) {
        const double w = r - rother;
        return State(z[1] / w, -delta_times_u<double>(bg, k, r, kind) * z[0] / w);
      }
      const double D = bg.delta(r);
      const double U = delta_times_u<double>(bg, k, r, kind) / D;
      return State(-r * r * z[1] / D, r * r * U * z[0]);
    };
    std::vector<double> seg_r, seg_u;
    if (!keep_steps) {
      for (double s : samples) {
        const bool first = si == 0;
        const bool in = first ? dir * (s - sg.ra) >= 0 && dir * (s - sg.rb) <= 0
                              : dir * (s - sg.ra) > 0 && dir * (s - sg.rb) <= 0;
        if (in) {
          seg_r.push_back(s);
          seg_u.push_back(to_u(s));
        }
      }
      // the segment end must be recorded to carry the state across
      if (seg_r.empty() || seg_r.back() != sg.rb) {
        seg_r.push_back(sg.rb);
        seg_u.push_back(to_u(sg.rb));
      }
    }
    Trajectory<State> tr;
    try {
      tr = ode_solve(rhs, to_u(sg.ra), to_u(sg.rb), y, ic, seg_u);
    } catch (const IntegrationError& e) {
      throw IntegrationError("radial integration failed", to_r(e.location));
    }
    const bool end_is_sample = keep_steps || std::find(samples.begin(), samples.end(), sg.rb) != samples.end();
    for (std::size_t i = 0; i < tr.x.size(); ++i) {
      if (keep_steps && si > 0 && i == 0) continue;
      const double r = keep_steps ? (i + 1 == tr.x.size() ? sg.rb : (i == 0 ? sg.ra : to_r(tr.x[i]))) : seg_r[i];
      if (!keep_steps && i + 1 == tr.x.size() && !end_is_sample) break;
      sol.r.push_back(r);
      sol.R.push_back(tr.y[i][0]);
      sol.P.push_back(tr.y[i][1]);
    }
    y = tr.y.back();
  }
  return sol;
}

RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, const FrobeniusSeries& f, double r_end,
                                const RadialConfig& cfg, std::vector<double> samples) {
  if (f.r0 != bg.inner()) throw std::invalid_argument("integration starts at the inner singular point");
  const double s0 = cfg.frobenius_offset * std::min(1.0, f.radius);
  const auto y = f.evaluate(s0);
  return radial_integrate(bg, k, f.kind, f.r0 + s0, {cplx(y[0]), cplx(y[1])}, r_end, cfg, std::move(samples),
                          "frobenius");
}

RadialSolution radial_integrate(const Background& bg, const ModeIndex& k, const AsymptoticSeries& a, double r_max,
                                double r_end, const RadialConfig& cfg, std::vector<double> samples) {
  auto y = evaluate(a, bg, r_max, r_max);
  const double n = y[0];
  return radial_integrate(bg, k, a.kind, r_max, {cplx(y[0] / n), cplx(y[1] / n)}, r_end, cfg, std::move(samples),
                          "asymptotic");
}

double decaying_seed_radius(const Background& bg, const ModeIndex& k) {
  const double base = 50 * bg.inner();
  if (k.omega == 0) return base;
  return std::max(30 * bg.rate_scale() / std::abs(k.omega), base);
}

RadialSolution regular_solution(const Background& bg, const ModeIndex& k, RadialKind kind, double r_end,
                                const RadialConfig& cfg, std::vector<double> samples) {
  const auto roots = indicial_oracle(bg, k, bg.inner(), kind);
  const auto f = frobenius_series(bg, k, bg.inner(), std::abs(roots[0].real()), cfg.frobenius_terms, kind);
  return radial_integrate(bg, k, f, r_end, cfg, std::move(samples));
}

RadialSolution decaying_solution(const Background& bg, const ModeIndex& k, RadialKind kind, double r_end,
                                 const RadialConfig& cfg, std::vector<double> samples) {
  const int terms = k.omega != 0 ? 1 + cfg.asymptotic_corrections : cfg.power_series_terms;
  const auto a = asymptotic_series(bg, k, -1, terms, kind);
  return radial_integrate(bg, k, a, decaying_seed_radius(bg, k), r_end, cfg, std::move(samples));
}

std::array<cplx, 2> RadialSolution::at(double x) const {
  if (r.empty()) throw std::invalid_argument("empty radial solution");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == x) return {R[i], P[i]};
  std::size_t j = r.size();
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if ((r[i] - x) * (r[i + 1] - x) <= 0) {
      j = i;
      break;
    }
  if (j == r.size()) throw DomainError("r outside the recorded range");
  // quintic Hermite with derivatives from the equation: R' = P / Delta, P' = -U R
  auto jet = [&](std::size_t i) {
    const double ri = r[i];
    const auto U = derive2([&](const HyperDual<double>& t) { return potential_u(bg, mode, t, kind); }, ri);
    const double D = bg.delta(ri), Dp = bg.delta_prime(ri);
    const cplx R0 = R[i], P0 = P[i];
    const cplx R1 = P0 / D, P1 = -U.f * R0;
    const cplx R2 = (P1 - Dp * R1) / D, P2 = -U.df * R0 - U.f * R1;
    return std::array<std::array<cplx, 3>, 2>{{{R0, R1, R2}, {P0, P1, P2}}};
  };
  const auto a = jet(j), b = jet(j + 1);
  const double h = r[j + 1] - r[j], t = (x - r[j]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5, h10 = t - 6 * t3 + 8 * t4 - 3 * t5,
               h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5), h01 = 10 * t3 - 15 * t4 + 6 * t5,
               h11 = -4 * t3 + 7 * t4 - 3 * t5, h21 = 0.5 * (t3 - 2 * t4 + t5);
  std::array<cplx, 2> out;
  for (int c = 0; c < 2; ++c)
    out[c] = h00 * a[c][0] + h * h10 * a[c][1] + h * h * h20 * a[c][2] + h01 * b[c][0] + h * h11 * b[c][1] +
             h * h * h21 * b[c][2];
  return out;
}

namespace {
void require_same_mode(const RadialSolution& a, const RadialSolution& b) {
  const bool same = a.mode.m == b.mode.m && a.mode.omega == b.mode.omega && a.mode.Lambda == b.mode.Lambda &&
                    a.kind == b.kind && a.bg.kind == b.bg.kind && a.bg.M == b.bg.M && a.bg.a == b.bg.a &&
                    a.bg.N == b.bg.N;
  if (!same) throw std::invalid_argument("Wronskian of solutions for different modes");
}
}  // namespace

cplx connection_wronskian(const RadialSolution& a, const RadialSolution& b, double r_match) {
  require_same_mode(a, b);
  const auto ya = a.at(r_match), yb = b.at(r_match);
  return ya[0] * yb[1] - yb[0] * ya[1];
}

double relative_wronskian(const RadialSolution& a, const RadialSolution& b, double r_match) {
  const auto ya = a.at(r_match), yb = b.at(r_match);
  const double na = std::hypot(std::abs(ya[0]), std::abs(ya[1])), nb = std::hypot(std::abs(yb[0]), std::abs(yb[1]));
  return std::abs(connection_wronskian(a, b, r_match)) / (na * nb);
}

AsymptoticFit fit_asymptotic(const RadialSolution& s, double r_lo, double r_hi) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < s.r.size(); ++i)
    if (s.r[i] >= r_lo && s.r[i] <= r_hi && std::abs(s.R[i]) > 0) idx.push_back(int(i));
  if (idx.size() < 8) throw std::invalid_argument("too few samples for the asymptotic fit");
  Eigen::MatrixXd A(idx.size(), 5);
  Eigen::VectorXd y(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double r = s.r[idx[i]];
    A.row(i) << 1, r, std::log(r), 1 / r, 1 / (r * r);
    y[i] = std::log(std::abs(s.R[idx[i]]));
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return {c[1], c[2]};
}

}  // namespace instanton

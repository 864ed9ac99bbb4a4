#include "instanton/np.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace instanton {
namespace {

using HDC = HyperDual<cplx>;

struct Param {
  int unknown;
  bool conjugated;
  double factor;
};

// the 24 coefficients expressed through 12 independent unknowns
Param param(Spin s, bool tilded) {
  static const std::array<Param, 12> table = {{{0, false, 1},
                                               {0, true, 1},
                                               {1, false, 1},
                                               {1, true, -1},
                                               {2, false, 1},
                                               {3, false, 1},
                                               {4, false, 1},
                                               {2, true, 1},
                                               {5, false, 1},
                                               {4, true, -1},
                                               {3, true, -1},
                                               {5, true, 1}}};
  Param p = table[int(s)];
  if (tilded) p.unknown += 6;
  return p;
}

Jet jet_of(const HDC& z) { return {z.value, z.d1, z.d2}; }

}  // namespace

SpinCoefficientSet spin_coeffs_closed(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  return spin_coeffs_closed_form<cplx>(bg, cplx(p.r), cplx(p.theta));
}

WeylScalarSet weyl_scalars_closed(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  return weyl_closed_form<cplx>(bg, cplx(p.r), cplx(p.theta));
}

SpinExtraction spin_coeffs_extract(const Background& bg, const ChartPoint& p) {
  const MetricJet jet = metric_jet(bg, p);
  const Christoffel G = christoffel(jet);

  // lowered tetrad covectors with (r, theta) derivatives
  const HDC r(cplx(p.r), 1.0, 0.0, 0.0), th(cplx(p.theta), 0.0, 1.0, 0.0);
  const auto g = metric<HDC>(bg, r, th);
  const auto [l, m] = tetrad<HDC>(bg, r, th);
  std::array<Vector4<HDC>, 4> up = {l, Vector4<HDC>(l.unaryExpr([](const HDC& z) { return conj(z); })), m,
                                    Vector4<HDC>(m.unaryExpr([](const HDC& z) { return conj(z); }))};
  std::array<Eigen::Vector4cd, 4> vec;  // l, lbar, m, mbar (contravariant values)
  std::array<Eigen::Matrix4cd, 4> nabla;  // nabla[v](b, a) = nabla_b v_a
  for (int k = 0; k < 4; ++k) {
    const Vector4<HDC> low = g * up[k];
    Eigen::Vector4cd lowv;
    Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a) {
      vec[k](a) = up[k](a).value;
      lowv(a) = low(a).value;
      d(1, a) = low(a).d1;
      d(2, a) = low(a).d2;
    }
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) d(b, a) -= G[c](b, a) * lowv(c);
    nabla[k] = d;
  }
  enum { L = 0, LB = 1, MM = 2, MB = 3 };
  // u^a w^b nabla_b v_a
  auto C = [&](int u, int w, int v) -> cplx { return vec[w].transpose() * nabla[v] * vec[u]; };

  struct Row {
    Spin s;
    bool tilded;
    double sign;
    cplx value;
  };
  std::vector<Row> rows;
  // contracting with lbar, l, mbar, m picks the l, lbar, m, mbar coefficients
  const int pick[4] = {LB, L, MB, MM};
  auto add = [&](std::array<std::pair<Spin, double>, 4> coeffs, bool tilded, auto&& display) {
    for (int j = 0; j < 4; ++j) rows.push_back({coeffs[j].first, tilded, coeffs[j].second, display(pick[j])});
  };
  add({{{Spin::gamma, 1}, {Spin::epsilon, 1}, {Spin::alpha, -1}, {Spin::beta, 1}}}, false,
      [&](int w) { return 0.5 * (C(LB, w, L) - C(MM, w, MB)); });
  add({{{Spin::nu, -1}, {Spin::pi, -1}, {Spin::lambda, 1}, {Spin::mu, -1}}}, false, [&](int w) { return C(LB, w, MB); });
  add({{{Spin::tau, 1}, {Spin::kappa, 1}, {Spin::rho, -1}, {Spin::sigma, 1}}}, false, [&](int w) { return C(MM, w, L); });
  add({{{Spin::gamma, 1}, {Spin::epsilon, 1}, {Spin::beta, -1}, {Spin::alpha, 1}}}, true,
      [&](int w) { return 0.5 * (C(LB, w, L) - C(MB, w, MM)); });
  add({{{Spin::nu, 1}, {Spin::pi, 1}, {Spin::mu, -1}, {Spin::lambda, 1}}}, true, [&](int w) { return C(LB, w, MM); });
  add({{{Spin::tau, -1}, {Spin::kappa, -1}, {Spin::sigma, 1}, {Spin::rho, -1}}}, true, [&](int w) { return C(MB, w, L); });

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(48, 24);
  Eigen::VectorXd b(48);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Param pr = param(rows[i].s, rows[i].tilded);
    const double f = rows[i].sign * pr.factor;
    A(2 * i, 2 * pr.unknown) = f;
    A(2 * i + 1, 2 * pr.unknown + 1) = pr.conjugated ? -f : f;
    b(2 * i) = rows[i].value.real();
    b(2 * i + 1) = rows[i].value.imag();
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  const double resid = (A * x - b).norm() / (1.0 + b.norm());

  SpinExtraction out;
  out.fit_residual = resid;
  for (bool tilded : {false, true})
    for (int s = 0; s < 12; ++s) {
      const Param pr = param(Spin(s), tilded);
      cplx z(x(2 * pr.unknown), x(2 * pr.unknown + 1));
      if (pr.conjugated) z = std::conj(z);
      (tilded ? out.coeffs.tilded : out.coeffs.plain)[s] = pr.factor * z;
    }
  return out;
}

SpinCoefficientSet spin_coeffs_numeric(const Background& bg, const ChartPoint& p) {
  const SpinExtraction e = spin_coeffs_extract(bg, p);
  if (e.fit_residual > 1e-6) throw std::runtime_error("spin coefficient extraction rejected: fit residual too large");
  return e.coeffs;
}

double conjugation_defect(const SpinCoefficientSet& s) {
  double worst = 0;
  for (const auto* arr : {&s.plain, &s.tilded}) {
    auto v = [&](Spin x) { return (*arr)[int(x)]; };
    worst = std::max({worst, std::abs(std::conj(v(Spin::alpha)) - v(Spin::beta)),
                      std::abs(std::conj(v(Spin::gamma)) + v(Spin::epsilon)),
                      std::abs(std::conj(v(Spin::kappa)) - v(Spin::nu)),
                      std::abs(std::conj(v(Spin::lambda)) + v(Spin::sigma)),
                      std::abs(std::conj(v(Spin::mu)) + v(Spin::rho)), std::abs(std::conj(v(Spin::pi)) - v(Spin::tau))});
  }
  return worst;
}

Curvature curvature_eval(const Background& bg, const ChartPoint& p) {
  const MetricJet jet = metric_jet(bg, p);
  const Christoffel G = christoffel(jet);
  const auto dG = christoffel_derivative(jet);
  // standard R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s} + G^r_{m k} G^k_{n s} - G^r_{n k} G^k_{m s}
  Curvature up;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      up[r][s].setZero();
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          double v = dG[m][r](n, s) - dG[n][r](m, s);
          for (int k = 0; k < 4; ++k) v += G[r](m, k) * G[k](n, s) - G[r](n, k) * G[k](m, s);
          up[r][s](m, n) = v;
        }
    }
  // lower and flip the overall sign (Psi_2 = +M / (r - a cos)^3 for the Carter tetrad)
  Curvature low;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      low[r][s].setZero();
      for (int k = 0; k < 4; ++k) low[r][s] -= jet.g(r, k) * up[k][s];
    }
  return low;
}

WeylScalarSet weyl_scalars_numeric(const Background& bg, const ChartPoint& p) {
  const Curvature W = curvature_eval(bg, p);
  const Tetrad e = tetrad_eval(bg, p);
  const Eigen::Vector4cd l = e.l, lb = e.lbar(), m = e.m, mb = e.mbar();
  auto w = [&](const Eigen::Vector4cd& A, const Eigen::Vector4cd& B, const Eigen::Vector4cd& C,
               const Eigen::Vector4cd& D) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const cplx ab = A(i) * B(j);
        if (ab == 0.0) continue;
        s += ab * cplx(C.transpose() * W[i][j].cast<cplx>() * D);
      }
    return s;
  };
  WeylScalarSet out;
  out.psi = {-w(l, m, l, m), -w(l, lb, l, m), w(l, m, lb, mb), w(l, lb, lb, mb), -w(lb, mb, lb, mb)};
  out.psit = {-w(l, mb, l, mb), -w(l, lb, l, mb), w(l, mb, lb, m), w(l, lb, lb, m), -w(lb, m, lb, m)};
  return out;
}

NPFrame np_frame(const Background& bg, const ChartPoint& p) {
  validate_point(bg, p);
  const HDC r(cplx(p.r), 1.0, 0.0, 0.0), th(cplx(p.theta), 0.0, 1.0, 0.0);
  const auto s = spin_coeffs_closed_form<HDC>(bg, r, th);
  const auto w = weyl_closed_form<HDC>(bg, r, th);
  const auto [l, m] = tetrad<HDC>(bg, r, th);
  NPFrame f;
  for (int k = 0; k < 12; ++k) {
    f.spin.plain[k] = jet_of(s.plain[k]);
    f.spin.tilded[k] = jet_of(s.tilded[k]);
  }
  for (int k = 0; k < 5; ++k) {
    f.weyl.psi[k] = jet_of(w.psi[k]);
    f.weyl.psit[k] = jet_of(w.psit[k]);
  }
  // D = l, Delta = lbar, delta = m, deltat = -mbar
  for (int mu = 0; mu < 4; ++mu) {
    const std::array<HDC, 4> comps = {l(mu), conj(l(mu)), m(mu), -conj(m(mu))};
    for (int k = 0; k < 4; ++k) {
      f.ops[k](mu) = comps[k].value;
      f.op_jets[k][mu] = jet_of(comps[k]);
    }
  }
  return f;
}

NPFrame tilde_map(const NPFrame& f) {
  NPFrame t = f;
  t.spin = tilde_map(f.spin);
  t.weyl = tilde_map(f.weyl);
  std::swap(t.ops[kdelta], t.ops[kdeltat]);
  std::swap(t.op_jets[kdelta], t.op_jets[kdeltat]);
  return t;
}

namespace {

using Entries = std::vector<std::pair<std::string, double>>;

void np_equations(const NPFrame& f, const std::string& suffix, Entries& out) {
  auto v = [&](Spin s) { return f.spin(s).v; };
  auto t = [&](Spin s) { return f.spin.tilde(s).v; };
  auto P = [&](int k) { return f.weyl.psi[k].v; };
  auto Dop = [&](int op, Spin s) { return f.apply(op, f.spin(s)); };
  auto DPsi = [&](int op, int k) { return f.apply(op, f.weyl.psi[k]); };
  using S = Spin;
  const cplx al = v(S::alpha), be = v(S::beta), ga = v(S::gamma), ep = v(S::epsilon), ka = v(S::kappa),
             la = v(S::lambda), mu = v(S::mu), nu = v(S::nu), pi = v(S::pi), rh = v(S::rho), si = v(S::sigma),
             ta = v(S::tau);
  const cplx alt = t(S::alpha), bet = t(S::beta), gat = t(S::gamma), ept = t(S::epsilon), kat = t(S::kappa),
             lat = t(S::lambda), mut = t(S::mu), nut = t(S::nu), pit = t(S::pi), rht = t(S::rho), sit = t(S::sigma),
             tat = t(S::tau);

  // commutators applied to the coordinate functions
  auto comm = [&](const std::string& name, int A, int B, std::array<cplx, 4> c) {
    double worst = 0;
    for (int x = 0; x < 4; ++x) {
      const cplx lhs = f.apply(A, f.op_jets[B][x]) - f.apply(B, f.op_jets[A][x]);
      cplx rhs = 0;
      for (int k = 0; k < 4; ++k) rhs += c[k] * f.ops[k](x);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back({name + suffix, worst});
  };
  comm("commutator_D_Delta", kD, kDelta, {-(ga + gat), -(ep + ept), pi + tat, pit + ta});
  comm("commutator_D_delta", kD, kdelta, {-(alt + be - pit), -ka, ep - ept + rht, si});
  comm("commutator_Delta_delta", kDelta, kdelta, {nut, alt + be - ta, ga - gat - mu, -lat});
  comm("commutator_delta_deltat", kdelta, kdeltat, {mu - mut, rh - rht, -al + bet, alt - be});

  auto eq = [&](const std::string& name, cplx lhs, cplx rhs) { out.push_back({name + suffix, std::abs(lhs - rhs)}); };
  eq("vacuum_D_alpha", Dop(kD, S::alpha) - Dop(kdeltat, S::epsilon),
     -bet * ep - ga * kat - ka * la + pi * (ep + rh) + al * (-2.0 * ep + ept + rh) + be * sit);
  eq("vacuum_D_beta", Dop(kD, S::beta) - Dop(kdelta, S::epsilon),
     P(1) - alt * ep - ka * (ga + mu) + ep * pit + be * (-ept + rht) + (al + pi) * si);
  eq("vacuum_D_gamma", Dop(kD, S::gamma) - Dop(kDelta, S::epsilon),
     P(2) - gat * ep - ga * (2.0 * ep + ept) - ka * nu + pi * (be + ta) + al * (pit + ta) + be * tat);
  eq("vacuum_D_lambda", Dop(kD, S::lambda) - Dop(kdeltat, S::pi),
     -kat * nu + pi * (al - bet + pi) + la * (-3.0 * ep + ept + rh) + mu * sit);
  eq("vacuum_D_rho", Dop(kD, S::rho) - Dop(kdeltat, S::kappa),
     ka * (-3.0 * al - bet + pi) + rh * (ep + ept + rh) + si * sit - kat * ta);
  eq("vacuum_D_sigma", Dop(kD, S::sigma) - Dop(kdelta, S::kappa),
     P(0) + (3.0 * ep - ept + rh + rht) * si - ka * (alt + 3.0 * be - pit + ta));
  eq("vacuum_D_tau", Dop(kD, S::tau) - Dop(kDelta, S::kappa),
     P(1) - (3.0 * ga + gat) * ka + pit * rh + (ep - ept + rh) * ta + si * (pi + tat));
  eq("vacuum_Delta_rho", Dop(kDelta, S::rho) - Dop(kdeltat, S::tau),
     -P(2) + ka * nu + (ga + gat - mut) * rh - la * si - ta * (al - bet + tat));
  eq("vacuum_delta_alpha", Dop(kdelta, S::alpha) - Dop(kdeltat, S::beta),
     -P(2) + al * (alt - 2.0 * be) + be * bet + ep * (mu - mut) + (ga + mu) * rh - ga * rht - la * si);
  eq("vacuum_delta_rho", Dop(kdelta, S::rho) - Dop(kdeltat, S::sigma),
     -P(1) + ka * (mu - mut) + (alt + be) * rh + (-3.0 * al + bet) * si + (rh - rht) * ta);

  eq("bianchi_deltat_Psi0", DPsi(kdeltat, 0) - DPsi(kD, 1),
     (4.0 * al - pi) * P(0) - 2.0 * (ep + 2.0 * rh) * P(1) + 3.0 * ka * P(2));
  eq("bianchi_deltat_Psi1", DPsi(kdeltat, 1) - DPsi(kD, 2),
     la * P(0) + 2.0 * (al - pi) * P(1) - 3.0 * rh * P(2) + 2.0 * ka * P(3));
  eq("bianchi_Delta_Psi0", DPsi(kDelta, 0) - DPsi(kdelta, 1),
     4.0 * ga * P(0) - mu * P(0) - 2.0 * (be + 2.0 * ta) * P(1) + 3.0 * si * P(2));
  eq("bianchi_Delta_Psi1", DPsi(kDelta, 1) - DPsi(kdelta, 2),
     nu * P(0) + 2.0 * (ga - mu) * P(1) - 3.0 * ta * P(2) + 2.0 * si * P(3));
}

cplx a1_combination(const NPFrame& f) {
  auto v = [&](Spin s) { return f.spin(s).v; };
  auto t = [&](Spin s) { return f.spin.tilde(s).v; };
  using S = Spin;
  const cplx X = -3.0 * v(S::epsilon) + t(S::epsilon) - t(S::rho) - 4.0 * v(S::rho);
  const cplx Y = -t(S::alpha) - 3.0 * v(S::beta) + t(S::pi) - 4.0 * v(S::tau);
  const cplx Dterm = 4.0 * f.apply(kD, f.spin(S::tau)) + 2.0 * f.apply(kD, f.spin(S::beta));
  const cplx dterm = 4.0 * f.apply(kdelta, f.spin(S::rho)) + 2.0 * f.apply(kdelta, f.spin(S::epsilon));
  return X * (-4.0 * v(S::tau) - 2.0 * v(S::beta)) - Y * (-4.0 * v(S::rho) - 2.0 * v(S::epsilon)) - Dterm + dterm;
}

}  // namespace

double NPResidualReport::max() const {
  double m = 0;
  for (const auto& e : entries) m = std::max(m, e.second);
  return m;
}

double NPResidualReport::get(const std::string& name) const {
  for (const auto& e : entries)
    if (e.first == name) return e.second;
  throw std::out_of_range("no residual named " + name);
}

NPResidualReport np_residuals(const Background& bg, const ChartPoint& p) {
  const NPFrame f = np_frame(bg, p);
  NPResidualReport rep;
  np_equations(f, "", rep.entries);
  np_equations(tilde_map(f), "_tilde", rep.entries);
  return rep;
}

A1Check a1_identity_check(const Background& bg, const ChartPoint& p) {
  const NPFrame f = np_frame(bg, p);
  return {std::abs(a1_combination(f)), std::abs(a1_combination(tilde_map(f)))};
}

}  // namespace instanton

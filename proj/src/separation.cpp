#include "instanton/separation.hpp"

#include <cmath>

namespace instanton {

std::string to_string(RadialKind k) { return k == RadialKind::U ? "U" : "Utilde"; }

std::vector<LatticeMode> mode_lattice(const Background& bg, double m_min, double m_max, long n_min, long n_max,
                                      LatticeConvention conv) {
  std::vector<LatticeMode> out;
  if (bg.is_kerr()) {
    for (long m = long(std::ceil(m_min)); m <= long(std::floor(m_max)); ++m)
      for (long n = n_min; n <= n_max; ++n) {
        const double w = conv == LatticeConvention::Invariance ? -double(m) * bg.Omega + bg.kappa * double(n)
                                                               : bg.Omega + bg.kappa * double(n);
        out.push_back({double(m), w, n});
      }
  } else {
    for (long m2 = long(std::ceil(2 * m_min)); m2 <= long(std::floor(2 * m_max)); ++m2)
      for (long n = n_min; n <= n_max; ++n) out.push_back({0.5 * double(m2), 0.5 * double(m2) + double(n), n});
  }
  return out;
}

namespace {
bool is_integer(double x) { return std::isfinite(x) && std::nearbyint(x) == x; }
}  // namespace

bool on_lattice(const Background& bg, double m, double omega, LatticeConvention conv) {
  if (bg.is_kerr()) {
    if (!is_integer(m)) return false;
    const double q = conv == LatticeConvention::Invariance ? (omega + m * bg.Omega) / bg.kappa
                                                           : (omega - bg.Omega) / bg.kappa;
    return std::abs(q - std::nearbyint(q)) < 1e-9;
  }
  // phase invariance under (t, phi) -> (t + 4 pi, phi) and (t + 2 pi, phi + 2 pi):
  // 2 omega in Z and m - omega in Z; half-integers are exact in binary
  const double m2 = 2 * m, w2 = 2 * omega;
  if (!is_integer(m2) || !is_integer(w2)) return false;
  const long d = long(m2) - long(w2);
  return d % 2 == 0;
}

double potential_v(const Background& bg, const ModeIndex& k, double x) {
  if (std::abs(x) < 1) return potential_v_raw<double>(bg, k, x);
  if (std::abs(x) > 1 || std::isnan(x)) throw DomainError("V requires |x| <= 1");
  const double sgn = x > 0 ? 1.0 : -1.0;
  if (bg.is_kerr()) {
    // numerator a w (1 - x^2) - m + 2x vanishes at x = +-1 iff m = +-2; the quotient then tends to 0
    if (k.m != 2 * sgn) throw DomainError("V has a pole at this endpoint");
    return 8 * bg.a * k.omega * sgn + k.Lambda;
  }
  if ((k.omega + 2) * sgn + k.m != 0) throw DomainError("V has a pole at this endpoint");
  return k.Lambda;
}

namespace {

using HD = HyperDual<double>;

// multiplicative part of L acting on exp(i(m phi - omega t)); also the operator's coefficient of d/dtheta
cplx l_operator_potential(const Background& bg, const ModeIndex& k, double r, double theta, bool tilded) {
  const cplx I(0, 1);
  const cplx dt = -I * k.omega, dphi = I * k.m;
  const double x = std::cos(theta), s = std::sin(theta), D = bg.delta(r);
  if (bg.is_kerr()) {
    const double a = bg.a, M = bg.M, sg = tilded ? -1.0 : 1.0;
    const cplx A1 = (r * r - a * a) * dt - a * dphi - 2.0 * I * (r - M);
    const cplx A2 = a * s * s * dt + dphi - sg * 2.0 * I * x;
    return A1 * A1 / D + 8.0 * I * (r + sg * a * x) * dt + A2 * A2 / (s * s);
  }
  const double N = bg.N, S = r * r - N * N;
  cplx term0, A1;
  if (!tilded) {
    term0 = -4 * N * (r + N) / ((r - N) * (r - N));
    A1 = dt - I * N * (4 * r * r - 11 * N * r + 3 * N * N) / (S * (r - N));
  } else {
    term0 = -36 * N * (r - N) / ((r + N) * (r + N));
    A1 = dt + I * N * (4 * r * r - 19 * N * r + 13 * N * N) / (S * (r + N));
  }
  const cplx A2 = x * dt - dphi - 2.0 * I * x;
  return term0 + S * S / (4 * N * N * D) * A1 * A1 + A2 * A2 / (s * s);
}

struct Jet2 {
  double v, r, th, rr, rth, thth;
};

Jet2 product_jet(const std::function<HD(const HD&, const HD&)>& F, double r, double th) {
  const HD a = F(HD(r, 1, 1, 0), HD(th));
  const HD b = F(HD(r), HD(th, 1, 1, 0));
  const HD c = F(HD(r, 1, 0, 0), HD(th, 0, 1, 0));
  return {a.value, a.d1, b.d1, a.cross, c.cross, b.cross};
}

}  // namespace

SeparationCheck separation_consistency(const Background& bg, const ModeIndex& k, const TestFunction& R,
                                       const TestFunction& S, const ChartPoint& p, bool tilded) {
  validate_point(bg, p);
  const double r = p.r, th = p.theta;
  const Jet2 phi = product_jet([&](const HD& rr, const HD& tt) { return R(rr) * S(tt); }, r, th);
  const double D = bg.delta(r), Dp = bg.delta_prime(r);
  const double cot = std::cos(th) / std::sin(th);
  const cplx Lphi = D * phi.rr + Dp * phi.r + phi.thth + cot * phi.th +
                    l_operator_potential(bg, k, r, th, tilded) * phi.v;

  const auto Rd = derive2(R, r);
  const auto Sd = derive2(S, th);
  const RadialKind kind = (tilded && !bg.is_kerr()) ? RadialKind::Utilde : RadialKind::U;
  const double x = std::cos(th);
  const double V = potential_v(bg, k, (tilded && bg.is_kerr()) ? -x : x);
  const double radial = D * Rd.d2f + Dp * Rd.df + potential_u<double>(bg, k, r, kind) * Rd.f;
  const double angular = Sd.d2f + cot * Sd.df + V * Sd.f;
  const cplx sep = Sd.f * radial + Rd.f * angular;
  return {Lphi, sep, std::abs(Lphi - sep)};
}

UVDecomposition uv_decomposition_residual(const Background& bg, const ModeIndex& k, double r, double x) {
  if (!bg.is_kerr()) throw std::invalid_argument("the three-term decomposition is specific to Kerr");
  if (!(r > bg.r_plus) || !(std::abs(x) < 1)) throw DomainError("decomposition requires r > r_plus and |x| < 1");
  const double M = bg.M, a = bg.a, m = k.m, w = k.omega;
  const double D = bg.delta(r), q = 1 - x * x, E = D + q * a * a;
  const double t1 = -16 * M * (r + a * x) / ((r - a * x) * (r - a * x));
  const double n2 = a * a * x * (m * x - 2) + 2 * a * (x * x - 1) * (M * (r * w - 1) + r) + r * (m - 2 * x) * (2 * M - r);
  const double t2 = -n2 * n2 / (q * E * D);
  const double n3 = 2 * M * (a * x + 3 * r) + (r - a * x) * (r + a * x) * (-a * x * w + r * w - 2);
  const double t3 = -n3 * n3 / ((r - a * x) * (r - a * x) * E);
  const double uv = potential_u<double>(bg, k, r) + potential_v(bg, k, x);
  return {std::abs(t1 + t2 + t3 - uv), {t1, t2, t3}, uv};
}

double teukolsky_operator_residual(const Background& bg, const ModeIndex& k, const TestFunction& R,
                                   const TestFunction& S, const ChartPoint& p, bool tilded) {
  const NPFrame f0 = np_frame(bg, p);
  const NPFrame f = tilded ? tilde_map(f0) : f0;
  const int psi_index = 2;
  auto psi2 = [&](const HD& r, const HD& th) {
    const auto w = weyl_closed_form<HD>(bg, r, th);
    return tilded ? w.psit[psi_index] : w.psi[psi_index];
  };
  const Jet2 G = product_jet([&](const HD& r, const HD& th) { return pow(psi2(r, th), 2.0 / 3.0) * R(r) * S(th); },
                             p.r, p.theta);
  const cplx I(0, 1);
  auto lin = [](std::initializer_list<std::pair<double, Jet>> terms) {
    Jet j;
    for (const auto& [c, t] : terms) {
      j.v += c * t.v;
      j.dr += c * t.dr;
      j.dth += c * t.dth;
    }
    return j;
  };
  // (A + a)(B + b) applied to exp(..) G, exponential stripped
  auto compose = [&](int A, cplx a, int B, const Jet& b) {
    const auto& Bj = f.op_jets[B];
    const Jet cB{-I * k.omega * Bj[0].v + I * k.m * Bj[3].v + b.v, -I * k.omega * Bj[0].dr + I * k.m * Bj[3].dr + b.dr,
                 -I * k.omega * Bj[0].dth + I * k.m * Bj[3].dth + b.dth};
    const cplx Hv = cB.v * G.v + Bj[1].v * G.r + Bj[2].v * G.th;
    const cplx Hr = cB.dr * G.v + cB.v * G.r + Bj[1].dr * G.r + Bj[1].v * G.rr + Bj[2].dr * G.th + Bj[2].v * G.rth;
    const cplx Ht = cB.dth * G.v + cB.v * G.th + Bj[1].dth * G.r + Bj[1].v * G.rth + Bj[2].dth * G.th +
                    Bj[2].v * G.thth;
    const auto& Av = f.ops[A];
    return (-I * k.omega * Av(0) + I * k.m * Av(3) + a) * Hv + Av(1) * Hr + Av(2) * Ht;
  };
  using S_ = Spin;
  auto v = [&](S_ s) { return f.spin(s); };
  auto t = [&](S_ s) { return f.spin.tilde(s); };
  const cplx a1 = -3.0 * v(S_::epsilon).v + t(S_::epsilon).v - t(S_::rho).v - 4.0 * v(S_::rho).v;
  const Jet b1 = lin({{-4.0, v(S_::gamma)}, {1.0, v(S_::mu)}});
  const cplx a2 = -t(S_::alpha).v - 3.0 * v(S_::beta).v + t(S_::pi).v - 4.0 * v(S_::tau).v;
  const Jet b2 = lin({{-4.0, v(S_::alpha)}, {1.0, v(S_::pi)}});
  const cplx lhs = compose(kD, a1, kDelta, b1) - compose(kdelta, a2, kdeltat, b2) - 3.0 * f.weyl.psi[2].v * G.v;

  const auto sc = separation_consistency(bg, k, R, S, p, tilded);
  const double sigma = bg.sigma(p.r, std::cos(p.theta));
  const double w23 = std::pow(psi2(HD(p.r), HD(p.theta)).value, 2.0 / 3.0);
  const cplx rhs = w23 * sc.L_phi / (2.0 * sigma);
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

}  // namespace instanton

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "instanton/angular.hpp"
#include "instanton/np.hpp"
#include "instanton/radial.hpp"
#include "instanton/separation.hpp"
#include "instanton/stability.hpp"

#ifndef INSTANTON_LAB_PATH
#error "INSTANTON_LAB_PATH must point at the CLI binary"
#endif

using namespace instanton;
using HD = HyperDual<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Background kKerr = Background::kerr(1, 0.5);
const Background kBolt = Background::taub_bolt(1);

Outcome np_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0;
  std::size_t count = 0;
  for (const auto& bg : {kKerr, kBolt})
    for (const auto& p : sample_points(bg, 100, 101)) {
      const auto rep = np_residuals(bg, p);
      worst = std::max(worst, rep.max());
      count += rep.entries.size();
    }
  const double dt = seconds_since(t0);
  o.detail << "max residual " << worst << " over " << count << " equation evaluations, " << dt << " s";
  o.require(worst < 1e-8, "residual < 1e-8");
  o.require(dt < 30, "runtime < 30 s");
  return o;
}

Outcome closed_forms() {
  Outcome o;
  double spin = 0, psi2 = 0, others = 0;
  for (const auto& bg : {kKerr, kBolt})
    for (const auto& p : sample_points(bg, 100, 202)) {
      const auto n = spin_coeffs_numeric(bg, p), c = spin_coeffs_closed(bg, p);
      for (int k = 0; k < 12; ++k)
        spin = std::max({spin, std::abs(n.plain[k] - c.plain[k]), std::abs(n.tilded[k] - c.tilded[k])});
      const auto w = weyl_scalars_numeric(bg, p);
      const double x = std::cos(p.theta);
      const double want = bg.is_kerr() ? bg.M / std::pow(p.r - bg.a * x, 3) : bg.N / (4 * std::pow(p.r - bg.N, 3));
      const double want_t =
          bg.is_kerr() ? bg.M / std::pow(p.r + bg.a * x, 3) : 9 * bg.N / (4 * std::pow(p.r + bg.N, 3));
      psi2 = std::max({psi2, std::abs(w.psi[2] - want), std::abs(w.psit[2] - want_t)});
      for (int k : {0, 1, 3, 4}) others = std::max({others, std::abs(w.psi[k]), std::abs(w.psit[k])});
    }
  o.detail << "spin coefficients " << spin << ", Psi2 " << psi2 << ", other Weyl scalars " << others;
  o.require(spin < 1e-8, "spin coefficients within 1e-8");
  o.require(psi2 < 1e-8, "Psi2 within 1e-8");
  o.require(others < 1e-9, "other scalars below 1e-9");
  return o;
}

Outcome a1_cancellation() {
  Outcome o;
  double worst = 0;
  for (const auto& bg : {kKerr, kBolt})
    for (const auto& p : sample_points(bg, 50, 303)) {
      const auto a = a1_identity_check(bg, p);
      worst = std::max({worst, a.residual, a.tilded_residual});
    }
  o.detail << "max |A1| " << worst;
  o.require(worst < 1e-9, "|A1| < 1e-9");
  return o;
}

Outcome separation_identity() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  const std::array<std::pair<Background, ModeIndex>, 2> cases{
      {{kKerr, {1, kKerr.kappa - kKerr.Omega, 2.5}}, {kBolt, {0.5, 1.5, 1}}}};
  for (const auto& [bg, md] : cases) {
    const auto pts = sample_points(bg, 10, 405);
    for (int i = 0; i < 10; ++i) {
      const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      TestFunction R = [=](const HD& r) { return exp(a * r / 4.0) * (1.0 + b / r); };
      TestFunction S = [=](const HD& t) { return cos(c * t) + d * sin(t) * sin(t); };
      for (bool tilded : {false, true})
        worst = std::max(worst, separation_consistency(bg, md, R, S, pts[i], tilded).residual);
    }
  }
  o.detail << "max residual " << worst << " (L and Ltilde, 10 functions per background)";
  o.require(worst < 1e-9, "residual < 1e-9");
  return o;
}

Outcome angular_spectra() {
  Outcome o;
  auto leg = angular_spectrum({kBolt, 0, -2}, 4);
  double e_leg = 0;
  for (int j = 0; j < 4; ++j) e_leg = std::max(e_leg, std::abs(leg[j].Lambda - j * (j + 1)));
  const AngularProblem kerr{Background::kerr(1, 0), 0, 0};
  auto sp = angular_spectrum(kerr, 3);
  auto rk = fd_richardson(kerr, 3, 1000);
  double e_fd = 0, min_lam = 1e300, ratio_dev = 0;
  for (int j = 0; j < 3; ++j) {
    e_fd = std::max(e_fd, std::abs(rk.extrapolated[j] - sp[j].Lambda));
    min_lam = std::min(min_lam, sp[j].Lambda);
    ratio_dev = std::max(ratio_dev, std::abs(std::pow(2.0, rk.observed_order[j]) / 4 - 1));
  }
  o.detail << "Legendre error " << e_leg << ", Kerr vs FD " << e_fd << ", min Lambda " << min_lam
           << ", Richardson ratio deviation " << ratio_dev;
  o.require(e_leg < 1e-8, "Legendre within 1e-8");
  o.require(e_fd < 1e-6, "Kerr vs FD within 1e-6");
  o.require(min_lam >= 0, "Lambda >= 0");
  o.require(ratio_dev < 0.2, "order-2 convergence");
  return o;
}

Outcome indicial() {
  Outcome o;
  double e_bolt = 0;
  int freqs = 0;
  for (const auto& lm : mode_lattice(kBolt, -1, 1, -2, 2)) {
    if (lm.omega == 0 || freqs >= 10) continue;
    ++freqs;
    const ModeIndex md{lm.m, lm.omega, 1.5};
    const auto a = indicial_oracle(kBolt, md, 2 * kBolt.N), b = indicial_oracle(kBolt, md, kBolt.N / 2);
    e_bolt = std::max({e_bolt, std::abs(a[0] - std::abs(lm.omega - 1)), std::abs(a[1] + std::abs(lm.omega - 1)),
                       std::abs(b[0] - std::abs(lm.omega / 4 - 1)), std::abs(b[1] + std::abs(lm.omega / 4 - 1))});
  }
  double e_inf = 0;
  for (const auto& bg : {Background::kerr(1, 0), kBolt})
    for (double Lam : {0.0, 2.0, 6.0}) {
      const ModeIndex md{0, 0, Lam};
      const auto f = infinity_exponents(bg, md), g = infinity_exponents_oracle(bg, md);
      e_inf = std::max({e_inf, std::abs(f[0] - g[0]), std::abs(f[1] - g[1])});
    }
  double kerr_gap = 0;
  for (double w : {-0.7, 0.3, 1.0})
    for (double m : {-1.0, 0.0, 2.0}) {
      const auto s = singular_points(kKerr, {m, w, 1});
      kerr_gap = std::max(kerr_gap, std::abs(std::abs(s[0].paper[0]) - std::abs(s[0].oracle[0])));
    }
  o.detail << "Taub-bolt error " << e_bolt << " over " << freqs << " frequencies, omega=0 infinity formula vs oracle "
           << e_inf << ", Kerr r+ closed form vs oracle max gap " << kerr_gap << " (oracle is truth)";
  o.require(freqs == 10 && e_bolt < 1e-10, "Taub-bolt exponents within 1e-10");
  o.require(e_inf < 1e-10, "omega=0 infinity exponents -3/2 +- i sqrt(7/2+Lambda)");
  return o;
}

AsymptoticFit decade_fit(const Background& bg, const ModeIndex& md, RadialKind kind) {
  const double top = decaying_seed_radius(bg, md);
  std::vector<double> g;
  for (int i = 0; i <= 200; ++i) g.push_back(top / 10 + (top - top / 10) * i / 200.0);
  const auto d = decaying_solution(bg, md, kind, top / 10, {}, g);
  return fit_asymptotic(d, top / 10, top);
}

Outcome asymptotics() {
  Outcome o;
  const auto k0 = Background::kerr(1, 0);
  struct Case {
    Background bg;
    ModeIndex md;
    RadialKind kind;
    const char* label;
  };
  const std::vector<Case> cases{{k0, {1, 0.25, 2}, RadialKind::U, "Kerr"},
                                {k0, {-1, -0.5, 2}, RadialKind::U, "Kerr"},
                                {kKerr, {1, kKerr.kappa - kKerr.Omega, 3}, RadialKind::U, "Kerr"},
                                {kBolt, {0.5, 1.5, 1}, RadialKind::Utilde, "Taub-bolt Rtilde"},
                                {kBolt, {-0.5, -1.5, 1}, RadialKind::Utilde, "Taub-bolt Rtilde"},
                                {kBolt, {0.5, 1.5, 1}, RadialKind::U, "Taub-bolt R"},
                                {kBolt, {-0.5, -1.5, 1}, RadialKind::U, "Taub-bolt R"}};
  for (const auto& c : cases) {
    const auto fit = decade_fit(c.bg, c.md, c.kind);
    const auto ref = asymptotic_normal_solution(c.bg, c.md, -1);
    const double rate_err = std::abs(fit.rate / ref.rate - 1), pow_err = std::abs(fit.power - ref.power);
    o.detail << c.label << " w=" << c.md.omega << ": rate err " << rate_err << ", power " << fit.power << " vs "
             << ref.power;
    o.require(rate_err < 0.01 && pow_err < 0.05, "fitted power/rate");
    o.detail << "; ";
  }
  double tail = 0;
  for (const auto& [bg, md] : {std::pair{k0, ModeIndex{0, 0.25, 2}}, std::pair{kKerr, ModeIndex{1, -0.6, 3}}}) {
    const double want = -4 * md.omega * (bg.M * md.omega - 1);
    const double r = 1e6;
    tail = std::max(tail, std::abs(r * (liouville_q(bg, md, r) + md.omega * md.omega) - want));
  }
  o.detail << "Liouville tail error " << tail;
  o.require(tail < 1e-4, "Liouville tail within 1e-4");
  return o;
}

// lattice modes with their lowest separation constants
std::vector<ModeIndex> scanned_modes(const Background& bg, double m_lo, double m_hi, long n_lo, long n_hi) {
  std::vector<ModeIndex> out;
  for (const auto& lm : mode_lattice(bg, m_lo, m_hi, n_lo, n_hi)) {
    if (lm.omega == 0) continue;
    for (const auto& e : angular_spectrum({bg, lm.m, lm.omega}, 3)) out.push_back({lm.m, lm.omega, e.Lambda});
  }
  return out;
}

Outcome negativity() {
  Outcome o;
  const auto k0 = Background::kerr(1, 0);
  struct Set {
    Background bg;
    std::vector<ModeIndex> modes;
    const char* label;
  };
  const std::vector<Set> sets{{k0, scanned_modes(k0, -2, 2, -3, 3), "Kerr a=0"},
                              {kKerr, scanned_modes(kKerr, -1, 1, -1, 1), "Kerr a=0.5"},
                              {kBolt, scanned_modes(kBolt, -1, 1, -2, 2), "Taub-bolt"}};
  for (const auto& s : sets) {
    const auto t0 = Clock::now();
    const auto rep = negativity_certificate(s.bg, s.modes);
    const double dt = seconds_since(t0);
    o.detail << s.label << ": " << rep.rows.size() << " rows, margin " << rep.margin;
    if (s.bg.is_kerr()) o.detail << ", identity " << rep.identity_residual;
    o.detail << ", " << dt << " s; ";
    o.require(rep.certified, std::string(s.label) + " certified");
    o.require(dt < 60, std::string(s.label) + " runtime < 60 s");
    if (s.bg.is_kerr()) o.require(rep.identity_residual < 1e-10, std::string(s.label) + " identity < 1e-10");
  }
  return o;
}

Outcome mode_scans() {
  Outcome o;
  const auto t0 = Clock::now();
  ScanConfig cfg;
  cfg.exclude_static = true;
  const auto kerr = mode_scan(Background::kerr(1, 0), -2, 2, -3, 3, cfg);
  const auto bolt = mode_scan(kBolt, -1, 1, -2, 2, cfg);
  const double dt = seconds_since(t0);
  for (const auto* rep : {&kerr, &bolt}) {
    double min_w = 1e300, min_e = 1e300;
    for (const auto& row : rep->rows) {
      min_w = std::min(min_w, row.abs_wronskian);
      min_e = std::min(min_e, row.energy);
    }
    o.detail << to_string(rep->bg.kind) << " m in [" << rep->m_min << ", " << rep->m_max << "], n in [" << rep->n_min
             << ", " << rep->n_max << "] omega != 0: " << rep->rows.size() << " rows, min |Delta W| " << min_w
             << ", min energy " << min_e << ", verdict " << rep->verdict << "; ";
    o.require(min_w > 1e-3, "|Delta W| > 1e-3");
    o.require(min_e > 0, "energy > 0");
    o.require(rep->verdict == "no modes", "verdict no modes");
  }
  o.detail << dt << " s";
  o.require(dt < 600, "runtime < 10 min");
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> commands{
      "modescan --background kerr --M 1 --a 0 --m-min -1 --m-max 1 --n-min -1 --n-max 1 --lambda-count 2",
      "certify --background taubbolt --N 1 --m 0 --omega 1",
      "np-check --background kerr --M 1 --a 0.5 --points 5 --seed 7"};
  int k = 0;
  for (const auto& c : commands) {
    std::string out[2];
    for (int i = 0; i < 2; ++i) {
      const std::string file = "acceptance_report_" + std::to_string(k) + "_" + std::to_string(i) + ".json";
      const std::string cmd = std::string("\"") + INSTANTON_LAB_PATH + "\" " + c + " --output " + file;
      const int rc = std::system(cmd.c_str());
      o.require(rc == 0, "exit status of: " + c);
      out[i] = slurp(file);
      std::remove(file.c_str());
    }
    o.require(!out[0].empty() && out[0] == out[1], "byte-identical: " + c);
    ++k;
  }
  o.detail << commands.size() << " commands run twice";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion all[] = {{"AC1 NP equations", np_suite},
                           {"AC2 closed-form agreement", closed_forms},
                           {"AC3 A1 cancellation", a1_cancellation},
                           {"AC4 separation identity", separation_identity},
                           {"AC5 angular spectra", angular_spectra},
                           {"AC6 indicial exponents", indicial},
                           {"AC7 asymptotics", asymptotics},
                           {"AC8 negativity certificate", negativity},
                           {"AC9 mode scan", mode_scans},
                           {"AC10 determinism", determinism}};
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail.str() << std::endl;
  }
  std::cout << (std::size(all) - failed) << "/" << std::size(all) << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}

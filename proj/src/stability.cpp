#include "instanton/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "instanton/errors.hpp"
#include "instanton/laurent.hpp"
#include "instanton/quadrature.hpp"

namespace instanton {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// first coefficient that is not zero relative to the size of the series
std::pair<int, double> leading(const Laurent& L) {
  double scale = 0;
  for (int k = L.valuation(); k < L.order(); ++k) scale = std::max(scale, std::abs(L[k]));
  for (int k = L.valuation(); k < L.order(); ++k)
    if (std::abs(L[k]) > 1e-12 * scale) return {k, L[k]};
  return {L.order(), 0.0};
}

std::vector<double> r_grid(const Background& bg, int n) {
  std::vector<double> g(n);
  const double s = bg.rate_scale();
  for (int i = 0; i < n; ++i) g[i] = bg.inner() + s * std::tan(0.5 * M_PI * (i + 0.5) / n);
  return g;
}

const AngularEigenpair& match_lambda(const std::vector<AngularEigenpair>& sp, double Lambda) {
  for (const auto& e : sp)
    if (std::abs(e.Lambda - Lambda) < 1e-6 * (1 + std::abs(Lambda))) return e;
  throw std::invalid_argument("Lambda is not an angular eigenvalue of the mode");
}

}  // namespace

NegativityReport negativity_certificate(const Background& bg, const std::vector<ModeIndex>& modes,
                                        const NegativityConfig& cfg) {
  if (modes.empty()) throw std::invalid_argument("empty mode set");
  for (const auto& md : modes)
    if (!on_lattice(bg, md.m, md.omega)) throw std::invalid_argument("mode off the identification lattice");
  NegativityReport rep;
  rep.bg = bg;
  rep.cfg = cfg;
  const auto rg = r_grid(bg, cfg.r_points);
  std::vector<double> xg(cfg.x_points);
  for (int i = 0; i < cfg.x_points; ++i) xg[i] = -1 + 2 * (i + 0.5) / cfg.x_points;

  if (bg.is_kerr()) {
    rep.first_term_max = -kInf;
    for (double r : rg)
      for (double x : xg) {
        const double ax = bg.a * x;
        rep.first_term_max = std::max(rep.first_term_max, -16 * bg.M * (r + ax) / ((r - ax) * (r - ax)));
      }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(-1, 1), uxi(0, 0.5 * M_PI);
    for (const auto& md : modes)
      for (int i = 0; i < cfg.identity_samples; ++i) {
        double r = bg.inner() + std::tan(uxi(rng)), x = ux(rng);
        if (!(r > bg.inner()) || !std::isfinite(r) || std::abs(x) >= 1) continue;
        const auto d = uv_decomposition_residual(bg, md, r, x);
        rep.identity_residual = std::max(rep.identity_residual, d.residual / (1 + std::abs(d.u_plus_v)));
      }
  }

  const std::vector<RadialKind> kinds =
      bg.is_kerr() ? std::vector<RadialKind>{RadialKind::U} : std::vector<RadialKind>{RadialKind::U, RadialKind::Utilde};
  rep.sup = -kInf;
  bool all = true;
  for (const auto& md : modes) {
    for (RadialKind kind : kinds) {
      NegativityRow row;
      row.mode = md;
      row.kind = kind;
      row.sup_u = -kInf;
      for (double r : rg) row.sup_u = std::max(row.sup_u, potential_u<double>(bg, md, r, kind));
      double sup_v = 0;
      if (bg.is_kerr()) {
        sup_v = -kInf;
        for (double x : xg) sup_v = std::max(sup_v, potential_v(bg, md, x));
      }
      // U + V is a sum of a function of r and a function of x: its grid maximum separates
      row.sup = row.sup_u + sup_v;

      const auto in = leading(delta_times_u<Laurent>(bg, md, Laurent::shifted(bg.inner(), 4), kind) /
                              bg.delta(Laurent::shifted(bg.inner(), 4)));
      row.tail_inner_order = in.first;
      row.tail_inner = in.second + (in.first == 0 ? sup_v : 0.0);
      // in u = 1/r the order k means r^{-k}
      const auto inf = leading(potential_u<Laurent>(bg, md, Laurent::inverse_variable(6), kind));
      row.tail_infinity_order = -inf.first;
      row.tail_infinity = inf.second + (inf.first == 0 ? sup_v : 0.0);
      row.tail_ok = row.tail_inner < 0 && row.tail_infinity < 0;

      bool ok = row.sup < 0 && row.tail_ok;
      if (bg.is_kerr()) {
        // U(r) <= U(r) + int S'^2 = int (U + V) S^2, with int V S^2 = int S'^2 for the normalized eigenfunction
        std::vector<AngularEigenpair> sp;
        for (int count = 4; count <= 32; count *= 2) {
          AngularSolverConfig ac;
          ac.spectral_order = ac.grid_size = std::max(48, 4 * count);
          sp = angular_spectrum({bg, md.m, md.omega}, count, ac);
          if (sp.back().Lambda > md.Lambda + 1) break;
        }
        const auto& e = match_lambda(sp, md.Lambda);
        const auto gl = gauss_legendre(96);
        double iv = 0, is = 0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
          const double th = std::acos(gl.nodes[i]);
          const double S = angular_eigenfunction(e, th), dS = angular_eigenfunction_derivative(e, th);
          iv += gl.weights[i] * potential_v(bg, md, gl.nodes[i]) * S * S;
          is += gl.weights[i] * dS * dS;
        }
        row.ibp_residual = std::abs(iv - is) / (1 + std::abs(is));
        row.projected_u = row.sup_u + iv;
        ok = ok && row.ibp_residual < 1e-8 && row.projected_u < 0 && rep.identity_residual < 1e-10 &&
             rep.first_term_max < 0;
      }
      row.certified = ok;
      all = all && ok;
      rep.sup = std::max(rep.sup, row.sup);
      rep.rows.push_back(row);
    }
  }
  // fixed (m, omega, kind): larger Lambda must give a pointwise smaller U
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    for (std::size_t j = 0; j < rep.rows.size(); ++j) {
      const auto &a = rep.rows[i], &b = rep.rows[j];
      if (a.kind == b.kind && a.mode.m == b.mode.m && a.mode.omega == b.mode.omega && a.mode.Lambda < b.mode.Lambda) {
        const double r = bg.inner() + 1.7 * bg.rate_scale();
        if (!(potential_u<double>(bg, b.mode, r, b.kind) < potential_u<double>(bg, a.mode, r, a.kind)))
          rep.lambda_monotone = false;
      }
    }
  rep.margin = -rep.sup;
  rep.certified = all && rep.lambda_monotone;
  return rep;
}

double energy_functional(const Background& bg, const ModeIndex& k, RadialKind kind, const RadialSample& R,
                         double r_lo, double r_hi, double tol) {
  if (!(r_lo > bg.inner()) || !(r_hi > r_lo)) throw DomainError("energy range must lie beyond the inner point");
  auto f = [&](double r) {
    const auto y = R(r);
    return bg.delta(r) * std::norm(y[1]) - potential_u<double>(bg, k, r, kind) * std::norm(y[0]);
  };
  const double v = quad(f, r_lo, r_hi, tol);
  if (!std::isfinite(v)) throw ConvergenceError("energy quadrature did not converge", v);
  return v;
}

double energy_functional(const RadialSolution& s, double tol) {
  // the recorded steps split the range; Hermite interpolation inside each step
  double total = 0;
  std::vector<double> edges(s.r);
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] == edges[i]) continue;
    total += energy_functional(
        s.bg, s.mode, s.kind,
        [&](double r) {
          const auto y = s.at(r);
          return std::array<cplx, 2>{y[0], y[1] / s.bg.delta(r)};
        },
        edges[i], edges[i + 1], tol * (1 + std::abs(total)));
  }
  return total;
}

unsigned scan_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("INSTANTON_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, unsigned(cap));
  }
  return std::max(1u, n);
}

namespace {

ModeScanRow scan_row(const Background& bg, const ModeIndex& md, int j, RadialKind kind, const ScanConfig& cfg) {
  ModeScanRow row;
  row.mode = md;
  row.lambda_index = j;
  row.kind = kind;
  row.route = md.omega != 0 ? "irregular" : "regular";
  if (md.omega == 0) {
    const auto e = infinity_exponents(bg, md);
    const auto o = infinity_exponents_oracle(bg, md, kind);
    row.note = "closed-form exponents " + std::to_string(e[0].real()) + " +- " + std::to_string(e[0].imag()) +
               "i; equation exponents " + std::to_string(o[1].real()) + ", " + std::to_string(o[0].real());
  }
  const double r_match = 10 * bg.inner();
  RadialConfig rc = cfg.radial;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto reg = regular_solution(bg, md, kind, r_match, rc);
    const auto dec = decaying_solution(bg, md, kind, r_match, rc);
    row.wronskian = connection_wronskian(reg, dec, r_match);
    row.abs_wronskian = std::abs(row.wronskian);
    row.rel_wronskian = relative_wronskian(reg, dec, r_match);
    row.energy = energy_functional(reg);
    if (row.rel_wronskian >= cfg.threshold) break;
    row.refined = true;
    rc.rel_tol /= 10;
  }
  row.verdict = row.rel_wronskian >= cfg.threshold ? "no mode" : "inconclusive";
  return row;
}

}  // namespace

ModeScanReport mode_scan(const Background& bg, double m_min, double m_max, long n_min, long n_max,
                         const ScanConfig& cfg) {
  if (cfg.lambda_count < 1) throw std::invalid_argument("lambda_count must be positive");
  ModeScanReport rep;
  rep.bg = bg;
  rep.m_min = m_min;
  rep.m_max = m_max;
  rep.n_min = n_min;
  rep.n_max = n_max;
  rep.cfg = cfg;
  std::vector<LatticeMode> lat;
  for (const auto& l : mode_lattice(bg, m_min, m_max, n_min, n_max))
    if (!(cfg.exclude_static && l.omega == 0)) lat.push_back(l);

  std::vector<RadialKind> kinds{RadialKind::U};
  if (!bg.is_kerr() && cfg.tilded) kinds.push_back(RadialKind::Utilde);
  const std::size_t per = std::size_t(cfg.lambda_count) * kinds.size();
  rep.rows.resize(lat.size() * per);
  std::vector<std::string> errors(lat.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < lat.size();) {
      try {
        const auto sp = angular_spectrum({bg, lat[i].m, lat[i].omega}, cfg.lambda_count, cfg.angular);
        for (int j = 0; j < cfg.lambda_count; ++j)
          for (std::size_t q = 0; q < kinds.size(); ++q)
            rep.rows[i * per + j * kinds.size() + q] =
                scan_row(bg, {lat[i].m, lat[i].omega, sp[j].Lambda}, j, kinds[q], cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned nt = std::min<std::size_t>(scan_threads(cfg.threads), std::max<std::size_t>(1, lat.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < lat.size(); ++i)
    if (!errors[i].empty())
      for (std::size_t q = 0; q < per; ++q) {
        auto& row = rep.rows[i * per + q];
        row.mode = {lat[i].m, lat[i].omega, NAN};
        row.lambda_index = int(q / kinds.size());
        row.kind = kinds[q % kinds.size()];
        row.verdict = "inconclusive";
        row.note = errors[i];
      }
  bool clean = true;
  for (const auto& row : rep.rows) clean = clean && row.verdict == "no mode" && row.energy > 0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    for (std::size_t j = i + 1; j < rep.rows.size(); ++j) {
      const auto &a = rep.rows[i], &b = rep.rows[j];
      if (a.kind == b.kind && a.mode.m == b.mode.m && a.mode.omega == b.mode.omega &&
          b.lambda_index > a.lambda_index && !(b.mode.Lambda > a.mode.Lambda))
        rep.lambda_monotone = false;
    }
  rep.verdict = clean ? "no modes" : "inconclusive";
  return rep;
}

}  // namespace instanton

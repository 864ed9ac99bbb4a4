#include "instanton/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "instanton/angular.hpp"
#include "instanton/errors.hpp"
#include "instanton/geometry.hpp"
#include "instanton/np.hpp"
#include "instanton/radial.hpp"
#include "instanton/separation.hpp"
#include "instanton/stability.hpp"

namespace instanton::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string background = "kerr";
  double M = 1, a = 0, N = 1;
  double m = 0;
  std::optional<double> omega, Lambda;
  std::optional<long> n;
  std::optional<int> lambda_index;
  int count = 3;
  std::string out = "json";
  std::string output;
  std::uint64_t seed = 0;
  bool paper_lattice = false;
  bool timing = false;
  int points = 100;
  double r = 3, theta = 1;
  std::string kind = "U";
  double m_min = -2, m_max = 2;
  long n_min = -3, n_max = 3;
  int lambda_count = 3;
  bool exclude_static = false;
  unsigned threads = 0;
};

// canonical form: sorted keys (std::map), 17 significant digits, non-finite as null
void dump(const json& j, std::string& s, int indent) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ",\n";
        first = false;
        s += pad + json(it.key()).dump() + ": ";
        dump(it.value(), s, indent + 2);
      }
      s += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      s += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ",\n";
        s += pad;
        dump(j[i], s, indent + 2);
      }
      s += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        s += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);
      s += buf;
      return;
    }
    default:
      s += j.dump();
  }
}

std::string canonical(const json& j) {
  std::string s;
  dump(j, s, 0);
  return s + "\n";
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);
  return buf;
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

Background make_background(const RunConfig& c) {
  try {
    if (c.background == "kerr") return Background::kerr(c.M, c.a);
    if (c.background == "taubbolt") return Background::taub_bolt(c.N);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown background '" + c.background + "'");
}

RadialKind parse_kind(const std::string& k) {
  if (k == "U") return RadialKind::U;
  if (k == "Utilde") return RadialKind::Utilde;
  throw UsageError("--kind must be U or Utilde");
}

LatticeConvention convention(const RunConfig& c) {
  return c.paper_lattice ? LatticeConvention::Paper : LatticeConvention::Invariance;
}

// resolves omega from --omega or the lattice integer --n
double resolve_omega(const Background& bg, const RunConfig& c) {
  if (c.omega && c.n) throw UsageError("give either --omega or --n");
  if (c.omega) return *c.omega;
  if (!c.n) return 0;
  const double n = double(*c.n);
  if (!bg.is_kerr()) return c.m + n;
  return c.paper_lattice ? bg.Omega + bg.kappa * n : -c.m * bg.Omega + bg.kappa * n;
}

double resolve_lambda(const Background& bg, const RunConfig& c, double omega, json& params) {
  if (c.Lambda && c.lambda_index) throw UsageError("give either --Lambda or --lambda-index");
  if (c.Lambda) {
    params["Lambda"] = *c.Lambda;
    return *c.Lambda;
  }
  const int j = c.lambda_index.value_or(0);
  if (j < 0) throw UsageError("--lambda-index must be nonnegative");
  const auto sp = angular_spectrum({bg, c.m, omega}, j + 1, [&] {
    AngularSolverConfig a;
    a.spectral_order = a.grid_size = std::max(48, 4 * (j + 1));
    return a;
  }());
  params["lambda_index"] = j;
  params["Lambda"] = sp[j].Lambda;
  return sp[j].Lambda;
}

json base_params(const Background& bg, const RunConfig& c) {
  json p;
  p["background"] = c.background;
  if (bg.is_kerr()) {
    p["M"] = c.M;
    p["a"] = c.a;
  } else {
    p["N"] = c.N;
  }
  p["seed"] = c.seed;
  p["lattice_convention"] = c.paper_lattice ? "paper" : "invariance";
  return p;
}

struct Outcome {
  json params = json::object(), results = json::object(), residuals = json::object();
  std::string verdict;
  bool ok = false;
  std::string csv;  // tabular scan output
};

Outcome cmd_np_check(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  o.params["points"] = c.points;
  if (c.points < 1) throw UsageError("--points must be positive");
  json by = json::object();
  double np_max = 0, a1 = 0, a1t = 0;
  for (const auto& p : sample_points(bg, std::size_t(c.points), c.seed)) {
    const auto rep = np_residuals(bg, p);
    for (const auto& [name, v] : rep.entries) {
      const double prev = by.contains(name) ? by[name].get<double>() : 0.0;
      by[name] = std::max(prev, v);
      np_max = std::max(np_max, v);
    }
    const auto a = a1_identity_check(bg, p);
    a1 = std::max(a1, a.residual);
    a1t = std::max(a1t, a.tilded_residual);
  }
  o.results["max_by_equation"] = by;
  o.results["equations"] = by.size();
  o.residuals["np_max"] = np_max;
  o.residuals["a1_max"] = a1;
  o.residuals["a1_tilded_max"] = a1t;
  o.ok = np_max < 1e-8 && a1 < 1e-9 && a1t < 1e-9;
  o.verdict = o.ok ? "verified" : "failed";
  return o;
}

Outcome cmd_weyl(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  o.params["r"] = c.r;
  o.params["theta"] = c.theta;
  const ChartPoint p{0, c.r, c.theta, 0};
  try {
    validate_point(bg, p);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto wn = weyl_scalars_numeric(bg, p), wc = weyl_scalars_closed(bg, p);
  const auto ex = spin_coeffs_extract(bg, p);
  const auto sc = spin_coeffs_closed(bg, p);
  json psi = json::array(), psit = json::array(), psic = json::array(), psitc = json::array();
  double wd = 0, sd = 0;
  for (int i = 0; i < 5; ++i) {
    psi.push_back(cj(wn.psi[i]));
    psit.push_back(cj(wn.psit[i]));
    psic.push_back(cj(wc.psi[i]));
    psitc.push_back(cj(wc.psit[i]));
    wd = std::max({wd, std::abs(wn.psi[i] - wc.psi[i]), std::abs(wn.psit[i] - wc.psit[i])});
  }
  json spin;
  for (int i = 0; i < 12; ++i) {
    const Spin s = Spin(i);
    spin[kSpinNames[i]] = {{"plain", cj(ex.coeffs(s))}, {"tilded", cj(ex.coeffs.tilde(s))}};
    sd = std::max({sd, std::abs(ex.coeffs(s) - sc(s)), std::abs(ex.coeffs.tilde(s) - sc.tilde(s))});
  }
  o.results["psi"] = psi;
  o.results["psi_tilde"] = psit;
  o.results["psi_closed_form"] = psic;
  o.results["psi_tilde_closed_form"] = psitc;
  o.results["spin_coefficients"] = spin;
  o.residuals["weyl_vs_closed_form"] = wd;
  o.residuals["spin_vs_closed_form"] = sd;
  o.residuals["spin_fit"] = ex.fit_residual;
  o.ok = wd < 1e-8 && sd < 1e-8;
  o.verdict = o.ok ? "verified" : "failed";
  return o;
}

Outcome cmd_lattice(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  const double w = resolve_omega(bg, c);
  o.params["m"] = c.m;
  o.params["omega"] = w;
  const auto L = identification_lattice(bg);
  const bool on = on_lattice(bg, c.m, w, convention(c));
  json phases = json::array();
  for (const auto& g : {L.first, L.second}) phases.push_back(std::remainder(c.m * g[1] - w * g[0], 2 * M_PI));
  o.results["generators"] = {{L.first[0], L.first[1]}, {L.second[0], L.second[1]}};
  o.results["on_lattice"] = on;
  o.residuals["phase_defects"] = phases;
  o.ok = on;
  o.verdict = on ? "on lattice" : "off lattice";
  return o;
}

Outcome cmd_angular(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  const double w = resolve_omega(bg, c);
  o.params["m"] = c.m;
  o.params["omega"] = w;
  o.params["count"] = c.count;
  if (c.count < 1) throw UsageError("--count must be positive");
  AngularSolverConfig ac;
  ac.spectral_order = ac.grid_size = std::max(48, 4 * c.count);
  o.params["spectral_order"] = ac.spectral_order;
  o.params["tolerance"] = ac.tolerance;
  try {
    const auto sp = angular_spectrum({bg, c.m, w}, c.count, ac);
    json lam = json::array();
    double gram = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      lam.push_back(sp[i].Lambda);
      for (std::size_t j = 0; j < sp.size(); ++j)
        gram = std::max(gram, std::abs(angular_inner_product(sp[i], sp[j]) - (i == j ? 1.0 : 0.0)));
    }
    const auto ab = angular_endpoint_exponents({bg, c.m, w});
    o.results["Lambda"] = lam;
    o.results["endpoint_exponents"] = {ab.first, ab.second};
    o.residuals["operator"] = sp.front().residual;
    o.residuals["gram_defect"] = gram;
    o.ok = gram < 1e-8;
    o.verdict = o.ok ? "converged" : "failed";
  } catch (const ConvergenceError& e) {
    o.residuals["operator"] = e.achieved;
    o.verdict = "not converged";
  }
  return o;
}

json singular_json(const SingularPointData& s) {
  json j;
  j["label"] = s.label;
  j["type"] = s.type == SingularType::Regular ? "regular" : "irregular rank 1";
  j["location"] = std::isfinite(s.location) ? json(s.location) : json("inf");
  j["oracle"] = {cj(s.oracle[0]), cj(s.oracle[1])};
  j["paper_formula"] = s.paper_available ? json{cj(s.paper[0]), cj(s.paper[1])} : json(nullptr);
  return j;
}

Outcome cmd_radial(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  const double w = resolve_omega(bg, c);
  const RadialKind kind = parse_kind(c.kind);
  try {
    require_radial_kind(bg, kind);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  o.params["m"] = c.m;
  o.params["omega"] = w;
  o.params["kind"] = c.kind;
  const double Lam = resolve_lambda(bg, c, w, o.params);
  const ModeIndex md{c.m, w, Lam};
  json sps = json::array();
  for (const auto& s : singular_points(bg, md, kind)) sps.push_back(singular_json(s));
  o.results["singular_points"] = sps;
  const RadialConfig rc;
  const double r_match = 10 * bg.inner();
  const auto reg = regular_solution(bg, md, kind, r_match, rc);
  const auto dec = decaying_solution(bg, md, kind, r_match, rc);
  const double rel = relative_wronskian(reg, dec, r_match);
  o.params["r_match"] = r_match;
  o.params["r_max"] = decaying_seed_radius(bg, md);
  o.params["rel_tol"] = rc.rel_tol;
  o.results["wronskian"] = cj(connection_wronskian(reg, dec, r_match));
  o.results["energy"] = energy_functional(reg);
  o.residuals["relative_wronskian"] = rel;
  o.ok = rel >= 1e-6;
  o.verdict = o.ok ? "no mode" : "inconclusive";
  return o;
}

Outcome cmd_certify(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  const double w = resolve_omega(bg, c);
  o.params["m"] = c.m;
  o.params["omega"] = w;
  if (!on_lattice(bg, c.m, w)) throw UsageError("mode off the identification lattice");
  const double Lam = resolve_lambda(bg, c, w, o.params);
  NegativityConfig nc;
  nc.seed = c.seed;
  o.params["r_points"] = nc.r_points;
  o.params["x_points"] = nc.x_points;
  o.params["identity_samples"] = nc.identity_samples;
  NegativityReport rep;
  try {
    rep = negativity_certificate(bg, {{c.m, w, Lam}}, nc);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json rows = json::array();
  double min_neg_u = INFINITY;
  for (const auto& r : rep.rows) {
    rows.push_back({{"kind", to_string(r.kind)},
                    {"sup", r.sup},
                    {"sup_U", r.sup_u},
                    {"tail_inner", {{"order", r.tail_inner_order}, {"coefficient", r.tail_inner}}},
                    {"tail_infinity", {{"order", r.tail_infinity_order}, {"coefficient", r.tail_infinity}}},
                    {"certified", r.certified}});
    min_neg_u = std::min(min_neg_u, -r.sup_u);
  }
  o.results["rows"] = rows;
  o.results["min_minus_U"] = min_neg_u;
  o.results["margin"] = rep.margin;
  if (bg.is_kerr()) {
    o.results["first_term_max"] = rep.first_term_max;
    o.residuals["decomposition_identity"] = rep.identity_residual;
    o.residuals["integration_by_parts"] = rep.rows.front().ibp_residual;
  }
  o.ok = rep.certified && min_neg_u > 0;
  o.verdict = o.ok ? "certified" : "not certified";
  return o;
}

Outcome cmd_modescan(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  ScanConfig sc;
  sc.lambda_count = c.lambda_count;
  sc.exclude_static = c.exclude_static;
  sc.threads = c.threads;
  o.params["m_range"] = {c.m_min, c.m_max};
  o.params["n_range"] = {c.n_min, c.n_max};
  o.params["lambda_count"] = c.lambda_count;
  o.params["exclude_static"] = c.exclude_static;
  o.params["threshold"] = sc.threshold;
  o.params["rel_tol"] = sc.radial.rel_tol;
  o.params["tilded"] = !bg.is_kerr() && sc.tilded;
  if (c.lambda_count < 1) throw UsageError("--lambda-count must be positive");
  const auto rep = mode_scan(bg, c.m_min, c.m_max, c.n_min, c.n_max, sc);
  json rows = json::array();
  std::ostringstream csv;
  csv << "m,omega,lambda_index,Lambda,kind,route,abs_wronskian,rel_wronskian,energy,refined,verdict\n";
  double min_rel = INFINITY, min_abs = INFINITY, min_energy = INFINITY;
  for (const auto& r : rep.rows) {
    rows.push_back({{"m", r.mode.m},
                    {"omega", r.mode.omega},
                    {"lambda_index", r.lambda_index},
                    {"Lambda", r.mode.Lambda},
                    {"kind", to_string(r.kind)},
                    {"route", r.route},
                    {"wronskian", cj(r.wronskian)},
                    {"abs_wronskian", r.abs_wronskian},
                    {"rel_wronskian", r.rel_wronskian},
                    {"energy", r.energy},
                    {"refined", r.refined},
                    {"verdict", r.verdict},
                    {"note", r.note}});
    csv << fmt(r.mode.m) << ',' << fmt(r.mode.omega) << ',' << r.lambda_index << ',' << fmt(r.mode.Lambda) << ','
        << to_string(r.kind) << ',' << r.route << ',' << fmt(r.abs_wronskian) << ',' << fmt(r.rel_wronskian) << ','
        << fmt(r.energy) << ',' << (r.refined ? "true" : "false") << ',' << r.verdict << '\n';
    min_rel = std::min(min_rel, r.rel_wronskian);
    min_abs = std::min(min_abs, r.abs_wronskian);
    min_energy = std::min(min_energy, r.energy);
  }
  o.results["rows"] = rows;
  o.results["row_count"] = rep.rows.size();
  o.results["lambda_monotone"] = rep.lambda_monotone;
  o.residuals["min_rel_wronskian"] = min_rel;
  o.residuals["min_abs_wronskian"] = min_abs;
  o.residuals["min_energy"] = min_energy;
  o.ok = rep.verdict == "no modes";
  o.verdict = rep.verdict;
  o.csv = csv.str();
  return o;
}

Outcome cmd_chart_check(const RunConfig& c) {
  const auto bg = make_background(c);
  Outcome o;
  o.params = base_params(bg, c);
  json probes;
  bool ok = true;
  double worst = 0;
  const std::pair<const char*, ChartProbe> which[] = {
      {"axis", ChartProbe::Axis}, {"bolt", ChartProbe::Bolt}, {"transition", ChartProbe::Transition}};
  for (const auto& [name, w] : which) {
    if (bg.is_kerr() && w == ChartProbe::Transition) continue;  // a single chart covers Kerr
    const auto rep = chart_regularity_probe(bg, w);
    json fits = json::array();
    for (const auto& f : rep.fits) {
      fits.push_back({{"component", f.component},
                      {"exponent", f.exponent},
                      {"expected_exponent", f.expected_exponent},
                      {"coefficient", f.coefficient}});
      worst = std::max(worst, std::abs(f.exponent - f.expected_exponent));
    }
    probes[name] = {{"fits", fits}, {"transition_mismatch", rep.transition_mismatch}, {"ok", rep.ok}};
    worst = std::max(worst, rep.transition_mismatch);
    ok = ok && rep.ok;
  }
  const auto L = identification_lattice(bg);
  o.results["probes"] = probes;
  o.results["generators"] = {{L.first[0], L.first[1]}, {L.second[0], L.second[1]}};
  o.residuals["worst"] = worst;
  o.ok = ok;
  o.verdict = ok ? "regular" : "irregular";
  return o;
}

void add_background(CLI::App* s, RunConfig& c) {
  s->add_option("--background", c.background, "kerr or taubbolt")->capture_default_str();
  s->add_option("--M", c.M, "Kerr mass")->capture_default_str();
  s->add_option("--a", c.a, "Kerr rotation")->capture_default_str();
  s->add_option("--N", c.N, "Taub-bolt nut parameter")->capture_default_str();
  s->add_option("--seed", c.seed, "random seed")->capture_default_str();
  s->add_option("--out", c.out, "json or csv (csv: modescan only)")->capture_default_str();
  s->add_option("--output", c.output, "write the report to this file");
  s->add_flag("--timing", c.timing, "record wall-clock time in runtime_ms");
  s->add_flag("--paper-lattice", c.paper_lattice, "Kerr frequencies omega = Omega + kappa n");
}

void add_mode(CLI::App* s, RunConfig& c, bool lambda) {
  s->add_option("--m", c.m, "azimuthal number")->capture_default_str();
  s->add_option("--omega", c.omega, "frequency (default 0)");
  s->add_option("--n", c.n, "lattice integer, alternative to --omega");
  if (lambda) {
    s->add_option("--Lambda", c.Lambda, "separation constant");
    s->add_option("--lambda-index", c.lambda_index, "index into the angular spectrum (default 0)");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Mode-stability laboratory for Riemannian Kerr and Taub-bolt instantons", "instanton-lab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* np = app.add_subcommand("np-check", "Newman-Penrose commutators, vacuum and Bianchi equations at random points");
  add_background(np, c);
  np->add_option("--points", c.points, "number of random points")->capture_default_str();

  auto* weyl = app.add_subcommand("weyl", "spin coefficients and Weyl scalars at a point");
  add_background(weyl, c);
  weyl->add_option("--r", c.r, "radius")->capture_default_str();
  weyl->add_option("--theta", c.theta, "polar angle")->capture_default_str();

  auto* lat = app.add_subcommand("lattice", "admissibility of (m, omega) under the identifications");
  add_background(lat, c);
  add_mode(lat, c, false);

  auto* ang = app.add_subcommand("angular", "angular separation constants");
  add_background(ang, c);
  add_mode(ang, c, false);
  ang->add_option("--count", c.count, "number of eigenvalues")->capture_default_str();

  auto* rad = app.add_subcommand("radial", "singular points and connection Wronskian of one mode");
  add_background(rad, c);
  add_mode(rad, c, true);
  rad->add_option("--kind", c.kind, "U or Utilde (Taub-bolt)")->capture_default_str();

  auto* cert = app.add_subcommand("certify", "negativity certificate for one mode");
  add_background(cert, c);
  add_mode(cert, c, true);

  auto* scan = app.add_subcommand("modescan", "no-mode scan over a lattice window");
  add_background(scan, c);
  scan->add_option("--m-min", c.m_min, "smallest m")->capture_default_str();
  scan->add_option("--m-max", c.m_max, "largest m")->capture_default_str();
  scan->add_option("--n-min", c.n_min, "smallest lattice integer")->capture_default_str();
  scan->add_option("--n-max", c.n_max, "largest lattice integer")->capture_default_str();
  scan->add_option("--lambda-count", c.lambda_count, "angular eigenvalues per (m, omega)")->capture_default_str();
  scan->add_flag("--exclude-static", c.exclude_static, "skip omega = 0 rows");
  scan->add_option("--threads", c.threads, "worker threads (0: all cores, capped by INSTANTON_LAB_THREADS)")
      ->capture_default_str();

  auto* chart = app.add_subcommand("chart-check", "power-law regularity probes at the axis and the bolt");
  add_background(chart, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (c.out != "json" && c.out != "csv") throw UsageError("--out must be json or csv");
    if (c.out == "csv" && name != "modescan") throw UsageError("csv output is available for modescan only");
    if (name == "np-check") o = cmd_np_check(c);
    else if (name == "weyl") o = cmd_weyl(c);
    else if (name == "lattice") o = cmd_lattice(c);
    else if (name == "angular") o = cmd_angular(c);
    else if (name == "radial") o = cmd_radial(c);
    else if (name == "certify") o = cmd_certify(c);
    else if (name == "modescan") o = cmd_modescan(c);
    else o = cmd_chart_check(c);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::string text;
  if (c.out == "csv") {
    text = o.csv;
  } else {
    json report;
    report["command"] = name;
    report["params"] = o.params;
    report["results"] = o.results;
    report["residuals"] = o.residuals;
    report["verdict"] = o.verdict;
    report["runtime_ms"] = c.timing ? json(ms) : json(nullptr);
    report["version"] = kVersion;
    text = canonical(report);
  }
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << c.output << "\n";
      return 2;
    }
    f << text;
  }
  return o.ok ? 0 : 1;
}

}  // namespace instanton::cli

#include <doctest.h>

#include <cmath>

#include "instanton/errors.hpp"
#include "instanton/radial.hpp"

using namespace instanton;
using doctest::Approx;

TEST_CASE("indicial exponents at the finite singular points") {
  auto tb = Background::taub_bolt(1);
  auto e = indicial_oracle(tb, {0, 3, 0}, 2.0);
  CHECK(e[0].real() == Approx(2).epsilon(1e-12));
  CHECK(e[1].real() == Approx(-2).epsilon(1e-12));
  CHECK(std::abs(indicial_oracle(tb, {0, 1, 0}, 2.0)[0]) < 1e-12);
  CHECK(std::abs(indicial_oracle(tb, {0, 4, 0}, 0.5)[0]) < 1e-12);
  for (double w : {-3.0, -2.0, -1.5, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    for (double Lam : {0.0, 2.5}) {
      const ModeIndex md{w - 1, w, Lam};
      CHECK(std::abs(indicial_oracle(tb, md, 2.0)[0].real() - std::abs(w - 1)) < 1e-10);
      CHECK(std::abs(indicial_oracle(tb, md, 0.5)[0].real() - std::abs(w / 4 - 1)) < 1e-10);
      CHECK(std::abs(indicial_oracle(tb, md, 2.0, RadialKind::Utilde)[0].real() - std::abs(w + 1)) < 1e-10);
      CHECK(std::abs(indicial_oracle(tb, md, 0.5, RadialKind::Utilde)[0].real() - std::abs(w / 4 + 1)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(indicial_oracle(tb, {0, 1, 0}, 3.0), DomainError);

  auto k0 = Background::kerr(1, 0);
  auto sp = singular_points(k0, {0, 0.25, 2});
  REQUIRE(sp.size() == 3);
  CHECK(sp[0].oracle[0].real() == Approx(1.5));
  CHECK(sp[0].paper[0].real() == Approx(3));
  // omega-free parts agree with the closed form at omega = 0 only through the 2(r - M) term
  auto kr = Background::kerr(1, 0.5);
  for (double w : {-0.7, 0.3, 1.0}) {
    for (double m : {-1.0, 0.0, 2.0}) {
      const double W = kr.r_plus - kr.r_minus;
      const double oracle_p = 1 + (2 * kr.M * kr.r_plus * w + kr.a * m) / W;
      const double oracle_m = -1 + (2 * kr.M * kr.r_minus * w + kr.a * m) / W;
      CHECK(indicial_oracle(kr, {m, w, 1}, kr.r_plus)[0].real() == Approx(std::abs(oracle_p)).epsilon(1e-10));
      CHECK(indicial_oracle(kr, {m, w, 1}, kr.r_minus)[0].real() == Approx(std::abs(oracle_m)).epsilon(1e-10));
      if (w == 1.0) {
        const auto s = singular_points(kr, {m, w, 1});
        CHECK(std::abs(s[0].paper[0]) == Approx(std::abs(s[0].oracle[0])).epsilon(1e-10));
      }
    }
  }
  CHECK(sp[2].type == SingularType::IrregularRank1);
  CHECK(singular_points(k0, {0, 0, 2})[2].type == SingularType::Regular);
  CHECK_FALSE(singular_points(tb, {0, 1, 0}, RadialKind::Utilde)[0].paper_available);
}

TEST_CASE("exponents at infinity") {
  auto k0 = Background::kerr(1, 0);
  auto f = infinity_exponents(k0, {0, 0, 2});
  CHECK(f[0].real() == -1.5);
  CHECK(f[0].imag() == Approx(std::sqrt(5.5)));
  CHECK(f[1].imag() == Approx(-std::sqrt(5.5)));
  auto d = infinity_exponents(k0, {0, 0, -3.5});
  CHECK(std::abs(d[0] - d[1]) == 0);
  CHECK_THROWS_AS(infinity_exponents(k0, {0, 1, 2}), std::invalid_argument);
  // the indicial equation after r = 1/u: p (p + 1) - 4 - Lambda = 0 on both backgrounds
  for (double Lam : {0.0, 2.0, 6.0}) {
    auto o = infinity_exponents_oracle(k0, {0, 0, Lam});
    CHECK(o[0].real() == Approx(-0.5 + std::sqrt(4.25 + Lam)));
    CHECK(o[1].real() == Approx(-0.5 - std::sqrt(4.25 + Lam)));
    CHECK(std::abs(o[0].imag()) == 0);
  }
}

TEST_CASE("asymptotic normal solutions") {
  auto k0 = Background::kerr(1, 0);
  auto a = asymptotic_normal_solution(k0, {0, 0.25, 2}, -1);
  CHECK(a.rate == Approx(-0.25));
  CHECK(a.power == Approx(0.5));
  auto tb = Background::taub_bolt(1);
  auto b = asymptotic_normal_solution(tb, {0, 1, 0}, -1);
  CHECK(b.rate == Approx(-0.5));
  CHECK(b.power == Approx(-0.25));
  CHECK(asymptotic_normal_solution(tb, {0, 1, 0}, 1).rate == -b.rate);
  CHECK_THROWS_AS(asymptotic_normal_solution(tb, {0, 0, 0}, -1), std::invalid_argument);

  // the expansion of the equation reproduces the Kerr powers for both signs of omega
  for (double w : {-0.75, -0.25, 0.25, 1.0}) {
    for (int s : {-1, 1}) {
      auto o = asymptotic_oracle(k0, {1, w, 2}, s);
      auto p = asymptotic_normal_solution(k0, {1, w, 2}, s);
      CHECK(o.rate == Approx(p.rate));
      CHECK(o.power == Approx(p.power).epsilon(1e-10));
    }
  }
  // Taub-bolt: the closed form matches the tilded equation; the untilded one differs by 5 omega / 2 + ...
  for (double w : {-2.5, -1.0, 0.5, 1.5}) {
    auto p = asymptotic_normal_solution(tb, {0.5, w, 1}, -1);
    CHECK(asymptotic_oracle(tb, {0.5, w, 1}, -1, RadialKind::Utilde).power == Approx(p.power).epsilon(1e-10));
    const double sg = w > 0 ? 1 : -1;
    CHECK(asymptotic_oracle(tb, {0.5, w, 1}, -1).power == Approx(-1 - sg * (2 + 5 * w / 4)).epsilon(1e-10));
  }
}

TEST_CASE("Liouville form") {
  auto k0 = Background::kerr(1, 0);
  const ModeIndex md{0, 0.25, 2};
  CHECK(liouville_q(k0, md, 3) == Approx(-9.0208333333 / 3 + 1.0 / 9));
  CHECK(liouville_q(k0, md, 3) == Approx(-2.8958333333));
  auto t = liouville_tail(k0, md);
  CHECK(t.q0 == Approx(-0.0625));
  CHECK(t.q1 == Approx(0.75).epsilon(1e-10));
  // q + w^2 = q1 / r + O(r^-2)
  CHECK(std::abs(liouville_q(k0, md, 1e4) + 0.0625) < 1e-4);
  CHECK(std::abs(liouville_q(k0, md, 1e4) - t.q0 - t.q1 / 1e4) < 1e-6);
  auto kr = Background::kerr(1.3, 0.7);
  for (double w : {-1.0, 0.4}) {
    auto tt = liouville_tail(kr, {1, w, 3});
    CHECK(tt.q1 == Approx(-4 * w * (1.3 * w - 1)).epsilon(1e-10));
  }
}

TEST_CASE("Frobenius series") {
  auto tb = Background::taub_bolt(1);
  const ModeIndex md{0, 3, 1.5};
  auto f = frobenius_series(tb, md, 2.0, 2.0, 20);
  CHECK(f.c[0] == 1);
  CHECK(std::abs(frobenius_residual(f, tb, md, 0.01)) < 1e-12);
  auto f5 = frobenius_series(tb, md, 2.0, 2.0, 5), f10 = frobenius_series(tb, md, 2.0, 2.0, 10);
  CHECK(std::abs(frobenius_residual(f5, tb, md, 0.05)) > 1e3 * std::abs(frobenius_residual(f10, tb, md, 0.05)));
  CHECK_THROWS_AS(frobenius_series(tb, md, 2.0, -2.0, 10), DomainError);
  CHECK_THROWS_AS(frobenius_series(tb, md, 2.0, 1.0, 10), std::invalid_argument);
  auto kr = Background::kerr(1, 0.5);
  const ModeIndex mk{1, 0.37, 2};
  const double rho = indicial_oracle(kr, mk, kr.r_plus)[0].real();
  auto g = frobenius_series(kr, mk, kr.r_plus, -rho, 20);
  CHECK(g.rho == Approx(-rho));
  CHECK(std::abs(frobenius_residual(g, kr, mk, 0.01)) < 1e-9 * std::pow(0.01, -rho));
}

TEST_CASE("radial integration") {
  auto tb = Background::taub_bolt(1);
  const ModeIndex md{0, 3, 1.5};
  RadialConfig cfg;
  auto f = frobenius_series(tb, md, 2.0, 2.0, cfg.frobenius_terms);
  std::vector<double> s;
  for (int i = 0; i <= 8; ++i) s.push_back(2.01 + 0.005 * i);
  auto sol = radial_integrate(tb, md, f, 2.2, cfg, s);
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    if (sol.r[i] > 2.05 + 1e-12) continue;
    const auto y = f.evaluate(sol.r[i] - 2.0);
    CHECK(std::abs(sol.R[i] - y[0]) < 1e-8 * std::abs(y[0]));
  }
  // linearity
  auto one = radial_integrate(tb, md, RadialKind::U, 3.0, {1.0, 0.5}, 40.0, cfg, {10.0, 20.0, 40.0});
  auto two = radial_integrate(tb, md, RadialKind::U, 3.0, {2.0, 1.0}, 40.0, cfg, {10.0, 20.0, 40.0});
  for (std::size_t i = 0; i < one.r.size(); ++i) CHECK(std::abs(two.R[i] - 2.0 * one.R[i]) < 1e-12 * std::abs(two.R[i]));

  // Abel identity for the two Frobenius branches at a non-degenerate Kerr point
  auto kr = Background::kerr(1, 0.5);
  const ModeIndex mk{1, 0.37, 2};
  const double rho = indicial_oracle(kr, mk, kr.r_plus)[0].real();
  std::vector<double> grid;
  // beyond r ~ 8 both branches are dominated by e^{|w| r} and Delta W is lost to cancellation
  for (double r = kr.r_plus + 0.05; r < 8; r *= 1.1) grid.push_back(r);
  auto y1 = radial_integrate(kr, mk, frobenius_series(kr, mk, kr.r_plus, rho, 30), 8, cfg, grid);
  auto y2 = radial_integrate(kr, mk, frobenius_series(kr, mk, kr.r_plus, -rho, 30), 8, cfg, grid);
  const cplx w0 = connection_wronskian(y1, y2, grid.front());
  for (double r : grid) CHECK(std::abs(connection_wronskian(y1, y2, r) - w0) < 1e-7 * std::abs(w0));
  CHECK(std::abs(connection_wronskian(y1, y1, 7.0)) == 0);
  CHECK_THROWS_AS(connection_wronskian(y1, one, 7.0), std::invalid_argument);
}

TEST_CASE("connection Wronskian and decaying branch") {
  RadialConfig cfg;
  auto k0 = Background::kerr(1, 0);
  const ModeIndex md{0, 0.25, 2};
  const double rm = 10 * k0.inner();
  std::vector<double> grid{8, 12, 16, rm, 25, 30};
  auto reg = regular_solution(k0, md, RadialKind::U, 30, cfg, grid);
  auto dec = decaying_solution(k0, md, RadialKind::U, 8, cfg, grid);
  const cplx w = connection_wronskian(reg, dec, rm);
  CHECK(std::abs(w) > 1e-3);
  for (double r : grid) CHECK(std::abs(connection_wronskian(reg, dec, r) - w) < 1e-6 * std::abs(w));
  CHECK(relative_wronskian(reg, dec, rm) > 1e-6);
  // Hermite evaluation between samples
  const auto mid = dec.at(14.0);
  auto direct = decaying_solution(k0, md, RadialKind::U, 14.0, cfg, {14.0});
  CHECK(std::abs(mid[0] - direct.R.back()) < 1e-3 * std::abs(direct.R.back()));

  // fitted asymptotics over the last decade
  for (double w0 : {0.25, -0.5}) {
    const ModeIndex m{1, w0, 2};
    const double Rmax = decaying_seed_radius(k0, m);
    std::vector<double> g;
    for (int i = 0; i <= 200; ++i) g.push_back(Rmax / 10 + (Rmax - Rmax / 10) * i / 200.0);
    auto d = decaying_solution(k0, m, RadialKind::U, Rmax / 10, cfg, g);
    auto fit = fit_asymptotic(d, Rmax / 10, Rmax);
    auto ref = asymptotic_normal_solution(k0, m, -1);
    CHECK(fit.rate == Approx(ref.rate).epsilon(0.01));
    CHECK(std::abs(fit.power - ref.power) < 0.05);
  }
}

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>

#include "instanton/errors.hpp"
#include "instanton/stability.hpp"

using namespace instanton;
using doctest::Approx;

TEST_CASE("negativity certificate") {
  auto k0 = Background::kerr(1, 0);
  auto rep = negativity_certificate(k0, {{0, 0.25, 2}});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.certified);
  // U peaks near r = 5 at about -4.75, above U(3) = -9.02
  CHECK(rep.rows[0].sup_u >= potential_u<double>(k0, {0, 0.25, 2}, 3.0));
  CHECK(rep.rows[0].sup_u < 0);
  CHECK(rep.rows[0].tail_infinity_order == 2);
  CHECK(rep.rows[0].tail_infinity == Approx(-0.0625));
  CHECK(rep.identity_residual < 1e-10);
  CHECK(rep.first_term_max < 0);
  CHECK(rep.rows[0].ibp_residual < 1e-8);

  auto tb = Background::taub_bolt(1);
  auto t = negativity_certificate(tb, {{0, 1, 0}});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.certified);
  CHECK(t.rows[0].kind == RadialKind::U);
  CHECK(t.rows[1].kind == RadialKind::Utilde);
  CHECK(t.margin > 0);
  // omega = 1 removes the pole of U at r = 2N; the limit is still negative
  CHECK(t.rows[0].tail_inner_order == 0);

  auto kr = Background::kerr(1, 0.5);
  auto sp = angular_spectrum({kr, 1, kr.kappa - kr.Omega}, 2);
  auto r2 = negativity_certificate(kr, {{1, kr.kappa - kr.Omega, sp[0].Lambda}, {1, kr.kappa - kr.Omega, sp[1].Lambda}});
  CHECK(r2.certified);
  CHECK(r2.lambda_monotone);

  CHECK_THROWS_AS(negativity_certificate(tb, {{0.5, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(negativity_certificate(k0, {{0, 0.25, 3.3}}), std::invalid_argument);
}

TEST_CASE("energy functional") {
  auto k0 = Background::kerr(1, 0);
  const ModeIndex md{0, 0.25, 2};
  RadialSample zero = [](double) { return std::array<cplx, 2>{0.0, 0.0}; };
  CHECK(energy_functional(k0, md, RadialKind::U, zero, 2.1, 50) == 0);
  RadialSample ex = [](double r) { return std::array<cplx, 2>{std::exp(-r), -std::exp(-r)}; };
  const double E = energy_functional(k0, md, RadialKind::U, ex, 2.1, INFINITY);
  CHECK(E > 0);
  // dense midpoint oracle on [2.1, 60]; the remainder is below e^{-100}
  const int n = 2000000;
  const double h = (60 - 2.1) / n;
  double mid = 0;
  for (int i = 0; i < n; ++i) {
    const double r = 2.1 + (i + 0.5) * h, e = std::exp(-2 * r);
    mid += h * (k0.delta(r) * e - potential_u<double>(k0, md, r) * e);
  }
  CHECK(std::abs(E - mid) < 1e-6 * mid);
  CHECK(energy_functional(k0, md, RadialKind::U, ex, 2.1, 5) < energy_functional(k0, md, RadialKind::U, ex, 2.1, 6));
  RadialSample ex3 = [&](double r) { auto y = ex(r); return std::array<cplx, 2>{3.0 * y[0], 3.0 * y[1]}; };
  CHECK(energy_functional(k0, md, RadialKind::U, ex3, 2.1, INFINITY) == Approx(9 * E).epsilon(1e-10));

  auto reg = regular_solution(k0, md, RadialKind::U, 20);
  CHECK(energy_functional(reg) > 0);
}

TEST_CASE("mode scan") {
  auto k0 = Background::kerr(1, 0);
  ScanConfig cfg;
  cfg.lambda_count = 2;
  auto rep = mode_scan(k0, -1, 1, -1, 1, cfg);
  CHECK(rep.rows.size() == 3 * 3 * 2);
  CHECK(rep.verdict == "no modes");
  for (const auto& row : rep.rows) {
    CHECK(row.abs_wronskian > 1e-3);
    CHECK(row.energy > 0);
    if (row.mode.omega == 0) CHECK(row.route == "regular");
  }
  // deterministic ordered merge regardless of thread count
  ScanConfig one = cfg;
  one.threads = 1;
  auto rep1 = mode_scan(k0, -1, 1, -1, 1, one);
  REQUIRE(rep1.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep1.rows[i].wronskian == rep.rows[i].wronskian);
    CHECK(rep1.rows[i].energy == rep.rows[i].energy);
  }
  auto tb = Background::taub_bolt(1);
  ScanConfig tc;
  tc.lambda_count = 1;
  tc.exclude_static = true;
  auto t = mode_scan(tb, 0, 0.5, -1, 1, tc);
  CHECK(t.verdict == "no modes");
  CHECK(t.rows.size() == (3 + 3 - 1) * 2);
}

#include <doctest.h>

#include <cmath>

#include "instanton/np.hpp"

using namespace instanton;
using doctest::Approx;

namespace {
double max_diff(const SpinCoefficientSet& a, const SpinCoefficientSet& b) {
  double m = 0;
  for (int k = 0; k < 12; ++k)
    m = std::max({m, std::abs(a.plain[k] - b.plain[k]), std::abs(a.tilded[k] - b.tilded[k])});
  return m;
}
}  // namespace

TEST_CASE("closed-form spin coefficient values") {
  auto k = spin_coeffs_closed(Background::kerr(1, 0), {0, 3, M_PI / 2, 0});
  CHECK(k(Spin::rho).imag() == Approx(-1 / (3 * std::sqrt(6.0))));
  CHECK(k(Spin::mu) == k(Spin::rho));
  CHECK(std::abs(k(Spin::alpha)) < 1e-15);
  CHECK(std::abs(k(Spin::beta)) < 1e-15);

  auto b = spin_coeffs_closed(Background::taub_bolt(1), {0, 3, M_PI / 4, 0});
  for (Spin s : {Spin::gamma, Spin::epsilon}) {
    CHECK(b(s).imag() == Approx(0.125));
    CHECK(b.tilde(s).imag() == Approx(0.125));
  }
  for (Spin s : {Spin::kappa, Spin::lambda, Spin::mu, Spin::nu, Spin::rho, Spin::sigma}) {
    CHECK(b(s) == 0.0);
    CHECK(b.tilde(s) == 0.0);
  }
  auto b4 = spin_coeffs_closed(Background::taub_bolt(1), {0, 4, M_PI / 2, 0});
  CHECK(b4(Spin::pi).real() == Approx(-0.161015).epsilon(1e-5));
  CHECK(b4(Spin::tau) == b4(Spin::pi));
}

TEST_CASE("tilde map") {
  auto s = spin_coeffs_closed(Background::kerr(1, 0.5), {0, 3, M_PI / 3, 0});
  auto tt = tilde_map(tilde_map(s));
  CHECK(tt.plain == s.plain);
  CHECK(tt.tilded == s.tilded);
  auto t = tilde_map(s);
  const double x = 0.5 * std::cos(M_PI / 3), D = 9 - 6 - 0.25, S = 9 - x * x;
  CHECK(t(Spin::rho).imag() == Approx(-std::sqrt(D / (2 * S)) / (3 + x)));
  CHECK(t(Spin::kappa) == 0.0);
  CHECK(t.tilde(Spin::kappa) == 0.0);
}

TEST_CASE("metric-derived spin coefficients match closed forms") {
  const ChartPoint p{0, 3, M_PI / 3, 0};
  auto bg = Background::kerr(1, 0.5);
  auto e = spin_coeffs_extract(bg, p);
  CHECK(e.fit_residual < 1e-10);
  CHECK(max_diff(e.coeffs, spin_coeffs_closed(bg, p)) < 1e-8);
  CHECK(conjugation_defect(e.coeffs) < 1e-10);
  for (const auto& b : {Background::kerr(1.0, 0.5), Background::kerr(0.7, -1.2), Background::taub_bolt(1.0)})
    for (const auto& q : sample_points(b, 100, 21)) {
      const auto n = spin_coeffs_numeric(b, q);
      CHECK(max_diff(n, spin_coeffs_closed(b, q)) < 1e-8);
      CHECK(conjugation_defect(n) < 1e-10);
    }
}

TEST_CASE("Weyl scalars") {
  auto k = weyl_scalars_numeric(Background::kerr(1, 0.5), {0, 3, M_PI / 3, 0});
  CHECK(k.psi[2].real() == Approx(1 / std::pow(2.75, 3)).epsilon(1e-10));
  CHECK(k.psit[2].real() == Approx(1 / std::pow(3.25, 3)).epsilon(1e-10));
  auto b = weyl_scalars_numeric(Background::taub_bolt(1), {0, 3, 1.0, 0});
  CHECK(b.psi[2].real() == Approx(1.0 / 32).epsilon(1e-10));
  CHECK(b.psit[2].real() == Approx(9.0 / 256).epsilon(1e-10));
  for (const auto& bg : {Background::kerr(1.0, 0.5), Background::taub_bolt(1.0)})
    for (const auto& p : sample_points(bg, 30, 5)) {
      const auto w = weyl_scalars_numeric(bg, p);
      for (int k2 : {0, 1, 3, 4}) {
        CHECK(std::abs(w.psi[k2]) < 1e-9);
        CHECK(std::abs(w.psit[k2]) < 1e-9);
      }
      for (int k2 = 0; k2 < 5; ++k2) {
        CHECK(std::abs(std::conj(w.psi[k2]) - w.psi[4 - k2]) < 1e-10);
        CHECK(std::abs(std::conj(w.psit[k2]) - w.psit[4 - k2]) < 1e-10);
      }
      const double c = std::cos(p.theta);
      if (bg.is_kerr())
        CHECK(w.psi[2].real() * std::pow(p.r - bg.a * c, 3) == Approx(bg.M).epsilon(1e-9));
      else
        CHECK(w.psi[2].real() * 4 * std::pow(p.r - bg.N, 3) == Approx(bg.N).epsilon(1e-9));
    }
}

TEST_CASE("NP residuals") {
  for (const auto& bg : {Background::kerr(1.0, 0.5), Background::taub_bolt(1.0)}) {
    for (const auto& p : sample_points(bg, 20, 9)) {
      const auto rep = np_residuals(bg, p);
      CHECK(rep.entries.size() == 36);
      CHECK(rep.max() < 1e-8);
      CHECK(rep.get("bianchi_deltat_Psi1") < 1e-10);
      CHECK(rep.get("vacuum_D_sigma") == 0.0);
    }
  }
}

TEST_CASE("A1 coefficient vanishes") {
  auto k = a1_identity_check(Background::kerr(1, 0.5), {0, 3, M_PI / 3, 0});
  CHECK(k.residual < 1e-9);
  CHECK(k.tilded_residual < 1e-9);
  auto s = a1_identity_check(Background::kerr(1, 0), {0, 3, 1.1, 0});
  CHECK(s.residual < 1e-12);
  auto t = a1_identity_check(Background::taub_bolt(1), {0, 3, M_PI / 2, 0});
  CHECK(t.tilded_residual < 1e-9);
  CHECK(t.residual < 1e-9);
}

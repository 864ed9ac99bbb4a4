#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "instanton/geometry.hpp"

using namespace instanton;
using doctest::Approx;

TEST_CASE("metric closed-form values") {
  auto k = metric_eval(Background::kerr(1, 0), {0, 3, M_PI / 2, 0});
  CHECK(k.g(1, 1) == Approx(3));
  CHECK(k.g(0, 0) == Approx(1.0 / 3));
  CHECK(k.g(2, 2) == Approx(9));
  CHECK(k.g(3, 3) == Approx(9));
  CHECK(k.g(0, 3) == Approx(0));

  auto b = metric_eval(Background::taub_bolt(1), {0, 3, M_PI / 2, 0});
  CHECK(b.g(1, 1) == Approx(3.2));
  CHECK(b.g(0, 0) == Approx(1.25));
  CHECK(b.g(2, 2) == Approx(8));
  CHECK(b.g(3, 3) == Approx(8));

  CHECK_THROWS_AS(metric_eval(Background::kerr(1, 0), {0, 1.5, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(metric_eval(Background::kerr(1, 0), {0, 3, 0.0, 0}), DomainError);
}

TEST_CASE("metric positive definite and tetrad Gram matrix") {
  for (const auto& bg : {Background::kerr(1.0, 0.5), Background::kerr(2.0, -3.0), Background::taub_bolt(0.7)}) {
    for (const auto& p : sample_points(bg, 1000, 3)) {
      const auto m = metric_eval(bg, p);
      CHECK((m.g - m.g.transpose()).norm() == 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m.g);
      CHECK(es.eigenvalues().minCoeff() > 0);
      const auto G = tetrad_gram(m.g, tetrad_eval(bg, p));
      CHECK((G - tetrad_gram_expected()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("tetrad values") {
  auto e = tetrad_eval(Background::kerr(1, 0), {0, 3, M_PI / 2, 0});
  CHECK(e.l(0).real() == Approx(3 / std::sqrt(6.0)));
  CHECK(e.l(1).imag() == Approx(1 / std::sqrt(6.0)));
  auto b = tetrad_eval(Background::taub_bolt(1), {0, 3, M_PI / 2, 0});
  CHECK(b.m(1).real() == Approx(0.395285).epsilon(1e-6));
  CHECK(b.m(0).imag() == Approx(0.632456).epsilon(1e-6));
}

TEST_CASE("Christoffel symbols") {
  const auto bg = Background::kerr(1, 0);
  const auto G = christoffel_eval(bg, {0, 3, M_PI / 2, 0});
  CHECK(G[1](0, 0) == Approx(-1.0 / 27));
  for (const auto& bgx : {Background::kerr(1.0, 0.5), Background::taub_bolt(1.0)}) {
    for (const auto& p : sample_points(bgx, 20, 11)) {
      const auto jet = metric_jet(bgx, p);
      const auto C = christoffel(jet);
      // nabla_k g_ij = d_k g_ij - G^l_ki g_lj - G^l_kj g_il
      double worst = 0;
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double v = jet.dg[k](i, j);
            for (int l = 0; l < 4; ++l) v -= C[l](k, i) * jet.g(l, j) + C[l](k, j) * jet.g(i, l);
            worst = std::max(worst, std::abs(v));
          }
      CHECK(worst < 1e-9);
      for (int l = 0; l < 4; ++l) CHECK((C[l] - C[l].transpose()).norm() == 0.0);
    }
  }
}

TEST_CASE("background constants and lattice") {
  auto k = Background::kerr(1, 0.5);
  CHECK(k.kappa == Approx(0.263932).epsilon(1e-6));
  CHECK(k.Omega == Approx(0.118034).epsilon(1e-6));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> um(0.1, 5), ua(-5, 5);
  for (int i = 0; i < 100; ++i) {
    auto bg = Background::kerr(um(rng), ua(rng));
    const double scale = bg.r_plus * bg.r_plus;
    CHECK(std::abs(bg.r_plus * bg.r_plus - 2 * bg.M * bg.r_plus - bg.a * bg.a) < 1e-12 * scale);
    CHECK(std::abs(bg.r_minus * bg.r_minus - 2 * bg.M * bg.r_minus - bg.a * bg.a) < 1e-12 * scale);
    CHECK(2 * bg.M * bg.r_plus * bg.kappa == Approx(std::sqrt(bg.M * bg.M + bg.a * bg.a)));
  }
  auto L = identification_lattice(Background::kerr(1, 0));
  CHECK(L.first[0] == Approx(8 * M_PI));
  CHECK(L.first[1] == 0.0);
  CHECK(L.second[1] == Approx(2 * M_PI));
  auto T = identification_lattice(Background::taub_bolt(1));
  CHECK(T.first[0] == Approx(4 * M_PI));
  CHECK(T.second[0] == Approx(2 * M_PI));
  CHECK(T.second[1] == Approx(2 * M_PI));
  auto tb = Background::taub_bolt(1.3);
  CHECK(tb.delta(2.6) == 0.0);
  CHECK(tb.delta(0.65) == 0.0);
}

TEST_CASE("chart regularity probes") {
  for (const auto& bg : {Background::kerr(1, 0), Background::kerr(1, 0.5)}) {
    auto bolt = chart_regularity_probe(bg, ChartProbe::Bolt);
    CHECK(bolt.ok);
    CHECK(bolt.fits[0].exponent == Approx(2).epsilon(1e-3));
    auto axis = chart_regularity_probe(bg, ChartProbe::Axis);
    CHECK(axis.ok);
    CHECK(axis.fits[0].exponent == Approx(2).epsilon(1e-3));
    CHECK_THROWS(chart_regularity_probe(bg, ChartProbe::Transition));
  }
  auto tb = Background::taub_bolt(1);
  auto tr = chart_regularity_probe(tb, ChartProbe::Transition);
  CHECK(tr.ok);
  CHECK(tr.transition_mismatch < 1e-10);
  CHECK(chart_regularity_probe(tb, ChartProbe::Bolt).ok);
  CHECK(chart_regularity_probe(tb, ChartProbe::Axis).ok);
}

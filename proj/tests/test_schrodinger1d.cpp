#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "deltaprime/schrodinger1d.hpp"

using namespace dp;

TEST_CASE("comparison operator spec") {
  auto line = CurvatureProfile::line();
  auto spec = build_comparison_operator(line, 10.0, 256);
  CHECK(spec.W(1.0) == 0.0);
  CHECK(spec.c_kin == 1.0);

  auto bump = CurvatureProfile::gaussian_bump(0.5);
  auto specb = build_comparison_operator(bump, 10.0, 256);
  CHECK(specb.W(0.0) == doctest::Approx(-0.0625).epsilon(1e-14));

  auto two = CurvatureProfile::two_bump(0.4, 3.0);
  auto spect = build_comparison_operator(two, 10.0, 256);
  const double g3 = two.gamma(3.0);
  CHECK(spect.W(3.0) == doctest::Approx(-g3 * g3 / 4.0).epsilon(1e-14));
  CHECK(spect.W(-3.0) == doctest::Approx(spect.W(3.0)).epsilon(1e-14));
}

TEST_CASE("bracket operator spec") {
  auto bump = CurvatureProfile::gaussian_bump(0.5);
  const auto& b = bump.bounds();
  // a = 0.05, gamma_max = 0.5: kinetic coefficients (1 -+ 0.025)^-2
  auto sp = build_bracket_operator(BracketSign::Plus, bump, b, 0.05, 10.0, 256);
  auto sm = build_bracket_operator(BracketSign::Minus, bump, b, 0.05, 10.0, 256);
  CHECK(std::abs(sp.c_kin - 1.0 / (0.975 * 0.975)) < 1e-12);
  CHECK(std::abs(sm.c_kin - 1.0 / (1.025 * 1.025)) < 1e-12);
  CHECK_THROWS_AS(
      build_bracket_operator(BracketSign::Plus, bump, b, 1.1, 10.0, 256),
      ParameterError);

  // a -> 0 limit reduces to the comparison operator
  auto s0 = build_bracket_operator(BracketSign::Plus, bump, b, 1e-12, 10.0, 256);
  auto sc = build_comparison_operator(bump, 10.0, 256);
  CHECK(std::abs(s0.c_kin - 1.0) < 1e-11);
  CHECK(std::abs(s0.W(0.4) - sc.W(0.4)) < 1e-11);
}

TEST_CASE("free operator has no negative spectrum") {
  auto line = CurvatureProfile::line();
  auto spec = build_comparison_operator(line, 12.0, 512);
  auto sp = lowest_eigenvalues_1d(spec, 3, true, false);
  CHECK(sp.eigenvalues.empty());
  CHECK(sp.count_capped);
}

TEST_CASE("bump ground state against a dense independent solve") {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  auto spec = build_comparison_operator(bump, 40.0, 1024);
  auto sp = lowest_eigenvalues_1d(spec, 1, true, true, 1e-9);
  REQUIRE(sp.eigenvalues.size() == 1);
  const auto& mu1 = sp.eigenvalues[0];
  CHECK(mu1.value < 0.0);

  // dense oracle on an independent grid (different n, dense eigensolver)
  const double L = 40.0;
  const int n = 1700;
  const double h = 2 * L / n;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const double s = -L + (i + 1) * h;
    const double g = bump.gamma(s);
    D(i, i) = 2.0 / (h * h) - 0.25 * g * g;
    if (i > 0) {
      D(i, i - 1) = -1.0 / (h * h);
      D(i - 1, i) = -1.0 / (h * h);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  const double dense_mu1 = es.eigenvalues()(0);
  const double dense_err = 2e-1 * h * h;  // second-order bar for the dense grid
  CHECK(std::abs(mu1.value - dense_mu1) <
        dense_err + mu1.err_disc + mu1.err_trunc + 1e-9);
}

TEST_CASE("Richardson order of the 1D solver") {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  const double L = 60.0;
  double vals[3];
  int idx = 0;
  for (int n : {1024, 2048, 4096}) {
    auto spec = build_comparison_operator(bump, L, n);
    vals[idx++] = eigenvalues_1d_raw(spec, 1, 0.0).at(0);
  }
  const double order = std::log2(std::abs(vals[0] - vals[1]) / std::abs(vals[1] - vals[2]));
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("Dirichlet truncation converges from above") {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  double prev = 1e9;
  for (double L : {15.0, 30.0, 60.0}) {
    const int n = static_cast<int>(64 * L);
    auto spec = build_comparison_operator(bump, L, n);
    auto sp = lowest_eigenvalues_1d(spec, 1, true, false);
    REQUIRE(sp.eigenvalues.size() == 1);
    CHECK(sp.eigenvalues[0].value <= prev + 1e-10);
    prev = sp.eigenvalues[0].value;
  }
}

TEST_CASE("bound state exists for every non-straight built-in") {
  for (auto prof : {CurvatureProfile::gaussian_bump(0.5),
                    CurvatureProfile::gaussian_bump(1.0),
                    CurvatureProfile::two_bump(0.4, 3.0)}) {
    auto spec = build_comparison_operator(prof, 30.0, 1024);
    auto sp = lowest_eigenvalues_1d(spec, 1, true, true, 1e-8);
    REQUIRE(!sp.eigenvalues.empty());
    CHECK(sp.eigenvalues[0].value < 0.0);
  }
}

TEST_CASE("lemma long check") {
  // straight line: all differences vanish
  auto line = CurvatureProfile::line();
  auto lr = lemma_long_check(line, line.bounds(), {0.08, 0.04}, 1);
  CHECK(lr.C == 0.0);

  // bump c = 1: single constant, stable within a factor 2, differences
  // decreasing at least linearly in a
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  auto res = lemma_long_check(bump, bump.bounds(), {0.08, 0.04, 0.02}, 1);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.stability_ratio < 2.0);
  CHECK(res.C > 0.0);
  for (const auto& row : res.rows) {
    CHECK(row.diff_plus <= res.C * row.a * row.j * row.j * (1 + 1e-12));
    CHECK(row.diff_minus <= res.C * row.a * row.j * row.j * (1 + 1e-12));
  }
  // linear-in-a decrease along the halving sequence
  CHECK(res.rows[1].diff_plus < 0.75 * res.rows[0].diff_plus);
  CHECK(res.rows[2].diff_plus < 0.75 * res.rows[1].diff_plus);
}

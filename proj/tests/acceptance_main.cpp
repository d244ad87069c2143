// Acceptance suite: one quantitative check per criterion, each printing a
// single [PASS]/[FAIL] line with the measured numbers.  Run with a criterion
// number 1..7 as the only argument, or with no argument for all.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "deltaprime/bracketing.hpp"

using namespace dp;

namespace {

const double kPi = std::acos(-1.0);
int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- criterion 1: straight-line spectrum ----------------------------------
void criterion1() {
  auto line = CurvatureProfile::line();
  bool pass = true;
  std::string detail;
  for (double beta : {1.0, 0.5, 0.1}) {
    const double a = 3.0 * beta;
    const double L = 4.0;
    const double tplus = transverse_eigenvalue_dirichlet(a, beta).t;
    const double expected = tplus + std::pow(kPi / (2.0 * L), 2);
    auto ext = solve2d_extrapolated(line, a, 1.0 / beta, L, 160, 72, FormKind::QPlus);
    const double rel = std::abs(ext.value - expected) / std::abs(expected);

    auto thr = ess_threshold_bound(line, beta, 8.0, a);
    const double env = 16.0 / (beta * beta) * std::exp(-4.0 * a / beta);
    const double thr_err = std::abs(thr.best_bound - (-4.0 / (beta * beta)));
    // slack covers the cancellation rounding of (bound + 4/b^2) at 4/b^2 scale
    const bool ok = rel < 1e-5 && thr_err <= env + 1e-11 * 4.0 / (beta * beta);
    pass = pass && ok;
    detail += "beta=" + fmt(beta) + ": rel_err=" + fmt(rel) +
              ", thr_err/env=" + fmt(thr_err / env) + "; ";
  }
  report(1, pass, "straight-line spectrum vs t_+ + (pi/2L)^2 at 1e-5 relative", detail);
}

// --- criterion 2: transverse envelope on a log grid ------------------------
void criterion2() {
  const double gamma_plus = 1.0;
  bool pass = true;
  double worst_env = 0.0, worst_agree = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double beta = 0.02 * std::pow(0.5 / 0.02, i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double ratio = 5.0 * std::pow(16.0 / 5.0, j / 9.0);
      const double a = ratio * beta;
      const double center = -4.0 / (beta * beta);
      const double fp_slack = 1e-13 * std::abs(center);
      auto env = lemma_trans_envelope(a, beta);
      auto tp = transverse_eigenvalue_dirichlet(a, beta);
      auto tm = transverse_eigenvalue_robin(a, beta, gamma_plus);
      if (!(tm.t <= center + fp_slack && center <= tp.t + fp_slack &&
            tp.t <= env.second + fp_slack && tm.t >= env.first - fp_slack))
        pass = false;
      worst_env = std::max(worst_env,
                           std::max(tp.t - env.second, env.first - tm.t) / std::abs(center));
      // oracle agreement after Richardson extrapolation (Dirichlet side and
      // Robin side at the wall coefficient)
      if (j % 3 == 0) {
        TransverseProblem p;
        p.a = a;
        p.beta = beta;
        auto c1 = transverse_fd_oracle(p, 512);
        auto c2 = transverse_fd_oracle(p, 1024);
        const double ext = (4.0 * c2.eigenvalue.t - c1.eigenvalue.t) / 3.0;
        const double agree = std::abs(ext - tp.t) / std::abs(tp.t);
        worst_agree = std::max(worst_agree, agree);
        if (agree > 1e-6 || c2.negative_count != 1) pass = false;
        p.bc = TransverseBc::Robin;
        p.gamma_plus = gamma_plus;
        auto r1 = transverse_fd_oracle(p, 512);
        auto r2 = transverse_fd_oracle(p, 1024);
        const double extr = (4.0 * r2.eigenvalue.t - r1.eigenvalue.t) / 3.0;
        const double agree_r = std::abs(extr - tm.t) / std::abs(tm.t);
        worst_agree = std::max(worst_agree, agree_r);
        if (agree_r > 1e-6 || r2.negative_count != 1) pass = false;
      }
    }
  }
  report(2, pass, "transverse envelope on 10x10 log grid, transcendental vs oracle",
         "worst envelope excess (rel to 4/b^2) = " + fmt(worst_env) +
             ", worst oracle agreement = " + fmt(worst_agree));
}

// --- criterion 3: longitudinal envelope |mu_j± - mu_j| <= C a --------------
void criterion3() {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  auto res = lemma_long_check(bump, bump.bounds(), {0.08, 0.04, 0.02}, 1);
  const bool pass = res.stability_ratio < 2.0 && res.C > 0.0;
  std::string detail = "C=" + fmt(res.C) + ", per-a stability=" + fmt(res.stability_ratio);
  for (const auto& row : res.rows)
    detail += "; a=" + fmt(row.a) + ": d+=" + fmt(row.diff_plus) + " d-=" + fmt(row.diff_minus);
  report(3, pass, "|mu_1^pm(a) - mu_1| <= C a with C stable within factor 2", detail);
}

// --- criterion 4: strong-coupling sandwich and residual law ----------------
void criterion4() {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  AsymptoticsOptions opts;
  opts.direct = true;
  opts.ns = 1500;
  opts.m_per_side = 80;
  opts.L = 48.0;
  auto st = asymptotics_study(bump, {0.06, 0.04, 0.02}, 1, opts);

  bool sandwich = true;
  std::string detail;
  for (const auto& row : st.rows) {
    if (!row.lambda_minus) continue;
    const double tol = (row.lambda_err ? *row.lambda_err : 0.0) + 1e-6;
    const bool ok = row.lower - tol <= *row.lambda_minus &&
                    *row.lambda_minus <= *row.lambda_plus + tol &&
                    *row.lambda_plus <= row.upper + tol;
    sandwich = sandwich && ok;
    detail += "beta=" + fmt(row.beta) + ": [" + fmt(row.lower) + ", " + fmt(*row.lambda_minus) +
              ", " + fmt(*row.lambda_plus) + ", " + fmt(row.upper) + "], ratio=" +
              fmt(row.ratio) + "; ";
  }
  const bool stability = st.stability < 2.0;
  report(4, sandwich && stability,
         "sandwich t_- + mu_1^- <= lambda_1^- <= lambda_1^+ <= t_+ + mu_1^+ and "
         "|lambda_1^pm + 4/b^2 - mu_1|/(b|ln b|) stable within factor 2",
         detail + "ratio stability=" + fmt(st.stability));
}

// --- criterion 5: threshold limit ------------------------------------------
void criterion5() {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  const double beta = 0.02;
  auto thr = ess_threshold_bound(bump, beta, 64.0, halfwidth_schedule(beta));
  const double ratio = thr.bound * beta * beta / (-4.0);
  const bool pass = ratio >= 0.999 && ratio <= 1.001;
  report(5, pass, "certified threshold * beta^2/(-4) within [0.999, 1.001] at beta=0.02",
         "ratio=" + fmt(ratio) + ", bound=" + fmt(thr.bound));
}

// --- criterion 6: bound-state existence certificate ------------------------
void criterion6() {
  auto bump = CurvatureProfile::gaussian_bump(1.0);
  const double beta = 0.05;
  auto bs = bracket_spectrum(bump, beta, 1);
  auto thr = ess_threshold_bound(bump, beta, 64.0, bs.a);
  const double mu1 = bs.mu.eigenvalues.empty() ? 0.0 : bs.mu.eigenvalues[0].value;
  bool pass = false;
  std::string detail;
  if (bs.records.empty()) {
    detail = "no discrete bracket record available";
  } else {
    const double upper = bs.records[0].upper;
    pass = upper < thr.best_bound - 0.5 * std::abs(mu1);
    detail = "upper=" + fmt(upper) + ", threshold=" + fmt(thr.best_bound) +
             ", needed margin=" + fmt(0.5 * std::abs(mu1)) +
             ", actual margin=" + fmt(thr.best_bound - upper);
  }
  report(6, pass, "upper bracket below the certified threshold by 0.5|mu_1| at beta=0.05",
         detail);
}

// --- criterion 7: cross-oracle and invariant suites -------------------------
void criterion7() {
  bool pass = true;
  std::string detail;

  // curvature round trip at 1e-8 (positions-only finite-difference oracle)
  {
    double worst = 0.0;
    for (auto prof : {CurvatureProfile::gaussian_bump(0.5), CurvatureProfile::gaussian_bump(1.0),
                      CurvatureProfile::two_bump(0.4, 3.0)}) {
      auto c = curve_from_curvature(prof, 12.0);
      for (double s = -9.0; s <= 9.0; s += 0.75) {
        const double h = 1e-3;
        auto p = [&](double x, int comp) { return c.point(x)[comp]; };
        const double d1x = (-p(s + 2 * h, 0) + 8 * p(s + h, 0) - 8 * p(s - h, 0) + p(s - 2 * h, 0)) / (12 * h);
        const double d1y = (-p(s + 2 * h, 1) + 8 * p(s + h, 1) - 8 * p(s - h, 1) + p(s - 2 * h, 1)) / (12 * h);
        const double d2x = (-p(s + 2 * h, 0) + 16 * p(s + h, 0) - 30 * p(s, 0) + 16 * p(s - h, 0) - p(s - 2 * h, 0)) / (12 * h * h);
        const double d2y = (-p(s + 2 * h, 1) + 16 * p(s + h, 1) - 30 * p(s, 1) + 16 * p(s - h, 1) - p(s - 2 * h, 1)) / (12 * h * h);
        worst = std::max(worst, std::abs(d2x * d1y - d1x * d2y - prof.gamma(s)));
      }
    }
    if (worst > 1e-8) pass = false;
    detail += "roundtrip=" + fmt(worst);
  }

  // potential sandwich at 1e-12 slack
  {
    double worst = 0.0;
    for (auto prof : {CurvatureProfile::gaussian_bump(0.5), CurvatureProfile::gaussian_bump(1.0),
                      CurvatureProfile::two_bump(0.4, 3.0)}) {
      const double a = 0.25 / prof.bounds().gamma_max;
      auto br = bracket_potentials(prof.bounds(), prof, a);
      for (int i = 0; i <= 400; ++i) {
        const double s = -10.0 + 20.0 * i / 400;
        for (int j = 0; j <= 40; ++j) {
          const double u = -a + 2 * a * j / 40;
          const double V = geometric_potential(prof, s, u);
          worst = std::max({worst, br.minus(s) - V, V - br.plus(s)});
        }
      }
    }
    if (worst > 1e-12) pass = false;
    detail += ", sandwich excess=" + fmt(worst);
  }

  // gamma-sign reflection invariance of the 2D spectra
  {
    auto plus = CurvatureProfile::gaussian_bump(0.6);
    auto minus = CurvatureProfile::custom(
        [](double s) { return -0.6 * std::exp(-s * s); },
        [](double s) { return 1.2 * s * std::exp(-s * s); },
        [](double s) { return -0.6 * (4 * s * s - 2) * std::exp(-s * s); }, plus.bounds(),
        true);
    double worst = 0.0;
    for (auto which : {FormKind::QPlus, FormKind::QMinus}) {
      auto e1 = lowest_eigenvalues_2d(assemble_form(plus, 0.8, 2.0, 10.0, 160, 24, which), 1);
      auto e2 = lowest_eigenvalues_2d(assemble_form(minus, 0.8, 2.0, 10.0, 160, 24, which), 1);
      worst = std::max(worst, std::abs(e1.values[0] - e2.values[0]) / std::abs(e1.values[0]));
    }
    if (worst > 1e-7) pass = false;
    detail += ", reflection=" + fmt(worst);
  }

  // transverse s-independence at 1e-8
  {
    TransverseProblem p;
    p.a = 3.0;
    p.beta = 1.0;
    p.gamma_s = 0.0;
    const double t0 = transverse_fd_oracle(p, 2048).eigenvalue.t;
    double worst = 0.0;
    for (double gs : {-1.0, -0.3, 0.3, 1.0}) {
      p.gamma_s = gs;
      worst = std::max(worst, std::abs(transverse_fd_oracle(p, 2048).eigenvalue.t - t0));
    }
    if (worst > 1e-8) pass = false;
    detail += ", s-independence=" + fmt(worst);
  }

  // Richardson orders 2.0 +- 0.1 throughout
  {
    // transverse oracle order
    auto exact = transverse_eigenvalue_dirichlet(2.5, 1.0);
    TransverseProblem p;
    p.a = 2.5;
    p.beta = 1.0;
    const double e1 = std::abs(transverse_fd_oracle(p, 512).eigenvalue.t - exact.t);
    const double e2 = std::abs(transverse_fd_oracle(p, 1024).eigenvalue.t - exact.t);
    const double order_t = std::log2(e1 / e2);
    // longitudinal solver order
    auto bump = CurvatureProfile::gaussian_bump(1.0);
    double v[3];
    int idx = 0;
    for (int n : {1024, 2048, 4096})
      v[idx++] = eigenvalues_1d_raw(build_comparison_operator(bump, 60.0, n), 1, 0.0).at(0);
    const double order_1d = std::log2(std::abs(v[0] - v[1]) / std::abs(v[1] - v[2]));
    // 2D free-strip order
    auto line = CurvatureProfile::line();
    auto study = convergence_study(line, 1.0, 0.0, 2.0, 24, 8, FormKind::QPlus, 3, 1);
    const double order_2d = study.observed_order[0];
    const bool ok = std::abs(order_t - 2.0) <= 0.1 && std::abs(order_1d - 2.0) <= 0.1 &&
                    std::abs(order_2d - 2.0) <= 0.1;
    if (!ok) pass = false;
    detail += ", orders=" + fmt(order_t) + "/" + fmt(order_1d) + "/" + fmt(order_2d);
  }

  report(7, pass, "cross-oracle and invariant suites", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const int which = argc > 1 ? std::atoi(argv[1]) : 0;
  using Fn = void (*)();
  Fn criteria[] = {criterion1, criterion2, criterion3, criterion4,
                   criterion5, criterion6, criterion7};
  if (which >= 1 && which <= 7) {
    criteria[which - 1]();
  } else {
    for (Fn f : criteria) f();
  }
  return g_failures == 0 ? 0 : 1;
}

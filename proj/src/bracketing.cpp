#include "deltaprime/bracketing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>

namespace dp {

double halfwidth_schedule(double beta, bool* regime_ok) {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw ParameterError("halfwidth_schedule: requires 0 < beta < 1");
  const double a = -0.75 * beta * std::log(beta);
  if (regime_ok) *regime_ok = a / beta > 2.0;
  return a;
}

namespace {

// longitudinal truncation: decay window plus a few lengths of the slowest
// expected bound-state decay
double choose_L(const CurvatureProfile& profile) {
  if (profile.is_line()) return 8.0;
  const double Sdec = profile.decay_window(1e-10);
  const double depth = 0.25 * profile.bounds().gamma_max * profile.bounds().gamma_max;
  // shallow-well estimate of |mu_1| for the decay rate floor
  const double kappa_est = std::max(0.05, 0.25 * depth);
  return Sdec + std::min(12.0 / kappa_est, 400.0);
}

}  // namespace

BracketedSpectrum bracket_spectrum(const CurvatureProfile& profile, double beta, int k,
                                   const BracketOptions& opts) {
  if (k < 1) throw ParameterError("bracket_spectrum: k >= 1");
  BracketedSpectrum out;
  out.beta = beta;
  out.a = halfwidth_schedule(beta, &out.regime);
  if (!out.regime && !opts.allow_below_regime)
    throw RegimeError("bracket_spectrum: beta outside the Lemma regime (a/beta <= 2)");

  const auto& bounds = profile.bounds();
  if (!(out.a * bounds.gamma_max < 0.5))
    throw ParameterError("bracket_spectrum: a(beta)*gamma_max >= 1/2");

  out.t_plus = transverse_eigenvalue_dirichlet(out.a, beta, opts.allow_below_regime);
  out.t_minus =
      transverse_eigenvalue_robin(out.a, beta, bounds.gamma_max, opts.allow_below_regime);

  const double pred_base = -4.0 / (beta * beta);
  if (profile.is_line()) {
    out.count_capped = true;  // no negative mu_j exist
    return out;
  }

  const double L = opts.L > 0.0 ? opts.L : choose_L(profile);
  const int n = opts.n > 0 ? opts.n : std::max(512, static_cast<int>(48 * L));

  out.mu = lowest_eigenvalues_1d(build_comparison_operator(profile, L, n), k, true,
                                 opts.L <= 0.0, 1e-9);
  out.mu_plus = lowest_eigenvalues_1d(
      build_bracket_operator(BracketSign::Plus, profile, bounds, out.a, L, n), k, false,
      opts.L <= 0.0, 1e-9);
  out.mu_minus = lowest_eigenvalues_1d(
      build_bracket_operator(BracketSign::Minus, profile, bounds, out.a, L, n), k, false,
      opts.L <= 0.0, 1e-9);

  const size_t avail = std::min({out.mu.eigenvalues.size(), out.mu_plus.eigenvalues.size(),
                                 out.mu_minus.eigenvalues.size()});
  out.count_capped = static_cast<int>(avail) < k;
  for (size_t j = 0; j < avail; ++j) {
    BracketIndexRecord rec;
    rec.j = static_cast<int>(j) + 1;
    rec.lower = out.t_minus.t + out.mu_minus.eigenvalues[j].value;
    rec.upper = out.t_plus.t + out.mu_plus.eigenvalues[j].value;
    rec.prediction = pred_base + out.mu.eigenvalues[j].value;
    out.records.push_back(rec);
  }
  return out;
}

EssentialThresholdBound ess_threshold_bound(const CurvatureProfile& profile, double beta,
                                            double tau, double a,
                                            bool allow_below_regime) {
  if (!(beta > 0.0) || !(a > 0.0) || !(tau >= 0.0))
    throw ParameterError("ess_threshold_bound: invalid parameters");
  if (!allow_below_regime && !(a / beta > 2.0))
    throw RegimeError("ess_threshold_bound: a/beta <= 2");
  EssentialThresholdBound out;
  out.beta = beta;
  out.tau = tau;
  out.a = a;
  const double trans = -4.0 / (beta * beta) - (16.0 / (beta * beta)) * std::exp(-4.0 * a / beta);
  out.v_tau = v_tau(profile, a, tau);
  out.bound = out.v_tau + trans;
  out.best_bound = out.bound;
  out.best_tau = tau;
  for (double t = 1.0; t <= 64.0; t *= 2.0) {
    const double b = v_tau(profile, a, t) + trans;
    if (b > out.best_bound) {
      out.best_bound = b;
      out.best_tau = t;
    }
  }
  return out;
}

AsymptoticsStudy asymptotics_study(const CurvatureProfile& profile,
                                   const std::vector<double>& betas, int k,
                                   const AsymptoticsOptions& opts) {
  if (betas.empty() || k < 1)
    throw ParameterError("asymptotics_study: need betas and k >= 1");

  struct CaseResult {
    BracketedSpectrum spec;
    std::vector<std::array<double, 3>> direct;  // per j: lambda-, lambda+, err
  };

  auto run_case = [&](double beta) -> CaseResult {
    CaseResult cr;
    BracketOptions bo;
    bo.allow_below_regime = opts.allow_below_regime;
    bo.L = opts.L;
    cr.spec = bracket_spectrum(profile, beta, k, bo);
    if (opts.direct && !profile.is_line()) {
      const double L = opts.L > 0.0 ? opts.L : choose_L(profile);
      for (const auto& rec : cr.spec.records) {
        if (rec.j > 1) break;  // direct solves target the ground state
        auto em = solve2d_extrapolated(profile, cr.spec.a, 1.0 / beta, L, opts.ns,
                                       opts.m_per_side, FormKind::QMinus);
        auto ep = solve2d_extrapolated(profile, cr.spec.a, 1.0 / beta, L, opts.ns,
                                       opts.m_per_side, FormKind::QPlus);
        cr.direct.push_back({em.value, ep.value, std::max(em.err_est, ep.err_est)});
      }
    }
    return cr;
  };

  std::vector<CaseResult> results(betas.size());
  if (opts.jobs > 1) {
    std::vector<std::future<CaseResult>> futs;
    futs.reserve(betas.size());
    for (double b : betas)
      futs.push_back(std::async(std::launch::async, run_case, b));
    for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < betas.size(); ++i) results[i] = run_case(betas[i]);
  }

  AsymptoticsStudy study;
  study.ratio_min = std::numeric_limits<double>::infinity();
  study.ratio_max = 0.0;
  double log_sum = 0.0;
  int log_count = 0;
  for (size_t i = 0; i < betas.size(); ++i) {
    const double beta = betas[i];
    const double blb = beta * std::abs(std::log(beta));
    const auto& cr = results[i];
    if (cr.spec.records.empty()) {
      // straight line: residuals against the bare transverse prediction
      AsymptoticsRow row;
      row.beta = beta;
      row.a = cr.spec.a;
      row.j = 0;
      row.prediction = -4.0 / (beta * beta);
      row.lower = cr.spec.t_minus.t;
      row.upper = cr.spec.t_plus.t;
      row.residual = std::max(std::abs(cr.spec.t_minus.t - row.prediction),
                              std::abs(cr.spec.t_plus.t - row.prediction));
      row.ratio = row.residual / blb;
      study.rows.push_back(row);
      continue;
    }
    for (size_t jr = 0; jr < cr.spec.records.size(); ++jr) {
      const auto& rec = cr.spec.records[jr];
      AsymptoticsRow row;
      row.beta = beta;
      row.a = cr.spec.a;
      row.j = rec.j;
      row.lower = rec.lower;
      row.upper = rec.upper;
      row.prediction = rec.prediction;
      const double mu_j = rec.prediction + 4.0 / (beta * beta);
      // residual against both bracket endpoints and, when available, the
      // direct solves; the acceptance law uses the worst of them
      double r = std::max(std::abs(rec.lower - rec.prediction),
                          std::abs(rec.upper - rec.prediction));
      if (jr < cr.direct.size()) {
        row.lambda_minus = cr.direct[jr][0];
        row.lambda_plus = cr.direct[jr][1];
        row.lambda_err = cr.direct[jr][2];
        const double rm = std::abs(cr.direct[jr][0] + 4.0 / (beta * beta) - mu_j);
        const double rp = std::abs(cr.direct[jr][1] + 4.0 / (beta * beta) - mu_j);
        r = std::max(rm, rp);
      }
      row.residual = r;
      row.ratio = r / blb;
      study.rows.push_back(row);
      if (rec.j == 1) {
        study.ratio_min = std::min(study.ratio_min, row.ratio);
        study.ratio_max = std::max(study.ratio_max, row.ratio);
        if (row.ratio > 0.0) {
          log_sum += std::log(row.ratio);
          ++log_count;
        }
      }
    }
  }
  if (log_count > 0) study.fitted_C = std::exp(log_sum / log_count);
  if (study.ratio_min > 0.0 && std::isfinite(study.ratio_min))
    study.stability = study.ratio_max / study.ratio_min;
  return study;
}

}  // namespace dp

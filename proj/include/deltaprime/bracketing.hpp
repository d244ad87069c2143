#pragma once

#include <optional>
#include <vector>

#include "deltaprime/curve.hpp"
#include "deltaprime/schrodinger1d.hpp"
#include "deltaprime/strip2d.hpp"
#include "deltaprime/transverse.hpp"

namespace dp {

/// Strong-coupling half-width schedule a(beta) = -(3/4) beta ln(beta).
/// Requires 0 < beta < 1; `regime_ok` (when given) reports whether
/// a/beta > 2, i.e. beta < exp(-8/3).
double halfwidth_schedule(double beta, bool* regime_ok = nullptr);

struct BracketIndexRecord {
  int j = 0;                    ///< 1-based index
  double lower = 0.0;           ///< t_- + mu_j^-(a)
  double upper = 0.0;           ///< t_+ + mu_j^+(a)
  double prediction = 0.0;      ///< -4/beta^2 + mu_j
  std::optional<double> lambda_minus, lambda_plus;  ///< direct 2D solves when computed
  std::optional<double> lambda_err;  ///< extrapolation error bar of the direct solves
  double residual = 0.0;        ///< worst |lambda + 4/beta^2 - mu_j| over computed lambdas
};

struct BracketedSpectrum {
  double beta = 0.0, a = 0.0;
  bool regime = false;
  TransverseEigenvalue t_minus, t_plus;
  Spectrum1D mu;        ///< comparison operator eigenvalues
  Spectrum1D mu_plus;   ///< U_a^+ eigenvalues
  Spectrum1D mu_minus;  ///< U_a^- eigenvalues
  std::vector<BracketIndexRecord> records;
  bool count_capped = false;
};

struct BracketOptions {
  double L = 0.0;       ///< 0: choose from the decay window and |mu_1|
  int n = 0;            ///< 0: choose from L
  bool allow_below_regime = false;
};

/// Separable bracket spectrum at a = halfwidth_schedule(beta): transverse
/// eigenvalues combined with the longitudinal 1D spectra, plus the
/// strong-coupling prediction from the comparison operator.
BracketedSpectrum bracket_spectrum(const CurvatureProfile& profile, double beta, int k,
                                   const BracketOptions& opts = {});

struct EssentialThresholdBound {
  double beta = 0.0, tau = 0.0, a = 0.0;
  double v_tau = 0.0;
  double bound = 0.0;       ///< V_tau - 4/beta^2 - (16/beta^2) exp(-4a/beta)
  double best_bound = 0.0;  ///< sup of the bound over the geometric tau-grid
  double best_tau = 0.0;
};

/// Certified lower bound for the essential spectrum threshold.
EssentialThresholdBound ess_threshold_bound(const CurvatureProfile& profile, double beta,
                                            double tau, double a,
                                            bool allow_below_regime = false);

struct AsymptoticsRow {
  double beta = 0.0, a = 0.0;
  int j = 0;
  double lower = 0.0, upper = 0.0, prediction = 0.0;
  std::optional<double> lambda_minus, lambda_plus;
  std::optional<double> lambda_err;  ///< extrapolation bar of the direct solves
  double residual = 0.0;
  double ratio = 0.0;  ///< |residual| / (beta |ln beta|)
};

struct AsymptoticsOptions {
  bool direct = false;  ///< run the 2D strip solves
  int ns = 1500;
  int m_per_side = 80;
  double L = 0.0;  ///< 0: automatic
  int jobs = 1;
  bool allow_below_regime = false;
};

struct AsymptoticsStudy {
  std::vector<AsymptoticsRow> rows;
  double fitted_C = 0.0;         ///< least-squares level of |r| / (beta |ln beta|)
  double ratio_min = 0.0, ratio_max = 0.0;
  double stability = 1.0;        ///< ratio_max / ratio_min over the grid (j = 1)
};

/// Residual table against the O(beta |ln beta|) law over a beta grid.
AsymptoticsStudy asymptotics_study(const CurvatureProfile& profile,
                                   const std::vector<double>& betas, int k,
                                   const AsymptoticsOptions& opts = {});

}  // namespace dp

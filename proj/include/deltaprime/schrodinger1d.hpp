#pragma once

#include <functional>
#include <vector>

#include "deltaprime/curve.hpp"
#include "deltaprime/tridiag.hpp"

namespace dp {

/// One-dimensional operator  -c_kin f'' + W(s) f  on [-L, L] with Dirichlet
/// ends, discretized on n cells by second-order central differences.
struct Operator1DSpec {
  double c_kin = 1.0;
  std::function<double(double)> W;
  double W_at_infinity = 0.0;  ///< essential-spectrum threshold proxy, lim W(s)
  double L = 0.0;
  int n = 0;
};

enum class BracketSign { Plus, Minus };

/// Comparison operator  S = -d^2/ds^2 - gamma(s)^2 / 4.
Operator1DSpec build_comparison_operator(const CurvatureProfile& profile, double L, int n);

/// Bracket operator  U_a^{+-} = -(1 -+ a gamma_+)^{-2} d^2/ds^2 + V^{(+-)}(s).
/// Requires a gamma_+ < 1/2.
Operator1DSpec build_bracket_operator(BracketSign sign, const CurvatureProfile& profile,
                                      const CurveBounds& bounds, double a, double L, int n);

struct Eigenvalue1D {
  double value = 0.0;
  double err_disc = 0.0;   ///< Richardson discretization estimate
  double err_trunc = 0.0;  ///< domain-truncation estimate (last doubling change)
};

struct Spectrum1D {
  std::vector<Eigenvalue1D> eigenvalues;
  int requested = 0;
  bool count_capped = false;  ///< fewer eigenvalues available than requested
  double L_used = 0.0;
  int n_used = 0;
};

/// Up to k lowest eigenvalues of the spec, Richardson-extrapolated (h -> h/2).
/// With negative_only, only eigenvalues below 0 are reported; otherwise all
/// eigenvalues below W_at_infinity (minus a resolution margin) count as bound
/// states.  With auto_truncate, L is doubled (n scaled to keep h) until the
/// lowest target moves by less than rtol * max(|value|, scale).
Spectrum1D lowest_eigenvalues_1d(const Operator1DSpec& spec, int k,
                                 bool negative_only = true, bool auto_truncate = true,
                                 double rtol = 1e-8);

/// Raw solve at fixed (L, n): k lowest eigenvalues below `upper`, no
/// extrapolation.  Exposed for oracles and convergence studies.
std::vector<double> eigenvalues_1d_raw(const Operator1DSpec& spec, int k, double upper);

struct LemmaLongRow {
  double a = 0.0;
  int j = 0;  // 1-based index
  double mu = 0.0, mu_plus = 0.0, mu_minus = 0.0;
  double diff_plus = 0.0, diff_minus = 0.0;
};

struct LemmaLongResult {
  std::vector<LemmaLongRow> rows;
  double C = 0.0;                ///< smallest constant with |mu_j^pm - mu_j| <= C a j^2
  double stability_ratio = 1.0;  ///< max over a of per-a constant / min over a
  int j_max_used = 0;
  bool j_restricted = false;
};

/// Computes |mu_j^pm(a) - mu_j| for a in a_list, j <= j_max, and fits the
/// smallest envelope constant.  j is restricted (with a flag) when fewer bound
/// states exist.
LemmaLongResult lemma_long_check(const CurvatureProfile& profile, const CurveBounds& bounds,
                                 const std::vector<double>& a_list, int j_max);

}  // namespace dp

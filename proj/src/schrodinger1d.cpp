#include "deltaprime/schrodinger1d.hpp"

#include <algorithm>
#include <cmath>

namespace dp {

Operator1DSpec build_comparison_operator(const CurvatureProfile& profile, double L, int n) {
  if (!(L > 0.0) || n < 64) throw ParameterError("build_comparison_operator: L > 0, n >= 64");
  Operator1DSpec spec;
  spec.c_kin = 1.0;
  spec.W = [profile](double s) { double g = profile.gamma(s); return -0.25 * g * g; };
  spec.W_at_infinity = 0.0;
  spec.L = L;
  spec.n = n;
  return spec;
}

Operator1DSpec build_bracket_operator(BracketSign sign, const CurvatureProfile& profile,
                                      const CurveBounds& bounds, double a, double L, int n) {
  if (!(L > 0.0) || n < 64) throw ParameterError("build_bracket_operator: L > 0, n >= 64");
  const double ag = a * bounds.gamma_max;
  if (!(ag < 0.5))
    throw ParameterError("build_bracket_operator: requires a*gamma_max < 1/2");
  BracketPotentials pots(bounds, profile, a);
  Operator1DSpec spec;
  if (sign == BracketSign::Plus) {
    spec.c_kin = 1.0 / ((1.0 - ag) * (1.0 - ag));
    spec.W = [pots](double s) { return pots.plus(s); };
    spec.W_at_infinity = pots.plus_at_infinity();
  } else {
    spec.c_kin = 1.0 / ((1.0 + ag) * (1.0 + ag));
    spec.W = [pots](double s) { return pots.minus(s); };
    spec.W_at_infinity = pots.minus_at_infinity();
  }
  spec.L = L;
  spec.n = n;
  return spec;
}

namespace {

SymmetricTridiagonal assemble(const Operator1DSpec& spec, double L, int n) {
  const double h = 2.0 * L / n;
  const int m = n - 1;  // interior nodes
  SymmetricTridiagonal T;
  T.diag.resize(static_cast<size_t>(m));
  T.off.assign(static_cast<size_t>(m - 1), -spec.c_kin / (h * h));
  for (int i = 0; i < m; ++i) {
    const double s = -L + (i + 1) * h;
    T.diag[static_cast<size_t>(i)] = 2.0 * spec.c_kin / (h * h) + spec.W(s);
  }
  return T;
}

std::vector<Eigenvalue1D> richardson_solve(const Operator1DSpec& spec, double L, int n,
                                           int k, double upper) {
  auto coarse = lowest_eigenvalues(assemble(spec, L, n), k, 1e-14, upper);
  auto fine = lowest_eigenvalues(assemble(spec, L, 2 * n), k, 1e-14, upper);
  const size_t kk = std::min(coarse.size(), fine.size());
  std::vector<Eigenvalue1D> out(kk);
  for (size_t j = 0; j < kk; ++j) {
    out[j].value = (4.0 * fine[j] - coarse[j]) / 3.0;
    out[j].err_disc = std::abs(fine[j] - coarse[j]) / 3.0;
  }
  // an eigenvalue present only on the fine grid is kept with a crude bar
  for (size_t j = kk; j < fine.size(); ++j)
    out.push_back({fine[j], std::abs(fine[j]) * 1e-3, 0.0});
  return out;
}

}  // namespace

std::vector<double> eigenvalues_1d_raw(const Operator1DSpec& spec, int k, double upper) {
  return lowest_eigenvalues(assemble(spec, spec.L, spec.n), k, 1e-14, upper);
}

Spectrum1D lowest_eigenvalues_1d(const Operator1DSpec& spec, int k, bool negative_only,
                                 bool auto_truncate, double rtol) {
  if (k < 1) throw ParameterError("lowest_eigenvalues_1d: k >= 1 required");
  Spectrum1D result;
  result.requested = k;

  const double margin_scale = std::max(1.0, std::abs(spec.W_at_infinity));
  const double upper = negative_only
                           ? 0.0
                           : spec.W_at_infinity - 1e-9 * margin_scale;

  double L = spec.L;
  int n = spec.n;
  std::vector<Eigenvalue1D> current = richardson_solve(spec, L, n, k, upper);
  double trunc_change = 0.0;
  if (auto_truncate) {
    for (int round = 0; round < 6; ++round) {
      const double L2 = 2.0 * L;
      const int n2 = 2 * n;
      auto next = richardson_solve(spec, L2, n2, k, upper);
      trunc_change = 0.0;
      const size_t kk = std::min(current.size(), next.size());
      for (size_t j = 0; j < kk; ++j)
        trunc_change = std::max(trunc_change, std::abs(next[j].value - current[j].value));
      const bool count_grew = next.size() > current.size();
      current = std::move(next);
      L = L2;
      n = n2;
      const double ref = current.empty() ? 1.0 : std::max(std::abs(current[0].value), 1e-12);
      if (!count_grew && trunc_change < rtol * ref) break;
    }
  }
  for (auto& ev : current) ev.err_trunc = trunc_change;
  result.eigenvalues = std::move(current);
  result.count_capped = static_cast<int>(result.eigenvalues.size()) < k;
  result.L_used = L;
  result.n_used = n;
  return result;
}

LemmaLongResult lemma_long_check(const CurvatureProfile& profile, const CurveBounds& bounds,
                                 const std::vector<double>& a_list, int j_max) {
  if (a_list.empty() || j_max < 1)
    throw ParameterError("lemma_long_check: need a_list and j_max >= 1");
  for (double a : a_list)
    if (!(a * bounds.gamma_max < 0.5))
      throw ParameterError("lemma_long_check: each a must satisfy a*gamma_max < 1/2");

  LemmaLongResult result;
  if (profile.is_line()) {
    for (double a : a_list)
      result.rows.push_back({a, 1, 0.0, 0.0, 0.0, 0.0, 0.0});
    result.C = 0.0;
    result.j_max_used = 1;
    return result;
  }

  const double Ldec = profile.decay_window(1e-10);
  const double L0 = Ldec + 12.0;
  const int n0 = std::max(512, static_cast<int>(64 * L0));

  auto specS = build_comparison_operator(profile, L0, n0);
  auto muS = lowest_eigenvalues_1d(specS, j_max, true, true, 1e-9);
  int jm = static_cast<int>(muS.eigenvalues.size());
  if (jm == 0) throw NumericalError("lemma_long_check: comparison operator has no bound state");
  result.j_restricted = jm < j_max;

  double Cmax = 0.0;
  double per_a_min = std::numeric_limits<double>::infinity();
  double per_a_max = 0.0;
  for (double a : a_list) {
    auto specP = build_bracket_operator(BracketSign::Plus, profile, bounds, a, L0, n0);
    auto specM = build_bracket_operator(BracketSign::Minus, profile, bounds, a, L0, n0);
    auto muP = lowest_eigenvalues_1d(specP, jm, false, true, 1e-9);
    auto muM = lowest_eigenvalues_1d(specM, jm, false, true, 1e-9);
    const int jma = std::min({jm, static_cast<int>(muP.eigenvalues.size()),
                              static_cast<int>(muM.eigenvalues.size())});
    if (jma < jm) result.j_restricted = true;
    double Ca = 0.0;
    for (int j = 0; j < jma; ++j) {
      LemmaLongRow row;
      row.a = a;
      row.j = j + 1;
      row.mu = muS.eigenvalues[static_cast<size_t>(j)].value;
      row.mu_plus = muP.eigenvalues[static_cast<size_t>(j)].value;
      row.mu_minus = muM.eigenvalues[static_cast<size_t>(j)].value;
      row.diff_plus = std::abs(row.mu_plus - row.mu);
      row.diff_minus = std::abs(row.mu_minus - row.mu);
      result.rows.push_back(row);
      const double denom = a * (j + 1) * (j + 1);
      Ca = std::max({Ca, row.diff_plus / denom, row.diff_minus / denom});
    }
    Cmax = std::max(Cmax, Ca);
    per_a_min = std::min(per_a_min, Ca);
    per_a_max = std::max(per_a_max, Ca);
  }
  result.C = Cmax;
  result.stability_ratio = per_a_min > 0.0 ? per_a_max / per_a_min : 1.0;
  result.j_max_used = jm;
  return result;
}

}  // namespace dp

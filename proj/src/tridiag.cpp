#include "deltaprime/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dp {

int count_below(const SymmetricTridiagonal& T, double x) {
  const int n = T.size();
  int count = 0;
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    const double e = i > 0 ? T.off[static_cast<size_t>(i - 1)] : 0.0;
    d = T.diag[static_cast<size_t>(i)] - x - (i > 0 ? e * e / d : 0.0);
    if (d == 0.0) d = -1e-300;  // pivot protection; counts x as crossed
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

std::pair<double, double> gershgorin(const SymmetricTridiagonal& T) {
  const int n = T.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(T.off[static_cast<size_t>(i - 1)]);
    if (i + 1 < n) r += std::abs(T.off[static_cast<size_t>(i)]);
    lo = std::min(lo, T.diag[static_cast<size_t>(i)] - r);
    hi = std::max(hi, T.diag[static_cast<size_t>(i)] + r);
  }
  return {lo, hi};
}

}  // namespace

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& T, int k,
                                       double rel_tol, double upper_limit) {
  if (k < 1) throw ParameterError("lowest_eigenvalues: k must be >= 1");
  const auto [glo, ghi] = gershgorin(T);
  const double scale = std::max(std::abs(glo), std::abs(ghi));
  double top = std::min(upper_limit, ghi + 1e-12 * scale);
  if (top <= glo) return {};
  const int available = count_below(T, top);
  const int want = std::min(k, available);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(want));
  for (int j = 0; j < want; ++j) {
    // j-th smallest eigenvalue: infimum of x with count_below(x) >= j+1
    double lo = glo - 1e-12 * scale, hi = top;
    if (!out.empty()) lo = out.back() - 1e-12 * scale;  // eigenvalues are sorted
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(T, mid) >= j + 1)
        hi = mid;
      else
        lo = mid;
      const double tol = rel_tol * std::max(std::abs(hi), 1e-30) + 1e-15 * scale;
      if (hi - lo <= tol) break;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

double eigen_residual(const SymmetricTridiagonal& T, double lambda) {
  // one step of inverse iteration with a fixed deterministic start, then the
  // Rayleigh residual; LU with partial pivoting on the shifted tridiagonal
  const int n = T.size();
  if (n == 0) return 0.0;
  // rows of T - lambda I: [off[i-1], diag[i]-lambda, off[i]]
  std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n), 0.0),
      c(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = T.diag[static_cast<size_t>(i)] - lambda;
  for (int i = 0; i + 1 < n; ++i) {
    b[static_cast<size_t>(i)] = T.off[static_cast<size_t>(i)];      // super
    c[static_cast<size_t>(i)] = T.off[static_cast<size_t>(i)];      // sub (row i+1)
  }
  std::vector<double> x(static_cast<size_t>(n), 1.0);
  // forward elimination with partial pivoting
  std::vector<double> aa(a), bb(b), cc(static_cast<size_t>(n), 0.0), rhs(x);
  for (int i = 0; i + 1 < n; ++i) {
    double sub_i = c[static_cast<size_t>(i)];
    if (std::abs(aa[static_cast<size_t>(i)]) < std::abs(sub_i)) {
      std::swap(aa[static_cast<size_t>(i)], sub_i);
      double t = bb[static_cast<size_t>(i)];
      bb[static_cast<size_t>(i)] = aa[static_cast<size_t>(i + 1)];
      aa[static_cast<size_t>(i + 1)] = t;
      cc[static_cast<size_t>(i)] = bb[static_cast<size_t>(i + 1)];
      bb[static_cast<size_t>(i + 1)] = 0.0;
      std::swap(rhs[static_cast<size_t>(i)], rhs[static_cast<size_t>(i + 1)]);
    }
    double piv_v = aa[static_cast<size_t>(i)];
    if (piv_v == 0.0) piv_v = 1e-300;
    const double m = sub_i / piv_v;
    aa[static_cast<size_t>(i + 1)] -= m * bb[static_cast<size_t>(i)];
    bb[static_cast<size_t>(i + 1)] -= m * cc[static_cast<size_t>(i)];
    rhs[static_cast<size_t>(i + 1)] -= m * rhs[static_cast<size_t>(i)];
  }
  // back substitution
  for (int i = n - 1; i >= 0; --i) {
    double v = rhs[static_cast<size_t>(i)];
    if (i + 1 < n) v -= bb[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    if (i + 2 < n) v -= cc[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 2)];
    double piv_v = aa[static_cast<size_t>(i)];
    if (piv_v == 0.0) piv_v = 1e-300;
    x[static_cast<size_t>(i)] = v / piv_v;
  }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return 0.0;
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = (T.diag[static_cast<size_t>(i)] - lambda) * x[static_cast<size_t>(i)];
    if (i > 0) r += T.off[static_cast<size_t>(i - 1)] * x[static_cast<size_t>(i - 1)];
    if (i + 1 < n) r += T.off[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    res += r * r;
  }
  return std::sqrt(res) / norm;
}

}  // namespace dp

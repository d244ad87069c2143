#include "deltaprime/transverse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace dp {

namespace {

void require_positive(double a, double beta) {
  if (!(a > 0.0) || !(beta > 0.0))
    throw ParameterError("transverse: require a > 0 and beta > 0");
}

std::string regime_message(double a, double beta) {
  std::ostringstream os;
  os << "outside Lemma regime: a/beta = " << a / beta << " <= 2";
  return os.str();
}

// Safeguarded bisection for a continuous f with f(lo) and f(hi) of opposite
// sign; resolves the root to ~1e-14 relative accuracy.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::abs(hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool lemma_regime(double a, double beta, double gamma_plus) {
  return a / beta > 2.0 && 2.0 / beta > gamma_plus;
}

std::pair<double, double> lemma_trans_envelope(double a, double beta,
                                               bool allow_below_regime) {
  require_positive(a, beta);
  if (!allow_below_regime && !(a / beta > 2.0)) throw RegimeError(regime_message(a, beta));
  const double center = -4.0 / (beta * beta);
  const double width = (16.0 / (beta * beta)) * std::exp(-4.0 * a / beta);
  return {center - width, center + width};
}

TransverseEigenvalue transverse_eigenvalue_dirichlet(double a, double beta,
                                                     bool allow_below_regime) {
  require_positive(a, beta);
  if (!allow_below_regime && !(a / beta > 2.0)) throw RegimeError(regime_message(a, beta));
  const double K = 2.0 / beta;
  auto f = [&](double k) { return k - K * std::tanh(k * a); };
  // root lies in (0, 2/beta); a sign change requires 2a/beta > 1
  double lo = 1e-12 * K, hi = K * (1.0 - 1e-16);
  if (!(f(lo) < 0.0)) {
    std::ostringstream os;
    os << "transverse_eigenvalue_dirichlet: no negative eigenvalue bracket, a/beta = "
       << a / beta;
    throw RegimeError(os.str());
  }
  const double kappa = bisect(f, lo, hi);
  TransverseEigenvalue r;
  r.kappa = kappa;
  r.t = -kappa * kappa;
  r.residual = std::abs(f(kappa)) / K;
  r.method = "transcendental";
  return r;
}

TransverseEigenvalue transverse_eigenvalue_robin(double a, double beta,
                                                 double gamma_plus,
                                                 bool allow_below_regime) {
  require_positive(a, beta);
  if (!(gamma_plus >= 0.0)) throw ParameterError("transverse: gamma_plus must be >= 0");
  if (!allow_below_regime && !lemma_regime(a, beta, gamma_plus)) {
    std::ostringstream os;
    os << "outside Lemma regime: a/beta = " << a / beta << ", 2/beta - gamma_plus = "
       << 2.0 / beta - gamma_plus;
    throw RegimeError(os.str());
  }
  if (!(2.0 / beta > gamma_plus))
    throw RegimeError("transverse_eigenvalue_robin: requires 2/beta > gamma_plus");
  const double K = 2.0 / beta;
  auto F = [&](double k) {
    return std::tanh(k * a) * (k * k - gamma_plus * K) - k * (K - gamma_plus);
  };
  TransverseEigenvalue r;
  r.method = "transcendental";
  const double lo = K * (1.0 + 1e-14);
  if (F(lo) >= 0.0) {
    // tanh(kappa a) saturates to 1 in double precision: the root is closer to
    // 2/beta than one ulp, so return it exactly
    r.kappa = K;
    r.t = -K * K;
    r.residual = 0.0;
    return r;
  }
  double hi = K + gamma_plus + 1.0 / a;
  int widen = 0;
  while (F(hi) < 0.0 && widen++ < 60) hi *= 1.5;
  if (F(hi) < 0.0)
    throw RegimeError("transverse_eigenvalue_robin: bracket widening failed");
  const double kappa = bisect(F, lo, hi);
  r.kappa = kappa;
  r.t = -kappa * kappa;
  r.residual = std::abs(F(kappa)) / (K * K);
  return r;
}

TransverseOracleResult transverse_fd_oracle(const TransverseProblem& p, int n) {
  require_positive(p.a, p.beta);
  if (n < 16) throw ParameterError("transverse_fd_oracle: n must be >= 16");
  const double inv_b = 1.0 / p.beta;
  if (!(2.0 * inv_b > std::abs(p.gamma_s)))
    throw ParameterError(
        "transverse_fd_oracle: symmetrization requires 2/beta > |gamma_s|");

  const int m = n;  // cells per side
  const double h = p.a / m;
  const bool robin = p.bc == TransverseBc::Robin;
  const int per_side = robin ? m + 1 : m;  // unknowns per side incl. interface node
  const int N = 2 * per_side;

  // Chain ordering: u = -a side outermost first, f(0-), f(0+), then +a side.
  // Interface rows come from ghost elimination of the matching conditions
  //   f'(0+) = f'(0-) = phi,  phi = -(1/beta)(f+ - f-) + (gamma_s/2)(f+ + f-),
  // wall rows (Robin) from ghost elimination of -+gamma_+ f(+-a) = f'(+-a).
  // Interface and wall rows carry half mass.
  std::vector<double> diag(static_cast<size_t>(N), 0.0);
  std::vector<double> lower(static_cast<size_t>(N - 1), 0.0);  // A[i+1][i]
  std::vector<double> upper(static_cast<size_t>(N - 1), 0.0);  // A[i][i+1]
  std::vector<double> mass(static_cast<size_t>(N), 1.0);

  const int im = per_side - 1;  // index of f(0-)
  const int ip = per_side;      // index of f(0+)
  const double h2 = h * h;

  // interior rows
  for (int i = 0; i < N; ++i) {
    const bool interface_row = (i == im || i == ip);
    const bool wall_row = robin && (i == 0 || i == N - 1);
    if (interface_row || wall_row) continue;
    diag[static_cast<size_t>(i)] = 2.0 / h2;
    if (i > 0) lower[static_cast<size_t>(i - 1)] = -1.0 / h2;
    if (i + 1 < N) upper[static_cast<size_t>(i)] = -1.0 / h2;
  }
  // interface rows, scaled by the half cell
  // row f(0+): [(2 f+ - 2 R1)/h^2 + (2/h) phi] * 1/2 = t * (1/2) f+
  diag[static_cast<size_t>(ip)] = 0.5 * (2.0 / h2 + (2.0 / h) * (-inv_b + 0.5 * p.gamma_s));
  upper[static_cast<size_t>(ip)] = -1.0 / h2;                                   // to R1
  lower[static_cast<size_t>(im)] = 0.5 * (2.0 / h) * (inv_b + 0.5 * p.gamma_s); // f+ <- f-
  // row f(0-): [(2 f- - 2 L1)/h^2 - (2/h) phi] * 1/2
  diag[static_cast<size_t>(im)] = 0.5 * (2.0 / h2 - (2.0 / h) * (inv_b + 0.5 * p.gamma_s));
  lower[static_cast<size_t>(im - 1)] = -1.0 / h2;  // to L1
  upper[static_cast<size_t>(im)] = -0.5 * (2.0 / h) * (-inv_b + 0.5 * p.gamma_s);  // f- <- f+
  mass[static_cast<size_t>(im)] = mass[static_cast<size_t>(ip)] = 0.5;
  // fix the couplings of interior neighbours toward the interface
  if (im - 1 >= 0) upper[static_cast<size_t>(im - 1)] = -1.0 / h2;
  if (ip + 1 < N) lower[static_cast<size_t>(ip)] = -1.0 / h2;

  if (robin) {
    // wall at u = -a (index 0): f'(-a) = +gamma_+ f(-a)
    diag[0] = 0.5 * (2.0 / h2 + 2.0 * p.gamma_plus / h);
    upper[0] = -1.0 / h2;
    lower[0] = -1.0 / h2;
    mass[0] = 0.5;
    // wall at u = +a (index N-1): f'(a) = -gamma_+ f(a)
    diag[static_cast<size_t>(N - 1)] = 0.5 * (2.0 / h2 + 2.0 * p.gamma_plus / h);
    lower[static_cast<size_t>(N - 2)] = -1.0 / h2;
    upper[static_cast<size_t>(N - 2)] = -1.0 / h2;
    mass[static_cast<size_t>(N - 1)] = 0.5;
  }

  // diagonal similarity D A D^{-1} on the chain (tree topology, always
  // consistent when all sub/super products are positive)
  SymmetricTridiagonal T;
  T.diag.resize(static_cast<size_t>(N));
  T.off.resize(static_cast<size_t>(N - 1));
  double symmetry_defect = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    const double prod = upper[static_cast<size_t>(i)] * lower[static_cast<size_t>(i)];
    if (!(prod > 0.0))
      throw NumericalError("transverse_fd_oracle: chain coupling product not positive");
    symmetry_defect = std::max(
        symmetry_defect, std::abs(upper[static_cast<size_t>(i)] - lower[static_cast<size_t>(i)]) /
                             std::sqrt(prod));
  }
  // fold the diagonal mass into the matrix: M^{-1/2} (D A D^{-1}) M^{-1/2}
  for (int i = 0; i < N; ++i)
    T.diag[static_cast<size_t>(i)] = diag[static_cast<size_t>(i)] / mass[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < N; ++i) {
    const double sym = -std::sqrt(upper[static_cast<size_t>(i)] * lower[static_cast<size_t>(i)]);
    T.off[static_cast<size_t>(i)] =
        sym / std::sqrt(mass[static_cast<size_t>(i)] * mass[static_cast<size_t>(i + 1)]);
  }
  TransverseOracleResult res;
  res.negative_count = count_below(T, 0.0);
  auto vals = lowest_eigenvalues(T, 1, 1e-14);
  if (vals.empty()) throw SolverError("transverse_fd_oracle: no eigenvalue found");
  res.eigenvalue.t = vals.front();
  res.eigenvalue.kappa = vals.front() < 0.0 ? std::sqrt(-vals.front()) : 0.0;
  res.eigenvalue.residual = eigen_residual(T, vals.front());
  res.eigenvalue.method = "finite-difference";
  res.symmetry_defect = symmetry_defect;
  return res;
}

}  // namespace dp

#pragma once

#include <string>
#include <utility>

#include "deltaprime/errors.hpp"
#include "deltaprime/tridiag.hpp"

namespace dp {

/// End condition of the transverse interval operator on (-a,a) \ {0}.
enum class TransverseBc { Dirichlet, Robin };

/// Transverse operator data: -f'' on (-a,a) \ {0} with the jump coupling
///   f'(0-) = f'(0+) = -(1/beta)(f(0+)-f(0-)) + (gamma_s/2)(f(0+)+f(0-))
/// at the doubled origin, and either f(+-a) = 0 (Dirichlet) or the Robin wall
/// conditions -+ gamma_plus f(+-a) = f'(+-a).
struct TransverseProblem {
  double a = 0.0;
  double beta = 0.0;
  double gamma_s = 0.0;      ///< curvature value entering the matching condition
  double gamma_plus = 0.0;   ///< Robin wall coefficient
  TransverseBc bc = TransverseBc::Dirichlet;
};

struct TransverseEigenvalue {
  double t = 0.0;         ///< the unique negative eigenvalue
  double kappa = 0.0;     ///< decay rate, t = -kappa^2
  double residual = 0.0;  ///< scalar-equation residual at the root
  std::string method;     ///< "transcendental" | "finite-difference"
};

/// True when (a, beta, gamma_plus) satisfy a/beta > 2 and 2/beta > gamma_plus.
bool lemma_regime(double a, double beta, double gamma_plus = 0.0);

/// Exponential envelope around -4/beta^2:
///   (-4/b^2 - (16/b^2) e^{-4a/b},  -4/b^2 + (16/b^2) e^{-4a/b}).
/// Throws RegimeError outside the regime unless allow_below_regime is set.
std::pair<double, double> lemma_trans_envelope(double a, double beta,
                                               bool allow_below_regime = false);

/// Negative eigenvalue of the Dirichlet transverse operator, from the scalar
/// reduction kappa = (2/beta) tanh(kappa a) by safeguarded bisection.
TransverseEigenvalue transverse_eigenvalue_dirichlet(double a, double beta,
                                                     bool allow_below_regime = false);

/// Negative eigenvalue of the Robin transverse operator, from
///   tanh(kappa a) = kappa (2/beta - gamma_plus) / (kappa^2 - 2 gamma_plus / beta).
TransverseEigenvalue transverse_eigenvalue_robin(double a, double beta,
                                                 double gamma_plus,
                                                 bool allow_below_regime = false);

struct TransverseOracleResult {
  TransverseEigenvalue eigenvalue;
  int negative_count = 0;      ///< number of negative eigenvalues found
  double symmetry_defect = 0;  ///< max asymmetry after diagonal similarity
};

/// Finite-difference oracle: uniform grid with n cells per side, doubled node
/// at the origin carrying the matching conditions through second-order ghost
/// elimination.  The chain-ordered matrix is symmetrized by a diagonal
/// similarity (possible exactly when 2/beta > |gamma_s|) and the lowest
/// eigenvalue of the resulting symmetric pencil is returned.  Convergence is
/// second order in 1/n.
TransverseOracleResult transverse_fd_oracle(const TransverseProblem& problem, int n);

}  // namespace dp

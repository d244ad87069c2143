#pragma once

#include <limits>
#include <vector>

#include "deltaprime/errors.hpp"

namespace dp {

/// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
/// rows i and i+1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below x (Sturm count via the shifted LDL
/// recurrence with pivot protection).
int count_below(const SymmetricTridiagonal& T, double x);

/// The k smallest eigenvalues by safeguarded Sturm-sequence bisection,
/// restricted to values below `upper_limit`.  Returns fewer than k values when
/// fewer eigenvalues exist below the limit.  Each eigenvalue is resolved to
/// rel_tol relative accuracy (floored by an absolute tolerance tied to the
/// Gershgorin scale).
std::vector<double> lowest_eigenvalues(
    const SymmetricTridiagonal& T, int k, double rel_tol = 1e-13,
    double upper_limit = std::numeric_limits<double>::infinity());

/// Residual check: ||T v - lambda v|| / ||v|| for the inverse-iteration vector
/// at the given eigenvalue estimate.  Used to validate bisection output.
double eigen_residual(const SymmetricTridiagonal& T, double lambda);

}  // namespace dp

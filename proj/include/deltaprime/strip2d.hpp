#pragma once

#include <Eigen/Sparse>
#include <limits>
#include <vector>

#include "deltaprime/curve.hpp"

namespace dp {

/// Which bracketing form the strip operator discretizes: QPlus has Dirichlet
/// conditions at u = +-a, QMinus natural conditions with the curvature
/// boundary integrals.
enum class FormKind { QPlus, QMinus };

/// Tensor grid on [-L, L] x ([-a, 0] u [0, a]) with a doubled interface layer
/// at u = 0.  The u nodes are sinh-graded toward the interface so the
/// transverse coupling layer (width ~ beta/2) stays resolved; stretch = 0
/// gives a uniform grid.
struct StripGrid {
  std::vector<double> s_nodes;  ///< ns+1 uniform nodes on [-L, L]
  std::vector<double> u_nodes;  ///< 2m+2 nodes; index m is 0-, m+1 is 0+
  int ns = 0;                   ///< s cells
  int m = 0;                    ///< u cells per side
  double a = 0.0, L = 0.0;
  double stretch = 0.0;
  int interface_lo = 0;  ///< u-row of f(s, 0-)
  int interface_hi = 0;  ///< u-row of f(s, 0+)
};

StripGrid make_strip_grid(double L, int ns, double a, int m_per_side, double stretch);

/// Assembled symmetric pencil (A, M) for the chosen form on the strip grid:
/// piecewise-bilinear elements, 1/g^2 weight on the s-energy, nodal quadrature
/// for the potential, lumped diagonal mass, the jump and trace line terms
/// along the doubled interface, and for QMinus the curvature boundary
/// integrals at u = +-a.  Dirichlet ends at s = +-L for both forms.
struct Strip2DOperator {
  Eigen::SparseMatrix<double> A;  ///< stiffness; exactly symmetric
  Eigen::VectorXd M;              ///< lumped mass diagonal
  StripGrid grid;
  FormKind which = FormKind::QPlus;
  double inv_beta = 0.0;
  CurvatureProfile profile = CurvatureProfile::line();
  int n_u_rows = 0;     ///< unknown u rows per s slice
  int bandwidth = 0;    ///< max |i - j| over stored entries
};

/// `stretch < 0` selects the grading automatically from inv_beta.
Strip2DOperator assemble_form(const CurvatureProfile& profile, double a, double inv_beta,
                              double L, int ns, int m_per_side, FormKind which,
                              double stretch = -1.0);

struct Eig2DResult {
  std::vector<double> values;
  std::vector<double> residuals;  ///< ||A v - lambda M v|| / ||M v|| per pair
  int iterations = 0;
  double sigma = 0.0;
};

/// k lowest eigenvalues of the pencil (A, M) by shift-invert Lanczos with a
/// sparse LDLT factorization; the shift is placed below the spectrum using the
/// transverse envelope and the potential bound (or sigma_hint when finite).
/// Deterministic: fixed starting vector and iteration schedule.
Eig2DResult lowest_eigenvalues_2d(const Strip2DOperator& op, int k, double rtol = 1e-9,
                                  double sigma_hint = std::numeric_limits<double>::quiet_NaN());

struct ConvergenceLevel {
  int ns = 0, m = 0;
  std::vector<double> values;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> extrapolated;     ///< Richardson from the last two levels
  std::vector<double> observed_order;   ///< per eigenvalue, from the last triple
  bool order_ok = true;                 ///< false when any order < 1.7
};

/// Halves h_s and h_u per level (>= 3 levels for an observed order).
ConvergenceStudy convergence_study(const CurvatureProfile& profile, double a,
                                   double inv_beta, double L, int ns0, int m0,
                                   FormKind which, int levels, int k, double rtol = 1e-9);

struct Extrapolated2D {
  double value = 0.0;      ///< two-variable Richardson-extrapolated lambda_1
  double err_est = 0.0;    ///< size of the extrapolation corrections
  double lam_base = 0.0, lam_fine_u = 0.0, lam_fine_s = 0.0;
};

/// lambda_1 by the three-solve directional Richardson (base, u-refined,
/// s-refined); cheaper than a full refinement level at large sizes.
Extrapolated2D solve2d_extrapolated(const CurvatureProfile& profile, double a,
                                    double inv_beta, double L, int ns, int m,
                                    FormKind which, double rtol = 1e-9);

}  // namespace dp

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deltaprime/errors.hpp"

namespace dp {

/// Sup bounds of |gamma|, |gamma'|, |gamma''| over the whole line.
struct CurveBounds {
  double gamma_max = 0.0;    ///< gamma_+ = max |gamma|
  double dgamma_max = 0.0;   ///< (gamma')_+
  double d2gamma_max = 0.0;  ///< (gamma'')_+
};

/// Signed-curvature profile gamma(s) with analytic first and second
/// derivatives.  The built-in families decay at infinity; a profile is the
/// canonical way to specify a curve since every spectral quantity downstream
/// consumes gamma, gamma' and gamma'' directly.
class CurvatureProfile {
 public:
  enum class Family { Line, GaussianBump, TwoBump, Custom };

  static CurvatureProfile line();
  /// gamma(s) = c * exp(-s^2)
  static CurvatureProfile gaussian_bump(double c);
  /// gamma(s) = c * (exp(-(s-s0)^2) + exp(-(s+s0)^2))
  static CurvatureProfile two_bump(double c, double s0);
  /// Profile backed by user functions.  Derivatives may be omitted, in which
  /// case 5-point centered differences are used.  `bounds` are certified sup
  /// bounds and `tail_scale` a decay scale such that the Gaussian-type tail
  /// envelope bound(S) ~ sup * exp(tail_rate * (S^2_ref - S^2)) applies; for
  /// non-decaying custom profiles pass tail_decaying = false.
  static CurvatureProfile custom(std::function<double(double)> g,
                                 std::function<double(double)> dg,
                                 std::function<double(double)> d2g,
                                 CurveBounds bounds, bool decaying = true);

  double gamma(double s) const;
  double dgamma(double s) const;
  double d2gamma(double s) const;

  const CurveBounds& bounds() const { return bounds_; }
  Family family() const { return family_; }
  bool is_line() const { return family_ == Family::Line || bounds_.gamma_max == 0.0; }
  bool decaying() const { return decaying_; }

  /// Smallest S such that |gamma(s)| < eps for all |s| > S (condition that the
  /// curve is asymptotically straight).  Returns 0 for the line.
  double decay_window(double eps = 1e-12) const;

  /// Certified sup of |gamma|, |gamma'|, |gamma''| over |s| >= S.
  CurveBounds tail_bounds(double S) const;

  double param_c() const { return c_; }
  double param_s0() const { return s0_; }
  std::string family_name() const;

 private:
  CurvatureProfile() = default;

  Family family_ = Family::Line;
  double c_ = 0.0;
  double s0_ = 0.0;
  bool decaying_ = true;
  std::function<double(double)> fg_, fdg_, fd2g_;
  CurveBounds bounds_{};
};

/// Unit-speed planar curve evaluable with derivatives through order 4.
///
/// Two kinds are supported: closed-form families (line, circle, raw component
/// functions; used mainly by the tests) and curvature-defined curves
/// reconstructed from a CurvatureProfile by integrating the frame equations.
class PlanarCurve {
 public:
  enum class Kind { ClosedForm, CurvatureDefined };

  static PlanarCurve straight_line();
  /// Unit-speed circle Gamma(s) = (R sin(s/R), R cos(s/R)); signed curvature +1/R.
  static PlanarCurve circle(double radius);
  /// Curve from raw component functions (derivatives by central differences).
  /// No unit-speed check at construction; evaluation sites are checked by the
  /// operations that require arc-length parameterization.
  static PlanarCurve from_components(std::function<double(double)> x,
                                     std::function<double(double)> y);

  std::array<double, 2> point(double s) const;
  /// k-th derivative of Gamma at s, k in 1..4.
  std::array<double, 2> derivative(double s, int k) const;
  /// Tangent angle theta(s) with Gamma'(s) = (cos theta, sin theta);
  /// only available for curvature-defined curves.
  double tangent_angle(double s) const;

  Kind kind() const { return kind_; }
  const std::optional<CurvatureProfile>& profile() const { return profile_; }
  /// Arc-length window [-W, W] on which a reconstructed curve is cached.
  double window() const { return window_; }

  friend PlanarCurve curve_from_curvature(const CurvatureProfile&, double, double);

 private:
  PlanarCurve() = default;

  Kind kind_ = Kind::ClosedForm;
  std::optional<CurvatureProfile> profile_;
  double window_ = 0.0;

  // closed-form evaluation
  std::function<double(double)> fx_, fy_;
  double circle_radius_ = 0.0;
  enum class ClosedFamily { Line, Circle, Raw } closed_family_ = ClosedFamily::Line;

  // reconstructed curve: dense state table (theta, x, y) on a uniform grid
  double grid_h_ = 0.0;
  std::vector<std::array<double, 3>> table_;
  std::array<double, 3> state_at(double s) const;
};

/// Signed curvature gamma = Gamma_1'' Gamma_2' - Gamma_1' Gamma_2''.
/// For curvature-defined curves this returns the stored profile value.
/// Throws GeometryError if the parameterization is not unit speed at s.
double signed_curvature(const PlanarCurve& curve, double s);

/// Reconstruct the unit-speed curve with prescribed signed curvature by
/// integrating theta' = -gamma, Gamma' = (cos theta, sin theta) with
/// theta(0) = 0, Gamma(0) = (0, 0).  The sign convention reproduces
/// gamma = Gamma_1'' Gamma_2' - Gamma_1' Gamma_2''.
///
/// `window` is the arc-length half-width cached for evaluation and `tol` the
/// target accuracy of the integrated positions; a NumericalError is thrown if
/// step-halving does not meet it.
PlanarCurve curve_from_curvature(const CurvatureProfile& profile,
                                 double window = 20.0, double tol = 1e-11);

/// Curvilinear coordinate map (s, u) -> (Gamma_1 + u Gamma_2', Gamma_2 - u Gamma_1').
std::array<double, 2> map_to_strip(const PlanarCurve& curve, double s, double u);

/// Certified lower estimate of the injectivity half-width d of the strip map:
/// min(1/gamma_max, half the minimal distance between non-adjacent curve
/// segments on [-window, window]).  Capped at kInjectivityCap for curves that
/// never self-approach.
double injectivity_halfwidth(const PlanarCurve& curve, double window);

inline constexpr double kInjectivityCap = 1e6;

/// Metric factor g(s, u) = 1 + u * gamma(s).  Throws GeometryError when the
/// metric degenerates (|u gamma| >= 1).
double metric_factor(const CurvatureProfile& profile, double s, double u);

/// Geometrically induced potential
///   V(s,u) = u gamma'' / (2 g^3) - 5 (u gamma')^2 / (4 g^4) - gamma^2 / (4 g^2).
double geometric_potential(const CurvatureProfile& profile, double s, double u);

/// The s-only bracket potentials sandwiching V(s, u) for |u| <= a:
///   V_plus(s)  =  a (gamma'')_+ / (2 (1 - a gamma_+)^3) - gamma(s)^2 / (4 (1 + a gamma_+)^2)
///   V_minus(s) = -a (gamma'')_+ / (2 (1 - a gamma_+)^3)
///                - 5 (a (gamma')_+)^2 / (4 (1 - a gamma_+)^4)
///                - gamma(s)^2 / (4 (1 - a gamma_+)^2)
class BracketPotentials {
 public:
  BracketPotentials(const CurveBounds& bounds, const CurvatureProfile& profile, double a);

  double plus(double s) const;
  double minus(double s) const;
  /// Limits as |s| -> infinity (gamma -> 0) for decaying profiles.
  double plus_at_infinity() const { return pedestal_; }
  double minus_at_infinity() const { return -pedestal_ - dgamma_term_; }
  double halfwidth() const { return a_; }

 private:
  CurvatureProfile profile_;
  double a_ = 0.0;
  double pedestal_ = 0.0;     // a (gamma'')_+ / (2 (1-a gamma_+)^3)
  double dgamma_term_ = 0.0;  // 5 (a (gamma')_+)^2 / (4 (1-a gamma_+)^4)
  double coef_plus_ = 0.0;    // 1 / (4 (1+a gamma_+)^2)
  double coef_minus_ = 0.0;   // 1 / (4 (1-a gamma_+)^2)
};

BracketPotentials bracket_potentials(const CurveBounds& bounds,
                                     const CurvatureProfile& profile, double a);

/// Certified sup of |V(s,u)| over |s| >= tau, |u| <= a, from curvature tails.
double potential_tail_bound(const CurvatureProfile& profile, double a, double tau);

/// Numerical infimum V_tau = inf_{|s|>tau, |u|<a} V(s,u) on an adaptively
/// refined grid, safeguarded by the analytic tail bound: the returned value is
/// a certified lower estimate, never below -potential_tail_bound(tau).
double v_tau(const CurvatureProfile& profile, double a, double tau);

}  // namespace dp

#include "deltaprime/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace dp {

namespace {

constexpr double kUnitSpeedTol = 1e-10;

double sq(double x) { return x * x; }

// x * exp(-x^2); decreasing for x >= 1/sqrt(2)
double genv1(double x) { return x * std::exp(-x * x); }
// (4x^2 + 2) * exp(-x^2); decreasing for x >= 1/sqrt(2)
double genv2(double x) { return (4.0 * x * x + 2.0) * std::exp(-x * x); }

}  // namespace

// ---------------------------------------------------------------------------
// CurvatureProfile

CurvatureProfile CurvatureProfile::line() {
  CurvatureProfile p;
  p.family_ = Family::Line;
  p.bounds_ = {0.0, 0.0, 0.0};
  return p;
}

CurvatureProfile CurvatureProfile::gaussian_bump(double c) {
  if (!(c > 0.0)) throw ParameterError("gaussian_bump: c must be positive");
  CurvatureProfile p;
  p.family_ = Family::GaussianBump;
  p.c_ = c;
  p.bounds_.gamma_max = c;
  p.bounds_.dgamma_max = c * std::sqrt(2.0) * std::exp(-0.5);
  p.bounds_.d2gamma_max = 2.0 * c;
  return p;
}

CurvatureProfile CurvatureProfile::two_bump(double c, double s0) {
  if (!(c > 0.0) || !(s0 >= 0.0))
    throw ParameterError("two_bump: require c > 0 and s0 >= 0");
  CurvatureProfile p;
  p.family_ = Family::TwoBump;
  p.c_ = c;
  p.s0_ = s0;
  // sup bounds by dense scan with local refinement (profile is smooth and even)
  auto scan = [&](auto&& f) {
    double hi = 0.0, arg = 0.0;
    const double S = s0 + 8.0;
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
      double s = S * i / n;
      double v = std::abs(f(s));
      if (v > hi) { hi = v; arg = s; }
    }
    double lo = std::max(0.0, arg - S / n), up = arg + S / n;
    for (int it = 0; it < 60; ++it) {
      double m1 = lo + (up - lo) / 3.0, m2 = up - (up - lo) / 3.0;
      if (std::abs(f(m1)) < std::abs(f(m2))) lo = m1; else up = m2;
    }
    return std::max(hi, std::abs(f(0.5 * (lo + up))));
  };
  auto g = [&](double s) {
    return c * (std::exp(-sq(s - s0)) + std::exp(-sq(s + s0)));
  };
  auto dg = [&](double s) {
    return -2.0 * c * ((s - s0) * std::exp(-sq(s - s0)) + (s + s0) * std::exp(-sq(s + s0)));
  };
  auto d2g = [&](double s) {
    return c * ((4.0 * sq(s - s0) - 2.0) * std::exp(-sq(s - s0)) +
                (4.0 * sq(s + s0) - 2.0) * std::exp(-sq(s + s0)));
  };
  p.bounds_.gamma_max = scan(g);
  p.bounds_.dgamma_max = scan(dg);
  p.bounds_.d2gamma_max = scan(d2g);
  return p;
}

CurvatureProfile CurvatureProfile::custom(std::function<double(double)> g,
                                          std::function<double(double)> dg,
                                          std::function<double(double)> d2g,
                                          CurveBounds bounds, bool decaying) {
  if (!g) throw ParameterError("custom profile: gamma function required");
  CurvatureProfile p;
  p.family_ = Family::Custom;
  p.fg_ = std::move(g);
  p.fdg_ = std::move(dg);
  p.fd2g_ = std::move(d2g);
  p.bounds_ = bounds;
  p.decaying_ = decaying;
  return p;
}

double CurvatureProfile::gamma(double s) const {
  switch (family_) {
    case Family::Line: return 0.0;
    case Family::GaussianBump: return c_ * std::exp(-s * s);
    case Family::TwoBump:
      return c_ * (std::exp(-sq(s - s0_)) + std::exp(-sq(s + s0_)));
    case Family::Custom: return fg_(s);
  }
  return 0.0;
}

double CurvatureProfile::dgamma(double s) const {
  switch (family_) {
    case Family::Line: return 0.0;
    case Family::GaussianBump: return -2.0 * c_ * s * std::exp(-s * s);
    case Family::TwoBump:
      return -2.0 * c_ * ((s - s0_) * std::exp(-sq(s - s0_)) +
                          (s + s0_) * std::exp(-sq(s + s0_)));
    case Family::Custom:
      if (fdg_) return fdg_(s);
      {
        // 5-point centered difference, h balancing truncation and roundoff
        const double h = 1e-3 * std::max(1.0, std::abs(s));
        return (-fg_(s + 2 * h) + 8 * fg_(s + h) - 8 * fg_(s - h) + fg_(s - 2 * h)) / (12 * h);
      }
  }
  return 0.0;
}

double CurvatureProfile::d2gamma(double s) const {
  switch (family_) {
    case Family::Line: return 0.0;
    case Family::GaussianBump:
      return c_ * (4.0 * s * s - 2.0) * std::exp(-s * s);
    case Family::TwoBump:
      return c_ * ((4.0 * sq(s - s0_) - 2.0) * std::exp(-sq(s - s0_)) +
                   (4.0 * sq(s + s0_) - 2.0) * std::exp(-sq(s + s0_)));
    case Family::Custom:
      if (fd2g_) return fd2g_(s);
      {
        const double h = 2e-3 * std::max(1.0, std::abs(s));
        return (-fg_(s + 2 * h) + 16 * fg_(s + h) - 30 * fg_(s) + 16 * fg_(s - h) -
                fg_(s - 2 * h)) / (12 * h * h);
      }
  }
  return 0.0;
}

double CurvatureProfile::decay_window(double eps) const {
  switch (family_) {
    case Family::Line: return 0.0;
    case Family::GaussianBump:
      return c_ <= eps ? 0.0 : std::sqrt(std::log(c_ / eps));
    case Family::TwoBump:
      return 2.0 * c_ <= eps ? 0.0 : s0_ + std::sqrt(std::log(2.0 * c_ / eps));
    case Family::Custom: {
      if (!decaying_) throw ParameterError("custom profile is not decaying");
      double S = 0.0;
      while (S < 1e4) {
        bool quiet = true;
        for (int i = 0; i < 32; ++i) {
          if (std::abs(fg_(S + i * 0.25)) >= eps) { quiet = false; break; }
        }
        if (quiet) return S;
        S += 1.0;
      }
      throw NumericalError("custom profile: decay window not found below 1e4");
    }
  }
  return 0.0;
}

CurveBounds CurvatureProfile::tail_bounds(double S) const {
  CurveBounds t;
  switch (family_) {
    case Family::Line:
      return t;
    case Family::GaussianBump: {
      t.gamma_max = c_ * std::exp(-S * S);
      const double s1 = 1.0 / std::sqrt(2.0);
      t.dgamma_max = 2.0 * c_ * (S >= s1 ? genv1(S) : genv1(s1));
      // |gamma''| critical values at s = 0 and s = sqrt(3/2)
      const double s2 = std::sqrt(1.5);
      double v = std::abs(4.0 * S * S - 2.0) * std::exp(-S * S);
      if (S <= s2) v = std::max(v, 4.0 * std::exp(-1.5));
      if (S <= 0.0) v = std::max(v, 2.0);
      t.d2gamma_max = c_ * v;
      return t;
    }
    case Family::TwoBump: {
      const double x = S - s0_;
      if (x < 1.0) return bounds_;  // fall back to global bounds near the bumps
      t.gamma_max = c_ * (std::exp(-sq(x)) + std::exp(-sq(S + s0_)));
      t.dgamma_max = 2.0 * c_ * (genv1(x) + genv1(S + s0_));
      t.d2gamma_max = c_ * (genv2(x) + genv2(S + s0_));
      return t;
    }
    case Family::Custom:
      return bounds_;  // certified but crude
  }
  return t;
}

std::string CurvatureProfile::family_name() const {
  switch (family_) {
    case Family::Line: return "line";
    case Family::GaussianBump: return "gaussian_bump";
    case Family::TwoBump: return "two_bump";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PlanarCurve

PlanarCurve PlanarCurve::straight_line() {
  PlanarCurve c;
  c.kind_ = Kind::ClosedForm;
  c.closed_family_ = ClosedFamily::Line;
  c.profile_ = CurvatureProfile::line();
  c.window_ = std::numeric_limits<double>::infinity();
  return c;
}

PlanarCurve PlanarCurve::circle(double radius) {
  if (!(radius > 0.0)) throw ParameterError("circle: radius must be positive");
  PlanarCurve c;
  c.kind_ = Kind::ClosedForm;
  c.closed_family_ = ClosedFamily::Circle;
  c.circle_radius_ = radius;
  c.window_ = std::numeric_limits<double>::infinity();
  return c;
}

PlanarCurve PlanarCurve::from_components(std::function<double(double)> x,
                                         std::function<double(double)> y) {
  PlanarCurve c;
  c.kind_ = Kind::ClosedForm;
  c.closed_family_ = ClosedFamily::Raw;
  c.fx_ = std::move(x);
  c.fy_ = std::move(y);
  c.window_ = std::numeric_limits<double>::infinity();
  return c;
}

std::array<double, 3> PlanarCurve::state_at(double s) const {
  if (kind_ != Kind::CurvatureDefined)
    throw ParameterError("state_at: curve is not curvature-defined");
  if (std::abs(s) > window_ * (1.0 + 1e-12))
    throw ParameterError("curve evaluation outside cached window");
  const double W = window_;
  double pos = (s + W) / grid_h_;
  int idx = std::min(static_cast<int>(table_.size()) - 1,
                     std::max(0, static_cast<int>(std::floor(pos))));
  double s_node = -W + idx * grid_h_;
  double delta = s - s_node;
  std::array<double, 3> y = table_[static_cast<size_t>(idx)];
  if (std::abs(delta) < 1e-14 * std::max(1.0, W)) return y;
  // a couple of RK4 substeps from the nearest node reach s exactly
  const auto& prof = *profile_;
  auto rhs = [&prof](double sv, const std::array<double, 3>& yv) {
    return std::array<double, 3>{-prof.gamma(sv), std::cos(yv[0]), std::sin(yv[0])};
  };
  int nsub = delta > grid_h_ ? 2 : 1;
  double hsub = delta / nsub;
  double sc = s_node;
  for (int i = 0; i < nsub; ++i) {
    auto k1 = rhs(sc, y);
    std::array<double, 3> y2{y[0] + 0.5 * hsub * k1[0], y[1] + 0.5 * hsub * k1[1],
                             y[2] + 0.5 * hsub * k1[2]};
    auto k2 = rhs(sc + 0.5 * hsub, y2);
    std::array<double, 3> y3{y[0] + 0.5 * hsub * k2[0], y[1] + 0.5 * hsub * k2[1],
                             y[2] + 0.5 * hsub * k2[2]};
    auto k3 = rhs(sc + 0.5 * hsub, y3);
    std::array<double, 3> y4{y[0] + hsub * k3[0], y[1] + hsub * k3[1], y[2] + hsub * k3[2]};
    auto k4 = rhs(sc + hsub, y4);
    for (int j = 0; j < 3; ++j)
      y[j] += hsub / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    sc += hsub;
  }
  return y;
}

std::array<double, 2> PlanarCurve::point(double s) const {
  switch (kind_) {
    case Kind::ClosedForm:
      switch (closed_family_) {
        case ClosedFamily::Line: return {s, 0.0};
        case ClosedFamily::Circle:
          return {circle_radius_ * std::sin(s / circle_radius_),
                  circle_radius_ * std::cos(s / circle_radius_)};
        case ClosedFamily::Raw: return {fx_(s), fy_(s)};
      }
      break;
    case Kind::CurvatureDefined: {
      auto st = state_at(s);
      return {st[1], st[2]};
    }
  }
  return {0.0, 0.0};
}

double PlanarCurve::tangent_angle(double s) const { return state_at(s)[0]; }

std::array<double, 2> PlanarCurve::derivative(double s, int k) const {
  if (k < 1 || k > 4) throw ParameterError("derivative order must be 1..4");
  switch (kind_) {
    case Kind::ClosedForm:
      switch (closed_family_) {
        case ClosedFamily::Line:
          return k == 1 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 0.0};
        case ClosedFamily::Circle: {
          const double R = circle_radius_, t = s / R;
          switch (k) {
            case 1: return {std::cos(t), -std::sin(t)};
            case 2: return {-std::sin(t) / R, -std::cos(t) / R};
            case 3: return {-std::cos(t) / (R * R), std::sin(t) / (R * R)};
            default: return {std::sin(t) / (R * R * R), std::cos(t) / (R * R * R)};
          }
        }
        case ClosedFamily::Raw: {
          const double h = 1e-3 * std::max(1.0, std::abs(s));
          auto d = [&](const std::function<double(double)>& f) -> double {
            switch (k) {
              case 1:
                return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h);
              case 2:
                return (-f(s + 2 * h) + 16 * f(s + h) - 30 * f(s) + 16 * f(s - h) -
                        f(s - 2 * h)) / (12 * h * h);
              case 3:
                return (f(s + 2 * h) - 2 * f(s + h) + 2 * f(s - h) - f(s - 2 * h)) /
                       (2 * h * h * h);
              default:
                return (f(s + 2 * h) - 4 * f(s + h) + 6 * f(s) - 4 * f(s - h) +
                        f(s - 2 * h)) / (h * h * h * h);
            }
          };
          return {d(fx_), d(fy_)};
        }
      }
      break;
    case Kind::CurvatureDefined: {
      auto st = state_at(s);
      const double theta = st[0];
      const auto& prof = *profile_;
      const double g = prof.gamma(s), dg = prof.dgamma(s), d2g = prof.d2gamma(s);
      const std::complex<double> z{std::cos(theta), std::sin(theta)};
      std::complex<double> w;
      switch (k) {
        case 1: w = z; break;
        case 2: w = std::complex<double>(0.0, -g) * z; break;
        case 3: w = std::complex<double>(-g * g, -dg) * z; break;
        default: w = std::complex<double>(-3.0 * g * dg, g * g * g - d2g) * z; break;
      }
      return {w.real(), w.imag()};
    }
  }
  return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// Operations

double signed_curvature(const PlanarCurve& curve, double s) {
  if (curve.kind() == PlanarCurve::Kind::CurvatureDefined)
    return curve.profile()->gamma(s);
  auto d1 = curve.derivative(s, 1);
  double speed2 = d1[0] * d1[0] + d1[1] * d1[1];
  if (std::abs(speed2 - 1.0) > kUnitSpeedTol)
    throw GeometryError("signed_curvature: parameterization is not unit speed at s");
  auto d2 = curve.derivative(s, 2);
  return d2[0] * d1[1] - d1[0] * d2[1];
}

PlanarCurve curve_from_curvature(const CurvatureProfile& profile, double window,
                                 double tol) {
  if (!(window > 0.0)) throw ParameterError("curve_from_curvature: window must be positive");
  PlanarCurve c;
  c.kind_ = PlanarCurve::Kind::CurvatureDefined;
  c.profile_ = profile;
  c.window_ = window;

  auto rhs = [&profile](double sv, const std::array<double, 3>& yv) {
    return std::array<double, 3>{-profile.gamma(sv), std::cos(yv[0]), std::sin(yv[0])};
  };
  auto integrate = [&](double h) {
    const int n_side = static_cast<int>(std::llround(window / h));
    std::vector<std::array<double, 3>> tab(static_cast<size_t>(2 * n_side + 1));
    tab[static_cast<size_t>(n_side)] = {0.0, 0.0, 0.0};
    for (int dir : {+1, -1}) {
      std::array<double, 3> y{0.0, 0.0, 0.0};
      double sc = 0.0;
      const double hs = dir * h;
      for (int i = 1; i <= n_side; ++i) {
        auto k1 = rhs(sc, y);
        std::array<double, 3> y2{y[0] + 0.5 * hs * k1[0], y[1] + 0.5 * hs * k1[1],
                                 y[2] + 0.5 * hs * k1[2]};
        auto k2 = rhs(sc + 0.5 * hs, y2);
        std::array<double, 3> y3{y[0] + 0.5 * hs * k2[0], y[1] + 0.5 * hs * k2[1],
                                 y[2] + 0.5 * hs * k2[2]};
        auto k3 = rhs(sc + 0.5 * hs, y3);
        std::array<double, 3> y4{y[0] + hs * k3[0], y[1] + hs * k3[1], y[2] + hs * k3[2]};
        auto k4 = rhs(sc + hs, y4);
        for (int j = 0; j < 3; ++j)
          y[j] += hs / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        sc += hs;
        tab[static_cast<size_t>(n_side + dir * i)] = y;
      }
    }
    return tab;
  };

  double h = window / std::max(2000, static_cast<int>(std::ceil(window * 2000.0)));
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto coarse = integrate(h);
    auto fine = integrate(h / 2);
    double err = 0.0;
    for (size_t i = 0; i < coarse.size(); ++i) {
      const auto& a = coarse[i];
      const auto& b = fine[2 * i];
      err = std::max({err, std::abs(a[0] - b[0]), std::abs(a[1] - b[1]),
                      std::abs(a[2] - b[2])});
    }
    // the fine table is kept; its error is ~|coarse - fine| / (2^4 - 1)
    if (err / 15.0 <= tol) {
      c.grid_h_ = h / 2;
      c.table_ = std::move(fine);
      return c;
    }
    h /= 4.0;
  }
  throw NumericalError("curve_from_curvature: integrator tolerance not met");
}

std::array<double, 2> map_to_strip(const PlanarCurve& curve, double s, double u) {
  auto p = curve.point(s);
  auto d1 = curve.derivative(s, 1);
  return {p[0] + u * d1[1], p[1] - u * d1[0]};
}

double injectivity_halfwidth(const PlanarCurve& curve, double window) {
  if (!(window > 0.0)) throw ParameterError("injectivity_halfwidth: window must be positive");
  double gmax = 0.0;
  if (curve.profile()) {
    gmax = curve.profile()->bounds().gamma_max;
  } else {
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
      double s = -window + 2.0 * window * i / n;
      gmax = std::max(gmax, std::abs(signed_curvature(curve, s)));
    }
  }
  double d = gmax > 0.0 ? 1.0 / gmax : kInjectivityCap;

  // Self-approach pairs are interior local minima of the pairwise distance
  // over the non-adjacent region; pairs at arc separation below the
  // comparison-circle arc pi/gamma_max cannot fold at widths < 1/gamma_max,
  // and minima sitting on the adjacency or window boundary are artifacts of
  // the cutoff, not approaches.
  const double sep = gmax > 0.0 ? std::min(std::acos(-1.0) / gmax, window) : window;
  const int n_coarse = 1200;
  const double ds = 2.0 * window / n_coarse;
  const int ksep = static_cast<int>(std::ceil(sep / ds));
  std::vector<std::array<double, 2>> pts(static_cast<size_t>(n_coarse) + 1);
  for (int i = 0; i <= n_coarse; ++i)
    pts[static_cast<size_t>(i)] = curve.point(-window + i * ds);
  auto dist = [&](int i, int j) {
    const auto& p = pts[static_cast<size_t>(i)];
    const auto& q = pts[static_cast<size_t>(j)];
    return std::hypot(p[0] - q[0], p[1] - q[1]);
  };
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n_coarse; ++i) {
    for (int j = i + ksep + 1; j < n_coarse; ++j) {
      const double D = dist(i, j);
      if (D >= best) continue;
      bool is_min = dist(i - 1, j) >= D && dist(i + 1, j) >= D && dist(i, j - 1) >= D &&
                    dist(i, j + 1) >= D && (j - (i + 1)) > ksep;
      if (!is_min) continue;
      // refine the candidate pair by coordinate descent down to 1e-3
      double si = -window + i * ds, sj = -window + j * ds, Dref = D;
      for (double res = ds / 4.0; res > 2.5e-4; res /= 4.0) {
        for (int pass = 0; pass < 3; ++pass) {
          for (double x = si - 4 * res; x <= si + 4 * res; x += res) {
            if (std::abs(x) > window || sj - x < sep) continue;
            auto p = curve.point(x);
            const auto& q0 = curve.point(sj);
            const double Dx = std::hypot(p[0] - q0[0], p[1] - q0[1]);
            if (Dx < Dref) { Dref = Dx; si = x; }
          }
          for (double y = sj - 4 * res; y <= sj + 4 * res; y += res) {
            if (std::abs(y) > window || y - si < sep) continue;
            auto q = curve.point(y);
            const auto& p0 = curve.point(si);
            const double Dy = std::hypot(p0[0] - q[0], p0[1] - q[1]);
            if (Dy < Dref) { Dref = Dy; sj = y; }
          }
        }
      }
      best = std::min(best, Dref);
    }
  }
  if (std::isfinite(best)) d = std::min(d, best / 2.0);
  return std::min(d, kInjectivityCap);
}

double metric_factor(const CurvatureProfile& profile, double s, double u) {
  const double g = 1.0 + u * profile.gamma(s);
  if (!(g > 0.0) || std::abs(u * profile.gamma(s)) >= 1.0)
    throw GeometryError("metric_factor: degenerate metric, |u*gamma| >= 1");
  return g;
}

double geometric_potential(const CurvatureProfile& profile, double s, double u) {
  const double g = metric_factor(profile, s, u);
  const double gam = profile.gamma(s);
  const double dg = profile.dgamma(s);
  const double d2g = profile.d2gamma(s);
  return u * d2g / (2.0 * g * g * g) - 5.0 * sq(u * dg) / (4.0 * sq(sq(g))) -
         gam * gam / (4.0 * g * g);
}

BracketPotentials::BracketPotentials(const CurveBounds& bounds,
                                     const CurvatureProfile& profile, double a)
    : profile_(profile), a_(a) {
  if (!(a >= 0.0)) throw ParameterError("bracket_potentials: a must be nonnegative");
  const double ag = a * bounds.gamma_max;
  if (ag >= 1.0) throw ParameterError("bracket_potentials: a*gamma_max >= 1");
  const double om = 1.0 - ag, op = 1.0 + ag;
  pedestal_ = a * bounds.d2gamma_max / (2.0 * om * om * om);
  dgamma_term_ = 5.0 * sq(a * bounds.dgamma_max) / (4.0 * sq(sq(om)));
  coef_plus_ = 1.0 / (4.0 * op * op);
  coef_minus_ = 1.0 / (4.0 * om * om);
}

double BracketPotentials::plus(double s) const {
  return pedestal_ - sq(profile_.gamma(s)) * coef_plus_;
}

double BracketPotentials::minus(double s) const {
  return -pedestal_ - dgamma_term_ - sq(profile_.gamma(s)) * coef_minus_;
}

BracketPotentials bracket_potentials(const CurveBounds& bounds,
                                     const CurvatureProfile& profile, double a) {
  return BracketPotentials(bounds, profile, a);
}

double potential_tail_bound(const CurvatureProfile& profile, double a, double tau) {
  const double ag = a * profile.bounds().gamma_max;
  if (ag >= 1.0) throw ParameterError("potential_tail_bound: a*gamma_max >= 1");
  const CurveBounds t = profile.tail_bounds(tau);
  const double om = 1.0 - ag;
  return a * t.d2gamma_max / (2.0 * om * om * om) +
         5.0 * sq(a * t.dgamma_max) / (4.0 * sq(sq(om))) +
         sq(t.gamma_max) / (4.0 * om * om);
}

double v_tau(const CurvatureProfile& profile, double a, double tau) {
  if (profile.is_line()) return 0.0;
  if (!(a > 0.0) || !(tau >= 0.0)) throw ParameterError("v_tau: require a > 0, tau >= 0");
  const double floor_bound = -potential_tail_bound(profile, a, tau);

  const double s_far = std::max(tau + 4.0, profile.decay_window(1e-18) + 1.0);
  auto eval_min = [&](double s_lo, double s_hi, double u_lo, double u_hi, int ns,
                      int nu, double* s_arg, double* u_arg) {
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= ns; ++i) {
      double s = s_lo + (s_hi - s_lo) * i / ns;
      for (int j = 0; j <= nu; ++j) {
        double u = u_lo + (u_hi - u_lo) * j / nu;
        for (double sgn : {1.0, -1.0}) {  // built-ins are even; scan both for safety
          double v = geometric_potential(profile, sgn * s, u);
          if (v < vmin) { vmin = v; *s_arg = sgn * s; *u_arg = u; }
        }
      }
    }
    return vmin;
  };

  double s_arg = tau, u_arg = 0.0;
  double vmin = eval_min(tau, s_far, -a, a, 480, 24, &s_arg, &u_arg);
  double prev = vmin;
  double ds = (s_far - tau) / 480.0, du = 2.0 * a / 24.0;
  for (int pass = 0; pass < 3; ++pass) {
    double s_lo = std::max(tau, std::abs(s_arg) - 2.0 * ds);
    double s_hi = std::min(s_far, std::abs(s_arg) + 2.0 * ds);
    double u_lo = std::max(-a, u_arg - 2.0 * du);
    double u_hi = std::min(a, u_arg + 2.0 * du);
    prev = vmin;
    double local = eval_min(s_lo, s_hi, u_lo, u_hi, 32, 32, &s_arg, &u_arg);
    vmin = std::min(vmin, local);
    ds = (s_hi - s_lo) / 32.0;
    du = (u_hi - u_lo) / 32.0;
  }
  const double margin = std::abs(prev - vmin) + 1e-6 * std::abs(vmin);
  double result = std::min(vmin - margin, 0.0);
  return std::max(result, floor_bound);
}

}  // namespace dp

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltaprime/bracketing.hpp"
#include "deltaprime/version.hpp"

namespace py = pybind11;
using namespace dp;

namespace {

CurvatureProfile make_profile(const std::string& family, double c, double s0) {
  if (family == "line") return CurvatureProfile::line();
  if (family == "gaussian_bump") return CurvatureProfile::gaussian_bump(c);
  if (family == "two_bump") return CurvatureProfile::two_bump(c, s0);
  throw ParameterError("unknown curve family: " + family);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral toolkit for attractive delta-prime couplings supported "
            "by asymptotically straight planar curves";
  m.attr("__version__") = kVersion;

  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<CurveBounds>(m, "CurveBounds")
      .def_readonly("gamma_max", &CurveBounds::gamma_max)
      .def_readonly("dgamma_max", &CurveBounds::dgamma_max)
      .def_readonly("d2gamma_max", &CurveBounds::d2gamma_max);

  py::class_<CurvatureProfile>(m, "CurvatureProfile")
      .def_static("line", &CurvatureProfile::line)
      .def_static("gaussian_bump", &CurvatureProfile::gaussian_bump, py::arg("c"))
      .def_static("two_bump", &CurvatureProfile::two_bump, py::arg("c"), py::arg("s0"))
      .def("gamma", &CurvatureProfile::gamma, py::arg("s"))
      .def("dgamma", &CurvatureProfile::dgamma, py::arg("s"))
      .def("d2gamma", &CurvatureProfile::d2gamma, py::arg("s"))
      .def("decay_window", &CurvatureProfile::decay_window, py::arg("eps") = 1e-12)
      .def_property_readonly("bounds", &CurvatureProfile::bounds)
      .def_property_readonly("family", &CurvatureProfile::family_name)
      .def_property_readonly("is_line", &CurvatureProfile::is_line);

  py::class_<PlanarCurve>(m, "PlanarCurve")
      .def_static("straight_line", &PlanarCurve::straight_line)
      .def_static("circle", &PlanarCurve::circle, py::arg("radius"))
      .def("point", &PlanarCurve::point, py::arg("s"))
      .def("derivative", &PlanarCurve::derivative, py::arg("s"), py::arg("order"))
      .def("tangent_angle", &PlanarCurve::tangent_angle, py::arg("s"));

  m.def("signed_curvature", &signed_curvature, py::arg("curve"), py::arg("s"));
  m.def("curve_from_curvature", &curve_from_curvature, py::arg("profile"),
        py::arg("window") = 20.0, py::arg("tol") = 1e-11);
  m.def("map_to_strip", &map_to_strip, py::arg("curve"), py::arg("s"), py::arg("u"));
  m.def("injectivity_halfwidth", &injectivity_halfwidth, py::arg("curve"),
        py::arg("window"));
  m.def("metric_factor", &metric_factor, py::arg("profile"), py::arg("s"), py::arg("u"));
  m.def("geometric_potential", &geometric_potential, py::arg("profile"), py::arg("s"),
        py::arg("u"));
  m.def(
      "bracket_potentials",
      [](const CurvatureProfile& p, double a, double s) {
        auto br = bracket_potentials(p.bounds(), p, a);
        return py::make_tuple(br.plus(s), br.minus(s));
      },
      py::arg("profile"), py::arg("a"), py::arg("s"),
      "Evaluate (V_plus(s), V_minus(s)) for half-width a");
  m.def("v_tau", &v_tau, py::arg("profile"), py::arg("a"), py::arg("tau"));
  m.def("make_profile", &make_profile, py::arg("family"), py::arg("c") = 0.0,
        py::arg("s0") = 0.0);

  py::class_<TransverseEigenvalue>(m, "TransverseEigenvalue")
      .def_readonly("t", &TransverseEigenvalue::t)
      .def_readonly("kappa", &TransverseEigenvalue::kappa)
      .def_readonly("residual", &TransverseEigenvalue::residual)
      .def_readonly("method", &TransverseEigenvalue::method);

  m.def("transverse_eigenvalue_dirichlet", &transverse_eigenvalue_dirichlet,
        py::arg("a"), py::arg("beta"), py::arg("allow_below_regime") = false);
  m.def("transverse_eigenvalue_robin", &transverse_eigenvalue_robin, py::arg("a"),
        py::arg("beta"), py::arg("gamma_plus"), py::arg("allow_below_regime") = false);
  m.def("lemma_trans_envelope", &lemma_trans_envelope, py::arg("a"), py::arg("beta"),
        py::arg("allow_below_regime") = false);
  m.def(
      "transverse_fd_oracle",
      [](double a, double beta, double gamma_s, double gamma_plus, const std::string& bc,
         int n) {
        TransverseProblem p;
        p.a = a;
        p.beta = beta;
        p.gamma_s = gamma_s;
        p.gamma_plus = gamma_plus;
        p.bc = bc == "robin" ? TransverseBc::Robin : TransverseBc::Dirichlet;
        auto r = transverse_fd_oracle(p, n);
        return py::make_tuple(r.eigenvalue.t, r.negative_count);
      },
      py::arg("a"), py::arg("beta"), py::arg("gamma_s") = 0.0,
      py::arg("gamma_plus") = 0.0, py::arg("bc") = "dirichlet", py::arg("n") = 1024);

  py::class_<Eigenvalue1D>(m, "Eigenvalue1D")
      .def_readonly("value", &Eigenvalue1D::value)
      .def_readonly("err_disc", &Eigenvalue1D::err_disc)
      .def_readonly("err_trunc", &Eigenvalue1D::err_trunc);

  py::class_<Spectrum1D>(m, "Spectrum1D")
      .def_readonly("eigenvalues", &Spectrum1D::eigenvalues)
      .def_readonly("count_capped", &Spectrum1D::count_capped)
      .def_readonly("L_used", &Spectrum1D::L_used)
      .def_readonly("n_used", &Spectrum1D::n_used);

  m.def(
      "comparison_spectrum",
      [](const CurvatureProfile& p, int k, double L, int n) {
        const double LL = L > 0 ? L : p.decay_window(1e-10) + 40.0;
        const int nn = n > 0 ? n : std::max(512, static_cast<int>(48 * LL));
        return lowest_eigenvalues_1d(build_comparison_operator(p, LL, nn), k, true,
                                     L <= 0);
      },
      py::arg("profile"), py::arg("k") = 1, py::arg("L") = 0.0, py::arg("n") = 0,
      "Eigenvalues mu_j of -d^2/ds^2 - gamma^2/4");
  m.def(
      "bracket_spectrum_1d",
      [](const CurvatureProfile& p, const std::string& sign, double a, int k, double L,
         int n) {
        const double LL = L > 0 ? L : p.decay_window(1e-10) + 40.0;
        const int nn = n > 0 ? n : std::max(512, static_cast<int>(48 * LL));
        auto spec = build_bracket_operator(
            sign == "plus" ? BracketSign::Plus : BracketSign::Minus, p, p.bounds(), a,
            LL, nn);
        return lowest_eigenvalues_1d(spec, k, false, L <= 0);
      },
      py::arg("profile"), py::arg("sign"), py::arg("a"), py::arg("k") = 1,
      py::arg("L") = 0.0, py::arg("n") = 0,
      "Eigenvalues mu_j^pm(a) of the bracket operators U_a^pm");

  m.def("halfwidth_schedule",
        [](double beta) {
          bool ok = false;
          const double a = halfwidth_schedule(beta, &ok);
          return py::make_tuple(a, ok);
        },
        py::arg("beta"), "Returns (a(beta), regime_ok)");

  py::class_<EssentialThresholdBound>(m, "EssentialThresholdBound")
      .def_readonly("beta", &EssentialThresholdBound::beta)
      .def_readonly("tau", &EssentialThresholdBound::tau)
      .def_readonly("a", &EssentialThresholdBound::a)
      .def_readonly("v_tau", &EssentialThresholdBound::v_tau)
      .def_readonly("bound", &EssentialThresholdBound::bound)
      .def_readonly("best_bound", &EssentialThresholdBound::best_bound)
      .def_readonly("best_tau", &EssentialThresholdBound::best_tau);

  m.def("ess_threshold_bound", &ess_threshold_bound, py::arg("profile"), py::arg("beta"),
        py::arg("tau"), py::arg("a"), py::arg("allow_below_regime") = false);

  py::class_<BracketIndexRecord>(m, "BracketIndexRecord")
      .def_readonly("j", &BracketIndexRecord::j)
      .def_readonly("lower", &BracketIndexRecord::lower)
      .def_readonly("upper", &BracketIndexRecord::upper)
      .def_readonly("prediction", &BracketIndexRecord::prediction);

  py::class_<BracketedSpectrum>(m, "BracketedSpectrum")
      .def_readonly("beta", &BracketedSpectrum::beta)
      .def_readonly("a", &BracketedSpectrum::a)
      .def_readonly("regime", &BracketedSpectrum::regime)
      .def_readonly("records", &BracketedSpectrum::records)
      .def_readonly("count_capped", &BracketedSpectrum::count_capped)
      .def_property_readonly("t_minus",
                             [](const BracketedSpectrum& b) { return b.t_minus.t; })
      .def_property_readonly("t_plus",
                             [](const BracketedSpectrum& b) { return b.t_plus.t; });

  m.def(
      "bracket_spectrum",
      [](const CurvatureProfile& p, double beta, int k, bool allow) {
        BracketOptions opts;
        opts.allow_below_regime = allow;
        return bracket_spectrum(p, beta, k, opts);
      },
      py::arg("profile"), py::arg("beta"), py::arg("k") = 1,
      py::arg("allow_below_regime") = false);

  m.def(
      "solve_strip",
      [](const CurvatureProfile& p, double a, double beta, double L, int ns, int nu,
         const std::string& which, int k, double rtol) {
        auto op = assemble_form(p, a, 1.0 / beta, L, ns, std::max(4, nu / 2),
                                which == "minus" ? FormKind::QMinus : FormKind::QPlus);
        auto eig = lowest_eigenvalues_2d(op, k, rtol);
        return py::make_tuple(eig.values, eig.residuals);
      },
      py::arg("profile"), py::arg("a"), py::arg("beta"), py::arg("L"),
      py::arg("ns") = 200, py::arg("nu") = 48, py::arg("which") = "plus",
      py::arg("k") = 1, py::arg("rtol") = 1e-9,
      "Lowest eigenvalues of the 2D strip form; nu counts u cells across both sides");
}

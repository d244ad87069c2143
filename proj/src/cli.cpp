#include "deltaprime/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "deltaprime/bracketing.hpp"
#include "deltaprime/io.hpp"
#include "deltaprime/version.hpp"

namespace dp::cli {

namespace {

using nlohmann::json;

std::string out_path(const std::string& out_flag, const std::string& fallback) {
  if (!out_flag.empty()) return out_flag;
  const char* dir = std::getenv("DELTAPRIME_OUT");
  if (dir && *dir) return std::string(dir) + "/" + fallback;
  return fallback;
}

std::vector<std::string> collect_argv(int argc, const char* const* argv) {
  std::vector<std::string> v;
  v.reserve(static_cast<size_t>(argc));
  for (int i = 0; i < argc; ++i) v.emplace_back(argv[i]);
  return v;
}

struct CurveArgs {
  std::string config;
  double window = 20.0;
};

CurvatureProfile load_profile(const std::string& config) {
  if (config.empty()) throw ParameterError("missing --curve configuration file");
  return profile_from_file(config);
}

int cmd_curve(const CurveArgs& args, const std::vector<std::string>& argv,
              const std::string& out_flag) {
  auto profile = load_profile(args.config);
  auto curve = profile.is_line() ? PlanarCurve::straight_line()
                                 : curve_from_curvature(profile, args.window);
  const double dhat = injectivity_halfwidth(curve, std::min(args.window, 1e3));
  json result;
  result["family"] = profile.family_name();
  result["gamma_max"] = profile.bounds().gamma_max;
  result["dgamma_max"] = profile.bounds().dgamma_max;
  result["d2gamma_max"] = profile.bounds().d2gamma_max;
  result["injectivity_halfwidth"] = dhat;
  result["decay_window"] = profile.is_line() ? 0.0 : profile.decay_window();
  std::cout << result.dump(2) << "\n";
  if (!out_flag.empty()) {
    std::ofstream f(out_flag);
    f << result.dump(2) << "\n";
    auto m = make_manifest("curve", argv, {{"window", args.window}}, profile_to_json(profile));
    write_manifest(m, out_flag);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Spectral toolkit for delta-prime couplings on planar curves"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  const auto argv_vec = collect_argv(argc, argv);

  // curve
  CurveArgs curve_args;
  std::string curve_out;
  auto* sc_curve = app.add_subcommand("curve", "Curve geometry summary");
  sc_curve->add_option("--curve", curve_args.config, "curve config JSON")->required();
  sc_curve->add_option("--window", curve_args.window, "arc-length half window");
  sc_curve->add_option("--out,-o", curve_out, "output JSON path");

  // transverse
  struct {
    double a = 0.0, beta = 0.0, gamma_plus = 0.0;
    std::string bc = "dirichlet";
    int oracle_n = 0;
    bool allow = false;
    std::string out;
  } tr;
  auto* sc_tr = app.add_subcommand("transverse", "Transverse interval eigenvalue");
  sc_tr->add_option("--a", tr.a, "strip half-width")->required();
  sc_tr->add_option("--beta", tr.beta, "coupling parameter")->required();
  sc_tr->add_option("--gamma-plus", tr.gamma_plus, "Robin wall coefficient");
  sc_tr->add_option("--bc", tr.bc, "dirichlet|robin")
      ->check(CLI::IsMember({"dirichlet", "robin"}));
  sc_tr->add_option("--oracle", tr.oracle_n, "finite-difference oracle cells per side");
  sc_tr->add_flag("--allow-below-regime", tr.allow, "evaluate outside the Lemma regime");
  sc_tr->add_option("--out,-o", tr.out, "output JSON path");

  // spectrum1d
  struct {
    std::string op = "S", curve, out;
    double a = 0.0, L = 0.0;
    int k = 1, n = 0;
  } s1;
  auto* sc_s1 = app.add_subcommand("spectrum1d", "Longitudinal 1D spectra");
  sc_s1->add_option("--operator", s1.op, "S|Uplus|Uminus")
      ->check(CLI::IsMember({"S", "Uplus", "Uminus"}));
  sc_s1->add_option("--curve", s1.curve, "curve config JSON")->required();
  sc_s1->add_option("--a", s1.a, "strip half-width (Uplus/Uminus)");
  sc_s1->add_option("--k", s1.k, "number of eigenvalues");
  sc_s1->add_option("--L", s1.L, "truncation half-length (0: automatic)");
  sc_s1->add_option("--n", s1.n, "grid cells (0: automatic)");
  sc_s1->add_option("--out,-o", s1.out, "output CSV path");

  // solve2d
  struct {
    std::string curve, which = "plus", out, dump;
    double beta = 0.0, a = 0.0, L = 0.0;
    int ns = 400, nu = 64, k = 1, levels = 1;
  } s2;
  auto* sc_s2 = app.add_subcommand("solve2d", "2D strip eigenvalues");
  sc_s2->add_option("--curve", s2.curve, "curve config JSON")->required();
  sc_s2->add_option("--beta", s2.beta, "coupling parameter")->required();
  sc_s2->add_option("--a", s2.a, "strip half-width")->required();
  sc_s2->add_option("--L", s2.L, "truncation half-length")->required();
  sc_s2->add_option("--ns", s2.ns, "s cells");
  sc_s2->add_option("--nu", s2.nu, "u cells (total across both sides)");
  sc_s2->add_option("--which", s2.which, "plus|minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  sc_s2->add_option("--k", s2.k, "number of eigenvalues");
  sc_s2->add_option("--levels", s2.levels, "refinement levels for order estimates");
  sc_s2->add_option("--dump-matrix", s2.dump, "write (row,col,value) triplets");
  sc_s2->add_option("--out,-o", s2.out, "output CSV path");

  // asymptotics
  struct {
    std::string curve, out, betas = "0.06,0.04,0.02";
    int k = 1, jobs = 1, ns = 1500, nu = 160;
    double L = 0.0;
    bool direct = false, allow = false;
  } as;
  auto* sc_as = app.add_subcommand("asymptotics", "Strong-coupling residual study");
  sc_as->add_option("--curve", as.curve, "curve config JSON")->required();
  sc_as->add_option("--betas", as.betas, "comma-separated beta grid");
  sc_as->add_option("--k", as.k, "eigenvalue indices");
  sc_as->add_flag("--direct", as.direct, "run the 2D strip solves");
  sc_as->add_option("--jobs", as.jobs, "parallel beta cases");
  sc_as->add_option("--ns", as.ns, "s cells for direct solves");
  sc_as->add_option("--nu", as.nu, "u cells (total) for direct solves");
  sc_as->add_option("--L", as.L, "truncation half-length (0: automatic)");
  sc_as->add_flag("--allow-below-regime", as.allow, "evaluate outside the Lemma regime");
  sc_as->add_option("--out,-o", as.out, "output CSV path");

  // threshold
  struct {
    std::string curve, out;
    double beta = 0.0, tau = 64.0, a = 0.0;
    bool allow = false;
  } th;
  auto* sc_th = app.add_subcommand("threshold", "Certified essential-spectrum threshold");
  sc_th->add_option("--curve", th.curve, "curve config JSON")->required();
  sc_th->add_option("--beta", th.beta, "coupling parameter")->required();
  sc_th->add_option("--tau", th.tau, "exterior cut");
  sc_th->add_option("--a", th.a, "strip half-width (0: schedule a(beta))");
  sc_th->add_flag("--allow-below-regime", th.allow, "evaluate outside the Lemma regime");
  sc_th->add_option("--out,-o", th.out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sc_curve->parsed()) return cmd_curve(curve_args, argv_vec, curve_out);

    if (sc_tr->parsed()) {
      TransverseEigenvalue ev =
          tr.bc == "robin"
              ? transverse_eigenvalue_robin(tr.a, tr.beta, tr.gamma_plus, tr.allow)
              : transverse_eigenvalue_dirichlet(tr.a, tr.beta, tr.allow);
      auto env = lemma_trans_envelope(tr.a, tr.beta, tr.allow);
      json result;
      result["t"] = ev.t;
      result["kappa"] = ev.kappa;
      result["method"] = ev.method;
      result["envelope_lower"] = env.first;
      result["envelope_upper"] = env.second;
      if (tr.oracle_n > 0) {
        TransverseProblem p;
        p.a = tr.a;
        p.beta = tr.beta;
        p.gamma_plus = tr.gamma_plus;
        p.bc = tr.bc == "robin" ? TransverseBc::Robin : TransverseBc::Dirichlet;
        auto orc = transverse_fd_oracle(p, tr.oracle_n);
        result["oracle_t"] = orc.eigenvalue.t;
        result["oracle_negative_count"] = orc.negative_count;
      }
      std::cout << result.dump(2) << "\n";
      if (!tr.out.empty()) {
        std::ofstream f(tr.out);
        f << result.dump(2) << "\n";
        json params = {{"a", tr.a},   {"beta", tr.beta},     {"gamma_plus", tr.gamma_plus},
                       {"bc", tr.bc}, {"oracle", tr.oracle_n}};
        write_manifest(make_manifest("transverse", argv_vec, params, json{}), tr.out);
      }
      return 0;
    }

    if (sc_s1->parsed()) {
      auto profile = load_profile(s1.curve);
      const double L = s1.L > 0.0 ? s1.L : profile.decay_window(1e-10) + 40.0;
      const int n = s1.n > 0 ? s1.n : std::max(512, static_cast<int>(48 * L));
      Operator1DSpec spec;
      bool negative_only = true;
      if (s1.op == "S") {
        spec = build_comparison_operator(profile, L, n);
      } else {
        if (!(s1.a > 0.0)) throw ParameterError("spectrum1d: --a required for Uplus/Uminus");
        spec = build_bracket_operator(
            s1.op == "Uplus" ? BracketSign::Plus : BracketSign::Minus, profile,
            profile.bounds(), s1.a, L, n);
        negative_only = false;
      }
      auto spectrum = lowest_eigenvalues_1d(spec, s1.k, negative_only, s1.L <= 0.0);
      std::vector<std::vector<std::string>> rows;
      for (size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
        const auto& ev = spectrum.eigenvalues[j];
        rows.push_back({std::to_string(j + 1), format_double(ev.value),
                        format_double(ev.err_disc), format_double(ev.err_trunc)});
      }
      const std::string path = out_path(s1.out, "spectrum1d.csv");
      write_csv(path, {"j", "mu", "err_disc", "err_trunc"}, rows);
      json params = {{"operator", s1.op}, {"a", s1.a}, {"k", s1.k},
                     {"L", spectrum.L_used}, {"n", spectrum.n_used},
                     {"count_capped", spectrum.count_capped}};
      write_manifest(make_manifest("spectrum1d", argv_vec, params, profile_to_json(profile)),
                     path);
      std::cout << "wrote " << path << " (" << rows.size() << " eigenvalues)\n";
      return 0;
    }

    if (sc_s2->parsed()) {
      auto profile = load_profile(s2.curve);
      const FormKind which = s2.which == "plus" ? FormKind::QPlus : FormKind::QMinus;
      const int m = std::max(4, s2.nu / 2);
      std::vector<std::vector<std::string>> rows;
      if (s2.levels >= 3) {
        auto study = convergence_study(profile, s2.a, 1.0 / s2.beta, s2.L,
                                       s2.ns, m, which, s2.levels, s2.k);
        const auto& last = study.levels.back();
        for (int j = 0; j < s2.k; ++j)
          rows.push_back({std::to_string(j + 1),
                          format_double(study.extrapolated[static_cast<size_t>(j)]),
                          format_double(std::abs(study.extrapolated[static_cast<size_t>(j)] -
                                                 last.values[static_cast<size_t>(j)])),
                          format_double(study.observed_order[static_cast<size_t>(j)])});
      } else {
        auto op = assemble_form(profile, s2.a, 1.0 / s2.beta, s2.L, s2.ns, m, which);
        auto eig = lowest_eigenvalues_2d(op, s2.k);
        if (!s2.dump.empty()) {
          std::ofstream f(s2.dump);
          for (int c = 0; c < op.A.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(op.A, c); it; ++it)
              f << it.row() << " " << it.col() << " " << format_double(it.value()) << "\n";
        }
        for (size_t j = 0; j < eig.values.size(); ++j)
          rows.push_back({std::to_string(j + 1), format_double(eig.values[j]),
                          format_double(eig.residuals[j]), "nan"});
      }
      const std::string path = out_path(s2.out, "solve2d.csv");
      write_csv(path, {"j", "lambda", "residual", "order_estimate"}, rows);
      json params = {{"beta", s2.beta}, {"a", s2.a},   {"L", s2.L},
                     {"ns", s2.ns},     {"nu", s2.nu}, {"which", s2.which},
                     {"k", s2.k},       {"levels", s2.levels}};
      write_manifest(make_manifest("solve2d", argv_vec, params, profile_to_json(profile)),
                     path);
      std::cout << "wrote " << path << "\n";
      return 0;
    }

    if (sc_as->parsed()) {
      auto profile = load_profile(as.curve);
      std::vector<double> betas;
      {
        std::stringstream ss(as.betas);
        std::string tok;
        while (std::getline(ss, tok, ',')) betas.push_back(std::stod(tok));
      }
      AsymptoticsOptions opts;
      opts.direct = as.direct;
      opts.jobs = as.jobs;
      opts.ns = as.ns;
      opts.m_per_side = std::max(4, as.nu / 2);
      opts.L = as.L;
      opts.allow_below_regime = as.allow;
      auto study = asymptotics_study(profile, betas, as.k, opts);
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : study.rows) {
        rows.push_back({format_double(r.beta), format_double(r.a), std::to_string(r.j),
                        format_double(r.lower), format_double(r.upper),
                        format_double(r.prediction),
                        r.lambda_minus ? format_double(*r.lambda_minus) : "nan",
                        r.lambda_plus ? format_double(*r.lambda_plus) : "nan",
                        format_double(r.residual), format_double(r.ratio)});
      }
      const std::string path = out_path(as.out, "asymptotics.csv");
      write_csv(path,
                {"beta", "a", "j", "lower", "upper", "prediction", "lambda_minus",
                 "lambda_plus", "residual", "ratio_to_beta_lnbeta"},
                rows);
      json params = {{"betas", as.betas}, {"k", as.k},   {"direct", as.direct},
                     {"jobs", as.jobs},   {"ns", as.ns}, {"nu", as.nu},
                     {"stability", study.stability},     {"fitted_C", study.fitted_C}};
      write_manifest(make_manifest("asymptotics", argv_vec, params, profile_to_json(profile)),
                     path);
      std::cout << "wrote " << path << " (ratio stability " << format_double(study.stability)
                << ")\n";
      return 0;
    }

    if (sc_th->parsed()) {
      auto profile = load_profile(th.curve);
      const double a = th.a > 0.0 ? th.a : halfwidth_schedule(th.beta);
      auto bound = ess_threshold_bound(profile, th.beta, th.tau, a, th.allow);
      json result;
      result["beta"] = bound.beta;
      result["tau"] = bound.tau;
      result["a"] = bound.a;
      result["v_tau"] = bound.v_tau;
      result["bound"] = bound.bound;
      result["best_bound"] = bound.best_bound;
      result["best_tau"] = bound.best_tau;
      std::cout << result.dump(2) << "\n";
      if (!th.out.empty()) {
        std::ofstream f(th.out);
        f << result.dump(2) << "\n";
        json params = {{"beta", th.beta}, {"tau", th.tau}, {"a", a}};
        write_manifest(make_manifest("threshold", argv_vec, params, profile_to_json(profile)),
                       th.out);
      }
      return 0;
    }
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace dp::cli

#include "deltaprime/strip2d.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "deltaprime/transverse.hpp"

namespace dp {

namespace {

constexpr double kGauss = 0.5773502691896257;  // 1/sqrt(3)

double auto_stretch(double a, int m, double inv_beta) {
  if (inv_beta <= 0.0) return 0.0;
  const double target = std::min(1.0 / (8.0 * inv_beta), a / m);
  if (a / m <= target * (1.0 + 1e-12)) return 0.0;
  // solve a*sinh(rho/m)/sinh(rho) = target for rho by bisection
  double lo = 1e-6, hi = 12.0;
  auto first_cell = [&](double rho) { return a * std::sinh(rho / m) / std::sinh(rho); };
  if (first_cell(hi) > target) return hi;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (first_cell(mid) > target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

StripGrid make_strip_grid(double L, int ns, double a, int m_per_side, double stretch) {
  if (!(L > 0.0) || !(a > 0.0) || ns < 8 || m_per_side < 4)
    throw ParameterError("make_strip_grid: invalid sizes");
  StripGrid g;
  g.L = L;
  g.a = a;
  g.ns = ns;
  g.m = m_per_side;
  g.stretch = stretch;
  g.s_nodes.resize(static_cast<size_t>(ns) + 1);
  for (int i = 0; i <= ns; ++i) g.s_nodes[static_cast<size_t>(i)] = -L + 2.0 * L * i / ns;
  const int m = m_per_side;
  std::vector<double> xi(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    double t = static_cast<double>(j) / m;
    xi[static_cast<size_t>(j)] =
        stretch > 0.0 ? a * std::sinh(stretch * t) / std::sinh(stretch) : a * t;
  }
  xi[static_cast<size_t>(m)] = a;
  g.u_nodes.resize(2 * static_cast<size_t>(m) + 2);
  for (int j = 0; j <= m; ++j) {
    g.u_nodes[static_cast<size_t>(m - j)] = -xi[static_cast<size_t>(j)];      // bottom side
    g.u_nodes[static_cast<size_t>(m + 1 + j)] = xi[static_cast<size_t>(j)];   // top side
  }
  g.interface_lo = m;
  g.interface_hi = m + 1;
  return g;
}

Strip2DOperator assemble_form(const CurvatureProfile& profile, double a, double inv_beta,
                              double L, int ns, int m_per_side, FormKind which,
                              double stretch) {
  if (!(a > 0.0)) throw ParameterError("assemble_form: a must be positive");
  if (a * profile.bounds().gamma_max >= 1.0)
    throw ParameterError("assemble_form: a*gamma_max >= 1");
  if (inv_beta < 0.0) throw ParameterError("assemble_form: inv_beta must be >= 0");
  if (stretch < 0.0) stretch = auto_stretch(a, m_per_side, inv_beta);

  Strip2DOperator op;
  op.grid = make_strip_grid(L, ns, a, m_per_side, stretch);
  op.which = which;
  op.inv_beta = inv_beta;
  op.profile = profile;

  const StripGrid& g = op.grid;
  const int m = g.m;
  const int n_urows_total = 2 * m + 2;
  const bool dirichlet_u = which == FormKind::QPlus;

  std::vector<int> uidx(static_cast<size_t>(n_urows_total), -1);
  int nu = 0;
  for (int r = 0; r < n_urows_total; ++r) {
    if (dirichlet_u && (r == 0 || r == n_urows_total - 1)) continue;
    uidx[static_cast<size_t>(r)] = nu++;
  }
  op.n_u_rows = nu;
  const int NS = ns - 1;  // interior s slices
  const long N = static_cast<long>(NS) * nu;

  auto gid = [&](int i_s, int r_u) -> long {
    return static_cast<long>(i_s - 1) * nu + uidx[static_cast<size_t>(r_u)];
  };
  auto is_unknown = [&](int i_s, int r_u) {
    return i_s >= 1 && i_s <= ns - 1 && uidx[static_cast<size_t>(r_u)] >= 0;
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(N) * 22);
  Eigen::VectorXd Mass = Eigen::VectorXd::Zero(N);

  const double gq[2] = {-kGauss, kGauss};

  // bulk cells: kinetic terms by 2x2 Gauss, potential and mass by nodal quadrature
  for (int ic = 0; ic < ns; ++ic) {
    const double s0 = g.s_nodes[static_cast<size_t>(ic)];
    const double s1 = g.s_nodes[static_cast<size_t>(ic) + 1];
    const double hs = s1 - s0;
    for (int r = 0; r + 1 < n_urows_total; ++r) {
      if (r == g.interface_lo) continue;  // (0-,0+) is the doubled layer, not a cell
      const double u0 = g.u_nodes[static_cast<size_t>(r)];
      const double u1 = g.u_nodes[static_cast<size_t>(r) + 1];
      const double hu = u1 - u0;
      // local nodes: (ic,r),(ic,r+1),(ic+1,r),(ic+1,r+1)
      double Ke[4][4] = {};
      for (double gs : gq) {
        const double ss = 0.5 * (s0 + s1) + 0.5 * hs * gs;
        const double gam = profile.gamma(ss);
        for (double gu : gq) {
          const double uu = 0.5 * (u0 + u1) + 0.5 * hu * gu;
          const double w = 0.25 * hs * hu;
          const double gfac = 1.0 + uu * gam;
          const double wS = 1.0 / (gfac * gfac);
          const double ls[2] = {(s1 - ss) / hs, (ss - s0) / hs};
          const double dls[2] = {-1.0 / hs, 1.0 / hs};
          const double lu[2] = {(u1 - uu) / hu, (uu - u0) / hu};
          const double dlu[2] = {-1.0 / hu, 1.0 / hu};
          for (int al = 0; al < 4; ++al) {
            const int aS = al >> 1, aU = al & 1;
            for (int bl = 0; bl < 4; ++bl) {
              const int bS = bl >> 1, bU = bl & 1;
              const double dsa = dls[aS] * lu[aU], dsb = dls[bS] * lu[bU];
              const double dua = ls[aS] * dlu[aU], dub = ls[bS] * dlu[bU];
              // grouping keeps Ke bit-exactly symmetric under (a,b) swap
              Ke[al][bl] += w * (wS * (dsa * dsb) + (dua * dub));
            }
          }
        }
      }
      const int iss[2] = {ic, ic + 1};
      const int rss[2] = {r, r + 1};
      for (int al = 0; al < 4; ++al) {
        const int ia = iss[al >> 1], ra = rss[al & 1];
        if (!is_unknown(ia, ra)) continue;
        const long Ia = gid(ia, ra);
        // nodal quadrature: quarter-cell share of mass and potential
        const double share = 0.25 * hs * hu;
        Mass(Ia) += share;
        trips.emplace_back(Ia, Ia,
                           share * geometric_potential(profile, g.s_nodes[static_cast<size_t>(ia)],
                                                       g.u_nodes[static_cast<size_t>(ra)]));
        for (int bl = 0; bl < 4; ++bl) {
          const int ib = iss[bl >> 1], rb = rss[bl & 1];
          if (!is_unknown(ib, rb)) continue;
          trips.emplace_back(Ia, gid(ib, rb), Ke[al][bl]);
        }
      }
    }
  }

  // interface line terms along u = 0
  const int rm = g.interface_lo, rp = g.interface_hi;
  for (int ic = 0; ic < ns; ++ic) {
    const double s0 = g.s_nodes[static_cast<size_t>(ic)];
    const double s1 = g.s_nodes[static_cast<size_t>(ic) + 1];
    const double hs = s1 - s0;
    // jump term: -(1/beta) (f+ - f-, g+ - g-) with the consistent P1 line mass
    const double mloc[2][2] = {{hs / 3.0, hs / 6.0}, {hs / 6.0, hs / 3.0}};
    const int svals[2] = {ic, ic + 1};
    if (inv_beta > 0.0) {
      for (int A_ = 0; A_ < 2; ++A_) {
        if (svals[A_] == 0 || svals[A_] == ns) continue;
        for (int B_ = 0; B_ < 2; ++B_) {
          if (svals[B_] == 0 || svals[B_] == ns) continue;
          const double cJ = -inv_beta * mloc[A_][B_];
          const long ipA = gid(svals[A_], rp), imA = gid(svals[A_], rm);
          const long ipB = gid(svals[B_], rp), imB = gid(svals[B_], rm);
          trips.emplace_back(ipA, ipB, cJ);
          trips.emplace_back(imA, imB, cJ);
          trips.emplace_back(ipA, imB, -cJ);
          trips.emplace_back(imA, ipB, -cJ);
        }
      }
    }
    // curvature average term: (1/2) int gamma (|f+|^2 - |f-|^2)
    for (double gs : gq) {
      const double ss = 0.5 * (s0 + s1) + 0.5 * hs * gs;
      const double wq = 0.5 * hs;
      const double gam = profile.gamma(ss);
      if (gam == 0.0) continue;
      const double lv[2] = {(s1 - ss) / hs, (ss - s0) / hs};
      for (int A_ = 0; A_ < 2; ++A_) {
        if (svals[A_] == 0 || svals[A_] == ns) continue;
        for (int B_ = 0; B_ < 2; ++B_) {
          if (svals[B_] == 0 || svals[B_] == ns) continue;
          const double c0 = 0.5 * gam * wq * (lv[A_] * lv[B_]);  // exact (A,B) symmetry
          trips.emplace_back(gid(svals[A_], rp), gid(svals[B_], rp), c0);
          trips.emplace_back(gid(svals[A_], rm), gid(svals[B_], rm), -c0);
        }
      }
    }
    // QMinus curvature boundary integrals at u = +-a
    if (which == FormKind::QMinus) {
      const int r_top = n_urows_total - 1, r_bot = 0;
      for (double gs : gq) {
        const double ss = 0.5 * (s0 + s1) + 0.5 * hs * gs;
        const double wq = 0.5 * hs;
        const double gam = profile.gamma(ss);
        const double c_top = -gam / (2.0 * (1.0 + a * gam));
        const double c_bot = gam / (2.0 * (1.0 - a * gam));
        const double lv[2] = {(s1 - ss) / hs, (ss - s0) / hs};
        for (int A_ = 0; A_ < 2; ++A_) {
          if (svals[A_] == 0 || svals[A_] == ns) continue;
          for (int B_ = 0; B_ < 2; ++B_) {
            if (svals[B_] == 0 || svals[B_] == ns) continue;
            const double wab = wq * (lv[A_] * lv[B_]);
            trips.emplace_back(gid(svals[A_], r_top), gid(svals[B_], r_top), c_top * wab);
            trips.emplace_back(gid(svals[A_], r_bot), gid(svals[B_], r_bot), c_bot * wab);
          }
        }
      }
    }
  }

  op.A.resize(N, N);
  op.A.setFromTriplets(trips.begin(), trips.end());
  op.A.makeCompressed();
  op.M = Mass;

  // structural assertions: exact symmetry and the expected bandwidth
  Eigen::SparseMatrix<double> At = op.A.transpose();
  double asym = 0.0;
  for (int kcol = 0; kcol < op.A.outerSize(); ++kcol) {
    Eigen::SparseMatrix<double>::InnerIterator it(op.A, kcol), jt(At, kcol);
    for (; it && jt; ++it, ++jt) asym = std::max(asym, std::abs(it.value() - jt.value()));
  }
  if (asym != 0.0) throw NumericalError("assemble_form: assembled matrix not symmetric");
  int bw = 0;
  for (int kcol = 0; kcol < op.A.outerSize(); ++kcol)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.A, kcol); it; ++it)
      bw = std::max(bw, std::abs(static_cast<int>(it.row() - it.col())));
  op.bandwidth = bw;
  if (bw > nu + 1)
    throw NumericalError("assemble_form: bandwidth exceeds n_u_rows + 1");
  if ((op.M.array() <= 0.0).any())
    throw NumericalError("assemble_form: lumped mass has a nonpositive entry");
  return op;
}

namespace {

struct LanczosData {
  std::vector<double> alpha, beta;
  std::vector<Eigen::VectorXd> basis;
};

Eigen::VectorXd start_vector(const Strip2DOperator& op) {
  const StripGrid& g = op.grid;
  const long N = op.A.rows();
  Eigen::VectorXd v(N);
  const double urate = op.inv_beta > 0.0 ? 2.0 * op.inv_beta : 1.0 / g.a;
  unsigned long lcg = 88172645463325252ULL;
  long idx = 0;
  for (int i = 1; i <= g.ns - 1; ++i) {
    const double s = g.s_nodes[static_cast<size_t>(i)];
    const double senv = std::cos(0.5 * std::acos(-1.0) * s / g.L);
    for (int r = 0; r < 2 * g.m + 2; ++r) {
      const bool skip =
          op.which == FormKind::QPlus && (r == 0 || r == 2 * g.m + 1);
      if (skip) continue;
      const double u = g.u_nodes[static_cast<size_t>(r)];
      const double sgn = r <= g.interface_lo ? -1.0 : 1.0;
      lcg ^= lcg << 13; lcg ^= lcg >> 7; lcg ^= lcg << 17;
      const double dither = 1e-3 * (static_cast<double>(lcg % 2048) / 1024.0 - 1.0);
      v(idx++) = sgn * std::exp(-urate * std::abs(u)) * senv + dither;
    }
  }
  return v;
}

}  // namespace

Eig2DResult lowest_eigenvalues_2d(const Strip2DOperator& op, int k, double rtol,
                                  double sigma_hint) {
  if (k < 1) throw ParameterError("lowest_eigenvalues_2d: k >= 1");
  if (rtol < 1e-10) throw ParameterError("lowest_eigenvalues_2d: rtol >= 1e-10 required");
  const long N = op.A.rows();
  if (k >= N) throw ParameterError("lowest_eigenvalues_2d: k too large for grid");

  // shift below the spectrum: transverse envelope lower bound minus the
  // potential sup bound, with retry when the factorization detects sigma
  // above the bottom
  double sigma;
  if (std::isfinite(sigma_hint)) {
    sigma = sigma_hint;
  } else {
    const double ib = op.inv_beta;
    const double env_lo =
        ib > 0.0 ? -4.0 * ib * ib - 16.0 * ib * ib * std::exp(-4.0 * op.grid.a * ib) : 0.0;
    const double B0 = potential_tail_bound(op.profile, op.grid.a, 0.0);
    const double pi = std::acos(-1.0);
    sigma = env_lo - 1.25 * B0 - std::pow(pi / (2.0 * op.grid.L), 2) -
            1e-3 * std::max(1.0, std::abs(env_lo));
  }

  Eigen::VectorXd Msqrt = op.M.array().sqrt();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  double step = std::max(1.0, 0.05 * std::abs(sigma));
  bool ok = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::SparseMatrix<double> shifted = op.A;
    for (long i = 0; i < N; ++i) shifted.coeffRef(i, i) -= sigma * op.M(i);
    ldlt.compute(shifted);
    if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) {
      ok = true;
      break;
    }
    sigma -= step;
    step *= 2.0;
  }
  if (!ok) throw SolverError("lowest_eigenvalues_2d: shift placement failed");

  // Lanczos with full reorthogonalization on (C - sigma)^{-1},
  // C = M^{-1/2} A M^{-1/2}
  auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd t = Msqrt.cwiseProduct(x);
    Eigen::VectorXd z = ldlt.solve(t);
    return Msqrt.cwiseProduct(z);
  };

  const int max_iter = std::min<long>(N, std::max(70, 10 * k + 40));
  LanczosData ld;
  Eigen::VectorXd v = Msqrt.cwiseProduct(start_vector(op));
  v.normalize();
  ld.basis.push_back(v);
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(N);
  double beta_prev = 0.0;
  std::vector<double> theta;
  std::vector<double> bound;
  int it = 0;
  for (it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = apply(ld.basis.back());
    const double alpha = ld.basis.back().dot(w);
    ld.alpha.push_back(alpha);
    w -= alpha * ld.basis.back();
    if (it > 0) w -= beta_prev * v_prev;
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ld.basis) w -= q.dot(w) * q;
    const double bnorm = w.norm();
    const int j = it + 1;
    if (j >= std::max(2 * k + 2, 6) || bnorm < 1e-14) {
      // Ritz values of the Jacobi matrix
      Eigen::MatrixXd Tj = Eigen::MatrixXd::Zero(j, j);
      for (int i = 0; i < j; ++i) Tj(i, i) = ld.alpha[static_cast<size_t>(i)];
      for (int i = 0; i + 1 < j; ++i) {
        Tj(i, i + 1) = ld.beta[static_cast<size_t>(i)];
        Tj(i + 1, i) = ld.beta[static_cast<size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tj);
      theta.assign(es.eigenvalues().data(), es.eigenvalues().data() + j);
      bound.assign(static_cast<size_t>(j), 0.0);
      bool conv = j > k;
      for (int t_i = 0; t_i < k && conv; ++t_i) {
        const int col = j - 1 - t_i;  // largest theta at the end
        bound[static_cast<size_t>(j - 1 - t_i)] =
            bnorm * std::abs(es.eigenvectors()(j - 1, col));
        const double th = theta[static_cast<size_t>(col)];
        if (!(th > 0.0) ||
            bound[static_cast<size_t>(col)] > 0.05 * rtol * th)
          conv = false;
      }
      if (j <= k && bnorm < 1e-14)
        throw SolverError("lowest_eigenvalues_2d: Krylov space exhausted before k pairs");
      if (conv || bnorm < 1e-14) {
        // reconstruct the k Ritz vectors, polish each by one inverse-iteration
        // step (crushes high-mode contamination), and report Rayleigh quotients
        Eig2DResult res;
        res.sigma = sigma;
        res.iterations = j;
        std::vector<std::pair<double, double>> pairs;  // (lambda, residual)
        for (int t_i = 0; t_i < k; ++t_i) {
          const int col = j - 1 - t_i;
          const double th = theta[static_cast<size_t>(col)];
          if (!(th > 0.0))
            throw SolverError("lowest_eigenvalues_2d: nonpositive Ritz value for target");
          Eigen::VectorXd y = Eigen::VectorXd::Zero(N);
          for (int i = 0; i < j; ++i)
            y += es.eigenvectors()(i, col) * ld.basis[static_cast<size_t>(i)];
          for (int polish = 0; polish < 2; ++polish) {
            y = apply(y);
            y.normalize();
          }
          // pencil coordinates: v = M^{-1/2} y, lambda from the Rayleigh quotient
          Eigen::VectorXd vec = y.cwiseQuotient(Msqrt);
          Eigen::VectorXd Av = op.A * vec;
          Eigen::VectorXd Mv = op.M.cwiseProduct(vec);
          const double lambda = vec.dot(Av) / vec.dot(Mv);
          const double resid = (Av - lambda * Mv).norm() / Mv.norm();
          pairs.emplace_back(lambda, resid);
        }
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [lambda, resid] : pairs) {
          if (!(resid <= rtol * std::max(std::abs(lambda), 1e-12)))
            throw SolverError("lowest_eigenvalues_2d: residual above tolerance: " +
                              std::to_string(resid));
          res.values.push_back(lambda);
          res.residuals.push_back(resid);
        }
        return res;
      }
    }
    if (bnorm < 1e-14) break;
    ld.beta.push_back(bnorm);
    beta_prev = bnorm;
    v_prev = ld.basis.back();
    ld.basis.push_back(w / bnorm);
  }
  throw SolverError("lowest_eigenvalues_2d: no convergence within iteration budget");
}

ConvergenceStudy convergence_study(const CurvatureProfile& profile, double a,
                                   double inv_beta, double L, int ns0, int m0,
                                   FormKind which, int levels, int k, double rtol) {
  if (levels < 3) throw ParameterError("convergence_study: need >= 3 levels");
  ConvergenceStudy st;
  for (int l = 0; l < levels; ++l) {
    const int ns = ns0 << l, m = m0 << l;
    auto op = assemble_form(profile, a, inv_beta, L, ns, m, which);
    auto eig = lowest_eigenvalues_2d(op, k, rtol);
    st.levels.push_back({ns, m, eig.values});
  }
  const auto& v0 = st.levels[st.levels.size() - 3].values;
  const auto& v1 = st.levels[st.levels.size() - 2].values;
  const auto& v2 = st.levels[st.levels.size() - 1].values;
  for (int j = 0; j < k; ++j) {
    st.extrapolated.push_back((4.0 * v2[static_cast<size_t>(j)] - v1[static_cast<size_t>(j)]) / 3.0);
    const double d01 = v0[static_cast<size_t>(j)] - v1[static_cast<size_t>(j)];
    const double d12 = v1[static_cast<size_t>(j)] - v2[static_cast<size_t>(j)];
    const double order = (d01 * d12 > 0.0) ? std::log2(std::abs(d01) / std::abs(d12))
                                           : std::numeric_limits<double>::quiet_NaN();
    st.observed_order.push_back(order);
    if (!(order >= 1.7)) st.order_ok = false;
  }
  return st;
}

Extrapolated2D solve2d_extrapolated(const CurvatureProfile& profile, double a,
                                    double inv_beta, double L, int ns, int m,
                                    FormKind which, double rtol) {
  auto base = lowest_eigenvalues_2d(assemble_form(profile, a, inv_beta, L, ns, m, which),
                                    1, rtol);
  auto fine_u = lowest_eigenvalues_2d(
      assemble_form(profile, a, inv_beta, L, ns, 2 * m, which), 1, rtol);
  auto fine_s = lowest_eigenvalues_2d(
      assemble_form(profile, a, inv_beta, L, 2 * ns, m, which), 1, rtol);
  Extrapolated2D r;
  r.lam_base = base.values[0];
  r.lam_fine_u = fine_u.values[0];
  r.lam_fine_s = fine_s.values[0];
  const double cu = (r.lam_base - r.lam_fine_u) * 4.0 / 3.0;
  const double cs = (r.lam_base - r.lam_fine_s) * 4.0 / 3.0;
  r.value = r.lam_base - cu - cs;
  r.err_est = 0.25 * (std::abs(cu) + std::abs(cs)) +
              10.0 * rtol * std::abs(r.lam_base);
  return r;
}

}  // namespace dp

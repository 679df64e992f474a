#ifndef GFS_SDP_HPP
#define GFS_SDP_HPP

// The completely bounded norm of a Schur multiplier S_A : B -> A o B as a
// semidefinite program,
//
//   t* = min t  s.t.  Z = [[X, A], [A^*, Y]] >= 0,  diag(X) <= t,  diag(Y) <= t,
//
// whose value is also the factorization norm inf max_j |xi_j| max_i |eta_i|
// over A_ij = <xi_j, eta_i>. Raising a diagonal to t keeps Z PSD, so t* is
// the least t admitting a completion with constant diagonal t, i.e.
//
//   t* = min_W lambda_max([[W1, A], [A^*, W2]])
//
// over Hermitian W1, W2 with zero diagonal. That eigenvalue problem is solved
// with a primal-dual interior-point method (HKM search direction, Mehrotra
// predictor-corrector). The dual slack S = t I - [[W1, A], [A^*, W2]] is
// turned into the completion D S D, D = diag(I, -I), so the reported t is
// certified by a PSD matrix carrying A and diagonal t. The primal iterate is
// a trace-one PSD matrix [[P, V], [V^*, Q]] with P, Q diagonal; its value
// 2 Re tr(A V^*) is a lower bound once the primal residual vanishes.

#include "gfs/errors.hpp"
#include "gfs/linalg.hpp"
#include "gfs/random.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gfs {

inline constexpr Eigen::Index kMaxSdpOrder = 64;
inline constexpr double kMinSdpTolerance = 1e-8;

struct SdpProblem {
  CMatrix a;

  explicit SdpProblem(CMatrix data) : a(std::move(data)) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("SdpProblem: empty matrix");
    if (a.rows() != a.cols()) throw std::invalid_argument("SdpProblem: matrix must be square");
    if (a.rows() > kMaxSdpOrder) throw std::invalid_argument("SdpProblem: order exceeds 64");
    if (!all_finite(a)) throw std::invalid_argument("SdpProblem: non-finite entry");
  }
  Eigen::Index order() const { return a.rows(); }
};

struct SdpOptions {
  double tol = kMinSdpTolerance;  // duality gap target, relative to max(1, max |A_ij|)
  int max_iterations = 200;
  double step_fraction = 0.97;
};

struct SdpSolution {
  double t = 0.0;
  HermitianMatrix x;            // upper-left block of the completion
  HermitianMatrix y;            // lower-right block
  double certificate = 0.0;     // lambda_min of the assembled completion
  double lower_bound = 0.0;     // primal value; t* lies in [lower_bound - tol', t], tol' = tol max(1, max |A_ij|)
  double bracket_lo = 0.0;      // max |A_ij|
  double bracket_hi = 0.0;      // ||A||_F
  double gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
  bool converged = false;

  CMatrix completion(const CMatrix& a) const {
    const Eigen::Index n = a.rows();
    CMatrix z(2 * n, 2 * n);
    z << x.matrix(), a, a.adjoint(), y.matrix();
    return z;
  }
};

namespace detail {

struct SparseEntry {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

// Constraint matrices A_0 = -I and the in-block basis B_k (real and
// imaginary Hermitian units E_ac + E_ca, i E_ac - i E_ca, a < c inside the
// same diagonal block).
inline std::vector<std::vector<SparseEntry>> cb_constraints(Eigen::Index n) {
  const Eigen::Index dim = 2 * n;
  std::vector<std::vector<SparseEntry>> out;
  std::vector<SparseEntry> minus_identity;
  for (Eigen::Index k = 0; k < dim; ++k) minus_identity.push_back({k, k, -1.0});
  out.push_back(std::move(minus_identity));
  for (Eigen::Index block = 0; block < 2; ++block) {
    const Eigen::Index base = block * n;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index c = a + 1; c < n; ++c) {
        out.push_back({{base + a, base + c, 1.0}, {base + c, base + a, 1.0}});
        out.push_back({{base + a, base + c, Complex(0.0, 1.0)}, {base + c, base + a, Complex(0.0, -1.0)}});
      }
  }
  return out;
}

// Re tr(A_i P) for each constraint.
inline RVector apply_constraints(const std::vector<std::vector<SparseEntry>>& cons, const CMatrix& p) {
  RVector out(static_cast<Eigen::Index>(cons.size()));
  for (std::size_t i = 0; i < cons.size(); ++i) {
    Complex s = 0.0;
    for (const auto& e : cons[i]) s += e.value * p(e.col, e.row);
    out(static_cast<Eigen::Index>(i)) = s.real();
  }
  return out;
}

// sum_i y_i A_i.
inline CMatrix adjoint_constraints(const std::vector<std::vector<SparseEntry>>& cons, const RVector& y,
                                   Eigen::Index dim) {
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (const auto& e : cons[i]) out(e.row, e.col) += y(static_cast<Eigen::Index>(i)) * e.value;
  return out;
}

inline CMatrix herm(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Largest alpha in (0, inf] with M + alpha D >= 0 for M > 0 with Cholesky factor L.
inline double max_step(const Eigen::LLT<CMatrix>& chol, const CMatrix& d) {
  const CMatrix linv_d = chol.matrixL().solve(d);
  const CMatrix scaled = chol.matrixL().solve(linv_d.adjoint());
  const double lmin = min_eigenvalue(HermitianMatrix(scaled));
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

inline RVector solve_spd(const RMatrix& m, const RVector& rhs) {
  Eigen::LLT<RMatrix> llt(m);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  Eigen::LDLT<RMatrix> ldlt(m);
  return ldlt.solve(rhs);
}

}  // namespace detail

/// Minimal t with a PSD completion [[X, A], [A^*, Y]] whose diagonal is
/// bounded by t. Throws invalid_argument for tol below 1e-8; reports
/// converged = false if the iteration cap is hit.
inline SdpSolution schur_cb_norm_sdp(const SdpProblem& problem, const SdpOptions& opt = {}) {
  if (!(opt.tol >= kMinSdpTolerance)) throw std::invalid_argument("schur_cb_norm_sdp: tol must be >= 1e-8");
  const CMatrix& a_raw = problem.a;
  const Eigen::Index n = problem.order();
  const Eigen::Index dim = 2 * n;

  SdpSolution sol;
  sol.bracket_lo = a_raw.cwiseAbs().maxCoeff();
  sol.bracket_hi = a_raw.norm();
  const double scale = sol.bracket_lo;
  if (scale == 0.0) {
    sol.x = HermitianMatrix(CMatrix::Zero(n, n));
    sol.y = HermitianMatrix(CMatrix::Zero(n, n));
    sol.converged = true;
    return sol;
  }
  const CMatrix a = a_raw / scale;

  const auto cons = detail::cb_constraints(n);
  const auto m = static_cast<Eigen::Index>(cons.size());
  RVector b = RVector::Zero(m);
  b(0) = -1.0;
  CMatrix c = CMatrix::Zero(dim, dim);
  c.topRightCorner(n, n) = -a;
  c.bottomLeftCorner(n, n) = -a.adjoint();

  CMatrix x = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  RVector y = RVector::Zero(m);
  y(0) = a.norm() + 1.0;
  auto slack = [&](const RVector& yy) { return detail::herm(c - detail::adjoint_constraints(cons, yy, dim)); };
  CMatrix s = slack(y);

  const double target = 0.1 * opt.tol * std::max(1.0, 1.0 / scale);
  const double n_dim = static_cast<double>(dim);
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const RVector rp = b - detail::apply_constraints(cons, x);
    const double gap = (x * s).trace().real();
    sol.gap = gap * scale;
    sol.primal_residual = rp.norm();
    if (gap <= target && rp.norm() <= target) {
      sol.converged = true;
      break;
    }

    Eigen::LLT<CMatrix> chol_s(s);
    Eigen::LLT<CMatrix> chol_x(x);
    if (chol_s.info() != Eigen::Success || chol_x.info() != Eigen::Success) break;
    const CMatrix s_inv = chol_s.solve(CMatrix::Identity(dim, dim));

    // Schur complement M_ij = Re tr(A_i X A_j S^{-1}).
    RMatrix schur(m, m);
    const CMatrix sinv_x = s_inv * x;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i; j < m; ++j) {
        Complex sum = 0.0;
        if (i == 0 && j == 0) {
          sum = sinv_x.trace();
        } else if (i == 0) {
          for (const auto& e : cons[static_cast<std::size_t>(j)]) sum -= e.value * sinv_x(e.col, e.row);
        } else {
          for (const auto& ei : cons[static_cast<std::size_t>(i)])
            for (const auto& ej : cons[static_cast<std::size_t>(j)])
              sum += ei.value * x(ei.col, ej.row) * ej.value * s_inv(ej.col, ei.row);
        }
        schur(i, j) = sum.real();
        schur(j, i) = sum.real();
      }
    }
    const double mu = gap / n_dim;

    auto direction = [&](const CMatrix& target_x) {
      // target_x is the desired X + dX before the X dS S^{-1} term.
      const RVector rhs = rp - detail::apply_constraints(cons, target_x);
      const RVector dy = detail::solve_spd(schur, rhs);
      const CMatrix ds = -detail::adjoint_constraints(cons, dy, dim);
      const CMatrix dx = detail::herm(target_x - x * ds * s_inv);
      return std::make_tuple(dx, dy, ds);
    };

    // Predictor.
    auto [dx_a, dy_a, ds_a] = direction(-x);
    const double ap = std::min(1.0, detail::max_step(chol_x, dx_a));
    const double ad = std::min(1.0, detail::max_step(chol_s, ds_a));
    const double mu_aff = ((x + ap * dx_a) * (s + ad * ds_a)).trace().real() / n_dim;
    const double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3.0);

    // Corrector.
    const CMatrix corr_target = sigma * mu * s_inv - x - dx_a * ds_a * s_inv;
    auto [dx, dy, ds] = direction(corr_target);
    const double step_p = std::min(1.0, opt.step_fraction * detail::max_step(chol_x, dx));
    const double step_d = std::min(1.0, opt.step_fraction * detail::max_step(chol_s, ds));

    x = detail::herm(x + step_p * dx);
    y += step_d * dy;
    s = slack(y);
  }
  sol.iterations = iter;

  // Completion Z = D S D carries A off the diagonal blocks and t on the diagonal.
  double t = y(0);
  CMatrix z = s;
  z.topRightCorner(n, n) *= -1.0;
  z.bottomLeftCorner(n, n) *= -1.0;
  z *= scale;
  t *= scale;
  z.topRightCorner(n, n) = a_raw;
  z.bottomLeftCorner(n, n) = a_raw.adjoint();
  for (Eigen::Index k = 0; k < dim; ++k) z(k, k) = t;

  double cert = min_eigenvalue(HermitianMatrix(z));
  if (cert < 0.0) {
    t -= cert;
    for (Eigen::Index k = 0; k < dim; ++k) z(k, k) = t;
    cert = min_eigenvalue(HermitianMatrix(z));
  }
  sol.t = t;
  sol.certificate = cert;
  sol.x = HermitianMatrix(z.topLeftCorner(n, n));
  sol.y = HermitianMatrix(z.bottomRightCorner(n, n));
  sol.lower_bound = 2.0 * scale * (a.adjoint() * x.topRightCorner(n, n)).trace().real();
  return sol;
}

inline SdpSolution schur_cb_norm_sdp(const CMatrix& a, const SdpOptions& opt = {}) {
  return schur_cb_norm_sdp(SdpProblem(a), opt);
}

struct Factorization {
  std::vector<CVector> xi;   // xi_j, j = 1..n
  std::vector<CVector> eta;  // eta_i, i = 1..n

  /// [<xi_j, eta_i>]_{ij}
  CMatrix gram() const {
    const auto n = static_cast<Eigen::Index>(xi.size());
    CMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        out(i, j) = eta[static_cast<std::size_t>(i)].dot(xi[static_cast<std::size_t>(j)]);
    return out;
  }
  double max_xi_norm() const {
    double m = 0.0;
    for (const auto& v : xi) m = std::max(m, v.norm());
    return m;
  }
  double max_eta_norm() const {
    double m = 0.0;
    for (const auto& v : eta) m = std::max(m, v.norm());
    return m;
  }
};

/// Factor the completion as C^* C with C = Lambda^{1/2} V^* over the
/// positive spectrum; columns of C give eta_i (first block) and xi_j
/// (second block), so A_ij = <xi_j, eta_i>.
inline Factorization extract_factorization(const SdpSolution& sol, const CMatrix& a) {
  if (!sol.converged) throw ConvergenceError("extract_factorization: solution did not converge");
  if (a.rows() != sol.x.matrix().rows() || a.cols() != sol.y.matrix().rows())
    throw std::invalid_argument("extract_factorization: matrix does not match the solution");
  const Eigen::Index n = a.rows();
  const auto eig = hermitian_eigen(HermitianMatrix(sol.completion(a)));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > 0.0) keep.push_back(k);
  CMatrix factor(static_cast<Eigen::Index>(keep.size()), 2 * n);
  for (std::size_t r = 0; r < keep.size(); ++r)
    factor.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(eig.values(keep[r])) * eig.vectors.col(keep[r]).adjoint();
  Factorization f;
  for (Eigen::Index j = 0; j < n; ++j) f.xi.push_back(factor.col(n + j));
  for (Eigen::Index i = 0; i < n; ++i) f.eta.push_back(factor.col(i));
  return f;
}

struct FeasibilityOptions {
  int max_iterations = 50000;
  double tol = 1e-7;  // feasible when lambda_min of the completion is >= -tol / 10
};

struct FeasibilityResult {
  bool feasible = false;
  double residual = 0.0;  // distance from the final iterate to the PSD cone
  int iterations = 0;
  CMatrix completion;
};

/// Dykstra alternating projections between the shifted cone {Z >= tol I}
/// and {Z : off-diagonal blocks A, diag(Z) <= t}. The shift keeps the limit
/// off the cone boundary; the verdict is taken on the completion itself.
inline FeasibilityResult dykstra_feasibility(const CMatrix& a, double t, const FeasibilityOptions& opt = {}) {
  const SdpProblem problem(a);
  const Eigen::Index n = problem.order();
  const Eigen::Index dim = 2 * n;
  auto project_affine = [&](CMatrix z) {
    z.topRightCorner(n, n) = a;
    z.bottomLeftCorner(n, n) = a.adjoint();
    for (Eigen::Index k = 0; k < dim; ++k) z(k, k) = std::min(z(k, k).real(), t);
    return z;
  };

  CMatrix z = project_affine(CMatrix::Identity(dim, dim) * t);
  CMatrix p = CMatrix::Zero(dim, dim);
  CMatrix q = CMatrix::Zero(dim, dim);
  FeasibilityResult res;
  const CMatrix shift = CMatrix::Identity(dim, dim) * opt.tol;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const CMatrix y = psd_project(HermitianMatrix(z + p - shift)).matrix() + shift;
    p = z + p - y;
    const CMatrix z_next = project_affine(y + q);
    q = y + q - z_next;
    const double change = (z_next - z).norm();
    const double gap = (z_next - y).norm();
    z = z_next;
    res.iterations = it + 1;
    if (gap <= opt.tol) break;  // lambda_min(z) >= tol - ||z - y|| >= 0
    if (change <= opt.tol * 1e-3) break;
  }
  const double lmin = min_eigenvalue(HermitianMatrix(z));
  res.residual = std::max(0.0, -lmin);
  res.feasible = res.residual <= opt.tol / 10.0;
  res.completion = z;
  return res;
}

/// Max over sampled B of ||A o B|| / ||B|| (and the amplified analogue);
/// every sample is a valid lower bound for the cb-norm.
///
/// Samples: all matrix units, I, J, the phase pattern conj(A)/|A|, Gaussian
/// B, Gaussian blocks B in M_n(M_k) for k = 2, 3, and a few alternating
/// ascents that refine B through the top singular pair of A o B.
inline double cb_lower_bound(const CMatrix& a, std::size_t samples, std::uint64_t seed) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cb_lower_bound: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  double best = a.cwiseAbs().maxCoeff();  // matrix units
  auto ratio = [&](const CMatrix& bm) {
    const double nb = operator_norm(bm);
    return nb > 0.0 ? operator_norm(a.cwiseProduct(bm)) / nb : 0.0;
  };
  best = std::max(best, ratio(CMatrix::Identity(n, n)));
  best = std::max(best, ratio(CMatrix::Ones(n, n)));
  CMatrix phase = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(a(i, j)) > 0.0) phase(i, j) = std::conj(a(i, j)) / std::abs(a(i, j));
  best = std::max(best, ratio(phase));

  Rng rng(seed);
  const std::size_t ascents = std::min<std::size_t>(samples / 10, 20);
  const std::size_t rest = samples - ascents;
  for (std::size_t s = 0; s < rest; ++s) {
    const auto k = static_cast<Eigen::Index>(s % 3 + 1);
    if (k == 1) {
      best = std::max(best, ratio(rng.gaussian(n, n)));
      continue;
    }
    const CMatrix bm = rng.gaussian(n * k, n * k);
    CMatrix sa = bm;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) sa.block(i * k, j * k, k, k) *= a(i, j);
    const double nb = operator_norm(bm);
    if (nb > 0.0) best = std::max(best, operator_norm(sa) / nb);
  }

  // For unit u, v and P = D_conj(u) A D_v = U Sigma V^*, the contraction
  // B = conj(U V^*) attains ||P||_1; the top singular pair of A o B then
  // improves u, v.
  for (std::size_t s = 0; s < ascents; ++s) {
    CVector u = rng.gaussian_vector(n).cwiseAbs().cast<Complex>();
    CVector v = rng.gaussian_vector(n).cwiseAbs().cast<Complex>();
    u.normalize();
    v.normalize();
    for (int step = 0; step < 30; ++step) {
      const CMatrix scaled = u.conjugate().asDiagonal() * a * v.asDiagonal();
      Eigen::JacobiSVD<CMatrix> svd(scaled, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const CMatrix bm = (svd.matrixU() * svd.matrixV().adjoint()).conjugate();
      const CMatrix prod = a.cwiseProduct(bm);
      best = std::max(best, ratio(bm));
      Eigen::JacobiSVD<CMatrix> top(prod, Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = top.matrixU().col(0);
      v = top.matrixV().col(0);
    }
  }
  return best;
}

}  // namespace gfs

#endif  // GFS_SDP_HPP

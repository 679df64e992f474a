#ifndef GFS_FOURIER_STIELTJES_HPP
#define GFS_FOURIER_STIELTJES_HPP

// Positive definite functions, coefficient functions (alpha, beta), the
// pointwise *-algebra structure and the B_mu(G) norm.

#include "gfs/bundle.hpp"
#include "gfs/convolution.hpp"
#include "gfs/errors.hpp"
#include "gfs/groupoid.hpp"
#include "gfs/linalg.hpp"
#include "gfs/measures.hpp"
#include "gfs/representation.hpp"
#include "gfs/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfs {

inline constexpr double kPdTolerance = 1e-9;

struct PositiveDefiniteReport {
  bool is_pd = true;
  std::optional<Unit> worst_unit;
  double min_eigenvalue = 0.0;
  bool borderline = false;  // min_eigenvalue in [-tol, 0)
};

/// Smallest real part of the numerical range of M, or an upper bound on how
/// far M is from PSD when M is not Hermitian. For Hermitian M this is
/// lambda_min. Otherwise the skew part K = (M - M^*) / 2i already rules out
/// positivity, and the reported value is min(lambda_min(H), 0) - ||K||.
inline double psd_margin(const CMatrix& m, double tol) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  const CMatrix skew = (m - m.adjoint()) / Complex(0.0, 2.0);
  const double lmin = min_eigenvalue(HermitianMatrix(herm));
  const double skew_norm = operator_norm(skew);
  if (skew_norm <= tol) return lmin;
  return std::min(lmin, 0.0) - skew_norm;
}

/// For each x in supp(mu), M^x[g1, g2] = phi(g2^{-1} g1) sqrt(lambda(g1) lambda(g2))
/// over g1, g2 in G^x must be positive semidefinite.
inline PositiveDefiniteReport is_positive_definite(const GroupoidFunction& phi, const FiniteGroupoid& g,
                                                   const HaarSystem& h, const UnitMeasure& mu,
                                                   double tol = kPdTolerance) {
  require_on(phi, g, "is_positive_definite");
  require_nonnegative(mu, g.unit_count(), "is_positive_definite");
  PositiveDefiniteReport rep;
  bool first = true;
  for (Unit x = 0; x < g.unit_count(); ++x) {
    if (!mu.in_support(x)) continue;
    const auto& fiber = g.range_fiber(x);
    const auto k = static_cast<Eigen::Index>(fiber.size());
    CMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const Arrow g1 = fiber[static_cast<std::size_t>(i)];
        const Arrow g2 = fiber[static_cast<std::size_t>(j)];
        m(i, j) = phi[g.compose(g.inverse(g2), g1)] * std::sqrt(h[g1] * h[g2]);
      }
    const double margin = psd_margin(m, tol);
    if (first || margin < rep.min_eigenvalue) {
      rep.min_eigenvalue = margin;
      rep.worst_unit = x;
      first = false;
    }
  }
  rep.is_pd = rep.min_eigenvalue >= -tol;
  rep.borderline = rep.is_pd && rep.min_eigenvalue < 0.0;
  return rep;
}

/// (alpha, beta)(g) = <L_g alpha_{s(g)}, beta_{r(g)}>.
inline GroupoidFunction coefficient_function(const BundleSection& alpha, const BundleSection& beta,
                                             const RepresentationTriple& rep, const FiniteGroupoid& g) {
  require_matching(alpha, rep.bundle, "coefficient_function");
  require_matching(beta, rep.bundle, "coefficient_function");
  if (rep.action.unitaries.size() != g.arrow_count())
    throw std::invalid_argument("coefficient_function: representation does not match the groupoid");
  GroupoidFunction phi(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    phi[a] = beta[g.range(a)].dot(rep.action[a] * alpha[g.source(a)]);
  return phi;
}

inline GroupoidFunction pointwise_product(const GroupoidFunction& phi, const GroupoidFunction& psi) {
  phi.check_same(psi);
  GroupoidFunction out(phi.size());
  for (Arrow a = 0; a < phi.size(); ++a) out[a] = phi[a] * psi[a];
  return out;
}

/// phi^*(g) = conj(phi(g^{-1})).
inline GroupoidFunction pointwise_star(const GroupoidFunction& phi, const FiniteGroupoid& g) {
  return involution(phi, g);
}

/// Fibers H_x (x) H'_x with L_g (x) L'_g.
inline RepresentationTriple tensor_product_triple(const RepresentationTriple& r1, const RepresentationTriple& r2) {
  if (r1.bundle.unit_count() != r2.bundle.unit_count() ||
      r1.action.unitaries.size() != r2.action.unitaries.size())
    throw std::invalid_argument("tensor_product_triple: triples live on different groupoids");
  if (!(r1.mu == r2.mu)) throw std::invalid_argument("tensor_product_triple: triples carry different measures");
  std::vector<std::size_t> dims(r1.bundle.unit_count());
  for (Unit x = 0; x < dims.size(); ++x) dims[x] = r1.bundle.dim(x) * r2.bundle.dim(x);
  RepresentationTriple out{HilbertBundle(dims), {}, r1.mu};
  out.action.unitaries.reserve(r1.action.unitaries.size());
  for (std::size_t a = 0; a < r1.action.unitaries.size(); ++a)
    out.action.unitaries.push_back(kron(r1.action[a], r2.action[a]));
  return out;
}

struct BNormWitness {
  RepresentationTriple rep;
  BundleSection alpha;
  BundleSection beta;
};

struct BNormResult {
  double value = 0.0;
  std::string method;  // sdp | linfty | dft-l1 | group-dual
  std::optional<BNormWitness> witness;
  bool validated = true;  // false when the pair-groupoid value is taken off the uniform/counting setting
  std::optional<SdpSolution> sdp;
};

/// [phi(i, j)] with i the range and j the source unit.
inline CMatrix pair_matrix(const GroupoidFunction& phi, const FiniteGroupoid& g) {
  const auto n = static_cast<Eigen::Index>(g.unit_count());
  CMatrix a(n, n);
  for (Arrow k = 0; k < g.arrow_count(); ++k)
    a(static_cast<Eigen::Index>(g.range(k)), static_cast<Eigen::Index>(g.source(k))) = phi[k];
  return a;
}

/// Fourier coefficients c_l = (1/m) sum_k phi(x, k) conj(chi_l(k)) on the fiber over x.
inline std::vector<Complex> fiber_dft(const GroupoidFunction& phi, const FiniteGroupoid& g,
                                      const Classification& cls, Unit x) {
  const std::size_t m = cls.order;
  std::vector<Complex> c(m, 0.0);
  for (std::size_t l = 0; l < m; ++l) {
    Complex s = 0.0;
    for (Arrow a : g.range_fiber(x)) s += phi[a] * std::conj(cyclic_character(l, cls.exponent[a], m));
    c[l] = s / static_cast<double>(m);
  }
  return c;
}

/// ||phi||_mu = inf ||alpha||_inf ||beta||_inf over realizations phi = (alpha, beta):
///   pair groupoid   cb-norm of the Schur multiplier of [phi(i, j)] via the SDP;
///   unit groupoid   max over supp(mu) of |phi|;
///   cyclic bundle   max over supp(mu) of the l^1 norm of the fiber DFT.
/// Each value comes with a realization attaining it.
inline BNormResult b_norm(const GroupoidFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
                          const UnitMeasure& mu, const SdpOptions& sdp_options = {}) {
  require_on(phi, g, "b_norm");
  require_nonnegative(mu, g.unit_count(), "b_norm");
  if (const auto qi = is_quasi_invariant(g, h, mu); !qi.holds)
    throw std::domain_error("b_norm: measure is not quasi-invariant");
  const auto cls = classify(g);
  BNormResult res;
  switch (cls.kind) {
    case GroupoidClass::pair: {
      const CMatrix a = pair_matrix(phi, g);
      auto sol = schur_cb_norm_sdp(SdpProblem(a), sdp_options);
      if (!sol.converged) throw ConvergenceError("b_norm: SDP did not converge");
      const auto fac = extract_factorization(sol, a);
      const std::size_t k = fac.xi.empty() ? 0 : static_cast<std::size_t>(fac.xi.front().size());
      BNormWitness w{trivial_triple(g, mu, k), {}, {}};
      w.alpha.blocks = fac.xi;
      w.beta.blocks = fac.eta;
      res.value = sol.t;
      res.method = "sdp";
      res.witness = std::move(w);
      const auto uniform = uniform_measure(g.unit_count());
      const auto normalized = mu.total() > 0.0 ? normalize(mu) : mu;
      bool counting = true;
      for (double wgt : h.weights) counting = counting && wgt == 1.0;
      bool flat = true;
      for (Unit x = 0; x < g.unit_count(); ++x)
        flat = flat && std::abs(normalized[x] - uniform[x]) <= 1e-12;
      res.validated = counting && flat;
      res.sdp = std::move(sol);
      return res;
    }
    case GroupoidClass::unit: {
      BNormWitness w{trivial_triple(g, mu, 1), {}, {}};
      for (Unit x = 0; x < g.unit_count(); ++x) {
        const Complex v = phi[g.unit_arrow(x)];
        const double mag = std::abs(v);
        if (mu.in_support(x)) res.value = std::max(res.value, mag);
        const double root = std::sqrt(mag);
        w.alpha.blocks.push_back(CVector::Constant(1, mag > 0.0 ? v / root : Complex(0.0)));
        w.beta.blocks.push_back(CVector::Constant(1, root));
      }
      res.method = "linfty";
      res.witness = std::move(w);
      return res;
    }
    case GroupoidClass::cyclic_bundle: {
      const std::size_t m = cls.order;
      const auto dm = static_cast<Eigen::Index>(m);
      BNormWitness w{RepresentationTriple{HilbertBundle::constant(g.unit_count(), m), {}, mu}, {}, {}};
      for (Arrow a = 0; a < g.arrow_count(); ++a) {
        CVector diag(dm);
        for (Eigen::Index l = 0; l < dm; ++l) diag(l) = cyclic_character(static_cast<std::size_t>(l), cls.exponent[a], m);
        w.rep.action.unitaries.push_back(diag.asDiagonal());
      }
      for (Unit x = 0; x < g.unit_count(); ++x) {
        const auto c = fiber_dft(phi, g, cls, x);
        CVector al(dm), be(dm);
        double l1 = 0.0;
        for (Eigen::Index l = 0; l < dm; ++l) {
          const Complex cl = c[static_cast<std::size_t>(l)];
          const double mag = std::abs(cl);
          l1 += mag;
          be(l) = std::sqrt(mag);
          al(l) = mag > 0.0 ? cl / std::sqrt(mag) : Complex(0.0);
        }
        if (mu.in_support(x)) res.value = std::max(res.value, l1);
        w.alpha.blocks.push_back(al);
        w.beta.blocks.push_back(be);
      }
      res.method = g.unit_count() == 1 ? "group-dual" : "dft-l1";
      res.witness = std::move(w);
      return res;
    }
    default:
      throw UnsupportedGroupoid("B_mu norm needs the full dual of this groupoid");
  }
}

struct DualityPairing {
  Complex direct = 0.0;
  Complex representation = 0.0;
  double difference = 0.0;
};

/// Both sides of <Phi(F) a, b> for phi = (alpha, beta):
///   direct          sum_g F(g) phi(g) a(s(g)) conj(b(r(g))) nu_0(g)
///   representation  <pi(F)(a alpha), b beta> in L^2(H, mu)
inline DualityPairing duality_pairing(const GroupoidFunction& phi, const GroupoidFunction& f,
                                      const std::vector<Complex>& a, const std::vector<Complex>& b,
                                      const RepresentationTriple& rep, const BundleSection& alpha,
                                      const BundleSection& beta, const FiniteGroupoid& g, const HaarSystem& h,
                                      double realization_tol = 1e-9) {
  require_on(phi, g, "duality_pairing");
  require_on(f, g, "duality_pairing");
  if (a.size() != g.unit_count() || b.size() != g.unit_count())
    throw std::invalid_argument("duality_pairing: unit functions must have one value per unit");
  const auto realized = coefficient_function(alpha, beta, rep, g);
  if (max_abs_difference(realized, phi) > realization_tol)
    throw std::invalid_argument("duality_pairing: phi is not the coefficient function (alpha, beta)");

  DualityPairing out;
  const auto nu0 = symmetrized_measure(g, h, rep.mu);
  for (Arrow k = 0; k < g.arrow_count(); ++k)
    out.direct += f[k] * phi[k] * a[g.source(k)] * std::conj(b[g.range(k)]) * nu0[k];

  BundleSection xi = alpha, eta = beta;
  for (Unit x = 0; x < g.unit_count(); ++x) {
    xi[x] *= a[x];
    eta[x] *= b[x];
  }
  const auto op = integrated_form(f, rep, g, h);
  const CVector image = op.matrix * op.flatten(xi);
  const CVector target = op.flatten(eta);
  for (Eigen::Index k = 0; k < image.size(); ++k) out.representation += op.metric(k) * std::conj(target(k)) * image(k);
  out.difference = std::abs(out.direct - out.representation);
  return out;
}

}  // namespace gfs

#endif  // GFS_FOURIER_STIELTJES_HPP

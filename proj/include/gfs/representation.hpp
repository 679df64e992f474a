#ifndef GFS_REPRESENTATION_HPP
#define GFS_REPRESENTATION_HPP

// G-Hilbert bundles, representation triples (L, H, mu) and their integrated
// forms on L^2(H, mu), the C*(G, mu) norm on the supported groupoid classes,
// and the decomposition statements for changing the measure.
//
// Operators are stored as matrices on the raw coordinates of the fibers
// over supp(mu); the L^2(mu) metric is carried separately as a diagonal
// weight per coordinate, so adjoints are W^{-1} A^* W and operator norms are
// ||W^{1/2} A W^{-1/2}||.

#include "gfs/bundle.hpp"
#include "gfs/convolution.hpp"
#include "gfs/errors.hpp"
#include "gfs/groupoid.hpp"
#include "gfs/linalg.hpp"
#include "gfs/measures.hpp"
#include "gfs/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gfs {

/// L_g : H_{s(g)} -> H_{r(g)}, one matrix per arrow.
struct GroupoidAction {
  std::vector<CMatrix> unitaries;

  const CMatrix& operator[](Arrow g) const { return unitaries[g]; }
};

struct RepresentationTriple {
  HilbertBundle bundle;
  GroupoidAction action;
  UnitMeasure mu;
};

/// Shapes, unitarity, L_e = I, L_{g^{-1}} = L_g^*, and L_{gh} = L_g L_h.
inline ValidationReport validate_action(const FiniteGroupoid& g, const HilbertBundle& bundle,
                                        const GroupoidAction& action, double tol = 1e-10) {
  ValidationReport rep;
  const auto& L = g.arrow_labels();
  if (bundle.unit_count() != g.unit_count() || action.unitaries.size() != g.arrow_count()) {
    detail::add(rep, "action-size", {}, "bundle or action does not match the groupoid");
    return rep;
  }
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const auto rows = static_cast<Eigen::Index>(bundle.dim(g.range(a)));
    const auto cols = static_cast<Eigen::Index>(bundle.dim(g.source(a)));
    if (action[a].rows() != rows || action[a].cols() != cols) {
      detail::add(rep, "action-shape", {L[a]}, "L_g must map H_{s(g)} to H_{r(g)}");
    }
  }
  if (!rep.ok()) return rep;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const auto& U = action[a];
    if (U.rows() != U.cols()) {
      detail::add(rep, "unitary", {L[a]}, "fibers joined by an arrow must have equal dimension");
      continue;
    }
    const CMatrix I = CMatrix::Identity(U.rows(), U.cols());
    if ((U.adjoint() * U - I).cwiseAbs().maxCoeff() > tol && U.size() > 0)
      detail::add(rep, "unitary", {L[a]}, "L_g^* L_g != I");
    if (g.is_unit_arrow(a) && U.size() > 0 && (U - I).cwiseAbs().maxCoeff() > tol)
      detail::add(rep, "identity", {L[a]}, "L at a unit is not the identity");
    const auto& Ui = action[g.inverse(a)];
    if (U.size() > 0 && (Ui - U.adjoint()).cwiseAbs().maxCoeff() > tol)
      detail::add(rep, "inverse", {L[a]}, "L_{g^-1} != L_g^*");
  }
  if (!rep.ok()) return rep;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    for (Arrow b : g.range_fiber(g.source(a))) {
      const Arrow ab = g.compose(a, b);
      const CMatrix diff = action[ab] - action[a] * action[b];
      if (diff.size() > 0 && diff.cwiseAbs().maxCoeff() > tol)
        detail::add(rep, "homomorphism", {L[a], L[b]}, "L_{gh} != L_g L_h");
    }
  }
  return rep;
}

/// Fibers C^dim with every L_g the identity. Requires a constant dimension,
/// which is what the trivial bundle X x C^dim is.
inline RepresentationTriple trivial_triple(const FiniteGroupoid& g, const UnitMeasure& mu,
                                           std::size_t dim = 1) {
  RepresentationTriple t{HilbertBundle::constant(g.unit_count(), dim), {}, mu};
  const auto d = static_cast<Eigen::Index>(dim);
  t.action.unitaries.assign(g.arrow_count(), CMatrix::Identity(d, d));
  return t;
}

/// Left regular bundle: H_x = l^2(G^x) and L_g delta_k = delta_{gk}.
inline RepresentationTriple regular_triple(const FiniteGroupoid& g, const UnitMeasure& mu) {
  std::vector<std::size_t> dims(g.unit_count());
  std::vector<std::size_t> position(g.arrow_count());
  for (Unit x = 0; x < g.unit_count(); ++x) {
    const auto& fiber = g.range_fiber(x);
    dims[x] = fiber.size();
    for (std::size_t i = 0; i < fiber.size(); ++i) position[fiber[i]] = i;
  }
  RepresentationTriple t{HilbertBundle(dims), {}, mu};
  t.action.unitaries.reserve(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const auto rows = static_cast<Eigen::Index>(dims[g.range(a)]);
    const auto cols = static_cast<Eigen::Index>(dims[g.source(a)]);
    CMatrix U = CMatrix::Zero(rows, cols);
    for (Arrow k : g.range_fiber(g.source(a)))
      U(static_cast<Eigen::Index>(position[g.compose(a, k)]),
        static_cast<Eigen::Index>(position[k])) = 1.0;
    t.action.unitaries.push_back(std::move(U));
  }
  return t;
}

/// exp(2 pi i l k / m), exact at multiples of a quarter turn.
inline Complex cyclic_character(std::size_t l, std::size_t k, std::size_t m) {
  const std::size_t j = (l * k) % m;
  if (j == 0) return {1.0, 0.0};
  if (4 * j == m) return {0.0, 1.0};
  if (2 * j == m) return {-1.0, 0.0};
  if (4 * j == 3 * m) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

namespace detail {

// Isotropy representation used by the random triple generator.
struct IsotropyRep {
  std::size_t dim = 1;
  std::vector<CMatrix> matrices;  // indexed by arrow; only isotropy arrows set
};

inline IsotropyRep random_isotropy_rep(const FiniteGroupoid& g, Unit u, std::size_t max_dim,
                                       Rng& rng) {
  std::vector<Arrow> iso;
  for (Arrow a : g.range_fiber(u))
    if (g.source(a) == u) iso.push_back(a);
  const std::size_t m = iso.size();
  const Arrow e = g.unit_arrow(u);

  // Try to present the isotropy group as cyclic.
  std::vector<Arrow> powers;
  for (Arrow gen : iso) {
    powers.assign(1, e);
    Arrow cur = gen;
    while (cur != e && powers.size() <= m) {
      powers.push_back(cur);
      cur = g.compose(cur, gen);
    }
    if (powers.size() == m) break;
    powers.clear();
  }

  IsotropyRep rep;
  rep.matrices.resize(g.arrow_count());
  if (!powers.empty()) {
    rep.dim = rng.index(1, max_dim);
    const auto d = static_cast<Eigen::Index>(rep.dim);
    std::vector<std::size_t> chars(rep.dim);
    for (auto& c : chars) c = rng.index(0, m - 1);
    const CMatrix V = rng.unitary(d);
    for (std::size_t k = 0; k < m; ++k) {
      CVector diag(d);
      for (Eigen::Index l = 0; l < d; ++l) diag(l) = cyclic_character(chars[static_cast<std::size_t>(l)], k, m);
      rep.matrices[powers[k]] = V * diag.asDiagonal() * V.adjoint();
    }
    return rep;
  }
  if (m <= max_dim) {
    // Regular representation of the isotropy group, conjugated.
    rep.dim = m;
    const auto d = static_cast<Eigen::Index>(m);
    std::vector<std::size_t> pos(g.arrow_count());
    for (std::size_t i = 0; i < m; ++i) pos[iso[i]] = i;
    const CMatrix V = rng.unitary(d);
    for (Arrow a : iso) {
      CMatrix P = CMatrix::Zero(d, d);
      for (Arrow k : iso)
        P(static_cast<Eigen::Index>(pos[g.compose(a, k)]), static_cast<Eigen::Index>(pos[k])) = 1.0;
      rep.matrices[a] = V * P * V.adjoint();
    }
    return rep;
  }
  rep.dim = rng.index(1, max_dim);
  for (Arrow a : iso)
    rep.matrices[a] = CMatrix::Identity(static_cast<Eigen::Index>(rep.dim), static_cast<Eigen::Index>(rep.dim));
  return rep;
}

}  // namespace detail

/// Seeded random representation triple.
///
/// On each orbit a root unit u is fixed together with arrows a_x : u -> x.
/// A random unitary representation rho of the isotropy group at u and random
/// unitaries U_x : H_u -> H_x (U_u = I) determine
///   L_g = U_{r(g)} rho(a_{r(g)}^{-1} g a_{s(g)}) U_{s(g)}^*,
/// which satisfies the homomorphism law by construction. Cyclic isotropy gets
/// a random sum of characters; other isotropy gets the conjugated regular
/// representation when it fits in max_dim, else the trivial one.
inline RepresentationTriple random_representation_triple(const FiniteGroupoid& g, const HaarSystem& h,
                                                         const UnitMeasure& mu, std::size_t max_dim,
                                                         std::uint64_t seed) {
  if (max_dim == 0) throw std::invalid_argument("random_representation_triple: max_dim must be >= 1");
  if (const auto qi = is_quasi_invariant(g, h, mu); !qi.holds)
    throw std::domain_error("random_representation_triple: measure is not quasi-invariant");
  Rng rng(seed);
  const auto orbit = unit_orbits(g);
  const std::size_t nu = g.unit_count();
  std::vector<std::size_t> dims(nu, 0);
  std::vector<Arrow> connector(nu);
  std::vector<Unit> root(nu);
  std::vector<CMatrix> to_fiber(nu);
  std::vector<detail::IsotropyRep> iso_reps(nu);

  std::vector<bool> seen_orbit(nu, false);
  for (Unit u = 0; u < nu; ++u) {
    if (seen_orbit[orbit[u]]) continue;
    seen_orbit[orbit[u]] = true;
    iso_reps[u] = detail::random_isotropy_rep(g, u, max_dim, rng);
    const std::size_t d = iso_reps[u].dim;
    for (Arrow a : g.source_fiber(u)) {
      const Unit x = g.range(a);
      if (dims[x] != 0) continue;  // first arrow u -> x wins
      dims[x] = d;
      connector[x] = a;
      root[x] = u;
      to_fiber[x] = x == u ? CMatrix(CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)))
                           : rng.unitary(static_cast<Eigen::Index>(d));
    }
    connector[u] = g.unit_arrow(u);
  }

  RepresentationTriple t{HilbertBundle(dims), {}, mu};
  t.action.unitaries.reserve(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const Unit x = g.range(a), y = g.source(a);
    const Unit u = root[x];
    const Arrow iso = g.compose(g.compose(g.inverse(connector[x]), a), connector[y]);
    t.action.unitaries.push_back(to_fiber[x] * iso_reps[u].matrices[iso] * to_fiber[y].adjoint());
  }
  return t;
}

inline void require_valid_triple(const FiniteGroupoid& g, const HaarSystem& h,
                                 const RepresentationTriple& rep, const char* what) {
  if (rep.bundle.unit_count() != g.unit_count() || rep.action.unitaries.size() != g.arrow_count())
    throw std::invalid_argument(std::string(what) + ": representation does not match the groupoid");
  require_nonnegative(rep.mu, g.unit_count(), what);
  if (const auto qi = is_quasi_invariant(g, h, rep.mu); !qi.holds)
    throw std::domain_error(std::string(what) + ": measure is not quasi-invariant (witness " +
                            g.arrow_label(*qi.witness) + ")");
}

/// Matrix of an operator on L^2(H, mu) in the coordinates of the fibers over
/// supp(mu), together with the diagonal metric.
struct IntegratedOperator {
  CMatrix matrix;
  RVector metric;               // mu(x) repeated dim(x) times
  std::vector<Unit> units;      // supp(mu) in order
  std::vector<std::size_t> offset;  // per unit; meaningful for supported units

  Eigen::Index dim() const { return matrix.rows(); }

  /// Adjoint with respect to the weighted inner product: W^{-1} A^* W.
  CMatrix adjoint() const { return weighted_adjoint(matrix, metric, metric); }

  /// Operator norm in the weighted metric.
  double norm() const { return weighted_norm(matrix, metric, metric); }

  /// Frobenius norm of W^{1/2} A W^{-1/2}; basis independent within L^2(mu).
  double frobenius() const { return weighted_frobenius(matrix, metric, metric); }

  CVector flatten(const BundleSection& s) const {
    CVector v(dim());
    for (Unit x : units)
      v.segment(static_cast<Eigen::Index>(offset[x]), s[x].size()) = s[x];
    return v;
  }

  /// Adjoint of A : L^2(from) -> L^2(to) is W_from^{-1} A^* W_to.
  static CMatrix weighted_adjoint(const CMatrix& a, const RVector& to, const RVector& from) {
    CMatrix out(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.cols(); ++i)
      for (Eigen::Index j = 0; j < a.rows(); ++j) out(i, j) = std::conj(a(j, i)) * to(j) / from(i);
    return out;
  }
  static CMatrix conjugated(const CMatrix& a, const RVector& to, const RVector& from) {
    CMatrix m = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) *= std::sqrt(to(i)) / std::sqrt(from(j));
    return m;
  }
  static double weighted_norm(const CMatrix& a, const RVector& to, const RVector& from) {
    return operator_norm(conjugated(a, to, from));
  }
  static double weighted_frobenius(const CMatrix& a, const RVector& to, const RVector& from) {
    return conjugated(a, to, from).norm();
  }
};

namespace detail {
inline void layout(IntegratedOperator& op, const HilbertBundle& bundle, const UnitMeasure& mu) {
  std::size_t n = 0;
  op.offset.assign(bundle.unit_count(), 0);
  for (Unit x = 0; x < bundle.unit_count(); ++x) {
    if (!mu.in_support(x)) continue;
    op.units.push_back(x);
    op.offset[x] = n;
    n += bundle.dim(x);
  }
  op.metric.resize(static_cast<Eigen::Index>(n));
  for (Unit x : op.units)
    op.metric.segment(static_cast<Eigen::Index>(op.offset[x]), static_cast<Eigen::Index>(bundle.dim(x)))
        .setConstant(mu[x]);
  op.matrix = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}
}  // namespace detail

/// pi(F) xi(x) = sum_{g in G^x} F(g) L_g xi_{s(g)} Delta^{-1/2}(g) lambda(g).
inline IntegratedOperator integrated_form(const GroupoidFunction& f, const RepresentationTriple& rep,
                                          const FiniteGroupoid& g, const HaarSystem& h) {
  require_on(f, g, "integrated_form");
  require_valid_triple(g, h, rep, "integrated_form");
  IntegratedOperator op;
  detail::layout(op, rep.bundle, rep.mu);
  const auto& mu = rep.mu;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const Unit x = g.range(a), y = g.source(a);
    if (!mu.in_support(x) || f[a] == 0.0) continue;
    // Quasi-invariance puts s(g) in the support whenever r(g) is.
    const double inv_sqrt_delta = std::sqrt((mu[y] * h[g.inverse(a)]) / (mu[x] * h[a]));
    const Complex coeff = f[a] * inv_sqrt_delta * h[a];
    const auto rows = static_cast<Eigen::Index>(rep.bundle.dim(x));
    const auto cols = static_cast<Eigen::Index>(rep.bundle.dim(y));
    op.matrix.block(static_cast<Eigen::Index>(op.offset[x]), static_cast<Eigen::Index>(op.offset[y]), rows, cols) +=
        coeff * rep.action[a];
  }
  return op;
}

/// sum_g F(g) <L_g xi_{s(g)}, eta_{r(g)}> nu_0(g), evaluated arrow by arrow.
inline Complex representation_pairing(const GroupoidFunction& f, const RepresentationTriple& rep,
                                      const FiniteGroupoid& g, const HaarSystem& h,
                                      const BundleSection& xi, const BundleSection& eta) {
  require_matching(xi, rep.bundle, "representation_pairing");
  require_matching(eta, rep.bundle, "representation_pairing");
  const auto nu0 = symmetrized_measure(g, h, rep.mu);
  Complex sum = 0.0;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    if (nu0[a] == 0.0) continue;
    sum += f[a] * eta[g.range(a)].dot(rep.action[a] * xi[g.source(a)]) * nu0[a];
  }
  return sum;
}

/// ||F||_mu = sup over representation triples of ||pi(F)||, on the classes
/// where that supremum has a closed form:
///   pair groupoid   every triple is a multiple of the trivial line bundle;
///   unit groupoid   max over supp(mu) of |F|;
///   cyclic bundle   max over supp(mu) and characters of |sum_k F(n,k) chi(k)|.
inline double cstar_norm(const GroupoidFunction& f, const FiniteGroupoid& g, const HaarSystem& h,
                         const UnitMeasure& mu) {
  require_on(f, g, "cstar_norm");
  require_nonnegative(mu, g.unit_count(), "cstar_norm");
  if (const auto qi = is_quasi_invariant(g, h, mu); !qi.holds)
    throw std::domain_error("cstar_norm: measure is not quasi-invariant");
  const auto cls = classify(g);
  switch (cls.kind) {
    case GroupoidClass::pair:
      return integrated_form(f, trivial_triple(g, mu), g, h).norm();
    case GroupoidClass::unit: {
      double m = 0.0;
      for (Unit x = 0; x < g.unit_count(); ++x)
        if (mu.in_support(x)) m = std::max(m, std::abs(f[g.unit_arrow(x)]));
      return m;
    }
    case GroupoidClass::cyclic_bundle: {
      double m = 0.0;
      const std::size_t order = cls.order;
      for (Unit x = 0; x < g.unit_count(); ++x) {
        if (!mu.in_support(x)) continue;
        for (std::size_t l = 0; l < order; ++l) {
          Complex s = 0.0;
          for (Arrow a : g.range_fiber(x)) s += f[a] * h[a] * cyclic_character(l, cls.exponent[a], order);
          m = std::max(m, std::abs(s));
        }
      }
      return m;
    }
    default:
      throw UnsupportedGroupoid("C*(G, mu) norm needs the full dual of this groupoid");
  }
}

struct ScaledTriple {
  RepresentationTriple triple;  // (L, H, mu_i)
  double scale = 1.0;           // c_i: the inner product on H_i is c_i <.,.>
};

struct DirectSumReport {
  double max_off_block = 0.0;         // entries of pi(F) linking supp(mu_0) and supp(mu_1)
  double max_block_deviation = 0.0;   // |pi(F)|_{A,A} - pi_0(F)| and the B analogue
  std::size_t samples = 0;
};

struct DirectSumDecomposition {
  std::optional<ScaledTriple> part0;
  std::optional<ScaledTriple> part1;
  DirectSumReport report;
};

/// Splits the triple (L, H, mu) with mu = c0 mu0 + c1 mu1, mu0 _|_ mu1, into
/// the two sub-triples and measures how block diagonal pi(F) is for sampled F
/// (point masses on every arrow plus `samples` random functions).
inline DirectSumDecomposition direct_sum_decompose(const RepresentationTriple& rep, const FiniteGroupoid& g,
                                                   const HaarSystem& h, const UnitMeasure& mu0,
                                                   const UnitMeasure& mu1, double c0, double c1,
                                                   std::size_t samples = 8, std::uint64_t seed = 0) {
  require_valid_triple(g, h, rep, "direct_sum_decompose");
  require_nonnegative(mu0, g.unit_count(), "direct_sum_decompose");
  require_nonnegative(mu1, g.unit_count(), "direct_sum_decompose");
  if (c0 < 0.0 || c1 < 0.0) throw std::domain_error("direct_sum_decompose: coefficients must be >= 0");
  if (!mutually_singular(mu0, mu1))
    throw std::domain_error("direct_sum_decompose: mu0 and mu1 are not mutually singular");
  for (Unit x = 0; x < g.unit_count(); ++x) {
    const double combo = c0 * mu0[x] + c1 * mu1[x];
    if (std::abs(combo - rep.mu[x]) > 1e-12 * std::max(1.0, std::abs(rep.mu[x])))
      throw std::domain_error("direct_sum_decompose: mu != c0 mu0 + c1 mu1");
  }
  DirectSumDecomposition out;
  const UnitMeasure* parts[2] = {&mu0, &mu1};
  const double scales[2] = {c0, c1};
  for (int i = 0; i < 2; ++i) {
    if (scales[i] == 0.0) continue;
    if (!is_quasi_invariant(g, h, *parts[i]).holds)
      throw std::domain_error("direct_sum_decompose: component measure is not quasi-invariant");
    ScaledTriple st{RepresentationTriple{rep.bundle, rep.action, *parts[i]}, scales[i]};
    (i == 0 ? out.part0 : out.part1) = std::move(st);
  }

  std::vector<GroupoidFunction> probes;
  for (Arrow a = 0; a < g.arrow_count(); ++a) probes.push_back(GroupoidFunction::delta(g.arrow_count(), a));
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    GroupoidFunction f(g.arrow_count());
    for (Arrow a = 0; a < g.arrow_count(); ++a) f[a] = rng.complex_normal();
    probes.push_back(std::move(f));
  }

  for (const auto& f : probes) {
    const auto full = integrated_form(f, rep, g, h);
    std::vector<bool> in_a(g.unit_count(), false);
    for (Unit x = 0; x < g.unit_count(); ++x) in_a[x] = c0 > 0.0 && mu0.in_support(x);
    for (Unit x : full.units) {
      for (Unit y : full.units) {
        const auto blk = full.matrix.block(static_cast<Eigen::Index>(full.offset[x]),
                                           static_cast<Eigen::Index>(full.offset[y]),
                                           static_cast<Eigen::Index>(rep.bundle.dim(x)),
                                           static_cast<Eigen::Index>(rep.bundle.dim(y)));
        if (blk.size() == 0) continue;
        if (in_a[x] != in_a[y]) out.report.max_off_block = std::max(out.report.max_off_block, blk.cwiseAbs().maxCoeff());
      }
    }
    for (const auto* part : {&out.part0, &out.part1}) {
      if (!part->has_value()) continue;
      const auto sub = integrated_form(f, (*part)->triple, g, h);
      for (Unit x : sub.units)
        for (Unit y : sub.units) {
          const auto rows = static_cast<Eigen::Index>(rep.bundle.dim(x));
          const auto cols = static_cast<Eigen::Index>(rep.bundle.dim(y));
          if (rows == 0 || cols == 0) continue;
          const CMatrix d =
              full.matrix.block(static_cast<Eigen::Index>(full.offset[x]), static_cast<Eigen::Index>(full.offset[y]), rows, cols) -
              sub.matrix.block(static_cast<Eigen::Index>(sub.offset[x]), static_cast<Eigen::Index>(sub.offset[y]), rows, cols);
          out.report.max_block_deviation = std::max(out.report.max_block_deviation, d.cwiseAbs().maxCoeff());
        }
    }
  }
  out.report.samples = probes.size();
  return out;
}

/// ||R^* pi_mu(F) R - pi_mu'(F)|| on L^2(H, mu'), where R rescales sections
/// by (d mu' / d mu)^{1/2}. The representation carries mu.
inline double intertwiner_check(const RepresentationTriple& rep, const FiniteGroupoid& g, const HaarSystem& h,
                                const UnitMeasure& mu_prime, const GroupoidFunction& f) {
  require_valid_triple(g, h, rep, "intertwiner_check");
  require_nonnegative(mu_prime, g.unit_count(), "intertwiner_check");
  if (!absolutely_continuous(mu_prime, rep.mu))
    throw std::domain_error("intertwiner_check: mu' is not absolutely continuous with respect to mu");
  if (!is_quasi_invariant(g, h, mu_prime).holds)
    throw std::domain_error("intertwiner_check: mu' is not quasi-invariant");
  const RepresentationTriple rep_prime{rep.bundle, rep.action, mu_prime};
  const auto big = integrated_form(f, rep, g, h);
  const auto small = integrated_form(f, rep_prime, g, h);

  CMatrix R = CMatrix::Zero(big.dim(), small.dim());
  for (Unit x : small.units) {
    const double scale = std::sqrt(mu_prime[x] / rep.mu[x]);
    for (std::size_t k = 0; k < rep.bundle.dim(x); ++k)
      R(static_cast<Eigen::Index>(big.offset[x] + k), static_cast<Eigen::Index>(small.offset[x] + k)) = scale;
  }
  const CMatrix R_adj = IntegratedOperator::weighted_adjoint(R, big.metric, small.metric);
  const CMatrix diff = R_adj * big.matrix * R - small.matrix;
  return IntegratedOperator::weighted_norm(diff, small.metric, small.metric);
}

}  // namespace gfs

#endif  // GFS_REPRESENTATION_HPP

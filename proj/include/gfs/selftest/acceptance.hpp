#ifndef GFS_SELFTEST_ACCEPTANCE_HPP
#define GFS_SELFTEST_ACCEPTANCE_HPP

// The acceptance suite: eleven criteria, each with pinned tolerances, seeds
// and a wall-clock budget. Shared by `gfs selftest` and the acceptance test.

#include "gfs/gfs.hpp"

#include <boost/rational.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gfs::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

namespace detail {

struct Check {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

inline UnitMeasure random_measure(Rng& rng, std::size_t units, bool allow_zero) {
  UnitMeasure mu{std::vector<double>(units)};
  for (auto& w : mu.weights) w = rng.uniform(0.1, 1.0);
  if (allow_zero && units > 1) mu.weights[rng.index(0, units - 1)] = 0.0;
  return mu;
}

inline GroupoidFunction random_function(Rng& rng, std::size_t arrows) {
  GroupoidFunction f(arrows);
  for (Arrow a = 0; a < arrows; ++a) f[a] = rng.complex_normal();
  return f;
}

inline BundleSection random_section(Rng& rng, const HilbertBundle& bundle) {
  BundleSection s = BundleSection::zero(bundle);
  for (auto& b : s.blocks) b = rng.gaussian_vector(b.size());
  return s;
}

// Pair n <= 5, unit n <= 6 or cyclic bundle (<= 3, <= 4), chosen by index.
inline FiniteGroupoid rotating_groupoid(std::size_t trial, Rng& rng) {
  switch (trial % 3) {
    case 0: return pair_groupoid(rng.index(1, 5));
    case 1: return unit_groupoid(rng.index(1, 6));
    default: return cyclic_group_bundle(rng.index(1, 3), rng.index(1, 4));
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// 1. Closed forms: J_n, matrix units, rank one.
inline CriterionResult criterion_closed_forms() {
  CriterionResult r{1, "closed-form cb-norms (J_n, matrix units, rank one)", false, "", 0.0, 10.0};
  detail::Check c;
  constexpr double tol = 1e-6;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto g = pair_groupoid(n);
    const auto res = b_norm(GroupoidFunction(g.arrow_count(), 1.0), g, counting_haar(g), uniform_measure(n));
    worst = std::max(worst, std::abs(res.value - 1.0));
    c.require(std::abs(res.value - 1.0) <= tol, "bNorm(J_" + std::to_string(n) + ")");
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto g = pair_groupoid(n);
    for (Arrow a = 0; a < g.arrow_count(); ++a) {
      const auto res = b_norm(GroupoidFunction::delta(g.arrow_count(), a), g, counting_haar(g), uniform_measure(n));
      worst = std::max(worst, std::abs(res.value - 1.0));
      c.require(std::abs(res.value - 1.0) <= tol, "bNorm(matrix unit " + g.arrow_label(a) + ")");
    }
  }
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(2, 6);
    const CVector x = rng.gaussian_vector(static_cast<Eigen::Index>(n));
    const CVector y = rng.gaussian_vector(static_cast<Eigen::Index>(n));
    const auto g = pair_groupoid(n);
    GroupoidFunction phi(g.arrow_count());
    for (Arrow a = 0; a < g.arrow_count(); ++a)
      phi[a] = x(static_cast<Eigen::Index>(g.range(a))) * std::conj(y(static_cast<Eigen::Index>(g.source(a))));
    const double oracle = x.cwiseAbs().maxCoeff() * y.cwiseAbs().maxCoeff();
    const auto res = b_norm(phi, g, counting_haar(g), uniform_measure(n));
    worst = std::max(worst, std::abs(res.value - oracle));
    c.require(std::abs(res.value - oracle) <= tol, "rank-one trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << "max |value - oracle| = " << std::scientific << std::setprecision(2) << worst << " (tol 1e-6)";
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 2. Lower bound <= SDP value, and the factorization certifies the upper bound.
inline CriterionResult criterion_haagerup_sandwich() {
  CriterionResult r{2, "Haagerup sandwich (lower bound <= t, factorization certifies t)", false, "", 0.0, 60.0};
  detail::Check c;
  Rng rng(202);
  double worst_gap = -1e300, worst_rec = 0.0, worst_prod = -1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<Eigen::Index>(rng.index(2, 5));
    const CMatrix a = rng.gaussian(n, n);
    const auto sol = schur_cb_norm_sdp(a);
    c.require(sol.converged, "SDP converged in trial " + std::to_string(trial));
    c.require(sol.certificate >= -1e-8, "certificate >= -1e-8");
    const double lower = cb_lower_bound(a, 1000, static_cast<std::uint64_t>(trial));
    worst_gap = std::max(worst_gap, lower - sol.t);
    c.require(lower <= sol.t + 1e-6, "cbLowerBound <= t + 1e-6 in trial " + std::to_string(trial));
    const auto fac = extract_factorization(sol, a);
    const double rec = (fac.gram() - a).cwiseAbs().maxCoeff();
    const double rec_tol = 1e-6 * (1.0 + operator_norm(a));
    worst_rec = std::max(worst_rec, rec / rec_tol);
    c.require(rec <= rec_tol, "reconstruction in trial " + std::to_string(trial));
    const double prod = fac.max_xi_norm() * fac.max_eta_norm();
    worst_prod = std::max(worst_prod, prod - sol.t);
    c.require(prod <= sol.t + 1e-5, "max|xi| max|eta| <= t + 1e-5 in trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "max(lower - t) = " << worst_gap
    << ", max reconstruction / tol = " << worst_rec << ", max(|xi||eta| - t) = " << worst_prod;
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 3. pi(F * F') = pi(F) pi(F') and pi(F^*) = pi(F)^dagger.
inline CriterionResult criterion_star_homomorphism() {
  CriterionResult r{3, "integrated form is a *-homomorphism", false, "", 0.0, 20.0};
  detail::Check c;
  Rng rng(303);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const auto g = detail::rotating_groupoid(trial, rng);
    const auto h = counting_haar(g);
    const bool pair = trial % 3 == 0;
    const auto mu = detail::random_measure(rng, g.unit_count(), !pair);
    const auto rep = random_representation_triple(g, h, mu, 3, 1000 + trial);
    const auto f = detail::random_function(rng, g.arrow_count());
    const auto fp = detail::random_function(rng, g.arrow_count());
    const auto pf = integrated_form(f, rep, g, h);
    const auto pfp = integrated_form(fp, rep, g, h);
    const auto pconv = integrated_form(convolve(f, fp, g, h), rep, g, h);
    const auto pstar = integrated_form(involution(f, g), rep, g, h);
    const double hom = IntegratedOperator::weighted_frobenius(pconv.matrix - pf.matrix * pfp.matrix, pf.metric, pf.metric);
    const double star = IntegratedOperator::weighted_frobenius(pstar.matrix - pf.adjoint(), pf.metric, pf.metric);
    worst = std::max({worst, hom, star});
    c.require(hom <= 1e-9 && star <= 1e-9, "trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << "max Frobenius deviation = " << std::scientific << std::setprecision(2) << worst << " (tol 1e-9)";
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 4. (alpha, alpha) is positive definite; antisymmetric patterns are not.
inline CriterionResult criterion_positive_definite() {
  CriterionResult r{4, "positive definiteness of (alpha, alpha); antisymmetric rejected", false, "", 0.0, 10.0};
  detail::Check c;
  Rng rng(404);
  double worst_pd = 1e300, worst_non = -1e300;
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const auto g = detail::rotating_groupoid(trial, rng);
    const auto h = counting_haar(g);
    const auto mu = detail::random_measure(rng, g.unit_count(), trial % 3 != 0);
    const auto rep = random_representation_triple(g, h, mu, 3, 2000 + trial);
    const auto alpha = detail::random_section(rng, rep.bundle);
    const auto phi = coefficient_function(alpha, alpha, rep, g);
    const auto pd = is_positive_definite(phi, g, h, mu);
    worst_pd = std::min(worst_pd, pd.min_eigenvalue);
    c.require(pd.is_pd, "(alpha, alpha) trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(2, 5);
    const auto g = pair_groupoid(n);
    const std::size_t i = rng.index(1, n);
    std::size_t j = rng.index(1, n - 1);
    if (j >= i) ++j;
    const double scale = rng.uniform(0.5, 2.0);
    GroupoidFunction phi(g.arrow_count());
    phi[g.arrow("(" + std::to_string(i) + "," + std::to_string(j) + ")")] = scale;
    phi[g.arrow("(" + std::to_string(j) + "," + std::to_string(i) + ")")] = -scale;
    const auto pd = is_positive_definite(phi, g, counting_haar(g), uniform_measure(n));
    worst_non = std::max(worst_non, pd.min_eigenvalue);
    c.require(!pd.is_pd, "antisymmetric trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "min eigenvalue over PD cases = " << worst_pd
    << ", max over antisymmetric cases = " << worst_non;
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 5. R^* pi_mu(F) R = pi_mu'(F) for mu' << mu.
inline CriterionResult criterion_intertwiner() {
  CriterionResult r{5, "rescaling intertwiner R^* pi(F) R = pi'(F)", false, "", 0.0, 10.0};
  detail::Check c;
  Rng rng(505);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const auto g = trial % 2 == 0 ? cyclic_group_bundle(rng.index(2, 3), rng.index(1, 4)) : unit_groupoid(rng.index(2, 6));
    const auto h = counting_haar(g);
    const auto mu = detail::random_measure(rng, g.unit_count(), false);
    const auto mu_prime = detail::random_measure(rng, g.unit_count(), true);
    const auto rep = random_representation_triple(g, h, mu, 3, 3000 + trial);
    const auto f = detail::random_function(rng, g.arrow_count());
    const double dev = intertwiner_check(rep, g, h, mu_prime, f);
    worst = std::max(worst, dev);
    c.require(dev <= 1e-9, "trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << "max deviation = " << std::scientific << std::setprecision(2) << worst << " (tol 1e-9)";
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 6. Lebesgue decomposition, exact in rational arithmetic.
inline CriterionResult criterion_lebesgue() {
  CriterionResult r{6, "Lebesgue decomposition exact on rational measures", false, "", 0.0, 10.0};
  detail::Check c;
  using Q = boost::rational<std::int64_t>;
  Rng rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t units = rng.index(1, 8);
    BasicUnitMeasure<Q> mu{std::vector<Q>(units)}, mu_prime{std::vector<Q>(units)};
    for (std::size_t x = 0; x < units; ++x) {
      if (rng.uniform() < 0.6) mu[x] = Q(static_cast<std::int64_t>(rng.index(1, 9)), static_cast<std::int64_t>(rng.index(1, 12)));
      if (rng.uniform() < 0.6) mu_prime[x] = Q(static_cast<std::int64_t>(rng.index(1, 9)), static_cast<std::int64_t>(rng.index(1, 12)));
    }
    const auto dec = lebesgue_decompose(mu_prime, mu);
    bool exact = true;
    for (std::size_t x = 0; x < units; ++x) {
      exact = exact && dec.singular[x] + dec.abs_continuous[x] == mu_prime[x];
      exact = exact && !(dec.singular.in_support(x) && mu.in_support(x));
      exact = exact && !(dec.abs_continuous.in_support(x) && !mu.in_support(x));
    }
    exact = exact && mutually_singular(dec.singular, mu) && absolutely_continuous(dec.abs_continuous, mu);
    c.require(exact, "trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  r.detail = c.ok ? "50 rational pairs: supports split and parts sum to mu' with zero error" : c.note.str();
  return r;
}

// 7. Direct sum over mutually singular measures is block diagonal.
inline CriterionResult criterion_direct_sum() {
  CriterionResult r{7, "direct-sum decomposition is block diagonal", false, "", 0.0, 10.0};
  detail::Check c;
  Rng rng(707);
  double worst_off = 0.0, worst_block = 0.0;
  for (std::size_t trial = 0; trial < 12; ++trial) {
    FiniteGroupoid left, right;
    switch (trial % 3) {
      case 0: left = pair_groupoid(rng.index(1, 3)); right = pair_groupoid(rng.index(1, 3)); break;
      case 1: left = pair_groupoid(rng.index(2, 3)); right = cyclic_group_bundle(rng.index(1, 2), rng.index(2, 3)); break;
      default: left = unit_groupoid(rng.index(1, 3)); right = cyclic_group_bundle(2, 2); break;
    }
    const auto g = disjoint_union(left, right);
    const auto h = counting_haar(g);
    UnitMeasure mu0{std::vector<double>(g.unit_count(), 0.0)}, mu1 = mu0;
    for (Unit x = 0; x < left.unit_count(); ++x) mu0[x] = rng.uniform(0.1, 1.0);
    for (Unit x = left.unit_count(); x < g.unit_count(); ++x) mu1[x] = rng.uniform(0.1, 1.0);
    const double c0 = rng.uniform(0.2, 2.0), c1 = rng.uniform(0.2, 2.0);
    UnitMeasure mu{std::vector<double>(g.unit_count())};
    for (Unit x = 0; x < g.unit_count(); ++x) mu[x] = c0 * mu0[x] + c1 * mu1[x];
    const auto rep = random_representation_triple(g, h, mu, 2, 4000 + trial);
    const auto dec = direct_sum_decompose(rep, g, h, mu0, mu1, c0, c1, 8, trial);
    worst_off = std::max(worst_off, dec.report.max_off_block);
    worst_block = std::max(worst_block, dec.report.max_block_deviation);
    c.require(dec.report.max_off_block <= 1e-10, "off-block in trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "max off-block magnitude = " << worst_off
    << " (tol 1e-10), max block deviation = " << worst_block;
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 8. The pairing computed directly equals the representation-side value.
inline CriterionResult criterion_duality_pairing() {
  CriterionResult r{8, "duality pairing: direct sum = <pi(F)(a alpha), b beta>", false, "", 0.0, 20.0};
  detail::Check c;
  Rng rng(808);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    const auto g = trial % 2 == 0 ? pair_groupoid(3) : cyclic_group_bundle(2, 3);
    const auto h = counting_haar(g);
    const auto mu = detail::random_measure(rng, g.unit_count(), false);
    const auto rep = random_representation_triple(g, h, mu, 3, 5000 + trial);
    const auto alpha = detail::random_section(rng, rep.bundle);
    const auto beta = detail::random_section(rng, rep.bundle);
    const auto phi = coefficient_function(alpha, beta, rep, g);
    const auto f = detail::random_function(rng, g.arrow_count());
    std::vector<Complex> a(g.unit_count()), b(g.unit_count());
    for (auto& v : a) v = rng.complex_normal();
    for (auto& v : b) v = rng.complex_normal();
    const auto p = duality_pairing(phi, f, a, b, rep, alpha, beta, g, h);
    worst = std::max(worst, p.difference);
    c.require(p.difference <= 1e-10, "trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << "max |direct - representation| = " << std::scientific << std::setprecision(2) << worst << " (tol 1e-10)";
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 9. Unit groupoid: the B-norm is the sup norm over supp(mu), exactly.
inline CriterionResult criterion_unit_groupoid() {
  CriterionResult r{9, "unit groupoid: bNorm = max |phi| over supp(mu), exact", false, "", 0.0, 5.0};
  detail::Check c;
  using Q = boost::rational<std::int64_t>;
  Rng rng(909);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(1, 6);
    const auto g = unit_groupoid(n);
    std::vector<Q> values(n);
    UnitMeasure mu{std::vector<double>(n)};
    Q oracle(0);
    for (std::size_t x = 0; x < n; ++x) {
      values[x] = Q(static_cast<std::int64_t>(rng.index(0, 40)) - 20, static_cast<std::int64_t>(rng.index(1, 16)));
      mu[x] = rng.uniform() < 0.3 && x > 0 ? 0.0 : static_cast<double>(rng.index(1, 4)) / 4.0;
      if (mu[x] > 0.0) oracle = std::max(oracle, boost::abs(values[x]));
    }
    GroupoidFunction phi(n);
    for (std::size_t x = 0; x < n; ++x) phi[x] = boost::rational_cast<double>(values[x]);
    const auto res = b_norm(phi, g, counting_haar(g), mu);
    c.require(res.method == "linfty" && res.value == boost::rational_cast<double>(oracle), "trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  r.detail = c.ok ? "20 rational instances match the exact maximum bit for bit" : c.note.str();
  return r;
}

// 10. Cyclic bundle Z_4 over three points: C*-norm and B-norm via the DFT.
inline CriterionResult criterion_cyclic_bundle() {
  CriterionResult r{10, "cyclic bundle (3, 4): DFT C*-norm vs dense pi(F), l1 B-norm", false, "", 0.0, 10.0};
  detail::Check c;
  const auto g = cyclic_group_bundle(3, 4);
  const auto h = counting_haar(g);
  const auto mu = uniform_measure(3);
  const auto regular = regular_triple(g, mu);
  Rng rng(1010);
  double worst_cstar = 0.0, worst_b = 0.0;
  // Characters computed from polar form, independently of the exact-quarter
  // table used by the library.
  auto chi = [](int l, int k) { return std::polar(1.0, 2.0 * std::numbers::pi * l * k / 4.0); };
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = detail::random_function(rng, g.arrow_count());
    const double value = cstar_norm(f, g, h, mu);
    const double dense = integrated_form(f, regular, g, h).norm();
    double oracle = 0.0;
    for (int n = 0; n < 3; ++n)
      for (int l = 0; l < 4; ++l) {
        Complex s = 0.0;
        for (int k = 0; k < 4; ++k) s += f[static_cast<Arrow>(4 * n + k)] * chi(l, k);
        oracle = std::max(oracle, std::abs(s));
      }
    worst_cstar = std::max({worst_cstar, std::abs(value - dense), std::abs(value - oracle)});
    c.require(std::abs(value - dense) <= 1e-9 && std::abs(value - oracle) <= 1e-9, "cstar trial " + std::to_string(trial));

    const auto phi = detail::random_function(rng, g.arrow_count());
    double b_oracle = 0.0;
    for (int n = 0; n < 3; ++n) {
      double l1 = 0.0;
      for (int l = 0; l < 4; ++l) {
        Complex s = 0.0;
        for (int k = 0; k < 4; ++k) s += phi[static_cast<Arrow>(4 * n + k)] * std::conj(chi(l, k));
        l1 += std::abs(s) / 4.0;
      }
      b_oracle = std::max(b_oracle, l1);
    }
    const auto res = b_norm(phi, g, h, mu);
    worst_b = std::max(worst_b, std::abs(res.value - b_oracle));
    c.require(res.method == "dft-l1" && std::abs(res.value - b_oracle) <= 1e-9, "bnorm trial " + std::to_string(trial));
  }
  GroupoidFunction delta(g.arrow_count());
  for (Unit x = 0; x < g.unit_count(); ++x) delta[g.unit_arrow(x)] = 1.0;
  const auto golden = b_norm(delta, g, h, mu);
  c.require(golden.value == 1.0, "bNorm(delta) == 1.0 exactly");
  for (Unit x = 0; x < g.unit_count(); ++x) {
    const auto one_fiber = b_norm(GroupoidFunction::delta(g.arrow_count(), g.unit_arrow(x)), g, h, mu);
    c.require(one_fiber.value == 1.0, "bNorm(delta at fiber " + std::to_string(x + 1) + ") == 1.0 exactly");
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "max C*-norm deviation = " << worst_cstar
    << ", max B-norm deviation = " << worst_b << ", bNorm(delta) = " << std::defaultfloat << golden.value;
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

// 11. B_mu(G) is a Banach *-algebra on pair groupoids.
inline CriterionResult criterion_banach_algebra() {
  CriterionResult r{11, "Banach *-algebra: submultiplicative, involution-isometric", false, "", 0.0, 30.0};
  detail::Check c;
  Rng rng(1111);
  double worst_mult = -1e300, worst_star = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.index(2, 4);
    const auto g = pair_groupoid(n);
    const auto h = counting_haar(g);
    const auto mu = uniform_measure(n);
    const auto phi = detail::random_function(rng, g.arrow_count());
    const auto psi = detail::random_function(rng, g.arrow_count());
    const double bp = b_norm(phi, g, h, mu).value;
    const double bq = b_norm(psi, g, h, mu).value;
    const double bpq = b_norm(pointwise_product(phi, psi), g, h, mu).value;
    const double bstar = b_norm(pointwise_star(phi, g), g, h, mu).value;
    worst_mult = std::max(worst_mult, bpq - bp * bq);
    worst_star = std::max(worst_star, std::abs(bstar - bp));
    c.require(bpq <= bp * bq + 1e-5, "submultiplicativity trial " + std::to_string(trial));
    c.require(std::abs(bstar - bp) <= 1e-6, "involution trial " + std::to_string(trial));
  }
  r.passed = c.ok;
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "max(b(phi psi) - b(phi) b(psi)) = " << worst_mult
    << " (tol 1e-5), max |b(phi*) - b(phi)| = " << worst_star << " (tol 1e-6)";
  r.detail = d.str() + (c.ok ? "" : "; " + c.note.str());
  return r;
}

inline constexpr double kSuiteBudgetSeconds = 180.0;

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.name << "  ["
     << std::fixed << std::setprecision(2) << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds
     << " s]  " << r.detail;
  return os.str();
}

/// Runs every criterion; a criterion passes only if its checks hold and it
/// finishes within its budget. Exceptions count as failures.
inline std::vector<CriterionResult> run_all(std::ostream* progress = nullptr) {
  const std::vector<std::function<CriterionResult()>> criteria = {
      criterion_closed_forms,   criterion_haagerup_sandwich, criterion_star_homomorphism,
      criterion_positive_definite, criterion_intertwiner,    criterion_lebesgue,
      criterion_direct_sum,     criterion_duality_pairing,   criterion_unit_groupoid,
      criterion_cyclic_bundle,  criterion_banach_algebra};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = criteria[i]();
    } catch (const std::exception& e) {
      res.id = static_cast<int>(i + 1);
      res.name = "criterion " + std::to_string(i + 1);
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = detail::seconds_since(t0);
    if (res.budget_seconds > 0.0 && res.seconds > res.budget_seconds) {
      res.passed = false;
      res.detail += "; over budget";
    }
    if (progress) *progress << format_line(res) << '\n' << std::flush;
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace gfs::selftest

#endif  // GFS_SELFTEST_ACCEPTANCE_HPP

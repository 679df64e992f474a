#ifndef GFS_MEASURES_HPP
#define GFS_MEASURES_HPP

// Measures on the unit space and on the arrows: the induced measure nu, its
// inverse image, the modular function, the symmetrized measure nu_0,
// Lebesgue decomposition and the half-density rescaling of sections.
//
// On a finite set two measures are equivalent iff they have the same
// support, so every equivalence test below is an exact support comparison.
// The weight type is a template parameter so that exactness claims can be
// checked with rational arithmetic.

#include "gfs/bundle.hpp"
#include "gfs/groupoid.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gfs {

template <typename T>
struct BasicUnitMeasure {
  std::vector<T> weights;

  std::size_t size() const { return weights.size(); }
  const T& operator[](Unit x) const { return weights[x]; }
  T& operator[](Unit x) { return weights[x]; }

  T total() const {
    T sum(0);
    for (const auto& w : weights) sum += w;
    return sum;
  }
  bool in_support(Unit x) const { return weights[x] > T(0); }
  std::vector<Unit> support() const {
    std::vector<Unit> s;
    for (Unit x = 0; x < weights.size(); ++x)
      if (in_support(x)) s.push_back(x);
    return s;
  }

  friend bool operator==(const BasicUnitMeasure& a, const BasicUnitMeasure& b) {
    return a.weights == b.weights;
  }
};

using UnitMeasure = BasicUnitMeasure<double>;

template <typename T = double>
BasicUnitMeasure<T> uniform_measure(std::size_t units) {
  return BasicUnitMeasure<T>{std::vector<T>(units, T(1) / T(static_cast<long>(units)))};
}

template <typename T>
BasicUnitMeasure<T> normalize(const BasicUnitMeasure<T>& mu) {
  const T total = mu.total();
  if (!(total > T(0))) throw std::invalid_argument("normalize: measure has zero total mass");
  BasicUnitMeasure<T> out = mu;
  for (auto& w : out.weights) w = w / total;
  return out;
}

template <typename T>
void require_nonnegative(const BasicUnitMeasure<T>& mu, std::size_t units, const char* what) {
  if (mu.size() != units)
    throw std::invalid_argument(std::string(what) + ": measure must give one weight per unit");
  for (const auto& w : mu.weights)
    if (w < T(0)) throw std::invalid_argument(std::string(what) + ": negative measure weight");
}

enum class MeasureDirection { forward, inverse };

/// A measure on the arrows; `direction` tags nu versus nu^{-1}.
template <typename T>
struct BasicArrowMeasure {
  std::vector<T> weights;
  MeasureDirection direction = MeasureDirection::forward;

  const T& operator[](Arrow g) const { return weights[g]; }
  bool in_support(Arrow g) const { return weights[g] > T(0); }
};

using ArrowMeasure = BasicArrowMeasure<double>;

/// nu(g) = mu(r(g)) lambda^{r(g)}(g).
template <typename T>
BasicArrowMeasure<T> induced_measure(const FiniteGroupoid& g, const BasicHaarSystem<T>& h,
                                     const BasicUnitMeasure<T>& mu) {
  require_nonnegative(mu, g.unit_count(), "induced_measure");
  BasicArrowMeasure<T> nu;
  nu.weights.resize(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) nu.weights[a] = mu[g.range(a)] * h[a];
  return nu;
}

/// nu^{-1}(g) = nu(g^{-1}).
template <typename T>
BasicArrowMeasure<T> inverse_measure(const FiniteGroupoid& g, const BasicArrowMeasure<T>& nu) {
  BasicArrowMeasure<T> out;
  out.weights.resize(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) out.weights[a] = nu[g.inverse(a)];
  out.direction = nu.direction == MeasureDirection::forward ? MeasureDirection::inverse
                                                            : MeasureDirection::forward;
  return out;
}

struct QuasiInvariance {
  bool holds = true;
  std::optional<Arrow> witness;  // an arrow in exactly one of the two supports
};

/// mu is quasi-invariant iff supp(nu) == supp(nu^{-1}). The witness, when
/// reported, is an arrow carrying no nu-mass whose inverse does.
template <typename T>
QuasiInvariance is_quasi_invariant(const FiniteGroupoid& g, const BasicHaarSystem<T>& h,
                                   const BasicUnitMeasure<T>& mu) {
  const auto nu = induced_measure(g, h, mu);
  const auto nui = inverse_measure(g, nu);
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    if (!nu.in_support(a) && nui.in_support(a)) return {false, a};
  return {};
}

/// Delta = d nu / d nu^{-1} on supp(nu), extended by 1 elsewhere.
template <typename T>
struct BasicModularFunction {
  std::vector<T> values;

  const T& operator[](Arrow g) const { return values[g]; }
};

using ModularFunction = BasicModularFunction<double>;

template <typename T>
BasicModularFunction<T> modular_function(const FiniteGroupoid& g, const BasicHaarSystem<T>& h,
                                         const BasicUnitMeasure<T>& mu) {
  const auto qi = is_quasi_invariant(g, h, mu);
  if (!qi.holds)
    throw std::domain_error("modular_function: measure is not quasi-invariant (witness arrow " +
                            g.arrow_label(*qi.witness) + ")");
  const auto nu = induced_measure(g, h, mu);
  const auto nui = inverse_measure(g, nu);
  BasicModularFunction<T> delta;
  delta.values.assign(g.arrow_count(), T(1));
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    if (nu.in_support(a)) delta.values[a] = nu[a] / nui[a];
  return delta;
}

/// nu_0 = Delta^{-1/2} nu. On the support this equals sqrt(nu(g) nu(g^{-1})),
/// which is the form evaluated, so nu_0(g) == nu_0(g^{-1}) holds bitwise.
inline ArrowMeasure symmetrized_measure(const FiniteGroupoid& g, const ArrowMeasure& nu) {
  ArrowMeasure out;
  out.weights.assign(g.arrow_count(), 0.0);
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    const double fwd = nu[a];
    const double bwd = nu[g.inverse(a)];
    if (fwd > 0.0 && bwd > 0.0) out.weights[a] = std::sqrt(fwd * bwd);
  }
  return out;
}

inline ArrowMeasure symmetrized_measure(const FiniteGroupoid& g, const HaarSystem& h,
                                        const UnitMeasure& mu) {
  return symmetrized_measure(g, induced_measure(g, h, mu));
}

template <typename T>
bool absolutely_continuous(const BasicUnitMeasure<T>& mu_prime, const BasicUnitMeasure<T>& mu) {
  for (Unit x = 0; x < mu.size(); ++x)
    if (mu_prime.in_support(x) && !mu.in_support(x)) return false;
  return true;
}

template <typename T>
bool mutually_singular(const BasicUnitMeasure<T>& a, const BasicUnitMeasure<T>& b) {
  for (Unit x = 0; x < a.size(); ++x)
    if (a.in_support(x) && b.in_support(x)) return false;
  return true;
}

template <typename T>
struct LebesgueDecomposition {
  BasicUnitMeasure<T> singular;       // supported off supp(mu)
  BasicUnitMeasure<T> abs_continuous;  // supported on supp(mu)
};

/// mu' = singular + abs_continuous with singular _|_ mu and abs_continuous << mu.
/// Each weight of mu' lands unchanged in exactly one part, so the sum is exact.
template <typename T>
LebesgueDecomposition<T> lebesgue_decompose(const BasicUnitMeasure<T>& mu_prime,
                                            const BasicUnitMeasure<T>& mu) {
  if (mu_prime.size() != mu.size())
    throw std::invalid_argument("lebesgue_decompose: measures live on different unit spaces");
  LebesgueDecomposition<T> out;
  out.singular.weights.assign(mu.size(), T(0));
  out.abs_continuous.weights.assign(mu.size(), T(0));
  for (Unit x = 0; x < mu.size(); ++x) {
    if (mu.in_support(x))
      out.abs_continuous.weights[x] = mu_prime[x];
    else
      out.singular.weights[x] = mu_prime[x];
  }
  return out;
}

/// (R xi')(x) = xi'(x) (mu'(x) / mu(x))^{1/2}; an isometry L^2(mu') -> L^2(mu).
inline BundleSection density_half_scale(const BundleSection& section, const UnitMeasure& mu_prime,
                                        const UnitMeasure& mu) {
  if (section.blocks.size() != mu.size() || mu_prime.size() != mu.size())
    throw std::invalid_argument("density_half_scale: size mismatch");
  if (!absolutely_continuous(mu_prime, mu))
    throw std::domain_error("density_half_scale: mu' is not absolutely continuous with respect to mu");
  BundleSection out = section;
  for (Unit x = 0; x < mu.size(); ++x) {
    if (mu_prime.in_support(x))
      out[x] = section[x] * std::sqrt(mu_prime[x] / mu[x]);
    else
      out[x].setZero();
  }
  return out;
}

/// <xi, eta>_{L^2(H, mu)} = sum_x mu(x) <xi_x, eta_x>, linear in xi.
inline Complex l2_inner(const BundleSection& xi, const BundleSection& eta, const UnitMeasure& mu) {
  Complex sum = 0.0;
  for (Unit x = 0; x < mu.size(); ++x)
    if (mu.in_support(x)) sum += mu[x] * eta[x].dot(xi[x]);
  return sum;
}

inline double l2_norm(const BundleSection& xi, const UnitMeasure& mu) {
  return std::sqrt(std::max(0.0, l2_inner(xi, xi, mu).real()));
}

/// ess sup_x ||xi_x|| with respect to mu.
inline double sup_norm(const BundleSection& xi, const UnitMeasure& mu) {
  double m = 0.0;
  for (Unit x = 0; x < mu.size(); ++x)
    if (mu.in_support(x)) m = std::max(m, xi[x].norm());
  return m;
}

}  // namespace gfs

#endif  // GFS_MEASURES_HPP

#ifndef GFS_CONVOLUTION_HPP
#define GFS_CONVOLUTION_HPP

// The convolution *-algebra of complex functions on a finite groupoid.

#include "gfs/groupoid.hpp"
#include "gfs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gfs {

/// A complex value per arrow.
class GroupoidFunction {
 public:
  GroupoidFunction() = default;
  explicit GroupoidFunction(std::size_t arrows, Complex fill = 0.0) : values_(arrows, fill) {}
  explicit GroupoidFunction(std::vector<Complex> values) : values_(std::move(values)) {
    for (const auto& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("GroupoidFunction: non-finite value");
  }

  static GroupoidFunction delta(std::size_t arrows, Arrow g, Complex value = 1.0) {
    GroupoidFunction f(arrows);
    f.values_.at(g) = value;
    return f;
  }

  /// 1 on unit arrows, 0 elsewhere.
  static GroupoidFunction unit_indicator(const FiniteGroupoid& g) {
    GroupoidFunction f(g.arrow_count());
    for (Unit u = 0; u < g.unit_count(); ++u) f.values_[g.unit_arrow(u)] = 1.0;
    return f;
  }

  std::size_t size() const { return values_.size(); }
  const Complex& operator[](Arrow g) const { return values_[g]; }
  Complex& operator[](Arrow g) { return values_[g]; }
  const std::vector<Complex>& values() const { return values_; }

  GroupoidFunction& operator+=(const GroupoidFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GroupoidFunction& operator-=(const GroupoidFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GroupoidFunction& operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend GroupoidFunction operator+(GroupoidFunction a, const GroupoidFunction& b) { return a += b; }
  friend GroupoidFunction operator-(GroupoidFunction a, const GroupoidFunction& b) { return a -= b; }
  friend GroupoidFunction operator*(Complex c, GroupoidFunction a) { return a *= c; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  void check_same(const GroupoidFunction& o) const {
    if (o.size() != size()) throw std::invalid_argument("groupoid functions live on different groupoids");
  }

 private:
  std::vector<Complex> values_;
};

inline double max_abs_difference(const GroupoidFunction& a, const GroupoidFunction& b) {
  a.check_same(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline void require_on(const GroupoidFunction& f, const FiniteGroupoid& g, const char* what) {
  if (f.size() != g.arrow_count())
    throw std::invalid_argument(std::string(what) + ": function does not live on this groupoid");
}

/// (F * F')(g) = sum_{k in G^{r(g)}} F(k) F'(k^{-1} g) lambda(k).
inline GroupoidFunction convolve(const GroupoidFunction& f, const GroupoidFunction& fp,
                                 const FiniteGroupoid& g, const HaarSystem& h) {
  require_on(f, g, "convolve");
  require_on(fp, g, "convolve");
  GroupoidFunction out(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    Complex sum = 0.0;
    for (Arrow k : g.range_fiber(g.range(a))) {
      if (f[k] == 0.0) continue;
      sum += f[k] * fp[g.compose(g.inverse(k), a)] * h[k];
    }
    out[a] = sum;
  }
  return out;
}

/// F^*(g) = conj(F(g^{-1})).
inline GroupoidFunction involution(const GroupoidFunction& f, const FiniteGroupoid& g) {
  require_on(f, g, "involution");
  GroupoidFunction out(g.arrow_count());
  for (Arrow a = 0; a < g.arrow_count(); ++a) out[a] = std::conj(f[g.inverse(a)]);
  return out;
}

/// max( sup_x sum_{G^x} |F| dlambda^x, sup_x sum_{G_x} |F| dlambda_x ) with
/// lambda_x(g) = lambda^x(g^{-1}).
inline double i_norm(const GroupoidFunction& f, const FiniteGroupoid& g, const HaarSystem& h) {
  require_on(f, g, "i_norm");
  double best = 0.0;
  for (Unit x = 0; x < g.unit_count(); ++x) {
    double range_sum = 0.0, source_sum = 0.0;
    for (Arrow a : g.range_fiber(x)) range_sum += std::abs(f[a]) * h[a];
    for (Arrow a : g.source_fiber(x)) source_sum += std::abs(f[a]) * h[g.inverse(a)];
    best = std::max({best, range_sum, source_sum});
  }
  return best;
}

}  // namespace gfs

#endif  // GFS_CONVOLUTION_HPP

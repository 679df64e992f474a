#ifndef GFS_GROUPOID_HPP
#define GFS_GROUPOID_HPP

// Finite groupoids with explicit arrow tables, left Haar systems, axiom
// validation, and the constructors used by the examples (pair groupoids,
// unit-space groupoids, bundles of cyclic groups).
//
// Product convention: product(g1, g2) = g1 g2 is defined iff
// source(g1) == range(g2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gfs {

using Arrow = std::size_t;
using Unit = std::size_t;

class FiniteGroupoid {
 public:
  static constexpr std::int64_t kUndefined = -1;

  FiniteGroupoid() = default;

  /// Raw constructor. `product` is row-major arrows x arrows with kUndefined
  /// for non-composable pairs. Only index ranges are checked here; the
  /// groupoid axioms are checked by validate_groupoid.
  FiniteGroupoid(std::vector<std::string> unit_labels,
                 std::vector<std::string> arrow_labels,
                 std::vector<Unit> range,
                 std::vector<Unit> source,
                 std::vector<std::int64_t> product,
                 std::vector<Arrow> inverse,
                 std::vector<Arrow> unit_arrow)
      : unit_labels_(std::move(unit_labels)),
        arrow_labels_(std::move(arrow_labels)),
        range_(std::move(range)),
        source_(std::move(source)),
        product_(std::move(product)),
        inverse_(std::move(inverse)),
        unit_arrow_(std::move(unit_arrow)) {
    const std::size_t na = arrow_labels_.size();
    const std::size_t nu = unit_labels_.size();
    if (nu == 0 || na == 0) throw std::invalid_argument("groupoid: empty unit or arrow set");
    if (range_.size() != na || source_.size() != na || inverse_.size() != na ||
        product_.size() != na * na || unit_arrow_.size() != nu)
      throw std::invalid_argument("groupoid: table sizes do not match the arrow/unit counts");
    for (std::size_t g = 0; g < na; ++g) {
      if (range_[g] >= nu || source_[g] >= nu || inverse_[g] >= na)
        throw std::invalid_argument("groupoid: index out of range for arrow " + arrow_labels_[g]);
    }
    for (auto p : product_)
      if (p != kUndefined && (p < 0 || static_cast<std::size_t>(p) >= na))
        throw std::invalid_argument("groupoid: product entry out of range");
    for (auto e : unit_arrow_)
      if (e >= na) throw std::invalid_argument("groupoid: unit embedding out of range");
    build_indices();
  }

  std::size_t unit_count() const { return unit_labels_.size(); }
  std::size_t arrow_count() const { return arrow_labels_.size(); }

  Unit range(Arrow g) const { return range_[g]; }
  Unit source(Arrow g) const { return source_[g]; }
  Arrow inverse(Arrow g) const { return inverse_[g]; }
  Arrow unit_arrow(Unit u) const { return unit_arrow_[u]; }

  bool composable(Arrow g1, Arrow g2) const { return source_[g1] == range_[g2]; }

  /// Table lookup of g1 g2; nullopt where the table has no entry.
  std::optional<Arrow> product(Arrow g1, Arrow g2) const {
    const auto p = product_[g1 * arrow_count() + g2];
    if (p == kUndefined) return std::nullopt;
    return static_cast<Arrow>(p);
  }

  /// g1 g2 for a pair known to be composable in a valid groupoid.
  Arrow compose(Arrow g1, Arrow g2) const {
    const auto p = product_[g1 * arrow_count() + g2];
    if (p == kUndefined)
      throw std::logic_error("groupoid: product " + arrow_labels_[g1] + " * " +
                             arrow_labels_[g2] + " is undefined");
    return static_cast<Arrow>(p);
  }

  /// G^x = {g : r(g) = x}, in arrow order.
  const std::vector<Arrow>& range_fiber(Unit x) const {
    check_unit(x);
    return range_fibers_[x];
  }
  /// G_x = {g : s(g) = x}, in arrow order.
  const std::vector<Arrow>& source_fiber(Unit x) const {
    check_unit(x);
    return source_fibers_[x];
  }

  bool is_unit_arrow(Arrow g) const { return unit_of_arrow_[g].has_value(); }
  std::optional<Unit> unit_of_arrow(Arrow g) const { return unit_of_arrow_[g]; }

  const std::string& unit_label(Unit u) const { return unit_labels_[u]; }
  const std::string& arrow_label(Arrow g) const { return arrow_labels_[g]; }
  const std::vector<std::string>& unit_labels() const { return unit_labels_; }
  const std::vector<std::string>& arrow_labels() const { return arrow_labels_; }

  std::optional<Unit> find_unit(const std::string& label) const {
    if (auto it = unit_index_.find(label); it != unit_index_.end()) return it->second;
    return std::nullopt;
  }
  std::optional<Arrow> find_arrow(const std::string& label) const {
    if (auto it = arrow_index_.find(label); it != arrow_index_.end()) return it->second;
    return std::nullopt;
  }
  Unit unit(const std::string& label) const {
    if (auto u = find_unit(label)) return *u;
    throw std::invalid_argument("unknown unit '" + label + "'");
  }
  Arrow arrow(const std::string& label) const {
    if (auto g = find_arrow(label)) return *g;
    throw std::invalid_argument("unknown arrow '" + label + "'");
  }

  // For building deliberately broken instances. Range and source stay
  // fixed, so the cached fibers remain valid.
  void set_inverse(Arrow g, Arrow ginv) {
    inverse_.at(g) = ginv;
  }
  void set_product(Arrow g1, Arrow g2, std::optional<Arrow> value) {
    product_.at(g1 * arrow_count() + g2) =
        value ? static_cast<std::int64_t>(*value) : kUndefined;
  }

 private:
  void check_unit(Unit x) const {
    if (x >= unit_count()) throw std::out_of_range("groupoid: unknown unit index");
  }

  void build_indices() {
    range_fibers_.assign(unit_count(), {});
    source_fibers_.assign(unit_count(), {});
    unit_of_arrow_.assign(arrow_count(), std::nullopt);
    for (Arrow g = 0; g < arrow_count(); ++g) {
      range_fibers_[range_[g]].push_back(g);
      source_fibers_[source_[g]].push_back(g);
    }
    for (Unit u = 0; u < unit_count(); ++u) unit_of_arrow_[unit_arrow_[u]] = u;
    for (Unit u = 0; u < unit_count(); ++u) unit_index_.emplace(unit_labels_[u], u);
    for (Arrow g = 0; g < arrow_count(); ++g) arrow_index_.emplace(arrow_labels_[g], g);
    if (unit_index_.size() != unit_count()) throw std::invalid_argument("groupoid: duplicate unit label");
    if (arrow_index_.size() != arrow_count()) throw std::invalid_argument("groupoid: duplicate arrow label");
  }

  std::vector<std::string> unit_labels_;
  std::vector<std::string> arrow_labels_;
  std::vector<Unit> range_;
  std::vector<Unit> source_;
  std::vector<std::int64_t> product_;
  std::vector<Arrow> inverse_;
  std::vector<Arrow> unit_arrow_;

  std::vector<std::vector<Arrow>> range_fibers_;
  std::vector<std::vector<Arrow>> source_fibers_;
  std::vector<std::optional<Unit>> unit_of_arrow_;
  std::unordered_map<std::string, Unit> unit_index_;
  std::unordered_map<std::string, Arrow> arrow_index_;
};

/// Left Haar system: one positive weight per arrow; restricted to G^x it is
/// the measure lambda^x.
template <typename T>
struct BasicHaarSystem {
  std::vector<T> weights;

  const T& operator[](Arrow g) const { return weights[g]; }
};

using HaarSystem = BasicHaarSystem<double>;

template <typename T = double>
BasicHaarSystem<T> counting_haar(const FiniteGroupoid& g) {
  return BasicHaarSystem<T>{std::vector<T>(g.arrow_count(), T(1))};
}

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool cites(const std::string& axiom, const std::string& witness_label) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
      return v.axiom == axiom &&
             std::find(v.witness.begin(), v.witness.end(), witness_label) != v.witness.end();
    });
  }
};

namespace detail {
inline void add(ValidationReport& r, std::string axiom, std::vector<std::string> witness,
                std::string detail) {
  r.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
}
}  // namespace detail

/// Checks every groupoid axiom and lists each violation with a witness.
///
/// Axiom names: "unit", "product-domain", "product-endpoints", "identity",
/// "associativity", "inverse".
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport rep;
  const std::size_t na = g.arrow_count();
  const auto& L = g.arrow_labels();

  for (Unit u = 0; u < g.unit_count(); ++u) {
    const Arrow e = g.unit_arrow(u);
    if (g.range(e) != u || g.source(e) != u)
      detail::add(rep, "unit", {g.unit_label(u), L[e]}, "r(e_u) = s(e_u) = u fails");
  }
  {
    std::vector<bool> seen(na, false);
    for (Unit u = 0; u < g.unit_count(); ++u) {
      const Arrow e = g.unit_arrow(u);
      if (seen[e]) detail::add(rep, "unit", {g.unit_label(u), L[e]}, "unit embedding is not injective");
      seen[e] = true;
    }
  }

  for (Arrow a = 0; a < na; ++a) {
    for (Arrow b = 0; b < na; ++b) {
      const auto p = g.product(a, b);
      const bool should = g.composable(a, b);
      if (should != p.has_value()) {
        detail::add(rep, "product-domain", {L[a], L[b]},
                    should ? "composable pair has no product" : "product defined for non-composable pair");
        continue;
      }
      if (p && (g.range(*p) != g.range(a) || g.source(*p) != g.source(b)))
        detail::add(rep, "product-endpoints", {L[a], L[b], L[*p]}, "r(ab) = r(a), s(ab) = s(b) fails");
    }
  }

  for (Arrow a = 0; a < na; ++a) {
    const Arrow er = g.unit_arrow(g.range(a));
    const Arrow es = g.unit_arrow(g.source(a));
    const auto left = g.product(er, a);
    const auto right = g.product(a, es);
    if (!left || *left != a) detail::add(rep, "identity", {L[er], L[a]}, "e_{r(g)} g != g");
    if (!right || *right != a) detail::add(rep, "identity", {L[a], L[es]}, "g e_{s(g)} != g");
  }

  for (Arrow a = 0; a < na; ++a) {
    for (Arrow b : g.range_fiber(g.source(a))) {
      const auto ab = g.product(a, b);
      if (!ab) continue;
      for (Arrow c : g.range_fiber(g.source(b))) {
        const auto bc = g.product(b, c);
        if (!bc) continue;
        const auto lhs = g.product(*ab, c);
        const auto rhs = g.product(a, *bc);
        if (!lhs || !rhs || *lhs != *rhs)
          detail::add(rep, "associativity", {L[a], L[b], L[c]}, "(ab)c != a(bc)");
      }
    }
  }

  for (Arrow a = 0; a < na; ++a) {
    const Arrow ai = g.inverse(a);
    bool bad = false;
    std::string why;
    if (g.inverse(ai) != a) { bad = true; why += "(g^-1)^-1 != g; "; }
    if (g.range(ai) != g.source(a) || g.source(ai) != g.range(a)) {
      bad = true;
      why += "r(g^-1) != s(g) or s(g^-1) != r(g); ";
    }
    const auto gg = g.product(a, ai);
    const auto ig = g.product(ai, a);
    if (!gg || *gg != g.unit_arrow(g.range(a))) { bad = true; why += "g g^-1 != r(g); "; }
    if (!ig || *ig != g.unit_arrow(g.source(a))) { bad = true; why += "g^-1 g != s(g); "; }
    if (bad) detail::add(rep, "inverse", {L[a]}, why);
  }
  return rep;
}

/// Positivity and left invariance of a Haar system. Weights are compared
/// exactly when `tolerance` is zero (rational weights), relatively otherwise.
template <typename T>
ValidationReport validate_haar(const FiniteGroupoid& g, const BasicHaarSystem<T>& h,
                               double tolerance = 1e-12) {
  ValidationReport rep;
  const auto& L = g.arrow_labels();
  if (h.weights.size() != g.arrow_count()) {
    detail::add(rep, "haar-size", {}, "one weight per arrow required");
    return rep;
  }
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    if (!(h[a] > T(0))) detail::add(rep, "haar-positive", {L[a]}, "weight must be > 0");
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    for (Arrow b : g.range_fiber(g.source(a))) {
      const auto ab = g.product(a, b);
      if (!ab) continue;
      bool equal;
      if constexpr (std::is_floating_point_v<T>) {
        const double scale = std::max(std::abs(h[b]), std::abs(h[*ab]));
        equal = std::abs(h[*ab] - h[b]) <= tolerance * scale;
      } else {
        equal = h[*ab] == h[b];
      }
      if (!equal) detail::add(rep, "haar-invariance", {L[a], L[b]}, "lambda(gh) != lambda(h)");
    }
  }
  return rep;
}

/// G_n = {1..n} x {1..n} with (i,j)(j,k) = (i,k); arrow (i,j) has index
/// (i-1) n + (j-1) and label "(i,j)"; unit i has label "i".
inline FiniteGroupoid pair_groupoid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pair_groupoid: n must be >= 1");
  const std::size_t na = n * n;
  std::vector<std::string> ul(n), al(na);
  std::vector<Unit> r(na), s(na);
  std::vector<Arrow> inv(na), ua(n);
  std::vector<std::int64_t> prod(na * na, FiniteGroupoid::kUndefined);
  for (std::size_t i = 0; i < n; ++i) {
    ul[i] = std::to_string(i + 1);
    ua[i] = i * n + i;
    for (std::size_t j = 0; j < n; ++j) {
      const Arrow a = i * n + j;
      al[a] = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      r[a] = i;
      s[a] = j;
      inv[a] = j * n + i;
      for (std::size_t k = 0; k < n; ++k) prod[a * na + (j * n + k)] = static_cast<std::int64_t>(i * n + k);
    }
  }
  return FiniteGroupoid(std::move(ul), std::move(al), std::move(r), std::move(s), std::move(prod),
                        std::move(inv), std::move(ua));
}

/// The unit space {1..n} viewed as a groupoid: every arrow is a unit.
inline FiniteGroupoid unit_groupoid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("unit_groupoid: n must be >= 1");
  std::vector<std::string> ul(n);
  std::vector<Unit> r(n), s(n);
  std::vector<Arrow> inv(n), ua(n);
  std::vector<std::int64_t> prod(n * n, FiniteGroupoid::kUndefined);
  for (std::size_t i = 0; i < n; ++i) {
    ul[i] = std::to_string(i + 1);
    r[i] = s[i] = inv[i] = ua[i] = i;
    prod[i * n + i] = static_cast<std::int64_t>(i);
  }
  auto al = ul;
  return FiniteGroupoid(std::move(ul), std::move(al), std::move(r), std::move(s), std::move(prod),
                        std::move(inv), std::move(ua));
}

/// {1..base} x Z_m with (n,k)(n,k') = (n, k+k' mod m). Arrow (n,k) has index
/// (n-1) m + k and label "(n,k)"; unit n is labelled "(n,0)".
inline FiniteGroupoid cyclic_group_bundle(std::size_t base, std::size_t m) {
  if (base == 0 || m == 0) throw std::invalid_argument("cyclic_group_bundle: sizes must be >= 1");
  const std::size_t na = base * m;
  std::vector<std::string> ul(base), al(na);
  std::vector<Unit> r(na), s(na);
  std::vector<Arrow> inv(na), ua(base);
  std::vector<std::int64_t> prod(na * na, FiniteGroupoid::kUndefined);
  for (std::size_t n = 0; n < base; ++n) {
    ua[n] = n * m;
    for (std::size_t k = 0; k < m; ++k) {
      const Arrow a = n * m + k;
      al[a] = "(" + std::to_string(n + 1) + "," + std::to_string(k) + ")";
      r[a] = s[a] = n;
      inv[a] = n * m + (m - k) % m;
      for (std::size_t k2 = 0; k2 < m; ++k2)
        prod[a * na + n * m + k2] = static_cast<std::int64_t>(n * m + (k + k2) % m);
    }
    ul[n] = al[n * m];
  }
  return FiniteGroupoid(std::move(ul), std::move(al), std::move(r), std::move(s), std::move(prod),
                        std::move(inv), std::move(ua));
}

/// Disjoint union; labels are prefixed with "a:" and "b:".
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const std::size_t na = a.arrow_count() + b.arrow_count();
  const std::size_t nu = a.unit_count() + b.unit_count();
  const std::size_t oa = a.arrow_count(), ou = a.unit_count();
  std::vector<std::string> ul, al;
  std::vector<Unit> r, s;
  std::vector<Arrow> inv, ua;
  std::vector<std::int64_t> prod(na * na, FiniteGroupoid::kUndefined);
  for (const auto* part : {&a, &b}) {
    const std::string prefix = part == &a ? "a:" : "b:";
    const std::size_t arrow_off = part == &a ? 0 : oa;
    const std::size_t unit_off = part == &a ? 0 : ou;
    for (Unit u = 0; u < part->unit_count(); ++u) {
      ul.push_back(prefix + part->unit_label(u));
      ua.push_back(part->unit_arrow(u) + arrow_off);
    }
    for (Arrow g = 0; g < part->arrow_count(); ++g) {
      al.push_back(prefix + part->arrow_label(g));
      r.push_back(part->range(g) + unit_off);
      s.push_back(part->source(g) + unit_off);
      inv.push_back(part->inverse(g) + arrow_off);
      for (Arrow h = 0; h < part->arrow_count(); ++h)
        if (auto p = part->product(g, h))
          prod[(g + arrow_off) * na + h + arrow_off] = static_cast<std::int64_t>(*p + arrow_off);
    }
  }
  (void)nu;
  return FiniteGroupoid(std::move(ul), std::move(al), std::move(r), std::move(s), std::move(prod),
                        std::move(inv), std::move(ua));
}

/// Orbit index of every unit (units joined by an arrow share an orbit).
inline std::vector<std::size_t> unit_orbits(const FiniteGroupoid& g) {
  std::vector<std::size_t> orbit(g.unit_count(), g.unit_count());
  std::size_t next = 0;
  for (Unit u = 0; u < g.unit_count(); ++u) {
    if (orbit[u] != g.unit_count()) continue;
    for (Arrow a : g.source_fiber(u)) orbit[g.range(a)] = next;
    orbit[u] = next++;
  }
  return orbit;
}

enum class GroupoidClass { unit, pair, cyclic_bundle, other };

inline const char* to_string(GroupoidClass c) {
  switch (c) {
    case GroupoidClass::unit: return "unit";
    case GroupoidClass::pair: return "pair";
    case GroupoidClass::cyclic_bundle: return "cyclic-bundle";
    default: return "other";
  }
}

/// Structural recognition of the groupoid classes with computable duals.
///
/// For a cyclic bundle, `exponent[g]` is the k with g = gamma_x^k for the
/// chosen generator gamma_x of the isotropy group over x = r(g), and `order`
/// is the common isotropy order m. For a pair groupoid `order` is n and an
/// arrow is identified with (range, source).
struct Classification {
  GroupoidClass kind = GroupoidClass::other;
  std::size_t order = 0;
  std::vector<std::size_t> exponent;
};

inline Classification classify(const FiniteGroupoid& g) {
  Classification c;
  const std::size_t nu = g.unit_count(), na = g.arrow_count();
  if (na == nu) {
    bool all_units = true;
    for (Arrow a = 0; a < na; ++a) all_units = all_units && g.is_unit_arrow(a);
    if (all_units) {
      c.kind = GroupoidClass::unit;
      c.order = nu;
      c.exponent.assign(na, 0);
      return c;
    }
  }
  if (na == nu * nu) {
    std::vector<bool> hit(na, false);
    bool bij = true;
    for (Arrow a = 0; a < na && bij; ++a) {
      const std::size_t key = g.range(a) * nu + g.source(a);
      bij = !hit[key];
      hit[key] = true;
    }
    if (bij) {
      c.kind = GroupoidClass::pair;
      c.order = nu;
      return c;
    }
  }
  bool bundle = true;
  for (Arrow a = 0; a < na && bundle; ++a) bundle = g.range(a) == g.source(a);
  if (!bundle) return c;
  const std::size_t m = g.range_fiber(0).size();
  for (Unit u = 0; u < nu; ++u)
    if (g.range_fiber(u).size() != m) return c;
  c.exponent.assign(na, 0);
  for (Unit u = 0; u < nu; ++u) {
    const Arrow e = g.unit_arrow(u);
    bool found = false;
    for (Arrow gen : g.range_fiber(u)) {
      std::vector<Arrow> powers{e};
      Arrow cur = gen;
      while (cur != e && powers.size() <= m) {
        powers.push_back(cur);
        cur = g.compose(cur, gen);
      }
      if (powers.size() != m) continue;
      for (std::size_t k = 0; k < m; ++k) c.exponent[powers[k]] = k;
      found = true;
      break;
    }
    if (!found) return Classification{};
  }
  c.kind = GroupoidClass::cyclic_bundle;
  c.order = m;
  return c;
}

}  // namespace gfs

#endif  // GFS_GROUPOID_HPP

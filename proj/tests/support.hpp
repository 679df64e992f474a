#ifndef GFS_TESTS_SUPPORT_HPP
#define GFS_TESTS_SUPPORT_HPP

#include "gfs/gfs.hpp"

#include <string>
#include <vector>

namespace gfs::testing {

struct Sample {
  std::string name;
  FiniteGroupoid g;
  HaarSystem h;
};

inline Sample sample(std::string name, FiniteGroupoid g) {
  auto h = counting_haar(g);
  return {std::move(name), std::move(g), std::move(h)};
}

/// Every constructor class at small sizes, plus a disjoint union.
inline std::vector<Sample> zoo() {
  std::vector<Sample> out;
  for (std::size_t n = 1; n <= 4; ++n) out.push_back(sample("pair" + std::to_string(n), pair_groupoid(n)));
  for (std::size_t n = 1; n <= 4; ++n) out.push_back(sample("unit" + std::to_string(n), unit_groupoid(n)));
  out.push_back(sample("bundle1x4", cyclic_group_bundle(1, 4)));
  out.push_back(sample("bundle2x3", cyclic_group_bundle(2, 3)));
  out.push_back(sample("bundle3x2", cyclic_group_bundle(3, 2)));
  out.push_back(sample("pair2+bundle1x3", disjoint_union(pair_groupoid(2), cyclic_group_bundle(1, 3))));
  return out;
}

inline GroupoidFunction random_function(const FiniteGroupoid& g, Rng& rng) {
  std::vector<Complex> v(g.arrow_count());
  for (auto& z : v) z = rng.complex_normal();
  return GroupoidFunction(std::move(v));
}

/// Strictly positive weights, so the measure is quasi-invariant everywhere.
inline UnitMeasure random_full_measure(std::size_t units, Rng& rng) {
  UnitMeasure mu{std::vector<double>(units)};
  for (auto& w : mu.weights) w = rng.uniform(0.1, 1.0);
  return mu;
}

inline BundleSection random_section(const HilbertBundle& b, Rng& rng) {
  BundleSection s = BundleSection::zero(b);
  for (auto& blk : s.blocks) blk = rng.gaussian_vector(blk.size());
  return s;
}

inline CMatrix random_matrix(Eigen::Index n, Rng& rng) { return rng.gaussian(n, n); }

inline CMatrix permutation(const std::vector<Eigen::Index>& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, p[static_cast<std::size_t>(i)]) = 1.0;
  return m;
}

inline std::vector<Eigen::Index> random_permutation(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> p(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.index(0, i - 1)]);
  return p;
}

inline CMatrix random_phase_diagonal(Eigen::Index n, Rng& rng) {
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
  return d.asDiagonal();
}

}  // namespace gfs::testing

#endif  // GFS_TESTS_SUPPORT_HPP

#ifndef GFS_BUNDLE_HPP
#define GFS_BUNDLE_HPP

// Finite Hilbert bundles over the unit space and their sections.

#include "gfs/linalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfs {

/// A finite-dimensional Hilbert space H_x per unit x.
class HilbertBundle {
 public:
  HilbertBundle() = default;
  explicit HilbertBundle(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    offsets_.resize(dims_.size());
    std::size_t off = 0;
    for (std::size_t x = 0; x < dims_.size(); ++x) {
      offsets_[x] = off;
      off += dims_[x];
    }
    total_ = off;
  }

  static HilbertBundle constant(std::size_t units, std::size_t dim) {
    return HilbertBundle(std::vector<std::size_t>(units, dim));
  }

  std::size_t unit_count() const { return dims_.size(); }
  std::size_t dim(std::size_t x) const { return dims_.at(x); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t offset(std::size_t x) const { return offsets_.at(x); }
  std::size_t total_dim() const { return total_; }

  friend bool operator==(const HilbertBundle& a, const HilbertBundle& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// A section x -> xi_x in H_x.
struct BundleSection {
  std::vector<CVector> blocks;

  static BundleSection zero(const HilbertBundle& b) {
    BundleSection s;
    for (auto d : b.dims()) s.blocks.push_back(CVector::Zero(static_cast<Eigen::Index>(d)));
    return s;
  }

  bool matches(const HilbertBundle& b) const {
    if (blocks.size() != b.unit_count()) return false;
    for (std::size_t x = 0; x < blocks.size(); ++x)
      if (static_cast<std::size_t>(blocks[x].size()) != b.dim(x)) return false;
    return true;
  }

  const CVector& operator[](std::size_t x) const { return blocks[x]; }
  CVector& operator[](std::size_t x) { return blocks[x]; }
};

inline void require_matching(const BundleSection& s, const HilbertBundle& b, const char* what) {
  if (!s.matches(b))
    throw std::invalid_argument(std::string(what) + ": section block sizes do not match the bundle");
}

/// Blockwise tensor product (xi (x) xi')_x = xi_x (x) xi'_x.
inline BundleSection tensor(const BundleSection& a, const BundleSection& b) {
  if (a.blocks.size() != b.blocks.size())
    throw std::invalid_argument("tensor: sections live over different unit spaces");
  BundleSection out;
  for (std::size_t x = 0; x < a.blocks.size(); ++x) out.blocks.push_back(kron(a[x], b[x]));
  return out;
}

}  // namespace gfs

#endif  // GFS_BUNDLE_HPP

#ifndef GFS_RANDOM_HPP
#define GFS_RANDOM_HPP

// Seeded generators for fixtures and sampling. Everything is driven by one
// std::mt19937_64 so identical seeds give identical draws on a platform.

#include "gfs/linalg.hpp"

#include <cstdint>
#include <random>

namespace gfs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  CMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }
  CVector gaussian_vector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
  }
  HermitianMatrix hermitian(Eigen::Index n) {
    const CMatrix g = gaussian(n, n);
    return HermitianMatrix(g + g.adjoint());
  }

  /// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
  /// diag(R) moved into Q.
  CMatrix unitary(Eigen::Index n) {
    if (n == 0) return CMatrix(0, 0);
    const CMatrix g = gaussian(n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mag = std::abs(r(k, k));
      if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gfs

#endif  // GFS_RANDOM_HPP

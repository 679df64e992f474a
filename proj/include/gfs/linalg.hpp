#ifndef GFS_LINALG_HPP
#define GFS_LINALG_HPP

// Dense complex linear algebra used throughout the library: Hermitian
// storage, a deterministic cyclic Jacobi eigensolver, PSD projection and
// operator norms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gfs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Largest order accepted by hermitian_eigen.
inline constexpr std::size_t kMaxEigenOrder = 512;

inline bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

/// Square complex matrix with entries(i,j) == conj(entries(j,i)).
///
/// Construction averages the input with its conjugate transpose, so the
/// stored matrix is exactly Hermitian whatever rounding the caller left in.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const CMatrix& m) {
    if (m.rows() != m.cols())
      throw std::invalid_argument("HermitianMatrix: matrix is not square");
    if (!all_finite(m))
      throw std::invalid_argument("HermitianMatrix: non-finite entry");
    m_ = CMatrix(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m_(j, j) = Complex(m(j, j).real(), 0.0);
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        m_(i, j) = v;
        m_(j, i) = std::conj(v);
      }
    }
  }

  static HermitianMatrix identity(std::size_t n) {
    return HermitianMatrix(CMatrix::Identity(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n)));
  }

  std::size_t order() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, column k pairs with values(k)
};

struct JacobiOptions {
  int max_sweeps = 100;
  double relative_off_tolerance = 1e-15;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Rotations are applied in the fixed order (0,1), (0,2), ..., (n-2,n-1)
/// each sweep, so the result is reproducible bit for bit on one platform.
/// Each rotation first removes the phase of the pivot entry and then applies
/// the classical real Jacobi rotation.
inline EigenDecomposition hermitian_eigen(const HermitianMatrix& h,
                                          const JacobiOptions& opt = {}) {
  const auto n = static_cast<Eigen::Index>(h.order());
  if (h.order() > kMaxEigenOrder)
    throw std::invalid_argument("hermitian_eigen: order exceeds 512");
  CMatrix a = h.matrix();
  CMatrix v = CMatrix::Identity(n, n);

  const double scale = a.norm();
  const double threshold = opt.relative_off_tolerance * (scale > 0.0 ? scale : 1.0);

  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= threshold) break;

    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {  // a <- a U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // a <- U^* a
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {  // v <- v U
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

inline double min_eigenvalue(const HermitianMatrix& h) {
  if (h.order() == 0) return 0.0;
  return hermitian_eigen(h).values(0);
}

inline double max_eigenvalue(const HermitianMatrix& h) {
  if (h.order() == 0) return 0.0;
  const auto e = hermitian_eigen(h);
  return e.values(e.values.size() - 1);
}

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to 0.
inline HermitianMatrix psd_project(const HermitianMatrix& h) {
  if (h.order() == 0) return h;
  const auto e = hermitian_eigen(h);
  const RVector clipped = e.values.cwiseMax(0.0);
  return HermitianMatrix(e.vectors * clipped.cast<Complex>().asDiagonal() *
                         e.vectors.adjoint());
}

/// Largest singular value.
inline double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix gram = m.rows() >= m.cols() ? CMatrix(m.adjoint() * m)
                                            : CMatrix(m * m.adjoint());
  return std::sqrt(std::max(0.0, max_eigenvalue(HermitianMatrix(gram))));
}

/// M^{1/2} for PSD M, via the spectral decomposition with clipping.
inline CMatrix psd_sqrt(const HermitianMatrix& h) {
  const auto e = hermitian_eigen(h);
  const RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

/// Kronecker product a (x) b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace gfs

#endif  // GFS_LINALG_HPP

#ifndef GFS_ERRORS_HPP
#define GFS_ERRORS_HPP

// Error taxonomy:
//   std::invalid_argument   malformed input (shape, size, unknown id)
//   UnsupportedGroupoid     groupoid class without a computable dual
//   std::domain_error       a mathematical hypothesis fails (quasi-invariance,
//                           absolute continuity, mutual singularity, ...)
//   ConvergenceError        an iterative solver hit its cap

#include <stdexcept>
#include <string>

namespace gfs {

class UnsupportedGroupoid : public std::invalid_argument {
 public:
  explicit UnsupportedGroupoid(const std::string& what)
      : std::invalid_argument("unsupported groupoid class: " + what) {}
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gfs

#endif  // GFS_ERRORS_HPP

#ifndef STYLECAP_COMMON_HPP_
#define STYLECAP_COMMON_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace stylecap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised when filtering leaves an image with zero usable regions.
struct EmptySceneError : std::runtime_error {
  explicit EmptySceneError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a prior or lexicon lookup misses an attribute.
struct UnknownAttributeError : std::runtime_error {
  explicit UnknownAttributeError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when training produces a non-finite loss or gradient.
struct NumericalDivergenceError : std::runtime_error {
  explicit NumericalDivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when no hypothesis can finish in an accepting automaton state.
struct ConstraintUnsatisfiableError : std::runtime_error {
  explicit ConstraintUnsatisfiableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylecap

#endif  // STYLECAP_COMMON_HPP_

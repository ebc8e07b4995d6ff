#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace drkit {

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(Eigen::Index expected, Eigen::Index actual,
                    const std::string& where)
      : Error(where + ": dimension mismatch (expected " +
              std::to_string(expected) + ", got " + std::to_string(actual) +
              ")"),
        expected_(expected),
        actual_(actual) {}

  Eigen::Index expected() const { return expected_; }
  Eigen::Index actual() const { return actual_; }

 private:
  Eigen::Index expected_;
  Eigen::Index actual_;
};

class NonFiniteValue : public Error {
 public:
  NonFiniteValue(std::size_t iteration, const std::string& where)
      : Error(where + ": non-finite value at iteration " +
              std::to_string(iteration)),
        iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(std::size_t index)
      : Error("orthonormalize: vector " + std::to_string(index) +
              " is linearly dependent on its predecessors"),
        index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// An argument violates an operation's documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when the iteration stalls above tolerance; carries the last step
/// vector, which estimates the infimal displacement vector.
class PossiblyInconsistent : public Error {
 public:
  PossiblyInconsistent(Eigen::VectorXd v_estimate, double step_norm)
      : Error("find_fixed_point: step norm stagnates at " +
              format_real(step_norm) + "; problem possibly inconsistent"),
        v_estimate_(std::move(v_estimate)),
        step_norm_(step_norm) {}

  const Eigen::VectorXd& v_estimate() const { return v_estimate_; }
  double step_norm() const { return step_norm_; }

 private:
  Eigen::VectorXd v_estimate_;
  double step_norm_;
};

}  // namespace drkit

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfk {

// Stable numeric codes; they are mirrored one-to-one by gfk_status in gfk.h.
enum class ErrorCode : int {
  invalid_argument = 1,
  parse = 2,
  range = 3,
  degenerate_weights = 4,
  non_finite_walker = 5,
  too_few_particles = 6,
  grid_not_converged = 7,
  regularization_failed = 8,
  io = 9,
  division_by_zero = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorCode::range, what) {}
};

// Raised when the importance weights collapse onto a handful of trajectories.
class DegenerateWeights : public Error {
 public:
  DegenerateWeights(double effective_sample_size, double raw_mean, const std::string& what)
      : Error(ErrorCode::degenerate_weights, what),
        effective_sample_size_(effective_sample_size),
        raw_mean_(raw_mean) {}
  double effective_sample_size() const noexcept { return effective_sample_size_; }
  // The ratio estimate that would have been reported; diagnostic only.
  double raw_mean() const noexcept { return raw_mean_; }

 private:
  double effective_sample_size_;
  double raw_mean_;
};

class NonFiniteWalker : public Error {
 public:
  explicit NonFiniteWalker(const std::string& what) : Error(ErrorCode::non_finite_walker, what) {}
};

class TooFewParticles : public Error {
 public:
  explicit TooFewParticles(const std::string& what) : Error(ErrorCode::too_few_particles, what) {}
};

class GridNotConverged : public Error {
 public:
  explicit GridNotConverged(const std::string& what) : Error(ErrorCode::grid_not_converged, what) {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error(ErrorCode::division_by_zero, what) {}
};

}  // namespace gfk

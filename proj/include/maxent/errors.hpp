#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Raised when an operation is asked to maximize over an empty index range
// (e.g. C_k on the circle, where no 1 <= k <= d-1 exists).
class EmptyRange : public Error {
 public:
  using Error::Error;
};

class BranchFailure : public Error {
 public:
  BranchFailure(std::size_t class_index, const std::string& what)
      : Error(what), class_index_(class_index) {}
  std::size_t class_index() const noexcept { return class_index_; }

 private:
  std::size_t class_index_;
};

class AssemblyError : public Error {
 public:
  AssemblyError(std::size_t box, std::size_t sample, const std::string& what)
      : Error(what), box_(box), sample_(sample) {}
  std::size_t box() const noexcept { return box_; }
  std::size_t sample() const noexcept { return sample_; }

 private:
  std::size_t box_;
  std::size_t sample_;
};

class DegenerateDerivative : public Error {
 public:
  using Error::Error;
};

class SelectionFailure : public Error {
 public:
  SelectionFailure(double best_value, int best_power, const std::string& what)
      : Error(what), best_value_(best_value), best_power_(best_power) {}
  double best_value() const noexcept { return best_value_; }
  int best_power() const noexcept { return best_power_; }

 private:
  double best_value_;
  int best_power_;
};

class AmbiguityError : public Error {
 public:
  AmbiguityError(int time, int step, const std::string& what)
      : Error(what), time_(time), step_(step) {}
  int time() const noexcept { return time_; }
  int step() const noexcept { return step_; }

 private:
  int time_;
  int step_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxent

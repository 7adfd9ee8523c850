#pragma once

#include <stdexcept>
#include <string>

namespace trp {

// Invalid input: bad parameters, violated preconditions, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The integrator could not advance (step-size underflow or step budget
// exhausted). Carries the dimensionless time at which it gave up.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double tau)
      : std::runtime_error(what), tau_(tau) {}

  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

// find_minimum could not locate an interior minimum in the given bracket.
class NoInteriorMinimum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trp

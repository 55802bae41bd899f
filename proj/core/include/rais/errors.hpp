#pragma once

#include <stdexcept>
#include <string>

namespace rais {

// A non-finite value showed up where the math requires finite input.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// An importance weight overflowed when leaving log space.
class WeightOverflowError : public std::runtime_error {
 public:
  WeightOverflowError(const std::string& what, double log_weight)
      : std::runtime_error(what), log_weight_(log_weight) {}
  double log_weight() const { return log_weight_; }

 private:
  double log_weight_;
};

// Every mixture member assigns zero density to a sample.
class InvalidSupportError : public std::runtime_error {
 public:
  explicit InvalidSupportError(const std::string& what) : std::runtime_error(what) {}
};

// An action outside the discrete support was scored or executed.
class InvalidActionError : public std::invalid_argument {
 public:
  explicit InvalidActionError(const std::string& what) : std::invalid_argument(what) {}
};

// A brute-force oracle was asked to enumerate more than it can afford.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// The optimal proposal is undefined because no failure is reachable.
class UndefinedProposalError : public std::runtime_error {
 public:
  explicit UndefinedProposalError(const std::string& what) : std::runtime_error(what) {}
};

// A config file references an unknown key or an invalid value.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rais

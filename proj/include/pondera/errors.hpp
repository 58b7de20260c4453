#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pondera {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One or more PhysicalParams fields out of range.
class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// The linear-response matrix L(ω) is numerically singular at this frequency.
class DegenerateFrequency : public Error {
 public:
  DegenerateFrequency(double omega, double condition_number);
  double omega() const { return omega_; }
  double condition_number() const { return condition_number_; }

 private:
  double omega_;
  double condition_number_;
};

// Internal consistency check failed while assembling output correlations
// (commutator structure, imaginary residue, block symmetry).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Covariance blocks do not have the structure a routine relies on.
class BlockStructureError : public Error {
 public:
  using Error::Error;
};

// A fidelity argument matrix is not positive definite.
class UnphysicalChannel : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace pondera

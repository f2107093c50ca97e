#pragma once

#include <stdexcept>
#include <string>

namespace kforest {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root-finding problem has no solution on the admissible branch.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested combinatorial object does not exist (e.g. k disjoint
/// spanning trees in a graph that is too sparse).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A randomized sampler exhausted its retry budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested accuracy is beyond what double precision can deliver.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input too large for the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (graph files, witness JSON).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kforest

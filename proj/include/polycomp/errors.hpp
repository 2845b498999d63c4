#pragma once

#include <stdexcept>

namespace polycomp {

// Position, length, or class index outside the valid range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A requested length class is not present in the readout.
class MissingClass : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Cumulative weights that no binary string can produce.
class InconsistentReadout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidComplement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (bad t, bad rank, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent CodebookSpec, or a string of the wrong length for it.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive work requested beyond the configured enumeration cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidErrorSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A skew replacement that does not strictly lower the weight of the entry.
class InvalidSkew : public InvalidErrorSpec {
 public:
  using InvalidErrorSpec::InvalidErrorSpec;
};

}  // namespace polycomp

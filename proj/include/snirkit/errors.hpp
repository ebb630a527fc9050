#pragma once

// Error hierarchy used across the library. Every failure that a caller can
// reasonably act on is thrown as a subclass of SnirError; the CLI maps these
// to exit code 2 with the message on stderr.

#include <stdexcept>
#include <string>

namespace snirkit {

class SnirError : public std::runtime_error {
 public:
  explicit SnirError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (bad token, wrong column count, unknown label, ...).
// Messages carry a 1-based line number where applicable.
class ParseError : public SnirError {
 public:
  using SnirError::SnirError;
};

// Structural problems with a graph: fewer than two nodes, self-loop fed to a
// routine that forbids them, index out of range.
class GraphError : public SnirError {
 public:
  using SnirError::SnirError;
};

// Invalid configuration values (gamma outside (0,1], K < 1, reps < 1, ...).
class ConfigError : public SnirError {
 public:
  using SnirError::SnirError;
};

// A least-squares design is numerically singular. `index`, when >= 0, names
// the candidate column that triggered the failure.
class SingularDesignError : public SnirError {
 public:
  explicit SingularDesignError(const std::string& msg, int index = -1)
      : SnirError(msg), index(index) {}
  int index;
};

// Fit cannot proceed: empty candidate set, no complement rows, zero total
// sum of squares, or a degenerate response vector.
class DegenerateFitError : public SnirError {
 public:
  using SnirError::SnirError;
};

// Synthetic-data generation drew an influential block whose spectral radius
// makes the linear system non-contractive even after the retry budget.
class UnstableTruthError : public SnirError {
 public:
  using SnirError::SnirError;
};

}  // namespace snirkit

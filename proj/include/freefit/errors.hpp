#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace freefit {

/// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values: out-of-range counts, mismatched lengths, bad spectra.
class domain_error : public error {
 public:
  using error::error;
};

/// Requested object would exceed the desk-scale capacity guards.
class capacity_error : public error {
 public:
  using error::error;
};

/// A formula hit a vanishing denominator (or an infinite potential would be needed).
class singularity_error : public error {
 public:
  using error::error;
};

/// Partial trace requested over a partition the sign bookkeeping does not cover.
class unsupported_partition_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Iterative scheme ran out of iterations; carries the residual history.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, std::vector<double> residuals)
      : error(what), residual_trace(std::move(residuals)) {}
  std::vector<double> residual_trace;
};

/// A free ground state came out degenerate where a closed shell is required.
class degeneracy_error : public error {
 public:
  using error::error;
};

/// Malformed input file contents.
class parse_error : public error {
 public:
  using error::error;
};

/// Filesystem-level failure (unreadable/unwritable path).
class io_error : public error {
 public:
  using error::error;
};

}  // namespace freefit

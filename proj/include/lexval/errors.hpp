// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction or invariant violation (bad scale, bad rule base, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation mixed values from two different scales.
class ScaleMismatchError : public Error {
 public:
  using Error::Error;
};

/// A valuation would exceed the configured maximum length.
class LengthCapError : public Error {
 public:
  LengthCapError(std::size_t limit, std::size_t attempted)
      : Error("valuation length cap exceeded: " + std::to_string(attempted) +
              " > " + std::to_string(limit)),
        limit(limit),
        attempted(attempted) {}

  std::size_t limit;
  std::size_t attempted;
};

/// Enumeration budget does not fit in a 64-bit counter.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Law checking would exceed the configured predicate-evaluation ceiling.
class CostCeilingError : public Error {
 public:
  using Error::Error;
};

/// A residual-implication search hit its length bound without settling.
/// Raised instead of silently truncating the supremum.
class UnattainedSupError : public Error {
 public:
  using Error::Error;
};

/// Inference failed; message carries the offending derivation chain.
class EngineError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexval

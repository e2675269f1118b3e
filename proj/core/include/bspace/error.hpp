#pragma once

#include <stdexcept>
#include <string>

namespace bspace {

/// A point or boundary node lies outside the domain its kernel, extension or
/// measure is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input: wrong shape, non-Hermitian matrix, duplicate points,
/// out-of-range parameter.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a meaningful answer (indefinite
/// Gram, pruning removed every point, non-convergent iteration).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bspace

#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "bspace/types.hpp"

namespace bspace {

struct RealScalar {
  double value;
  bool operator==(const RealScalar&) const = default;
};

struct ComplexScalar {
  Complex value;
  bool operator==(const ComplexScalar&) const = default;
};

/// Identifier into a finite ground set.
struct Index {
  std::size_t value;
  bool operator==(const Index&) const = default;
};

/// A point of a kernel domain or of a boundary.
using Point = std::variant<RealScalar, ComplexScalar, Index>;

inline Point real_point(double x) { return RealScalar{x}; }
inline Point complex_point(Complex z) { return ComplexScalar{z}; }
inline Point index_point(std::size_t i) { return Index{i}; }

/// Real coordinate; throws DomainError for complex or index points.
double as_real(const Point& p);
/// Complex coordinate; real points are embedded in the complex plane.
Complex as_complex(const Point& p);
/// Ground-set index; throws DomainError for scalar points.
std::size_t as_index(const Point& p);

std::string to_string(const Point& p);

}  // namespace bspace

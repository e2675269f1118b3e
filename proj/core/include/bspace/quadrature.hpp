#pragma once

#include <cstddef>
#include <vector>

namespace bspace {

/// One-dimensional node/weight rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the standard normal density:
/// sum_k w_k f(x_k) ~ int f(x) e^{-x^2/2} dx / sqrt(2 pi), weights summing to 1.
/// Exact for polynomials of degree < 2n. Nodes come from the Golub-Welsch
/// eigenvalues refined by Newton steps on the orthonormal recurrence, and
/// weights from the recurrence, so tail weights keep full relative accuracy.
/// Requires 1 <= n <= 400.
QuadratureRule gauss_hermite(std::size_t n);

/// Gauss-Legendre rule on [-1, 1] with weights summing to 2.
QuadratureRule gauss_legendre(std::size_t n);

}  // namespace bspace

#include "bspace/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "bspace/error.hpp"
#include "bspace/types.hpp"

namespace bspace {

namespace {

// Orthonormal Hermite polynomials for the weight e^{-t^2}:
// p_{k+1} = t sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}, p_0 = pi^{-1/4}.
// Returns {p_n(t), p_{n-1}(t)}.
std::pair<double, double> hermite_orthonormal(std::size_t n, double t) {
  double prev = 0.0;
  double cur = 1.0 / std::pow(kPi, 0.25);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double next = t * std::sqrt(2.0 / (kk + 1.0)) * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_hermite(std::size_t n) {
  if (n < 1 || n > 400) throw ValidationError("Gauss-Hermite order must lie in [1, 400], got " + std::to_string(n));

  // Golub-Welsch for the physicists' weight e^{-t^2}: off-diagonal sqrt(k/2).
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 1; k < m; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Gauss-Hermite: eigensolver failed");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    for (int iter = 0; iter < 8; ++iter) {
      const auto [pn, pn1] = hermite_orthonormal(n, t);
      const double deriv = std::sqrt(2.0 * dn) * pn1;
      const double step = pn / deriv;
      t -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    const auto [pn, pn1] = hermite_orthonormal(n, t);
    (void)pn;
    const double w = 1.0 / (dn * pn1 * pn1);  // for e^{-t^2}, sums to sqrt(pi)
    // x = sqrt(2) t maps e^{-t^2} onto the standard normal density.
    rule.nodes[i] = std::sqrt(2.0) * t;
    rule.weights[i] = w / std::sqrt(kPi);
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n < 1 || n > 4096) throw ValidationError("Gauss-Legendre order must lie in [1, 4096], got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double deriv = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      deriv = dn * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    // Nodes ascending.
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
  }
  return rule;
}

}  // namespace bspace

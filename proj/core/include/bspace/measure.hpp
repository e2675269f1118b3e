#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bspace/kernel.hpp"
#include "bspace/point.hpp"
#include "bspace/trig_poly.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// n equispaced nodes k/n on the circle [0, 1) with equal weights.
struct PeriodicUniform {
  std::size_t nodes;
};

/// Tensor Gauss-Hermite rule for the Gaussian (1/2pi) e^{-|b|^2/2} dA on C,
/// n nodes per axis.
struct GaussHermitePlane {
  std::size_t nodes_per_axis;
};

/// Gauss-Legendre rule for uniform measure on the band [-1/2, 1/2].
struct GaussLegendreBand {
  std::size_t nodes;
};

/// Depth-D refinement of the 1/4-Cantor measure: 2^D equal atoms at
/// sum_{k <= D} d_k 4^{-k}, d_k in {0, 2}.
struct CantorIFS {
  int depth;
};

/// The 1/4-Cantor measure itself. Exponentials and trigonometric
/// polynomials integrate exactly through the infinite-product Fourier
/// transform; other integrands fall back to a CantorIFS rule of
/// `fallback_depth`.
struct CantorExact {
  int fallback_depth = 20;
};

/// Finite atomic measure with strictly positive weights on one boundary.
/// Atoms-domain nodes are Index points.
struct Atomic {
  std::vector<Point> nodes;
  std::vector<double> weights;
  BoundaryDomain domain = BoundaryDomain::Atoms;
};

/// A boundary measure realized as an integrator, times a scale factor alpha.
class QuadMeasure {
 public:
  using Variant =
      std::variant<PeriodicUniform, GaussHermitePlane, GaussLegendreBand, CantorIFS, CantorExact, Atomic>;

  static QuadMeasure periodic_uniform(std::size_t n);
  static QuadMeasure gauss_hermite_plane(std::size_t n_per_axis);
  static QuadMeasure gauss_legendre_band(std::size_t n);
  static QuadMeasure cantor_ifs(int depth);
  static QuadMeasure cantor_exact(int fallback_depth = 20);
  /// Atoms on the set {0, ..., weights.size() - 1}.
  static QuadMeasure atomic(std::vector<double> weights);
  /// Atoms at arbitrary nodes of one boundary; throws DomainError when a node
  /// does not belong to `domain`.
  static QuadMeasure atomic(std::vector<Point> nodes, std::vector<double> weights, BoundaryDomain domain);
  /// Unit point mass at x on the circle.
  static QuadMeasure point_mass(double x);

  const Variant& variant() const { return kind_; }
  double scale() const { return scale_; }
  std::string describe() const;
  BoundaryDomain domain() const;

  /// True only for CantorExact: trigonometric polynomials integrate through
  /// the Fourier transform, and the node rule below is the IFS fallback.
  bool is_spectral() const;
  /// Node count of the quadrature used by integrate().
  std::size_t node_count() const;
  Point node(std::size_t k) const;
  /// Weight of node k, including the scale factor.
  double weight(std::size_t k) const;
  double total_mass() const;

  /// The same integrator with every weight multiplied by alpha.
  QuadMeasure scaled(double alpha) const;

 private:
  QuadMeasure(Variant v, double scale);

  Variant kind_;
  double scale_ = 1.0;
  // Tensor or band rule cached at construction.
  std::shared_ptr<const std::vector<double>> rule_nodes_;
  std::shared_ptr<const std::vector<double>> rule_weights_;
};

using BoundaryIntegrand = std::function<Complex(const Point&)>;

/// sum_k w_k f(b_k) with deterministic pairwise summation.
Complex integrate(const QuadMeasure& measure, const BoundaryIntegrand& f);

/// Integral of a trigonometric polynomial on the circle. Exact (up to
/// rounding) for every circle measure: PeriodicUniform(n) keeps the
/// frequencies divisible by n, Cantor measures use their Fourier transform.
/// Throws DomainError for measures off the circle.
Complex integrate_trig(const QuadMeasure& measure, const TrigPoly& p);

/// mu^(t) = int e^{i 2 pi t x} dmu(x) for circle measures.
Complex fourier_transform(const QuadMeasure& measure, double t);

/// Fourier transform of the 1/4-Cantor measure,
/// prod_{j >= 0} (1 + e^{i pi t 4^{-j}}) / 2, truncated once the remaining
/// factors perturb the product by less than 1e-16 relative.
Complex cantor4_fourier(double t);

/// Fourier transform of the depth-D Cantor refinement (finite product).
Complex cantor4_fourier_depth(double t, int depth);

inline constexpr int kMaxCantorDepth = 26;

/// CantorIFS(depth); throws ValidationError unless 1 <= depth <= 26.
QuadMeasure cantor_ifs_nodes(int depth);

/// Total map from the atoms of B2 onto the atoms {0, ..., target_size-1} of B1.
struct MeasurableMap {
  std::vector<std::size_t> image;
  std::size_t target_size = 0;

  std::size_t operator()(std::size_t b2) const { return image.at(b2); }
};

/// mu2 o phi^{-1}: masses summed over the fibers of phi. The result lives on
/// index atoms {0, ..., target_size-1}. Throws ValidationError when mu2 is
/// not atomic over index atoms or phi is not total.
QuadMeasure pushforward(const QuadMeasure& mu2, const MeasurableMap& phi);

/// All weights multiplied by alpha; throws ValidationError for alpha <= 0.
QuadMeasure scale_measure(const QuadMeasure& measure, double alpha);

}  // namespace bspace

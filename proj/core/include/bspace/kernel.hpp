#pragma once

#include <optional>
#include <string>
#include <variant>

#include "bspace/point.hpp"
#include "bspace/trig_poly.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// K(z, w) = 1 / (1 - conj(z) w) on the open unit disk.
struct Szego {};

/// K(z, w) = exp(conj(z) w / 2 - (|z|^2 + |w|^2) / 4) on the whole plane.
struct Bargmann {};

/// K(z, w) = prod_{l < levels} (1 + (conj(z) w)^{4^l}) on the open unit disk.
struct Cantor4 {
  int levels = 6;
};

/// K(s, t) = sinc(s - t) on the real line; reproducing kernel of the
/// functions band-limited to [-1/2, 1/2].
struct Sinc {};

/// Matrix-backed kernel on the ground set {0, ..., n-1}.
struct ExplicitGram {
  CMatrix gram;
};

/// K(i, j) = sum_k weights[k] features(i, k) conj(features(j, k)) on the
/// ground set {0, ..., rows-1}. Default weights are all ones.
struct ExplicitFeature {
  CMatrix features;
  RVector weights;
};

/// A Hermitian positive definite kernel from the built-in zoo.
class Kernel {
 public:
  using Variant = std::variant<Szego, Bargmann, Cantor4, Sinc, ExplicitGram, ExplicitFeature>;

  static Kernel szego() { return Kernel(Szego{}); }
  static Kernel bargmann() { return Kernel(Bargmann{}); }
  static Kernel cantor4(int levels);
  static Kernel sinc() { return Kernel(Sinc{}); }
  /// Throws ValidationError if the matrix is not square and Hermitian.
  static Kernel explicit_gram(CMatrix gram);
  static Kernel explicit_feature(CMatrix features);
  static Kernel explicit_feature(CMatrix features, RVector weights);

  const Variant& variant() const { return kernel_; }
  std::string name() const;

  /// True when K is real-valued on its whole domain.
  bool real_valued() const;

  /// Throws DomainError if p is not in the kernel's domain.
  void check_domain(const Point& p) const;
  bool in_domain(const Point& p) const;

  Complex operator()(const Point& s, const Point& t) const;

 private:
  explicit Kernel(Variant v) : kernel_(std::move(v)) {}
  Variant kernel_;
};

Complex eval_kernel(const Kernel& kernel, const Point& s, const Point& t);

/// ||K(s, .) - K(t, .)|| in the RKHS, with rounding below zero clamped.
double dist_k(const Kernel& kernel, const Point& s, const Point& t);

/// Cantor kernel through its product form prod_{l < levels} (1 + u^{4^l}).
Complex cantor4_product(Complex u, int levels);
/// Cantor kernel through its power-sum form sum over Lambda4 below 4^levels of u^lambda.
Complex cantor4_power_sum(Complex u, int levels);

enum class BoundaryDomain {
  Circle,  ///< x in [0, 1), standing for e^{i 2 pi x}
  Plane,   ///< the complex plane
  Band,    ///< frequencies xi in [-1/2, 1/2]
  Atoms,   ///< the finite set {0, ..., atom_count - 1}
};

std::string to_string(BoundaryDomain d);

/// A kernel together with a boundary B and an evaluation rule K^B(s, b).
///
/// Canonical rules for the zoo:
///   Szego      K^B(z, x)  = 1 / (1 - conj(z) e^{i 2 pi x})         on the circle
///   Cantor4    K^B(z, x)  = prod_l (1 + (conj(z) e^{i 2 pi x})^{4^l}) on the circle
///   Bargmann   K^B(z, b)  = exp(conj(z) b / 2 - |z|^2 / 4)           on the plane
///   Sinc       K^B(t, xi) = e^{-i 2 pi t xi}                         on the band
///   Explicit*  K^B(i, k)  = table(i, k)                              on atoms
///
/// The Bargmann rule drops the factor e^{-|b|^2/4}; the matching measure
/// carries the Gaussian density (1/2pi) e^{-|b|^2/2} dA instead.
class BoundaryExtension {
 public:
  static BoundaryExtension canonical(const Kernel& kernel);
  /// Atomic extension with K^B(i, k) = table(i, k). The table needs one row
  /// per ground point of an explicit kernel.
  static BoundaryExtension from_atom_table(const Kernel& kernel, CMatrix table);

  const Kernel& kernel() const { return kernel_; }
  BoundaryDomain domain() const { return domain_; }
  std::size_t atom_count() const { return static_cast<std::size_t>(table_.cols()); }
  const CMatrix& atom_table() const { return table_; }

  bool contains(const Point& b) const;
  void check_boundary(const Point& b) const;

  /// K^B(s, b); throws DomainError on either argument.
  Complex operator()(const Point& s, const Point& b) const;

  /// Fourier expansion of K^B(s, .) when it is a trigonometric polynomial
  /// (Cantor4 only); nullopt otherwise.
  std::optional<TrigPoly> spectrum(const Point& s) const;

 private:
  BoundaryExtension(Kernel k, BoundaryDomain d, CMatrix table)
      : kernel_(std::move(k)), domain_(d), table_(std::move(table)) {}

  Kernel kernel_;
  BoundaryDomain domain_;
  CMatrix table_;
};

Complex eval_boundary(const BoundaryExtension& ext, const Point& s, const Point& b);

}  // namespace bspace

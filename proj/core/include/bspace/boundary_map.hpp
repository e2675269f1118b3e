#pragma once

#include <vector>

#include "bspace/boundary_function.hpp"
#include "bspace/kernel.hpp"
#include "bspace/measure.hpp"
#include "bspace/parallel.hpp"
#include "bspace/section.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// Default tolerances.
struct Tolerances {
  double membership = 1e-8;     ///< quadrature-limited identities
  double algebraic = 1e-10;     ///< exact algebraic identities
  double pencil_prune = 1e-12;  ///< relative pivot threshold before the pencil solve
};

/// N_ij = int conj(K^B(s_i, b)) K^B(s_j, b) dmu(b) over a section.
struct BoundaryMatrix {
  Section section;
  QuadMeasure measure;
  CMatrix entries;
};

/// K^B(s_i, .) for every section point, with Fourier expansions attached
/// when the extension has them.
std::vector<BoundaryFunction> boundary_columns(const BoundaryExtension& ext, const Section& section);

/// Throws DomainError when the measure's nodes live on another boundary.
BoundaryMatrix boundary_gram(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                             const ExecutionOptions& exec = {});

struct MembershipReport {
  double defect = 0.0;             ///< max_ij |N_ij - conj(G_ij)|
  double carleson_constant = 0.0;  ///< largest eigenvalue of the (N, conj G) pencil
  double tolerance = 0.0;
  bool pass = false;
};

/// Finite-section test of the factorization of K through (B, mu).
/// N is compared with conj(G): the canonical extensions integrate to
/// K(s_2, s_1); for real kernels the two coincide.
MembershipReport membership_defect(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                                   double tol = Tolerances{}.membership, const ExecutionOptions& exec = {});
MembershipReport membership_defect(const BoundaryMatrix& n, double tol = Tolerances{}.membership);

/// f~ = sum_j c_j K^B(s_j, .).
BoundaryFunction boundary_transform(const RkhsElement& f, const BoundaryExtension& ext);

/// | ||f||_H^2 - ||f~||_{L^2(mu)}^2 |, the second term by direct quadrature.
double isometry_defect(const RkhsElement& f, const BoundaryExtension& ext, const QuadMeasure& measure);

/// (W* F)(s) = int conj(K^B(s, b)) F(b) dmu(b).
Complex adjoint_apply(const BoundaryFunction& F, const BoundaryExtension& ext, const QuadMeasure& measure,
                      const Point& s);

/// Finite-section estimate of the least Carleson constant: the supremum of
/// ||f~||^2 / ||f||^2 over the section span, i.e. the top eigenvalue of the
/// pencil (N, conj G) after pivoted pruning of the Gram. A lower bound for
/// the constant over the whole RKHS.
struct CarlesonEstimate {
  double constant = 0.0;
  RVector spectrum;                   ///< ascending pencil eigenvalues
  std::vector<std::size_t> retained;  ///< section indices kept by pruning
};

CarlesonEstimate carleson_constant(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                                   double prune_tol = Tolerances{}.pencil_prune, const ExecutionOptions& exec = {});
CarlesonEstimate carleson_constant(const BoundaryMatrix& n, double prune_tol = Tolerances{}.pencil_prune);

/// Least-squares projection of F onto span{K^B(s_j, .)} in L^2(mu).
struct Projection {
  double residual = 0.0;     ///< ||F - sum_j c_j K^B(s_j, .)||
  double target_norm = 0.0;  ///< ||F||
  CVector coeffs;
  bool regularized = false;          ///< some columns were dropped as numerically dependent
  std::vector<std::size_t> dropped;  ///< section indices left out of the fit (coefficient 0)
};

Projection onto_residual(const BoundaryFunction& F, const BoundaryExtension& ext, const QuadMeasure& measure,
                         const Section& section, const ExecutionOptions& exec = {});

struct MorphismVerdict {
  bool pass = false;
  double max_mass_error = 0.0;
  double tolerance = 0.0;
};

/// mu2 o phi^{-1} = mu1 atom by atom. The sigma-algebra of B2 is taken to be
/// the preimage partition of B1's atoms, so no separate sigma-algebra check
/// is needed. Throws ValidationError when phi is not total.
MorphismVerdict morphism_check(const QuadMeasure& mu1, const QuadMeasure& mu2, const MeasurableMap& phi,
                               double tol = 1e-12);

/// K^{B2}(s, b) = K^{B1}(s, phi(b)) for an atomic extension over B1.
BoundaryExtension pullback_extension(const BoundaryExtension& ext1, const MeasurableMap& phi);

struct DiagramDefect {
  double commuting = 0.0;        ///< max over B2 atoms of |(W_{B1} f)(phi(b)) - (W_{B2} f)(b)|
  double w21_isometry = 0.0;     ///< | ||W_{B1} f o phi||^2_{mu2} - ||W_{B1} f||^2_{mu1} |
};

/// Checks W_{B2} = W_{21} W_{B1} on f, with W_{21} g = g o phi. Throws
/// ValidationError unless phi is a morphism and both (B_i, mu_i) factor K
/// on f's section.
DiagramDefect commuting_diagram_defect(const BoundaryExtension& ext1, const BoundaryExtension& ext2,
                                       const QuadMeasure& mu1, const QuadMeasure& mu2, const MeasurableMap& phi,
                                       const RkhsElement& f);

}  // namespace bspace

#pragma once

#include <optional>
#include <vector>

#include "bspace/measure.hpp"
#include "bspace/parallel.hpp"
#include "bspace/point.hpp"
#include "bspace/trig_poly.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// A function on a boundary B, given pointwise, as a trigonometric
/// polynomial on the circle, or as raw values at the nodes of one measure.
class BoundaryFunction {
 public:
  explicit BoundaryFunction(BoundaryIntegrand f);
  explicit BoundaryFunction(TrigPoly p);
  /// Pointwise rule that also carries an exact expansion.
  BoundaryFunction(BoundaryIntegrand f, std::optional<TrigPoly> spectrum);

  /// Values at the nodes of `measure`, in node order. Such a function can
  /// only be integrated against that measure (same node count).
  static BoundaryFunction from_samples(CVector values);

  /// e^{i 2 pi k x} on the circle.
  static BoundaryFunction exponential(std::int64_t k);
  static BoundaryFunction zero();

  /// Throws DomainError for sample-only functions.
  Complex operator()(const Point& b) const;
  const std::optional<TrigPoly>& spectrum() const { return spectrum_; }
  bool sample_only() const { return samples_.has_value(); }

  /// Values at the nodes of `measure`.
  CVector sample(const QuadMeasure& measure) const;

 private:
  BoundaryIntegrand eval_;
  std::optional<TrigPoly> spectrum_;
  std::optional<CVector> samples_;
};

/// int conj(u) v dmu. Exact through the Fourier transform when the measure
/// is spectral and both functions carry expansions; node quadrature otherwise.
Complex l2_inner(const QuadMeasure& measure, const BoundaryFunction& u, const BoundaryFunction& v);
double l2_norm_sq(const QuadMeasure& measure, const BoundaryFunction& u);

/// Matrix of int conj(u_i) u_j dmu, Hermitian by construction: the upper
/// triangle is accumulated and mirrored. Entries are computed independently,
/// so the result does not depend on the thread count.
CMatrix l2_gram(const QuadMeasure& measure, const std::vector<BoundaryFunction>& funcs,
                const ExecutionOptions& exec = {});

/// || target - sum_j c_j funcs[j] ||^2 in L^2(mu), by direct quadrature
/// (exact for spectral measures with expansions).
double l2_residual_sq(const QuadMeasure& measure, const BoundaryFunction& target,
                      const std::vector<BoundaryFunction>& funcs, const CVector& coeffs);

}  // namespace bspace

#pragma once

#include <memory>
#include <vector>

#include "bspace/kernel.hpp"
#include "bspace/point.hpp"
#include "bspace/types.hpp"

namespace bspace {

struct PdVerdict {
  bool pass = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  ///< -tol * max diagonal
  RVector eigenvalues;     ///< ascending
};

/// Passes iff the smallest eigenvalue is >= -tol * max diagonal.
/// Throws ValidationError for non-square or non-Hermitian input.
PdVerdict pd_check(const CMatrix& gram, double tol = 1e-10);

struct SectionOptions {
  double psd_tol = 1e-10;
  double separation_tol = 1e-12;  ///< minimum dist_K between distinct points
};

/// Finite point set with its Gram matrix G_ij = K(s_i, s_j): the
/// finite-resolution RKHS spanned by K(s_i, .).
class Section {
 public:
  const Kernel& kernel() const { return kernel_; }
  const std::vector<Point>& points() const { return points_; }
  const CMatrix& gram() const { return gram_; }
  std::size_t size() const { return points_.size(); }

  /// Sub-section on the given indices, in the given order.
  Section restricted(const std::vector<std::size_t>& idx) const;

  bool operator==(const Section& other) const;

 private:
  friend Section build_section(const Kernel&, std::vector<Point>, const SectionOptions&);
  Section(Kernel k, std::vector<Point> pts, CMatrix g)
      : kernel_(std::move(k)), points_(std::move(pts)), gram_(std::move(g)) {}

  Kernel kernel_;
  std::vector<Point> points_;
  CMatrix gram_;
};

/// Assembles and validates the Gram matrix. Throws DomainError for points
/// outside the kernel domain, ValidationError for points closer than
/// separation_tol in dist_K and NumericalError for a Gram that fails pd_check.
Section build_section(const Kernel& kernel, std::vector<Point> points,
                      const SectionOptions& options = {});

/// f = sum_j c_j K(s_j, .) over a shared section.
class RkhsElement {
 public:
  RkhsElement(std::shared_ptr<const Section> section, CVector coeffs);

  const Section& section() const { return *section_; }
  const std::shared_ptr<const Section>& section_ptr() const { return section_; }
  const CVector& coeffs() const { return coeffs_; }

 private:
  std::shared_ptr<const Section> section_;
  CVector coeffs_;
};

/// ||f||^2 = sum_ij c_i conj(c_j) G_ij. The second coefficient carries the
/// conjugate; under this slot the canonical boundary extensions are exact
/// isometries.
double h_norm_sq(const RkhsElement& f);

/// <f, g> = sum_ij c_i conj(d_j) G_ij; linear in f, so <f, K(t, .)> = f(t).
/// Throws ValidationError when f and g live on different sections.
Complex h_inner(const RkhsElement& f, const RkhsElement& g);

/// f(t) = sum_j c_j K(s_j, t).
Complex evaluate_element(const RkhsElement& f, const Point& t);

}  // namespace bspace

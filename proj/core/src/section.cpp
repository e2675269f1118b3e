#include "bspace/section.hpp"

#include <cmath>
#include <string>

#include "bspace/error.hpp"
#include "bspace/linalg.hpp"

namespace bspace {

PdVerdict pd_check(const CMatrix& gram, double tol) {
  if (!(tol > 0.0)) throw ValidationError("pd_check tolerance must be positive");
  require_hermitian(gram, 1e-12, "Gram matrix");
  PdVerdict v;
  v.eigenvalues = hermitian_eigenvalues(gram);
  v.min_eigenvalue = v.eigenvalues.size() ? v.eigenvalues(0) : 0.0;
  v.threshold = -tol * max_diagonal(gram);
  v.pass = v.min_eigenvalue >= v.threshold;
  return v;
}

Section build_section(const Kernel& kernel, std::vector<Point> points, const SectionOptions& options) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& p : points) kernel.check_domain(p);

  CMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = Complex(kernel(points[i], points[i]).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      gram(i, j) = kernel(points[i], points[j]);
      gram(j, i) = std::conj(gram(i, j));
    }
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sq = gram(i, i).real() + gram(j, j).real() - 2.0 * gram(i, j).real();
      const double dist = sq > 0.0 ? std::sqrt(sq) : 0.0;
      if (!(dist > options.separation_tol)) {
        throw ValidationError("points " + std::to_string(i) + " and " + std::to_string(j) + " (" +
                              to_string(points[i]) + ", " + to_string(points[j]) +
                              ") are indistinguishable in the kernel metric");
      }
    }
  }

  const PdVerdict verdict = pd_check(gram, options.psd_tol);
  if (!verdict.pass) {
    throw NumericalError("Gram matrix of " + kernel.name() + " is not positive semidefinite (min eigenvalue " +
                         std::to_string(verdict.min_eigenvalue) + ")");
  }
  return Section(kernel, std::move(points), std::move(gram));
}

Section Section::restricted(const std::vector<std::size_t>& idx) const {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (auto i : idx) {
    if (i >= points_.size()) throw ValidationError("section index out of range");
    pts.push_back(points_[i]);
  }
  return Section(kernel_, std::move(pts), submatrix(gram_, idx));
}

bool Section::operator==(const Section& other) const {
  return points_ == other.points_ && gram_ == other.gram_;
}

RkhsElement::RkhsElement(std::shared_ptr<const Section> section, CVector coeffs)
    : section_(std::move(section)), coeffs_(std::move(coeffs)) {
  if (!section_) throw ValidationError("RKHS element needs a section");
  if (static_cast<std::size_t>(coeffs_.size()) != section_->size()) {
    throw ValidationError("coefficient vector has " + std::to_string(coeffs_.size()) +
                          " entries for a section of " + std::to_string(section_->size()) + " points");
  }
}

namespace {

// sum_ij a_i conj(b_j) G_ij = a^T G conj(b)
Complex quadratic(const CVector& a, const CMatrix& g, const CVector& b) {
  return a.transpose() * (g * b.conjugate());
}

}  // namespace

double h_norm_sq(const RkhsElement& f) {
  return quadratic(f.coeffs(), f.section().gram(), f.coeffs()).real();
}

Complex h_inner(const RkhsElement& f, const RkhsElement& g) {
  if (f.section_ptr() != g.section_ptr() && !(f.section() == g.section())) {
    throw ValidationError("h_inner: elements live on different sections");
  }
  return quadratic(f.coeffs(), f.section().gram(), g.coeffs());
}

Complex evaluate_element(const RkhsElement& f, const Point& t) {
  const auto& pts = f.section().points();
  const auto& kernel = f.section().kernel();
  Complex acc{};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    acc += f.coeffs()(static_cast<Eigen::Index>(j)) * kernel(pts[j], t);
  }
  return acc;
}

}  // namespace bspace

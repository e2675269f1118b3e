#include "bspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bspace/error.hpp"

namespace bspace {

double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const CMatrix& a, double rel_tol, const char* what) {
  if (a.rows() != a.cols()) {
    throw ValidationError(std::string(what) + " must be square, got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()));
  }
  if (a.size() == 0) return;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(a);
  if (!(defect <= rel_tol * scale)) {
    throw ValidationError(std::string(what) + " is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
}

double max_diagonal(const CMatrix& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) m = std::max(m, a(i, i).real());
  return m;
}

RVector hermitian_eigenvalues(const CMatrix& a) {
  if (a.size() == 0) return RVector(0);
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

PivotedCholesky pivoted_cholesky(const CMatrix& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ValidationError("pivoted_cholesky: matrix must be square");

  PivotedCholesky out;
  out.factor = CMatrix::Zero(n, n);
  if (n == 0) return out;

  CMatrix schur = 0.5 * (a + a.adjoint());
  CMatrix lower = CMatrix::Zero(n, n);
  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const double threshold = rel_tol * std::max(max_diagonal(a), 0.0);

  Eigen::Index k = 0;
  for (; k < n; ++k) {
    Eigen::Index p = k;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      if (schur(j, j).real() > schur(p, p).real()) p = j;
    }
    const double d = schur(p, p).real();
    if (!(d > threshold) || d <= 0.0) break;
    if (p != k) {
      schur.row(k).swap(schur.row(p));
      schur.col(k).swap(schur.col(p));
      lower.row(k).swap(lower.row(p));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(p)]);
    }
    const double pivot = std::sqrt(d);
    lower(k, k) = pivot;
    const Eigen::Index rest = n - k - 1;
    if (rest > 0) {
      lower.col(k).tail(rest) = schur.col(k).tail(rest) / pivot;
      schur.bottomRightCorner(rest, rest).noalias() -=
          lower.col(k).tail(rest) * lower.col(k).tail(rest).adjoint();
    }
  }
  out.rank = static_cast<std::size_t>(k);
  out.pivots.assign(perm.begin(), perm.begin() + k);
  for (Eigen::Index i = 0; i < n; ++i) out.factor.row(perm[static_cast<std::size_t>(i)]) = lower.row(i);
  return out;
}

CMatrix submatrix(const CMatrix& a, const std::vector<std::size_t>& idx) {
  for (const std::size_t i : idx) {
    if (i >= static_cast<std::size_t>(std::min(a.rows(), a.cols()))) {
      throw ValidationError("index " + std::to_string(i) + " out of range for a " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " matrix");
    }
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  CMatrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out(i, j) = a(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

PencilSpectrum hermitian_pencil(const CMatrix& numer, const CMatrix& denom, double prune_tol) {
  if (numer.rows() != denom.rows() || numer.cols() != denom.cols() || numer.rows() != numer.cols()) {
    throw ValidationError("hermitian_pencil: shape mismatch");
  }
  PencilSpectrum out;
  const PivotedCholesky pruned = pivoted_cholesky(denom, prune_tol);
  if (pruned.rank == 0) throw NumericalError("pencil pruning removed every point of the section");
  out.retained = pruned.pivots;
  std::sort(out.retained.begin(), out.retained.end());

  const CMatrix d = submatrix(denom, out.retained);
  const CMatrix nm = submatrix(numer, out.retained);
  Eigen::LLT<CMatrix> llt(0.5 * (d + d.adjoint()));
  if (llt.info() != Eigen::Success) throw NumericalError("pruned Gram is not positive definite");
  // C = R^{-1} N R^{-H} with D = R R^H.
  const auto lower = llt.matrixL();
  CMatrix c = lower.solve(nm);
  c = lower.solve(c.adjoint().eval()).adjoint();
  out.eigenvalues = hermitian_eigenvalues(c);
  return out;
}

}  // namespace bspace

#pragma once

#include <cstddef>
#include <vector>

#include "bspace/types.hpp"

namespace bspace {

/// max_ij |A_ij - conj(A_ji)|.
double hermitian_defect(const CMatrix& a);

/// Throws ValidationError unless `a` is square and Hermitian to
/// rel_tol * max(1, max_ij |A_ij|).
void require_hermitian(const CMatrix& a, double rel_tol, const char* what);

/// Largest real diagonal entry (0 for an empty matrix).
double max_diagonal(const CMatrix& a);

/// Eigenvalues of the Hermitian part of `a`, ascending.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Cholesky factorization with diagonal (complete) pivoting of a Hermitian
/// PSD matrix: A = F F^H with F in the original row order and F P lower
/// triangular for the pivot permutation. Stops once the largest remaining
/// Schur diagonal drops below rel_tol * max diag(A); the remaining columns
/// of F are zero.
struct PivotedCholesky {
  CMatrix factor;
  std::vector<std::size_t> pivots;  ///< pivots[k] = original row eliminated at step k
  std::size_t rank = 0;
};

PivotedCholesky pivoted_cholesky(const CMatrix& a, double rel_tol);

/// Stationary values of c -> (c^H N c) / (c^H D c) for Hermitian N and
/// Hermitian PSD D. D is pruned to the rows selected by a pivoted Cholesky
/// with relative tolerance prune_tol; the pencil is solved on the retained
/// rows only.
struct PencilSpectrum {
  RVector eigenvalues;                ///< ascending
  std::vector<std::size_t> retained;  ///< retained indices, ascending
};

PencilSpectrum hermitian_pencil(const CMatrix& numer, const CMatrix& denom, double prune_tol);

/// Restriction of `a` to the given rows and columns; throws ValidationError
/// for an index out of range.
CMatrix submatrix(const CMatrix& a, const std::vector<std::size_t>& idx);

}  // namespace bspace

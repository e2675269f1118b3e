#pragma once

#include <cstddef>
#include <utility>

#include "bspace/types.hpp"

namespace bspace {

/// sin(pi x), exact zero at integers and exact +-1 at half-integers.
double sinpi(double x);
/// cos(pi x), exact zero at half-integers and exact +-1 at integers.
double cospi(double x);
/// e^{i pi x} computed with the argument reduced modulo 2 before scaling.
Complex exp_i_pi(double x);
/// e^{i 2 pi x}.
inline Complex exp_i_2pi(double x) { return exp_i_pi(2.0 * x); }
/// Normalized sinc: sin(pi x) / (pi x), with sinc(0) = 1.
double sinc(double x);

/// Deterministic pairwise summation of term(k) for k in [begin, end).
/// The reduction tree depends only on the index range, so results are
/// bit-stable for a fixed count.
template <class T, class Term>
T pairwise_sum(std::size_t begin, std::size_t end, Term&& term) {
  constexpr std::size_t kLeaf = 32;
  if (end - begin <= kLeaf) {
    T acc{};
    for (std::size_t k = begin; k < end; ++k) acc += term(k);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

}  // namespace bspace

#pragma once

#include <cstdint>
#include <vector>

#include "bspace/types.hpp"

namespace bspace {

/// Finite sum x -> sum_k coeffs[k] e^{i 2 pi freqs[k] x} on the circle [0, 1).
struct TrigPoly {
  std::vector<std::int64_t> freqs;
  std::vector<Complex> coeffs;

  static TrigPoly exponential(std::int64_t freq, Complex coeff = 1.0);

  std::size_t size() const { return freqs.size(); }
  Complex operator()(double x) const;
  TrigPoly scaled(Complex factor) const;
};

/// Sum with like frequencies merged; frequencies come out sorted.
TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);

}  // namespace bspace

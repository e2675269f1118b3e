#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bspace/boundary_function.hpp"
#include "bspace/lambda4.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// Samples f(n) for integers n in [-half_width, half_width].
struct BandlimitedSamples {
  std::int64_t half_width = 0;
  std::vector<Complex> values;  ///< values[n + half_width] = f(n)

  static BandlimitedSamples from_function(std::int64_t half_width, const std::function<Complex(double)>& f);
  Complex at(std::int64_t n) const;
};

/// Truncated Shannon series sum_{|n| <= N} f(n) sinc(t - n). Returns the
/// stored sample exactly at integer t inside the support.
Complex shannon_reconstruct(const BandlimitedSamples& samples, double t);

/// Bound on the truncation error at t for a target whose samples obey
/// |f(n)| <= 1 / (pi |n - shift|), e.g. sinc(. - shift):
/// 2 / (pi^2 (N - max(|t|, |shift|))). Infinite when N is too small.
double shannon_tail_bound(std::int64_t half_width, double t, double shift);

/// c_lambda = int F(x) e^{-i 2 pi lambda x} dmu_{1/4}(x) for each lambda.
/// Exact through the Fourier transform when F carries an expansion;
/// otherwise a CantorIFS rule of depth `ifs_depth`.
CVector cantor_coefficients(const BoundaryFunction& F, const Lambda4Set& set, int ifs_depth = 16);

/// Gram matrix <e_a, e_b> = mu^(b - a) of the exponentials in `set`.
CMatrix lambda4_orthonormality(const Lambda4Set& set);

inline constexpr int kMaxParsevalLevel = 14;

/// 1 - sum over Lambda4 below 4^level of |mu^(k - lambda)|^2. Bessel's
/// inequality keeps it in [0, 1] up to rounding; it is nonincreasing in level.
double parseval_defect(std::int64_t k, int level);

}  // namespace bspace

#include "bspace/trig_poly.hpp"

#include <map>

#include "bspace/special.hpp"

namespace bspace {

TrigPoly TrigPoly::exponential(std::int64_t freq, Complex coeff) {
  return TrigPoly{{freq}, {coeff}};
}

Complex TrigPoly::operator()(double x) const {
  return pairwise_sum<Complex>(0, freqs.size(), [&](std::size_t k) {
    return coeffs[k] * exp_i_2pi(static_cast<double>(freqs[k]) * x);
  });
}

TrigPoly TrigPoly::scaled(Complex factor) const {
  TrigPoly out = *this;
  for (auto& c : out.coeffs) c *= factor;
  return out;
}

namespace {

TrigPoly combine(const TrigPoly& a, const TrigPoly& b, double sign) {
  std::map<std::int64_t, Complex> merged;
  for (std::size_t k = 0; k < a.size(); ++k) merged[a.freqs[k]] += a.coeffs[k];
  for (std::size_t k = 0; k < b.size(); ++k) merged[b.freqs[k]] += sign * b.coeffs[k];
  TrigPoly out;
  out.freqs.reserve(merged.size());
  out.coeffs.reserve(merged.size());
  for (const auto& [f, c] : merged) {
    out.freqs.push_back(f);
    out.coeffs.push_back(c);
  }
  return out;
}

}  // namespace

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) { return combine(a, b, 1.0); }
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return combine(a, b, -1.0); }

}  // namespace bspace

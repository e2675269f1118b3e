#include "bspace/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bspace/error.hpp"
#include "bspace/measure.hpp"
#include "bspace/special.hpp"

namespace bspace {

BandlimitedSamples BandlimitedSamples::from_function(std::int64_t half_width,
                                                     const std::function<Complex(double)>& f) {
  if (half_width < 0) throw ValidationError("sample half width must be nonnegative");
  BandlimitedSamples s;
  s.half_width = half_width;
  s.values.reserve(static_cast<std::size_t>(2 * half_width + 1));
  for (std::int64_t n = -half_width; n <= half_width; ++n) s.values.push_back(f(static_cast<double>(n)));
  return s;
}

Complex BandlimitedSamples::at(std::int64_t n) const {
  if (n < -half_width || n > half_width) return {};
  return values[static_cast<std::size_t>(n + half_width)];
}

Complex shannon_reconstruct(const BandlimitedSamples& samples, double t) {
  if (std::floor(t) == t && std::abs(t) <= static_cast<double>(samples.half_width)) {
    return samples.at(static_cast<std::int64_t>(t));
  }
  return pairwise_sum<Complex>(0, samples.values.size(), [&](std::size_t k) {
    const double n = static_cast<double>(static_cast<std::int64_t>(k) - samples.half_width);
    return samples.values[k] * sinc(t - n);
  });
}

double shannon_tail_bound(std::int64_t half_width, double t, double shift) {
  const double gap = static_cast<double>(half_width) - std::max(std::abs(t), std::abs(shift));
  if (!(gap > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 / (kPi * kPi * gap);
}

CVector cantor_coefficients(const BoundaryFunction& F, const Lambda4Set& set, int ifs_depth) {
  CVector c(static_cast<Eigen::Index>(set.size()));
  if (const auto& expansion = F.spectrum()) {
    for (std::size_t a = 0; a < set.size(); ++a) {
      const std::int64_t lambda = set.members[a];
      c(static_cast<Eigen::Index>(a)) = pairwise_sum<Complex>(0, expansion->size(), [&](std::size_t k) {
        return expansion->coeffs[k] * cantor4_fourier(static_cast<double>(expansion->freqs[k] - lambda));
      });
    }
    return c;
  }
  const QuadMeasure rule = cantor_ifs_nodes(ifs_depth);
  const CVector values = F.sample(rule);
  for (std::size_t a = 0; a < set.size(); ++a) {
    const double lambda = static_cast<double>(set.members[a]);
    c(static_cast<Eigen::Index>(a)) = pairwise_sum<Complex>(0, rule.node_count(), [&](std::size_t k) {
      return rule.weight(k) * values(static_cast<Eigen::Index>(k)) * exp_i_2pi(-lambda * as_real(rule.node(k)));
    });
  }
  return c;
}

CMatrix lambda4_orthonormality(const Lambda4Set& set) {
  const auto n = static_cast<Eigen::Index>(set.size());
  CMatrix m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      m(a, b) = cantor4_fourier(static_cast<double>(set.members[static_cast<std::size_t>(b)] -
                                                    set.members[static_cast<std::size_t>(a)]));
    }
  }
  return m;
}

double parseval_defect(std::int64_t k, int level) {
  if (level > kMaxParsevalLevel) {
    throw ValidationError("Parseval level must be at most " + std::to_string(kMaxParsevalLevel));
  }
  const Lambda4Set set = lambda4_enumerate(level);
  const double bessel = pairwise_sum<double>(0, set.size(), [&](std::size_t a) {
    return std::norm(cantor4_fourier(static_cast<double>(k - set.members[a])));
  });
  return 1.0 - bessel;
}

}  // namespace bspace

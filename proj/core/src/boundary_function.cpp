#include "bspace/boundary_function.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "bspace/error.hpp"
#include "bspace/special.hpp"

namespace bspace {

namespace {

// Fourier transform of mu at integer frequencies, memoized per call site.
class FourierCache {
 public:
  explicit FourierCache(const QuadMeasure& m) : measure_(m) {}
  Complex operator()(std::int64_t t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    const Complex v = fourier_transform(measure_, static_cast<double>(t));
    cache_.emplace(t, v);
    return v;
  }

 private:
  const QuadMeasure& measure_;
  std::unordered_map<std::int64_t, Complex> cache_;
};

bool use_spectral(const QuadMeasure& m, const BoundaryFunction& u, const BoundaryFunction& v) {
  return m.is_spectral() && u.spectrum() && v.spectrum();
}

Complex spectral_inner(FourierCache& mu_hat, const TrigPoly& u, const TrigPoly& v) {
  return pairwise_sum<Complex>(0, u.size(), [&](std::size_t a) {
    const Complex ua = std::conj(u.coeffs[a]);
    return ua * pairwise_sum<Complex>(0, v.size(), [&](std::size_t b) {
             return v.coeffs[b] * mu_hat(v.freqs[b] - u.freqs[a]);
           });
  });
}

Complex node_inner(const QuadMeasure& m, const CVector& u, const CVector& v) {
  return pairwise_sum<Complex>(0, static_cast<std::size_t>(u.size()), [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k);
    return m.weight(k) * std::conj(u(i)) * v(i);
  });
}

}  // namespace

BoundaryFunction::BoundaryFunction(BoundaryIntegrand f) : eval_(std::move(f)) {}

BoundaryFunction::BoundaryFunction(TrigPoly p) : spectrum_(std::move(p)) {
  eval_ = [poly = *spectrum_](const Point& b) { return poly(as_real(b)); };
}

BoundaryFunction::BoundaryFunction(BoundaryIntegrand f, std::optional<TrigPoly> spectrum)
    : eval_(std::move(f)), spectrum_(std::move(spectrum)) {}

BoundaryFunction BoundaryFunction::from_samples(CVector values) {
  BoundaryFunction out([](const Point& b) -> Complex {
    throw DomainError("sampled boundary function has no value at " + to_string(b));
  });
  out.samples_ = std::move(values);
  return out;
}

BoundaryFunction BoundaryFunction::exponential(std::int64_t k) { return BoundaryFunction(TrigPoly::exponential(k)); }

BoundaryFunction BoundaryFunction::zero() {
  return BoundaryFunction([](const Point&) { return Complex(0.0); }, TrigPoly{});
}

Complex BoundaryFunction::operator()(const Point& b) const { return eval_(b); }

CVector BoundaryFunction::sample(const QuadMeasure& measure) const {
  const std::size_t n = measure.node_count();
  if (samples_) {
    if (static_cast<std::size_t>(samples_->size()) != n) {
      throw ValidationError("boundary samples have " + std::to_string(samples_->size()) + " values, measure " +
                            measure.describe() + " has " + std::to_string(n) + " nodes");
    }
    return *samples_;
  }
  CVector values(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) values(static_cast<Eigen::Index>(k)) = eval_(measure.node(k));
  return values;
}

Complex l2_inner(const QuadMeasure& measure, const BoundaryFunction& u, const BoundaryFunction& v) {
  if (use_spectral(measure, u, v)) {
    FourierCache mu_hat(measure);
    return spectral_inner(mu_hat, *u.spectrum(), *v.spectrum());
  }
  return node_inner(measure, u.sample(measure), v.sample(measure));
}

double l2_norm_sq(const QuadMeasure& measure, const BoundaryFunction& u) { return l2_inner(measure, u, u).real(); }

CMatrix l2_gram(const QuadMeasure& measure, const std::vector<BoundaryFunction>& funcs, const ExecutionOptions& exec) {
  const std::size_t n = funcs.size();
  CMatrix gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  bool spectral = measure.is_spectral();
  for (const auto& f : funcs) spectral = spectral && f.spectrum().has_value();

  // Upper-triangle entries are flattened so each one is owned by one thread.
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  entries.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) entries.emplace_back(i, j);
  }
  std::vector<Complex> values(entries.size());

  if (spectral) {
    // One frequency union and one table of mu^ over all differences.
    std::vector<std::int64_t> freqs;
    for (const auto& f : funcs) freqs.insert(freqs.end(), f.spectrum()->freqs.begin(), f.spectrum()->freqs.end());
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
    FourierCache mu_hat(measure);
    std::unordered_map<std::int64_t, Complex> table;
    for (auto a : freqs) {
      for (auto b : freqs) table.emplace(b - a, Complex{});
    }
    for (auto& [d, v] : table) v = mu_hat(d);
    parallel_for(entries.size(), exec, [&](std::size_t e) {
      const auto& u = *funcs[entries[e].first].spectrum();
      const auto& v = *funcs[entries[e].second].spectrum();
      values[e] = pairwise_sum<Complex>(0, u.size(), [&](std::size_t a) {
        return std::conj(u.coeffs[a]) * pairwise_sum<Complex>(0, v.size(), [&](std::size_t b) {
                 return v.coeffs[b] * table.at(v.freqs[b] - u.freqs[a]);
               });
      });
    });
  } else {
    std::vector<CVector> samples(n);
    parallel_for(n, exec, [&](std::size_t i) { samples[i] = funcs[i].sample(measure); });
    parallel_for(entries.size(), exec, [&](std::size_t e) {
      values[e] = node_inner(measure, samples[entries[e].first], samples[entries[e].second]);
    });
  }

  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto i = static_cast<Eigen::Index>(entries[e].first);
    const auto j = static_cast<Eigen::Index>(entries[e].second);
    if (i == j) {
      gram(i, i) = Complex(values[e].real(), 0.0);
    } else {
      gram(i, j) = values[e];
      gram(j, i) = std::conj(values[e]);
    }
  }
  return gram;
}

double l2_residual_sq(const QuadMeasure& measure, const BoundaryFunction& target,
                      const std::vector<BoundaryFunction>& funcs, const CVector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != funcs.size()) {
    throw ValidationError("l2_residual_sq: coefficient count mismatch");
  }
  bool spectral = measure.is_spectral() && target.spectrum().has_value();
  for (const auto& f : funcs) spectral = spectral && f.spectrum().has_value();

  if (spectral) {
    TrigPoly diff = *target.spectrum();
    for (std::size_t j = 0; j < funcs.size(); ++j) {
      diff = diff - funcs[j].spectrum()->scaled(coeffs(static_cast<Eigen::Index>(j)));
    }
    FourierCache mu_hat(measure);
    return spectral_inner(mu_hat, diff, diff).real();
  }

  CVector diff = target.sample(measure);
  for (std::size_t j = 0; j < funcs.size(); ++j) diff -= coeffs(static_cast<Eigen::Index>(j)) * funcs[j].sample(measure);
  return node_inner(measure, diff, diff).real();
}

}  // namespace bspace

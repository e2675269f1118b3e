#pragma once

#include <cstdint>
#include <vector>

#include "bspace/section.hpp"
#include "bspace/types.hpp"

namespace bspace {

/// Zero-mean Gaussian vector (pi_{s_1}, ..., pi_{s_n}) with covariance G on a
/// finite section: the marginal of the Gaussian process with covariance K.
struct GaussianEnsemble {
  Section section;
  CMatrix factor;  ///< G = F F^H; F lower triangular up to the pivot order, zero columns past the rank
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  bool real_samples = false;  ///< G is exactly real
};

/// n x N matrix, one sample per column.
struct SampleBatch {
  CMatrix samples;
  bool real_samples = false;
  std::uint64_t seed = 0;

  std::size_t count() const { return static_cast<std::size_t>(samples.cols()); }
};

/// Factors the section Gram with a pivoted Cholesky (rank deficiency gives
/// zero columns). Throws NumericalError for an indefinite Gram.
GaussianEnsemble build_ensemble(const Section& section, std::uint64_t seed);

/// x_k = F zeta_k. Real Grams draw i.i.d. standard normals; complex Grams
/// draw circularly symmetric zeta with E|zeta|^2 = 1 and E zeta^2 = 0, so
/// E x x^H = G either way. Single-threaded and reproducible from
/// (seed, count): one std::mt19937_64 stream seeded with `seed`.
SampleBatch sample(const GaussianEnsemble& ensemble, std::size_t count);

/// (1/N) sum_k x_k x_k^H; throws ValidationError for N < 2.
CMatrix empirical_covariance(const SampleBatch& batch);

/// ||C_N - G||_F / ||G||_F for a fresh batch of N samples; 0 for a zero Gram.
double covariance_defect(const GaussianEnsemble& ensemble, std::size_t count);

/// max |(F F^H)_{ij} - G_ij| over the given sub-section indices.
double marginal_defect(const GaussianEnsemble& ensemble, const std::vector<std::size_t>& idx);

}  // namespace bspace

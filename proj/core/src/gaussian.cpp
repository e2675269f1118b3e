#include "bspace/gaussian.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bspace/error.hpp"
#include "bspace/linalg.hpp"

namespace bspace {

GaussianEnsemble build_ensemble(const Section& section, std::uint64_t seed) {
  const PdVerdict pd = pd_check(section.gram());
  if (!pd.pass) {
    throw NumericalError("Gaussian ensemble needs a PSD covariance (min eigenvalue " +
                         std::to_string(pd.min_eigenvalue) + ")");
  }
  const PivotedCholesky chol = pivoted_cholesky(section.gram(), 1e-14);
  GaussianEnsemble ens{section, chol.factor, chol.rank, seed, section.gram().imag().isZero(0.0)};
  return ens;
}

SampleBatch sample(const GaussianEnsemble& ensemble, std::size_t count) {
  if (count < 1) throw ValidationError("sample count must be at least 1");
  const Eigen::Index n = ensemble.factor.rows();
  std::mt19937_64 engine(ensemble.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  CMatrix zeta(n, static_cast<Eigen::Index>(count));
  const double half = std::sqrt(0.5);
  for (Eigen::Index k = 0; k < zeta.cols(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (ensemble.real_samples) {
        zeta(i, k) = Complex(normal(engine), 0.0);
      } else {
        const double re = normal(engine);
        const double im = normal(engine);
        zeta(i, k) = Complex(half * re, half * im);
      }
    }
  }
  SampleBatch batch;
  batch.samples = ensemble.factor * zeta;
  batch.real_samples = ensemble.real_samples;
  batch.seed = ensemble.seed;
  if (batch.real_samples) batch.samples.imag().setZero();
  return batch;
}

CMatrix empirical_covariance(const SampleBatch& batch) {
  if (batch.count() < 2) throw ValidationError("empirical covariance needs at least two samples");
  CMatrix cov = batch.samples * batch.samples.adjoint() / static_cast<double>(batch.count());
  // Hermitian exactly.
  const CMatrix sym = 0.5 * (cov + cov.adjoint());
  return sym;
}

double covariance_defect(const GaussianEnsemble& ensemble, std::size_t count) {
  const CMatrix& g = ensemble.section.gram();
  const double scale = g.norm();
  if (scale == 0.0) return 0.0;
  return (empirical_covariance(sample(ensemble, count)) - g).norm() / scale;
}

double marginal_defect(const GaussianEnsemble& ensemble, const std::vector<std::size_t>& idx) {
  const CMatrix full = ensemble.factor * ensemble.factor.adjoint();
  const CMatrix sub = submatrix(full, idx);
  const CMatrix target = submatrix(ensemble.section.gram(), idx);
  return sub.size() ? (sub - target).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace bspace

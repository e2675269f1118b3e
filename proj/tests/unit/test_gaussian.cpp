#include <cmath>
#include <random>

#include "bspace/error.hpp"
#include "bspace/gaussian.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bspace;

namespace {

Section szego5() {
  return build_section(Kernel::szego(), {complex_point({0.1, 0.2}), complex_point({-0.5, 0.3}),
                                         complex_point({0.6, -0.1}), complex_point({0.0, -0.7}),
                                         complex_point({-0.3, -0.3})});
}

double relative_refactor_error(const GaussianEnsemble& e) {
  const CMatrix& g = e.section.gram();
  return (e.factor * e.factor.adjoint() - g).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("build_ensemble examples") {
  const Kernel id = Kernel::explicit_gram(CMatrix::Identity(3, 3));
  const auto e = build_ensemble(build_section(id, {index_point(0), index_point(1), index_point(2)}), 1);
  CHECK(e.rank == 3);
  CHECK((e.factor - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(e.real_samples);

  // Rank-one Grams need distinct points, so use a feature kernel.
  CMatrix feat(2, 1);
  feat << 1, -1;
  const auto r1 = build_ensemble(build_section(Kernel::explicit_feature(feat), {index_point(0), index_point(1)}), 1);
  CHECK(r1.rank == 1);
  CHECK(r1.factor.col(1).norm() == 0.0);
  CHECK(r1.factor.col(0).norm() > 0.0);

  const auto sz = build_ensemble(szego5(), 42);
  CHECK(sz.rank == 5);
  CHECK_FALSE(sz.real_samples);
  CHECK(relative_refactor_error(sz) < 1e-12);
}

TEST_CASE("refactorization across the zoo") {
  std::mt19937_64 rng(6);
  std::vector<Section> sections;
  std::vector<Point> disk, plane, line;
  for (int i = 0; i < 5; ++i) {
    disk.push_back(complex_point(oracle::random_disk_point(rng, 0.9)));
    plane.push_back(complex_point(oracle::random_disk_point(rng, 2.0)));
    line.push_back(real_point(static_cast<double>(i) * 0.9 - 1.7));
  }
  sections.push_back(build_section(Kernel::szego(), disk));
  sections.push_back(build_section(Kernel::cantor4(6), disk));
  sections.push_back(build_section(Kernel::bargmann(), plane));
  sections.push_back(build_section(Kernel::sinc(), line));
  for (const auto& s : sections) {
    INFO(s.kernel().name());
    const auto e = build_ensemble(s, 3);
    CHECK(relative_refactor_error(e) < 1e-12);
  }
}

TEST_CASE("sampling is deterministic") {
  const auto e = build_ensemble(szego5(), 42);
  const auto a = sample(e, 1000);
  const auto b = sample(e, 1000);
  CHECK(a.samples == b.samples);
  const auto other = sample(build_ensemble(szego5(), 43), 1000);
  CHECK(a.samples != other.samples);
  CHECK(a.count() == 1000);
}

TEST_CASE("zero Gram") {
  const Kernel zero = Kernel::explicit_gram(CMatrix::Zero(1, 1));
  const auto e = build_ensemble(build_section(zero, {index_point(0)}), 5);
  CHECK(e.rank == 0);
  const auto one = sample(e, 1);
  CHECK(one.samples.cwiseAbs().maxCoeff() == 0.0);
  CHECK(covariance_defect(e, 100) == 0.0);
}

TEST_CASE("empirical mean obeys the CLT bound") {
  const auto e = build_ensemble(szego5(), 42);
  const std::size_t n = 100000;
  const auto batch = sample(e, n);
  const CVector mean = batch.samples.rowwise().mean();
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double sigma = std::sqrt(e.section.gram()(i, i).real() / static_cast<double>(n));
    CHECK(std::abs(mean(i)) < 4.0 * sigma);
  }
}

TEST_CASE("empirical covariance") {
  CMatrix copies(2, 4);
  const Complex v0(1.0, 2.0), v1(-0.5, 0.0);
  for (int k = 0; k < 4; ++k) {
    copies(0, k) = v0;
    copies(1, k) = v1;
  }
  SampleBatch batch{copies, false, 0};
  CVector v(2);
  v << v0, v1;
  CHECK((empirical_covariance(batch) - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(empirical_covariance(SampleBatch{CMatrix::Zero(2, 1), false, 0}), ValidationError);

  const Kernel id = Kernel::explicit_gram(CMatrix::Identity(3, 3));
  const auto e = build_ensemble(build_section(id, {index_point(0), index_point(1), index_point(2)}), 11);
  const std::size_t n = 40000;
  const CMatrix c = empirical_covariance(sample(e, n));
  CHECK((c - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("covariance defect") {
  CHECK(covariance_defect(build_ensemble(szego5(), 42), 100000) < 0.05);

  std::mt19937_64 rng(9);
  std::vector<Point> disk, plane, line;
  for (int i = 0; i < 5; ++i) {
    disk.push_back(complex_point(oracle::random_disk_point(rng, 0.8)));
    plane.push_back(complex_point(oracle::random_disk_point(rng, 2.0)));
    line.push_back(real_point(static_cast<double>(i)));
  }
  for (const auto& s : {build_section(Kernel::cantor4(6), disk), build_section(Kernel::bargmann(), plane),
                        build_section(Kernel::sinc(), line)}) {
    INFO(s.kernel().name());
    CHECK(covariance_defect(build_ensemble(s, 42), 100000) < 0.05);
  }
}

TEST_CASE("complex samples are circular") {
  const auto e = build_ensemble(szego5(), 7);
  const auto batch = sample(e, 50000);
  // E x x^T = 0 for circular samples; real samples would give G^T here.
  const CMatrix pseudo = batch.samples * batch.samples.transpose() / 50000.0;
  CHECK(pseudo.cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("marginals match sub-Grams") {
  const auto e = build_ensemble(szego5(), 42);
  CHECK(marginal_defect(e, {0, 2, 4}) < 1e-12);
  CHECK(marginal_defect(e, {3}) < 1e-12);
  CHECK(marginal_defect(e, {4, 1}) < 1e-12);
  CHECK_THROWS_AS(marginal_defect(e, {7}), ValidationError);
}

#include <cmath>
#include <memory>
#include <random>

#include "bspace/error.hpp"
#include "bspace/kernel.hpp"
#include "bspace/linalg.hpp"
#include "bspace/section.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bspace;

namespace {

std::vector<Kernel> disk_zoo() { return {Kernel::szego(), Kernel::cantor4(3), Kernel::cantor4(6)}; }

Point random_point(const Kernel& k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  if (std::holds_alternative<Sinc>(k.variant())) return real_point(u(rng));
  if (std::holds_alternative<Bargmann>(k.variant())) return complex_point({u(rng) * 0.7, u(rng) * 0.7});
  return complex_point(oracle::random_disk_point(rng, 0.9));
}

std::vector<Kernel> scalar_zoo() {
  return {Kernel::szego(), Kernel::cantor4(3), Kernel::cantor4(6), Kernel::bargmann(), Kernel::sinc()};
}

}  // namespace

TEST_CASE("eval_kernel closed-form values") {
  CHECK(eval_kernel(Kernel::szego(), complex_point(0), complex_point(0)) == Complex(1.0));
  CHECK(std::abs(eval_kernel(Kernel::szego(), real_point(0.5), real_point(0.5)) - 4.0 / 3.0) < 1e-15);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Point z = complex_point(oracle::random_disk_point(rng, 3.0));
    CHECK(std::abs(eval_kernel(Kernel::bargmann(), z, z) - 1.0) < 1e-14);
  }
  const Point w = complex_point({0.3, -0.6});
  CHECK(eval_kernel(Kernel::cantor4(3), complex_point(0), w) == Complex(1.0));
}

TEST_CASE("eval_kernel rejects points outside the domain") {
  CHECK_THROWS_AS(eval_kernel(Kernel::szego(), complex_point(1.0), complex_point(0)), DomainError);
  CHECK_THROWS_AS(eval_kernel(Kernel::cantor4(2), complex_point({0.8, 0.8}), complex_point(0)), DomainError);
  CHECK_THROWS_AS(eval_kernel(Kernel::sinc(), complex_point({0.1, 0.2}), real_point(0)), DomainError);
  CHECK_THROWS_AS(eval_kernel(Kernel::szego(), index_point(0), complex_point(0)), DomainError);
  const Kernel g = Kernel::explicit_gram(CMatrix::Identity(2, 2));
  CHECK_THROWS_AS(g(index_point(2), index_point(0)), DomainError);
  CHECK_THROWS_AS(Kernel::cantor4(0), ValidationError);
  CMatrix bad(2, 2);
  bad << 1, 2, 3, 1;
  CHECK_THROWS_AS(Kernel::explicit_gram(bad), ValidationError);
}

TEST_CASE("Hermitian symmetry on 1000 random pairs") {
  std::mt19937_64 rng(11);
  for (const auto& k : scalar_zoo()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point s = random_point(k, rng);
      const Point t = random_point(k, rng);
      const Complex a = k(s, t);
      const Complex b = std::conj(k(t, s));
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    INFO(k.name());
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("Cantor4 product form equals the Lambda4 power sum") {
  std::mt19937_64 rng(3);
  for (int level : {1, 3, 6, 8}) {
    for (int i = 0; i < 200; ++i) {
      const Complex u = oracle::random_disk_point(rng, 0.81);
      CHECK(std::abs(cantor4_product(u, level) - cantor4_power_sum(u, level)) < 1e-12);
    }
  }
  // Independent route: std::pow over the scanned frequency set.
  const Complex u{0.5, 0.4};
  Complex brute = 0.0;
  for (auto l : oracle::lambda4_by_scan(4)) brute += std::pow(u, static_cast<double>(l));
  CHECK(std::abs(cantor4_product(u, 4) - brute) < 1e-13);
}

TEST_CASE("boundary extension values") {
  const auto sz = BoundaryExtension::canonical(Kernel::szego());
  CHECK(sz.domain() == BoundaryDomain::Circle);
  for (double x : {0.0, 0.25, 0.7}) CHECK(eval_boundary(sz, complex_point(0), real_point(x)) == Complex(1.0));
  CHECK(std::abs(eval_boundary(sz, real_point(0.5), real_point(0.0)) - 2.0) < 1e-15);
  CHECK_THROWS_AS(eval_boundary(sz, real_point(0.5), real_point(1.0)), DomainError);
  CHECK_THROWS_AS(eval_boundary(sz, real_point(0.5), complex_point({0.1, 0.0})), DomainError);

  const auto band = BoundaryExtension::canonical(Kernel::sinc());
  for (double t : {-2.3, 0.0, 1.7}) {
    for (double xi : {-0.5, -0.1, 0.33, 0.5}) {
      const Complex v = eval_boundary(band, real_point(t), real_point(xi));
      CHECK(std::abs(std::abs(v) - 1.0) < 1e-15);
      CHECK(std::abs(v - std::polar(1.0, -2.0 * oracle::kPi * t * xi)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(eval_boundary(band, real_point(0.0), real_point(0.6)), DomainError);

  const auto cantor = BoundaryExtension::canonical(Kernel::cantor4(4));
  const Point z = complex_point({0.3, 0.5});
  const auto expansion = cantor.spectrum(z);
  REQUIRE(expansion.has_value());
  CHECK(expansion->size() == 16);
  for (double x : {0.0, 0.125, 0.4}) CHECK(std::abs((*expansion)(x) - cantor(z, real_point(x))) < 1e-13);
  CHECK_FALSE(sz.spectrum(z).has_value());
}

TEST_CASE("build_section assembles and validates") {
  const Section s = build_section(Kernel::szego(), {complex_point(0), real_point(0.5)});
  CMatrix expected(2, 2);
  expected << 1, 1, 1, 4.0 / 3.0;
  CHECK((s.gram() - expected).cwiseAbs().maxCoeff() < 1e-15);

  CMatrix feat = CMatrix::Identity(3, 3);
  const Section id = build_section(Kernel::explicit_feature(feat), {index_point(0), index_point(1), index_point(2)});
  CHECK((id.gram() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(build_section(Kernel::szego(), {real_point(0.9), real_point(0.9)}), ValidationError);
  CHECK_THROWS_AS(build_section(Kernel::szego(), {real_point(0.2), real_point(1.2)}), DomainError);

  CMatrix indefinite(3, 3);
  indefinite << 1, -1, -1, -1, 1, -1, -1, -1, 1;
  CHECK_THROWS_AS(
      build_section(Kernel::explicit_gram(indefinite), {index_point(0), index_point(1), index_point(2)}),
      NumericalError);
}

TEST_CASE("pd_check verdicts") {
  const PdVerdict id = pd_check(CMatrix::Identity(3, 3), 1e-10);
  CHECK(id.pass);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));

  CMatrix m(2, 2);
  m << 1, 2, 2, 1;
  const PdVerdict bad = pd_check(m, 1e-10);
  CHECK_FALSE(bad.pass);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1.0));

  CMatrix nonherm(2, 2);
  nonherm << 1, Complex(0, 1), Complex(0, 1), 1;
  CHECK_THROWS_AS(pd_check(nonherm, 1e-10), ValidationError);
  CHECK_THROWS_AS(pd_check(CMatrix::Identity(2, 2), -1.0), ValidationError);

  // Szego Grams on 20 random points: compare the verdict with an
  // independent eigen-decomposition.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(complex_point(oracle::random_disk_point(rng, 0.9)));
    CMatrix g(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) g(i, j) = 1.0 / (1.0 - std::conj(as_complex(pts[i])) * as_complex(pts[j]));
    Eigen::ComplexEigenSolver<CMatrix> es(g);
    const double min_eig = es.eigenvalues().real().minCoeff();
    const PdVerdict v = pd_check(g, 1e-10);
    CHECK(v.pass);
    CHECK(min_eig >= -1e-10 * g.diagonal().real().maxCoeff());
  }
}

TEST_CASE("RKHS norm and inner product") {
  auto sec = std::make_shared<const Section>(build_section(Kernel::szego(), {complex_point(0), real_point(0.5)}));
  CHECK(h_norm_sq(RkhsElement(sec, CVector::Zero(2))) == 0.0);

  CVector c(2);
  c << 1, -1;
  CHECK(h_norm_sq(RkhsElement(sec, c)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  auto single = std::make_shared<const Section>(build_section(Kernel::szego(), {real_point(0.5)}));
  CHECK(h_norm_sq(RkhsElement(single, CVector::Ones(1))) == doctest::Approx(4.0 / 3.0));

  auto feat = std::make_shared<const Section>(
      build_section(Kernel::explicit_feature(CMatrix::Identity(2, 2)), {index_point(0), index_point(1)}));
  CVector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(h_inner(RkhsElement(feat, e0), RkhsElement(feat, e1)) == Complex(0.0));

  CHECK_THROWS_AS(h_inner(RkhsElement(sec, c), RkhsElement(feat, e0)), ValidationError);
  CHECK_THROWS_AS(RkhsElement(sec, CVector::Ones(3)), ValidationError);
}

TEST_CASE("RKHS inner product properties on random inputs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (const auto& k : disk_zoo()) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(complex_point(oracle::random_disk_point(rng, 0.85)));
    auto sec = std::make_shared<const Section>(build_section(k, pts));
    for (int trial = 0; trial < 20; ++trial) {
      CVector a(6), b(6);
      for (int i = 0; i < 6; ++i) {
        a(i) = Complex(g(rng), g(rng));
        b(i) = Complex(g(rng), g(rng));
      }
      const RkhsElement f(sec, a), h(sec, b);
      CHECK(std::abs(h_inner(f, h) - std::conj(h_inner(h, f))) < 1e-12 * (1 + std::abs(h_inner(f, h))));
      CHECK(h_inner(f, f).real() == h_norm_sq(f));
      CHECK(h_norm_sq(f) >= -1e-12);

      // Simultaneous permutation of points and coefficients.
      std::vector<std::size_t> perm{3, 1, 5, 0, 2, 4};
      auto psec = std::make_shared<const Section>(sec->restricted(perm));
      CVector pa(6);
      for (int i = 0; i < 6; ++i) pa(i) = a(static_cast<Eigen::Index>(perm[i]));
      CHECK(h_norm_sq(RkhsElement(psec, pa)) == doctest::Approx(h_norm_sq(f)).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate_element") {
  auto sec = std::make_shared<const Section>(build_section(Kernel::szego(), {complex_point(0), real_point(0.5)}));
  CVector e0(2);
  e0 << 1, 0;
  const Point t = complex_point({0.1, 0.3});
  CHECK(evaluate_element(RkhsElement(sec, e0), t) == Kernel::szego()(complex_point(0), t));

  CVector c(2);
  c << Complex(0.2, 1.0), Complex(-0.5, 0.3);
  const RkhsElement f(sec, c);
  for (int i = 0; i < 2; ++i) {
    const Complex expected = c(0) * sec->gram()(0, i) + c(1) * sec->gram()(1, i);
    CHECK(std::abs(evaluate_element(f, sec->points()[i]) - expected) < 1e-15);
  }
  auto origin = std::make_shared<const Section>(build_section(Kernel::szego(), {complex_point(0)}));
  CHECK(evaluate_element(RkhsElement(origin, CVector::Ones(1)), real_point(0.3)) == Complex(1.0));
}

TEST_CASE("kernel metric") {
  CHECK(dist_k(Kernel::szego(), real_point(0.3), real_point(0.3)) == 0.0);
  CHECK(dist_k(Kernel::szego(), complex_point(0), real_point(0.5)) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  CHECK(dist_k(Kernel::szego(), complex_point(0), real_point(0.5)) == doctest::Approx(0.5773503).epsilon(1e-7));

  std::mt19937_64 rng(99);
  for (const auto& k : scalar_zoo()) {
    double worst_violation = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point a = random_point(k, rng), b = random_point(k, rng), c = random_point(k, rng);
      const double ab = dist_k(k, a, b), bc = dist_k(k, b, c), ac = dist_k(k, a, c);
      CHECK(ab >= 0.0);
      CHECK(ab == dist_k(k, b, a));
      worst_violation = std::max(worst_violation, ac - ab - bc);
    }
    INFO(k.name());
    CHECK(worst_violation <= 1e-12);
  }
}

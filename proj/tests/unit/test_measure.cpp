#include <cmath>
#include <random>

#include "bspace/error.hpp"
#include "bspace/lambda4.hpp"
#include "bspace/measure.hpp"
#include "bspace/quadrature.hpp"
#include "bspace/special.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bspace;

namespace {

// mu^ of the 1/4-Cantor measure at t = 2 and t = 6, evaluated independently
// with 40-digit arithmetic.
constexpr Complex kMuHat2{0.34631445634972281449, 0.5998342337933141057};
constexpr double kMuHat6Abs = 0.58115392142938681918;

Complex one(const Point&) { return 1.0; }

}  // namespace

TEST_CASE("special functions hit exact values") {
  CHECK(sinpi(1.0) == 0.0);
  CHECK(sinpi(-3.0) == 0.0);
  CHECK(sinpi(0.5) == 1.0);
  CHECK(cospi(0.5) == 0.0);
  CHECK(cospi(2.0) == 1.0);
  CHECK(exp_i_pi(1.0) == Complex(-1.0, 0.0));
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(3.0) == 0.0);
  CHECK(sinc(0.5) == doctest::Approx(2.0 / oracle::kPi).epsilon(1e-15));
  for (double x : {0.1, 0.37, 1.9, -4.2}) CHECK(std::abs(exp_i_pi(x) - std::polar(1.0, oracle::kPi * x)) < 1e-14);
}

TEST_CASE("pairwise_sum is order-stable") {
  const auto term = [](std::size_t k) { return 1.0 / static_cast<double>(k + 1); };
  const double a = pairwise_sum<double>(0, 1000, term);
  const double b = pairwise_sum<double>(0, 1000, term);
  CHECK(a == b);
  double naive = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) naive += term(k);
  CHECK(a == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("quadrature rules integrate polynomials exactly") {
  const auto gh = gauss_hermite(20);
  double mass = 0.0, m2 = 0.0, m4 = 0.0, m6 = 0.0, m3 = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    const double x = gh.nodes[k], w = gh.weights[k];
    mass += w;
    m2 += w * x * x;
    m3 += w * x * x * x;
    m4 += w * std::pow(x, 4);
    m6 += w * std::pow(x, 6);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(m3) < 1e-13);
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(m6 == doctest::Approx(15.0).epsilon(1e-13));

  const auto big = gauss_hermite(200);
  double big_mass = 0.0;
  for (double w : big.weights) {
    CHECK(w > 0.0);
    big_mass += w;
  }
  CHECK(big_mass == doctest::Approx(1.0).epsilon(1e-13));

  const auto gl = gauss_legendre(12);
  double s0 = 0.0, s2 = 0.0, s10 = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    s0 += gl.weights[k];
    s2 += gl.weights[k] * gl.nodes[k] * gl.nodes[k];
    s10 += gl.weights[k] * std::pow(gl.nodes[k], 10);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_hermite(0), ValidationError);
  CHECK_THROWS_AS(gauss_hermite(401), ValidationError);
}

TEST_CASE("integrate examples") {
  for (const auto& m : {QuadMeasure::periodic_uniform(16), QuadMeasure::gauss_hermite_plane(8),
                        QuadMeasure::gauss_legendre_band(10), QuadMeasure::cantor_ifs(5), QuadMeasure::cantor_exact(),
                        QuadMeasure::atomic({0.25, 0.75})}) {
    INFO(m.describe());
    CHECK(std::abs(integrate(m, one) - 1.0) < 1e-14);
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  }

  const auto pu8 = QuadMeasure::periodic_uniform(8);
  CHECK(std::abs(integrate(pu8, [](const Point& b) { return exp_i_2pi(as_real(b)); })) < 1e-15);

  // E|x|^2 = 2 for the standard complex Gaussian with density (1/2pi) e^{-|x|^2/2}.
  const auto gh = QuadMeasure::gauss_hermite_plane(20);
  const Complex m2 = integrate(gh, [](const Point& b) { return Complex(std::norm(as_complex(b))); });
  CHECK(std::abs(m2 - 2.0) < 1e-13);
  // E|x|^4 = 8 and E x^2 = 0 from the same closed-form moments.
  CHECK(std::abs(integrate(gh, [](const Point& b) { return Complex(std::pow(std::norm(as_complex(b)), 2)); }) - 8.0) <
        1e-12);
  CHECK(std::abs(integrate(gh, [](const Point& b) { return as_complex(b) * as_complex(b); })) < 1e-13);

  const auto band = QuadMeasure::gauss_legendre_band(32);
  for (double d : {0.0, 0.7, 2.3, -5.1}) {
    const Complex v = integrate(band, [d](const Point& b) { return exp_i_2pi(d * as_real(b)); });
    CHECK(std::abs(v - oracle::band_exponential_integral(d)) < 1e-14);
  }
}

TEST_CASE("integrate is linear and conjugation-compatible") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto m = QuadMeasure::periodic_uniform(64);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    const double p = u(rng), q = u(rng);
    const BoundaryIntegrand f = [p](const Point& x) { return Complex(std::cos(p * as_real(x)), std::sin(as_real(x))); };
    const BoundaryIntegrand g = [q](const Point& x) { return Complex(as_real(x) * q, 1.0); };
    const Complex lhs = integrate(m, [&](const Point& x) { return a * f(x) + b * g(x); });
    const Complex rhs = a * integrate(m, f) + b * integrate(m, g);
    CHECK(std::abs(lhs - rhs) < 1e-13);
    CHECK(std::abs(integrate(m, [&](const Point& x) { return std::conj(f(x)); }) - std::conj(integrate(m, f))) < 1e-15);
  }
}

TEST_CASE("PeriodicUniform annihilates low frequencies") {
  for (std::size_t n : {8U, 64U, 2048U}) {
    const auto m = QuadMeasure::periodic_uniform(n);
    double worst = 0.0;
    for (std::int64_t k = 1; k < static_cast<std::int64_t>(n); k += (n > 64 ? 37 : 1)) {
      for (std::int64_t sign : {1, -1}) {
        worst = std::max(worst, std::abs(integrate(m, [k, sign](const Point& b) {
                                  return exp_i_2pi(static_cast<double>(sign * k) * as_real(b));
                                })));
      }
    }
    CHECK(worst < 1e-14);
    CHECK(std::abs(integrate_trig(m, TrigPoly::exponential(static_cast<std::int64_t>(n)))) == doctest::Approx(1.0));
    CHECK(std::abs(integrate_trig(m, TrigPoly::exponential(3))) == 0.0);
  }
}

TEST_CASE("cantor4_fourier") {
  CHECK(cantor4_fourier(0.0) == Complex(1.0));
  CHECK(std::abs(cantor4_fourier(1.0)) < 1e-14);
  CHECK(std::abs(cantor4_fourier(2.0) - kMuHat2) < 1e-15);
  CHECK(std::abs(cantor4_fourier(0.5) - kMuHat2) < 1e-15);
  CHECK(std::abs(std::abs(cantor4_fourier(6.0)) - kMuHat6Abs) < 1e-15);
  CHECK(std::abs(cantor4_fourier(3.0)) < 1e-14);

  // Agreement with brute-force atom enumeration of the depth-20 refinement.
  for (double t : {2.0, 0.37, 6.0, 17.5}) {
    CHECK(std::abs(cantor4_fourier(t) - oracle::cantor_ifs_exponential(t, 20)) < 1e-9);
  }
  for (double t : {2.0, 5.5}) {
    CHECK(std::abs(cantor4_fourier_depth(t, 8) - oracle::cantor_ifs_exponential(t, 8)) < 1e-13);
  }

  // mu^(-t) = conj(mu^(t)) for a real measure.
  for (double t : {0.3, 2.0, 11.0}) CHECK(std::abs(cantor4_fourier(-t) - std::conj(cantor4_fourier(t))) < 1e-15);
}

TEST_CASE("Lambda4 exponentials are orthogonal under the Cantor measure") {
  const auto set = lambda4_enumerate(6);
  REQUIRE(set.size() == 64);
  double worst = 0.0;
  for (auto a : set.members)
    for (auto b : set.members)
      if (a != b) worst = std::max(worst, std::abs(cantor4_fourier(static_cast<double>(b - a))));
  CHECK(worst < 1e-12);
}

TEST_CASE("cantor_ifs_nodes") {
  const auto d1 = cantor_ifs_nodes(1);
  REQUIRE(d1.node_count() == 2);
  CHECK(as_real(d1.node(0)) == 0.0);
  CHECK(as_real(d1.node(1)) == 0.5);
  CHECK(d1.weight(0) == 0.5);
  CHECK(d1.weight(1) == 0.5);

  const auto d2 = cantor_ifs_nodes(2);
  REQUIRE(d2.node_count() == 4);
  const double expected[] = {0.0, 0.125, 0.5, 0.625};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(as_real(d2.node(k)) == expected[k]);
    CHECK(d2.weight(k) == 0.25);
  }
  CHECK_THROWS_AS(cantor_ifs_nodes(0), ValidationError);
  CHECK_THROWS_AS(cantor_ifs_nodes(kMaxCantorDepth + 1), ValidationError);
}

TEST_CASE("integrate_trig is exact on Cantor measures") {
  TrigPoly p = TrigPoly::exponential(2, Complex(0.5, -1.0)) + TrigPoly::exponential(-7, 2.0);
  const Complex expected = Complex(0.5, -1.0) * cantor4_fourier(2.0) + 2.0 * cantor4_fourier(-7.0);
  CHECK(std::abs(integrate_trig(QuadMeasure::cantor_exact(), p) - expected) < 1e-15);
  CHECK(std::abs(integrate_trig(QuadMeasure::cantor_ifs(6), p) -
                 (Complex(0.5, -1.0) * oracle::cantor_ifs_exponential(2.0, 6) +
                  2.0 * oracle::cantor_ifs_exponential(-7.0, 6))) < 1e-13);
  CHECK_THROWS_AS(integrate_trig(QuadMeasure::gauss_legendre_band(4), p), DomainError);
}

TEST_CASE("atomic measures and point masses") {
  CHECK_THROWS_AS(QuadMeasure::atomic({0.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(QuadMeasure::atomic({}), ValidationError);
  CHECK_THROWS_AS(QuadMeasure::atomic({real_point(1.5)}, {1.0}, BoundaryDomain::Circle), DomainError);
  const auto pm = QuadMeasure::point_mass(0.25);
  CHECK(pm.node_count() == 1);
  CHECK(std::abs(integrate(pm, [](const Point& b) { return exp_i_2pi(as_real(b)); }) - Complex(0, 1)) < 1e-15);
}

TEST_CASE("pushforward") {
  const auto mu = QuadMeasure::atomic({0.25, 0.25, 0.25, 0.25});
  const auto same = pushforward(mu, MeasurableMap{{0, 1, 2, 3}, 4});
  for (std::size_t k = 0; k < 4; ++k) CHECK(same.weight(k) == mu.weight(k));

  const auto collapsed = pushforward(QuadMeasure::atomic({0.25, 0.25, 0.5}), MeasurableMap{{0, 0, 1}, 2});
  CHECK(collapsed.weight(0) == 0.5);
  CHECK(collapsed.weight(1) == 0.5);

  const auto paired = pushforward(mu, MeasurableMap{{0, 0, 1, 1}, 2});
  REQUIRE(paired.node_count() == 2);
  CHECK(paired.weight(0) == 0.5);
  CHECK(paired.weight(1) == 0.5);

  CHECK_THROWS_AS(pushforward(mu, MeasurableMap{{0, 1}, 2}), ValidationError);
  CHECK_THROWS_AS(pushforward(mu, MeasurableMap{{0, 1, 2, 5}, 4}), ValidationError);
  CHECK_THROWS_AS(pushforward(QuadMeasure::periodic_uniform(4), MeasurableMap{{0, 1, 2, 3}, 4}), ValidationError);

  // Total mass is preserved for random maps.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> weights(12);
    for (auto& x : weights) x = w(rng);
    MeasurableMap phi{std::vector<std::size_t>(12), 5};
    for (auto& i : phi.image) i = rng() % 5;
    const auto src = QuadMeasure::atomic(weights);
    std::vector<double> dest(5, 0.0);
    for (std::size_t k = 0; k < 12; ++k) dest[phi.image[k]] += weights[k];
    double dest_total = 0.0;
    for (double x : dest) dest_total += x;
    // Fibers may be empty; the image measure keeps only the atoms with mass.
    const auto img = pushforward(src, phi);
    CHECK(img.total_mass() == doctest::Approx(src.total_mass()).epsilon(1e-15));
    CHECK(img.total_mass() == doctest::Approx(dest_total).epsilon(1e-15));
  }
}

TEST_CASE("scale_measure") {
  const auto m = QuadMeasure::periodic_uniform(16);
  const auto s1 = scale_measure(m, 1.0);
  for (std::size_t k = 0; k < 16; ++k) CHECK(s1.weight(k) == m.weight(k));
  CHECK(scale_measure(m, 2.0).total_mass() == doctest::Approx(2.0));
  CHECK(std::abs(integrate(scale_measure(QuadMeasure::cantor_exact(), 3.0), one) - 3.0) < 1e-14);
  CHECK(std::abs(integrate_trig(scale_measure(QuadMeasure::cantor_exact(), 3.0), TrigPoly::exponential(2)) -
                 3.0 * kMuHat2) < 1e-14);
  CHECK_THROWS_AS(scale_measure(m, 0.0), ValidationError);
  CHECK_THROWS_AS(scale_measure(m, -1.0), ValidationError);
}

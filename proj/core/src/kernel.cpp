#include "bspace/kernel.hpp"

#include <cmath>
#include <string>

#include "bspace/error.hpp"
#include "bspace/lambda4.hpp"
#include "bspace/linalg.hpp"
#include "bspace/special.hpp"

namespace bspace {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kHermitianTol = 1e-12;

Complex disk_point(const Point& p, const char* kernel) {
  const Complex z = as_complex(p);
  if (!(std::abs(z) < 1.0)) {
    throw DomainError(std::string(kernel) + " kernel needs |z| < 1, got " + to_string(p));
  }
  return z;
}

Complex plane_point(const Point& p) {
  const Complex z = as_complex(p);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("non-finite point " + to_string(p));
  }
  return z;
}

double line_point(const Point& p) {
  const double t = as_real(p);
  if (!std::isfinite(t)) throw DomainError("non-finite point " + to_string(p));
  return t;
}

std::size_t ground_point(const Point& p, Eigen::Index size) {
  const std::size_t i = as_index(p);
  if (i >= static_cast<std::size_t>(size)) {
    throw DomainError("index " + std::to_string(i) + " outside ground set of size " +
                      std::to_string(size));
  }
  return i;
}

// u^lambda for lambda in Lambda4 below 4^levels, in increasing lambda order.
std::vector<Complex> lambda4_monomials(Complex u, int levels) {
  const auto count = std::size_t{1} << levels;
  std::vector<Complex> terms(count);
  terms[0] = 1.0;
  Complex power = u;  // u^{4^bit}
  for (int bit = 0; bit < levels; ++bit) {
    const auto half = std::size_t{1} << bit;
    for (std::size_t m = 0; m < half; ++m) terms[half + m] = terms[m] * power;
    power *= power;
    power *= power;
  }
  return terms;
}

Complex bargmann_kernel(Complex z, Complex w) {
  return std::exp(std::conj(z) * w / 2.0 - (std::norm(z) + std::norm(w)) / 4.0);
}

}  // namespace

Kernel Kernel::cantor4(int levels) {
  if (levels < 1 || levels > kMaxLambda4Level) {
    throw ValidationError("Cantor4 truncation level must lie in [1, " +
                          std::to_string(kMaxLambda4Level) + "], got " + std::to_string(levels));
  }
  return Kernel(Cantor4{levels});
}

Kernel Kernel::explicit_gram(CMatrix gram) {
  require_hermitian(gram, kHermitianTol, "explicit Gram matrix");
  return Kernel(ExplicitGram{std::move(gram)});
}

Kernel Kernel::explicit_feature(CMatrix features) {
  RVector weights = RVector::Ones(features.cols());
  return explicit_feature(std::move(features), std::move(weights));
}

Kernel Kernel::explicit_feature(CMatrix features, RVector weights) {
  if (weights.size() != features.cols()) {
    throw ValidationError("feature weights must have one entry per feature column");
  }
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    if (!(weights(k) > 0.0)) throw ValidationError("feature weights must be strictly positive");
  }
  return Kernel(ExplicitFeature{std::move(features), std::move(weights)});
}

std::string Kernel::name() const {
  return std::visit(Overloaded{
                        [](const Szego&) -> std::string { return "szego"; },
                        [](const Bargmann&) -> std::string { return "bargmann"; },
                        [](const Cantor4& c) { return "cantor4:" + std::to_string(c.levels); },
                        [](const Sinc&) -> std::string { return "sinc"; },
                        [](const ExplicitGram& g) { return "gram:" + std::to_string(g.gram.rows()); },
                        [](const ExplicitFeature& f) {
                          return "feature:" + std::to_string(f.features.rows()) + "x" +
                                 std::to_string(f.features.cols());
                        },
                    },
                    kernel_);
}

bool Kernel::real_valued() const {
  return std::visit(Overloaded{
                        [](const Sinc&) { return true; },
                        [](const ExplicitGram& g) { return g.gram.imag().isZero(0.0); },
                        [](const ExplicitFeature& f) { return f.features.imag().isZero(0.0); },
                        [](const auto&) { return false; },
                    },
                    kernel_);
}

void Kernel::check_domain(const Point& p) const {
  std::visit(Overloaded{
                 [&](const Szego&) { disk_point(p, "Szego"); },
                 [&](const Cantor4&) { disk_point(p, "Cantor4"); },
                 [&](const Bargmann&) { plane_point(p); },
                 [&](const Sinc&) { line_point(p); },
                 [&](const ExplicitGram& g) { ground_point(p, g.gram.rows()); },
                 [&](const ExplicitFeature& f) { ground_point(p, f.features.rows()); },
             },
             kernel_);
}

bool Kernel::in_domain(const Point& p) const {
  try {
    check_domain(p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Complex Kernel::operator()(const Point& s, const Point& t) const {
  return std::visit(
      Overloaded{
          [&](const Szego&) {
            const Complex z = disk_point(s, "Szego");
            const Complex w = disk_point(t, "Szego");
            return 1.0 / (1.0 - std::conj(z) * w);
          },
          [&](const Cantor4& c) {
            const Complex z = disk_point(s, "Cantor4");
            const Complex w = disk_point(t, "Cantor4");
            return cantor4_product(std::conj(z) * w, c.levels);
          },
          [&](const Bargmann&) { return bargmann_kernel(plane_point(s), plane_point(t)); },
          [&](const Sinc&) { return Complex(bspace::sinc(line_point(s) - line_point(t)), 0.0); },
          [&](const ExplicitGram& g) {
            const auto i = static_cast<Eigen::Index>(ground_point(s, g.gram.rows()));
            const auto j = static_cast<Eigen::Index>(ground_point(t, g.gram.rows()));
            return g.gram(i, j);
          },
          [&](const ExplicitFeature& f) {
            const auto i = static_cast<Eigen::Index>(ground_point(s, f.features.rows()));
            const auto j = static_cast<Eigen::Index>(ground_point(t, f.features.rows()));
            Complex acc{};
            for (Eigen::Index k = 0; k < f.features.cols(); ++k) {
              acc += f.weights(k) * f.features(i, k) * std::conj(f.features(j, k));
            }
            return acc;
          },
      },
      kernel_);
}

Complex eval_kernel(const Kernel& kernel, const Point& s, const Point& t) { return kernel(s, t); }

double dist_k(const Kernel& kernel, const Point& s, const Point& t) {
  const double sq = kernel(s, s).real() + kernel(t, t).real() - 2.0 * kernel(s, t).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

Complex cantor4_product(Complex u, int levels) {
  Complex prod{1.0, 0.0};
  Complex power = u;  // u^{4^l}
  for (int l = 0; l < levels; ++l) {
    prod *= 1.0 + power;
    power *= power;
    power *= power;
  }
  return prod;
}

Complex cantor4_power_sum(Complex u, int levels) {
  if (levels < 1 || levels > kMaxLambda4Level) throw ValidationError("Cantor4 level out of range");
  const std::vector<Complex> terms = lambda4_monomials(u, levels);
  return pairwise_sum<Complex>(0, terms.size(), [&](std::size_t m) { return terms[m]; });
}

std::string to_string(BoundaryDomain d) {
  switch (d) {
    case BoundaryDomain::Circle:
      return "circle";
    case BoundaryDomain::Plane:
      return "plane";
    case BoundaryDomain::Band:
      return "band";
    case BoundaryDomain::Atoms:
      return "atoms";
  }
  return "unknown";
}

BoundaryExtension BoundaryExtension::canonical(const Kernel& kernel) {
  return std::visit(
      Overloaded{
          [&](const Szego&) { return BoundaryExtension(kernel, BoundaryDomain::Circle, {}); },
          [&](const Cantor4&) { return BoundaryExtension(kernel, BoundaryDomain::Circle, {}); },
          [&](const Bargmann&) { return BoundaryExtension(kernel, BoundaryDomain::Plane, {}); },
          [&](const Sinc&) { return BoundaryExtension(kernel, BoundaryDomain::Band, {}); },
          [&](const ExplicitGram& g) {
            // G = F F^H, so K^B(i, k) = F(i, k) on unit-weight atoms reproduces G.
            const PivotedCholesky chol = pivoted_cholesky(g.gram, 1e-14);
            CMatrix table = chol.factor.leftCols(static_cast<Eigen::Index>(std::max<std::size_t>(chol.rank, 1)));
            return BoundaryExtension(kernel, BoundaryDomain::Atoms, std::move(table));
          },
          [&](const ExplicitFeature& f) {
            return BoundaryExtension(kernel, BoundaryDomain::Atoms, f.features);
          },
      },
      kernel.variant());
}

BoundaryExtension BoundaryExtension::from_atom_table(const Kernel& kernel, CMatrix table) {
  const Eigen::Index rows = std::visit(Overloaded{
                                           [](const ExplicitGram& g) { return g.gram.rows(); },
                                           [](const ExplicitFeature& f) { return f.features.rows(); },
                                           [](const auto&) -> Eigen::Index {
                                             throw ValidationError(
                                                 "atom tables need an explicit (index) kernel");
                                           },
                                       },
                                       kernel.variant());
  if (table.rows() != rows) {
    throw ValidationError("atom table needs one row per ground point (" + std::to_string(rows) +
                          "), got " + std::to_string(table.rows()));
  }
  return BoundaryExtension(kernel, BoundaryDomain::Atoms, std::move(table));
}

bool BoundaryExtension::contains(const Point& b) const {
  switch (domain_) {
    case BoundaryDomain::Circle: {
      const auto* x = std::get_if<RealScalar>(&b);
      return x && x->value >= 0.0 && x->value < 1.0;
    }
    case BoundaryDomain::Band: {
      const auto* x = std::get_if<RealScalar>(&b);
      return x && x->value >= -0.5 && x->value <= 0.5;
    }
    case BoundaryDomain::Plane: {
      if (std::holds_alternative<Index>(b)) return false;
      const Complex z = as_complex(b);
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    }
    case BoundaryDomain::Atoms: {
      const auto* i = std::get_if<Index>(&b);
      return i && i->value < atom_count();
    }
  }
  return false;
}

void BoundaryExtension::check_boundary(const Point& b) const {
  if (!contains(b)) {
    throw DomainError("boundary point " + to_string(b) + " is outside the " + to_string(domain_) +
                      " boundary of " + kernel_.name());
  }
}

Complex BoundaryExtension::operator()(const Point& s, const Point& b) const {
  kernel_.check_domain(s);
  check_boundary(b);
  return std::visit(
      Overloaded{
          [&](const Szego&) {
            const Complex e = exp_i_2pi(as_real(b));
            return 1.0 / (1.0 - std::conj(as_complex(s)) * e);
          },
          [&](const Cantor4& c) {
            const Complex e = exp_i_2pi(as_real(b));
            return cantor4_product(std::conj(as_complex(s)) * e, c.levels);
          },
          [&](const Bargmann&) {
            const Complex z = as_complex(s);
            return std::exp(std::conj(z) * as_complex(b) / 2.0 - std::norm(z) / 4.0);
          },
          [&](const Sinc&) { return exp_i_2pi(-as_real(s) * as_real(b)); },
          [&](const auto&) {
            return table_(static_cast<Eigen::Index>(as_index(s)),
                          static_cast<Eigen::Index>(as_index(b)));
          },
      },
      kernel_.variant());
}

std::optional<TrigPoly> BoundaryExtension::spectrum(const Point& s) const {
  const auto* c = std::get_if<Cantor4>(&kernel_.variant());
  if (c == nullptr) return std::nullopt;
  kernel_.check_domain(s);
  TrigPoly poly;
  poly.freqs = lambda4_enumerate(c->levels).members;
  poly.coeffs = lambda4_monomials(std::conj(as_complex(s)), c->levels);
  return poly;
}

Complex eval_boundary(const BoundaryExtension& ext, const Point& s, const Point& b) { return ext(s, b); }

}  // namespace bspace

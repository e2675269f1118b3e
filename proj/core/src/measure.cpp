#include "bspace/measure.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "bspace/error.hpp"
#include "bspace/quadrature.hpp"
#include "bspace/special.hpp"

namespace bspace {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_depth(int depth) {
  if (depth < 1 || depth > kMaxCantorDepth) {
    throw ValidationError("Cantor IFS depth must lie in [1, " + std::to_string(kMaxCantorDepth) +
                          "], got " + std::to_string(depth));
  }
}

double cantor_node(std::size_t k, int depth) {
  double x = 0.0;
  double scale = 1.0;
  for (int j = 1; j <= depth; ++j) {
    scale *= 0.25;
    if ((k >> (depth - j)) & 1U) x += 2.0 * scale;
  }
  return x;
}

bool node_in_domain(const Point& p, BoundaryDomain d) {
  switch (d) {
    case BoundaryDomain::Circle: {
      const auto* x = std::get_if<RealScalar>(&p);
      return x && x->value >= 0.0 && x->value < 1.0;
    }
    case BoundaryDomain::Band: {
      const auto* x = std::get_if<RealScalar>(&p);
      return x && x->value >= -0.5 && x->value <= 0.5;
    }
    case BoundaryDomain::Plane:
      return !std::holds_alternative<Index>(p);
    case BoundaryDomain::Atoms:
      return std::holds_alternative<Index>(p);
  }
  return false;
}

}  // namespace

QuadMeasure::QuadMeasure(Variant v, double scale) : kind_(std::move(v)), scale_(scale) {
  if (const auto* gh = std::get_if<GaussHermitePlane>(&kind_)) {
    const QuadratureRule rule = gauss_hermite(gh->nodes_per_axis);
    rule_nodes_ = std::make_shared<const std::vector<double>>(rule.nodes);
    rule_weights_ = std::make_shared<const std::vector<double>>(rule.weights);
  } else if (const auto* gl = std::get_if<GaussLegendreBand>(&kind_)) {
    QuadratureRule rule = gauss_legendre(gl->nodes);
    for (auto& x : rule.nodes) x *= 0.5;
    for (auto& w : rule.weights) w *= 0.5;
    rule_nodes_ = std::make_shared<const std::vector<double>>(std::move(rule.nodes));
    rule_weights_ = std::make_shared<const std::vector<double>>(std::move(rule.weights));
  }
}

QuadMeasure QuadMeasure::periodic_uniform(std::size_t n) {
  if (n < 1) throw ValidationError("periodic rule needs at least one node");
  return QuadMeasure(PeriodicUniform{n}, 1.0);
}

QuadMeasure QuadMeasure::gauss_hermite_plane(std::size_t n_per_axis) {
  return QuadMeasure(GaussHermitePlane{n_per_axis}, 1.0);
}

QuadMeasure QuadMeasure::gauss_legendre_band(std::size_t n) { return QuadMeasure(GaussLegendreBand{n}, 1.0); }

QuadMeasure QuadMeasure::cantor_ifs(int depth) {
  check_depth(depth);
  return QuadMeasure(CantorIFS{depth}, 1.0);
}

QuadMeasure QuadMeasure::cantor_exact(int fallback_depth) {
  check_depth(fallback_depth);
  return QuadMeasure(CantorExact{fallback_depth}, 1.0);
}

QuadMeasure QuadMeasure::atomic(std::vector<double> weights) {
  std::vector<Point> nodes;
  nodes.reserve(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) nodes.push_back(Index{k});
  return atomic(std::move(nodes), std::move(weights), BoundaryDomain::Atoms);
}

QuadMeasure QuadMeasure::atomic(std::vector<Point> nodes, std::vector<double> weights, BoundaryDomain domain) {
  if (nodes.size() != weights.size()) throw ValidationError("atomic measure: node/weight count mismatch");
  if (nodes.empty()) throw ValidationError("atomic measure needs at least one atom");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("atomic measure weights must be strictly positive");
  }
  for (const auto& p : nodes) {
    if (!node_in_domain(p, domain)) {
      throw DomainError("atom " + to_string(p) + " is not a point of the " + to_string(domain) + " boundary");
    }
  }
  return QuadMeasure(Atomic{std::move(nodes), std::move(weights), domain}, 1.0);
}

QuadMeasure QuadMeasure::point_mass(double x) {
  return atomic({RealScalar{x}}, {1.0}, BoundaryDomain::Circle);
}

std::string QuadMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const PeriodicUniform& m) { os << "uniform:" << m.nodes; },
                 [&](const GaussHermitePlane& m) { os << "hermite:" << m.nodes_per_axis; },
                 [&](const GaussLegendreBand& m) { os << "band:" << m.nodes; },
                 [&](const CantorIFS& m) { os << "cantor-ifs:" << m.depth; },
                 [&](const CantorExact&) { os << "cantor"; },
                 [&](const Atomic& m) { os << "atomic:" << m.nodes.size() << '@' << to_string(m.domain); },
             },
             kind_);
  if (scale_ != 1.0) os << " x" << scale_;
  return os.str();
}

BoundaryDomain QuadMeasure::domain() const {
  return std::visit(Overloaded{
                        [](const GaussHermitePlane&) { return BoundaryDomain::Plane; },
                        [](const GaussLegendreBand&) { return BoundaryDomain::Band; },
                        [](const Atomic& m) { return m.domain; },
                        [](const auto&) { return BoundaryDomain::Circle; },
                    },
                    kind_);
}

bool QuadMeasure::is_spectral() const { return std::holds_alternative<CantorExact>(kind_); }

std::size_t QuadMeasure::node_count() const {
  return std::visit(Overloaded{
                        [](const PeriodicUniform& m) { return m.nodes; },
                        [](const GaussHermitePlane& m) { return m.nodes_per_axis * m.nodes_per_axis; },
                        [](const GaussLegendreBand& m) { return m.nodes; },
                        [](const CantorIFS& m) { return std::size_t{1} << m.depth; },
                        [](const CantorExact& m) { return std::size_t{1} << m.fallback_depth; },
                        [](const Atomic& m) { return m.nodes.size(); },
                    },
                    kind_);
}

Point QuadMeasure::node(std::size_t k) const {
  return std::visit(Overloaded{
                        [&](const PeriodicUniform& m) -> Point {
                          return RealScalar{static_cast<double>(k) / static_cast<double>(m.nodes)};
                        },
                        [&](const GaussHermitePlane& m) -> Point {
                          const auto& x = *rule_nodes_;
                          return ComplexScalar{Complex(x[k / m.nodes_per_axis], x[k % m.nodes_per_axis])};
                        },
                        [&](const GaussLegendreBand&) -> Point { return RealScalar{(*rule_nodes_)[k]}; },
                        [&](const CantorIFS& m) -> Point { return RealScalar{cantor_node(k, m.depth)}; },
                        [&](const CantorExact& m) -> Point { return RealScalar{cantor_node(k, m.fallback_depth)}; },
                        [&](const Atomic& m) -> Point { return m.nodes.at(k); },
                    },
                    kind_);
}

double QuadMeasure::weight(std::size_t k) const {
  const double w = std::visit(Overloaded{
                                  [&](const PeriodicUniform& m) { return 1.0 / static_cast<double>(m.nodes); },
                                  [&](const GaussHermitePlane& m) {
                                    const auto& w1 = *rule_weights_;
                                    return w1[k / m.nodes_per_axis] * w1[k % m.nodes_per_axis];
                                  },
                                  [&](const GaussLegendreBand&) { return (*rule_weights_)[k]; },
                                  [&](const CantorIFS& m) { return std::ldexp(1.0, -m.depth); },
                                  [&](const CantorExact& m) { return std::ldexp(1.0, -m.fallback_depth); },
                                  [&](const Atomic& m) { return m.weights.at(k); },
                              },
                              kind_);
  return scale_ * w;
}

double QuadMeasure::total_mass() const {
  if (const auto* a = std::get_if<Atomic>(&kind_)) {
    return scale_ * pairwise_sum<double>(0, a->weights.size(), [&](std::size_t k) { return a->weights[k]; });
  }
  // The remaining rules are normalized probability integrators.
  return scale_;
}

QuadMeasure QuadMeasure::scaled(double alpha) const {
  QuadMeasure out = *this;
  out.scale_ *= alpha;
  return out;
}

Complex integrate(const QuadMeasure& measure, const BoundaryIntegrand& f) {
  return pairwise_sum<Complex>(0, measure.node_count(),
                               [&](std::size_t k) { return measure.weight(k) * f(measure.node(k)); });
}

Complex cantor4_fourier_depth(double t, int depth) {
  Complex prod{1.0, 0.0};
  double arg = t;  // t 4^{-j}
  for (int j = 0; j < depth; ++j) {
    prod *= 0.5 * (1.0 + exp_i_pi(arg));
    arg *= 0.25;
  }
  return prod;
}

Complex cantor4_fourier(double t) {
  Complex prod{1.0, 0.0};
  // |1 - (1 + e^{i pi a})/2| <= pi |a| / 2, and the tail of a geometric
  // sequence with ratio 1/4 sums to 4/3 of its first term.
  for (double arg = t; kPi * std::abs(arg) > 1e-17; arg *= 0.25) {
    prod *= 0.5 * (1.0 + exp_i_pi(arg));
  }
  return prod;
}

Complex fourier_transform(const QuadMeasure& measure, double t) {
  if (measure.domain() != BoundaryDomain::Circle) {
    throw DomainError("Fourier transform needs a circle measure, got " + measure.describe());
  }
  return std::visit(Overloaded{
                        [&](const CantorExact&) { return measure.scale() * cantor4_fourier(t); },
                        [&](const CantorIFS& m) { return measure.scale() * cantor4_fourier_depth(t, m.depth); },
                        [&](const auto&) {
                          return integrate(measure, [t](const Point& b) { return exp_i_2pi(t * as_real(b)); });
                        },
                    },
                    measure.variant());
}

Complex integrate_trig(const QuadMeasure& measure, const TrigPoly& p) {
  if (measure.domain() != BoundaryDomain::Circle) {
    throw DomainError("trigonometric integration needs a circle measure, got " + measure.describe());
  }
  if (const auto* u = std::get_if<PeriodicUniform>(&measure.variant())) {
    const auto n = static_cast<std::int64_t>(u->nodes);
    return pairwise_sum<Complex>(0, p.size(), [&](std::size_t k) {
      return p.freqs[k] % n == 0 ? measure.scale() * p.coeffs[k] : Complex{};
    });
  }
  if (std::holds_alternative<Atomic>(measure.variant())) {
    return integrate(measure, [&p](const Point& b) { return p(as_real(b)); });
  }
  return pairwise_sum<Complex>(0, p.size(), [&](std::size_t k) {
    return p.coeffs[k] * fourier_transform(measure, static_cast<double>(p.freqs[k]));
  });
}

QuadMeasure cantor_ifs_nodes(int depth) { return QuadMeasure::cantor_ifs(depth); }

QuadMeasure pushforward(const QuadMeasure& mu2, const MeasurableMap& phi) {
  const auto* atoms = std::get_if<Atomic>(&mu2.variant());
  if (atoms == nullptr || atoms->domain != BoundaryDomain::Atoms) {
    throw ValidationError("pushforward needs an atomic measure on index atoms, got " + mu2.describe());
  }
  std::map<std::size_t, double> mass;
  for (std::size_t k = 0; k < atoms->nodes.size(); ++k) {
    const std::size_t b2 = as_index(atoms->nodes[k]);
    if (b2 >= phi.image.size()) {
      throw ValidationError("measurable map is not total: atom " + std::to_string(b2) + " has no image");
    }
    const std::size_t b1 = phi.image[b2];
    if (b1 >= phi.target_size) {
      throw ValidationError("measurable map sends atom " + std::to_string(b2) + " outside the target");
    }
    mass[b1] += mu2.weight(k);
  }
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (const auto& [b1, m] : mass) {
    nodes.push_back(Index{b1});
    weights.push_back(m);
  }
  return QuadMeasure::atomic(std::move(nodes), std::move(weights), BoundaryDomain::Atoms);
}

QuadMeasure scale_measure(const QuadMeasure& measure, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("measure scale factor must be positive, got " + std::to_string(alpha));
  }
  return measure.scaled(alpha);
}

}  // namespace bspace

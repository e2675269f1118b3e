#include "bspace/special.hpp"

#include <cmath>
#include <sstream>

#include "bspace/error.hpp"
#include "bspace/point.hpp"

namespace bspace {

namespace {

// Reduce x to r in [-1, 1] with x = r + 2m. Exact for doubles.
double reduce_mod2(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return r;
}

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  const double r = reduce_mod2(x);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  const double r = reduce_mod2(x);
  if (r == 0.5 || r == -0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0 || r == -1.0) return -1.0;
  return std::cos(kPi * r);
}

Complex exp_i_pi(double x) { return {cospi(x), sinpi(x)}; }

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return sinpi(x) / (kPi * x);
}

double as_real(const Point& p) {
  if (const auto* r = std::get_if<RealScalar>(&p)) return r->value;
  throw DomainError("expected a real point, got " + to_string(p));
}

Complex as_complex(const Point& p) {
  if (const auto* c = std::get_if<ComplexScalar>(&p)) return c->value;
  if (const auto* r = std::get_if<RealScalar>(&p)) return {r->value, 0.0};
  throw DomainError("expected a complex point, got " + to_string(p));
}

std::size_t as_index(const Point& p) {
  if (const auto* i = std::get_if<Index>(&p)) return i->value;
  throw DomainError("expected an index point, got " + to_string(p));
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RealScalar>) {
          os << v.value;
        } else if constexpr (std::is_same_v<T, ComplexScalar>) {
          os << '[' << v.value.real() << ", " << v.value.imag() << ']';
        } else {
          os << '#' << v.value;
        }
      },
      p);
  return os.str();
}

}  // namespace bspace

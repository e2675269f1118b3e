#include "descriptors.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "config.hpp"

namespace bspace::cli {

namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Descriptor {
  std::string head;
  std::vector<std::string> args;
};

Descriptor split_descriptor(const std::string& text) {
  Descriptor d;
  std::size_t start = 0;
  std::size_t colon = text.find(':');
  d.head = text.substr(0, colon);
  while (colon != std::string::npos) {
    start = colon + 1;
    colon = text.find(':', start);
    d.args.push_back(text.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
  }
  return d;
}

void expect_args(const Descriptor& d, std::size_t lo, std::size_t hi, const std::string& text) {
  if (d.args.size() < lo || d.args.size() > hi) throw CliError(kExitInvalidValue, "malformed descriptor '" + text + "'");
}

std::size_t positive_count(const std::string& text, const std::string& what, std::int64_t max) {
  const std::int64_t v = parse_integer(text, what);
  if (v < 1 || v > max) {
    throw CliError(kExitInvalidValue, what + " must lie in [1, " + std::to_string(max) + "], got " + text);
  }
  return static_cast<std::size_t>(v);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitIo, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError(kExitInvalidValue, "'" + path + "' is not valid JSON: " + e.what());
  }
}

Complex json_complex(const Json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw CliError(kExitMalformedNumber, what + ": expected a number or [re, im], got " + v.dump());
}

bool explicit_kernel(const Kernel& k) {
  return std::holds_alternative<ExplicitGram>(k.variant()) || std::holds_alternative<ExplicitFeature>(k.variant());
}

std::size_t ground_size(const Kernel& k) {
  if (const auto* g = std::get_if<ExplicitGram>(&k.variant())) return static_cast<std::size_t>(g->gram.rows());
  if (const auto* f = std::get_if<ExplicitFeature>(&k.variant())) return static_cast<std::size_t>(f->features.rows());
  return 0;
}

std::vector<Point> grid_points(const Kernel& kernel, std::size_t n) {
  std::vector<Point> pts;
  if (std::holds_alternative<Sinc>(kernel.variant())) {
    for (std::size_t i = 0; i < n; ++i) pts.push_back(real_point(static_cast<double>(i)));
  } else if (explicit_kernel(kernel)) {
    for (std::size_t i = 0; i < n; ++i) pts.push_back(index_point(i));
  } else {
    // Evenly spaced on the real segment [-0.8, 0.8].
    for (std::size_t i = 0; i < n; ++i) {
      const double x = n == 1 ? 0.0 : -0.8 + 1.6 * static_cast<double>(i) / static_cast<double>(n - 1);
      pts.push_back(complex_point({x, 0.0}));
    }
  }
  return pts;
}

std::vector<Point> points_from_object(const Json& doc, const std::string& where) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw CliError(kExitMissingField, where + ": points document needs a \"points\" array");
  }
  const std::string domain = doc.value("domain", std::string("complex"));
  std::vector<Point> pts;
  for (const auto& v : doc["points"]) {
    if (domain == "complex") {
      pts.push_back(complex_point(json_complex(v, where)));
    } else if (domain == "real") {
      if (!v.is_number()) throw CliError(kExitMalformedNumber, where + ": real point expected, got " + v.dump());
      pts.push_back(real_point(v.get<double>()));
    } else if (domain == "index") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw CliError(kExitMalformedNumber, where + ": index point expected, got " + v.dump());
      }
      pts.push_back(index_point(v.get<std::size_t>()));
    } else {
      throw CliError(kExitInvalidValue, where + ": unknown point domain '" + domain + "'");
    }
  }
  if (pts.empty()) throw CliError(kExitInvalidValue, where + ": empty point set");
  return pts;
}

}  // namespace

CMatrix parse_matrix(const Json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw CliError(kExitInvalidValue, what + ": expected a non-empty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows[0].size());
  CMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) {
      throw CliError(kExitInvalidValue, what + ": ragged matrix");
    }
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = json_complex(row[static_cast<std::size_t>(j)], what);
  }
  return out;
}

Kernel parse_kernel(const std::string& text) {
  const Descriptor d = split_descriptor(text);
  if (d.head == "szego" && d.args.empty()) return Kernel::szego();
  if (d.head == "bargmann" && d.args.empty()) return Kernel::bargmann();
  if (d.head == "sinc" && d.args.empty()) return Kernel::sinc();
  if (d.head == "cantor" || d.head == "cantor4") {
    expect_args(d, 0, 1, text);
    return Kernel::cantor4(d.args.empty() ? 6 : static_cast<int>(positive_count(d.args[0], "cantor level", 20)));
  }
  if (d.head == "gram" || d.head == "feature") {
    expect_args(d, 1, 1, text);
    const Json doc = load_json_file(d.args[0]);
    if (d.head == "gram") {
      return Kernel::explicit_gram(parse_matrix(doc.is_object() ? doc.value("gram", Json()) : doc, "gram"));
    }
    if (!doc.is_object() || !doc.contains("features")) {
      throw CliError(kExitMissingField, "'" + d.args[0] + "' needs a \"features\" matrix");
    }
    CMatrix features = parse_matrix(doc["features"], "features");
    if (!doc.contains("weights")) return Kernel::explicit_feature(std::move(features));
    const Json& w = doc["weights"];
    if (!w.is_array()) throw CliError(kExitInvalidValue, "feature weights must be an array");
    RVector weights(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number()) throw CliError(kExitMalformedNumber, "feature weight " + w[i].dump() + " is not a number");
      weights(static_cast<Eigen::Index>(i)) = w[i].get<double>();
    }
    return Kernel::explicit_feature(std::move(features), std::move(weights));
  }
  throw CliError(kExitInvalidValue, "unknown kernel '" + text + "'");
}

std::string default_measure(const Kernel& kernel) {
  return std::visit(Overloaded{
                        [](const Szego&) -> std::string { return "uniform:2048"; },
                        [](const Cantor4&) -> std::string { return "cantor"; },
                        [](const Bargmann&) -> std::string { return "hermite:64"; },
                        [](const Sinc&) -> std::string { return "band:64"; },
                        [](const auto&) -> std::string { return "atoms"; },
                    },
                    kernel.variant());
}

QuadMeasure parse_measure(const std::string& text, const BoundaryExtension& ext) {
  const Descriptor d = split_descriptor(text);
  if (d.head == "uniform") {
    expect_args(d, 1, 1, text);
    return QuadMeasure::periodic_uniform(positive_count(d.args[0], "uniform node count", 1 << 24));
  }
  if (d.head == "hermite") {
    expect_args(d, 1, 1, text);
    return QuadMeasure::gauss_hermite_plane(positive_count(d.args[0], "hermite node count", 400));
  }
  if (d.head == "band") {
    expect_args(d, 1, 1, text);
    return QuadMeasure::gauss_legendre_band(positive_count(d.args[0], "band node count", 1 << 20));
  }
  if (d.head == "cantor") {
    expect_args(d, 0, 0, text);
    return QuadMeasure::cantor_exact();
  }
  if (d.head == "cantor-ifs") {
    expect_args(d, 1, 1, text);
    return QuadMeasure::cantor_ifs(static_cast<int>(positive_count(d.args[0], "cantor-ifs depth", kMaxCantorDepth)));
  }
  if (d.head == "point") {
    expect_args(d, 1, 1, text);
    return QuadMeasure::point_mass(parse_real(d.args[0], "point mass location"));
  }
  if (d.head == "atoms") {
    expect_args(d, 0, 1, text);
    if (d.args.empty()) {
      if (ext.domain() != BoundaryDomain::Atoms) {
        throw CliError(kExitInvalidValue, "bare 'atoms' needs an explicit kernel; give weights as atoms:W1,W2,...");
      }
      std::vector<double> w(ext.atom_count(), 1.0);
      if (const auto* f = std::get_if<ExplicitFeature>(&ext.kernel().variant())) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = f->weights(static_cast<Eigen::Index>(i));
      }
      return QuadMeasure::atomic(std::move(w));
    }
    std::vector<double> w;
    std::size_t start = 0;
    const std::string& list = d.args[0];
    while (start <= list.size()) {
      const std::size_t comma = list.find(',', start);
      w.push_back(parse_real(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start),
                             "atom weight"));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return QuadMeasure::atomic(std::move(w));
  }
  throw CliError(kExitInvalidValue, "unknown measure '" + text + "'");
}

std::string default_points(const Kernel& kernel) {
  return std::visit(Overloaded{
                        [](const Szego&) -> std::string { return "disk:8:0.9"; },
                        [](const Cantor4&) -> std::string { return "disk:6:0.9:2"; },
                        [](const Bargmann&) -> std::string { return "disk:6:2"; },
                        [](const Sinc&) -> std::string { return "grid5"; },
                        [&](const auto&) -> std::string { return "index:" + std::to_string(ground_size(kernel)); },
                    },
                    kernel.variant());
}

std::vector<Point> parse_points(const Json& source, const Kernel& kernel) {
  if (source.is_object()) return points_from_object(source, "inline points");
  if (!source.is_string()) throw CliError(kExitInvalidValue, "points must be a descriptor or a points object");
  const std::string text = source.get<std::string>();

  if (text.rfind("grid", 0) == 0 && text.size() > 4 && text.find('.') == std::string::npos) {
    const std::string count = text[4] == ':' ? text.substr(5) : text.substr(4);
    return grid_points(kernel, positive_count(count, "grid size", 100000));
  }
  const Descriptor d = split_descriptor(text);
  if (d.head == "index" && !d.args.empty()) {
    expect_args(d, 1, 1, text);
    return grid_points(kernel, positive_count(d.args[0], "index count", 100000));
  }
  if (d.head == "disk" && !d.args.empty()) {
    expect_args(d, 1, 3, text);
    const std::size_t n = positive_count(d.args[0], "disk point count", 100000);
    const double r = d.args.size() > 1 ? parse_real(d.args[1], "disk radius") : 0.9;
    if (!(r > 0.0)) throw CliError(kExitInvalidValue, "disk radius must be positive");
    const std::uint64_t seed = d.args.size() > 2 ? static_cast<std::uint64_t>(parse_integer(d.args[2], "disk seed")) : 1;
    // Uniform in the disk of radius r, from a fixed-seed stream.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = r * std::sqrt(u(rng));
      const double theta = 2.0 * kPi * u(rng);
      pts.push_back(complex_point(std::polar(rho, theta)));
    }
    return pts;
  }
  return points_from_object(load_json_file(text), "'" + text + "'");
}

Json point_json(const Point& p) {
  return std::visit(Overloaded{
                        [](const RealScalar& r) { return Json(r.value); },
                        [](const ComplexScalar& c) { return Json::array({c.value.real(), c.value.imag()}); },
                        [](const Index& i) { return Json(i.value); },
                    },
                    p);
}

}  // namespace bspace::cli

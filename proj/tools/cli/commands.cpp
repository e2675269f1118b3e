#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>

#include "bspace/bspace.hpp"
#include "descriptors.hpp"

namespace bspace::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kAntitoneTol = 1e-10;
constexpr double kMarginalTol = 1e-12;
constexpr double kParsevalFloor = -1e-10;
constexpr int kParsevalLevels = 12;

double default_tol(const std::string& command) {
  static const std::map<std::string, double> kTol = {
      {"pd-check", 1e-10},         {"factorize", Tolerances{}.membership}, {"isometry", Tolerances{}.membership},
      {"carleson", 1e-8},          {"adjoint-roundtrip", 1e-9},            {"project", 1e-9},
      {"gp", 0.05},                {"shannon", 1e-3},                      {"cantor-onb", 1e-12},
      {"morphism", 1e-12}};
  return kTol.at(command);
}

struct Setup {
  Kernel kernel;
  BoundaryExtension ext;
  QuadMeasure measure;
  std::shared_ptr<const Section> section;
  ExecutionOptions exec;
  double tol;
};

Setup make_setup(const RunConfig& c, Report& r, const SectionOptions& options = {}) {
  Kernel kernel = parse_kernel(*c.kernel);
  BoundaryExtension ext = BoundaryExtension::canonical(kernel);
  const std::string mdesc = c.measure ? *c.measure : default_measure(kernel);
  QuadMeasure measure = parse_measure(mdesc, ext);
  if (c.scale != 1.0) measure = scale_measure(measure, c.scale);
  const Json psrc = c.points ? *c.points : Json(default_points(kernel));
  auto section = std::make_shared<const Section>(build_section(kernel, parse_points(psrc, kernel), options));

  r.resolved["kernel"] = kernel.name();
  r.resolved["boundary"] = to_string(ext.domain());
  r.resolved["measure"] = measure.describe();
  r.resolved["measure_total_mass"] = measure.total_mass();
  r.resolved["points"] = psrc;
  r.resolved["section_size"] = section->size();
  const double tol = c.tol ? *c.tol : default_tol(c.command);
  r.resolved["tol"] = tol;

  auto& pts = r.table("points", {"index", "re", "im"});
  for (std::size_t i = 0; i < section->size(); ++i) {
    const Point& p = section->points()[i];
    if (const auto* idx = std::get_if<Index>(&p)) {
      pts.add({i, static_cast<double>(idx->value), 0.0});
    } else {
      const Complex z = as_complex(p);
      pts.add({i, z.real(), z.imag()});
    }
  }
  return Setup{std::move(kernel), std::move(ext), std::move(measure), std::move(section), ExecutionOptions{c.threads},
               tol};
}

CVector random_coeffs(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector c(static_cast<Eigen::Index>(n));
  for (auto& x : c) {
    const double re = g(rng);
    x = Complex(re, g(rng));
  }
  return c;
}

void matrix_table(Report& r, const std::string& name, const CMatrix& m) {
  auto& t = r.table(name, {"i", "j", "re", "im"});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t.add({i, j, m(i, j).real(), m(i, j).imag()});
}

Report pd_check_command(const RunConfig& c) {
  Report r;
  // The verdict comes from pd_check below, so section assembly must not
  // reject an indefinite Gram first.
  SectionOptions lenient;
  lenient.psd_tol = 1e300;
  Setup s = make_setup(c, r, lenient);
  const PdVerdict v = pd_check(s.section->gram(), s.tol);
  r.scalars["min_eigenvalue"] = v.min_eigenvalue;
  r.scalars["max_diagonal"] = max_diagonal(s.section->gram());
  r.scalars["threshold"] = v.threshold;
  r.check_at_least("min_eigenvalue", v.min_eigenvalue, v.threshold).tolerance = v.threshold;
  r.outcome = v.pass ? "positive-semidefinite" : "indefinite";
  auto& eig = r.table("eigenvalues", {"index", "eigenvalue"});
  for (Eigen::Index k = 0; k < v.eigenvalues.size(); ++k) eig.add({k, v.eigenvalues(k)});
  matrix_table(r, "gram", s.section->gram());
  return r;
}

Report factorize_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const BoundaryMatrix n = boundary_gram(s.ext, s.measure, *s.section, s.exec);
  const MembershipReport m = membership_defect(n, s.tol);
  r.scalars["defect"] = m.defect;
  r.scalars["carleson_constant"] = m.carleson_constant;
  r.check_less("membership_defect", m.defect, s.tol);
  r.outcome = m.pass ? "member" : "non-member";
  auto& t = r.table("entries", {"i", "j", "gram_re", "gram_im", "boundary_re", "boundary_im", "deviation"});
  const CMatrix& g = s.section->gram();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const Complex nij = n.entries(i, j);
      t.add({i, j, g(i, j).real(), g(i, j).imag(), nij.real(), nij.imag(), std::abs(nij - std::conj(g(i, j)))});
    }
  }
  return r;
}

Report isometry_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const std::size_t trials = c.samples.value_or(100);
  std::mt19937_64 rng(c.seed);
  auto& t = r.table("trials", {"trial", "h_norm_sq", "l2_norm_sq", "defect", "relative_defect"});
  double worst = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const RkhsElement f(s.section, random_coeffs(s.section->size(), rng));
    const double h = h_norm_sq(f);
    const double l2 = l2_norm_sq(s.measure, boundary_transform(f, s.ext));
    const double defect = std::abs(h - l2);
    const double rel = defect / (1.0 + h);
    worst = std::max(worst, rel);
    t.add({k, h, l2, defect, rel});
  }
  r.scalars["trials"] = trials;
  r.scalars["max_relative_defect"] = worst;
  r.check_less("isometry_defect_over_1_plus_norm", worst, s.tol);
  r.outcome = r.pass() ? "isometric" : "not-isometric";
  return r;
}

Report carleson_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const BoundaryMatrix n = boundary_gram(s.ext, s.measure, *s.section, s.exec);
  const CarlesonEstimate est = carleson_constant(n);
  r.scalars["carleson_constant"] = est.constant;
  r.scalars["retained"] = est.retained.size();
  r.scalars["prune_tol"] = Tolerances{}.pencil_prune;
  r.check_close("carleson_constant", est.constant, 1.0, s.tol);
  r.outcome = r.pass() ? "member" : "non-member";
  auto& t = r.table("spectrum", {"index", "eigenvalue"});
  for (Eigen::Index k = 0; k < est.spectrum.size(); ++k) t.add({k, est.spectrum(k)});
  return r;
}

Point probe_point(const Kernel& k, std::size_t i, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (std::holds_alternative<Sinc>(k.variant())) return real_point(-3.0 + 6.0 * u(rng));
  if (const auto* g = std::get_if<ExplicitGram>(&k.variant()))
    return index_point(i % static_cast<std::size_t>(g->gram.rows()));
  if (const auto* f = std::get_if<ExplicitFeature>(&k.variant()))
    return index_point(i % static_cast<std::size_t>(f->features.rows()));
  const double radius = std::holds_alternative<Bargmann>(k.variant()) ? 2.0 : 0.9;
  const double rho = radius * std::sqrt(u(rng));
  return complex_point(std::polar(rho, 2.0 * kPi * u(rng)));
}

Report adjoint_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const std::size_t probes = c.samples.value_or(50);
  std::mt19937_64 rng(c.seed);
  const RkhsElement f(s.section, random_coeffs(s.section->size(), rng));
  const BoundaryFunction ft = boundary_transform(f, s.ext);
  auto& t = r.table("probes", {"probe", "re", "im", "adjoint_re", "adjoint_im", "f_re", "f_im", "error"});
  double worst = 0.0;
  for (std::size_t k = 0; k < probes; ++k) {
    const Point p = probe_point(s.kernel, k, rng);
    const Complex w = adjoint_apply(ft, s.ext, s.measure, p);
    const Complex v = evaluate_element(f, p);
    const double err = std::abs(w - v);
    worst = std::max(worst, err);
    const Complex z = std::holds_alternative<Index>(p) ? Complex(static_cast<double>(as_index(p))) : as_complex(p);
    t.add({k, z.real(), z.imag(), w.real(), w.imag(), v.real(), v.imag(), err});
  }
  r.scalars["probes"] = probes;
  r.scalars["max_error"] = worst;
  r.check_less("adjoint_roundtrip_error", worst, s.tol);
  r.outcome = r.pass() ? "identity-on-span" : "mismatch";
  return r;
}

BoundaryFunction parse_target(const std::string& text, const BoundaryExtension& ext, const Section& section) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "exp" && !arg.empty()) {
    if (ext.domain() != BoundaryDomain::Circle && ext.domain() != BoundaryDomain::Band) {
      throw CliError(kExitInvalidValue, "exp targets need a circle or band boundary");
    }
    return BoundaryFunction::exponential(parse_integer(arg, "--target frequency"));
  }
  if (head == "column" && !arg.empty()) {
    const std::int64_t i = parse_integer(arg, "--target column");
    if (i < 0 || static_cast<std::size_t>(i) >= section.size()) {
      throw CliError(kExitInvalidValue, "--target column out of range");
    }
    return boundary_columns(ext, section)[static_cast<std::size_t>(i)];
  }
  throw CliError(kExitInvalidValue, "unknown target '" + text + "'; use exp:K or column:I");
}

Report project_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const BoundaryFunction target = parse_target(c.target, s.ext, *s.section);
  const Projection p = onto_residual(target, s.ext, s.measure, *s.section, s.exec);
  r.scalars["residual"] = p.residual;
  r.scalars["target_norm"] = p.target_norm;
  r.scalars["dropped_columns"] = p.dropped;

  // Residuals over the nested prefixes of the section.
  auto& prefix = r.table("prefix_residuals", {"size", "residual"});
  double max_increase = 0.0;
  double previous = p.target_norm;
  for (std::size_t n = 1; n <= s.section->size(); ++n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const double res = n == s.section->size()
                           ? p.residual
                           : onto_residual(target, s.ext, s.measure, s.section->restricted(idx), s.exec).residual;
    prefix.add({n, res});
    max_increase = std::max(max_increase, res - previous);
    previous = res;
  }
  r.scalars["max_prefix_increase"] = max_increase;
  r.check_less("antitone_max_increase", max_increase, kAntitoneTol);

  const bool in_span = p.residual <= s.tol * std::max(1.0, p.target_norm);
  r.scalars["in_span"] = in_span;
  r.outcome = in_span ? "in-span" : "outside-span";
  auto& coeffs = r.table("coefficients", {"index", "re", "im"});
  for (Eigen::Index i = 0; i < p.coeffs.size(); ++i) coeffs.add({i, p.coeffs(i).real(), p.coeffs(i).imag()});
  return r;
}

Report gp_command(const RunConfig& c) {
  Report r;
  Setup s = make_setup(c, r);
  const std::size_t n_samples = c.samples.value_or(100000);
  if (n_samples < 2) throw CliError(kExitInvalidValue, "gp needs --samples >= 2");
  const GaussianEnsemble ens = build_ensemble(*s.section, c.seed);
  const SampleBatch batch = sample(ens, n_samples);
  const CMatrix emp = empirical_covariance(batch);
  const CMatrix& g = s.section->gram();
  const double gnorm = g.norm();
  const double defect = gnorm == 0.0 ? 0.0 : (emp - g).norm() / gnorm;

  r.scalars["rank"] = ens.rank;
  r.scalars["real_samples"] = ens.real_samples;
  r.scalars["samples"] = n_samples;
  r.scalars["covariance_defect"] = defect;
  r.check_less("covariance_defect", defect, s.tol);

  auto& marg = r.table("marginals", {"size", "defect"});
  double worst = 0.0;
  for (std::size_t m = 1; m <= s.section->size(); ++m) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    const double d = marginal_defect(ens, idx);
    worst = std::max(worst, d);
    marg.add({m, d});
  }
  r.check_less("marginal_defect", worst, kMarginalTol);
  r.outcome = r.pass() ? "consistent" : "inconsistent";

  auto& t = r.table("covariance", {"i", "j", "empirical_re", "empirical_im", "gram_re", "gram_im", "error"});
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      t.add({i, j, emp(i, j).real(), emp(i, j).imag(), g(i, j).real(), g(i, j).imag(), std::abs(emp(i, j) - g(i, j))});
  return r;
}

Report shannon_command(const RunConfig& c) {
  Report r;
  const double tol = c.tol.value_or(default_tol(c.command));
  const double shift = c.shift;
  const auto f = [shift](double t) { return Complex(sinc(t - shift)); };
  const BandlimitedSamples samples = BandlimitedSamples::from_function(c.terms, f);
  r.resolved["target"] = "sinc(t - shift)";
  r.resolved["tol"] = tol;

  auto& t = r.table("reconstruction", {"t", "reconstructed", "exact", "error", "tail_bound"});
  double worst = 0.0;
  double integer_error = 0.0;
  for (int k = -200; k <= 200; ++k) {
    const double x = static_cast<double>(k) / 100.0;
    const Complex rec = shannon_reconstruct(samples, x);
    const double err = std::abs(rec - f(x));
    worst = std::max(worst, err);
    if (k % 100 == 0) integer_error = std::max(integer_error, err);
    t.add({x, rec.real(), f(x).real(), err, shannon_tail_bound(c.terms, x, shift)});
  }
  r.scalars["max_error"] = worst;
  r.scalars["integer_error"] = integer_error;
  r.check_less("max_error", worst, tol);
  r.check_at_most("integer_error", integer_error, 0.0);
  r.outcome = r.pass() ? "reconstructed" : "inaccurate";
  return r;
}

Report cantor_onb_command(const RunConfig& c) {
  Report r;
  const double tol = c.tol.value_or(default_tol(c.command));
  r.resolved["tol"] = tol;
  const Lambda4Set set = lambda4_enumerate(c.level);
  const CMatrix g = lambda4_orthonormality(set);
  double off = 0.0, diag = 0.0;
  auto& t = r.table("orthonormality", {"lambda_a", "lambda_b", "re", "im"});
  for (Eigen::Index a = 0; a < g.rows(); ++a) {
    for (Eigen::Index b = 0; b < g.cols(); ++b) {
      const Complex v = g(a, b);
      if (a == b) {
        diag = std::max(diag, std::abs(v - 1.0));
      } else {
        off = std::max(off, std::abs(v));
      }
      t.add({set.members[static_cast<std::size_t>(a)], set.members[static_cast<std::size_t>(b)], v.real(), v.imag()});
    }
  }
  const double mu1 = std::abs(cantor4_fourier(1.0));
  r.scalars["set_size"] = set.size();
  r.scalars["max_off_diagonal"] = off;
  r.scalars["max_diagonal_deviation"] = diag;
  r.scalars["mu_hat_1"] = mu1;
  r.check_less("max_off_diagonal", off, tol);
  r.check_at_most("max_diagonal_deviation", diag, tol);
  r.check_less("mu_hat_1", mu1, 1e-14);

  auto& members = r.table("lambda4", {"index", "lambda"});
  for (std::size_t i = 0; i < set.size(); ++i) members.add({i, set.members[i]});

  auto& pars = r.table("parseval", {"level", "defect"});
  double max_increase = -1.0;
  double lo = 1.0, hi = 0.0;
  double previous = 0.0;
  for (int level = 1; level <= kParsevalLevels; ++level) {
    const double d = parseval_defect(c.k, level);
    pars.add({level, d});
    if (level > 1) max_increase = std::max(max_increase, d - previous);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    previous = d;
  }
  r.scalars["parseval_k"] = c.k;
  r.check_at_most("parseval_max_increase", max_increase, 0.0);
  r.check_at_least("parseval_min", lo, kParsevalFloor);
  r.check_at_most("parseval_max", hi, 1.0);
  r.outcome = r.pass() ? "orthonormal" : "not-orthonormal";
  return r;
}

Report morphism_command(const RunConfig& c) {
  Report r;
  const double tol = c.tol.value_or(default_tol(c.command));
  r.resolved["tol"] = tol;
  std::mt19937_64 rng(c.seed);

  std::optional<Kernel> kernel;
  if (c.kernel) {
    kernel = parse_kernel(*c.kernel);
    if (!std::holds_alternative<ExplicitFeature>(kernel->variant())) {
      throw CliError(kExitInvalidValue, "morphism needs a feature kernel");
    }
  }
  std::vector<double> mu1;
  if (c.mu1) {
    mu1 = *c.mu1;
  } else if (kernel) {
    const auto& w = std::get<ExplicitFeature>(kernel->variant()).weights;
    mu1.assign(w.data(), w.data() + w.size());
  } else {
    mu1 = {0.5, 0.5};
  }
  const std::vector<double> mu2 = c.mu2.value_or(std::vector<double>{0.25, 0.25, 0.25, 0.25});
  const std::vector<std::size_t> phi_image = c.phi.value_or(std::vector<std::size_t>{0, 0, 1, 1});
  const MeasurableMap phi{phi_image, mu1.size()};

  if (!kernel) {
    // Three ground points with random features over the atoms of B1.
    CMatrix features(3, static_cast<Eigen::Index>(mu1.size()));
    for (Eigen::Index i = 0; i < features.rows(); ++i) features.row(i) = random_coeffs(mu1.size(), rng).transpose();
    RVector w(static_cast<Eigen::Index>(mu1.size()));
    for (std::size_t i = 0; i < mu1.size(); ++i) w(static_cast<Eigen::Index>(i)) = mu1[i];
    kernel = Kernel::explicit_feature(std::move(features), std::move(w));
  }
  const auto& feat = std::get<ExplicitFeature>(kernel->variant()).features;
  const BoundaryExtension ext1 = BoundaryExtension::from_atom_table(*kernel, feat);
  const QuadMeasure m1 = QuadMeasure::atomic(mu1);
  const QuadMeasure m2 = QuadMeasure::atomic(mu2);
  r.resolved["kernel"] = kernel->name();
  r.resolved["mu1"] = mu1;
  r.resolved["mu2"] = mu2;
  r.resolved["phi"] = phi_image;

  const MorphismVerdict mv = morphism_check(m1, m2, phi, tol);
  r.scalars["max_mass_error"] = mv.max_mass_error;
  r.check_at_most("morphism_mass_error", mv.max_mass_error, tol);

  auto& masses = r.table("masses", {"atom", "mu1", "pushforward"});
  const QuadMeasure pushed = pushforward(m2, phi);
  std::map<std::size_t, double> pushed_mass;
  for (std::size_t k = 0; k < pushed.node_count(); ++k) pushed_mass[as_index(pushed.node(k))] = pushed.weight(k);
  for (std::size_t a = 0; a < mu1.size(); ++a) masses.add({a, mu1[a], pushed_mass.count(a) ? pushed_mass[a] : 0.0});

  if (!mv.pass) {
    r.outcome = "not-a-morphism";
    return r;
  }
  std::vector<Point> ground;
  for (Eigen::Index i = 0; i < feat.rows(); ++i) ground.push_back(index_point(static_cast<std::size_t>(i)));
  auto section = std::make_shared<const Section>(build_section(*kernel, ground));
  const RkhsElement f(section, random_coeffs(section->size(), rng));
  const BoundaryExtension ext2 = pullback_extension(ext1, phi);
  const DiagramDefect d = commuting_diagram_defect(ext1, ext2, m1, m2, phi, f);
  r.scalars["commuting_defect"] = d.commuting;
  r.scalars["w21_isometry_defect"] = d.w21_isometry;
  r.check_less("commuting_defect", d.commuting, tol);
  r.check_less("w21_isometry_defect", d.w21_isometry, tol);

  const BoundaryFunction w1 = boundary_transform(f, ext1);
  const BoundaryFunction w2 = boundary_transform(f, ext2);
  auto& t = r.table("diagram", {"b2", "phi_b2", "w1_re", "w1_im", "w2_re", "w2_im", "error"});
  for (std::size_t b = 0; b < phi_image.size(); ++b) {
    const Complex a = w1(index_point(phi(b)));
    const Complex v = w2(index_point(b));
    t.add({b, phi(b), a.real(), a.imag(), v.real(), v.imag(), std::abs(a - v)});
  }
  r.outcome = r.pass() ? "commutes" : "does-not-commute";
  return r;
}

}  // namespace

Report run(const RunConfig& config) {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> kDispatch = {
      {"pd-check", pd_check_command},     {"factorize", factorize_command},
      {"isometry", isometry_command},     {"carleson", carleson_command},
      {"adjoint-roundtrip", adjoint_command}, {"project", project_command},
      {"gp", gp_command},                 {"shannon", shannon_command},
      {"cantor-onb", cantor_onb_command}, {"morphism", morphism_command}};
  const auto start = std::chrono::steady_clock::now();
  Report r = kDispatch.at(config.command)(config);
  r.config = config;
  if (config.timing) {
    r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    const Report report = run(config);
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) throw CliError(kExitIo, "cannot write '" + *config.out + "'");
      emit(report, file);
      file.flush();
      if (!file) throw CliError(kExitIo, "failed writing '" + *config.out + "'");
    } else {
      emit(report, out);
    }
    return report.pass() ? kExitPass : kExitVerdictFail;
  } catch (const CliError& e) {
    if (e.code() == kExitPass) {
      out << e.what();
      return kExitPass;
    }
    err << "bspace: " << e.what() << '\n';
    return e.code();
  } catch (const DomainError& e) {
    err << "bspace: domain error: " << e.what() << '\n';
    return kExitInvalidValue;
  } catch (const ValidationError& e) {
    err << "bspace: invalid input: " << e.what() << '\n';
    return kExitInvalidValue;
  } catch (const NumericalError& e) {
    err << "bspace: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "bspace: failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace bspace::cli

#include "bspace/boundary_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "bspace/error.hpp"
#include "bspace/linalg.hpp"

namespace bspace {

namespace {

void require_same_boundary(const BoundaryExtension& ext, const QuadMeasure& measure) {
  if (measure.domain() != ext.domain()) {
    throw DomainError("measure " + measure.describe() + " lives on the " + to_string(measure.domain()) +
                      " boundary, extension of " + ext.kernel().name() + " on the " + to_string(ext.domain()));
  }
}

std::map<std::size_t, double> atom_masses(const QuadMeasure& m, const char* which) {
  const auto* atoms = std::get_if<Atomic>(&m.variant());
  if (atoms == nullptr || atoms->domain != BoundaryDomain::Atoms) {
    throw ValidationError(std::string(which) + " must be an atomic measure on index atoms");
  }
  std::map<std::size_t, double> mass;
  for (std::size_t k = 0; k < atoms->nodes.size(); ++k) mass[as_index(atoms->nodes[k])] += m.weight(k);
  return mass;
}

}  // namespace

std::vector<BoundaryFunction> boundary_columns(const BoundaryExtension& ext, const Section& section) {
  // Columns may outlive the caller's extension (boundary_transform keeps them).
  auto shared = std::make_shared<const BoundaryExtension>(ext);
  std::vector<BoundaryFunction> cols;
  cols.reserve(section.size());
  for (const auto& s : section.points()) {
    cols.emplace_back([shared, s](const Point& b) { return (*shared)(s, b); }, ext.spectrum(s));
  }
  return cols;
}

BoundaryMatrix boundary_gram(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                             const ExecutionOptions& exec) {
  require_same_boundary(ext, measure);
  CMatrix n = l2_gram(measure, boundary_columns(ext, section), exec);
  return BoundaryMatrix{section, measure, std::move(n)};
}

MembershipReport membership_defect(const BoundaryMatrix& n, double tol) {
  if (!(tol > 0.0)) throw ValidationError("membership tolerance must be positive");
  MembershipReport report;
  report.tolerance = tol;
  const CMatrix& g = n.section.gram();
  report.defect = g.size() ? (n.entries - g.conjugate()).cwiseAbs().maxCoeff() : 0.0;
  report.carleson_constant = carleson_constant(n).constant;
  report.pass = report.defect < tol;
  return report;
}

MembershipReport membership_defect(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                                   double tol, const ExecutionOptions& exec) {
  return membership_defect(boundary_gram(ext, measure, section, exec), tol);
}

BoundaryFunction boundary_transform(const RkhsElement& f, const BoundaryExtension& ext) {
  auto cols = boundary_columns(ext, f.section());
  const CVector c = f.coeffs();

  std::optional<TrigPoly> spectrum;
  const bool expandable = std::all_of(cols.begin(), cols.end(), [](const auto& u) { return u.spectrum(); });
  if (expandable) {
    spectrum = TrigPoly{};
    for (std::size_t j = 0; j < cols.size(); ++j) {
      *spectrum = *spectrum + cols[j].spectrum()->scaled(c(static_cast<Eigen::Index>(j)));
    }
  }
  auto eval = [cols = std::move(cols), c](const Point& b) {
    Complex acc{};
    for (std::size_t j = 0; j < cols.size(); ++j) acc += c(static_cast<Eigen::Index>(j)) * cols[j](b);
    return acc;
  };
  return BoundaryFunction(std::move(eval), std::move(spectrum));
}

double isometry_defect(const RkhsElement& f, const BoundaryExtension& ext, const QuadMeasure& measure) {
  require_same_boundary(ext, measure);
  const double boundary_norm = l2_norm_sq(measure, boundary_transform(f, ext));
  return std::abs(h_norm_sq(f) - boundary_norm);
}

Complex adjoint_apply(const BoundaryFunction& F, const BoundaryExtension& ext, const QuadMeasure& measure,
                      const Point& s) {
  require_same_boundary(ext, measure);
  const BoundaryFunction column([&ext, s](const Point& b) { return ext(s, b); }, ext.spectrum(s));
  return l2_inner(measure, column, F);
}

CarlesonEstimate carleson_constant(const BoundaryMatrix& n, double prune_tol) {
  // ||f||^2 = c^T G conj(c) = c^H conj(G) c and ||f~||^2 = c^H N c.
  const PencilSpectrum pencil = hermitian_pencil(n.entries, n.section.gram().conjugate(), prune_tol);
  CarlesonEstimate est;
  est.spectrum = pencil.eigenvalues;
  est.retained = pencil.retained;
  est.constant = pencil.eigenvalues(pencil.eigenvalues.size() - 1);
  return est;
}

CarlesonEstimate carleson_constant(const BoundaryExtension& ext, const QuadMeasure& measure, const Section& section,
                                   double prune_tol, const ExecutionOptions& exec) {
  return carleson_constant(boundary_gram(ext, measure, section, exec), prune_tol);
}

namespace {

// Node rules beyond this many matrix entries go through the normal equations.
constexpr double kMaxCoordinateEntries = 5e7;
// Relative norm below which a Gram-Schmidt column counts as dependent.
constexpr double kDependentColumn = 1e-10;

// Coordinates in which the L^2(mu) inner product becomes the Euclidean one:
// weighted node samples, or the Fourier coefficients mapped through a factor
// of the frequency Gram mu^(f_b - f_a). Column j is funcs[j], the last column
// is the target.
std::optional<CMatrix> l2_coordinates(const QuadMeasure& measure, const BoundaryFunction& target,
                                      const std::vector<BoundaryFunction>& funcs) {
  std::vector<const BoundaryFunction*> all;
  for (const auto& f : funcs) all.push_back(&f);
  all.push_back(&target);
  const auto cols = static_cast<Eigen::Index>(all.size());

  bool spectral = measure.is_spectral();
  for (const auto* f : all) spectral = spectral && f->spectrum().has_value();
  if (spectral) {
    std::vector<std::int64_t> freqs;
    for (const auto* f : all) freqs.insert(freqs.end(), f->spectrum()->freqs.begin(), f->spectrum()->freqs.end());
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
    const auto m = static_cast<Eigen::Index>(freqs.size());
    std::map<std::int64_t, Eigen::Index> slot;
    for (Eigen::Index a = 0; a < m; ++a) slot[freqs[static_cast<std::size_t>(a)]] = a;

    std::map<std::int64_t, Complex> mu_hat;
    CMatrix gram(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        const std::int64_t d = freqs[static_cast<std::size_t>(b)] - freqs[static_cast<std::size_t>(a)];
        auto it = mu_hat.find(d);
        if (it == mu_hat.end()) it = mu_hat.emplace(d, fourier_transform(measure, static_cast<double>(d))).first;
        gram(a, b) = it->second;
      }
    }
    // <u, v> = u^H M v with M = F F^H, so F^H u are Euclidean coordinates.
    const PivotedCholesky pc = pivoted_cholesky(gram, 1e-15);
    CMatrix coeffs = CMatrix::Zero(m, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const TrigPoly& p = *all[static_cast<std::size_t>(j)]->spectrum();
      for (std::size_t k = 0; k < p.size(); ++k) coeffs(slot[p.freqs[k]], j) += p.coeffs[k];
    }
    return CMatrix(pc.factor.adjoint() * coeffs);
  }

  const std::size_t nodes = measure.node_count();
  if (static_cast<double>(nodes) * static_cast<double>(cols) > kMaxCoordinateEntries) return std::nullopt;
  CMatrix a(static_cast<Eigen::Index>(nodes), cols);
  for (Eigen::Index j = 0; j < cols; ++j) a.col(j) = all[static_cast<std::size_t>(j)]->sample(measure);
  for (std::size_t k = 0; k < nodes; ++k) a.row(static_cast<Eigen::Index>(k)) *= std::sqrt(measure.weight(k));
  return a;
}

// Gram-Schmidt with one reorthogonalization pass (CGS2) in section order.
// Dependent columns are dropped; every prefix of the section sees the same
// decisions, so the fitted subspaces are nested.
void project_coordinates(const CMatrix& a, Projection& out) {
  const Eigen::Index n = a.cols() - 1;
  const Eigen::Index rows = a.rows();
  CMatrix q(rows, 0);
  CMatrix r = CMatrix::Zero(n, n);
  std::vector<Eigen::Index> kept;

  const auto orthogonalize = [&](CVector& v, CVector& h) {
    h = CVector::Zero(q.cols());
    for (int pass = 0; pass < 2; ++pass) {
      const CVector step = q.adjoint() * v;
      v -= q * step;
      h += step;
    }
  };

  for (Eigen::Index j = 0; j < n; ++j) {
    CVector v = a.col(j);
    const double norm0 = v.norm();
    CVector h;
    orthogonalize(v, h);
    const double norm1 = v.norm();
    if (norm0 > 0.0 && norm1 > kDependentColumn * norm0) {
      const auto k = static_cast<Eigen::Index>(kept.size());
      r.col(k).head(k) = h;
      r(k, k) = norm1;
      q.conservativeResize(Eigen::NoChange, k + 1);
      q.col(k) = v / norm1;
      kept.push_back(j);
    } else {
      out.dropped.push_back(static_cast<std::size_t>(j));
    }
  }
  out.regularized = !out.dropped.empty();

  CVector b = a.col(n);
  CVector y;
  orthogonalize(b, y);
  out.residual = b.norm();
  const auto m = static_cast<Eigen::Index>(kept.size());
  const CVector ck = r.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(y);
  out.coeffs = CVector::Zero(n);
  for (Eigen::Index k = 0; k < m; ++k) out.coeffs(kept[static_cast<std::size_t>(k)]) = ck(k);
}

// Normal equations N c = r by an ordered Cholesky that skips dependent
// columns, with the residual evaluated by direct quadrature.
void project_normal_equations(const BoundaryFunction& F, const std::vector<BoundaryFunction>& cols,
                              const QuadMeasure& measure, const ExecutionOptions& exec, Projection& out) {
  const auto n = static_cast<Eigen::Index>(cols.size());
  const CMatrix normal = l2_gram(measure, cols, exec);
  CVector rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) rhs(j) = l2_inner(measure, cols[static_cast<std::size_t>(j)], F);

  CMatrix chol = CMatrix::Zero(n, n);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double diag = normal(k, k).real();
    for (std::size_t a = 0; a < kept.size(); ++a) {
      const Eigen::Index j = kept[a];
      Complex v = normal(k, j);
      for (std::size_t b = 0; b < a; ++b) v -= chol(k, kept[b]) * std::conj(chol(j, kept[b]));
      chol(k, j) = v / chol(j, j);
    }
    double pivot = diag;
    for (const Eigen::Index j : kept) pivot -= std::norm(chol(k, j));
    if (diag > 0.0 && pivot > kDependentColumn * kDependentColumn * diag) {
      chol(k, k) = std::sqrt(pivot);
      kept.push_back(k);
    } else {
      out.dropped.push_back(static_cast<std::size_t>(k));
    }
  }
  out.regularized = !out.dropped.empty();

  const auto m = static_cast<Eigen::Index>(kept.size());
  CMatrix lk(m, m);
  CVector rk(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    rk(a) = rhs(kept[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < m; ++b) lk(a, b) = chol(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
  }
  const auto lower = lk.triangularView<Eigen::Lower>();
  const CVector ck = lower.adjoint().solve(lower.solve(rk));
  out.coeffs = CVector::Zero(n);
  for (Eigen::Index a = 0; a < m; ++a) out.coeffs(kept[static_cast<std::size_t>(a)]) = ck(a);
  out.residual = std::sqrt(std::max(0.0, l2_residual_sq(measure, F, cols, out.coeffs)));
}

}  // namespace

Projection onto_residual(const BoundaryFunction& F, const BoundaryExtension& ext, const QuadMeasure& measure,
                         const Section& section, const ExecutionOptions& exec) {
  require_same_boundary(ext, measure);
  const auto cols = boundary_columns(ext, section);

  Projection out;
  out.target_norm = std::sqrt(std::max(0.0, l2_norm_sq(measure, F)));
  out.coeffs = CVector::Zero(static_cast<Eigen::Index>(cols.size()));
  if (cols.empty()) {
    out.residual = out.target_norm;
    return out;
  }

  if (const auto coords = l2_coordinates(measure, F, cols)) {
    project_coordinates(*coords, out);
  } else {
    project_normal_equations(F, cols, measure, exec, out);
  }
  if (!(out.residual <= out.target_norm)) {
    // The zero combination is feasible, so rounding must not push us above ||F||.
    out.coeffs.setZero();
    out.residual = out.target_norm;
  }
  return out;
}

MorphismVerdict morphism_check(const QuadMeasure& mu1, const QuadMeasure& mu2, const MeasurableMap& phi, double tol) {
  MorphismVerdict v;
  v.tolerance = tol;
  const auto target = atom_masses(mu1, "mu1");
  const auto image = atom_masses(pushforward(mu2, phi), "pushforward");
  for (const auto& [atom, mass] : target) {
    const auto it = image.find(atom);
    v.max_mass_error = std::max(v.max_mass_error, std::abs(mass - (it == image.end() ? 0.0 : it->second)));
  }
  for (const auto& [atom, mass] : image) {
    if (!target.count(atom)) v.max_mass_error = std::max(v.max_mass_error, mass);
  }
  v.pass = v.max_mass_error <= tol;
  return v;
}

BoundaryExtension pullback_extension(const BoundaryExtension& ext1, const MeasurableMap& phi) {
  if (ext1.domain() != BoundaryDomain::Atoms) throw ValidationError("pullback needs an atomic extension");
  if (phi.target_size != ext1.atom_count()) {
    throw ValidationError("measurable map targets " + std::to_string(phi.target_size) + " atoms, extension has " +
                          std::to_string(ext1.atom_count()));
  }
  const CMatrix& t1 = ext1.atom_table();
  CMatrix t2(t1.rows(), static_cast<Eigen::Index>(phi.image.size()));
  for (std::size_t b = 0; b < phi.image.size(); ++b) {
    if (phi.image[b] >= phi.target_size) throw ValidationError("measurable map leaves its target");
    t2.col(static_cast<Eigen::Index>(b)) = t1.col(static_cast<Eigen::Index>(phi.image[b]));
  }
  return BoundaryExtension::from_atom_table(ext1.kernel(), std::move(t2));
}

DiagramDefect commuting_diagram_defect(const BoundaryExtension& ext1, const BoundaryExtension& ext2,
                                       const QuadMeasure& mu1, const QuadMeasure& mu2, const MeasurableMap& phi,
                                       const RkhsElement& f) {
  const MorphismVerdict morphism = morphism_check(mu1, mu2, phi);
  if (!morphism.pass) {
    throw ValidationError("phi does not push mu2 onto mu1 (mass error " + std::to_string(morphism.max_mass_error) + ")");
  }
  const double tol = Tolerances{}.algebraic;
  if (!membership_defect(ext1, mu1, f.section(), tol).pass) throw ValidationError("(B1, mu1) does not factor K");
  if (!membership_defect(ext2, mu2, f.section(), tol).pass) throw ValidationError("(B2, mu2) does not factor K");

  const BoundaryFunction g1 = boundary_transform(f, ext1);
  const BoundaryFunction g2 = boundary_transform(f, ext2);

  DiagramDefect out;
  for (std::size_t k = 0; k < mu2.node_count(); ++k) {
    const Point b = mu2.node(k);
    const Complex pulled = g1(Index{phi(as_index(b))});
    out.commuting = std::max(out.commuting, std::abs(pulled - g2(b)));
  }
  const double norm2 = integrate(mu2, [&](const Point& b) { return Complex(std::norm(g1(Index{phi(as_index(b))}))); }).real();
  out.w21_isometry = std::abs(norm2 - l2_norm_sq(mu1, g1));
  return out;
}

}  // namespace bspace

#include "projext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "projext/errors.hpp"
#include "projext/sampling.hpp"

namespace projext {

namespace {

double relative_gap(const Operator& a, const Operator& b) {
  const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
  return operator_norm(a - b) / scale;
}

// Products of commuting projections carry rounding noise; snap to the nearest
// projection (zero when the product is numerically empty).
Operator snap_projection(const Operator& x) {
  if (operator_norm(x) < 0.5) {
    return Operator::zero(x.algebra());
  }
  return polish_projection(x);
}

void require_samples(int samples, const char* what) {
  if (samples < 1) {
    throw PreconditionError(std::string(what) + " needs at least one sample");
  }
}

void require_selfadjoint(const Operator& x, const Tolerances& tol) {
  const double scale = std::max(1.0, operator_norm(x));
  if (operator_norm(x - x.adjoint()) > tol.predicate * scale) {
    throw PreconditionError("operator is not self-adjoint");
  }
}

// p dominates s(x); p defaults to the identity.
Operator dominating_projection(const Operator& x,
                               const std::optional<Operator>& p,
                               const Tolerances& tol) {
  Operator q = p ? *p : Operator::identity(x.algebra());
  require_same_algebra(x, q);
  if (!is_projection(q, tol)) {
    throw PreconditionError("p is not a projection");
  }
  if (!projection_leq(support_projection(x, tol), q, tol)) {
    throw PreconditionError("s(x) is not dominated by p");
  }
  return q;
}

std::string sample_context(const char* kind, int index) {
  return std::string(kind) + " sample " + std::to_string(index);
}

}  // namespace

ExtensionProblem::ExtensionProblem(AlgebraDescriptor source,
                                   AlgebraDescriptor target,
                                   LinearMapMatrix u_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      u_map_(std::move(u_map)) {
  if (!(u_map_.domain() == source_) || !(u_map_.codomain() == target_)) {
    throw StructuralError("U does not map the source algebra to the target");
  }
}

ExtensionProblem::ExtensionProblem(LinearMapMatrix u_map)
    : source_(u_map.domain()),
      target_(u_map.codomain()),
      u_map_(std::move(u_map)) {}

bool ExtensionResult::all_passed() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const CertificateReport& c) { return c.passed; });
}

const CertificateReport* ExtensionResult::find(const std::string& name) const {
  for (const CertificateReport& c : certificates) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

HypothesisError::HypothesisError(CertificateReport failing,
                                 BatteryReport report)
    : std::runtime_error("hypothesis violated: " + failing.name +
                         " (residual " + std::to_string(failing.residual) +
                         ")"),
      failing_(std::move(failing)),
      report_(std::move(report)) {}

Operator phi_on_projection(const ExtensionProblem& prob, const Operator& p,
                           const Tolerances& tol) {
  require_same_algebra(prob.source(), p);
  if (!is_projection(p, tol)) {
    throw PreconditionError("phi is only defined on projections");
  }
  if (operator_norm(p) < 0.5) {
    return Operator::zero(prob.target());
  }
  return support_projection(prob.u_map()(p), tol);
}

CertificateReport orthogonal_additivity_check(const ExtensionProblem& prob,
                                              int samples, std::uint64_t seed,
                                              const Tolerances& tol) {
  require_samples(samples, "orthogonal_additivity_check");
  const AlgebraDescriptor& a = prob.source();
  std::vector<std::pair<Operator, Operator>> pairs;
  std::vector<std::string> labels;

  // Distinct diagonal units are pairwise orthogonal, as are distinct central
  // projections.
  std::vector<Operator> diag;
  std::vector<Operator> central;
  for (std::size_t k = 0; k < a.block_count(); ++k) {
    for (int i = 0; i < a.block_dim(k); ++i) {
      diag.push_back(Operator::unit(a, k, i, i));
    }
    central.push_back(Operator::central(a, k));
  }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      pairs.emplace_back(diag[i], diag[j]);
      labels.push_back("diagonal units " + std::to_string(i) + ", " +
                       std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < central.size(); ++i) {
    for (std::size_t j = i + 1; j < central.size(); ++j) {
      pairs.emplace_back(central[i], central[j]);
      labels.push_back("central blocks " + std::to_string(i) + ", " +
                       std::to_string(j));
    }
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    pairs.push_back(random_orthogonal_pair(a, rng));
    labels.push_back(sample_context("random pair", s));
  }

  WorstCase worst;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [p, q] = pairs[i];
    const Operator fp = phi_on_projection(prob, p, tol);
    const Operator fq = phi_on_projection(prob, q, tol);
    const Operator fpq = phi_on_projection(prob, polish_projection(p + q), tol);
    const double r =
        std::max(operator_norm(fpq - fp - fq), operator_norm(fp * fq));
    worst.observe(r, labels[i], {p, q});
  }
  return worst.certificate("orthogonal_additivity", tol.residual);
}

Operator extend_orthospan(const ExtensionProblem& prob, const SpectralForm& x,
                          const Tolerances& tol) {
  if (!(x.algebra() == prob.source())) {
    throw StructuralError("spectral form lives in a different algebra");
  }
  Operator out = Operator::zero(prob.target());
  for (const SpectralTerm& t : x.terms()) {
    out += t.coefficient * phi_on_projection(prob, t.projection, tol);
  }
  return out;
}

Operator extend_selfadjoint(const ExtensionProblem& prob, const Operator& x,
                            const Tolerances& tol) {
  require_same_algebra(prob.source(), x);
  return extend_orthospan(prob, spectral_decomposition(x, tol), tol);
}

CertificateReport welldefinedness_probe(const ExtensionProblem& prob,
                                        const Operator& x, int trials,
                                        std::uint64_t seed,
                                        const Tolerances& tol) {
  require_samples(trials, "welldefinedness_probe");
  require_same_algebra(prob.source(), x);
  const AlgebraDescriptor& a = prob.source();
  const SpectralForm form = spectral_decomposition(x, tol);
  const Operator fx = extend_orthospan(prob, form, tol);
  const Operator kernel = kernel_projection(x, tol);
  const double xn = operator_norm(x);
  auto phi = [&](const Operator& p) { return phi_on_projection(prob, p, tol); };

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WorstCase worst;
  for (int t = 0; t < trials; ++t) {
    // Route B: every spectral projection as a sum of rank-one pieces.
    Operator split = Operator::zero(prob.target());
    std::vector<Operator> pieces;
    for (const SpectralTerm& term : form.terms()) {
      for (const Operator& e : split_rank_one(term.projection, rng)) {
        split += term.coefficient * phi(e);
        pieces.push_back(e);
      }
    }
    for (const Operator& e : split_rank_one(kernel, rng)) {
      pieces.push_back(e);
    }
    const std::string ctx = sample_context("trial", t);
    worst.observe(operator_norm(fx - split) / (1.0 + xn), ctx + ", rank-one split");

    // Route C: y built from random groups of the pieces, so y commutes with x.
    std::shuffle(pieces.begin(), pieces.end(), rng);
    const int groups = std::uniform_int_distribution<int>(
        1, std::max<int>(1, static_cast<int>(pieces.size())))(rng);
    std::vector<Operator> qs(static_cast<std::size_t>(groups),
                             Operator::zero(a));
    for (const Operator& e : pieces) {
      // Roughly a third of the pieces stay outside s(y).
      const int slot = std::uniform_int_distribution<int>(
          0, groups + groups / 2)(rng);
      if (slot < groups) {
        qs[static_cast<std::size_t>(slot)] += e;
      }
    }
    std::vector<SpectralTerm> yterms;
    for (Operator& q : qs) {
      q = snap_projection(q);
      if (operator_norm(q) > 0.5) {
        yterms.push_back({normal(rng), q});
      }
    }
    const SpectralForm yform(a, yterms, tol);
    const Operator y = yform.reconstruct();
    const Operator sy = yform.support();
    const Operator sx = form.support();
    const double yn = operator_norm(y);

    Operator fx_refined = Operator::zero(prob.target());
    Operator fxy_refined = Operator::zero(prob.target());
    for (const SpectralTerm& pi : form.terms()) {
      const Operator si = snap_projection(pi.projection - pi.projection * sy);
      fx_refined += pi.coefficient * phi(si);
      fxy_refined += pi.coefficient * phi(si);
      for (const SpectralTerm& qj : yform.terms()) {
        const Operator rij = snap_projection(pi.projection * qj.projection);
        fx_refined += pi.coefficient * phi(rij);
        fxy_refined += (pi.coefficient + qj.coefficient) * phi(rij);
      }
    }
    for (const SpectralTerm& qj : yform.terms()) {
      const Operator tj = snap_projection(qj.projection - qj.projection * sx);
      fxy_refined += qj.coefficient * phi(tj);
    }
    const Operator fy = extend_orthospan(prob, yform, tol);
    const Operator fxy = extend_selfadjoint(prob, hermitian_part(x + y), tol);
    const double scale = 1.0 + xn + yn;
    worst.observe(operator_norm(fx - fx_refined) / scale,
                  ctx + ", refinement of x", {x, y});
    worst.observe(operator_norm(fxy - fxy_refined) / scale,
                  ctx + ", refinement of x + y", {x, y});
    worst.observe(operator_norm(fxy - fx - fy) / scale,
                  ctx + ", Phi(x + y) vs Phi(x) + Phi(y)", {x, y});
  }
  return worst.certificate("welldefinedness", tol.residual);
}

LinearMapMatrix spectral_route(const ExtensionProblem& prob,
                               const Tolerances& tol) {
  const AlgebraDescriptor& a = prob.source();
  Matrix m(prob.target().total_dim(), a.total_dim());
  const Complex i_unit(0.0, 1.0);
  for (std::size_t k = 0; k < a.block_count(); ++k) {
    const int n = a.block_dim(k);
    const int off = a.vec_offset(k);
    for (int i = 0; i < n; ++i) {
      m.col(off + i + i * n) =
          phi_on_projection(prob, Operator::unit(a, k, i, i), tol).vec();
      for (int j = i + 1; j < n; ++j) {
        const Operator eij = Operator::unit(a, k, i, j);
        const Operator eji = Operator::unit(a, k, j, i);
        const Vector fs = extend_selfadjoint(prob, eij + eji, tol).vec();
        const Vector fa =
            extend_selfadjoint(prob, i_unit * (eij - eji), tol).vec();
        // e_ij = (S - iA)/2, e_ji = (S + iA)/2.
        m.col(off + i + j * n) = 0.5 * (fs - i_unit * fa);
        m.col(off + j + i * n) = 0.5 * (fs + i_unit * fa);
      }
    }
  }
  return LinearMapMatrix(a, prob.target(), std::move(m));
}

LinearMapMatrix chain_route(const ExtensionProblem& prob, std::uint64_t seed,
                            const Tolerances& tol) {
  const AlgebraDescriptor& a = prob.source();
  const int dim = a.total_dim();
  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix xs(dim, dim);
    Matrix ys(prob.target().total_dim(), dim);
    for (int c = 0; c < dim; ++c) {
      const Operator x = random_degenerate_selfadjoint(a, rng);
      Operator image = Operator::zero(prob.target());
      const SpectralForm form = spectral_decomposition(x, tol);
      for (const SpectralTerm& t : form.terms()) {
        const int rank = numerical_rank(t.projection, tol);
        const ProjectionChain chain =
            random_chain(t.projection, std::max(2, rank), rng);
        Operator previous = Operator::zero(a);
        for (const Operator& link : chain.links()) {
          image += t.coefficient *
                   phi_on_projection(prob, snap_projection(link - previous), tol);
          previous = link;
        }
      }
      xs.col(c) = x.vec();
      ys.col(c) = image.vec();
    }
    Eigen::FullPivLU<Matrix> lu(xs);
    if (lu.isInvertible()) {
      return LinearMapMatrix(a, prob.target(), ys * lu.inverse());
    }
  }
  throw PreconditionError("could not draw an invertible self-adjoint basis");
}

LinearMapMatrix corner_route(const ExtensionProblem& prob,
                             const Tolerances& tol) {
  const CornerInverse ci =
      corner_inverse(prob, Operator::identity(prob.source()), tol);
  const LinearMapMatrix& u = prob.u_map();
  return LinearMapMatrix::from_function(
      prob.source(), prob.target(),
      [&](const Operator& x) { return ci.v * u(x) * ci.v; });
}

CertificateReport certificate_ux(const ExtensionProblem& prob,
                                 const LinearMapMatrix& phi, const Operator& x,
                                 const std::optional<Operator>& p,
                                 const Tolerances& tol) {
  require_same_algebra(prob.source(), x);
  require_selfadjoint(x, tol);
  const Operator q = dominating_projection(x, p, tol);
  const Operator ux = prob.u_map()(x);
  const Operator up = prob.u_map()(q);
  const Operator fx = phi(x);
  double r = relative_gap(ux, up * fx);
  std::string ctx = "U(x) = U(p)Phi(x)";
  if (is_positive(up, tol)) {
    const Operator root = positive_sqrt(up, tol);
    r = std::max({r, relative_gap(fx * up, ux), relative_gap(root * fx * root, ux)});
    ctx += ", Phi(x)U(p) = U(x) = U(p)^1/2 Phi(x) U(p)^1/2";
  }
  CertificateReport c = CertificateReport::make("ux_identity", r, tol.residual, ctx);
  c.witnesses = {x, q};
  return c;
}

CertificateReport certificate_range(const ExtensionProblem& prob,
                                    const LinearMapMatrix& phi,
                                    const Operator& x,
                                    const std::optional<Operator>& p,
                                    const Tolerances& tol) {
  require_same_algebra(prob.source(), x);
  require_selfadjoint(x, tol);
  const Operator q = dominating_projection(x, p, tol);
  const Operator r = range_projection(phi(x), tol);
  const Operator fp = phi_on_projection(prob, q, tol);
  CertificateReport c = CertificateReport::make(
      "range", operator_norm(fp * r - r), tol.residual, "r(Phi(x)) <= Phi(p)");
  c.witnesses = {x, q};
  return c;
}

CertificateReport chain_extension(const LinearMapMatrix& phi, const Operator& p,
                                  const ProjectionChain& chain,
                                  const Tolerances& tol) {
  require_same_algebra(p, chain.back());
  if (operator_norm(chain.back() - p) > tol.predicate) {
    throw PreconditionError("chain does not end at p");
  }
  std::vector<Operator> images;
  for (const Operator& q : chain.links()) {
    images.push_back(phi(q));
  }
  double worst = 0.0;
  for (std::size_t j = 1; j < images.size(); ++j) {
    const Operator step = images[j] - images[j - 1];
    worst = std::max({worst, operator_norm(step - step.adjoint()),
                      std::max(0.0, -min_eigenvalue(step))});
  }
  worst = std::max(worst, operator_norm(images.back() - phi(p)));
  CertificateReport c = CertificateReport::make(
      "chain_extension", worst, tol.residual,
      "chain of " + std::to_string(chain.size()) + " links");
  c.witnesses = {p};
  return c;
}

CertificateReport chain_additivity_transfer(const LinearMapMatrix& phi,
                                            const ProjectionChain& chain_p,
                                            const ProjectionChain& chain_q,
                                            const Tolerances& tol) {
  const Operator& p = chain_p.back();
  const Operator& q = chain_q.back();
  require_same_algebra(p, q);
  if (operator_norm(p * q) > tol.predicate) {
    throw PreconditionError("chains do not end at orthogonal projections");
  }
  const std::size_t m = std::max(chain_p.size(), chain_q.size());
  auto link = [](const ProjectionChain& c, std::size_t j) -> const Operator& {
    return c.links()[std::min(j, c.size() - 1)];
  };
  std::vector<Operator> sums;
  CertificateReport c = CertificateReport::make("chain_additivity", 0.0,
                                                tol.residual);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const Operator& pj = link(chain_p, j);
    const Operator& qj = link(chain_q, j);
    sums.push_back(polish_projection(pj + qj));
    const double r = operator_norm(phi(sums.back()) - phi(pj) - phi(qj));
    c.sequence.push_back(r);
    worst = std::max(worst, r);
  }
  // The combined links form an increasing chain ending at p + q.
  const ProjectionChain combined(sums, tol);
  worst = std::max(worst, chain_extension(phi, polish_projection(p + q),
                                          combined, tol)
                              .residual);
  c.residual = worst;
  c.passed = std::isfinite(worst) && worst <= tol.residual;
  c.context = "combined chain of " + std::to_string(m) + " links";
  c.witnesses = {p, q};
  return c;
}

CertificateReport corner_identities(const LinearMapMatrix& phi,
                                    const Operator& p, const Operator& q,
                                    const Tolerances& tol) {
  require_same_algebra(p, q);
  if (!is_projection(p, tol) || !is_projection(q, tol)) {
    throw PreconditionError("corner identities need two projections");
  }
  const Operator fp = phi(p);
  const Operator fq = phi(q);
  const Operator f1 = phi(Operator::identity(p.algebra()));
  const double r = std::max(operator_norm(phi(q * p * q) - fq * fp * fq),
                            operator_norm(f1 * fp * f1 - fp));
  CertificateReport c = CertificateReport::make(
      "corner_identities", r, tol.residual,
      "Phi(qpq) = Phi(q)Phi(p)Phi(q), Phi(1)Phi(p)Phi(1) = Phi(p)");
  c.witnesses = {p, q};
  return c;
}

CertificateReport sot_limit_check(const LinearMapMatrix& phi, const Operator& x,
                                  const ProjectionChain& chain,
                                  const Tolerances& tol) {
  require_same_algebra(x, chain.back());
  if (operator_norm(chain.back() - Operator::identity(x.algebra())) >
      tol.predicate) {
    throw PreconditionError("chain does not end at the identity");
  }
  const Operator fx = phi(x);
  CertificateReport c = CertificateReport::make("sot_limit", 0.0, tol.residual);
  for (const Operator& q : chain.links()) {
    c.sequence.push_back(relative_gap(phi(q * x * q), fx));
  }
  c.residual = c.sequence.back();
  c.passed = std::isfinite(c.residual) && c.residual <= tol.residual;
  c.context = "terminal link of " + std::to_string(chain.size());
  c.witnesses = {x};
  return c;
}

CornerInverse corner_inverse(const ExtensionProblem& prob, const Operator& p,
                             const Tolerances& tol) {
  require_same_algebra(prob.source(), p);
  if (!is_projection(p, tol)) {
    throw PreconditionError("corner_inverse needs a projection");
  }
  const Operator up = hermitian_part(prob.u_map()(p));
  if (!is_positive(up, tol)) {
    BatteryReport battery;
    const double neg = std::max(0.0, -min_eigenvalue(up));
    battery.add("positivity", neg, tol.predicate);
    CertificateReport failing =
        CertificateReport::make("positivity", neg, tol.predicate, "U(p) >= 0");
    failing.witnesses = {p};
    throw HypothesisError(std::move(failing), std::move(battery));
  }
  double lmax = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  for (const Matrix& b : up.blocks()) {
    solvers.emplace_back(b);
    lmax = std::max(lmax, solvers.back().eigenvalues().maxCoeff());
  }
  const double cut = tol.rank_relative * lmax;
  std::vector<Matrix> roots;
  std::vector<Matrix> inverses;
  for (const auto& es : solvers) {
    const Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXd root(ev.size());
    Eigen::VectorXd inv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const bool keep = lmax > 0.0 && ev(i) > cut;
      root(i) = keep ? std::sqrt(ev(i)) : 0.0;
      inv(i) = keep ? 1.0 / std::sqrt(ev(i)) : 0.0;
    }
    const Matrix& v = es.eigenvectors();
    roots.push_back(v * root.cast<Complex>().asDiagonal() * v.adjoint());
    inverses.push_back(v * inv.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return CornerInverse{p, Operator(prob.target(), std::move(inverses)),
                       Operator(prob.target(), std::move(roots))};
}

CertificateReport corner_inverse_certificate(const ExtensionProblem& prob,
                                             const LinearMapMatrix& phi,
                                             const CornerInverse& ci,
                                             const Operator& x,
                                             const Tolerances& tol) {
  require_same_algebra(prob.source(), x);
  if (!projection_leq(support_projection(x, tol), ci.p, tol)) {
    throw PreconditionError("s(x) is not dominated by p");
  }
  const Operator fp = phi_on_projection(prob, ci.p, tol);
  const Operator fx = phi(x);
  const double r = std::max({operator_norm(ci.u_sqrt * ci.v - fp),
                             operator_norm(ci.v * ci.u_sqrt - fp),
                             relative_gap(fx, ci.v * prob.u_map()(x) * ci.v)});
  CertificateReport c = CertificateReport::make(
      "corner_inverse", r, tol.residual,
      "U(p)^1/2 v = Phi(p) = v U(p)^1/2, Phi(x) = v U(x) v");
  c.witnesses = {ci.p, x};
  return c;
}

CertificateReport uniqueness_check(const LinearMapMatrix& a,
                                   const LinearMapMatrix& b,
                                   const Tolerances& tol) {
  return CertificateReport::make("uniqueness", map_distance(a, b), tol.residual,
                                 "map-norm distance");
}

IsometryReport isometry_check(const ExtensionProblem& prob,
                              const LinearMapMatrix& phi, int samples,
                              std::uint64_t seed, const Tolerances& tol) {
  require_samples(samples, "isometry_check");
  const AlgebraDescriptor& a = prob.source();
  Rng rng(seed);
  std::vector<Operator> probes = structural_projections(a);
  for (int s = 0; s < samples; ++s) {
    probes.push_back(random_nonzero_projection(a, rng));
  }
  IsometryReport out;
  for (const Operator& p : probes) {
    if (operator_norm(phi(p)) < 0.5) {
      out.kernel_hypothesis = false;
      out.certificate = CertificateReport::make(
          "isometry", 1.0, tol.residual,
          "not applicable: Phi(p) = 0 for a nonzero projection p");
      out.certificate.witnesses = {p};
      return out;
    }
  }
  WorstCase worst;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_selfadjoint(a, rng);
    const double xn = operator_norm(x);
    worst.observe(std::abs(operator_norm(phi(x)) - xn) / std::max(1.0, xn),
                  sample_context("self-adjoint", s), {x});
  }
  out.certificate = worst.certificate("isometry", tol.residual);
  return out;
}

CertificateReport additivity_certificate(const ExtensionProblem& prob,
                                         int samples, std::uint64_t seed,
                                         const Tolerances& tol) {
  require_samples(samples, "additivity_certificate");
  Rng rng(seed);
  WorstCase worst;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_selfadjoint(prob.source(), rng);
    const Operator y = random_selfadjoint(prob.source(), rng);
    const Operator lhs = extend_selfadjoint(prob, hermitian_part(x + y), tol);
    const Operator rhs =
        extend_selfadjoint(prob, x, tol) + extend_selfadjoint(prob, y, tol);
    worst.observe(operator_norm(lhs - rhs) /
                      (1.0 + operator_norm(x) + operator_norm(y)),
                  sample_context("non-commuting pair", s), {x, y});
  }
  return worst.certificate("additivity_noncommuting", tol.residual);
}

CertificateReport square_preservation_certificate(const LinearMapMatrix& phi,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  const Tolerances& tol) {
  require_samples(samples, "square_preservation_certificate");
  Rng rng(seed);
  WorstCase worst;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_selfadjoint(phi.domain(), rng);
    const Operator fx = phi(x);
    const double xn = operator_norm(x);
    worst.observe(operator_norm(phi(x * x) - fx * fx) / (1.0 + xn * xn),
                  sample_context("self-adjoint", s), {x});
  }
  return worst.certificate("square_preservation", tol.residual);
}

CertificateReport positivity_certificate(const LinearMapMatrix& phi,
                                         int samples, std::uint64_t seed,
                                         const Tolerances& tol) {
  require_samples(samples, "positivity_certificate");
  Rng rng(seed);
  WorstCase worst;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_positive(phi.domain(), rng);
    const Operator fx = phi(x);
    const double skew = operator_norm(fx - fx.adjoint());
    worst.observe(std::max(skew, std::max(0.0, -min_eigenvalue(fx))),
                  sample_context("positive", s), {x});
  }
  return worst.certificate("positivity", tol.residual);
}

CertificateReport contraction_certificate(const LinearMapMatrix& phi,
                                          int samples, std::uint64_t seed,
                                          const Tolerances& tol) {
  require_samples(samples, "contraction_certificate");
  Rng rng(seed);
  WorstCase worst;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_selfadjoint(phi.domain(), rng);
    worst.observe(std::max(0.0, operator_norm(phi(x)) - operator_norm(x)),
                  sample_context("self-adjoint", s), {x});
  }
  return worst.certificate("contraction_sa", tol.contraction_slack);
}

ExtensionResult extend_full(const ExtensionProblem& prob,
                            const ExtendOptions& options) {
  const Tolerances& tol = options.tol;
  const int n = options.samples;
  require_samples(n, "extend_full");
  auto seed = [&](std::uint64_t k) { return derive_seed(options.seed, k); };

  BatteryReport hypotheses;
  const CertificateReport additivity =
      orthogonal_additivity_check(prob, n, seed(0), tol);
  hypotheses.add(additivity.name, additivity.residual, additivity.tolerance);
  const BatteryReport positivity =
      positivity_probe(prob.u_map(), n, seed(1), tol);
  const Check& pos = positivity.checks.front();
  hypotheses.add("u_positivity", pos.residual, pos.tolerance);
  if (!additivity.passed) {
    throw HypothesisError(additivity, hypotheses);
  }
  if (!pos.passed) {
    throw HypothesisError(CertificateReport::make("u_positivity", pos.residual,
                                                  pos.tolerance, "U(x) >= 0"),
                          hypotheses);
  }

  ExtensionResult result{spectral_route(prob, tol), {}, hypotheses};
  if (!options.certificates) {
    return result;
  }
  const LinearMapMatrix& phi = result.phi;
  const AlgebraDescriptor& a = prob.source();
  auto& certs = result.certificates;

  certs.push_back(additivity_certificate(prob, n, seed(2), tol));
  certs.push_back(square_preservation_certificate(phi, n, seed(3), tol));
  certs.push_back(positivity_certificate(phi, n, seed(4), tol));
  certs.push_back(contraction_certificate(phi, n, seed(5), tol));
  for (const Check& c : jordan_battery(phi, n, seed(6), tol).checks) {
    certs.push_back(CertificateReport::make("jordan_battery." + c.name,
                                            c.residual, c.tolerance));
  }

  // Identities that need one sampled operator and a dominating projection.
  Rng rng(seed(7));
  const int few = std::max(1, std::min(n, 10));
  WorstCase ux;
  WorstCase range;
  WorstCase wd;
  WorstCase corners;
  WorstCase sot;
  WorstCase chains;
  WorstCase transfer;
  for (int s = 0; s < few; ++s) {
    const std::string ctx = sample_context("sample", s);
    const Operator p = random_nonzero_projection(a, rng);
    const Operator h = random_selfadjoint(a, rng);
    const Operator x = hermitian_part(p * h * p);
    const Operator full = random_selfadjoint(a, rng);
    for (const auto& [op, proj] :
         {std::pair{x, std::optional<Operator>(p)},
          std::pair{full, std::optional<Operator>()}}) {
      const CertificateReport cu = certificate_ux(prob, phi, op, proj, tol);
      ux.observe(cu.residual, ctx, cu.witnesses);
      const CertificateReport cr = certificate_range(prob, phi, op, proj, tol);
      range.observe(cr.residual, ctx, cr.witnesses);
    }
    const CertificateReport cw = welldefinedness_probe(
        prob, random_degenerate_selfadjoint(a, rng), 2, seed(100 + s), tol);
    wd.observe(cw.residual, ctx + ": " + cw.context, cw.witnesses);

    const Operator q = random_projection(a, rng);
    const CertificateReport cc = corner_identities(phi, p, q, tol);
    corners.observe(cc.residual, ctx, cc.witnesses);

    const Operator one = Operator::identity(a);
    const ProjectionChain to_one = random_chain(one, 4, rng);
    const CertificateReport cs = sot_limit_check(phi, full, to_one, tol);
    sot.observe(cs.residual, ctx, cs.witnesses);

    const CertificateReport ce =
        chain_extension(phi, p, random_chain(p, 3, rng), tol);
    chains.observe(ce.residual, ctx, ce.witnesses);

    const auto [op1, op2] = random_orthogonal_pair(a, rng);
    const CertificateReport ct = chain_additivity_transfer(
        phi, random_chain(op1, 3, rng), random_chain(op2, 3, rng), tol);
    transfer.observe(ct.residual, ctx, ct.witnesses);
  }
  certs.push_back(ux.certificate("ux_identity", tol.residual));
  certs.push_back(range.certificate("range", tol.residual));
  certs.push_back(wd.certificate("welldefinedness", tol.residual));
  certs.push_back(corners.certificate("corner_identities", tol.residual));
  certs.push_back(sot.certificate("sot_limit", tol.residual));
  certs.push_back(chains.certificate("chain_extension", tol.residual));
  certs.push_back(transfer.certificate("chain_additivity", tol.residual));

  // The three constructions of Phi must coincide.
  const LinearMapMatrix via_chain = chain_route(prob, seed(8), tol);
  const LinearMapMatrix via_corner = corner_route(prob, tol);
  const double agreement =
      std::max({map_distance(phi, via_chain), map_distance(phi, via_corner),
                map_distance(via_chain, via_corner)});
  certs.push_back(CertificateReport::make(
      "route_agreement", agreement, tol.residual,
      "spectral, chain and corner constructions"));

  WorstCase inverse;
  for (int s = 0; s < few; ++s) {
    const Operator p = random_nonzero_projection(a, rng);
    const Operator x = hermitian_part(p * random_selfadjoint(a, rng) * p);
    const CertificateReport c =
        corner_inverse_certificate(prob, phi, corner_inverse(prob, p, tol), x, tol);
    inverse.observe(c.residual, sample_context("sample", s), c.witnesses);
  }
  certs.push_back(inverse.certificate("corner_inverse", tol.residual));

  std::vector<MonotoneChain> monotone;
  for (int s = 0; s < few; ++s) {
    monotone.push_back(MonotoneChain::of_projections(
        random_chain(random_nonzero_projection(a, rng), 4, rng)));
  }
  double normal_worst = 0.0;
  for (const Check& c : normality_check(phi, monotone, tol).checks) {
    normal_worst = std::max(normal_worst, c.residual);
  }
  certs.push_back(CertificateReport::make("normality", normal_worst,
                                          tol.residual,
                                          "increasing projection chains"));

  const IsometryReport iso = isometry_check(prob, phi, n, seed(9), tol);
  if (iso.kernel_hypothesis) {
    certs.push_back(iso.certificate);
  }
  return result;
}

}  // namespace projext

#include "projext/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "projext/errors.hpp"
#include "projext/sampling.hpp"

namespace projext {

LinearMapMatrix::LinearMapMatrix(AlgebraDescriptor domain,
                                 AlgebraDescriptor codomain, Matrix matrix)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.total_dim() ||
      matrix_.cols() != domain_.total_dim()) {
    throw StructuralError(
        "map matrix is " + std::to_string(matrix_.rows()) + "x" +
        std::to_string(matrix_.cols()) + ", expected " +
        std::to_string(codomain_.total_dim()) + "x" +
        std::to_string(domain_.total_dim()));
  }
}

LinearMapMatrix LinearMapMatrix::from_function(
    const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
    const std::function<Operator(const Operator&)>& f) {
  Matrix m(codomain.total_dim(), domain.total_dim());
  for (std::size_t k = 0; k < domain.block_count(); ++k) {
    const int n = domain.block_dim(k);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Operator image = f(Operator::unit(domain, k, i, j));
        require_same_algebra(codomain, image);
        m.col(domain.vec_offset(k) + i + j * n) = image.vec();
      }
    }
  }
  return LinearMapMatrix(domain, codomain, std::move(m));
}

LinearMapMatrix LinearMapMatrix::identity(const AlgebraDescriptor& algebra) {
  return LinearMapMatrix(
      algebra, algebra,
      Matrix::Identity(algebra.total_dim(), algebra.total_dim()));
}

LinearMapMatrix LinearMapMatrix::zero(const AlgebraDescriptor& domain,
                                      const AlgebraDescriptor& codomain) {
  return LinearMapMatrix(
      domain, codomain, Matrix::Zero(codomain.total_dim(), domain.total_dim()));
}

LinearMapMatrix LinearMapMatrix::transpose(const AlgebraDescriptor& algebra) {
  return from_function(algebra, algebra, [](const Operator& x) {
    std::vector<Matrix> blocks;
    for (const Matrix& m : x.blocks()) {
      blocks.push_back(m.transpose());
    }
    return Operator(x.algebra(), std::move(blocks));
  });
}

Operator LinearMapMatrix::apply(const Operator& x) const {
  require_same_algebra(domain_, x);
  return Operator::devec(codomain_, matrix_ * x.vec());
}

LinearMapMatrix LinearMapMatrix::compose(const LinearMapMatrix& inner) const {
  if (!(inner.codomain() == domain_)) {
    throw StructuralError("cannot compose: inner codomain differs from domain");
  }
  return LinearMapMatrix(inner.domain(), codomain_, matrix_ * inner.matrix());
}

double map_distance(const LinearMapMatrix& a, const LinearMapMatrix& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
    throw StructuralError("maps have different domain or codomain");
  }
  const Matrix diff = a.matrix() - b.matrix();
  if (diff.size() == 0) {
    return 0.0;
  }
  return Eigen::JacobiSVD<Matrix>(diff).singularValues()(0);
}

double positivity_violation(const Operator& y) {
  const double norm = operator_norm(y);
  if (norm == 0.0) {
    return 0.0;
  }
  const double skew = operator_norm(y - y.adjoint());
  const double negative = std::max(0.0, -min_eigenvalue(y));
  return std::max(skew, negative) / norm;
}

namespace {

// |a - b| relative to the larger of 1, |a|, |b|.
double relative_gap(const Operator& a, const Operator& b) {
  const double scale =
      std::max({1.0, operator_norm(a), operator_norm(b)});
  return operator_norm(a - b) / scale;
}

double projection_defect(const Operator& y) {
  const double scale = std::max(1.0, operator_norm(y));
  return std::max(operator_norm(y - y.adjoint()),
                  operator_norm(y * y - y)) /
         scale;
}

Operator power(const Operator& x, int n) {
  Operator out = x;
  for (int i = 1; i < n; ++i) {
    out = out * x;
  }
  return out;
}

void require_samples(int samples) {
  if (samples < 1) {
    throw PreconditionError("battery needs at least one sample");
  }
}

// Random projections followed by the deterministic structural ones.
std::vector<Operator> projection_samples(const AlgebraDescriptor& algebra,
                                         int samples, Rng& rng) {
  std::vector<Operator> out = structural_projections(algebra);
  for (int s = 0; s < samples; ++s) {
    out.push_back(random_projection(algebra, rng));
  }
  return out;
}

struct Residuals {
  double adjoint = 0.0;
  double jordan = 0.0;
  double powers = 0.0;
  double triple = 0.0;
  double projections = 0.0;
  double orthogonality = 0.0;
  double commuting = 0.0;
  double contraction = 0.0;
  double positive_on_positive = 0.0;
  double square_on_positive = 0.0;
  double square_on_sa = 0.0;
};

}  // namespace

BatteryReport positivity_probe(const LinearMapMatrix& map, int samples,
                               std::uint64_t seed, const Tolerances& tol) {
  require_samples(samples);
  Rng rng(seed);
  const AlgebraDescriptor& a = map.domain();
  double worst = 0.0;
  for (const Operator& p : structural_projections(a)) {
    worst = std::max(worst, positivity_violation(map(p)));
  }
  for (int s = 0; s < samples; ++s) {
    worst = std::max(worst, positivity_violation(map(random_positive(a, rng))));
  }
  BatteryReport report;
  report.add("positivity", worst, tol.residual);
  return report;
}

namespace {

Residuals measure(const LinearMapMatrix& map, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const AlgebraDescriptor& a = map.domain();
  Residuals r;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_gaussian(a, rng);
    const Operator y = random_gaussian(a, rng);
    const Operator mx = map(x);
    const Operator my = map(y);

    r.adjoint = std::max(r.adjoint, relative_gap(map(x.adjoint()), mx.adjoint()));
    r.jordan = std::max(r.jordan, relative_gap(map(jordan_product(x, y)),
                                               jordan_product(mx, my)));
    for (int n = 2; n <= 4; ++n) {
      r.powers = std::max(r.powers, relative_gap(map(power(x, n)), power(mx, n)));
    }
    r.triple = std::max(r.triple, relative_gap(map(x * y * x), mx * my * mx));

    const auto [cx, cy] = random_commuting_pair(a, rng);
    const Operator mcx = map(cx);
    const Operator mcy = map(cy);
    r.commuting = std::max({r.commuting, relative_gap(mcx * mcy, mcy * mcx),
                            relative_gap(map(cx * cy), mcx * mcy)});

    const Operator h = random_selfadjoint(a, rng);
    const Operator mh = map(h);
    const double hn = operator_norm(h);
    r.contraction = std::max(
        r.contraction, std::max(0.0, operator_norm(mh) - hn) / std::max(1.0, hn));
    r.square_on_sa = std::max(r.square_on_sa, relative_gap(map(h * h), mh * mh));

    const Operator pos = random_positive(a, rng);
    const Operator mpos = map(pos);
    r.positive_on_positive =
        std::max(r.positive_on_positive, positivity_violation(mpos));
    r.square_on_positive =
        std::max(r.square_on_positive, relative_gap(map(pos * pos), mpos * mpos));

    const auto [p, q] = random_orthogonal_pair(a, rng);
    const Operator mp = map(p);
    const Operator mq = map(q);
    r.orthogonality = std::max(
        r.orthogonality,
        operator_norm(mp * mq) /
            std::max(1.0, operator_norm(mp) * operator_norm(mq)));
  }
  for (const Operator& p : projection_samples(a, samples, rng)) {
    r.projections = std::max(r.projections, projection_defect(map(p)));
  }
  for (const Operator& p : structural_projections(a)) {
    r.positive_on_positive =
        std::max(r.positive_on_positive, positivity_violation(map(p)));
  }
  return r;
}

}  // namespace

BatteryReport jordan_battery(const LinearMapMatrix& map, int samples,
                             std::uint64_t seed, const Tolerances& tol) {
  require_samples(samples);
  const Residuals r = measure(map, samples, seed);
  const double t = tol.residual;
  BatteryReport report;
  report.add("adjoint", r.adjoint, t);
  report.add("jordan_product", r.jordan, t);
  report.add("powers", r.powers, t);
  report.add("triple_product", r.triple, t);
  report.add("projections", r.projections, t);
  report.add("orthogonality", r.orthogonality, t);
  report.add("commuting", r.commuting, t);
  report.add("contraction_sa", r.contraction, t);
  return report;
}

BatteryReport equivalence_battery(const LinearMapMatrix& map, int samples,
                                  std::uint64_t seed, const Tolerances& tol) {
  require_samples(samples);
  const Residuals r = measure(map, samples, seed);
  const double t = tol.residual;
  BatteryReport report;
  report.add("condition_1", r.projections, t);
  report.add("condition_2", std::max(r.adjoint, r.jordan), t);
  report.add("condition_3",
             std::max(r.positive_on_positive, r.square_on_positive), t);
  report.add("condition_4",
             std::max({r.positive_on_positive, r.square_on_sa, r.contraction}),
             t);
  const bool first = report.checks[0].passed;
  bool agree = true;
  for (std::size_t i = 1; i < 4; ++i) {
    agree = agree && report.checks[i].passed == first;
  }
  report.add_flag("agreement", agree);
  return report;
}

bool equivalence_agrees(const BatteryReport& report) {
  const Check* c = report.find("agreement");
  return c != nullptr && c->passed;
}

MonotoneChain MonotoneChain::of_projections(const ProjectionChain& chain) {
  return MonotoneChain{{chain.links().begin(), chain.links().end()},
                       chain.back()};
}

BatteryReport normality_check(const LinearMapMatrix& map,
                              const std::vector<MonotoneChain>& chains,
                              const Tolerances& tol) {
  BatteryReport report;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const MonotoneChain& chain = chains[c];
    const std::string label = "chain_" + std::to_string(c);
    if (chain.links.empty()) {
      throw PreconditionError(label + ": empty chain");
    }
    for (std::size_t j = 0; j < chain.links.size(); ++j) {
      const Operator& x = chain.links[j];
      if (!is_selfadjoint(x, tol)) {
        throw PreconditionError(label + ": link " + std::to_string(j) +
                                " is not self-adjoint");
      }
      if (j > 0) {
        const Operator step = x - chain.links[j - 1];
        const double scale = std::max(1.0, operator_norm(x));
        if (min_eigenvalue(step) < -tol.predicate * scale) {
          throw PreconditionError(label + ": links " + std::to_string(j - 1) +
                                  " and " + std::to_string(j) +
                                  " are not increasing");
        }
      }
    }
    if (relative_gap(chain.links.back(), chain.supremum) > tol.predicate) {
      throw PreconditionError(label + ": last link differs from the supremum");
    }

    double worst = 0.0;
    std::vector<Operator> images;
    for (const Operator& x : chain.links) {
      images.push_back(map(x));
    }
    for (std::size_t j = 1; j < images.size(); ++j) {
      const Operator step = images[j] - images[j - 1];
      const double scale = std::max(
          {1.0, operator_norm(images[j]), operator_norm(images[j - 1])});
      worst = std::max(worst, operator_norm(step - step.adjoint()) / scale);
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(step)) / scale);
    }
    worst = std::max(worst, relative_gap(images.back(), map(chain.supremum)));
    report.add(label, worst, tol.residual);
  }
  return report;
}

}  // namespace projext

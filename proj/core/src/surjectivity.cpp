#include "projext/surjectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projext/errors.hpp"
#include "projext/sampling.hpp"

namespace projext {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::jordan_isomorphism:
      return "jordan_isomorphism";
    case Verdict::injective_not_surjective:
      return "injective_not_surjective";
    case Verdict::not_injective:
      return "not_injective";
    case Verdict::hypotheses_fail:
      return "hypotheses_fail";
  }
  return "hypotheses_fail";
}

Verdict verdict_from_string(const std::string& name) {
  for (Verdict v : {Verdict::jordan_isomorphism, Verdict::injective_not_surjective,
                    Verdict::not_injective, Verdict::hypotheses_fail}) {
    if (to_string(v) == name) {
      return v;
    }
  }
  throw ParseError("", "unknown verdict '" + name + "'");
}

namespace {

struct Svd {
  Eigen::VectorXd values;
  Matrix u;
  int rank = 0;
};

Svd decompose(const Matrix& m, const Tolerances& tol) {
  Svd out;
  if (m.size() == 0) {
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  out.values = svd.singularValues();
  out.u = svd.matrixU();
  const double cut = tol.rank_relative *
                     (out.values.size() > 0 && out.values(0) > 0.0 ? out.values(0)
                                                                   : 1.0);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    if (out.values(i) > cut) {
      ++out.rank;
    }
  }
  return out;
}

}  // namespace

int map_rank(const LinearMapMatrix& phi, const Tolerances& tol) {
  return decompose(phi.matrix(), tol).rank;
}

double lower_bound_check(const LinearMapMatrix& phi, int samples,
                         std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) {
    throw PreconditionError("lower_bound_check needs at least one sample");
  }
  if (map_rank(phi, tol) < phi.domain().total_dim()) {
    return std::numeric_limits<double>::infinity();
  }
  Rng rng(seed);
  const Operator one = Operator::identity(phi.domain());
  double k = operator_norm(one) / operator_norm(phi(one));
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_gaussian(phi.domain(), rng);
    k = std::max(k, operator_norm(x) / operator_norm(phi(x)));
  }
  return k;
}

CornerInclusion corner_inclusion_check(const LinearMapMatrix& phi, int samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol) {
  if (samples < 1) {
    throw PreconditionError("corner_inclusion_check needs at least one sample");
  }
  const AlgebraDescriptor& a = phi.domain();
  const AlgebraDescriptor& b = phi.codomain();
  const Svd svd = decompose(phi.matrix(), tol);
  const Matrix q = svd.u.leftCols(svd.rank);

  Rng rng(seed);
  std::vector<Operator> probes;
  probes.push_back(Operator::identity(a));
  for (std::size_t k = 0; k < a.block_count(); ++k) {
    probes.push_back(Operator::central(a, k));
  }
  for (int s = 0; s < samples; ++s) {
    probes.push_back(random_projection(a, rng));
  }

  CornerInclusion out;
  for (const Operator& p : probes) {
    const Operator fp = phi(p);
    if (operator_norm(fp) == 0.0) {
      continue;
    }
    for (std::size_t k = 0; k < b.block_count(); ++k) {
      for (int j = 0; j < b.block_dim(k); ++j) {
        for (int i = 0; i < b.block_dim(k); ++i) {
          const Vector t = (fp * Operator::unit(b, k, i, j) * fp).vec();
          const double tn = t.norm();
          if (tn <= tol.rank_relative) {
            continue;
          }
          const Vector r = q.cols() > 0 ? Vector(t - q * (q.adjoint() * t)) : t;
          out.residual = std::max(out.residual, r.norm() / tn);
        }
      }
    }
  }
  out.passed = out.residual <= tol.range_membership;
  return out;
}

SurjectivityReport certify_jordan_isomorphism(const LinearMapMatrix& phi,
                                              int samples, std::uint64_t seed,
                                              const Tolerances& tol) {
  if (samples < 1) {
    throw PreconditionError("certify_jordan_isomorphism needs at least one sample");
  }
  const AlgebraDescriptor& a = phi.domain();
  SurjectivityReport r;
  r.codomain_dim = phi.codomain().total_dim();
  r.range_rank = map_rank(phi, tol);
  r.hypotheses = jordan_battery(phi, samples, derive_seed(seed, 0), tol);

  const Operator one = Operator::identity(a);
  const double unital_defect =
      operator_norm(phi(one) - Operator::identity(phi.codomain()));
  r.unital = unital_defect <= tol.residual;
  r.hypotheses.add("unital", unital_defect, tol.residual);

  Rng rng(derive_seed(seed, 1));
  double iso = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Operator x = random_selfadjoint(a, rng);
    const double xn = operator_norm(x);
    iso = std::max(iso, std::abs(operator_norm(phi(x)) - xn) / std::max(1.0, xn));
  }
  r.isometric_sa = iso <= tol.residual;
  r.hypotheses.add("isometric_sa", iso, tol.residual);

  r.lower_bound_k = lower_bound_check(phi, samples, derive_seed(seed, 2), tol);
  const CornerInclusion corners =
      corner_inclusion_check(phi, samples, derive_seed(seed, 3), tol);
  r.corner_inclusion = corners.passed;
  r.hypotheses.add("corner_inclusion", corners.residual, tol.range_membership);

  bool jordan = true;
  for (const Check& c : r.hypotheses.checks) {
    if (c.name != "unital" && c.name != "isometric_sa" &&
        c.name != "corner_inclusion") {
      jordan = jordan && c.passed;
    }
  }

  if (!jordan) {
    r.verdict = Verdict::hypotheses_fail;
  } else if (r.range_rank < a.total_dim()) {
    r.verdict = Verdict::not_injective;
  } else if (r.range_rank < r.codomain_dim) {
    r.verdict = Verdict::injective_not_surjective;
  } else {
    r.verdict = Verdict::jordan_isomorphism;
    LinearMapMatrix inv(phi.codomain(), a, phi.matrix().inverse());
    r.inverse_battery = jordan_battery(inv, samples, derive_seed(seed, 4),
                                       [&] {
                                         Tolerances t = tol;
                                         t.residual = tol.inverse_battery;
                                         return t;
                                       }());
    r.inverse = std::move(inv);
  }

  if (jordan && r.unital && r.isometric_sa && r.corner_inclusion) {
    r.consistent = r.verdict == Verdict::jordan_isomorphism;
  }
  if (r.verdict == Verdict::jordan_isomorphism) {
    r.consistent = r.consistent && r.unital && r.corner_inclusion &&
                   r.range_rank == r.codomain_dim;
  }
  if (r.isometric_sa && jordan) {
    r.consistent = r.consistent && r.lower_bound_k <= 2.0;
  }
  return r;
}

}  // namespace projext

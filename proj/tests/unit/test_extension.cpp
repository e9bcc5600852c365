#include <gtest/gtest.h>

#include <cmath>

#include "projext/errors.hpp"
#include "projext/extension.hpp"
#include "projext/generators.hpp"
#include "projext/sampling.hpp"

using namespace projext;

namespace {

const AlgebraDescriptor& CC() {
  static const AlgebraDescriptor a({{1, 1.0}, {1, 1.0}});
  return a;
}
const AlgebraDescriptor& M2() {
  static const AlgebraDescriptor a = AlgebraDescriptor::full_matrix(2);
  return a;
}

Operator cc(double a, double b) {
  return Operator(CC(), {Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, b)});
}

Operator d2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return Operator(M2(), {m});
}

// C + C -> M_2, diag(a, b) -> diag(a, 2b).
ExtensionProblem diagonal_toy() {
  return ExtensionProblem(LinearMapMatrix::from_function(
      CC(), M2(), [](const Operator& x) {
        return d2(x.block(0)(0, 0).real(), 2.0 * x.block(1)(0, 0).real()) +
               Complex(0.0, 1.0) *
                   d2(x.block(0)(0, 0).imag(), 2.0 * x.block(1)(0, 0).imag());
      }));
}

InstanceBundle generated(std::uint64_t seed) {
  return random_instance(SpecKind::injective, seed);
}

double dist(const Operator& a, const Operator& b) { return operator_norm(a - b); }

}  // namespace

TEST(ExtensionProblem, ValidatesShapes) {
  const LinearMapMatrix u = LinearMapMatrix::identity(M2());
  EXPECT_THROW(ExtensionProblem(CC(), M2(), u), StructuralError);
  EXPECT_NO_THROW(ExtensionProblem(M2(), M2(), u));
}

TEST(PhiOnProjection, DiagonalToy) {
  const ExtensionProblem prob = diagonal_toy();
  EXPECT_LT(dist(phi_on_projection(prob, cc(1, 0)), d2(1, 0)), 1e-15);
  EXPECT_LT(dist(phi_on_projection(prob, cc(0, 1)), d2(0, 1)), 1e-15);
  EXPECT_EQ(operator_norm(phi_on_projection(prob, cc(0, 0))), 0.0);
  EXPECT_THROW(phi_on_projection(prob, cc(2, 0)), PreconditionError);
}

TEST(OrthogonalAdditivity, GeneratedInstancePasses) {
  const InstanceBundle b = generated(11);
  const CertificateReport c = orthogonal_additivity_check(b.problem, 100, 1);
  EXPECT_TRUE(c.passed);
  EXPECT_LE(c.residual, 1e-9);
}

TEST(OrthogonalAdditivity, DiagonalToyUnitSum) {
  const ExtensionProblem prob = diagonal_toy();
  EXPECT_LT(dist(phi_on_projection(prob, cc(1, 1)),
                 phi_on_projection(prob, cc(1, 0)) + phi_on_projection(prob, cc(0, 1))),
            1e-15);
  EXPECT_TRUE(orthogonal_additivity_check(prob, 20, 1).passed);
}

TEST(OrthogonalAdditivity, RankOneTraceMapFails) {
  Rng rng(3);
  const Operator v = Operator::devec(M2(), gaussian_matrix(4, 1, rng));
  const Operator b = Operator::unit(M2(), 0, 0, 0);
  const ExtensionProblem prob(LinearMapMatrix::from_function(
      M2(), M2(), [&](const Operator& x) { return trace(M2(), x) * b; }));
  const CertificateReport c = orthogonal_additivity_check(prob, 20, 1);
  EXPECT_FALSE(c.passed);
  EXPECT_NEAR(c.residual, 1.0, 1e-12);
  EXPECT_EQ(c.witnesses.size(), 2u);
}

TEST(ExtendOrthospan, Examples) {
  const ExtensionProblem prob = diagonal_toy();
  const Operator p = cc(1, 0);
  EXPECT_LT(dist(extend_orthospan(prob, SpectralForm(CC(), {{1.0, p}})),
                 phi_on_projection(prob, p)),
            1e-15);
  const SpectralForm x(CC(), {{3.0, cc(1, 0)}, {-1.0, cc(0, 1)}});
  EXPECT_LT(dist(extend_orthospan(prob, x), d2(3, -1)), 1e-14);
  EXPECT_EQ(operator_norm(extend_orthospan(prob, SpectralForm(CC()))), 0.0);
}

TEST(ExtendSelfadjoint, SquaresAndContraction) {
  const InstanceBundle b = generated(12);
  Rng rng(4);
  for (int s = 0; s < 50; ++s) {
    const Operator x = random_selfadjoint(b.problem.source(), rng);
    const Operator fx = extend_selfadjoint(b.problem, x);
    const double xn = operator_norm(x);
    EXPECT_LT(dist(extend_selfadjoint(b.problem, x * x), fx * fx),
              1e-8 * (1 + xn * xn));
    EXPECT_LE(operator_norm(fx), xn + 1e-10);
  }
}

TEST(Welldefinedness, Examples) {
  const InstanceBundle b = generated(13);
  const AlgebraDescriptor& a = b.problem.source();
  Rng rng(5);
  const CertificateReport simple =
      welldefinedness_probe(b.problem, random_selfadjoint(a, rng), 3, 1);
  EXPECT_TRUE(simple.passed);
  const CertificateReport one =
      welldefinedness_probe(b.problem, Operator::identity(a), 3, 2);
  EXPECT_TRUE(one.passed);
  const CertificateReport zero =
      welldefinedness_probe(b.problem, Operator::zero(a), 3, 3);
  EXPECT_TRUE(zero.passed);
  EXPECT_LE(zero.residual, 1e-12);
  const CertificateReport degenerate = welldefinedness_probe(
      b.problem, random_degenerate_selfadjoint(a, rng), 5, 4);
  EXPECT_TRUE(degenerate.passed) << degenerate.context << " " << degenerate.residual;
}

TEST(Welldefinedness, IdentitySplitInM2) {
  // x = 1 in M_2 written as e11 + e22 and as p + (1 - p).
  const InstanceBundle b = build_instance(
      JordanSpec{M2(), M2(), {{0, 0, BlockMode::anti}}, Operator::identity(M2())}, 3);
  Rng rng(6);
  const Operator p = split_rank_one(Operator::identity(M2()), rng).front();
  const Operator one = Operator::identity(M2());
  auto phi = [&](const Operator& q) { return phi_on_projection(b.problem, q); };
  EXPECT_LT(dist(phi(Operator::unit(M2(), 0, 0, 0)) + phi(Operator::unit(M2(), 0, 1, 1)),
                 phi(p) + phi(one - p)),
            1e-9);
}

TEST(ExtendFull, DiagonalToyEmbedding) {
  const ExtensionResult r = extend_full(diagonal_toy(), ExtendOptions{50, 1});
  const Operator x = cc(2.5, -4.0);
  EXPECT_LT(dist(r.phi(x), d2(2.5, -4.0)), 1e-14);
  EXPECT_GT(dist(diagonal_toy().u_map()(x), r.phi(x)), 1.0);
  EXPECT_TRUE(r.all_passed());
}

TEST(ExtendFull, RecoversGroundTruth) {
  for (std::uint64_t seed : {42u, 43u, 44u}) {
    const InstanceBundle b = generated(seed);
    const ExtensionResult r = extend_full(b.problem, ExtendOptions{60, seed});
    EXPECT_LE(map_distance(r.phi, b.ground_truth), 1e-8);
    EXPECT_TRUE(r.hypothesis_report.overall);
    EXPECT_FALSE(r.certificates.empty());
    for (const CertificateReport& c : r.certificates) {
      EXPECT_TRUE(c.passed) << c.name << " " << c.residual << " " << c.context;
    }
  }
}

TEST(ExtendFull, IdentityMapOnM2) {
  const ExtensionResult r = extend_full(
      ExtensionProblem(LinearMapMatrix::identity(M2())), ExtendOptions{30, 1});
  EXPECT_LE(map_distance(r.phi, LinearMapMatrix::identity(M2())), 1e-12);
}

TEST(ExtendFull, HypothesisFailureCarriesCertificate) {
  const ExtensionProblem prob(LinearMapMatrix::from_function(
      M2(), M2(), [](const Operator& x) {
        return trace(M2(), x) * Operator::unit(M2(), 0, 0, 0);
      }));
  try {
    extend_full(prob, ExtendOptions{20, 1});
    FAIL() << "expected HypothesisError";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.failing().name, "orthogonal_additivity");
    EXPECT_FALSE(e.failing().passed);
    EXPECT_EQ(e.failing().witnesses.size(), 2u);
    EXPECT_FALSE(e.report().overall);
  }
}

TEST(ExtendFull, NonPositiveUIsAHypothesisFailure) {
  // U = -1 on C: s(U(p)) is additive but U is not positive.
  const AlgebraDescriptor c({{1, 1.0}});
  const ExtensionProblem prob(LinearMapMatrix(c, c, -Matrix::Identity(1, 1)));
  EXPECT_THROW(extend_full(prob, ExtendOptions{10, 1}), HypothesisError);
}

TEST(CertificateUx, Examples) {
  const InstanceBundle b = generated(14);
  const ExtensionResult r = extend_full(b.problem, ExtendOptions{20, 1, {}, false});
  const AlgebraDescriptor& a = b.problem.source();
  Rng rng(7);
  const Operator q = random_nonzero_projection(a, rng);
  EXPECT_TRUE(certificate_ux(b.problem, r.phi, q, q).passed);
  EXPECT_TRUE(certificate_ux(b.problem, r.phi, random_selfadjoint(a, rng)).passed);
  const CertificateReport z =
      certificate_ux(b.problem, r.phi, Operator::zero(a), random_projection(a, rng));
  EXPECT_EQ(z.residual, 0.0);
}

TEST(CertificateUx, RequiresDominatingProjection) {
  const ExtensionProblem prob = diagonal_toy();
  const LinearMapMatrix phi = spectral_route(prob);
  EXPECT_THROW(certificate_ux(prob, phi, cc(1, 1), cc(1, 0)), PreconditionError);
  EXPECT_THROW(certificate_range(prob, phi, cc(0, 3), cc(1, 0)), PreconditionError);
  EXPECT_THROW(certificate_ux(prob, phi, cc(1, 0), cc(2, 0)), PreconditionError);
}

TEST(CertificateRange, Examples) {
  const InstanceBundle b = generated(15);
  const LinearMapMatrix phi = spectral_route(b.problem);
  const AlgebraDescriptor& a = b.problem.source();
  Rng rng(8);
  const Operator p = random_nonzero_projection(a, rng);
  const Operator q = random_subprojection(p, rng);
  EXPECT_TRUE(certificate_range(b.problem, phi, q, p).passed);
  const Operator x = hermitian_part(p * random_selfadjoint(a, rng) * p);
  EXPECT_TRUE(certificate_range(b.problem, phi, x, support_projection(x)).passed);
  EXPECT_TRUE(certificate_range(b.problem, phi, Operator::zero(a), p).passed);
}

TEST(ChainExtension, Examples) {
  const Operator one = Operator::identity(M2());
  const Operator e11 = Operator::unit(M2(), 0, 0, 0);
  const LinearMapMatrix t = LinearMapMatrix::transpose(M2());
  EXPECT_TRUE(chain_extension(t, e11, ProjectionChain({e11})).passed);
  EXPECT_TRUE(chain_extension(t, one, ProjectionChain({e11, one})).passed);
  EXPECT_THROW(chain_extension(t, one, ProjectionChain({e11})), PreconditionError);

  const InstanceBundle b = generated(16);
  Rng rng(9);
  const Operator id = Operator::identity(b.problem.source());
  EXPECT_TRUE(chain_extension(b.ground_truth, id, random_chain(id, 3, rng)).passed);
}

TEST(ChainExtension, AdditivityTransfer) {
  const InstanceBundle b = generated(17);
  Rng rng(10);
  for (int s = 0; s < 10; ++s) {
    const auto [p, q] = random_orthogonal_pair(b.problem.source(), rng);
    const CertificateReport c = chain_additivity_transfer(
        b.ground_truth, random_chain(p, 3, rng), random_chain(q, 2, rng));
    EXPECT_TRUE(c.passed) << c.residual;
    EXPECT_EQ(c.sequence.size(), 3u);
  }
  const Operator one = Operator::identity(M2());
  EXPECT_THROW(chain_additivity_transfer(LinearMapMatrix::identity(M2()),
                                         ProjectionChain({one}),
                                         ProjectionChain({one})),
               PreconditionError);
}

TEST(CornerIdentities, Examples) {
  const InstanceBundle b = generated(18);
  const AlgebraDescriptor& a = b.problem.source();
  Rng rng(11);
  const Operator p = random_projection(a, rng);
  const Operator one = Operator::identity(a);
  EXPECT_TRUE(corner_identities(b.ground_truth, p, one).passed);
  EXPECT_TRUE(corner_identities(b.ground_truth, p, p).passed);
  EXPECT_TRUE(
      corner_identities(b.ground_truth, p, random_projection(a, rng)).passed);
  // A non-Jordan map breaks the identity.
  Matrix w(2, 2);
  w << 1.0, 0.0, 0.0, 2.0;
  const Operator aw(M2(), {w});
  const LinearMapMatrix squeeze = LinearMapMatrix::from_function(
      M2(), M2(), [&](const Operator& x) { return aw * x * aw; });
  EXPECT_FALSE(corner_identities(squeeze, Operator::unit(M2(), 0, 1, 1),
                                 Operator::identity(M2()))
                   .passed);
}

TEST(SotLimit, Examples) {
  const InstanceBundle b = generated(19);
  const AlgebraDescriptor& a = b.problem.source();
  const Operator one = Operator::identity(a);
  Rng rng(12);
  const Operator x = random_selfadjoint(a, rng);
  EXPECT_TRUE(sot_limit_check(b.ground_truth, x, ProjectionChain({one})).passed);
  const Operator p = random_projection(a, rng);
  EXPECT_TRUE(sot_limit_check(b.ground_truth, p, random_chain(one, 3, rng)).passed);
  const CertificateReport c = sot_limit_check(b.ground_truth, x, random_chain(one, 4, rng));
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.sequence.size(), 4u);
  EXPECT_LE(c.sequence.back(), 1e-8);
  EXPECT_THROW(sot_limit_check(b.ground_truth, x, ProjectionChain({p})),
               PreconditionError);
}

TEST(CornerInverse, DiagonalToy) {
  const ExtensionProblem prob = diagonal_toy();
  const CornerInverse ci = corner_inverse(prob, cc(1, 1));
  EXPECT_LT(dist(ci.v, d2(1.0, 1.0 / std::sqrt(2.0))), 1e-15);
  const Operator x = cc(0.7, -3.0);
  EXPECT_LT(dist(ci.v * prob.u_map()(x) * ci.v, d2(0.7, -3.0)), 1e-14);
  EXPECT_TRUE(corner_inverse_certificate(prob, spectral_route(prob), ci, x).passed);
}

TEST(CornerInverse, UnitWeightGivesPhi) {
  const InstanceBundle b = generated(20);
  const ExtensionProblem prob(b.ground_truth);
  Rng rng(13);
  const Operator p = random_nonzero_projection(prob.source(), rng);
  const CornerInverse ci = corner_inverse(prob, p);
  EXPECT_LT(dist(ci.v, phi_on_projection(prob, p)), 1e-9);
}

TEST(CornerInverse, IllConditionedWeight) {
  const InstanceBundle b = generated(21);
  const LinearMapMatrix phi = spectral_route(b.problem);
  Rng rng(14);
  for (int s = 0; s < 10; ++s) {
    const Operator p = random_nonzero_projection(b.problem.source(), rng);
    const Operator x =
        hermitian_part(p * random_selfadjoint(b.problem.source(), rng) * p);
    const CertificateReport c =
        corner_inverse_certificate(b.problem, phi, corner_inverse(b.problem, p), x);
    EXPECT_TRUE(c.passed) << c.residual;
  }
}

TEST(CornerInverse, PreconditionsAndHypotheses) {
  const ExtensionProblem prob = diagonal_toy();
  const CornerInverse ci = corner_inverse(prob, cc(1, 0));
  EXPECT_THROW(corner_inverse_certificate(prob, spectral_route(prob), ci, cc(1, 1)),
               PreconditionError);
  EXPECT_THROW(corner_inverse(prob, cc(3, 0)), PreconditionError);
  const ExtensionProblem negative(
      LinearMapMatrix(CC(), CC(), -Matrix::Identity(2, 2)));
  EXPECT_THROW(corner_inverse(negative, cc(1, 0)), HypothesisError);
}

TEST(Uniqueness, Examples) {
  const InstanceBundle b = generated(22);
  const LinearMapMatrix spectral = spectral_route(b.problem);
  EXPECT_EQ(uniqueness_check(spectral, spectral).residual, 0.0);
  EXPECT_TRUE(uniqueness_check(spectral, corner_route(b.problem)).passed);
  EXPECT_TRUE(uniqueness_check(spectral, chain_route(b.problem, 5)).passed);

  // A unitary twist of a valid extension is still Jordan but differs from Phi.
  const ExtensionProblem tprob(LinearMapMatrix::transpose(M2()));
  const LinearMapMatrix phi_t = spectral_route(tprob);
  Rng rng(15);
  const Operator u = random_unitary(M2(), rng);
  const LinearMapMatrix twisted =
      LinearMapMatrix::from_function(M2(), M2(), [&](const Operator& y) {
        return u * y * u.adjoint();
      }).compose(phi_t);
  const CertificateReport c = uniqueness_check(phi_t, twisted);
  EXPECT_FALSE(c.passed);
  EXPECT_GT(c.residual, 1e-3);
}

TEST(Isometry, Examples) {
  const ExtensionProblem tprob(LinearMapMatrix::transpose(M2()));
  const IsometryReport t =
      isometry_check(tprob, LinearMapMatrix::transpose(M2()), 100, 1);
  EXPECT_TRUE(t.kernel_hypothesis);
  EXPECT_TRUE(t.certificate.passed);
  EXPECT_LE(t.certificate.residual, 1e-12);

  const Operator e11 = Operator::unit(M2(), 0, 0, 0);
  const LinearMapMatrix compress = LinearMapMatrix::from_function(
      M2(), M2(), [&](const Operator& x) { return e11 * x * e11; });
  const IsometryReport c = isometry_check(ExtensionProblem(compress), compress, 100, 1);
  EXPECT_FALSE(c.kernel_hypothesis);
  EXPECT_FALSE(c.certificate.passed);
  EXPECT_NE(c.certificate.context.find("not applicable"), std::string::npos);
  ASSERT_EQ(c.certificate.witnesses.size(), 1u);
  EXPECT_GT(operator_norm(c.certificate.witnesses[0]), 0.5);

  const InstanceBundle b = generated(23);
  const IsometryReport g = isometry_check(b.problem, b.ground_truth, 200, 2);
  EXPECT_TRUE(g.kernel_hypothesis);
  EXPECT_LE(g.certificate.residual, 1e-8);
}

TEST(CertificateConsistency, UxAndRangeImplyAdditivity) {
  const InstanceBundle b = generated(24);
  const ExtensionResult r = extend_full(b.problem, ExtendOptions{20, 2, {}, false});
  Rng rng(16);
  bool all = true;
  for (int s = 0; s < 20; ++s) {
    const Operator x = random_selfadjoint(b.problem.source(), rng);
    all = all && certificate_ux(b.problem, r.phi, x).passed &&
          certificate_range(b.problem, r.phi, x).passed;
  }
  ASSERT_TRUE(all);
  EXPECT_TRUE(additivity_certificate(b.problem, 200, 3).passed);
}

#include <gtest/gtest.h>

#include <algorithm>

#include "projext/errors.hpp"
#include "projext/extension.hpp"
#include "projext/generators.hpp"

using namespace projext;

namespace {

const AlgebraDescriptor& M2() {
  static const AlgebraDescriptor a = AlgebraDescriptor::full_matrix(2);
  return a;
}

}  // namespace

TEST(BlockMode, RoundTrips) {
  EXPECT_EQ(block_mode_from_string(to_string(BlockMode::anti)), BlockMode::anti);
  EXPECT_EQ(block_mode_from_string(to_string(BlockMode::homomorphic)),
            BlockMode::homomorphic);
  EXPECT_THROW(block_mode_from_string("twisted"), ParseError);
}

TEST(BuildJordan, Examples) {
  const Operator one = Operator::identity(M2());
  EXPECT_EQ(map_distance(build_jordan(JordanSpec{M2(), M2(), {{0, 0, BlockMode::homomorphic}}, one}),
                         LinearMapMatrix::identity(M2())),
            0.0);
  EXPECT_EQ(map_distance(build_jordan(JordanSpec{M2(), M2(), {{0, 0, BlockMode::anti}}, one}),
                         LinearMapMatrix::transpose(M2())),
            0.0);

  const AlgebraDescriptor tgt({{2, 1.0}, {2, 1.0}});
  const LinearMapMatrix d = build_jordan(JordanSpec{
      M2(), tgt, {{0, 0, BlockMode::homomorphic}, {0, 1, BlockMode::anti}},
      Operator::identity(tgt)});
  const Operator e01 = Operator::unit(M2(), 0, 0, 1);
  EXPECT_EQ(operator_norm(d(e01) - Operator::unit(tgt, 0, 0, 1) -
                          Operator::unit(tgt, 1, 1, 0)),
            0.0);
}

TEST(JordanSpec, Validation) {
  const Operator one = Operator::identity(M2());
  EXPECT_THROW(JordanSpec({M2(), M2(), {{1, 0, BlockMode::homomorphic}}, one}).validate(),
               StructuralError);
  EXPECT_THROW(JordanSpec({M2(), M2(),
                           {{0, 0, BlockMode::homomorphic}, {0, 0, BlockMode::homomorphic}},
                           one})
                   .validate(),
               StructuralError);
  EXPECT_THROW(JordanSpec({M2(), M2(), {{0, 0, BlockMode::homomorphic}}, 2.0 * one}).validate(),
               PreconditionError);
  EXPECT_THROW(JordanSpec({M2(), M2(), {{0, 0, BlockMode::homomorphic}},
                           Operator::identity(AlgebraDescriptor::full_matrix(3))})
                   .validate(),
               StructuralError);
}

TEST(BuildInstance, BundleInvariants) {
  for (SpecKind kind : {SpecKind::injective, SpecKind::surjective,
                        SpecKind::non_surjective, SpecKind::non_injective}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const InstanceBundle b = random_instance(kind, seed);
      EXPECT_LE(b.problem.source().total_dim(), 16);
      EXPECT_LE(b.problem.target().total_dim(), 16);
      EXPECT_TRUE(is_positive(b.h));
      EXPECT_GT(min_eigenvalue(b.h), 0.0);
      Rng rng(seed);
      for (int s = 0; s < 100; ++s) {
        const Operator p = random_projection(b.problem.source(), rng);
        const Operator jp = b.ground_truth(p);
        EXPECT_LT(operator_norm(b.h * jp - jp * b.h), 1e-9);
        EXPECT_LT(operator_norm(phi_on_projection(b.problem, p) - jp), 1e-9);
      }
    }
  }
}

TEST(BuildInstance, Deterministic) {
  const InstanceBundle a = random_instance(SpecKind::injective, 42);
  const InstanceBundle b = random_instance(SpecKind::injective, 42);
  EXPECT_EQ(map_distance(a.problem.u_map(), b.problem.u_map()), 0.0);
  EXPECT_EQ(operator_norm(a.h - b.h), 0.0);
}

TEST(BuildInstance, Seed42Recovery) {
  const InstanceBundle b = random_instance(SpecKind::injective, 42);
  const ExtensionResult r = extend_full(b.problem, ExtendOptions{100, 42});
  EXPECT_LE(map_distance(r.phi, b.ground_truth), 1e-8);
}

TEST(RandomSpec, KindsHaveTheirShape) {
  Rng rng(7);
  for (int s = 0; s < 30; ++s) {
    const JordanSpec surj = random_spec(SpecKind::surjective, rng);
    EXPECT_EQ(surj.source.total_dim(), surj.target.total_dim());
    EXPECT_EQ(surj.assignments.size(), surj.source.block_count());

    const JordanSpec ni = random_spec(SpecKind::non_injective, rng);
    std::vector<bool> used(ni.source.block_count(), false);
    for (const BlockAssignment& a : ni.assignments) used[a.source_block] = true;
    EXPECT_NE(std::find(used.begin(), used.end(), false), used.end());
  }
}

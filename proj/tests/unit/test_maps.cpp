#include <gtest/gtest.h>

#include "projext/errors.hpp"
#include "projext/maps.hpp"
#include "projext/sampling.hpp"

using namespace projext;

namespace {

const AlgebraDescriptor& M2() {
  static const AlgebraDescriptor a = AlgebraDescriptor::full_matrix(2);
  return a;
}

LinearMapMatrix conjugation(const Operator& a) {
  return LinearMapMatrix::from_function(
      a.algebra(), a.algebra(), [&](const Operator& x) { return a * x * a.adjoint(); });
}

bool passed(const BatteryReport& r, const std::string& name) {
  const Check* c = r.find(name);
  EXPECT_NE(c, nullptr) << name;
  return c != nullptr && c->passed;
}

}  // namespace

TEST(LinearMapMatrix, ShapeIsChecked) {
  EXPECT_THROW(LinearMapMatrix(M2(), M2(), Matrix::Zero(4, 3)), StructuralError);
  EXPECT_NO_THROW(LinearMapMatrix(M2(), M2(), Matrix::Zero(4, 4)));
}

TEST(Apply, Examples) {
  Rng rng(1);
  const Operator x = random_gaussian(M2(), rng);
  EXPECT_EQ(operator_norm(LinearMapMatrix::identity(M2())(x) - x), 0.0);
  EXPECT_EQ(operator_norm(LinearMapMatrix::zero(M2(), M2())(x)), 0.0);
  EXPECT_EQ(operator_norm(LinearMapMatrix::transpose(M2())(Operator::unit(M2(), 0, 0, 1)) -
                          Operator::unit(M2(), 0, 1, 0)),
            0.0);
  const AlgebraDescriptor other = AlgebraDescriptor::full_matrix(3);
  EXPECT_THROW(LinearMapMatrix::identity(M2())(Operator::identity(other)),
               StructuralError);
}

TEST(Apply, IsLinear) {
  const AlgebraDescriptor a({{1, 1.0}, {2, 2.0}});
  Rng rng(2);
  const LinearMapMatrix m(a, a, gaussian_matrix(a.total_dim(), a.total_dim(), rng));
  for (int s = 0; s < 20; ++s) {
    const Operator x = random_gaussian(a, rng);
    const Operator y = random_gaussian(a, rng);
    const Complex al(0.3, -1.2);
    const Complex be(2.0, 0.5);
    EXPECT_LT(operator_norm(m(al * x + be * y) - al * m(x) - be * m(y)), 1e-12);
  }
}

TEST(PositivityProbe, Examples) {
  EXPECT_TRUE(positivity_probe(LinearMapMatrix::transpose(M2()), 100, 1).overall);
  EXPECT_TRUE(positivity_probe(LinearMapMatrix::identity(M2()), 100, 1).overall);
  // x -> x - tr(x) 1 sends e11 to -e22.
  const LinearMapMatrix bad = LinearMapMatrix::from_function(
      M2(), M2(), [](const Operator& x) {
        return x - trace(M2(), x) * Operator::identity(M2());
      });
  const BatteryReport r = positivity_probe(bad, 100, 1);
  EXPECT_FALSE(r.overall);
  EXPECT_NEAR(positivity_violation(bad(Operator::unit(M2(), 0, 0, 0))), 1.0, 1e-15);
}

TEST(JordanBattery, TransposeAndIdentityPassEveryItem) {
  for (const LinearMapMatrix& m :
       {LinearMapMatrix::transpose(M2()), LinearMapMatrix::identity(M2())}) {
    const BatteryReport r = jordan_battery(m, 200, 3);
    EXPECT_EQ(r.checks.size(), 8u);
    EXPECT_TRUE(r.overall);
  }
}

TEST(JordanBattery, CompressionFailsJordanAndProjectionItems) {
  Matrix a(2, 2);
  a << 1.0, 0.0, 0.0, 2.0;
  const LinearMapMatrix m = conjugation(Operator(M2(), {a}));
  const BatteryReport r = jordan_battery(m, 200, 3);
  EXPECT_FALSE(r.overall);
  EXPECT_FALSE(passed(r, "jordan_product"));
  EXPECT_FALSE(passed(r, "projections"));
  // Item (5) on p = e22: the image 4 e22 is not a projection.
  const Operator img = m(Operator::unit(M2(), 0, 1, 1));
  EXPECT_FALSE(is_projection(img));
  EXPECT_NEAR(operator_norm(img), 4.0, 1e-15);
}

TEST(JordanBattery, RequiresSamples) {
  EXPECT_THROW(jordan_battery(LinearMapMatrix::identity(M2()), 0, 1),
               PreconditionError);
}

TEST(EquivalenceBattery, Examples) {
  const BatteryReport t = equivalence_battery(LinearMapMatrix::transpose(M2()), 200, 4);
  for (const char* c : {"condition_1", "condition_2", "condition_3", "condition_4"}) {
    EXPECT_TRUE(passed(t, c)) << c;
  }
  EXPECT_TRUE(equivalence_agrees(t));

  const LinearMapMatrix twice(M2(), M2(), 2.0 * Matrix::Identity(4, 4));
  const BatteryReport d = equivalence_battery(twice, 200, 4);
  for (const char* c : {"condition_1", "condition_2", "condition_3", "condition_4"}) {
    EXPECT_FALSE(passed(d, c)) << c;
  }
  EXPECT_TRUE(equivalence_agrees(d));

  const AlgebraDescriptor a({{3, 1.0}, {1, 1.0}});
  Rng rng(5);
  const BatteryReport u = equivalence_battery(conjugation(random_unitary(a, rng)), 200, 4);
  EXPECT_TRUE(u.overall);
  EXPECT_TRUE(equivalence_agrees(u));
}

TEST(EquivalenceBattery, AgreesWheneverJordanBatteryPasses) {
  const AlgebraDescriptor a({{2, 1.0}, {2, 3.0}});
  Rng rng(6);
  const Operator u = random_unitary(a, rng);
  const LinearMapMatrix m =
      conjugation(u).compose(LinearMapMatrix::transpose(a));
  ASSERT_TRUE(jordan_battery(m, 500, 7).overall);
  const BatteryReport e = equivalence_battery(m, 500, 7, Tolerances{}.scaled(10.0));
  EXPECT_TRUE(e.overall);
}

TEST(NormalityCheck, Examples) {
  Rng rng(8);
  const Operator x = random_selfadjoint(M2(), rng);
  const Operator e11 = Operator::unit(M2(), 0, 0, 0);
  const Operator one = Operator::identity(M2());

  const LinearMapMatrix generic(M2(), M2(), gaussian_matrix(4, 4, rng));
  const BatteryReport constant = normality_check(generic, {MonotoneChain{{x, x}, x}});
  EXPECT_TRUE(constant.overall);

  EXPECT_TRUE(normality_check(LinearMapMatrix::transpose(M2()),
                              {MonotoneChain{{e11, one}, one}})
                  .overall);

  const LinearMapMatrix corner = LinearMapMatrix::from_function(
      M2(), M2(), [&](const Operator& y) { return trace(M2(), y) * e11; });
  const Operator p = random_projection(M2(), rng);
  EXPECT_TRUE(normality_check(corner,
                              {MonotoneChain{{Operator::zero(M2()), p, one}, one}})
                  .overall);
}

TEST(NormalityCheck, RejectsNonMonotoneChains) {
  const Operator e11 = Operator::unit(M2(), 0, 0, 0);
  const Operator one = Operator::identity(M2());
  EXPECT_THROW(normality_check(LinearMapMatrix::identity(M2()),
                               {MonotoneChain{{one, e11}, e11}}),
               PreconditionError);
  EXPECT_THROW(normality_check(LinearMapMatrix::identity(M2()),
                               {MonotoneChain{{e11}, one}}),
               PreconditionError);
}

TEST(NormalityCheck, HoldsForPositiveMaps) {
  const AlgebraDescriptor a({{2, 1.0}, {1, 1.0}});
  Rng rng(9);
  const Operator g = random_gaussian(a, rng);
  const LinearMapMatrix m = conjugation(g);
  ASSERT_TRUE(positivity_probe(m, 100, 1).overall);
  std::vector<MonotoneChain> chains;
  for (int s = 0; s < 20; ++s) {
    chains.push_back(MonotoneChain::of_projections(
        random_chain(random_nonzero_projection(a, rng), 4, rng)));
  }
  EXPECT_TRUE(normality_check(m, chains).overall);
}

TEST(MapDistance, MismatchedShapesThrow) {
  const AlgebraDescriptor b = AlgebraDescriptor::full_matrix(3);
  EXPECT_THROW(map_distance(LinearMapMatrix::identity(M2()), LinearMapMatrix::identity(b)),
               StructuralError);
  EXPECT_EQ(map_distance(LinearMapMatrix::identity(M2()), LinearMapMatrix::identity(M2())),
            0.0);
}

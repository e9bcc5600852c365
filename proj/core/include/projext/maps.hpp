#pragma once

// Linear maps between block algebras, stored as dense matrices acting on the
// vectorization of Operator::vec(), and the sampled batteries that test
// Jordan-homomorphism-like properties.

#include <cstdint>
#include <functional>
#include <vector>

#include "projext/algebra.hpp"
#include "projext/report.hpp"
#include "projext/tolerances.hpp"

namespace projext {

class LinearMapMatrix {
 public:
  /// Throws StructuralError unless matrix is codomain.total_dim x
  /// domain.total_dim.
  LinearMapMatrix(AlgebraDescriptor domain, AlgebraDescriptor codomain,
                  Matrix matrix);

  /// Materializes a linear map from its values on the matrix units.
  static LinearMapMatrix from_function(
      const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
      const std::function<Operator(const Operator&)>& f);

  static LinearMapMatrix identity(const AlgebraDescriptor& algebra);
  static LinearMapMatrix zero(const AlgebraDescriptor& domain,
                              const AlgebraDescriptor& codomain);
  /// Blockwise transpose x -> x^T.
  static LinearMapMatrix transpose(const AlgebraDescriptor& algebra);

  const AlgebraDescriptor& domain() const { return domain_; }
  const AlgebraDescriptor& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }

  Operator apply(const Operator& x) const;
  Operator operator()(const Operator& x) const { return apply(x); }

  /// this o inner.
  LinearMapMatrix compose(const LinearMapMatrix& inner) const;

 private:
  AlgebraDescriptor domain_;
  AlgebraDescriptor codomain_;
  Matrix matrix_;
};

/// Largest singular value of the matrix of a - b (the induced 2-norm on
/// vectorized operators). Throws StructuralError on mismatched shapes.
double map_distance(const LinearMapMatrix& a, const LinearMapMatrix& b);

/// max(|y - y*|, -lambda_min(y)) / |y|; zero when y = 0.
double positivity_violation(const Operator& y);

/// Checks apply(x) >= 0 on `samples` random positive x (plus the diagonal
/// matrix units of the domain).
BatteryReport positivity_probe(const LinearMapMatrix& map, int samples,
                               std::uint64_t seed, const Tolerances& tol = {});

/// The eight properties of a positive square-preserving map, one check each:
/// adjoint, jordan_product, powers, triple_product, projections,
/// orthogonality, commuting, contraction_sa.
BatteryReport jordan_battery(const LinearMapMatrix& map, int samples,
                             std::uint64_t seed, const Tolerances& tol = {});

/// Tests the four equivalent characterizations of a Jordan *-homomorphism
/// independently (checks condition_1 .. condition_4) plus `agreement`, which
/// passes when the four conditions are all true or all false.
BatteryReport equivalence_battery(const LinearMapMatrix& map, int samples,
                                  std::uint64_t seed,
                                  const Tolerances& tol = {});
/// True when the four equivalence conditions in `report` coincide.
bool equivalence_agrees(const BatteryReport& report);

/// Monotone chain x_1 <= ... <= x_m = supremum of self-adjoint operators.
struct MonotoneChain {
  std::vector<Operator> links;
  Operator supremum;

  static MonotoneChain of_projections(const ProjectionChain& chain);
};

/// For each chain, checks the image chain is increasing and the image of the
/// last link equals the image of the supremum. Throws PreconditionError when an
/// input chain is not monotone or does not end at its supremum.
BatteryReport normality_check(const LinearMapMatrix& map,
                              const std::vector<MonotoneChain>& chains,
                              const Tolerances& tol = {});

}  // namespace projext

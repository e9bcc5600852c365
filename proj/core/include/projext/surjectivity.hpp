#pragma once

// Deciding when a Jordan *-homomorphism between block algebras is onto.

#include <cstdint>
#include <optional>
#include <string>

#include "projext/maps.hpp"
#include "projext/report.hpp"
#include "projext/tolerances.hpp"

namespace projext {

enum class Verdict {
  jordan_isomorphism,
  injective_not_surjective,
  not_injective,
  hypotheses_fail,
};

std::string to_string(Verdict v);
/// Throws ParseError on an unknown name.
Verdict verdict_from_string(const std::string& name);

struct SurjectivityReport {
  bool unital = false;
  bool isometric_sa = false;
  /// Smallest k with |x| <= k |Phi(x)| over the samples; infinity when Phi has
  /// a kernel.
  double lower_bound_k = 0.0;
  bool corner_inclusion = false;
  int range_rank = 0;
  int codomain_dim = 0;
  Verdict verdict = Verdict::hypotheses_fail;
  /// The implication "unital, isometric on sa and corner-closed => onto"
  /// held on this input.
  bool consistent = true;
  BatteryReport hypotheses;
  /// Present only for jordan_isomorphism.
  std::optional<LinearMapMatrix> inverse;
  std::optional<BatteryReport> inverse_battery;
};

/// Numerical rank of the matrix of phi (threshold rank_relative * sigma_max).
int map_rank(const LinearMapMatrix& phi, const Tolerances& tol = {});

/// max |x| / |Phi(x)| over random x and the identity; infinity when the matrix
/// of phi is rank deficient on its domain.
double lower_bound_check(const LinearMapMatrix& phi, int samples,
                         std::uint64_t seed, const Tolerances& tol = {});

struct CornerInclusion {
  bool passed = true;
  /// Worst |t - QQ* t| / |t| over probed corners t = Phi(p) b_j Phi(p).
  double residual = 0.0;
};

/// Phi(p) B Phi(p) inside the range of phi, for random and central
/// projections p and every matrix unit b_j of the codomain.
CornerInclusion corner_inclusion_check(const LinearMapMatrix& phi, int samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol = {});

SurjectivityReport certify_jordan_isomorphism(const LinearMapMatrix& phi,
                                              int samples, std::uint64_t seed,
                                              const Tolerances& tol = {});

}  // namespace projext

#pragma once

// The Bloch twist on M_2: an orthogonally additive projection mapping with no
// linear extension.
//
// A rank-one projection of M_2 is (1 + n.sigma)/2 for a unit Bloch vector n.
// The twist rotates n about the z-axis by profile(theta), theta the polar
// angle of n. Antipodes stay antipodes exactly when
// profile(pi - theta) = profile(theta) (mod 2 pi), and then the map is
// orthogonally additive, since the only nontrivial orthogonal pairs in M_2
// are {p, 1 - p}.

#include <cstdint>
#include <functional>
#include <string>

#include "projext/algebra.hpp"
#include "projext/tolerances.hpp"

namespace projext {

struct TwistMap {
  std::function<double(double)> profile;
  std::string description;

  /// "zero", "constant:<c>" or "sin". Throws PreconditionError otherwise.
  static TwistMap from_name(const std::string& name);
};

/// Worst |f(pi - theta) - f(theta)| (mod 2 pi) over a uniform theta grid.
double antipode_defect(const TwistMap& t, int grid = 1001);

/// Twists a projection of M_2 (0 and 1 are fixed). Throws StructuralError
/// unless p lives in a single 2x2 block, PreconditionError unless p is a
/// projection.
Operator twist_apply(const TwistMap& t, const Operator& p,
                     const Tolerances& tol = {});

/// max |twist(p) + twist(1 - p) - 1| over seeded random rank-one p.
double twist_additivity_residual(const TwistMap& t, int samples,
                                 std::uint64_t seed, const Tolerances& tol = {});

/// Best linear L on M_2 with L(p_j) = twist(p_j) for N seeded random rank-one
/// p_j and L(1) = 1, in the least-squares sense; returns the worst
/// operator-norm residual over the p_j.
double nonextendability_witness(const TwistMap& t, int samples,
                                std::uint64_t seed, const Tolerances& tol = {});

}  // namespace projext

#pragma once

namespace projext {

// Every numerical threshold used by the library lives here.
//
//   rank_relative      singular values <= rank_relative * sigma_max count as zero
//                      (support/range projections, square roots, pseudo-inverses)
//   group_relative     eigenvalues closer than group_relative * max(1, |x|) are
//                      merged into one spectral projection
//   predicate          |x^2 - x|, |x - x*| and -lambda_min for the is_* predicates
//   residual           certificate residuals (corner identities, U(x) = U(p)Phi(x),
//                      additivity, map-norm route agreement, ...)
//   contraction_slack  absolute slack in |Phi(x)| <= |x|
//   range_membership   least-squares residual, relative to |target|, for range tests
//   inverse_battery    Jordan battery tolerance applied to computed inverses
//   twist_additivity   orthogonal additivity of the Bloch twist counterexample
//   linear_fit         fit residual below which a twist counts as linear
//
// `scaled` multiplies the comparison tolerances only; the rank and grouping
// thresholds are decision thresholds and stay fixed.
struct Tolerances {
  double rank_relative = 1e-9;
  double group_relative = 1e-8;
  double predicate = 1e-8;
  double residual = 1e-8;
  double contraction_slack = 1e-10;
  double range_membership = 1e-7;
  double inverse_battery = 1e-7;
  double twist_additivity = 1e-9;
  double linear_fit = 1e-8;

  Tolerances scaled(double factor) const {
    Tolerances t = *this;
    t.predicate *= factor;
    t.residual *= factor;
    t.contraction_slack *= factor;
    t.range_membership *= factor;
    t.inverse_battery *= factor;
    t.twist_additivity *= factor;
    t.linear_fit *= factor;
    return t;
  }
};

}  // namespace projext

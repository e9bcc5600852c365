#pragma once

// Extension of a projection mapping Phi(p) = s(U(p)) to a linear,
// square-preserving, positive map (and, by finite-dimensionality, to a normal
// Jordan *-homomorphism), with each intermediate identity exposed as a
// certificate.
//
// Residual conventions (all compared against Tolerances::residual unless noted):
//   additivity      |Phi(x+y) - Phi(x) - Phi(y)| / (1 + |x| + |y|)
//   squares         |Phi(x^2) - Phi(x)^2| / (1 + |x|^2)
//   positivity      max(0, -lambda_min(Phi(x))), absolute
//   contraction     max(0, |Phi(x)| - |x|), against contraction_slack
//   U-identities    |lhs - rhs| / max(1, |lhs|, |rhs|)
//   projections     absolute (projections have norm 0 or 1)

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "projext/algebra.hpp"
#include "projext/maps.hpp"
#include "projext/report.hpp"
#include "projext/tolerances.hpp"

namespace projext {

/// (A, tau), (B, nu) and a linear map U : A -> B.
class ExtensionProblem {
 public:
  /// Throws StructuralError unless u_map maps source to target.
  ExtensionProblem(AlgebraDescriptor source, AlgebraDescriptor target,
                   LinearMapMatrix u_map);
  explicit ExtensionProblem(LinearMapMatrix u_map);

  const AlgebraDescriptor& source() const { return source_; }
  const AlgebraDescriptor& target() const { return target_; }
  const LinearMapMatrix& u_map() const { return u_map_; }

 private:
  AlgebraDescriptor source_;
  AlgebraDescriptor target_;
  LinearMapMatrix u_map_;
};

struct ExtensionResult {
  LinearMapMatrix phi;
  std::vector<CertificateReport> certificates;
  BatteryReport hypothesis_report;

  bool all_passed() const;
  const CertificateReport* find(const std::string& name) const;
};

/// Thrown when the input map violates a standing hypothesis; carries the
/// offending certificate and the full hypothesis battery.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(CertificateReport failing, BatteryReport report);
  const CertificateReport& failing() const { return failing_; }
  const BatteryReport& report() const { return report_; }

 private:
  CertificateReport failing_;
  BatteryReport report_;
};

/// v_p with U(p)^{1/2} v_p = Phi(p) = v_p U(p)^{1/2}.
struct CornerInverse {
  Operator p;
  Operator v;
  Operator u_sqrt;
};

struct ExtendOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  Tolerances tol{};
  /// When false extend_full only checks hypotheses and materializes Phi.
  bool certificates = true;
};

/// s(U(p)). Throws PreconditionError if p is not a projection.
Operator phi_on_projection(const ExtensionProblem& prob, const Operator& p,
                           const Tolerances& tol = {});

/// Phi(p + q) = Phi(p) + Phi(q) and Phi(p)Phi(q) = 0 on random orthogonal
/// pairs (plus the structural diagonal pairs). The worst pair is attached as
/// witnesses.
CertificateReport orthogonal_additivity_check(const ExtensionProblem& prob,
                                              int samples, std::uint64_t seed,
                                              const Tolerances& tol = {});

/// sum_i alpha_i Phi(p_i).
Operator extend_orthospan(const ExtensionProblem& prob, const SpectralForm& x,
                          const Tolerances& tol = {});

/// extend_orthospan(spectral_decomposition(x)). Not linear by construction.
Operator extend_selfadjoint(const ExtensionProblem& prob, const Operator& x,
                            const Tolerances& tol = {});

/// Re-expresses x through alternative orthogonal decompositions (rank-one
/// splits of each spectral projection, and the r_ij / s_i / t_j refinement
/// against a random commuting element y) and reports the largest disagreement
/// between routes, including Phi(x + y) vs Phi(x) + Phi(y).
CertificateReport welldefinedness_probe(const ExtensionProblem& prob,
                                        const Operator& x, int trials,
                                        std::uint64_t seed,
                                        const Tolerances& tol = {});

/// Phi materialized on the standard self-adjoint basis and complexified.
LinearMapMatrix spectral_route(const ExtensionProblem& prob,
                               const Tolerances& tol = {});

/// Phi materialized on a random self-adjoint basis with degenerate spectra,
/// each spectral projection evaluated as the sum of Phi over the increments of
/// a random chain ending at it.
LinearMapMatrix chain_route(const ExtensionProblem& prob, std::uint64_t seed,
                            const Tolerances& tol = {});

/// x -> v_1 U(x) v_1 with v_1 from corner_inverse(prob, 1). Requires U(1) >= 0.
LinearMapMatrix corner_route(const ExtensionProblem& prob,
                             const Tolerances& tol = {});

/// Checks hypotheses (orthogonal additivity, positivity of U), materializes
/// Phi and, unless disabled, runs every conclusion certificate. Throws
/// HypothesisError on a hypothesis failure; conclusion failures are reported.
ExtensionResult extend_full(const ExtensionProblem& prob,
                            const ExtendOptions& options = {});

/// |U(x) - U(p)Phi(x)|, plus Phi(x)U(p) = U(x) = U(p)^{1/2} Phi(x) U(p)^{1/2}
/// when U(p) is positive. p defaults to the identity. Throws PreconditionError
/// unless p is a projection dominating s(x).
CertificateReport certificate_ux(const ExtensionProblem& prob,
                                 const LinearMapMatrix& phi, const Operator& x,
                                 const std::optional<Operator>& p = {},
                                 const Tolerances& tol = {});

/// r(Phi(x)) <= Phi(p); residual |Phi(p) r - r|. Same preconditions as
/// certificate_ux.
CertificateReport certificate_range(const ExtensionProblem& prob,
                                    const LinearMapMatrix& phi,
                                    const Operator& x,
                                    const std::optional<Operator>& p = {},
                                    const Tolerances& tol = {});

/// The image chain Phi(q_j) is increasing and ends at Phi(p). Throws
/// PreconditionError unless the chain ends at p.
CertificateReport chain_extension(const LinearMapMatrix& phi, const Operator& p,
                                  const ProjectionChain& chain,
                                  const Tolerances& tol = {});

/// For orthogonal chains ending at p and q: the combined chain p_j + q_j ends
/// at p + q and Phi(p_j + q_j) = Phi(p_j) + Phi(q_j) along it.
CertificateReport chain_additivity_transfer(const LinearMapMatrix& phi,
                                            const ProjectionChain& chain_p,
                                            const ProjectionChain& chain_q,
                                            const Tolerances& tol = {});

/// Phi(qpq) = Phi(q)Phi(p)Phi(q) and Phi(1)Phi(p)Phi(1) = Phi(p).
CertificateReport corner_identities(const LinearMapMatrix& phi,
                                    const Operator& p, const Operator& q,
                                    const Tolerances& tol = {});

/// Residuals |Phi(q_j x q_j) - Phi(x)| along a chain ending at the identity;
/// passes when the terminal residual is within tolerance.
CertificateReport sot_limit_check(const LinearMapMatrix& phi, const Operator& x,
                                  const ProjectionChain& chain,
                                  const Tolerances& tol = {});

/// Throws HypothesisError if U(p) is not positive, PreconditionError if p is
/// not a projection.
CornerInverse corner_inverse(const ExtensionProblem& prob, const Operator& p,
                             const Tolerances& tol = {});

/// U(p)^{1/2} v = Phi(p) = v U(p)^{1/2} and Phi(x) = v U(x) v. Throws
/// PreconditionError unless s(x) <= p.
CertificateReport corner_inverse_certificate(const ExtensionProblem& prob,
                                             const LinearMapMatrix& phi,
                                             const CornerInverse& ci,
                                             const Operator& x,
                                             const Tolerances& tol = {});

/// map_distance(a, b) against Tolerances::residual.
CertificateReport uniqueness_check(const LinearMapMatrix& a,
                                   const LinearMapMatrix& b,
                                   const Tolerances& tol = {});

struct IsometryReport {
  /// Phi(p) = 0 only for p = 0 on every probed projection.
  bool kernel_hypothesis = true;
  /// Worst | |Phi(x)| - |x| | over self-adjoint samples; marked not applicable
  /// (and failed) when the kernel hypothesis fails.
  CertificateReport certificate;
};

IsometryReport isometry_check(const ExtensionProblem& prob,
                              const LinearMapMatrix& phi, int samples,
                              std::uint64_t seed, const Tolerances& tol = {});

// Sampled conclusion certificates used by extend_full.
CertificateReport additivity_certificate(const ExtensionProblem& prob,
                                         int samples, std::uint64_t seed,
                                         const Tolerances& tol = {});
CertificateReport square_preservation_certificate(const LinearMapMatrix& phi,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  const Tolerances& tol = {});
CertificateReport positivity_certificate(const LinearMapMatrix& phi,
                                         int samples, std::uint64_t seed,
                                         const Tolerances& tol = {});
CertificateReport contraction_certificate(const LinearMapMatrix& phi,
                                          int samples, std::uint64_t seed,
                                          const Tolerances& tol = {});

}  // namespace projext

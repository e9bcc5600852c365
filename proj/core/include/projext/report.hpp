#pragma once

#include <string>
#include <vector>

#include "projext/algebra.hpp"

namespace projext {

/// One named residual compared against its tolerance.
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// Outcome of a sampled verification battery. `overall` is the conjunction of
/// the individual flags.
struct BatteryReport {
  std::vector<Check> checks;
  bool overall = true;

  /// Appends a check; passed = residual <= tolerance.
  void add(std::string name, double residual, double tolerance);
  /// Appends a check with an explicit pass flag (boolean conditions).
  void add_flag(std::string name, bool passed, double residual = 0.0,
                double tolerance = 0.0);
  const Check* find(const std::string& name) const;
};

/// A single named residual with the context it was realized on.
/// `witnesses` optionally carries the operators that realized the worst
/// residual; `sequence` carries per-step residuals for limit checks.
struct CertificateReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string context;
  std::vector<Operator> witnesses;
  std::vector<double> sequence;

  static CertificateReport make(std::string name, double residual,
                                double tolerance, std::string context = {});
};

/// Worst-case accumulator for sampled residuals. Keeps the maximum and the
/// context that produced it, so aggregation is order independent in value.
class WorstCase {
 public:
  void observe(double residual, std::string context = {},
               std::vector<Operator> witnesses = {});
  double residual() const { return residual_; }
  const std::string& context() const { return context_; }
  CertificateReport certificate(std::string name, double tolerance) const;

 private:
  double residual_ = 0.0;
  bool seen_ = false;
  std::string context_;
  std::vector<Operator> witnesses_;
};

}  // namespace projext

#include "projext/report.hpp"

#include <cmath>
#include <utility>

namespace projext {

namespace {

bool within(double residual, double tolerance) {
  return std::isfinite(residual) && residual <= tolerance;
}

}  // namespace

void BatteryReport::add(std::string name, double residual, double tolerance) {
  const bool ok = within(residual, tolerance);
  checks.push_back({std::move(name), residual, tolerance, ok});
  overall = overall && ok;
}

void BatteryReport::add_flag(std::string name, bool passed, double residual,
                             double tolerance) {
  checks.push_back({std::move(name), residual, tolerance, passed});
  overall = overall && passed;
}

const Check* BatteryReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

CertificateReport CertificateReport::make(std::string name, double residual,
                                          double tolerance,
                                          std::string context) {
  CertificateReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = within(residual, tolerance);
  r.context = std::move(context);
  return r;
}

void WorstCase::observe(double residual, std::string context,
                        std::vector<Operator> witnesses) {
  // NaN is treated as the worst possible value.
  const bool worse = !seen_ || std::isnan(residual) ||
                     (!std::isnan(residual_) && residual > residual_);
  if (worse) {
    residual_ = residual;
    context_ = std::move(context);
    witnesses_ = std::move(witnesses);
    seen_ = true;
  }
}

CertificateReport WorstCase::certificate(std::string name,
                                         double tolerance) const {
  CertificateReport r =
      CertificateReport::make(std::move(name), residual_, tolerance, context_);
  r.witnesses = witnesses_;
  return r;
}

}  // namespace projext

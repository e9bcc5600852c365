#include "projext/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "projext/errors.hpp"

namespace projext {

namespace {

using std::numbers::pi;

const AlgebraDescriptor& m2() {
  static const AlgebraDescriptor a = AlgebraDescriptor::full_matrix(2);
  return a;
}

Operator from_bloch(double nx, double ny, double nz) {
  Matrix p(2, 2);
  p << Complex(1.0 + nz, 0.0), Complex(nx, -ny), Complex(nx, ny),
      Complex(1.0 - nz, 0.0);
  return Operator(m2(), {0.5 * p});
}

// Uniform point on S^2.
Operator random_rank_one(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1e-12) {
      return from_bloch(x / r, y / r, z / r);
    }
  }
}

double angle_distance(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * pi);
  return std::abs(d);
}

}  // namespace

TwistMap TwistMap::from_name(const std::string& name) {
  if (name == "zero") {
    return {[](double) { return 0.0; }, "zero"};
  }
  if (name == "sin") {
    return {[](double theta) { return std::sin(theta); }, "sin"};
  }
  const std::string prefix = "constant:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string value = name.substr(prefix.size());
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(c)) {
      throw PreconditionError("bad constant in profile '" + name + "'");
    }
    return {[c](double) { return c; }, name};
  }
  throw PreconditionError("unknown twist profile '" + name +
                          "' (expected zero, constant:<c> or sin)");
}

double antipode_defect(const TwistMap& t, int grid) {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = pi * i / std::max(1, grid - 1);
    worst = std::max(worst, angle_distance(t.profile(pi - theta), t.profile(theta)));
  }
  return worst;
}

Operator twist_apply(const TwistMap& t, const Operator& p,
                     const Tolerances& tol) {
  if (!(p.algebra() == m2())) {
    throw StructuralError("the twist acts on M_2 only");
  }
  if (!is_projection(p, tol)) {
    throw PreconditionError("twist_apply needs a projection");
  }
  const Operator one = Operator::identity(m2());
  if (operator_norm(p) < 0.5) {
    return Operator::zero(m2());
  }
  if (operator_norm(one - p) < 0.5) {
    return one;
  }
  const Matrix& m = p.block(0);
  const double nx = 2.0 * m(1, 0).real();
  const double ny = 2.0 * m(1, 0).imag();
  const double nz = (m(0, 0) - m(1, 1)).real();
  const double theta = std::acos(std::clamp(nz, -1.0, 1.0));
  const double phi = std::atan2(ny, nx) + t.profile(theta);
  const double s = std::sin(theta);
  return from_bloch(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

double twist_additivity_residual(const TwistMap& t, int samples,
                                 std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) {
    throw PreconditionError("twist_additivity_residual needs a sample");
  }
  std::mt19937_64 rng(seed);
  const Operator one = Operator::identity(m2());
  std::vector<Operator> probes = {Operator::zero(m2()),
                                  Operator::unit(m2(), 0, 0, 0),
                                  from_bloch(1.0, 0.0, 0.0)};
  for (int s = 0; s < samples; ++s) {
    probes.push_back(random_rank_one(rng));
  }
  double worst = 0.0;
  for (const Operator& p : probes) {
    const Operator q = one - p;
    worst = std::max(worst, operator_norm(twist_apply(t, p, tol) +
                                          twist_apply(t, q, tol) - one));
  }
  return worst;
}

double nonextendability_witness(const TwistMap& t, int samples,
                                std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) {
    throw PreconditionError("nonextendability_witness needs a sample");
  }
  std::mt19937_64 rng(seed);
  const Operator one = Operator::identity(m2());
  Matrix src(4, samples + 1);
  Matrix dst(4, samples + 1);
  for (int s = 0; s < samples; ++s) {
    const Operator p = random_rank_one(rng);
    src.col(s) = p.vec();
    dst.col(s) = twist_apply(t, p, tol).vec();
  }
  src.col(samples) = one.vec();
  dst.col(samples) = one.vec();
  // L = T P^+, the minimum-norm least-squares solution of L P = T.
  const Matrix fit = src.transpose()
                         .completeOrthogonalDecomposition()
                         .solve(dst.transpose())
                         .transpose();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector err = fit * src.col(s) - dst.col(s);
    worst = std::max(worst, operator_norm(Operator::devec(m2(), err)));
  }
  return worst;
}

}  // namespace projext

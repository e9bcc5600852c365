#include "projext/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "projext/errors.hpp"

namespace projext {

AlgebraDescriptor::AlgebraDescriptor(std::vector<Block> blocks) {
  if (blocks.empty()) {
    throw StructuralError("algebra needs at least one block");
  }
  auto data = std::make_shared<Data>();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& b = blocks[k];
    if (b.dim < 1) {
      throw StructuralError("block " + std::to_string(k) +
                            ": dimension must be >= 1");
    }
    if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
      throw StructuralError("block " + std::to_string(k) +
                            ": trace weight must be finite and > 0");
    }
    data->offsets.push_back(data->total_dim);
    data->total_dim += b.dim * b.dim;
    data->hilbert_dim += b.dim;
  }
  data->blocks = std::move(blocks);
  data_ = std::move(data);
}

AlgebraDescriptor AlgebraDescriptor::full_matrix(int n, double weight) {
  return AlgebraDescriptor({Block{n, weight}});
}

Operator::Operator(AlgebraDescriptor algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.block_count()) {
    throw StructuralError("operator has " + std::to_string(blocks_.size()) +
                          " blocks, algebra has " +
                          std::to_string(algebra_.block_count()));
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = algebra_.block_dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw StructuralError("block " + std::to_string(k) + " is " +
                            std::to_string(blocks_[k].rows()) + "x" +
                            std::to_string(blocks_[k].cols()) +
                            ", expected " + std::to_string(n) + "x" +
                            std::to_string(n));
    }
  }
}

Operator Operator::zero(const AlgebraDescriptor& algebra) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.block_count());
  for (const Block& b : algebra.blocks()) {
    blocks.push_back(Matrix::Zero(b.dim, b.dim));
  }
  return Operator(algebra, std::move(blocks));
}

Operator Operator::identity(const AlgebraDescriptor& algebra) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.block_count());
  for (const Block& b : algebra.blocks()) {
    blocks.push_back(Matrix::Identity(b.dim, b.dim));
  }
  return Operator(algebra, std::move(blocks));
}

Operator Operator::unit(const AlgebraDescriptor& algebra, std::size_t k, int i,
                        int j) {
  Operator e = zero(algebra);
  const int n = algebra.block_dim(k);
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw StructuralError("matrix unit index out of range");
  }
  e.blocks_[k](i, j) = 1.0;
  return e;
}

Operator Operator::central(const AlgebraDescriptor& algebra, std::size_t k) {
  Operator e = zero(algebra);
  e.blocks_.at(k).setIdentity();
  return e;
}

Operator Operator::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const Matrix& m : blocks_) {
    out.push_back(m.adjoint());
  }
  return Operator(algebra_, std::move(out));
}

Vector Operator::vec() const {
  Vector v(algebra_.total_dim());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Matrix& m = blocks_[k];
    v.segment(algebra_.vec_offset(k), m.size()) =
        Eigen::Map<const Vector>(m.data(), m.size());
  }
  return v;
}

Operator Operator::devec(const AlgebraDescriptor& algebra, const Vector& v) {
  if (v.size() != algebra.total_dim()) {
    throw StructuralError("vector of length " + std::to_string(v.size()) +
                          " does not match algebra dimension " +
                          std::to_string(algebra.total_dim()));
  }
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.block_count());
  for (std::size_t k = 0; k < algebra.block_count(); ++k) {
    const int n = algebra.block_dim(k);
    blocks.push_back(
        Eigen::Map<const Matrix>(v.data() + algebra.vec_offset(k), n, n));
  }
  return Operator(algebra, std::move(blocks));
}

void require_same_algebra(const AlgebraDescriptor& algebra, const Operator& x) {
  if (!(x.algebra() == algebra)) {
    throw StructuralError("operator does not belong to the expected algebra");
  }
}

void require_same_algebra(const Operator& x, const Operator& y) {
  require_same_algebra(x.algebra(), y);
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_algebra(*this, other);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks_[k] += other.blocks_[k];
  }
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_algebra(*this, other);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks_[k] -= other.blocks_[k];
  }
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  for (Matrix& m : blocks_) {
    m *= s;
  }
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_algebra(a, b);
  std::vector<Matrix> out;
  out.reserve(a.blocks_.size());
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) {
    out.push_back(a.blocks_[k] * b.blocks_[k]);
  }
  return Operator(a.algebra_, std::move(out));
}

Complex trace(const AlgebraDescriptor& algebra, const Operator& x) {
  require_same_algebra(algebra, x);
  Complex t = 0.0;
  for (std::size_t k = 0; k < x.block_count(); ++k) {
    t += algebra.weight(k) * x.block(k).trace();
  }
  return t;
}

namespace {

Eigen::VectorXd singular_values(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

double largest_singular_value(const Operator& x) {
  double s = 0.0;
  for (const Matrix& m : x.blocks()) {
    const Eigen::VectorXd sv = singular_values(m);
    if (sv.size() > 0) {
      s = std::max(s, sv(0));
    }
  }
  return s;
}

double rank_threshold(double sigma_max, const Tolerances& tol) {
  return tol.rank_relative * (sigma_max > 0.0 ? sigma_max : 1.0);
}

// Which side of the SVD to project onto.
enum class Side { kRow, kColumn };

Operator svd_projection(const Operator& x, Side side, const Tolerances& tol) {
  const double cut = rank_threshold(largest_singular_value(x), tol);
  std::vector<Matrix> out;
  out.reserve(x.block_count());
  for (const Matrix& m : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    int r = 0;
    while (r < sv.size() && sv(r) > cut) {
      ++r;
    }
    const Matrix& basis = side == Side::kRow ? svd.matrixV() : svd.matrixU();
    const auto cols = basis.leftCols(r);
    out.push_back(cols * cols.adjoint());
  }
  return polish_projection(Operator(x.algebra(), std::move(out)));
}

}  // namespace

double operator_norm(const Operator& x) { return largest_singular_value(x); }

Operator jordan_product(const Operator& x, const Operator& y) {
  return x * y + y * x;
}

Operator hermitian_part(const Operator& x) {
  return 0.5 * (x + x.adjoint());
}

double min_eigenvalue(const Operator& x) {
  double lo = std::numeric_limits<double>::infinity();
  for (const Matrix& m : x.blocks()) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

int numerical_rank(const Operator& x, const Tolerances& tol) {
  const double cut = rank_threshold(largest_singular_value(x), tol);
  int rank = 0;
  for (const Matrix& m : x.blocks()) {
    const Eigen::VectorXd sv = singular_values(m);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut) {
        ++rank;
      }
    }
  }
  return rank;
}

Operator support_projection(const Operator& x, const Tolerances& tol) {
  return svd_projection(x, Side::kRow, tol);
}

Operator range_projection(const Operator& x, const Tolerances& tol) {
  return svd_projection(x, Side::kColumn, tol);
}

Operator kernel_projection(const Operator& x, const Tolerances& tol) {
  return polish_projection(Operator::identity(x.algebra()) -
                           support_projection(x, tol));
}

Operator polish_projection(const Operator& p) {
  const Operator h = hermitian_part(p);
  const Operator h2 = h * h;
  return hermitian_part(3.0 * h2 - 2.0 * (h2 * h));
}

bool is_selfadjoint(const Operator& x, const Tolerances& tol) {
  return operator_norm(x - x.adjoint()) <= tol.predicate;
}

bool is_projection(const Operator& x, const Tolerances& tol) {
  return is_selfadjoint(x, tol) && operator_norm(x * x - x) <= tol.predicate;
}

bool is_positive(const Operator& x, const Tolerances& tol) {
  const double scale = std::max(1.0, operator_norm(x));
  return operator_norm(x - x.adjoint()) <= tol.predicate * scale &&
         min_eigenvalue(x) >= -tol.predicate * scale;
}

namespace {

void require_projection(const Operator& p, const char* what,
                        const Tolerances& tol) {
  if (!is_projection(p, tol)) {
    throw PreconditionError(std::string(what) + " is not a projection");
  }
}

}  // namespace

bool projection_leq(const Operator& p, const Operator& q,
                    const Tolerances& tol) {
  require_same_algebra(p, q);
  require_projection(p, "left operand", tol);
  require_projection(q, "right operand", tol);
  return operator_norm(q * p - p) <= tol.predicate;
}

Operator lattice_join(const Operator& p, const Operator& q,
                      const Tolerances& tol) {
  require_same_algebra(p, q);
  require_projection(p, "left operand", tol);
  require_projection(q, "right operand", tol);
  // Projections live at unit scale; a sum below the rank threshold is
  // rounding noise (e.g. 1 - p for p = 1), not a small nonzero range.
  const Operator sum = p + q;
  if (operator_norm(sum) <= tol.rank_relative) return Operator::zero(p.algebra());
  return range_projection(sum, tol);
}

Operator lattice_meet(const Operator& p, const Operator& q,
                      const Tolerances& tol) {
  const Operator one = Operator::identity(p.algebra());
  return polish_projection(one - lattice_join(one - p, one - q, tol));
}

Operator positive_sqrt(const Operator& x, const Tolerances& tol) {
  if (!is_positive(x, tol)) {
    throw PreconditionError("square root of a non-positive operator");
  }
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  double lambda_max = 0.0;
  for (const Matrix& m : x.blocks()) {
    solvers.emplace_back(0.5 * (m + m.adjoint()));
    const auto& ev = solvers.back().eigenvalues();
    lambda_max = std::max(lambda_max, ev(ev.size() - 1));
  }
  const double cut = rank_threshold(lambda_max, tol);
  std::vector<Matrix> out;
  out.reserve(solvers.size());
  for (const auto& es : solvers) {
    Eigen::VectorXd root = es.eigenvalues();
    for (Eigen::Index i = 0; i < root.size(); ++i) {
      root(i) = root(i) > cut ? std::sqrt(root(i)) : 0.0;
    }
    const Matrix& v = es.eigenvectors();
    out.push_back(v * root.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return hermitian_part(Operator(x.algebra(), std::move(out)));
}

SpectralForm::SpectralForm(AlgebraDescriptor algebra)
    : algebra_(std::move(algebra)) {}

SpectralForm::SpectralForm(AlgebraDescriptor algebra,
                           std::vector<SpectralTerm> terms,
                           const Tolerances& tol)
    : algebra_(std::move(algebra)), terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const SpectralTerm& t = terms_[i];
    require_same_algebra(algebra_, t.projection);
    if (t.coefficient == 0.0 || !std::isfinite(t.coefficient)) {
      throw PreconditionError("spectral term " + std::to_string(i) +
                              ": coefficient must be finite and nonzero");
    }
    if (!is_projection(t.projection, tol)) {
      throw PreconditionError("spectral term " + std::to_string(i) +
                              ": not a projection");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[j].coefficient == t.coefficient) {
        throw PreconditionError("spectral terms " + std::to_string(j) +
                                " and " + std::to_string(i) +
                                " share a coefficient");
      }
      if (operator_norm(terms_[j].projection * t.projection) > tol.predicate) {
        throw PreconditionError("spectral terms " + std::to_string(j) +
                                " and " + std::to_string(i) +
                                " are not orthogonal");
      }
    }
  }
}

Operator SpectralForm::reconstruct() const {
  Operator x = Operator::zero(algebra_);
  for (const SpectralTerm& t : terms_) {
    x += t.coefficient * t.projection;
  }
  return x;
}

Operator SpectralForm::support() const {
  Operator s = Operator::zero(algebra_);
  for (const SpectralTerm& t : terms_) {
    s += t.projection;
  }
  return s;
}

SpectralForm spectral_decomposition(const Operator& x, const Tolerances& tol) {
  const double norm = operator_norm(x);
  const double scale = std::max(1.0, norm);
  if (operator_norm(x - x.adjoint()) > tol.predicate * scale) {
    throw PreconditionError("spectral decomposition needs a self-adjoint input");
  }
  const AlgebraDescriptor& algebra = x.algebra();

  struct Eig {
    double value;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  std::vector<Eig> all;
  for (std::size_t k = 0; k < x.block_count(); ++k) {
    const Matrix& m = x.block(k);
    solvers.emplace_back(0.5 * (m + m.adjoint()));
    const auto& ev = solvers.back().eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      all.push_back({ev(i), k, i});
    }
  }
  std::sort(all.begin(), all.end(), [](const Eig& a, const Eig& b) {
    return a.value < b.value;
  });

  const double eps = tol.group_relative * scale;
  std::vector<SpectralTerm> terms;
  std::size_t start = 0;
  while (start < all.size()) {
    std::size_t end = start + 1;
    while (end < all.size() && all[end].value - all[end - 1].value <= eps) {
      ++end;
    }
    double mean = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      mean += all[i].value;
    }
    mean /= static_cast<double>(end - start);
    if (std::abs(mean) > eps) {
      Operator p = Operator::zero(algebra);
      std::vector<Matrix> blocks(p.blocks().begin(), p.blocks().end());
      for (std::size_t i = start; i < end; ++i) {
        const auto v = solvers[all[i].block].eigenvectors().col(all[i].column);
        blocks[all[i].block] += v * v.adjoint();
      }
      terms.push_back(
          {mean, polish_projection(Operator(algebra, std::move(blocks)))});
    }
    start = end;
  }
  return SpectralForm(algebra, std::move(terms), tol);
}

ProjectionChain::ProjectionChain(std::vector<Operator> links,
                                 const Tolerances& tol)
    : links_(std::move(links)) {
  if (links_.empty()) {
    throw PreconditionError("projection chain must be nonempty");
  }
  for (std::size_t j = 0; j < links_.size(); ++j) {
    require_same_algebra(links_.front(), links_[j]);
    if (!is_projection(links_[j], tol)) {
      throw PreconditionError("chain link " + std::to_string(j) +
                              " is not a projection");
    }
    if (j > 0 && !projection_leq(links_[j - 1], links_[j], tol)) {
      throw PreconditionError("chain links " + std::to_string(j - 1) + " and " +
                              std::to_string(j) + " are not increasing");
    }
  }
}

}  // namespace projext

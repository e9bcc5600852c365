#pragma once

// Finite-dimensional model of a semi-finite von Neumann algebra: a direct sum
// of full complex matrix blocks M_{n_1} + ... + M_{n_k} with the faithful trace
// tau(x) = sum_k w_k Tr(x_k).  Every projection has finite trace here, so the
// finite-trace ideal coincides with the whole algebra.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "projext/tolerances.hpp"

namespace projext {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Block {
  int dim = 1;
  double weight = 1.0;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Block dimensions and trace weights. Immutable and cheap to copy (shared).
class AlgebraDescriptor {
 public:
  /// Throws StructuralError unless there is at least one block, every dim >= 1
  /// and every weight > 0.
  explicit AlgebraDescriptor(std::vector<Block> blocks);

  /// M_n with trace weight `weight`.
  static AlgebraDescriptor full_matrix(int n, double weight = 1.0);

  std::span<const Block> blocks() const { return data_->blocks; }
  std::size_t block_count() const { return data_->blocks.size(); }
  int block_dim(std::size_t k) const { return data_->blocks.at(k).dim; }
  double weight(std::size_t k) const { return data_->blocks.at(k).weight; }

  /// Dimension as a complex vector space: sum of dim^2.
  int total_dim() const { return data_->total_dim; }
  /// Size of the underlying Hilbert space: sum of dim.
  int hilbert_dim() const { return data_->hilbert_dim; }
  /// Offset of block k inside the vectorization.
  int vec_offset(std::size_t k) const { return data_->offsets.at(k); }

  friend bool operator==(const AlgebraDescriptor& a,
                         const AlgebraDescriptor& b) {
    return a.data_ == b.data_ || a.data_->blocks == b.data_->blocks;
  }

 private:
  struct Data {
    std::vector<Block> blocks;
    std::vector<int> offsets;
    int total_dim = 0;
    int hilbert_dim = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// An element of a block algebra: one dim x dim complex matrix per block.
class Operator {
 public:
  /// Throws StructuralError if the block count or any block shape disagrees
  /// with `algebra`.
  Operator(AlgebraDescriptor algebra, std::vector<Matrix> blocks);

  static Operator zero(const AlgebraDescriptor& algebra);
  static Operator identity(const AlgebraDescriptor& algebra);
  /// Matrix unit e_ij inside block k.
  static Operator unit(const AlgebraDescriptor& algebra, std::size_t k, int i,
                       int j);
  /// Central projection onto block k (identity of block k, zero elsewhere).
  static Operator central(const AlgebraDescriptor& algebra, std::size_t k);

  const AlgebraDescriptor& algebra() const { return algebra_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  std::span<const Matrix> blocks() const { return blocks_; }

  Operator adjoint() const;

  /// Per-block column stacking, blocks concatenated in descriptor order.
  Vector vec() const;
  /// Inverse of vec(). Throws StructuralError on a length mismatch.
  static Operator devec(const AlgebraDescriptor& algebra, const Vector& v);

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  AlgebraDescriptor algebra_;
  std::vector<Matrix> blocks_;
};

/// Throws StructuralError unless x lives in `algebra`.
void require_same_algebra(const AlgebraDescriptor& algebra, const Operator& x);
void require_same_algebra(const Operator& x, const Operator& y);

/// Weighted trace sum_k w_k Tr(x_k).
Complex trace(const AlgebraDescriptor& algebra, const Operator& x);

/// Largest singular value over all blocks.
double operator_norm(const Operator& x);

/// xy + yx.
Operator jordan_product(const Operator& x, const Operator& y);

/// (x + x*) / 2.
Operator hermitian_part(const Operator& x);

/// Smallest eigenvalue of (x + x*)/2 over all blocks.
double min_eigenvalue(const Operator& x);

/// Numerical rank with threshold rank_relative * sigma_max.
int numerical_rank(const Operator& x, const Tolerances& tol = {});

/// Projection onto the row space of x: the smallest e with x e = x.
Operator support_projection(const Operator& x, const Tolerances& tol = {});
/// Projection onto the column space of x: the smallest e with e x = x.
Operator range_projection(const Operator& x, const Tolerances& tol = {});
/// Projection onto the kernel of x, i.e. 1 - s(x).
Operator kernel_projection(const Operator& x, const Tolerances& tol = {});

/// Symmetrize and apply one step of p <- 3p^2 - 2p^3.
Operator polish_projection(const Operator& p);

bool is_selfadjoint(const Operator& x, const Tolerances& tol = {});
bool is_projection(const Operator& x, const Tolerances& tol = {});
bool is_positive(const Operator& x, const Tolerances& tol = {});

/// q p = p within tolerance. Throws PreconditionError on non-projections.
bool projection_leq(const Operator& p, const Operator& q,
                    const Tolerances& tol = {});
Operator lattice_join(const Operator& p, const Operator& q,
                      const Tolerances& tol = {});
Operator lattice_meet(const Operator& p, const Operator& q,
                      const Tolerances& tol = {});

/// Positive square root; eigenvalues below rank_relative * lambda_max are
/// clamped to zero. Throws PreconditionError if x is not positive.
Operator positive_sqrt(const Operator& x, const Tolerances& tol = {});

struct SpectralTerm {
  double coefficient;
  Operator projection;
};

/// x = sum_i alpha_i p_i with distinct nonzero alpha_i and mutually orthogonal
/// projections p_i. The zero operator has the empty form.
class SpectralForm {
 public:
  /// Empty form (the zero operator of `algebra`).
  explicit SpectralForm(AlgebraDescriptor algebra);
  /// Throws PreconditionError on repeated or zero coefficients, non-projections
  /// or non-orthogonal pairs.
  SpectralForm(AlgebraDescriptor algebra, std::vector<SpectralTerm> terms,
               const Tolerances& tol = {});

  const AlgebraDescriptor& algebra() const { return algebra_; }
  std::span<const SpectralTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Operator reconstruct() const;
  /// Sum of the projections (the support of the represented operator).
  Operator support() const;

 private:
  AlgebraDescriptor algebra_;
  std::vector<SpectralTerm> terms_;
};

/// Exact spectral decomposition of a self-adjoint x, clustered at
/// group_relative * max(1, |x|). Terms are sorted by ascending coefficient.
/// Throws PreconditionError if x is not self-adjoint.
SpectralForm spectral_decomposition(const Operator& x,
                                    const Tolerances& tol = {});

/// Increasing chain of projections q_1 <= ... <= q_m.
class ProjectionChain {
 public:
  /// Throws PreconditionError on an empty chain, a non-projection link or a
  /// non-monotone pair.
  explicit ProjectionChain(std::vector<Operator> links,
                           const Tolerances& tol = {});

  std::span<const Operator> links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  const Operator& front() const { return links_.front(); }
  const Operator& back() const { return links_.back(); }

 private:
  std::vector<Operator> links_;
};

}  // namespace projext

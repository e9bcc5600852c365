#include "projext/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "projext/errors.hpp"

namespace projext {

namespace {

int uniform_int(int lo, int hi, Rng& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Columns of the range of a projection block (eigenvalues > 1/2).
Matrix range_columns(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.adjoint()));
  const auto& ev = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) <= 0.5) {
    ++first;
  }
  return es.eigenvectors().rightCols(ev.size() - first);
}

}  // namespace

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix haar_unitary(Eigen::Index n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar (Mezzadri's correction).
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) {
      q.col(j) *= d / a;
    }
  }
  return q;
}

Operator random_gaussian(const AlgebraDescriptor& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const Block& b : algebra.blocks()) {
    blocks.push_back(gaussian_matrix(b.dim, b.dim, rng));
  }
  return Operator(algebra, std::move(blocks));
}

Operator random_selfadjoint(const AlgebraDescriptor& algebra, Rng& rng) {
  return hermitian_part(random_gaussian(algebra, rng));
}

Operator random_positive(const AlgebraDescriptor& algebra, Rng& rng) {
  const Operator g = random_gaussian(algebra, rng);
  return hermitian_part(g.adjoint() * g);
}

Operator random_unitary(const AlgebraDescriptor& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const Block& b : algebra.blocks()) {
    blocks.push_back(haar_unitary(b.dim, rng));
  }
  return Operator(algebra, std::move(blocks));
}

Operator random_projection(const AlgebraDescriptor& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const Block& b : algebra.blocks()) {
    const int rank = uniform_int(0, b.dim, rng);
    const Matrix u = haar_unitary(b.dim, rng);
    const auto cols = u.leftCols(rank);
    blocks.push_back(cols * cols.adjoint());
  }
  return polish_projection(Operator(algebra, std::move(blocks)));
}

Operator random_nonzero_projection(const AlgebraDescriptor& algebra, Rng& rng) {
  for (;;) {
    Operator p = random_projection(algebra, rng);
    if (operator_norm(p) > 0.5) {
      return p;
    }
  }
}

std::pair<Operator, Operator> random_orthogonal_pair(
    const AlgebraDescriptor& algebra, Rng& rng) {
  std::vector<Matrix> first;
  std::vector<Matrix> second;
  for (const Block& b : algebra.blocks()) {
    const Matrix u = haar_unitary(b.dim, rng);
    const int r1 = uniform_int(0, b.dim, rng);
    const int r2 = uniform_int(0, b.dim - r1, rng);
    const auto c1 = u.leftCols(r1);
    const auto c2 = u.middleCols(r1, r2);
    first.push_back(c1 * c1.adjoint());
    second.push_back(c2 * c2.adjoint());
  }
  return {polish_projection(Operator(algebra, std::move(first))),
          polish_projection(Operator(algebra, std::move(second)))};
}

std::vector<Matrix> random_range_basis(const Operator& p, Rng& rng) {
  std::vector<Matrix> out;
  for (const Matrix& block : p.blocks()) {
    const Matrix cols = range_columns(block);
    if (cols.cols() == 0) {
      out.push_back(cols);
      continue;
    }
    out.push_back(cols * haar_unitary(cols.cols(), rng));
  }
  return out;
}

Operator random_subprojection(const Operator& p, Rng& rng) {
  const std::vector<Matrix> basis = random_range_basis(p, rng);
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const int n = p.algebra().block_dim(k);
    const int rank = uniform_int(0, static_cast<int>(basis[k].cols()), rng);
    const auto cols = basis[k].leftCols(rank);
    blocks.push_back(rank == 0 ? Matrix(Matrix::Zero(n, n))
                               : Matrix(cols * cols.adjoint()));
  }
  return polish_projection(Operator(p.algebra(), std::move(blocks)));
}

std::vector<Operator> split_rank_one(const Operator& p, Rng& rng) {
  const std::vector<Matrix> basis = random_range_basis(p, rng);
  std::vector<Operator> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (Eigen::Index c = 0; c < basis[k].cols(); ++c) {
      Operator e = Operator::zero(p.algebra());
      std::vector<Matrix> blocks(e.blocks().begin(), e.blocks().end());
      const auto v = basis[k].col(c);
      blocks[k] = v * v.adjoint();
      out.push_back(polish_projection(Operator(p.algebra(), std::move(blocks))));
    }
  }
  return out;
}

ProjectionChain random_chain(const Operator& p, int links, Rng& rng) {
  if (links < 1) {
    throw PreconditionError("a chain needs at least one link");
  }
  // Order the rank-one pieces of p randomly; link j holds a growing prefix.
  std::vector<Operator> pieces = split_rank_one(p, rng);
  std::shuffle(pieces.begin(), pieces.end(), rng);
  const int total = static_cast<int>(pieces.size());
  std::vector<int> cuts;
  for (int j = 0; j + 1 < links; ++j) {
    cuts.push_back(uniform_int(0, total, rng));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(total);

  std::vector<Operator> chain;
  Operator running = Operator::zero(p.algebra());
  int used = 0;
  for (int cut : cuts) {
    while (used < cut) {
      running += pieces[static_cast<std::size_t>(used++)];
    }
    chain.push_back(polish_projection(running));
  }
  chain.back() = p;
  return ProjectionChain(std::move(chain));
}

std::pair<Operator, Operator> random_commuting_pair(
    const AlgebraDescriptor& algebra, Rng& rng) {
  std::vector<Matrix> xs;
  std::vector<Matrix> ys;
  for (const Block& b : algebra.blocks()) {
    const Matrix u = haar_unitary(b.dim, rng);
    const Vector d1 = gaussian_matrix(b.dim, 1, rng);
    const Vector d2 = gaussian_matrix(b.dim, 1, rng);
    xs.push_back(u * d1.asDiagonal() * u.adjoint());
    ys.push_back(u * d2.asDiagonal() * u.adjoint());
  }
  return {Operator(algebra, std::move(xs)), Operator(algebra, std::move(ys))};
}

Operator random_degenerate_selfadjoint(const AlgebraDescriptor& algebra,
                                       Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Matrix> blocks;
  for (const Block& b : algebra.blocks()) {
    Eigen::VectorXd diag(b.dim);
    int filled = 0;
    while (filled < b.dim) {
      const int size = uniform_int(1, b.dim - filled, rng);
      diag.segment(filled, size).setConstant(normal(rng));
      filled += size;
    }
    const Matrix u = haar_unitary(b.dim, rng);
    blocks.push_back(u * diag.cast<Complex>().asDiagonal() * u.adjoint());
  }
  return hermitian_part(Operator(algebra, std::move(blocks)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 finalizer over (seed, k)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Operator> structural_projections(const AlgebraDescriptor& algebra) {
  std::vector<Operator> out;
  for (std::size_t k = 0; k < algebra.block_count(); ++k) {
    for (int i = 0; i < algebra.block_dim(k); ++i) {
      out.push_back(Operator::unit(algebra, k, i, i));
    }
    if (algebra.block_dim(k) > 1) {
      out.push_back(Operator::central(algebra, k));
    }
  }
  return out;
}

}  // namespace projext

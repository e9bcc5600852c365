#pragma once

// Seeded random elements of block algebras. All draws go through a single
// std::mt19937_64 so a fixed seed reproduces the exact sample sequence.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "projext/algebra.hpp"

namespace projext {

using Rng = std::mt19937_64;

/// n x m matrix with i.i.d. standard complex Gaussian entries.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Haar-distributed n x n unitary.
Matrix haar_unitary(Eigen::Index n, Rng& rng);

Operator random_gaussian(const AlgebraDescriptor& algebra, Rng& rng);
/// (g + g*)/2 with g Gaussian.
Operator random_selfadjoint(const AlgebraDescriptor& algebra, Rng& rng);
/// g* g with g Gaussian.
Operator random_positive(const AlgebraDescriptor& algebra, Rng& rng);
Operator random_unitary(const AlgebraDescriptor& algebra, Rng& rng);

/// Haar-random subspace of uniformly random rank in every block.
Operator random_projection(const AlgebraDescriptor& algebra, Rng& rng);
/// As random_projection, but redrawn until nonzero.
Operator random_nonzero_projection(const AlgebraDescriptor& algebra, Rng& rng);
/// Random orthogonal pair (p, q) with pq = 0.
std::pair<Operator, Operator> random_orthogonal_pair(
    const AlgebraDescriptor& algebra, Rng& rng);

/// Orthonormal basis of the range of a projection, as one column matrix per
/// block, randomly rotated within that range.
std::vector<Matrix> random_range_basis(const Operator& p, Rng& rng);
/// Random projection q <= p.
Operator random_subprojection(const Operator& p, Rng& rng);
/// Mutually orthogonal rank-one projections summing to p.
std::vector<Operator> split_rank_one(const Operator& p, Rng& rng);
/// Random increasing chain q_1 <= ... <= q_links = p.
ProjectionChain random_chain(const Operator& p, int links, Rng& rng);

/// Self-adjoint element with a random eigenbasis whose eigenvalues are grouped
/// into random multiplicities, so spectral projections of rank > 1 occur.
Operator random_degenerate_selfadjoint(const AlgebraDescriptor& algebra,
                                       Rng& rng);

/// Commuting normal pair x = u D1 u*, y = u D2 u* with complex diagonals.
std::pair<Operator, Operator> random_commuting_pair(
    const AlgebraDescriptor& algebra, Rng& rng);

/// Derives an independent stream seed for the k-th sub-battery.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

/// Deterministic probes: every diagonal matrix unit and every central block
/// projection.
std::vector<Operator> structural_projections(const AlgebraDescriptor& algebra);

}  // namespace projext

#pragma once

// Ground-truth instances: a Jordan *-homomorphism J assembled from block
// copies (optionally transposed) and a unitary, and U = h J(.) with h a
// positive element commuting with the range of J, so that s(U(p)) = J(p).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "projext/algebra.hpp"
#include "projext/extension.hpp"
#include "projext/maps.hpp"
#include "projext/sampling.hpp"

namespace projext {

enum class BlockMode { homomorphic, anti };

std::string to_string(BlockMode mode);
/// Throws ParseError on an unknown name.
BlockMode block_mode_from_string(const std::string& name);

/// One copy of source block `source_block` placed on the diagonal of target
/// block `target_block`. Copies fill a target block in list order; whatever
/// remains of the target block is a zero corner.
struct BlockAssignment {
  std::size_t source_block = 0;
  std::size_t target_block = 0;
  BlockMode mode = BlockMode::homomorphic;
};

struct JordanSpec {
  AlgebraDescriptor source;
  AlgebraDescriptor target;
  std::vector<BlockAssignment> assignments;
  Operator conjugating_unitary;

  /// Throws StructuralError on out-of-range indices, copies overflowing a
  /// target block, or a unitary from the wrong algebra; PreconditionError if
  /// the unitary is not unitary.
  void validate(const Tolerances& tol = {}) const;
};

/// x -> u (sum of the assigned copies pi_k(x) or pi_k(x)^T) u*.
LinearMapMatrix build_jordan(const JordanSpec& spec);

struct InstanceBundle {
  ExtensionProblem problem;
  LinearMapMatrix ground_truth;
  Operator h;
};

/// h is u diag(c_i) u* with one scalar per copy slot and per zero corner,
/// log-uniform in [0.1, 10]; U = h J(.).
InstanceBundle build_instance(const JordanSpec& spec, std::uint64_t h_seed);

enum class SpecKind {
  /// Every source block used at least once; extra copies and zero corners
  /// allowed.
  injective,
  /// A block permutation with random modes: J is onto.
  surjective,
  /// Injective with a repeated copy, a zero corner or an unassigned target
  /// block.
  non_surjective,
  /// At least one source block is not assigned anywhere.
  non_injective,
};

/// Random spec of the given kind; source and target have total_dim <= 16.
JordanSpec random_spec(SpecKind kind, Rng& rng);

/// random_spec + build_instance from a single seed.
InstanceBundle random_instance(SpecKind kind, std::uint64_t seed);

}  // namespace projext

#include "projext/generators.hpp"

#include <algorithm>
#include <cmath>

#include "projext/errors.hpp"

namespace projext {

std::string to_string(BlockMode mode) {
  return mode == BlockMode::homomorphic ? "homomorphic" : "anti";
}

BlockMode block_mode_from_string(const std::string& name) {
  if (name == "homomorphic") {
    return BlockMode::homomorphic;
  }
  if (name == "anti") {
    return BlockMode::anti;
  }
  throw ParseError("", "unknown block mode '" + name + "'");
}

namespace {

constexpr int kMaxTotalDim = 16;

int uniform_int(int lo, int hi, Rng& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double log_uniform(double lo, double hi, Rng& rng) {
  return std::exp(
      std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

// Diagonal offsets of each assignment inside its target block.
std::vector<int> slot_offsets(const JordanSpec& spec) {
  std::vector<int> fill(spec.target.block_count(), 0);
  std::vector<int> out;
  for (const BlockAssignment& a : spec.assignments) {
    out.push_back(fill[a.target_block]);
    fill[a.target_block] += spec.source.block_dim(a.source_block);
  }
  return out;
}

std::vector<Block> random_weights(const std::vector<int>& dims, Rng& rng) {
  std::vector<Block> out;
  for (int d : dims) {
    out.push_back({d, log_uniform(0.5, 2.0, rng)});
  }
  return out;
}

int total_dim(const std::vector<int>& dims) {
  int t = 0;
  for (int d : dims) {
    t += d * d;
  }
  return t;
}

// 1 to 3 blocks of size 1 to 3 with sum of squares <= limit.
std::vector<int> random_dims(int min_blocks, int limit, Rng& rng) {
  for (;;) {
    std::vector<int> dims;
    const int count = uniform_int(min_blocks, 3, rng);
    for (int i = 0; i < count; ++i) {
      dims.push_back(uniform_int(1, 3, rng));
    }
    if (total_dim(dims) <= limit) {
      return dims;
    }
  }
}

BlockMode random_mode(Rng& rng) {
  return uniform_int(0, 1, rng) == 0 ? BlockMode::homomorphic : BlockMode::anti;
}

struct Draft {
  std::vector<int> source;
  std::vector<int> target;
  std::vector<BlockAssignment> assignments;
};

// Places the copies (source block indices) into target blocks, appending
// `extra` zero rows to a random target block and `empty` unassigned target
// blocks.
Draft place(std::vector<int> source, const std::vector<std::size_t>& copies,
            int extra, int empty, Rng& rng) {
  Draft d;
  d.source = std::move(source);
  for (std::size_t c : copies) {
    // Either open a new target block or join an existing one.
    std::size_t tb = d.target.size();
    if (d.target.empty() || uniform_int(0, 2, rng) > 0) {
      d.target.push_back(0);
    } else {
      tb = static_cast<std::size_t>(
          uniform_int(0, static_cast<int>(d.target.size()) - 1, rng));
    }
    d.assignments.push_back({c, tb, random_mode(rng)});
    d.target[tb] += d.source[c];
  }
  if (extra > 0) {
    if (d.target.empty()) {
      d.target.push_back(0);
    }
    d.target[static_cast<std::size_t>(uniform_int(
        0, static_cast<int>(d.target.size()) - 1, rng))] += extra;
  }
  for (int e = 0; e < empty; ++e) {
    d.target.push_back(uniform_int(1, 2, rng));
  }
  return d;
}

JordanSpec finish(const Draft& d, Rng& rng) {
  JordanSpec spec{AlgebraDescriptor(random_weights(d.source, rng)),
                  AlgebraDescriptor(random_weights(d.target, rng)),
                  d.assignments, Operator::zero(AlgebraDescriptor({{1, 1.0}}))};
  spec.conjugating_unitary = random_unitary(spec.target, rng);
  return spec;
}

}  // namespace

void JordanSpec::validate(const Tolerances& tol) const {
  std::vector<int> fill(target.block_count(), 0);
  for (const BlockAssignment& a : assignments) {
    if (a.source_block >= source.block_count() ||
        a.target_block >= target.block_count()) {
      throw StructuralError("block assignment index out of range");
    }
    fill[a.target_block] += source.block_dim(a.source_block);
  }
  for (std::size_t k = 0; k < fill.size(); ++k) {
    if (fill[k] > target.block_dim(k)) {
      throw StructuralError("copies overflow target block " + std::to_string(k));
    }
  }
  require_same_algebra(target, conjugating_unitary);
  const Operator defect = conjugating_unitary.adjoint() * conjugating_unitary -
                          Operator::identity(target);
  if (operator_norm(defect) > tol.predicate) {
    throw PreconditionError("conjugating_unitary is not unitary");
  }
}

LinearMapMatrix build_jordan(const JordanSpec& spec) {
  spec.validate();
  const std::vector<int> offsets = slot_offsets(spec);
  const Operator& u = spec.conjugating_unitary;
  const Operator u_star = u.adjoint();
  return LinearMapMatrix::from_function(
      spec.source, spec.target, [&](const Operator& x) {
        std::vector<Matrix> blocks;
        for (const Block& b : spec.target.blocks()) {
          blocks.push_back(Matrix::Zero(b.dim, b.dim));
        }
        for (std::size_t i = 0; i < spec.assignments.size(); ++i) {
          const BlockAssignment& a = spec.assignments[i];
          const Matrix& xs = x.block(a.source_block);
          const int n = static_cast<int>(xs.rows());
          blocks[a.target_block].block(offsets[i], offsets[i], n, n) =
              a.mode == BlockMode::homomorphic ? xs : Matrix(xs.transpose());
        }
        return u * Operator(spec.target, std::move(blocks)) * u_star;
      });
}

InstanceBundle build_instance(const JordanSpec& spec, std::uint64_t h_seed) {
  const LinearMapMatrix j = build_jordan(spec);
  Rng rng(h_seed);
  const std::vector<int> offsets = slot_offsets(spec);
  std::vector<Matrix> blocks;
  std::vector<int> fill(spec.target.block_count(), 0);
  for (const Block& b : spec.target.blocks()) {
    blocks.push_back(Matrix::Zero(b.dim, b.dim));
  }
  for (std::size_t i = 0; i < spec.assignments.size(); ++i) {
    const BlockAssignment& a = spec.assignments[i];
    const int n = spec.source.block_dim(a.source_block);
    const double c = log_uniform(0.1, 10.0, rng);
    blocks[a.target_block].diagonal().segment(offsets[i], n).setConstant(c);
    fill[a.target_block] = std::max(fill[a.target_block], offsets[i] + n);
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const int rest = spec.target.block_dim(k) - fill[k];
    if (rest > 0) {
      blocks[k].diagonal().tail(rest).setConstant(log_uniform(0.1, 10.0, rng));
    }
  }
  const Operator& u = spec.conjugating_unitary;
  const Operator h =
      hermitian_part(u * Operator(spec.target, std::move(blocks)) * u.adjoint());
  const LinearMapMatrix u_map = LinearMapMatrix::from_function(
      spec.source, spec.target, [&](const Operator& x) { return h * j(x); });
  return InstanceBundle{ExtensionProblem(spec.source, spec.target, u_map), j, h};
}

JordanSpec random_spec(SpecKind kind, Rng& rng) {
  for (;;) {
    Draft d;
    switch (kind) {
      case SpecKind::surjective: {
        const std::vector<int> dims = random_dims(1, kMaxTotalDim, rng);
        std::vector<std::size_t> order(dims.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
          order[i] = i;
        }
        std::shuffle(order.begin(), order.end(), rng);
        d.source = dims;
        for (std::size_t t = 0; t < order.size(); ++t) {
          d.target.push_back(dims[order[t]]);
          d.assignments.push_back({order[t], t, random_mode(rng)});
        }
        break;
      }
      case SpecKind::injective:
      case SpecKind::non_surjective: {
        const std::vector<int> dims = random_dims(1, 9, rng);
        std::vector<std::size_t> copies;
        for (std::size_t i = 0; i < dims.size(); ++i) {
          copies.push_back(i);
          if (uniform_int(0, 3, rng) == 0) {
            copies.push_back(i);
          }
        }
        std::shuffle(copies.begin(), copies.end(), rng);
        int extra = uniform_int(0, 3, rng) == 0 ? 1 : 0;
        int empty = uniform_int(0, 4, rng) == 0 ? 1 : 0;
        if (kind == SpecKind::non_surjective &&
            copies.size() == dims.size() && extra == 0 && empty == 0) {
          // Force a defect of one of the three kinds.
          switch (uniform_int(0, 2, rng)) {
            case 0:
              copies.push_back(static_cast<std::size_t>(
                  uniform_int(0, static_cast<int>(dims.size()) - 1, rng)));
              break;
            case 1:
              extra = 1;
              break;
            default:
              empty = 1;
          }
        }
        d = place(dims, copies, extra, empty, rng);
        break;
      }
      case SpecKind::non_injective: {
        const std::vector<int> dims = random_dims(2, 9, rng);
        const std::size_t dropped = static_cast<std::size_t>(
            uniform_int(0, static_cast<int>(dims.size()) - 1, rng));
        std::vector<std::size_t> copies;
        for (std::size_t i = 0; i < dims.size(); ++i) {
          if (i != dropped) {
            copies.push_back(i);
          }
        }
        std::shuffle(copies.begin(), copies.end(), rng);
        d = place(dims, copies, 0, 0, rng);
        break;
      }
    }
    if (total_dim(d.source) <= kMaxTotalDim &&
        total_dim(d.target) <= kMaxTotalDim) {
      return finish(d, rng);
    }
  }
}

InstanceBundle random_instance(SpecKind kind, std::uint64_t seed) {
  Rng rng(seed);
  const JordanSpec spec = random_spec(kind, rng);
  return build_instance(spec, derive_seed(seed, 1));
}

}  // namespace projext

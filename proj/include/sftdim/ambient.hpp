#pragma once

#include "sftdim/adjacency.hpp"
#include "sftdim/errors.hpp"
#include "sftdim/lattices.hpp"
#include "sftdim/minpoly.hpp"
#include "sftdim/perron.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <optional>

namespace sftdim {

class Ambient;
using AmbientPtr = std::shared_ptr<const Ambient>;

/// Per-matrix context shared by every limit-group element over A: the
/// matrix, its minimal polynomial split, and lazily computed (then frozen)
/// powers, lattices and Perron data.
class Ambient {
  struct Token {};

 public:
  Ambient(Token, AdjacencyMatrix adj, PerronOptions opts)
      : adj_(std::move(adj)),
        minpoly_(minimal_polynomial(adj_.matrix())),
        primitive_(is_primitive(adj_)),
        period_(sftdim::period(adj_)),
        perron_opts_(opts) {
    powers_.push_back(IntMatrix::identity(adj_.size()));
  }

  /// Throws Reducible unless A is irreducible.
  static AmbientPtr make(AdjacencyMatrix adj, PerronOptions opts = {}) {
    if (!is_irreducible(adj))
      throw Error(ErrorCode::reducible, "invariants need an irreducible matrix");
    return std::make_shared<const Ambient>(Token{}, std::move(adj), opts);
  }
  static AmbientPtr make(const IntMatrix& a, PerronOptions opts = {}) {
    return make(validate(a), opts);
  }

  const AdjacencyMatrix& adjacency() const noexcept { return adj_; }
  const IntMatrix& matrix() const noexcept { return adj_.matrix(); }
  std::size_t size() const noexcept { return adj_.size(); }
  const MinPolyData& minpoly() const noexcept { return minpoly_; }
  /// Multiplicity of 0 in the minimal polynomial; kernels of A^j stop growing at j = l.
  std::size_t l() const noexcept { return minpoly_.l; }
  std::size_t k() const noexcept { return minpoly_.k; }
  bool primitive() const noexcept { return primitive_; }
  std::size_t period() const noexcept { return period_; }

  const IntMatrix& power(std::size_t j) const {
    std::lock_guard lock(powers_mutex_);
    while (powers_.size() <= j) powers_.push_back(powers_.back() * matrix());
    return powers_[j];
  }

  void require_primitive(const char* what) const {
    if (!primitive_) throw Error(ErrorCode::not_primitive, what);
  }

  const PerronData& perron() const {
    require_primitive("Perron data needs a primitive matrix");
    std::call_once(perron_once_, [&] { perron_ = sftdim::perron(adj_, perron_opts_); });
    return *perron_;
  }
  const CentralizerLattice& centralizer() const {
    std::call_once(centralizer_once_, [&] { centralizer_ = centralizer_basis(matrix()); });
    return *centralizer_;
  }
  const CommutatorLattice& commutator() const {
    std::call_once(commutator_once_, [&] { commutator_ = commutator_lattice(matrix()); });
    return *commutator_;
  }
  /// First j where the K1 vanishing test stabilizes (see
  /// kernel_chain_stabilization), or nullopt past kK1StabilizationCap.
  std::optional<std::size_t> k1_stabilization() const {
    std::call_once(k1_stab_once_, [&] {
      k1_stab_ = kernel_chain_stabilization(matrix(), kK1StabilizationCap);
    });
    return k1_stab_;
  }
  static constexpr std::size_t kK1StabilizationCap = 64;

  /// Columns are vec(AY - YA) for the elementary Y; spans B(A).
  const IntMatrix& commutator_generators() const {
    std::call_once(commutator_op_once_, [&] { commutator_op_ = commutator_operator(matrix()); });
    return *commutator_op_;
  }

 private:
  AdjacencyMatrix adj_;
  MinPolyData minpoly_;
  bool primitive_;
  std::size_t period_;
  PerronOptions perron_opts_;

  mutable std::mutex powers_mutex_;
  mutable std::deque<IntMatrix> powers_;
  mutable std::once_flag perron_once_, centralizer_once_, commutator_once_, commutator_op_once_,
      k1_stab_once_;
  mutable std::optional<PerronData> perron_;
  mutable std::optional<CentralizerLattice> centralizer_;
  mutable std::optional<CommutatorLattice> commutator_;
  mutable std::optional<IntMatrix> commutator_op_;
  mutable std::optional<std::size_t> k1_stab_;
};

inline void require_same_ambient(const Ambient& a, const Ambient& b) {
  if (&a != &b && a.matrix() != b.matrix())
    throw Error(ErrorCode::ambient_mismatch, "elements belong to different matrices");
}

}  // namespace sftdim

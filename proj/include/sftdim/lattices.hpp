#pragma once

#include "sftdim/linalg.hpp"
#include "sftdim/matrix.hpp"

#include <optional>
#include <vector>

namespace sftdim {

/// Saturated basis of C(A) = {X : AX = XA}, in Hermite row order.
struct CentralizerLattice {
  std::vector<IntMatrix> basis;
  std::size_t rank() const noexcept { return basis.size(); }
};

/// Basis of B(A) = {AY - YA}, in Hermite row order, with Y witnesses.
struct CommutatorLattice {
  std::vector<IntMatrix> basis;
  std::vector<IntMatrix> witnesses;  // basis[i] == A*witnesses[i] - witnesses[i]*A
  std::size_t rank() const noexcept { return basis.size(); }
};

/// Free rank and torsion of M_K(Z)/B(A).
struct QuotientStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

/// Matrix of X -> AX - XA on row-major vec(X).
inline IntMatrix commutator_operator(const IntMatrix& a) {
  const std::size_t k = a.rows();
  const IntMatrix id = IntMatrix::identity(k);
  return sandwich_operator(a, id) - sandwich_operator(id, a);
}

/// Stack matrices as rows of vec() entries.
inline IntMatrix matrices_as_rows(const std::vector<IntMatrix>& ms) {
  if (ms.empty()) return {};
  IntMatrix out(ms.size(), ms.front().size());
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms[i].size(); ++j) out(i, j) = ms[i].entries()[j];
  return out;
}

/// Stack matrices as columns of vec() entries.
inline IntMatrix matrices_as_columns(const std::vector<IntMatrix>& ms, std::size_t entries) {
  IntMatrix out(entries, ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j)
    for (std::size_t i = 0; i < entries; ++i) out(i, j) = ms[j].entries()[i];
  return out;
}

inline std::vector<IntMatrix> hermite_ordered(const std::vector<IntMatrix>& gens, std::size_t rows,
                                              std::size_t cols) {
  if (gens.empty()) return {};
  HermiteForm h = hermite_normal_form(matrices_as_rows(gens));
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < h.basis.rows(); ++i) {
    IntMatrix m(rows, cols);
    for (std::size_t j = 0; j < rows * cols; ++j) m.entries()[j] = h.basis(i, j);
    out.push_back(std::move(m));
  }
  return out;
}

inline CentralizerLattice centralizer_basis(const IntMatrix& a) {
  const std::size_t k = a.rows();
  std::vector<IntMatrix> gens;
  for (const auto& col : integer_kernel(commutator_operator(a))) gens.push_back(unvec(col, k, k));
  return CentralizerLattice{hermite_ordered(gens, k, k)};
}

inline CommutatorLattice commutator_lattice(const IntMatrix& a) {
  const std::size_t k = a.rows();
  const IntMatrix op = commutator_operator(a);
  // Generators are the images of the elementary matrices: columns of op.
  HermiteForm h = hermite_normal_form(op.transposed());
  CommutatorLattice out;
  for (std::size_t i = 0; i < h.basis.rows(); ++i) {
    IntMatrix b(k, k), y(k, k);
    for (std::size_t j = 0; j < k * k; ++j) {
      b.entries()[j] = h.basis(i, j);
      y.entries()[j] = h.transform(i, j);
    }
    out.basis.push_back(std::move(b));
    out.witnesses.push_back(std::move(y));
  }
  return out;
}

inline QuotientStructure k1_group_structure(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(commutator_operator(a));
  QuotientStructure q;
  q.free_rank = a.rows() * a.rows() - snf.rank();
  for (const auto& d : snf.invariant_factors)
    if (d > 1) q.torsion.push_back(d);
  return q;
}

/// Least j with K_j = K_{j+1}, where K_j = {X : A^j X A^j in B(A)}, searched
/// up to `cap`. The chain K_0 <= K_1 <= ... is increasing (B(A) is closed
/// under X -> AXA) and constant from the first repeat on, so a class D of
/// lim M_K(Z)/B(A) vanishes iff A^j D A^j lies in B(A) for this j.
inline std::optional<std::size_t> kernel_chain_stabilization(const IntMatrix& a,
                                                             std::size_t cap) {
  const std::size_t k = a.rows(), n = k * k;
  const IntMatrix gens = commutator_operator(a);
  IntMatrix power = IntMatrix::identity(k);  // A^j
  for (std::size_t j = 0; j <= cap; ++j) {
    IntMatrix next = power * a;  // A^(j+1)
    // Generators of K_{j+1}: x-parts of ker [T^(j+1) | -G].
    IntMatrix system = hstack({sandwich_operator(next, next), -gens});
    const IntMatrix t_j = sandwich_operator(power, power);
    bool stable = true;
    for (const auto& z : integer_kernel(system)) {
      IntMatrix x(n, 1);
      for (std::size_t i = 0; i < n; ++i) x(i, 0) = z(i, 0);
      if (!solve_integer_linear(gens, t_j * x)) {
        stable = false;
        break;
      }
    }
    if (stable) return j;
    power = std::move(next);
  }
  return std::nullopt;
}

}  // namespace sftdim

#pragma once

#include "sftdim/dimension_groups.hpp"
#include "sftdim/lattices.hpp"
#include "sftdim/polynomial.hpp"

#include <optional>
#include <string>

namespace sftdim {

// K-theory of the mapping cylinder. K0 is the limit of C(A) under X -> AXA
// (CylinderK0Element); K1 is the limit of M_K(Z)/B(A) under the same map.

inline CylinderK0Element k0_identity(const AmbientPtr& amb) {
  return CylinderK0Element(amb, IntMatrix::identity(amb->size()), 0);
}

/// [A, 0]; its inverse is [A, 1].
inline CylinderK0Element k0_generator(const AmbientPtr& amb) {
  return CylinderK0Element(amb, amb->matrix(), 0);
}

inline CylinderK0Element k0_generator_inverse(const AmbientPtr& amb) {
  return CylinderK0Element(amb, amb->matrix(), 1);
}

inline bool k0_equal(const CylinderK0Element& a, const CylinderK0Element& b) {
  return equal(a, b);
}

inline HomoclinicElement to_homoclinic(const CylinderK0Element& e) {
  return HomoclinicElement(e.ambient_ptr(), e.payload(), e.level());
}

/// [Y + B(A), N]. Any integer matrix is a valid representative.
class CylinderK1Element {
 public:
  CylinderK1Element(AmbientPtr ambient, IntMatrix rep, std::size_t level)
      : ambient_(std::move(ambient)), rep_(std::move(rep)), level_(level) {
    const std::size_t k = ambient_->size();
    if (rep_.rows() != k || rep_.cols() != k)
      throw Error(ErrorCode::dimension_mismatch, "K1 representative " + rep_.shape());
  }

  static CylinderK1Element zero(AmbientPtr ambient) {
    const std::size_t k = ambient->size();
    return CylinderK1Element(std::move(ambient), IntMatrix(k, k), 0);
  }

  const IntMatrix& representative() const noexcept { return rep_; }
  std::size_t level() const noexcept { return level_; }
  const Ambient& ambient() const noexcept { return *ambient_; }
  const AmbientPtr& ambient_ptr() const noexcept { return ambient_; }

  CylinderK1Element raised(std::size_t level) const {
    if (level < level_) throw Error(ErrorCode::dimension_mismatch, "cannot lower a level");
    return CylinderK1Element(ambient_,
                             advance_payload<Flavor::homoclinic>(*ambient_, rep_, level - level_),
                             level);
  }

  friend CylinderK1Element operator+(const CylinderK1Element& a, const CylinderK1Element& b) {
    require_same_ambient(a.ambient(), b.ambient());
    const std::size_t n = std::max(a.level_, b.level_);
    return CylinderK1Element(a.ambient_, a.raised(n).rep_ + b.raised(n).rep_, n);
  }
  friend CylinderK1Element operator-(const CylinderK1Element& a) {
    return CylinderK1Element(a.ambient_, -a.rep_, a.level_);
  }
  friend CylinderK1Element operator-(const CylinderK1Element& a, const CylinderK1Element& b) {
    return a + (-b);
  }

 private:
  AmbientPtr ambient_;
  IntMatrix rep_;
  std::size_t level_;
};

enum class K1Verdict { equal, not_equal, undecided };

inline const char* to_string(K1Verdict v) {
  switch (v) {
    case K1Verdict::equal: return "Equal";
    case K1Verdict::not_equal: return "NotEqual";
    case K1Verdict::undecided: return "Undecided";
  }
  return "?";
}

struct K1Equality {
  K1Verdict verdict = K1Verdict::undecided;
  // equal: least j with A^j D A^j in B(A); not_equal: the stabilization
  // index that certifies it; undecided: the exhausted bound.
  std::size_t exponent = 0;
};

/// Is A^j (a - b) A^j in B(A) for some j, at a common level? When the kernel
/// chain stabilizes at j* <= j_max, testing j <= j* decides the question;
/// otherwise the search runs to j_max and may end Undecided.
inline K1Equality k1_equal(const CylinderK1Element& a, const CylinderK1Element& b,
                           std::size_t j_max = 64) {
  require_same_ambient(a.ambient(), b.ambient());
  const Ambient& amb = a.ambient();
  const std::size_t n = std::max(a.level(), b.level());
  const IntMatrix diff = a.raised(n).representative() - b.raised(n).representative();
  const IntMatrix& gens = amb.commutator_generators();

  const auto stab = amb.k1_stabilization();
  const bool certified = stab && *stab <= j_max;
  const std::size_t last = certified ? *stab : j_max;
  for (std::size_t j = 0; j <= last; ++j) {
    const IntMatrix shifted = advance_payload<Flavor::homoclinic>(amb, diff, j);
    if (shifted.is_zero() || solve_integer_linear(gens, vec(shifted))) return {K1Verdict::equal, j};
  }
  return {certified ? K1Verdict::not_equal : K1Verdict::undecided, last};
}

// ---------------------------------------------------------------------------
// Graded product and module actions

/// [X, N] * [Y, M] = [XY, N + M]
inline CylinderK0Element mul_00(const CylinderK0Element& a, const CylinderK0Element& b) {
  require_same_ambient(a.ambient(), b.ambient());
  return CylinderK0Element(a.ambient_ptr(), a.payload() * b.payload(), a.level() + b.level());
}

/// [X, N] * [Y + B(A), M] = [XY + B(A), N + M]; X(AZ - ZA) = A(XZ) - (XZ)A
/// keeps this well defined on cosets.
inline CylinderK1Element mul_01(const CylinderK0Element& a, const CylinderK1Element& b) {
  require_same_ambient(a.ambient(), b.ambient());
  return CylinderK1Element(a.ambient_ptr(), a.payload() * b.representative(),
                           a.level() + b.level());
}

/// [Y + B(A), M] * [X, N] = [YX + B(A), N + M]
inline CylinderK1Element mul_10(const CylinderK1Element& a, const CylinderK0Element& b) {
  require_same_ambient(a.ambient(), b.ambient());
  return CylinderK1Element(a.ambient_ptr(), a.representative() * b.payload(),
                           a.level() + b.level());
}

/// K1 * K1 vanishes.
inline CylinderK0Element mul_11(const CylinderK1Element& a, const CylinderK1Element& b) {
  require_same_ambient(a.ambient(), b.ambient());
  return CylinderK0Element::zero(a.ambient_ptr());
}

/// Right action on K0(S): [v, N] * [X, M] = [vX, N + 2M]
inline StableElement act_s(const StableElement& s, const CylinderK0Element& h) {
  require_same_ambient(s.ambient(), h.ambient());
  return StableElement(s.ambient_ptr(), s.payload() * h.payload(), s.level() + 2 * h.level());
}

/// Left action on K0(U): [X, M] * [w, N] = [Xw, N + 2M]
inline UnstableElement act_u(const CylinderK0Element& h, const UnstableElement& u) {
  require_same_ambient(h.ambient(), u.ambient());
  return UnstableElement(u.ambient_ptr(), h.payload() * u.payload(), u.level() + 2 * h.level());
}

// ---------------------------------------------------------------------------
// The subring R_A generated by [A, 0] and [A, 1], i.e. Z[x, 1/x]/(p_A).

/// [q(A), N] with deg q < k. For fixed N the polynomial is unique.
class RAElement {
 public:
  RAElement(AmbientPtr ambient, Polynomial q, std::size_t level)
      : ambient_(std::move(ambient)), q_(std::move(q)), level_(level) {
    if (q_.degree() >= static_cast<long>(ambient_->k()))
      throw Error(ErrorCode::dimension_mismatch,
                  "R_A representative of degree " + std::to_string(q_.degree()) +
                      " needs degree < " + std::to_string(ambient_->k()));
  }

  const Polynomial& polynomial() const noexcept { return q_; }
  std::size_t level() const noexcept { return level_; }
  const Ambient& ambient() const noexcept { return *ambient_; }
  const AmbientPtr& ambient_ptr() const noexcept { return ambient_; }

  CylinderK0Element to_k0() const {
    return CylinderK0Element(ambient_, q_.evaluate(ambient_->matrix()), level_);
  }

 private:
  AmbientPtr ambient_;
  Polynomial q_;
  std::size_t level_;
};

/// [p(A), N] = [q0(A), N] where p(x) x^2l = p_A(x) x^2l d(x) + q0(x) x^2l.
inline RAElement ra_reduce(const AmbientPtr& amb, const Polynomial& p, std::size_t level) {
  const std::size_t l = amb->l();
  const Polynomial divisor = amb->minpoly().p.shifted_up(2 * l);
  const Polynomial q = p.shifted_up(2 * l).mod_monic(divisor);
  return RAElement(amb, q.shifted_down(2 * l), level);
}

/// Equality in R_A: align levels via [q, N] = [x^2 q, N + 1], then compare
/// reduced polynomials.
inline bool ra_equal(const RAElement& a, const RAElement& b) {
  require_same_ambient(a.ambient(), b.ambient());
  if (a.level() > b.level()) return ra_equal(b, a);
  const RAElement lifted =
      ra_reduce(a.ambient_ptr(), a.polynomial().shifted_up(2 * (b.level() - a.level())), b.level());
  return lifted.polynomial() == b.polynomial();
}

inline RAElement ra_mul(const RAElement& a, const RAElement& b) {
  require_same_ambient(a.ambient(), b.ambient());
  return ra_reduce(a.ambient_ptr(), a.polynomial() * b.polynomial(), a.level() + b.level());
}

inline RAElement ra_add(const RAElement& a, const RAElement& b) {
  require_same_ambient(a.ambient(), b.ambient());
  const std::size_t n = std::max(a.level(), b.level());
  auto lift = [n](const RAElement& e) { return e.polynomial().shifted_up(2 * (n - e.level())); };
  return ra_reduce(a.ambient_ptr(), lift(a) + lift(b), n);
}

namespace detail {

// Multiplication by x on Z[x]/(p_A) in the basis 1, x, ..., x^(k-1).
inline IntMatrix companion(const MinPolyData& mp) {
  IntMatrix c(mp.k, mp.k);
  for (std::size_t i = 0; i + 1 < mp.k; ++i) c(i + 1, i) = 1;
  for (std::size_t i = 0; i < mp.k; ++i) c(i, mp.k - 1) = -mp.a(i);
  return c;
}

}  // namespace detail

/// Decide whether [X, N] lies in R_A; on success return a witness [q(A), N + d].
///
/// [X, N] = [q(A), N + d] iff A^(2l+2d) X = A^2l q(A). Write A^2l X in the
/// basis A^2l, ..., A^(2l+k-1) over Q (no solution means no membership at
/// any d); multiplying by A^2 acts on coordinates by C^2, C the companion
/// matrix of p_A. With common denominator D, membership at level N + d means
/// C^2d c' = 0 mod D for c' = D c. The kernels of C^2d on (Z/D)^k form an
/// increasing chain of length at most k * log2(D), so d <= k * log2(D) + 1
/// decides.
inline std::optional<RAElement> ra_membership(const CylinderK0Element& e) {
  const Ambient& amb = e.ambient();
  const std::size_t l = amb.l(), k = amb.k();
  const IntMatrix target = amb.power(2 * l) * e.payload();
  std::vector<IntMatrix> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(vec(amb.power(2 * l + i)));
  auto coords = solve_rational(hstack(std::span<const IntMatrix>(basis)), vec(target));
  if (!coords) return std::nullopt;

  Integer denom = 1;
  for (std::size_t i = 0; i < k; ++i)
    denom = lcm(denom, boost::multiprecision::denominator((*coords)(i, 0)));
  IntMatrix scaled(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational& q = (*coords)(i, 0);
    scaled(i, 0) = boost::multiprecision::numerator(q) * (denom / boost::multiprecision::denominator(q));
  }

  const IntMatrix c2 = pow(detail::companion(amb.minpoly()), 2);
  const std::size_t d_max = k * bit_length(denom) + 1;
  IntMatrix exact = scaled;  // C^2d c'
  IntMatrix residue = scaled;
  for (std::size_t d = 0; d <= d_max; ++d) {
    bool divisible = true;
    for (std::size_t i = 0; i < k; ++i) {
      residue(i, 0) = mod_floor(residue(i, 0), denom);
      divisible = divisible && residue(i, 0) == 0;
    }
    if (divisible) {
      std::vector<Integer> q(k);
      for (std::size_t i = 0; i < k; ++i) q[i] = exact(i, 0) / denom;
      return RAElement(e.ambient_ptr(), Polynomial(std::move(q)), e.level() + d);
    }
    residue = c2 * residue;
    exact = c2 * exact;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Centers

/// Matrix-level center: elements of C(A) commuting with all of C(A).
/// Whether this always matches the center of the limit ring is open; it is
/// reported as the "matrix-level center".
inline CentralizerLattice center_basis(const Ambient& amb) {
  const auto& cb = amb.centralizer().basis;
  const std::size_t r = cb.size(), k = amb.size();
  IntMatrix system(r * k * k, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const IntMatrix comm = cb[i] * cb[j] - cb[j] * cb[i];
      for (std::size_t e = 0; e < k * k; ++e) system(j * k * k + e, i) = comm.entries()[e];
    }
  std::vector<IntMatrix> gens;
  for (const auto& t : integer_kernel(system)) {
    IntMatrix x(k, k);
    for (std::size_t i = 0; i < r; ++i) x += t(i, 0) * cb[i];
    gens.push_back(std::move(x));
  }
  return CentralizerLattice{hermite_ordered(gens, k, k)};
}

/// Level-0 image of R_A: the lattice {q(A) : deg q < k}.
inline std::vector<IntMatrix> ra_level_lattice(const Ambient& amb) {
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < amb.k(); ++i) out.push_back(amb.power(i));
  return out;
}

/// Index [super : sub] when sub is a full-rank sublattice of super; nullopt
/// when sub is not contained in super or has smaller rank.
inline std::optional<Integer> lattice_index(const std::vector<IntMatrix>& sub,
                                            const std::vector<IntMatrix>& super) {
  if (super.empty()) return sub.empty() ? std::optional<Integer>(1) : std::nullopt;
  const std::size_t n = super.front().size();
  const IntMatrix sup = matrices_as_columns(super, n);
  if (rational_rank(sup) != super.size()) return std::nullopt;
  if (rational_rank(matrices_as_columns(sub, n)) != super.size()) return std::nullopt;
  // Coordinates of each sub generator in the super basis.
  IntMatrix coords(super.size(), sub.size());
  for (std::size_t j = 0; j < sub.size(); ++j) {
    auto x = solve_integer_linear(sup, vec(sub[j]));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < super.size(); ++i) coords(i, j) = (*x)(i, 0);
  }
  Integer index = 1;
  for (const auto& d : smith_normal_form(coords).invariant_factors) index *= d;
  return index;
}

}  // namespace sftdim

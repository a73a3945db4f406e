#pragma once

#include "sftdim/ambient.hpp"
#include "sftdim/errors.hpp"
#include "sftdim/linalg.hpp"
#include "sftdim/matrix.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sftdim {

/// Which inductive system an element lives in.
///
///   stable      Z^K rows,     v -> vA     K0(S)
///   unstable    Z^K columns,  w -> Aw     K0(U)
///   homoclinic  M_K(Z),       X -> AXA    K0(H)
///   cylinder    C(A),         X -> AXA    K0 of the mapping cylinder
enum class Flavor { stable, unstable, homoclinic, cylinder };

constexpr const char* flavor_tag(Flavor f) {
  switch (f) {
    case Flavor::stable: return "s";
    case Flavor::unstable: return "u";
    case Flavor::homoclinic: return "h";
    case Flavor::cylinder: return "ch";
  }
  return "?";
}

/// Class [payload, level] in the inductive limit of the `F` system over the
/// ambient matrix. (x, n) and (step(x), n + 1) name the same class.
template <Flavor F>
class LimitElement {
 public:
  LimitElement(AmbientPtr ambient, IntMatrix payload, std::size_t level)
      : ambient_(std::move(ambient)), payload_(std::move(payload)), level_(level) {
    const std::size_t k = ambient_->size();
    const bool ok = F == Flavor::stable     ? payload_.rows() == 1 && payload_.cols() == k
                    : F == Flavor::unstable ? payload_.rows() == k && payload_.cols() == 1
                                            : payload_.rows() == k && payload_.cols() == k;
    if (!ok)
      throw Error(ErrorCode::dimension_mismatch,
                  std::string("payload ") + payload_.shape() + " for flavor " + flavor_tag(F) +
                      " over a " + std::to_string(k) + "x" + std::to_string(k) + " matrix");
    if constexpr (F == Flavor::cylinder) {
      const IntMatrix& a = ambient_->matrix();
      if (a * payload_ != payload_ * a)
        throw Error(ErrorCode::not_in_centralizer, "AX != XA for X = " + to_string(payload_));
    }
  }

  static LimitElement zero(AmbientPtr ambient) {
    const std::size_t k = ambient->size();
    return LimitElement(std::move(ambient), IntMatrix(F == Flavor::stable ? 1 : k,
                                                      F == Flavor::unstable ? 1 : k),
                        0);
  }

  static constexpr Flavor flavor = F;

  const IntMatrix& payload() const noexcept { return payload_; }
  std::size_t level() const noexcept { return level_; }
  const Ambient& ambient() const noexcept { return *ambient_; }
  const AmbientPtr& ambient_ptr() const noexcept { return ambient_; }

  /// Same payload and level; stronger than equality of classes.
  bool same_representative(const LimitElement& o) const {
    return level_ == o.level_ && payload_ == o.payload_;
  }

 private:
  AmbientPtr ambient_;
  IntMatrix payload_;
  std::size_t level_;
};

using StableElement = LimitElement<Flavor::stable>;
using UnstableElement = LimitElement<Flavor::unstable>;
using HomoclinicElement = LimitElement<Flavor::homoclinic>;
using CylinderK0Element = LimitElement<Flavor::cylinder>;

/// Apply the connecting map `steps` times to a payload.
template <Flavor F>
IntMatrix advance_payload(const Ambient& amb, const IntMatrix& x, std::size_t steps) {
  if (steps == 0) return x;
  const IntMatrix& p = amb.power(steps);
  if constexpr (F == Flavor::stable) return x * p;
  else if constexpr (F == Flavor::unstable) return p * x;
  else return p * x * p;
}

/// Representative of the same class at a level >= the current one.
template <Flavor F>
LimitElement<F> raise(const LimitElement<F>& e, std::size_t level) {
  if (level < e.level())
    throw Error(ErrorCode::dimension_mismatch, "cannot lower a level by raising");
  return LimitElement<F>(e.ambient_ptr(),
                         advance_payload<F>(e.ambient(), e.payload(), level - e.level()), level);
}

/// Equality of classes. For n <= m, (x, n) ~ (y, m) iff step^(m-n+j)(x) =
/// step^j(y) for some j; kernels of A^j stop growing at j = l, so j = l is
/// the only exponent that needs testing.
template <Flavor F>
bool equal(const LimitElement<F>& a, const LimitElement<F>& b) {
  require_same_ambient(a.ambient(), b.ambient());
  if (a.level() > b.level()) return equal(b, a);
  const Ambient& amb = a.ambient();
  const std::size_t l = amb.l();
  return advance_payload<F>(amb, a.payload(), b.level() - a.level() + l) ==
         advance_payload<F>(amb, b.payload(), l);
}

template <Flavor F>
bool is_zero(const LimitElement<F>& a) {
  return advance_payload<F>(a.ambient(), a.payload(), a.ambient().l()).is_zero();
}

template <Flavor F>
LimitElement<F> operator+(const LimitElement<F>& a, const LimitElement<F>& b) {
  require_same_ambient(a.ambient(), b.ambient());
  const std::size_t n = std::max(a.level(), b.level());
  return LimitElement<F>(a.ambient_ptr(), raise(a, n).payload() + raise(b, n).payload(), n);
}

template <Flavor F>
LimitElement<F> operator-(const LimitElement<F>& a) {
  return LimitElement<F>(a.ambient_ptr(), -a.payload(), a.level());
}

template <Flavor F>
LimitElement<F> operator-(const LimitElement<F>& a, const LimitElement<F>& b) {
  return a + (-b);
}

template <Flavor F>
LimitElement<F> operator*(const Integer& c, const LimitElement<F>& a) {
  return LimitElement<F>(a.ambient_ptr(), c * a.payload(), a.level());
}

/// The shift automorphism alpha_* on each group.
///   stable:      [v,N] -> [vA, N]          inverse [v, N+1]
///   unstable:    [w,N] -> [w, N+1]         inverse [Aw, N]
///   homoclinic:  [X,N] -> [XA^2, N+1]      inverse [A^2 X, N+1]
/// The unstable convention is dual to the stable one, so alpha multiplies
/// the stable trace by lambda and the unstable trace by 1/lambda.
template <Flavor F>
LimitElement<F> alpha(const LimitElement<F>& e) {
  const Ambient& amb = e.ambient();
  if constexpr (F == Flavor::stable)
    return StableElement(e.ambient_ptr(), e.payload() * amb.matrix(), e.level());
  else if constexpr (F == Flavor::unstable)
    return UnstableElement(e.ambient_ptr(), e.payload(), e.level() + 1);
  else
    return LimitElement<F>(e.ambient_ptr(), e.payload() * amb.power(2), e.level() + 1);
}

template <Flavor F>
LimitElement<F> alpha_inv(const LimitElement<F>& e) {
  const Ambient& amb = e.ambient();
  if constexpr (F == Flavor::stable)
    return StableElement(e.ambient_ptr(), e.payload(), e.level() + 1);
  else if constexpr (F == Flavor::unstable)
    return UnstableElement(e.ambient_ptr(), amb.matrix() * e.payload(), e.level());
  else
    return LimitElement<F>(e.ambient_ptr(), amb.power(2) * e.payload(), e.level() + 1);
}

namespace detail {

// Z-basis of the level groups: standard basis, or the centralizer basis.
template <Flavor F>
std::vector<IntMatrix> level_basis(const Ambient& amb) {
  if constexpr (F == Flavor::cylinder) {
    return amb.centralizer().basis;
  } else {
    const std::size_t k = amb.size();
    const std::size_t r = F == Flavor::stable ? 1 : k, c = F == Flavor::unstable ? 1 : k;
    std::vector<IntMatrix> out;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out.push_back(IntMatrix::unit(r, c, i, j));
    return out;
  }
}

}  // namespace detail

/// Display form: push the payload up to level N + l, then pull levels back
/// down while the payload has an exact integer preimage under the connecting
/// map. Equal classes usually, but not provably, get the same output.
template <Flavor F>
LimitElement<F> normalize(const LimitElement<F>& e) {
  const Ambient& amb = e.ambient();
  LimitElement<F> cur = raise(e, e.level() + amb.l());
  if (cur.level() == 0) return cur;
  const auto basis = detail::level_basis<F>(amb);
  std::vector<IntMatrix> images;
  for (const auto& b : basis) images.push_back(advance_payload<F>(amb, b, 1));
  const IntMatrix step = matrices_as_columns(images, cur.payload().size());
  IntMatrix payload = cur.payload();
  std::size_t level = cur.level();
  while (level > 0) {
    auto coeffs = solve_integer_linear(step, vec(payload));
    if (!coeffs) break;
    IntMatrix pre(payload.rows(), payload.cols());
    for (std::size_t i = 0; i < basis.size(); ++i) pre += (*coeffs)(i, 0) * basis[i];
    payload = std::move(pre);
    --level;
  }
  return LimitElement<F>(e.ambient_ptr(), std::move(payload), level);
}

// ---------------------------------------------------------------------------
// Positivity in K0(S)

enum class Positivity { positive, zero, negative_or_mixed, undecided };

inline const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "Positive";
    case Positivity::zero: return "Zero";
    case Positivity::negative_or_mixed: return "NegativeOrMixed";
    case Positivity::undecided: return "Undecided";
  }
  return "?";
}

struct PositivityOptions {
  double tol = 1e-9;
  std::size_t j_max = 64;
  // Cap on the search when the pairing is clearly positive.
  std::size_t hard_cap = 100'000;
};

struct PositivityResult {
  Positivity verdict = Positivity::undecided;
  double pairing = 0;    // v . u_r
  std::size_t steps = 0; // j with vA^j >= 0, or the exhausted bound
};

/// Classes are positive when some representative vA^j is entrywise >= 0.
/// For primitive A, vA^j / lambda^j tends to (v . u_r) u_l, so the sign of
/// v . u_r decides except on the boundary |v . u_r| <= tol.
inline PositivityResult is_positive(const StableElement& e, const PositivityOptions& opts = {}) {
  const Ambient& amb = e.ambient();
  amb.require_primitive("positivity needs a primitive matrix");
  if (is_zero(e)) return {Positivity::zero, 0.0, 0};
  const auto& pd = amb.perron();
  double s = 0;
  for (std::size_t i = 0; i < amb.size(); ++i)
    s += static_cast<double>(e.payload()(0, i)) * pd.right[i];

  auto all_of_sign = [](const IntMatrix& v, int sign) {
    return std::all_of(v.entries().begin(), v.entries().end(),
                       [sign](const Integer& x) { return sign > 0 ? x >= 0 : x <= 0; });
  };
  if (s < -opts.tol) return {Positivity::negative_or_mixed, s, 0};
  const std::size_t bound = s > opts.tol ? opts.hard_cap : opts.j_max;
  IntMatrix v = e.payload();
  for (std::size_t j = 0; j <= bound; ++j) {
    if (all_of_sign(v, +1)) return {Positivity::positive, s, j};
    if (all_of_sign(v, -1)) return {Positivity::negative_or_mixed, s, j};
    v = v * amb.matrix();
  }
  return {Positivity::undecided, s, bound};
}

}  // namespace sftdim

#pragma once

#include "sftdim/cylinder.hpp"

namespace sftdim {

/// phi_(z,N) in Hom_{R_A}(K0(S), R_A). Pairs form the limit of Z^K columns
/// under z -> A^2 z.
class StableHom {
 public:
  StableHom(AmbientPtr ambient, IntMatrix z, std::size_t level)
      : ambient_(std::move(ambient)), z_(std::move(z)), level_(level) {
    if (z_.rows() != ambient_->size() || z_.cols() != 1)
      throw Error(ErrorCode::dimension_mismatch,
                  "hom vector " + z_.shape() + " over size " + std::to_string(ambient_->size()));
  }

  const IntMatrix& z() const noexcept { return z_; }
  std::size_t level() const noexcept { return level_; }
  const Ambient& ambient() const noexcept { return *ambient_; }
  const AmbientPtr& ambient_ptr() const noexcept { return ambient_; }

  StableHom raised(std::size_t level) const {
    if (level < level_) throw Error(ErrorCode::dimension_mismatch, "cannot lower a level");
    return StableHom(ambient_, ambient_->power(2 * (level - level_)) * z_, level);
  }

 private:
  AmbientPtr ambient_;
  IntMatrix z_;
  std::size_t level_;
};

/// phi_(z,N)[v,n] = [sum_i (u P_i(A) z) A^(k-1-i), N + n], u = vA^n and
/// P_i(x) = x^i + a_{k-1} x^(i-1) + ... + a_{k-i}.
///
/// The element is first rewritten as [vA^l, n + l]: the formula is only
/// compatible with [v, n] = [vA, n + 1] once A^n kills the nilpotent part.
inline RAElement hom_eval(const StableHom& phi, const StableElement& s) {
  require_same_ambient(phi.ambient(), s.ambient());
  const Ambient& amb = phi.ambient();
  const MinPolyData& mp = amb.minpoly();
  const std::size_t n = s.level() + amb.l();
  const IntMatrix u = s.payload() * amb.power(n);

  std::vector<Integer> coeffs(mp.k);
  IntMatrix pz = phi.z();  // P_i(A) z
  for (std::size_t i = 0; i < mp.k; ++i) {
    if (i > 0) pz = amb.matrix() * pz + mp.a(mp.k - i) * phi.z();
    coeffs[mp.k - 1 - i] = (u * pz)(0, 0);
  }
  return RAElement(phi.ambient_ptr(), Polynomial(std::move(coeffs)), phi.level() + n);
}

/// For N <= M: A^(2(l + M - N)) z = A^(2l) w.
inline bool hom_equal(const StableHom& a, const StableHom& b) {
  require_same_ambient(a.ambient(), b.ambient());
  if (a.level() > b.level()) return hom_equal(b, a);
  const Ambient& amb = a.ambient();
  const std::size_t l = amb.l();
  return amb.power(2 * (l + b.level() - a.level())) * a.z() == amb.power(2 * l) * b.z();
}

inline StableHom hom_add(const StableHom& a, const StableHom& b) {
  require_same_ambient(a.ambient(), b.ambient());
  const std::size_t n = std::max(a.level(), b.level());
  return StableHom(a.ambient_ptr(), a.raised(n).z() + b.raised(n).z(), n);
}

/// (r phi)(s) = r phi(s) for r = [q(A), L]: phi_(q(A) z, N + L).
inline StableHom hom_scale(const RAElement& r, const StableHom& phi) {
  require_same_ambient(r.ambient(), phi.ambient());
  return StableHom(phi.ambient_ptr(), r.polynomial().evaluate(r.ambient().matrix()) * phi.z(),
                   phi.level() + r.level());
}

/// (z, N) -> [z, 2N]
inline UnstableElement hom_to_unstable(const StableHom& phi) {
  return UnstableElement(phi.ambient_ptr(), phi.z(), 2 * phi.level());
}

/// [w, 2N] -> (w, N); [w, 2N - 1] = [Aw, 2N] -> (Aw, N).
inline StableHom unstable_to_hom(const UnstableElement& u) {
  if (u.level() % 2 == 0) return StableHom(u.ambient_ptr(), u.payload(), u.level() / 2);
  return StableHom(u.ambient_ptr(), u.ambient().matrix() * u.payload(), (u.level() + 1) / 2);
}

}  // namespace sftdim

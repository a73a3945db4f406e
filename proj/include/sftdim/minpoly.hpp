#pragma once

#include "sftdim/errors.hpp"
#include "sftdim/linalg.hpp"
#include "sftdim/matrix.hpp"
#include "sftdim/polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace sftdim {

/// Minimal polynomial m(x) = x^l * p(x) with p monic and p(0) != 0.
struct MinPolyData {
  std::size_t l = 0;        // multiplicity of 0 as a root
  std::size_t k = 0;        // degree of p
  Polynomial p;             // monic, a_0..a_{k-1} then 1
  Polynomial minimal;       // full minimal polynomial

  /// Coefficient a_i of p (a_k = 1).
  Integer a(std::size_t i) const { return p.coeff(i); }
};

/// det(xI - M) via Faddeev-LeVerrier; every division is exact over Z.
inline Polynomial characteristic_polynomial(const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorCode::non_square, "characteristic polynomial of " + m.shape());
  const std::size_t n = m.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix mk = IntMatrix::zero(n, n);
  const IntMatrix id = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    IntMatrix amk = m * mk;
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

/// Minimal polynomial as the first linear dependency among vec(I), vec(M),
/// vec(M^2), ... over Q. The dependency is monic with integer coefficients
/// because it divides the characteristic polynomial.
inline MinPolyData minimal_polynomial(const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorCode::non_square, "minimal polynomial of " + m.shape());
  const std::size_t n = m.rows();
  std::vector<IntMatrix> krylov;
  IntMatrix power = IntMatrix::identity(n);
  for (std::size_t d = 0; d <= n; ++d) {
    IntMatrix target = vec(power);
    if (!krylov.empty()) {
      IntMatrix basis = hstack(std::span<const IntMatrix>(krylov));
      if (auto x = solve_rational(basis, target)) {
        std::vector<Integer> coeffs(d + 1);
        coeffs[d] = 1;
        for (std::size_t i = 0; i < d; ++i) {
          const Rational& q = (*x)(i, 0);
          if (boost::multiprecision::denominator(q) != 1)
            throw Error(ErrorCode::dimension_mismatch,
                        "non-integral minimal polynomial coefficient");
          coeffs[i] = -boost::multiprecision::numerator(q);
        }
        MinPolyData out;
        out.minimal = Polynomial(std::move(coeffs));
        out.l = out.minimal.zero_root_multiplicity();
        out.p = out.minimal.shifted_down(out.l);
        out.k = static_cast<std::size_t>(out.p.degree());
        return out;
      }
    } else if (n == 0) {
      break;
    }
    krylov.push_back(std::move(target));
    power = power * m;
  }
  MinPolyData trivial;  // 0x0 matrix
  trivial.minimal = Polynomial{1};
  trivial.p = Polynomial{1};
  return trivial;
}

}  // namespace sftdim

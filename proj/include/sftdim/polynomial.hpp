#pragma once

#include "sftdim/errors.hpp"
#include "sftdim/integer.hpp"
#include "sftdim/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sftdim {

/// Dense integer polynomial, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  Polynomial(std::initializer_list<Integer> coeffs) : c_(coeffs) { trim(); }

  static Polynomial monomial(std::size_t degree, Integer coeff = 1) {
    std::vector<Integer> c(degree + 1);
    c[degree] = std::move(coeff);
    return Polynomial(std::move(c));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const std::vector<Integer>& coeffs() const noexcept { return c_; }
  const Integer& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Number of trailing zero coefficients, i.e. the multiplicity of 0 as a root.
  std::size_t zero_root_multiplicity() const {
    std::size_t l = 0;
    while (l < c_.size() && c_[l] == 0) ++l;
    return l;
  }

  /// Exact division by x^s; the low coefficients must vanish.
  Polynomial shifted_down(std::size_t s) const {
    for (std::size_t i = 0; i < s && i < c_.size(); ++i)
      if (c_[i] != 0) throw Error(ErrorCode::dimension_mismatch, "x^s does not divide");
    if (s >= c_.size()) return {};
    return Polynomial(std::vector<Integer>(c_.begin() + static_cast<long>(s), c_.end()));
  }

  Polynomial shifted_up(std::size_t s) const {
    if (is_zero()) return {};
    std::vector<Integer> c(s);
    c.insert(c.end(), c_.begin(), c_.end());
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Quotient and remainder by a monic divisor (exact over Z).
  std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& divisor) const {
    if (!divisor.is_monic())
      throw Error(ErrorCode::dimension_mismatch, "divisor must be monic");
    std::vector<Integer> r = c_;
    const std::size_t dd = divisor.c_.size() - 1;
    if (r.size() <= dd) return {Polynomial{}, *this};
    std::vector<Integer> q(r.size() - dd);
    for (std::size_t i = r.size(); i-- > dd;) {
      Integer f = r[i];
      if (f == 0) continue;
      q[i - dd] = f;
      for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * divisor.c_[j];
    }
    r.resize(dd);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  Polynomial mod_monic(const Polynomial& divisor) const {
    return divmod_monic(divisor).second;
  }

  /// p(M) by Horner's rule.
  IntMatrix evaluate(const IntMatrix& m) const {
    IntMatrix acc = IntMatrix::zero(m.rows(), m.cols());
    const IntMatrix id = IntMatrix::identity(m.rows());
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * m + c_[i] * id;
    return acc;
  }

  std::string to_string(const char* var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Integer& a = c_[i];
      if (a == 0) continue;
      Integer mag = sftdim::abs(a);
      if (s.empty()) {
        if (a < 0) s += "-";
      } else {
        s += a < 0 ? " - " : " + ";
      }
      if (i == 0 || mag != 1) s += mag.str();
      if (i >= 1) s += var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Integer> c_;
};

}  // namespace sftdim

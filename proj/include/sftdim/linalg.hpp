#pragma once

#include "sftdim/errors.hpp"
#include "sftdim/integer.hpp"
#include "sftdim/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sftdim {

/// U * M * V = D with U, V unimodular and D diagonal, each nonzero diagonal
/// entry dividing the next and zeros trailing.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<Integer> invariant_factors;  // nonzero diagonal entries
  std::size_t zero_count = 0;              // trailing zero diagonal entries

  std::size_t rank() const noexcept { return invariant_factors.size(); }
};

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t target,
                             std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

inline void add_col_multiple(IntMatrix& m, std::size_t target,
                             std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

// Smallest nonzero |entry| in the trailing block [t:, t:].
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(
    const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form by elementary row/column reduction, always pivoting on
/// the entry of least absolute value.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  for (; t < limit; ++t) {
    auto pivot = detail::min_pivot(d, t);
    if (!pivot) break;
    d.swap_rows(t, pivot->first);
    u.swap_rows(t, pivot->first);
    d.swap_cols(t, pivot->second);
    v.swap_cols(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        detail::add_row_multiple(d, i, t, -q);
        detail::add_row_multiple(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        detail::add_col_multiple(d, j, t, -q);
        detail::add_col_multiple(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; bring it to (t, t).
        std::size_t bi = t, bj = t;
        Integer best = abs(d(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) {
            best = abs(d(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) {
            best = abs(d(t, j));
            bi = t;
            bj = j;
          }
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      // Divisibility: fold an offending row into row t and reduce again.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      detail::add_row_multiple(d, t, *offending, Integer(1));
      detail::add_row_multiple(u, t, *offending, Integer(1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }

  SmithDecomposition out;
  for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(d(i, i));
  out.zero_count = limit - t;
  out.U = std::move(u);
  out.D = std::move(d);
  out.V = std::move(v);
  return out;
}

/// Saturated basis of {x in Z^n : M x = 0}, as column vectors.
inline std::vector<IntMatrix> integer_kernel(const IntMatrix& m) {
  SmithDecomposition snf = smith_normal_form(m);
  std::vector<IntMatrix> basis;
  for (std::size_t j = snf.rank(); j < m.cols(); ++j)
    basis.push_back(snf.V.column(j));
  return basis;
}

/// Integer solution of M x = b, or nullopt when none exists.
inline std::optional<IntMatrix> solve_integer_linear(const IntMatrix& m,
                                                     const IntMatrix& b) {
  if (b.cols() != 1 || b.rows() != m.rows())
    throw Error(ErrorCode::dimension_mismatch,
                "solve " + m.shape() + " x = " + b.shape());
  SmithDecomposition snf = smith_normal_form(m);
  IntMatrix c = snf.U * b;
  IntMatrix y(m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < snf.rank()) {
      const Integer& d = snf.invariant_factors[i];
      if (c(i, 0) % d != 0) return std::nullopt;
      y(i, 0) = c(i, 0) / d;
    } else if (c(i, 0) != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `g`.
/// `basis` holds the nonzero rows (pivots positive, entries above each pivot
/// reduced into [0, pivot)); `transform` expresses each basis row as an
/// integer combination of the rows of `g`.
struct HermiteForm {
  IntMatrix basis;
  IntMatrix transform;
};

inline HermiteForm hermite_normal_form(const IntMatrix& g) {
  IntMatrix h = g;
  IntMatrix t = IntMatrix::identity(g.rows());
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid down the column until only row r is nonzero.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (!best || abs(h(i, c)) < abs(h(*best, c))))
          best = i;
      if (!best) break;
      h.swap_rows(r, *best);
      t.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(r, c);
        detail::add_row_multiple(h, i, r, -q);
        detail::add_row_multiple(t, i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < t.cols(); ++j) t(r, j) = -t(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = h(i, c) - mod_floor(h(i, c), h(r, c));
      q /= h(r, c);
      detail::add_row_multiple(h, i, r, -q);
      detail::add_row_multiple(t, i, r, -q);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  HermiteForm out{IntMatrix(r, h.cols()), IntMatrix(r, g.rows())};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) out.basis(i, j) = h(i, j);
    for (std::size_t j = 0; j < g.rows(); ++j) out.transform(i, j) = t(i, j);
  }
  return out;
}

/// Reduced row echelon form over Q; returns the pivot columns.
inline std::vector<std::size_t> rref_in_place(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rational_rank(const IntMatrix& m) {
  RatMatrix q = to_rational(m);
  return rref_in_place(q).size();
}

/// Rational solution of M x = b (free variables set to zero), or nullopt.
inline std::optional<RatMatrix> solve_rational(const IntMatrix& m,
                                               const IntMatrix& b) {
  if (b.cols() != 1 || b.rows() != m.rows())
    throw Error(ErrorCode::dimension_mismatch,
                "solve " + m.shape() + " x = " + b.shape());
  RatMatrix aug = to_rational(hstack({m, b}));
  auto pivots = rref_in_place(aug);
  const std::size_t n = m.cols();
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RatMatrix x(n, 1);
  for (std::size_t i = 0; i < pivots.size(); ++i) x(pivots[i], 0) = aug(i, n);
  return x;
}

/// Is every column of `generators_b` an integer combination of the columns of
/// `generators_a`?
inline bool lattice_contains(const IntMatrix& generators_a,
                             const IntMatrix& generators_b) {
  for (std::size_t j = 0; j < generators_b.cols(); ++j)
    if (!solve_integer_linear(generators_a, generators_b.column(j)))
      return false;
  return true;
}

}  // namespace sftdim

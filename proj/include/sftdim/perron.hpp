#pragma once

#include "sftdim/adjacency.hpp"
#include "sftdim/errors.hpp"

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

namespace sftdim {

struct PerronOptions {
  double tol = 1e-12;
  std::size_t max_iters = 1'000'000;
};

/// Perron eigenvalue and eigenvectors of a primitive matrix.
///
/// Normalization: `left` sums to 1 and left . right = 1. The second condition
/// is the one the trace formulas need; the first only fixes the overall scale
/// so reports are reproducible.
struct PerronData {
  double lambda = 0;
  std::vector<double> left;
  std::vector<double> right;
  double residual = 0;  // max of |u_l A - lambda u_l|_inf, |A u_r - lambda u_r|_inf
  std::size_t iterations = 0;
};

namespace detail {

inline std::vector<double> to_double(const IntMatrix& a) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = static_cast<double>(a.entries()[i]);
  return d;
}

// Dominant eigenvector of a (transposed when `left`), 1-norm normalized.
inline std::vector<double> power_iterate(const std::vector<double>& a, std::size_t k, bool left,
                                         const PerronOptions& opts, std::size_t& iters) {
  std::vector<double> x(k, 1.0 / static_cast<double>(k)), y(k);
  for (iters = 1; iters <= opts.max_iters; ++iters) {
    double norm = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < k; ++j) s += (left ? a[j * k + i] : a[i * k + j]) * x[j];
      y[i] = s;
      norm += std::abs(s);
    }
    double change = 0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] /= norm;
      change += std::abs(y[i] - x[i]);
    }
    x.swap(y);
    if (change < opts.tol) return x;
  }
  throw Error(ErrorCode::no_convergence,
              "power iteration did not converge in " + std::to_string(opts.max_iters) +
                  " iterations");
}

}  // namespace detail

inline PerronData perron(const AdjacencyMatrix& adj, const PerronOptions& opts = {}) {
  if (!is_primitive(adj)) throw Error(ErrorCode::not_primitive, "Perron data needs a primitive matrix");
  const std::size_t k = adj.size();
  const auto a = detail::to_double(adj.matrix());
  PerronData out;
  std::size_t it_l = 0, it_r = 0;
  out.left = detail::power_iterate(a, k, true, opts, it_l);
  out.right = detail::power_iterate(a, k, false, opts, it_r);
  out.iterations = std::max(it_l, it_r);

  double sum_left = 0;
  for (double x : out.left) sum_left += x;
  for (double& x : out.left) x /= sum_left;
  double dot = 0;
  for (std::size_t i = 0; i < k; ++i) dot += out.left[i] * out.right[i];
  for (double& x : out.right) x /= dot;

  // Rayleigh quotient u_l A u_r / u_l u_r, with u_l u_r = 1.
  double lambda = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) lambda += out.left[i] * a[i * k + j] * out.right[j];
  out.lambda = lambda;

  double residual = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double l = -lambda * out.left[i], r = -lambda * out.right[i];
    for (std::size_t j = 0; j < k; ++j) {
      l += out.left[j] * a[j * k + i];
      r += a[i * k + j] * out.right[j];
    }
    residual = std::max({residual, std::abs(l), std::abs(r)});
  }
  out.residual = residual;
  return out;
}

/// Perron root of an irreducible matrix. A + I is primitive with the same
/// Perron eigenvectors, so iterate on it and subtract 1.
inline double spectral_radius(const AdjacencyMatrix& adj, const PerronOptions& opts = {}) {
  if (!is_irreducible(adj)) throw Error(ErrorCode::reducible, "spectral radius needs an irreducible matrix");
  if (is_primitive(adj)) return perron(adj, opts).lambda;
  return perron(validate(adj.matrix() + IntMatrix::identity(adj.size())), opts).lambda - 1.0;
}

/// Iteration cap from SFTDIM_MAX_ITERS when set.
inline PerronOptions perron_options_from_env(PerronOptions base = {}) {
  if (const char* s = std::getenv("SFTDIM_MAX_ITERS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) base.max_iters = static_cast<std::size_t>(v);
  }
  return base;
}

}  // namespace sftdim

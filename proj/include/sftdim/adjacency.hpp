#pragma once

#include "sftdim/errors.hpp"
#include "sftdim/matrix.hpp"

#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace sftdim {

/// Square non-negative integer matrix with no zero row and no zero column:
/// the adjacency matrix of a graph without sources or sinks.
class AdjacencyMatrix {
 public:
  const IntMatrix& matrix() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.rows(); }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  explicit AdjacencyMatrix(IntMatrix a) : a_(std::move(a)) {}
  friend AdjacencyMatrix validate(const std::vector<std::vector<Integer>>&);
  friend AdjacencyMatrix validate(const IntMatrix&);

  IntMatrix a_;
};

inline AdjacencyMatrix validate(const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorCode::non_square, "matrix is " + m.shape());
  if (m.rows() == 0) throw Error(ErrorCode::non_square, "empty matrix");
  const std::size_t k = m.rows();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (m(i, j) < 0)
        throw Error(ErrorCode::negative_entry,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + m(i, j).str(),
                    i, j);
  for (std::size_t i = 0; i < k; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < k && !any; ++j) any = m(i, j) != 0;
    if (!any) throw Error(ErrorCode::zero_row_or_column, "row " + std::to_string(i) + " is zero", i);
  }
  for (std::size_t j = 0; j < k; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < k && !any; ++i) any = m(i, j) != 0;
    if (!any)
      throw Error(ErrorCode::zero_row_or_column, "column " + std::to_string(j) + " is zero",
                  std::nullopt, j);
  }
  return AdjacencyMatrix(m);
}

inline AdjacencyMatrix validate(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t k = rows.size();
  if (k == 0) throw Error(ErrorCode::non_square, "empty matrix");
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k)
      throw Error(ErrorCode::non_square,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(k),
                  i);
    for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][j];
  }
  return validate(m);
}

namespace detail {

inline std::vector<std::vector<std::size_t>> successors(const IntMatrix& a, bool reversed) {
  std::vector<std::vector<std::size_t>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out[reversed ? j : i].push_back(reversed ? i : j);
  return out;
}

// BFS distances from vertex 0; unreachable vertices stay nullopt.
inline std::vector<std::optional<std::size_t>> bfs_depths(
    const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::optional<std::size_t>> depth(adj.size());
  std::queue<std::size_t> q;
  depth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u])
      if (!depth[v]) {
        depth[v] = *depth[u] + 1;
        q.push(v);
      }
  }
  return depth;
}

inline bool all_reached(const std::vector<std::optional<std::size_t>>& d) {
  for (const auto& x : d)
    if (!x) return false;
  return true;
}

}  // namespace detail

/// Strong connectivity of the graph.
inline bool is_irreducible(const AdjacencyMatrix& adj) {
  const IntMatrix& a = adj.matrix();
  return detail::all_reached(detail::bfs_depths(detail::successors(a, false))) &&
         detail::all_reached(detail::bfs_depths(detail::successors(a, true)));
}

/// gcd of cycle lengths; computed from BFS depths d as gcd over edges u->v of
/// d(u) + 1 - d(v).
inline std::size_t period(const AdjacencyMatrix& adj) {
  if (!is_irreducible(adj)) throw Error(ErrorCode::reducible, "period of a reducible matrix");
  const IntMatrix& a = adj.matrix();
  auto depth = detail::bfs_depths(detail::successors(a, false));
  long g = 0;
  for (std::size_t u = 0; u < a.rows(); ++u)
    for (std::size_t v = 0; v < a.cols(); ++v)
      if (a(u, v) != 0) {
        long diff = static_cast<long>(*depth[u]) + 1 - static_cast<long>(*depth[v]);
        g = std::gcd(g, diff);
      }
  return static_cast<std::size_t>(g);
}

/// Some power up to the Wielandt bound (K-1)^2 + 1 is entrywise positive.
inline bool is_primitive(const AdjacencyMatrix& adj) {
  const IntMatrix& a = adj.matrix();
  const std::size_t k = a.rows();
  std::vector<char> base(k * k), cur(k * k);
  for (std::size_t i = 0; i < k * k; ++i) base[i] = cur[i] = a.entries()[i] != 0;
  const std::size_t bound = (k - 1) * (k - 1) + 1;
  for (std::size_t p = 1; p <= bound; ++p) {
    bool positive = true;
    for (char c : cur) positive = positive && c;
    if (positive) return true;
    std::vector<char> next(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m) {
        if (!cur[i * k + m]) continue;
        for (std::size_t j = 0; j < k; ++j)
          if (base[m * k + j]) next[i * k + j] = 1;
      }
    cur = std::move(next);
  }
  return false;
}

/// Cyclic decomposition of an irreducible matrix of period n.
struct SpectralDecomposition {
  std::size_t period = 1;
  std::vector<std::vector<std::size_t>> classes;  // class of vertex 0 first
  AdjacencyMatrix component;                       // mixing component
  std::vector<std::size_t> vertex_order;          // block order of vertices
};

/// Cyclic classes are BFS depth mod n from vertex 0; the mixing component is
/// the product of the consecutive class-to-class blocks around the cycle.
inline SpectralDecomposition spectral_decomposition(const AdjacencyMatrix& adj) {
  const std::size_t n = period(adj);
  const IntMatrix& a = adj.matrix();
  auto depth = detail::bfs_depths(detail::successors(a, false));
  std::vector<std::vector<std::size_t>> classes(n);
  for (std::size_t v = 0; v < a.rows(); ++v) classes[*depth[v] % n].push_back(v);

  IntMatrix product = IntMatrix::identity(classes[0].size());
  for (std::size_t c = 0; c < n; ++c) {
    const auto& from = classes[c];
    const auto& to = classes[(c + 1) % n];
    IntMatrix block(from.size(), to.size());
    for (std::size_t i = 0; i < from.size(); ++i)
      for (std::size_t j = 0; j < to.size(); ++j) block(i, j) = a(from[i], to[j]);
    product = product * block;
  }
  std::vector<std::size_t> order;
  for (const auto& c : classes) order.insert(order.end(), c.begin(), c.end());
  return SpectralDecomposition{n, std::move(classes), validate(product), std::move(order)};
}

/// A with rows and columns permuted into `order`.
inline IntMatrix reorder(const IntMatrix& a, const std::vector<std::size_t>& order) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j) out(i, j) = a(order[i], order[j]);
  return out;
}

}  // namespace sftdim

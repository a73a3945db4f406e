#pragma once

#include "sftdim/cylinder.hpp"
#include "sftdim/minpoly.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sftdim {

/// Lag-k shift equivalence from A to B: RS = A^k, SR = B^k, AR = RB, SA = BS.
struct ShiftEquivalenceWitness {
  IntMatrix R;  // rows(A) x rows(B)
  IntMatrix S;  // rows(B) x rows(A)
  std::size_t k = 1;
};

struct EquationCheck {
  std::string name;  // "RS = A^k", ...
  bool holds = false;
  IntMatrix residual;  // left side minus right side
};

struct VerificationReport {
  bool r_nonnegative = false;
  bool s_nonnegative = false;
  bool lag_positive = false;
  std::vector<EquationCheck> equations;

  bool valid() const {
    if (!r_nonnegative || !s_nonnegative || !lag_positive) return false;
    for (const auto& e : equations)
      if (!e.holds) return false;
    return true;
  }
};

inline VerificationReport verify(const IntMatrix& a, const IntMatrix& b,
                                 const ShiftEquivalenceWitness& w) {
  const std::size_t n = a.rows(), m = b.rows();
  if (!a.is_square() || !b.is_square() || w.R.rows() != n || w.R.cols() != m ||
      w.S.rows() != m || w.S.cols() != n)
    throw Error(ErrorCode::dimension_mismatch,
                "witness shapes R " + w.R.shape() + ", S " + w.S.shape() + " for A " + a.shape() +
                    " and B " + b.shape());
  VerificationReport rep;
  rep.r_nonnegative = is_nonnegative(w.R);
  rep.s_nonnegative = is_nonnegative(w.S);
  rep.lag_positive = w.k >= 1;
  auto check = [&](std::string name, const IntMatrix& lhs, const IntMatrix& rhs) {
    IntMatrix r = lhs - rhs;
    const bool ok = r.is_zero();
    rep.equations.push_back({std::move(name), ok, std::move(r)});
  };
  check("RS = A^k", w.R * w.S, pow(a, w.k));
  check("SR = B^k", w.S * w.R, pow(b, w.k));
  check("AR = RB", a * w.R, w.R * b);
  check("SA = BS", w.S * a, b * w.S);
  return rep;
}

// ---------------------------------------------------------------------------
// Bounded search

struct SearchOptions {
  std::size_t k_max = 4;
  std::size_t entry_bound = 3;
  // Limit on candidate matrices enumerated for R and for S.
  std::uint64_t max_candidates = 1u << 22;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Invariants that rule out shift equivalence when they differ.
struct Obstructions {
  std::optional<double> lambda_a, lambda_b;
  bool lambda_mismatch = false;
  Polynomial nonzero_spectrum_a, nonzero_spectrum_b;  // char poly with x factors removed
  bool spectrum_mismatch = false;

  bool any() const { return lambda_mismatch || spectrum_mismatch; }
};

struct SearchResult {
  std::optional<ShiftEquivalenceWitness> witness;
  Obstructions obstructions;
  std::size_t k_max = 0;
  std::size_t entry_bound = 0;
  std::uint64_t r_candidates = 0;  // solutions of AR = RB in the box
  std::uint64_t s_candidates = 0;
};

inline Obstructions spectral_obstructions(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  Obstructions o;
  auto strip = [](const Polynomial& p) { return p.shifted_down(p.zero_root_multiplicity()); };
  o.nonzero_spectrum_a = strip(characteristic_polynomial(a.matrix()));
  o.nonzero_spectrum_b = strip(characteristic_polynomial(b.matrix()));
  o.spectrum_mismatch = !(o.nonzero_spectrum_a == o.nonzero_spectrum_b);
  if (is_primitive(a) && is_primitive(b)) {
    o.lambda_a = perron(a).lambda;
    o.lambda_b = perron(b).lambda;
    o.lambda_mismatch = std::abs(*o.lambda_a - *o.lambda_b) > 1e-9 * std::max(1.0, *o.lambda_a);
  }
  return o;
}

namespace detail {

// All rows x cols matrices with entries in [0, bound] satisfying lhs * X == X * rhs.
inline std::vector<IntMatrix> intertwiners(const IntMatrix& lhs, const IntMatrix& rhs,
                                           std::size_t bound) {
  const std::size_t rows = lhs.rows(), cols = rhs.rows();
  std::vector<IntMatrix> out;
  IntMatrix x(rows, cols);
  std::vector<std::size_t> digits(rows * cols, 0);
  while (true) {
    if (lhs * x == x * rhs && !x.is_zero()) out.push_back(x);
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (digits[i] < bound) {
        ++digits[i];
        x.entries()[i] = digits[i];
        break;
      }
      digits[i] = 0;
      x.entries()[i] = 0;
    }
    if (i == digits.size()) break;
  }
  return out;
}

inline std::uint64_t box_size(std::size_t entries, std::size_t bound) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < entries; ++i) {
    if (total > (std::uint64_t{1} << 62) / (bound + 1)) return UINT64_MAX;
    total *= bound + 1;
  }
  return total;
}

}  // namespace detail

/// Exhaustive search over non-negative R, S with entries <= entry_bound and
/// lag <= k_max. Finding nothing proves nothing beyond those bounds; the
/// spectral obstructions, when present, do rule equivalence out.
inline SearchResult search(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                           const SearchOptions& opts = {}) {
  const std::size_t n = a.size(), m = b.size();
  const std::uint64_t box = detail::box_size(n * m, opts.entry_bound);
  if (box > opts.max_candidates)
    throw Error(ErrorCode::search_space_too_large,
                std::to_string(n * m) + " entries with bound " +
                    std::to_string(opts.entry_bound) + " exceed the candidate limit " +
                    std::to_string(opts.max_candidates));

  SearchResult res;
  res.k_max = opts.k_max;
  res.entry_bound = opts.entry_bound;
  res.obstructions = spectral_obstructions(a, b);

  const IntMatrix& am = a.matrix();
  const IntMatrix& bm = b.matrix();
  const auto rs = detail::intertwiners(am, bm, opts.entry_bound);  // AR = RB
  const auto ss = detail::intertwiners(bm, am, opts.entry_bound);  // BS = SA
  res.r_candidates = rs.size();
  res.s_candidates = ss.size();
  if (rs.empty() || ss.empty() || res.obstructions.any()) return res;

  std::vector<IntMatrix> apow{IntMatrix::identity(n)}, bpow{IntMatrix::identity(m)};
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    apow.push_back(apow.back() * am);
    bpow.push_back(bpow.back() * bm);
  }

  // Candidates for R are split into contiguous chunks; the result is the
  // witness with the smallest (R index, S index, k), independent of timing.
  std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, rs.size());
  std::atomic<std::size_t> best{SIZE_MAX};
  auto worker = [&](std::size_t begin, std::size_t end) -> std::optional<ShiftEquivalenceWitness> {
    for (std::size_t i = begin; i < end && i < best.load(); ++i)
      for (const auto& s : ss) {
        const IntMatrix prod = rs[i] * s;
        for (std::size_t k = 1; k <= opts.k_max; ++k) {
          if (prod != apow[k]) continue;
          if (s * rs[i] != bpow[k]) continue;
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {}
          return ShiftEquivalenceWitness{rs[i], s, k};
        }
      }
    return std::nullopt;
  };
  std::vector<std::future<std::optional<ShiftEquivalenceWitness>>> futures;
  const std::size_t chunk = (rs.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t)
    futures.push_back(std::async(std::launch::async, worker, t * chunk, (t + 1) * chunk));
  for (auto& f : futures)
    if (auto w = f.get(); w && !res.witness) res.witness = std::move(w);
  return res;
}

// ---------------------------------------------------------------------------
// Induced isomorphisms

/// Maps on the limit groups induced by a verified witness from A to B.
class InducedMaps {
 public:
  InducedMaps(AmbientPtr a, AmbientPtr b, ShiftEquivalenceWitness w)
      : a_(std::move(a)), b_(std::move(b)), w_(std::move(w)) {
    if (!verify(a_->matrix(), b_->matrix(), w_).valid())
      throw Error(ErrorCode::invalid_witness, "witness fails the shift equivalence equations");
  }

  const ShiftEquivalenceWitness& witness() const noexcept { return w_; }

  /// [v, n] -> [vR, n]
  StableElement phi_s(const StableElement& e) const {
    require_same_ambient(e.ambient(), *a_);
    return StableElement(b_, e.payload() * w_.R, e.level());
  }
  /// [v, n] -> [vS, n + k]
  StableElement phi_s_inv(const StableElement& e) const {
    require_same_ambient(e.ambient(), *b_);
    return StableElement(a_, e.payload() * w_.S, e.level() + w_.k);
  }
  /// [w, n] -> [Sw, n]
  UnstableElement phi_u(const UnstableElement& e) const {
    require_same_ambient(e.ambient(), *a_);
    return UnstableElement(b_, w_.S * e.payload(), e.level());
  }
  /// [w, n] -> [Rw, n + k]
  UnstableElement phi_u_inv(const UnstableElement& e) const {
    require_same_ambient(e.ambient(), *b_);
    return UnstableElement(a_, w_.R * e.payload(), e.level() + w_.k);
  }
  /// [X, M] -> [SXR, M + k/2] for even k, [SXRB, M + (k+1)/2] for odd k.
  CylinderK0Element phi_h(const CylinderK0Element& e) const {
    require_same_ambient(e.ambient(), *a_);
    return CylinderK0Element(b_, transport(e.payload()), e.level() + (w_.k + 1) / 2);
  }
  /// Same formula on K1 representatives.
  CylinderK1Element phi_h1(const CylinderK1Element& e) const {
    require_same_ambient(e.ambient(), *a_);
    return CylinderK1Element(b_, transport(e.representative()), e.level() + (w_.k + 1) / 2);
  }

 private:
  IntMatrix transport(const IntMatrix& x) const {
    IntMatrix y = w_.S * x * w_.R;
    return w_.k % 2 == 0 ? y : y * b_->matrix();
  }

  AmbientPtr a_, b_;
  ShiftEquivalenceWitness w_;
};

}  // namespace sftdim

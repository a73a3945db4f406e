#pragma once

#include "sftdim/dimension_groups.hpp"

#include <cmath>

namespace sftdim {

// Trace maps induced on K-theory, all under the PerronData normalization
// (u_l sums to 1, u_l . u_r = 1). They need a primitive ambient matrix.

/// tau^s [v, N] = lambda^-N v . u_r
inline double trace_s(const StableElement& e) {
  const auto& pd = e.ambient().perron();
  double s = 0;
  for (std::size_t i = 0; i < e.ambient().size(); ++i)
    s += static_cast<double>(e.payload()(0, i)) * pd.right[i];
  return s * std::pow(pd.lambda, -static_cast<double>(e.level()));
}

/// tau^u [w, M] = lambda^-M u_l . w
inline double trace_u(const UnstableElement& e) {
  const auto& pd = e.ambient().perron();
  double s = 0;
  for (std::size_t i = 0; i < e.ambient().size(); ++i)
    s += pd.left[i] * static_cast<double>(e.payload()(i, 0));
  return s * std::pow(pd.lambda, -static_cast<double>(e.level()));
}

/// tau^CH [X, N] = lambda^-2N u_l X u_r
inline double trace_ch(const CylinderK0Element& e) {
  const auto& pd = e.ambient().perron();
  const std::size_t k = e.ambient().size();
  double s = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      s += pd.left[i] * static_cast<double>(e.payload()(i, j)) * pd.right[j];
  return s * std::pow(pd.lambda, -2.0 * static_cast<double>(e.level()));
}

}  // namespace sftdim

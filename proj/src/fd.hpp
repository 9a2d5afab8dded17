#pragma once

#include <cstddef>
#include <vector>

#include "hmcf/error.hpp"

namespace hmcf::detail {

// Derivative along one axis of a tensor array with dims (nt, n_a, n_b) stored
// as ((kt * n_a) + ia) * n_b + ib; axis 0 = t, 1 = a, 2 = b.
inline std::vector<double> axis_derivative(const std::vector<double>& v, std::size_t nt,
                                           std::size_t na, std::size_t nb, int axis,
                                           double h, int order) {
  std::vector<double> out(v.size());
  const std::size_t n = axis == 0 ? nt : axis == 1 ? na : nb;
  const std::size_t stride = axis == 0 ? na * nb : axis == 1 ? nb : 1;
  if (n < static_cast<std::size_t>(order + 2))
    fail(ErrorCode::Stencil, "too few nodes along the derivative axis");
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const std::size_t pos = axis == 0 ? idx / (na * nb)
                            : axis == 1 ? (idx / nb) % na
                                        : idx % nb;
    auto at = [&](long off) { return v[idx + off * static_cast<long>(stride)]; };
    if (order == 1) {
      if (pos == 0) out[idx] = (-1.5 * at(0) + 2.0 * at(1) - 0.5 * at(2)) / h;
      else if (pos == n - 1) out[idx] = (1.5 * at(0) - 2.0 * at(-1) + 0.5 * at(-2)) / h;
      else out[idx] = (at(1) - at(-1)) / (2.0 * h);
    } else {
      if (pos == 0) out[idx] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
      else if (pos == n - 1)
        out[idx] = (2.0 * at(0) - 5.0 * at(-1) + 4.0 * at(-2) - at(-3)) / (h * h);
      else out[idx] = (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
    }
  }
  return out;
}

}  // namespace hmcf::detail

#pragma once

#include <cstddef>
#include <span>

namespace stratlab {

/// Pairwise (cascade) summation with a fixed reduction tree.
/// The result depends only on the element order, never on chunking or
/// thread count, which is what makes reports byte-reproducible.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace stratlab
